"""Search for an invertible element in a linear space of square matrices.

Used to decide isomorphism of modules and representations once a basis of
the Hom space is known.  Verdicts are three-valued: an explicit invertible
witness, a definitive negative, or ``None`` when the randomized stage
exhausts its retries.
"""
from __future__ import annotations

import random
from itertools import product
from typing import Optional, Sequence

from .fields import Field
from .matrix import ExactMatrix, linear_combination, rank

SWEEP_RANGE = range(-3, 4)
SWEEP_MAX_DIM = 4
RANDOM_RETRIES = 32


def find_invertible(field: Field, basis: Sequence[ExactMatrix], n: int, *, seed: int = 0
                    ) -> tuple[Optional[bool], Optional[ExactMatrix], str]:
    """Invertible ``sum c_i B_i`` among ``n x n`` matrices ``basis``.

    Definitive negatives: empty basis; one basis matrix that is singular;
    a full sweep of the coefficient grid ``{-3..3}^k`` (k <= 4) when
    ``n < 7`` and the grid values are distinct in the field, since the
    determinant then has degree < 7 in each variable and vanishing on the
    grid forces it to vanish identically.
    """
    F = field
    if n == 0:
        return True, ExactMatrix.zeros(F, 0, 0), "zero-dimensional objects"
    k = len(basis)
    if k == 0:
        return False, None, "hom space is zero"

    def combo(coeffs):
        return linear_combination(F, list(zip(coeffs, basis)), n, n)

    if k == 1:
        if rank(basis[0]) == n:
            return True, basis[0], "hom space of dimension 1"
        return False, None, "hom space is spanned by one singular map"
    if k <= SWEEP_MAX_DIM:
        vecs = sorted(product(SWEEP_RANGE, repeat=k), key=lambda v: (sum(map(abs, v)), v))
        for v in vecs:
            if not any(v):
                continue
            T = combo([F.from_int(c) for c in v])
            if rank(T) == n:
                return True, T, f"sweep coefficients {list(v)}"
        distinct = F.characteristic == 0 or F.characteristic >= len(SWEEP_RANGE)
        if distinct and n < len(SWEEP_RANGE):
            return False, None, "determinant vanishes on the full sweep grid"
    rng = random.Random(seed)
    for _ in range(RANDOM_RETRIES):
        T = combo([F.random_element(rng, 50) for _ in range(k)])
        if rank(T) == n:
            return True, T, "random combination"
    return None, None, "randomized search exhausted"
