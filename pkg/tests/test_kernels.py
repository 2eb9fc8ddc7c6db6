from __future__ import annotations

import random

import pytest

from tenscat.linalg import QQ, ExactMatrix, IntMatrix, kernels, rank, smith_normal_form
from tenscat.linalg import _pykernels

compiled = pytest.mark.skipif("compiled" not in kernels.available(), reason="compiled kernels not built")


def _random_rows(rng, r, c, bound=20):
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


@pytest.fixture
def restore_kernels():
    before = kernels.active()
    yield
    kernels.use(before)


def test_python_kernels_always_available():
    assert "python" in kernels.available()


def test_unknown_kernel_set_rejected():
    with pytest.raises(ValueError):
        kernels.use("fortran")


@compiled
def test_compiled_is_default_when_built():
    assert kernels.active() == "compiled"


@compiled
def test_compiled_matches_python_on_integer_rref():
    from tenscat.linalg import _ckernels

    rng = random.Random(11)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        rows = _random_rows(rng, r, c)
        assert _ckernels.rref_int([list(x) for x in rows], c) == _pykernels.rref_int([list(x) for x in rows], c)


@compiled
def test_compiled_matches_python_mod_p():
    from tenscat.linalg import _ckernels

    rng = random.Random(12)
    for p in (2, 3, 7, 101):
        for _ in range(50):
            r, c = rng.randint(1, 6), rng.randint(1, 6)
            rows = [[x % p for x in row] for row in _random_rows(rng, r, c)]
            assert _ckernels.rref_modp([list(x) for x in rows], c, p) == _pykernels.rref_modp(
                [list(x) for x in rows], c, p)


@compiled
def test_compiled_matches_python_on_smith_form():
    from tenscat.linalg import _ckernels

    rng = random.Random(13)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        rows = _random_rows(rng, r, c, bound=12)
        assert _ckernels.smith_normal_form([list(x) for x in rows], r, c) == _pykernels.smith_normal_form(
            [list(x) for x in rows], r, c)


@compiled
def test_switching_kernels_keeps_results(restore_kernels):
    rng = random.Random(14)
    mats = [_random_rows(rng, 4, 5) for _ in range(20)]
    out = {}
    for name in ("python", "compiled"):
        kernels.use(name)
        assert kernels.active() == name
        out[name] = [(rank(ExactMatrix(QQ, m)), smith_normal_form(IntMatrix(m))) for m in mats]
    assert out["python"] == out["compiled"]
