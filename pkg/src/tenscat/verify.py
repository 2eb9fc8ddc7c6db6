"""Checks of the standard t-structure on bounded complexes.

Every universal statement is tested on an explicit finite sample; the
reports record the sample by index and carry per-degree data.  Cohomology
objects are described by dimensions over field backends and by invariant
factors over the integer backend.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .abelian import FgAbelianGroup, GroupHom
from .complexes.backends import Backend, BackendError, IntegerBackend
from .complexes.complex import (
    BoundedComplex,
    ComplexError,
    cohomology,
    cohomology_data,
    cohomology_support,
    shift,
    stalk,
    total_tensor,
    unit_stalk,
)
from .linalg.intmat import IntMatrix
from .linalg.matrix import ExactMatrix, kronecker, rank
from .report import FAIL, PASS, UNDETERMINED, VerificationReport, combine


# -- aisles and heart -------------------------------------------------------------

@dataclass(frozen=True)
class AisleSpec:
    """``D^{<=n}`` (side ``"le"``) or ``D^{>=n}`` (side ``"ge"``)."""

    n: int
    side: str = "le"

    def __post_init__(self):
        if self.side not in ("le", "ge"):
            raise ValueError(f"aisle side must be 'le' or 'ge', not {self.side!r}")


def aisle_membership(X: BoundedComplex, spec: AisleSpec) -> bool:
    B = X.backend
    for i in X.degrees:
        outside = i > spec.n if spec.side == "le" else i < spec.n
        if outside and not B.is_zero(cohomology(X, i)):
            return False
    return True


def heart_membership(X: BoundedComplex) -> bool:
    """True iff the cohomology of X is concentrated in degree 0."""
    return all(i == 0 for i in cohomology_support(X))


def in_le(X: BoundedComplex, n: int) -> bool:
    return aisle_membership(X, AisleSpec(n, "le"))


def in_ge(X: BoundedComplex, n: int) -> bool:
    return aisle_membership(X, AisleSpec(n, "ge"))


# -- Kunneth ------------------------------------------------------------------------------

def _summand_inclusion(B: Backend, T: BoundedComplex, n: int, k: int):
    X, Y = T.factors
    summands = T.layout.summands[n]
    parts = [B.tensor(X.obj(p), Y.obj(q)) for p, q in summands]
    return B.block_mor(parts[k], T.obj(n), [parts[k]], parts, {(k, 0): B.identity(parts[k])})


def kunneth_map(X: BoundedComplex, Y: BoundedComplex, n: int, T: Optional[BoundedComplex] = None):
    """The canonical morphism ``(+)_{p+q=n} H^p(X) (x) H^q(Y) -> H^n(X (x) Y)``.

    Returns ``(lhs_object, morphism)``.  Each summand map is induced by
    ``Z^p (x) Z^q -> X^p (x) Y^q -> Z^n(T) -> H^n(T)`` and descends along
    ``proj_p (x) proj_q``, which is epi because tensor is right exact.
    """
    B = X.backend
    T = T if T is not None else total_tensor(X, Y)
    hT = cohomology_data(T, n)
    srcs, blocks = [], {}
    for k, (p, q) in enumerate(T.layout.summands.get(n, [])):
        hx, hy = cohomology_data(X, p), cohomology_data(Y, q)
        into_T = B.compose(_summand_inclusion(B, T, n, k), B.tensor_mor(hx.incl, hy.incl))
        on_cycles = B.compose(hT.proj, B.lift(hT.incl, into_T))
        blocks[(0, len(srcs))] = B.descend(B.tensor_mor(hx.proj, hy.proj), on_cycles)
        srcs.append(B.tensor(hx.obj, hy.obj))
    lhs = B.direct_sum(srcs)
    if not srcs:
        return lhs, B.zero_mor(lhs, hT.obj)
    return lhs, B.block_mor(lhs, hT.obj, srcs, [hT.obj], blocks)


def _fiber_cohomology_dims(B: Backend, X: BoundedComplex) -> dict:
    """``{n: [dim H^n at each fiber]}`` from ranks of the raw matrices."""
    out = {}
    for n in X.degrees:
        dims = B.fiber_dims(X.obj(n))
        r_out = [rank(m) for m in B.fiber_matrices(X.d(n))]
        r_in = [rank(m) for m in B.fiber_matrices(X.d(n - 1))]
        out[n] = [d - a - b for d, a, b in zip(dims, r_out, r_in)]
    return out


def _oracle_tensor_dims(B: Backend, X: BoundedComplex, Y: BoundedComplex) -> dict:
    """Cohomology dimensions of the total tensor, rebuilt fiberwise from
    Kronecker blocks without going through ``total_tensor``."""
    F = B.field
    lo, hi = X.lo + Y.lo, X.hi + Y.hi
    nfib = len(B.fiber_dims(B.unit()))
    xd = {p: B.fiber_dims(X.obj(p)) for p in X.degrees}
    yd = {q: B.fiber_dims(Y.obj(q)) for q in Y.degrees}
    xm = {p: B.fiber_matrices(X.d(p)) for p in X.degrees}
    ym = {q: B.fiber_matrices(Y.d(q)) for q in Y.degrees}

    def summ(n):
        return [(p, n - p) for p in X.degrees if Y.lo <= n - p <= Y.hi]

    def total_dim(n, v):
        return sum(xd[p][v] * yd[q][v] for p, q in summ(n))

    def diff_rank(n, v):
        src, tgt = summ(n), summ(n + 1)
        if not src or not tgt:
            return 0
        grid = []
        for p2, q2 in tgt:
            row = []
            for p, q in src:
                if (p2, q2) == (p + 1, q):
                    row.append(kronecker(xm[p][v], ExactMatrix.identity(F, yd[q][v])))
                elif (p2, q2) == (p, q + 1):
                    blk = kronecker(ExactMatrix.identity(F, xd[p][v]), ym[q][v])
                    row.append(blk.scale(F.from_int(-1)) if p % 2 else blk)
                else:
                    row.append(None)
            grid.append(row)
        M = ExactMatrix.block(F, [xd[p][v] * yd[q][v] for p, q in tgt], [xd[p][v] * yd[q][v] for p, q in src], grid)
        return rank(M)

    out = {}
    for n in range(lo, hi + 1):
        out[n] = [total_dim(n, v) - diff_rank(n, v) - diff_rank(n - 1, v) for v in range(nfib)]
    return out


def kunneth_check(X: BoundedComplex, Y: BoundedComplex, *, oracle: bool = True, seed: int = 0,
                  case_prefix: str = "") -> VerificationReport:
    """Per-degree test that the canonical Kunneth morphism is an isomorphism.

    If the canonical morphism is not invertible, the backend isomorphism
    search still decides whether the two sides are abstractly isomorphic;
    that outcome is recorded but the degree fails either way only when no
    isomorphism exists.  Over field backends the dimensions are also
    cross-checked against a rank count on raw Kronecker blocks.
    """
    if X.backend is not Y.backend:
        raise ComplexError("kunneth_check needs complexes over one backend")
    B = X.backend
    rep = VerificationReport("kunneth")
    rep.meta["backend"] = B.name
    if X.is_empty_range() or Y.is_empty_range():
        rep.add(f"{case_prefix}empty", PASS, note="an empty complex makes both sides zero")
        return rep
    T = total_tensor(X, Y)
    field_backend = getattr(B, "over_field", True)
    hx = hy = ht = None
    if field_backend and oracle:
        hx, hy = _fiber_cohomology_dims(B, X), _fiber_cohomology_dims(B, Y)
        ht = _oracle_tensor_dims(B, X, Y)
    for n in T.degrees:
        lhs, phi = kunneth_map(X, Y, n, T)
        rhs = cohomology(T, n)
        data = {"degree": n, "lhs": B.describe(lhs), "rhs": B.describe(rhs)}
        if B.is_iso_mor(phi):
            verdict = PASS
            data["witness"] = "canonical map"
        else:
            found, _, reason = B.iso_search(lhs, rhs, seed=seed)
            data["canonical_map_iso"] = False
            data["iso_search"] = reason
            verdict = {True: PASS, False: FAIL, None: UNDETERMINED}[found]
        if ht is not None:
            nfib = len(ht[n])
            count = [sum(hx[p][v] * hy[n - p][v] for p in X.degrees if Y.lo <= n - p <= Y.hi)
                     for v in range(nfib)]
            data["oracle_lhs_dims"] = count
            data["oracle_rhs_dims"] = ht[n]
            rhs_dims = B.fiber_dims(rhs)
            lhs_dims = B.fiber_dims(lhs)
            agree = count == lhs_dims and ht[n] == rhs_dims
            data["oracle_agrees"] = agree
            if not agree:
                verdict = FAIL
                data["oracle_mismatch"] = {"lhs": lhs_dims, "rhs": rhs_dims}
        rep.add(f"{case_prefix}degree{n:+d}", verdict, **data)
    return rep


def merge_reports(check: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    out = VerificationReport(check)
    for r in reports:
        out.cases.extend(r.cases)
        out.notes.extend(n for n in r.notes if n not in out.notes)
    return out


# -- monoidal aisle conditions and deviation ------------------------------------------------------

def monoidal_aisle_check(sample: Sequence[BoundedComplex], n: int, *,
                         pairs: Optional[Iterable[tuple[int, int]]] = None) -> VerificationReport:
    """Test ``D<=0 (x) D<=n in D<=0`` (condition 1) and ``D>=0 (x) D>=n in D>=0``
    (condition 2) on ordered pairs from ``sample``.

    ``pairs`` restricts the pairs tested; by default all ordered pairs.
    Pairs not meeting a condition's hypotheses are skipped for it.
    """
    rep = VerificationReport("monoidal-aisle")
    rep.meta.update(n=n, sample_size=len(sample))
    if pairs is None:
        pairs = [(i, j) for i in range(len(sample)) for j in range(len(sample))]
    tested = {1: 0, 2: 0}
    for i, j in pairs:
        X, Y = sample[i], sample[j]
        hyp1 = in_le(X, 0) and in_le(Y, n)
        hyp2 = in_ge(X, 0) and in_ge(Y, n)
        if not (hyp1 or hyp2):
            continue
        T = total_tensor(X, Y)
        for cond, hyp, test, bad_side in ((1, hyp1, in_le, "above"), (2, hyp2, in_ge, "below")):
            if not hyp:
                continue
            tested[cond] += 1
            cid = f"cond{cond}-pair-{i:03d}-{j:03d}"
            if test(T, 0):
                rep.add(cid, PASS)
                continue
            bad = [k for k in cohomology_support(T) if (k > 0 if cond == 1 else k < 0)]
            rep.add(cid, FAIL, condition=cond, pair=[i, j], degree=bad[0],
                    cohomology={k: T.backend.describe(cohomology(T, k)) for k in bad},
                    reason=f"nonzero cohomology {bad_side} degree 0")
    rep.meta["pairs_tested"] = {"condition1": tested[1], "condition2": tested[2]}
    if not rep.cases:
        rep.notes.append("no pair met the hypotheses; the check is vacuous")
    return rep


@dataclass
class DeviationProbe:
    """Per-n outcome of the two conditions on a finite sample."""

    n_values: list[int]
    outcomes: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    sample_size: int = 0

    def refuted(self, n: int) -> bool:
        o = self.outcomes[n]
        return FAIL in (o["condition1"], o["condition2"])

    def unrefuted(self) -> list[int]:
        return [n for n in self.n_values if not self.refuted(n)]

    def to_dict(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "sample_size": self.sample_size,
            "outcomes": {str(n): dict(self.outcomes[n]) for n in self.n_values},
            "witnesses": {str(n): self.witnesses[n] for n in self.n_values if n in self.witnesses},
            "unrefuted": self.unrefuted(),
        }

    def to_report(self) -> VerificationReport:
        rep = VerificationReport("deviation")
        for n in self.n_values:
            o = self.outcomes[n]
            if self.refuted(n):
                # A refutation is the expected outcome for n != 0.
                verdict = PASS if n != 0 else FAIL
            else:
                verdict = PASS if n == 0 else UNDETERMINED
            data = {"n": n, **o}
            if n in self.witnesses:
                data["witness"] = self.witnesses[n]
            rep.add(f"n{n:+d}", verdict, **data)
        rep.meta["unrefuted"] = self.unrefuted()
        rep.meta["sample_size"] = self.sample_size
        rep.notes.append("a refuted n is outside the deviation; survival of n is only evidence")
        return rep


def unit_stalk_witnesses(backend: Backend, n_values: Iterable[int]) -> list[BoundedComplex]:
    """Unit stalks shifted so that every nonzero n has a refuting pair.

    For n > 0 the pair (1, Sigma^{-n} 1) violates condition 1; for n < 0
    the same pair violates condition 2.
    """
    U = unit_stalk(backend)
    out = [U]
    for n in sorted(set(n_values)):
        if n != 0:
            out.append(shift(U, -n))
    return out


def deviation_probe(sample: Sequence[BoundedComplex], n_range: Iterable[int], *,
                    backend: Optional[Backend] = None, augment: bool = True,
                    pairs: Optional[Sequence[tuple[int, int]]] = None) -> DeviationProbe:
    """Run ``monoidal_aisle_check`` for each n.

    With ``augment`` the shifted unit stalks are appended to the sample and
    every pair involving them is tested in addition to ``pairs``.
    """
    n_values = list(n_range)
    sample = list(sample)
    if augment and n_values:
        B = backend if backend is not None else (sample[0].backend if sample else None)
        if B is None:
            raise ValueError("augmenting an empty sample needs a backend")
        base = len(sample)
        sample += unit_stalk_witnesses(B, n_values)
        extra = [(i, j) for i in range(base, len(sample)) for j in range(base, len(sample))]
        if pairs is not None:
            pairs = list(pairs) + extra
    probe = DeviationProbe(n_values, sample_size=len(sample))
    for n in n_values:
        rep = monoidal_aisle_check(sample, n, pairs=pairs)
        outcome = {}
        for cond in (1, 2):
            cases = [c for c in rep.cases if c.id.startswith(f"cond{cond}-")]
            outcome[f"condition{cond}"] = combine(c.verdict for c in cases) if cases else PASS
            outcome[f"condition{cond}_pairs"] = len(cases)
        probe.outcomes[n] = outcome
        fails = rep.failures()
        if fails:
            probe.witnesses[n] = dict(fails[0].data)
    return probe


# -- tensor reducedness, unit, top cohomology ---------------------------------------------------

def tensor_reduced_check(backend: Backend, sample: Sequence) -> VerificationReport:
    """Every nonzero X in the sample has ``X (x) X != 0``.

    Pairs ``X (x) Y = 0`` with X, Y nonzero are listed as notes; they do not
    bear on reducedness, which only concerns squares.
    """
    B = backend
    rep = VerificationReport("tensor-reduced")
    rep.meta["backend"] = B.name
    for k, A in enumerate(sample):
        cid = f"object-{k:03d}"
        if B.is_zero(A):
            rep.add(cid, PASS, object=B.describe(A), note="zero object excluded")
            continue
        sq = B.tensor(A, A)
        if B.is_zero(sq):
            rep.add(cid, FAIL, object=B.describe(A), square=B.describe(sq))
        else:
            rep.add(cid, PASS, object=B.describe(A), square=B.describe(sq))
    for i in range(len(sample)):
        for j in range(i + 1, len(sample)):
            A, C = sample[i], sample[j]
            if B.is_zero(A) or B.is_zero(C):
                continue
            if B.is_zero(B.tensor(A, C)):
                rep.notes.append(f"cross-annihilation: object-{i:03d} (x) object-{j:03d} = 0 "
                                 f"({B.describe(A)} and {B.describe(C)})")
    return rep


def unit_concentration_check(backend: Backend, X: Optional[BoundedComplex] = None, *,
                             seed: int = 0) -> VerificationReport:
    """Cohomology of the unit stalk (or of ``X``) sits in degree 0 only and
    ``H^0`` is isomorphic to the unit."""
    B = backend
    X = X if X is not None else unit_stalk(B)
    rep = VerificationReport("unit-concentration")
    rep.meta["backend"] = B.name
    support = cohomology_support(X)
    for i in X.degrees:
        if i != 0:
            H = cohomology(X, i)
            if B.is_zero(H):
                rep.add(f"degree{i:+d}", PASS, degree=i)
            else:
                rep.add(f"degree{i:+d}", FAIL, degree=i, cohomology=B.describe(H))
    H0 = cohomology(X, 0)
    found, _, reason = B.iso_search(H0, B.unit(), seed=seed)
    data = {"degree": 0, "H0": B.describe(H0), "unit": B.describe(B.unit()), "iso_search": reason}
    rep.add("degree+0", {True: PASS, False: FAIL, None: UNDETERMINED}[found], **data)
    rep.meta["support"] = support
    return rep


def top_cohomology_square_check(X: BoundedComplex) -> VerificationReport:
    """With m the top (and bottom) cohomological degree of X, ``H^{2m}(X (x) X) != 0``."""
    B = X.backend
    support = cohomology_support(X)
    if not support:
        raise ComplexError("top cohomology check needs a complex with nonzero cohomology")
    T = total_tensor(X, X)
    rep = VerificationReport("top-cohomology-square")
    rep.meta["support"] = support
    for label, m in (("top", max(support)), ("bottom", min(support))):
        H = cohomology(T, 2 * m)
        data = {"m": m, "degree": 2 * m, "H_m": B.describe(cohomology(X, m)), "H_2m_square": B.describe(H)}
        rep.add(label, FAIL if B.is_zero(H) else PASS, **data)
    return rep


# -- the Z/6 example -----------------------------------------------------------------------------

def z6_pair(backend: Optional[IntegerBackend] = None) -> tuple[BoundedComplex, BoundedComplex]:
    """Stalk ``Z/6`` in degree 0 and ``Z --2--> Z`` in degrees -1, 0."""
    B = backend if backend is not None else IntegerBackend()
    Z1 = FgAbelianGroup.free(1)
    A = stalk(B, FgAbelianGroup.cyclic(6), 0)
    X = BoundedComplex(B, -1, [Z1, Z1], [GroupHom(Z1, Z1, IntMatrix([[2]]))], name="Z-2->Z")
    A.name = "Z/6"
    return A, X


def z6_counterexample() -> VerificationReport:
    """Is the standard t-structure on complexes of abelian groups monoidal?

    Both complexes lie in the heart, yet their tensor has cohomology ``Z/2``
    in degrees -1 and 0.  The report fails: condition 2 is violated at
    n = 0 and the Kunneth map fails in degree -1.  ``meta["reproduced"]``
    records whether every expected number came out exactly.
    """
    A, X = z6_pair()
    B = A.backend
    T = total_tensor(A, X)
    rep = VerificationReport("z6-counterexample")
    heart = {}
    for name, C in (("Z/6", A), ("X", X)):
        heart[name] = heart_membership(C)
        rep.add(f"heart-{name}", PASS if heart[name] else FAIL, complex=name, support=cohomology_support(C))
    factors = {n: B.describe(cohomology(T, n))["invariant_factors"] for n in T.degrees}
    for n in (-1, 0):
        rep.add(f"H{n:+d}", PASS, degree=n, invariant_factors=factors[n])
    aisle = monoidal_aisle_check([A, X], 0, pairs=[(0, 1)])
    cond2 = [c for c in aisle.failures() if c.data.get("condition") == 2]
    if cond2:
        rep.add("condition2-n0", FAIL, **cond2[0].data)
    else:
        rep.add("condition2-n0", PASS)
    kun = kunneth_check(A, X)
    for c in kun.cases:
        rep.add(f"kunneth-{c.id}", c.verdict, **c.data)
    bad = [c.data["degree"] for c in kun.failures()]
    reproduced = (all(heart.values()) and factors.get(-1) == [2] and factors.get(0) == [2]
                  and bool(cond2) and bad == [-1])
    rep.notes.append("invariant factors of the tensor: "
                     + ", ".join(f"H^{n} = {factors[n]}" for n in sorted(factors)))
    rep.meta.update(tensor_cohomology=factors, violated_condition=2 if cond2 else None, violated_at_n=0,
                    kunneth_failures=bad, reproduced=reproduced)
    return rep


# -- sampling helpers -------------------------------------------------------------------------------

def random_pairs(backend: Backend, count: int, seed: int, **kw) -> list[tuple[BoundedComplex, BoundedComplex]]:
    from .complexes.complex import random_complex

    rng = random.Random(seed)
    return [(random_complex(backend, rng, **kw), random_complex(backend, rng, **kw)) for _ in range(count)]


def kunneth_suite(backend: Backend, cases: int, seed: int, **kw) -> VerificationReport:
    reports = []
    for k, (X, Y) in enumerate(random_pairs(backend, cases, seed, **kw)):
        reports.append(kunneth_check(X, Y, seed=seed + k, case_prefix=f"pair-{k:03d}/"))
    rep = merge_reports("kunneth", reports)
    rep.meta.update(backend=backend.name, cases=cases, seed=seed)
    return rep


def deviation_sample(backend: Backend, cases: int, seed: int, **kw
                     ) -> tuple[list[BoundedComplex], list[tuple[int, int]]]:
    """``cases`` pairs that meet the n = 0 hypotheses by construction.

    Even cases pair two complexes truncated to ``D<=0``, odd cases two
    complexes truncated to ``D>=0``.
    """
    from .complexes.complex import truncate_ge, truncate_le

    sample, pairs = [], []
    for k, (X, Y) in enumerate(random_pairs(backend, cases, seed, **kw)):
        cut = truncate_le if k % 2 == 0 else truncate_ge
        sample += [cut(X, 0), cut(Y, 0)]
        pairs.append((2 * k, 2 * k + 1))
    return sample, pairs


__all__ = [
    "AisleSpec",
    "BackendError",
    "DeviationProbe",
    "aisle_membership",
    "deviation_probe",
    "deviation_sample",
    "in_ge",
    "in_le",
    "merge_reports",
    "random_pairs",
    "heart_membership",
    "kunneth_check",
    "kunneth_map",
    "kunneth_suite",
    "monoidal_aisle_check",
    "tensor_reduced_check",
    "top_cohomology_square_check",
    "unit_concentration_check",
    "unit_stalk_witnesses",
    "z6_counterexample",
    "z6_pair",
]
