"""Command-line front end.

    tenscat <algebra|module|complex|verify> <subcommand> [options]

Exit codes: 0 pass, 1 fail, 2 input error, 3 undetermined.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .complexes.backends import (
    Backend,
    HModuleBackend,
    IntegerBackend,
    QuiverBackend,
    group_characters,
    uniserial_taft_module,
)
from .complexes.complex import (
    BoundedComplex,
    cohomology,
    dual_complex,
    dual_zigzag,
    random_complex,
    right_dual_complex,
    total_tensor,
)
from .hopf.algebra import HopfAlgebra, check_hopf_axioms
from .hopf.builders import builtin_group_tables, group_algebra, sweedler_algebra, taft_algebra
from .hopf.modules import (
    HModule,
    hom_space,
    iso_search,
    left_dual_module,
    regular_module,
    right_dual_module,
    tensor_module,
    trivial_module,
    zigzag_left,
    zigzag_right,
)
from .linalg.fields import QQ, Field, field_from_tag
from .quiver import a2_functor_example, a2_quiver
from .report import FAIL, PASS, UNDETERMINED, VerificationReport
from . import verify as vf

EXIT = {PASS: 0, FAIL: 1, UNDETERMINED: 3}
INPUT_ERROR = 2

SUITES = ("kunneth", "aisle", "deviation", "reduced", "unit", "dual-zigzag", "z6-counterexample", "a2-functor")


class InputError(ValueError):
    """Bad command-line input; reported with exit code 2."""


# -- built-in selectors -----------------------------------------------------------------

def _field(args) -> Optional[Field]:
    if args.field is None:
        return None
    try:
        return field_from_tag(args.field)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def builtin_algebra(name: str, n: Optional[int] = None, field: Optional[Field] = None) -> HopfAlgebra:
    """``sweedler``, ``taft`` (with n), or a group name such as ``C4``, ``S3``, ``D4``, ``Q8``."""
    key = name.strip()
    try:
        if key.lower() == "sweedler":
            return sweedler_algebra(field or QQ)
        if key.lower() == "taft":
            return taft_algebra(n if n is not None else 3, field)
        if key.lower().startswith("taft") and key[4:].isdigit():
            return taft_algebra(int(key[4:]), field)
        tables = {k.lower(): (k, t) for k, t in builtin_group_tables().items()}
        if key.lower() in tables:
            label, table = tables[key.lower()]
            return group_algebra(table, field or QQ, name=f"k[{label}]")
        if key.lower() in ("kc2", "kc3", "kc4"):
            label, table = tables[key.lower()[1:]]
            return group_algebra(table, field or QQ, name=f"k[{label}]")
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"unknown built-in algebra {name!r} (sweedler, taft, C1..C8, C2xC2, C2xC4, "
                     f"C2xC2xC2, S3, D4, Q8)")


def builtin_backend(name: str, n: Optional[int] = None, field: Optional[Field] = None) -> Backend:
    """An algebra name, ``a2`` for representations of 1 -> 2, or ``z`` for abelian groups."""
    key = name.strip().lower()
    if key in ("a2", "quiver-a2"):
        return QuiverBackend(a2_quiver(), field or QQ)
    if key in ("z", "integers"):
        return IntegerBackend()
    return HModuleBackend(builtin_algebra(name, n, field))


def pick_module(H: HopfAlgebra, spec: str) -> HModule:
    """``trivial``, ``regular``, ``sign``, ``char:+-`` (generator signs),
    ``uniserial:A:L`` (Taft only) or ``catalog:K``."""
    kind, _, rest = spec.partition(":")
    if kind == "trivial":
        return trivial_module(H)
    if kind == "regular":
        return regular_module(H)
    if kind in ("sign", "char"):
        signs = rest if kind == "char" else "-" * len(H.generators)
        for chi in group_characters(H):
            if chi.name == "chi" + signs:
                return chi
        raise InputError(f"{H.name} has no character with generator signs {signs!r}")
    if kind == "uniserial":
        if not hasattr(H, "taft_n"):
            raise InputError("uniserial modules are only built for Taft algebras")
        try:
            a, length = (int(x) for x in rest.split(":"))
        except ValueError as exc:
            raise InputError(f"expected uniserial:A:L, got {spec!r}") from exc
        if not 1 <= length <= H.taft_n:
            raise InputError(f"uniserial length must lie in 1..{H.taft_n}")
        return uniserial_taft_module(H, a, length)
    if kind == "catalog":
        cat = HModuleBackend(H).catalog()
        try:
            return cat[int(rest)]
        except (ValueError, IndexError) as exc:
            raise InputError(f"catalog index must lie in 0..{len(cat) - 1}") from exc
    raise InputError(f"unknown module selector {spec!r}")


# -- output ---------------------------------------------------------------------------------

def _emit(report: VerificationReport, args, obj_doc: Optional[dict] = None) -> int:
    if args.format == "structured":
        sys.stdout.write(report.to_json() + "\n")
    else:
        sys.stdout.write(report.render_text(max_cases=args.max_cases) + "\n")
    if args.out:
        payload = obj_doc if obj_doc is not None else report.to_dict()
        Path(args.out).write_text(io.dumps(payload))
    return EXIT[report.verdict]


# -- algebra ---------------------------------------------------------------------------------

def _load_algebra(args) -> HopfAlgebra:
    if args.input:
        if len(args.input) != 1:
            raise InputError("algebra commands take a single --input file")
        doc = io.read_document(args.input[0])
        if doc.get("format") != io.HOPF_FORMAT:
            raise InputError(f"{args.input[0]} is not a Hopf algebra file")
        return io.hopf_from_json(doc)
    if not args.builtin:
        raise InputError("give --builtin NAME or --input PATH")
    return builtin_algebra(args.builtin, args.n, _field(args))


def cmd_algebra(args) -> int:
    H = _load_algebra(args)
    if args.sub == "check":
        rep = check_hopf_axioms(H)
        rep.meta["dim"] = H.dim
        return _emit(rep, args)
    if args.sub == "show":
        rep = VerificationReport("algebra-show", meta={"name": H.name, "dim": H.dim, "field": H.field.tag})
        rep.add("algebra", PASS, dim=H.dim, generators=list(H.generators))
        return _emit(rep, args, io.hopf_to_json(H))
    raise InputError(f"unknown algebra subcommand {args.sub!r}")


# -- modules ---------------------------------------------------------------------------------

def _module_operands(args) -> list[HModule]:
    mods = []
    H = None
    if args.builtin:
        H = builtin_algebra(args.builtin, args.n, _field(args))
    for path in args.input or []:
        doc = io.read_document(path)
        if doc.get("format") != io.MODULE_FORMAT:
            raise InputError(f"{path} is not a module file")
        mods.append(io.module_from_json(doc))
    for spec in args.pick or []:
        if H is None:
            raise InputError("--pick needs --builtin to name the algebra")
        mods.append(pick_module(H, spec))
    for M in mods[1:]:
        if not M.algebra.structure_equal(mods[0].algebra):
            raise InputError("modules are over different algebras")
    return mods


def _arity(mods, k, sub):
    if len(mods) != k:
        raise InputError(f"module {sub} takes {k} operand(s), got {len(mods)}")


def cmd_module(args) -> int:
    mods = _module_operands(args)
    sub = args.sub
    rep = VerificationReport(f"module-{sub}")
    if sub == "show":
        _arity(mods, 1, sub)
        M = mods[0]
        rep.add("module", PASS, dim=M.dim, algebra=M.algebra.name)
        return _emit(rep, args, io.module_to_json(M))
    if sub == "tensor":
        _arity(mods, 2, sub)
        T = tensor_module(*mods)
        rep.add("tensor", PASS, dims=[mods[0].dim, mods[1].dim], result_dim=T.dim)
        if T.dim == 1:
            found, W, reason = iso_search(T, trivial_module(T.algebra), seed=args.seed)
            data = {"reason": reason}
            if W is not None:
                data["witness"] = W.matrix
            rep.add("iso-to-trivial", PASS, is_trivial=found, **data)
        return _emit(rep, args, io.module_to_json(T))
    if sub == "dual":
        _arity(mods, 1, sub)
        M = mods[0]
        if args.side == "left":
            D, ev, coev = left_dual_module(M)
            zz = zigzag_left(M, ev, coev)
        else:
            D, ev, coev = right_dual_module(M)
            zz = zigzag_right(M, ev, coev)
        ok = all(zz)
        rep.add("zigzag", PASS if ok else FAIL, side=args.side, composites=list(zz), dim=D.dim)
        return _emit(rep, args, io.module_to_json(D))
    if sub == "hom":
        _arity(mods, 2, sub)
        basis = hom_space(*mods)
        rep.add("hom", PASS, dim=len(basis), basis=[f.matrix for f in basis])
        return _emit(rep, args)
    if sub == "iso":
        _arity(mods, 2, sub)
        found, W, reason = iso_search(*mods, seed=args.seed)
        data = {"reason": reason, "dims": [mods[0].dim, mods[1].dim]}
        if W is not None:
            data["witness"] = W.matrix
        rep.add("iso", {True: PASS, False: FAIL, None: UNDETERMINED}[found], **data)
        return _emit(rep, args)
    raise InputError(f"unknown module subcommand {sub!r}")


# -- complexes -----------------------------------------------------------------------------

def _complex_operands(args) -> list[BoundedComplex]:
    out = []
    backend = None
    for path in args.input or []:
        doc = io.read_document(path)
        if doc.get("format") != io.COMPLEX_FORMAT:
            raise InputError(f"{path} is not a complex file")
        if backend is not None and doc.get("backend") != io.backend_to_json(backend):
            raise InputError("complexes are over different backends")
        X = io.complex_from_json(doc, backend)
        backend = X.backend
        out.append(X)
    return out


def _cohomology_table(X: BoundedComplex) -> dict:
    B = X.backend
    return {str(n): B.describe(cohomology(X, n)) for n in X.degrees}


def cmd_complex(args) -> int:
    sub = args.sub
    rep = VerificationReport(f"complex-{sub}")
    if sub == "random":
        if not args.builtin:
            raise InputError("complex random needs --builtin")
        B = builtin_backend(args.builtin, args.n, _field(args))
        X = random_complex(B, random.Random(args.seed))
        rep.add("complex", PASS, lo=X.lo, hi=X.hi, objects=[B.describe(X.obj(k)) for k in X.degrees],
                cohomology=_cohomology_table(X))
        return _emit(rep, args, io.complex_to_json(X))
    xs = _complex_operands(args)
    if sub == "cohomology":
        _arity(xs, 1, sub)
        rep.add("cohomology", PASS, cohomology=_cohomology_table(xs[0]))
        return _emit(rep, args)
    if sub == "tensor":
        _arity(xs, 2, sub)
        T = total_tensor(*xs)
        rep.add("tensor", PASS, lo=T.lo, hi=T.hi, cohomology=_cohomology_table(T))
        return _emit(rep, args, io.complex_to_json(T))
    if sub == "dual":
        _arity(xs, 1, sub)
        X = xs[0]
        if not getattr(X.backend, "rigid", False):
            raise InputError(f"{X.backend.name} has no duals")
        left = args.side == "left"
        Y, ev, coev = dual_complex(X) if left else right_dual_complex(X)
        chain = ev.check_commutes() is None and coev.check_commutes() is None
        zz = dual_zigzag(X, Y, ev, coev, left=left)
        rep.add("dual", PASS if chain and all(zz) else FAIL, side=args.side, ev_coev_chain_maps=chain,
                composites=list(zz), cohomology=_cohomology_table(Y))
        return _emit(rep, args, io.complex_to_json(Y))
    raise InputError(f"unknown complex subcommand {sub!r}")


# -- verify ----------------------------------------------------------------------------------

def _suite_backend(args, default: str) -> Backend:
    return builtin_backend(args.builtin or default, args.n, _field(args))


def run_suite(name: str, args) -> VerificationReport:
    cases, seed = args.cases, args.seed
    if name == "z6-counterexample":
        return vf.z6_counterexample()
    if name == "a2-functor":
        return a2_functor_example()
    if name == "kunneth":
        B = _suite_backend(args, "sweedler")
        if isinstance(B, IntegerBackend):
            A, X = vf.z6_pair(B)
            rep = vf.kunneth_check(A, X)
            rep.meta["pair"] = "Z/6 stalk and Z --2--> Z"
            return rep
        return vf.kunneth_suite(B, cases, seed)
    if name == "aisle":
        B = _suite_backend(args, "sweedler")
        cut = args.cut
        sample = [X for pair in vf.random_pairs(B, cases, seed) for X in pair]
        rep = vf.monoidal_aisle_check(sample, cut, pairs=[(2 * k, 2 * k + 1) for k in range(cases)])
        rep.meta.update(backend=B.name, seed=seed)
        return rep
    if name == "deviation":
        B = _suite_backend(args, "sweedler")
        sample, pairs = vf.deviation_sample(B, cases, seed)
        probe = vf.deviation_probe(sample, range(-2, 3), backend=B, pairs=pairs)
        rep = probe.to_report()
        rep.meta.update(backend=B.name, seed=seed)
        return rep
    if name == "reduced":
        B = _suite_backend(args, "sweedler")
        return vf.tensor_reduced_check(B, [B.zero()] + list(B.catalog()))
    if name == "unit":
        return vf.unit_concentration_check(_suite_backend(args, "sweedler"), seed=seed)
    if name == "dual-zigzag":
        B = _suite_backend(args, "sweedler")
        if not getattr(B, "rigid", False):
            raise InputError(f"{B.name} has no duals")
        rng = random.Random(seed)
        rep = VerificationReport("dual-zigzag", meta={"backend": B.name, "seed": seed})
        for k in range(cases):
            X = random_complex(B, rng)
            for side, make in (("left", dual_complex), ("right", right_dual_complex)):
                Y, ev, coev = make(X)
                chain = ev.check_commutes() is None and coev.check_commutes() is None
                zz = dual_zigzag(X, Y, ev, coev, left=side == "left")
                rep.add(f"complex-{k:03d}-{side}", PASS if chain and all(zz) else FAIL,
                        ev_coev_chain_maps=chain, composites=list(zz))
        return rep
    raise InputError(f"unknown suite {name!r} (choose from {', '.join(SUITES)})")


def cmd_verify(args) -> int:
    return _emit(run_suite(args.sub, args), args)


# -- entry point ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tenscat", description="Exact checks for Hopf module categories and complexes.")
    p.add_argument("group", choices=("algebra", "module", "complex", "verify"))
    p.add_argument("sub", help="subcommand (algebra: check, show; module: show, tensor, dual, hom, iso; "
                               "complex: random, cohomology, tensor, dual; verify: " + ", ".join(SUITES) + ")")
    p.add_argument("--builtin", help="built-in algebra or backend: sweedler, taft, C2, S3, D4, Q8, a2, z, ...")
    p.add_argument("--n", type=int, help="Taft parameter")
    p.add_argument("--field", help="q, fp:P or cyc:N")
    p.add_argument("--input", action="append", help="input file (repeatable)")
    p.add_argument("--pick", action="append", help="built-in module selector (repeatable)")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--cut", type=int, default=0, help="n for the aisle suite")
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--max-cases", type=int, default=20, help="cases shown in text output")
    p.add_argument("--out", help="write the result object (or the report) here")
    return p


_COMMANDS = {"algebra": cmd_algebra, "module": cmd_module, "complex": cmd_complex, "verify": cmd_verify}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else 0
    if args.cases < 0:
        sys.stderr.write("tenscat: --cases must be nonnegative\n")
        return INPUT_ERROR
    try:
        return _COMMANDS[args.group](args)
    except (InputError, io.FormatError) as exc:
        sys.stderr.write(f"tenscat: input error: {exc}\n")
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
