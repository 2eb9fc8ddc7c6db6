"""JSON file formats for algebras, modules, representations and complexes.

Scalars use the field's own serialization: ``"p/q"`` over Q, ``"k mod p"``
over GF(p), coefficient lists over Q(zeta_n).  Every document carries a
``format`` tag so that a file can be loaded without knowing its kind.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional

from .abelian import FgAbelianGroup, GroupHom
from .complexes.backends import Backend, HModuleBackend, IntegerBackend, QuiverBackend
from .complexes.complex import BoundedComplex
from .hopf.algebra import FiniteDimAlgebra, HopfAlgebra
from .hopf.modules import HModule, ModuleHom
from .linalg.fields import Field, field_from_spec
from .linalg.intmat import IntMatrix
from .linalg.matrix import ExactMatrix
from .quiver import Quiver, QuiverRep, RepHom

HOPF_FORMAT = "tenscat-hopf/1"
MODULE_FORMAT = "tenscat-module/1"
REP_FORMAT = "tenscat-quiver-rep/1"
COMPLEX_FORMAT = "tenscat-complex/1"


class FormatError(ValueError):
    """A document that does not match the expected layout."""


def _require(doc: dict, key: str, where: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise FormatError(f"{where}: missing field {key!r}")
    return doc[key]


def _matrix(field: Field, data, nrows: int, ncols: int, where: str) -> ExactMatrix:
    try:
        return ExactMatrix.from_json(field, data, nrows, ncols)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from exc


# -- Hopf algebras ------------------------------------------------------------------

def hopf_to_json(H: HopfAlgebra) -> dict:
    F = H.field
    tj = F.to_json
    doc = {
        "format": HOPF_FORMAT,
        "name": H.name,
        "dim": H.dim,
        "field": F.spec,
        "mult": [[[tj(x) for x in c] for c in r] for r in H.algebra.mult],
        "unit": [tj(x) for x in H.unit],
        "comult": H.comult.to_json(),
        "counit": [tj(x) for x in H.counit],
        "antipode": H.antipode.to_json(),
        "generators": list(H.generators),
    }
    if H.has_antipode_inverse:
        doc["antipode_inverse"] = H.antipode_inverse.to_json()
    for attr in ("taft_n",):
        if hasattr(H, attr):
            doc[attr] = getattr(H, attr)
    if hasattr(H, "taft_q"):
        doc["taft_q"] = tj(H.taft_q)
    return doc


def hopf_from_json(doc: dict) -> HopfAlgebra:
    where = "hopf algebra"
    d = _require(doc, "dim", where)
    if not isinstance(d, int) or d < 1:
        raise FormatError(f"{where}: dim must be a positive integer")
    try:
        F = field_from_spec(_require(doc, "field", where))
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"{where}: bad field: {exc}") from exc
    mult = _require(doc, "mult", where)
    try:
        mult = [[[F.parse(x) for x in c] for c in r] for r in mult]
        unit = [F.parse(x) for x in _require(doc, "unit", where)]
        counit = [F.parse(x) for x in _require(doc, "counit", where)]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: {exc}") from exc
    comult = _matrix(F, _require(doc, "comult", where), d * d, d, f"{where}.comult")
    antipode = _matrix(F, _require(doc, "antipode", where), d, d, f"{where}.antipode")
    s_inv = None
    if "antipode_inverse" in doc:
        s_inv = _matrix(F, doc["antipode_inverse"], d, d, f"{where}.antipode_inverse")
    try:
        A = FiniteDimAlgebra(F, d, mult, unit)
        H = HopfAlgebra(A, comult, counit, antipode, s_inv, generators=doc.get("generators"),
                        name=doc.get("name", ""))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc
    if "taft_n" in doc:
        H.taft_n = int(doc["taft_n"])
        H.taft_q = F.parse(doc["taft_q"])
    return H


# -- modules --------------------------------------------------------------------------

def module_to_json(M: HModule) -> dict:
    return {"format": MODULE_FORMAT, "name": M.name, "algebra": hopf_to_json(M.algebra), **M.to_json()}


def module_from_json(doc: dict, algebra: Optional[HopfAlgebra] = None) -> HModule:
    where = "module"
    H = algebra if algebra is not None else hopf_from_json(_require(doc, "algebra", where))
    if algebra is not None and "algebra" in doc and not algebra.structure_equal(hopf_from_json(doc["algebra"])):
        raise FormatError(f"{where}: module is over a different algebra")
    return _module_body(H, doc, where)


def _module_body(H: HopfAlgebra, doc: dict, where: str) -> HModule:
    d = _require(doc, "dim", where)
    acts = _require(doc, "action", where)
    gens = {}
    for key, data in acts.items():
        try:
            s = int(key)
        except ValueError as exc:
            raise FormatError(f"{where}: action key {key!r} is not a basis index") from exc
        gens[s] = _matrix(H.field, data, d, d, f"{where}.action[{key}]")
    missing = set(H.generators) - set(gens)
    if missing:
        raise FormatError(f"{where}: no action given for generators {sorted(missing)}")
    try:
        return HModule(H, d, gen_action=gens, name=doc.get("name", ""))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def modules_equal(M: HModule, N: HModule) -> bool:
    return (M.algebra.structure_equal(N.algebra) and M.dim == N.dim
            and all(M.gen_action[s] == N.gen_action[s] for s in M.algebra.generators))


# -- quiver representations -----------------------------------------------------------

def rep_to_json(V: QuiverRep) -> dict:
    return {"format": REP_FORMAT, "name": V.name, "field_spec": V.field.spec, **V.to_json()}


def rep_from_json(doc: dict, field: Optional[Field] = None) -> QuiverRep:
    where = "quiver representation"
    qd = _require(doc, "quiver", where)
    try:
        Q = Quiver(int(_require(qd, "vertices", where)), tuple(tuple(a) for a in _require(qd, "arrows", where)))
        F = field if field is not None else field_from_spec(_require(doc, "field_spec", where))
    except (ValueError, TypeError) as exc:
        raise FormatError(f"{where}: {exc}") from exc
    dims = list(_require(doc, "dims", where))
    maps = _require(doc, "maps", where)
    if len(maps) != len(Q.arrows):
        raise FormatError(f"{where}: expected {len(Q.arrows)} arrow matrices, got {len(maps)}")
    mats = [_matrix(F, m, dims[t], dims[s], f"{where}.maps[{k}]") for k, ((s, t), m) in enumerate(zip(Q.arrows, maps))]
    try:
        return QuiverRep(Q, F, dims, mats, name=doc.get("name", ""))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


# -- complexes ------------------------------------------------------------------------

def backend_to_json(B: Backend) -> dict:
    if isinstance(B, HModuleBackend):
        return {"kind": "hopf-modules", "algebra": hopf_to_json(B.H)}
    if isinstance(B, QuiverBackend):
        return {"kind": "quiver", "quiver": B.quiver.to_json(), "field": B.field.spec}
    if isinstance(B, IntegerBackend):
        return {"kind": "integers"}
    raise FormatError(f"no file format for backend {B.name}")


def backend_from_json(doc: dict) -> Backend:
    kind = _require(doc, "kind", "backend")
    if kind == "hopf-modules":
        return HModuleBackend(hopf_from_json(_require(doc, "algebra", "backend")))
    if kind == "quiver":
        qd = _require(doc, "quiver", "backend")
        Q = Quiver(int(qd["vertices"]), tuple(tuple(a) for a in qd["arrows"]))
        return QuiverBackend(Q, field_from_spec(_require(doc, "field", "backend")))
    if kind == "integers":
        return IntegerBackend()
    raise FormatError(f"unknown backend kind {kind!r}")


def complex_to_json(X: BoundedComplex) -> dict:
    body = X.to_json()
    body.pop("backend", None)
    return {"format": COMPLEX_FORMAT, "name": X.name, "backend": backend_to_json(X.backend), **body}


def _object_from_json(B: Backend, doc, where: str):
    if isinstance(B, HModuleBackend):
        return _module_body(B.H, doc, where)
    if isinstance(B, QuiverBackend):
        return rep_from_json({**doc, "quiver": B.quiver.to_json()}, field=B.field)
    rel = _require(doc, "relations", where)
    n = int(_require(doc, "ngens", where))
    ncols = len(rel[0]) if rel else 0
    return FgAbelianGroup(n, IntMatrix([list(r) for r in rel], ncols) if ncols else IntMatrix.zeros(n, 0))


def _mor_from_json(B: Backend, A, C, data, where: str):
    if isinstance(B, HModuleBackend):
        return ModuleHom(A, C, _matrix(B.field, data, C.dim, A.dim, where))
    if isinstance(B, QuiverBackend):
        comps = [_matrix(B.field, m, C.dims[v], A.dims[v], f"{where}[{v}]") for v, m in enumerate(data)]
        return RepHom(A, C, comps)
    return GroupHom(A, C, IntMatrix([list(r) for r in data], A.ngens))


def complex_from_json(doc: dict, backend: Optional[Backend] = None) -> BoundedComplex:
    """Parse a complex; pass ``backend`` to share one backend between files."""
    where = "complex"
    B = backend if backend is not None else backend_from_json(_require(doc, "backend", where))
    lo = int(_require(doc, "lo", where))
    objs = [_object_from_json(B, o, f"{where}.objects[{k}]") for k, o in enumerate(_require(doc, "objects", where))]
    diffs_doc = _require(doc, "differentials", where)
    if objs and len(diffs_doc) != len(objs) - 1:
        raise FormatError(f"{where}: {len(objs)} objects need {len(objs) - 1} differentials")
    try:
        diffs = [_mor_from_json(B, objs[k], objs[k + 1], m, f"{where}.differentials[{k}]")
                 for k, m in enumerate(diffs_doc)]
        return BoundedComplex(B, lo, objs, diffs, name=doc.get("name", ""))
    except ValueError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def complexes_equal(X: BoundedComplex, Y: BoundedComplex) -> bool:
    return json.dumps(complex_to_json(X), sort_keys=True) == json.dumps(complex_to_json(Y), sort_keys=True)


# -- files ------------------------------------------------------------------------------

_LOADERS = {
    HOPF_FORMAT: hopf_from_json,
    MODULE_FORMAT: module_from_json,
    REP_FORMAT: rep_from_json,
    COMPLEX_FORMAT: complex_from_json,
}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: top level must be an object")
    return doc


def load(path: str | Path):
    """Load any tagged document."""
    doc = read_document(path)
    fmt = doc.get("format")
    if fmt not in _LOADERS:
        raise FormatError(f"{path}: unknown format tag {fmt!r}")
    return _LOADERS[fmt](doc)
