"""JSON and OFF serialization for forms, chains, complexes and cochains.

Every rational is written as a string (``"3/2"``) so nothing passes through
floating point.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from .cochain import Cochain, HodgeSplit
from .complex import Chain, SimplicialComplex
from .errors import InputError
from .expr import format_form, parse_polynomial
from .exterior import DifferentialForm
from .integrate import EmbeddedChain, EmbeddedSimplex

PathLike = Union[str, Path]


def dumps(obj: Any) -> str:
    """Byte-deterministic JSON: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _rational(value, what: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{what}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"{what}: expected a rational, got {value!r}")


def _load_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg})", exc.lineno, exc.colno) from exc


def _field(obj: Dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


# -- forms ------------------------------------------------------------------

def form_to_json(w: DifferentialForm) -> Dict[str, Any]:
    return {
        "dimension": w.dimension,
        "degree": w.degree,
        "terms": [{"blade": list(idx), "coeff": str(c)} for idx, c in w.items()],
    }


def form_from_json(obj: Dict[str, Any]) -> DifferentialForm:
    n = _field(obj, "dimension", "form")
    p = _field(obj, "degree", "form")
    coeffs = {}
    for term in _field(obj, "terms", "form"):
        blade = tuple(_field(term, "blade", "form term"))
        coeffs[blade] = coeffs.get(blade, 0) + parse_polynomial(_field(term, "coeff", "form term"), n)
    try:
        return DifferentialForm(n, p, coeffs)
    except (ValueError, IndexError) as exc:
        raise InputError(f"form: {exc}") from exc


def form_payload(w: DifferentialForm) -> Dict[str, Any]:
    return {"form": form_to_json(w), "text": format_form(w)}


# -- embedded chains ----------------------------------------------------------

def embedded_chain_to_json(c: EmbeddedChain) -> Dict[str, Any]:
    return {
        "ambient": c.ambient,
        "degree": c.degree,
        "simplices": [
            {"coeff": str(coeff * s.orientation), "vertices": [[str(x) for x in v] for v in s.vertices]}
            for coeff, s in c.terms
        ],
    }


def embedded_chain_from_json(obj: Dict[str, Any]) -> EmbeddedChain:
    n = _field(obj, "ambient", "chain")
    p = _field(obj, "degree", "chain")
    terms = []
    for k, item in enumerate(_field(obj, "simplices", "chain")):
        where = f"chain simplex {k}"
        coeff = _rational(item.get("coeff", 1), where)
        verts = [[_rational(x, where) for x in v] for v in _field(item, "vertices", where)]
        try:
            terms.append((coeff, EmbeddedSimplex(verts)))
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
    try:
        return EmbeddedChain(n, p, terms)
    except ValueError as exc:
        raise InputError(f"chain: {exc}") from exc


def load_embedded_chain(path: PathLike) -> EmbeddedChain:
    return embedded_chain_from_json(_load_json(path))


# -- complexes and cochains -----------------------------------------------------

def complex_to_json(K: SimplicialComplex) -> Dict[str, Any]:
    return {"facets": [list(f) for f in K.facets]}


def complex_from_json(obj: Dict[str, Any]) -> SimplicialComplex:
    facets = _field(obj, "facets", "complex")
    try:
        return SimplicialComplex([tuple(f) for f in facets])
    except (TypeError, ValueError) as exc:
        raise InputError(f"complex: {exc}") from exc


def cochain_to_json(w: Chain) -> Dict[str, Any]:
    simplices = w.complex.simplices[w.degree] if 0 <= w.degree <= w.complex.dimension else []
    return {
        "degree": w.degree,
        "values": [{"simplex": list(s), "value": str(v)} for s, v in zip(simplices, w.values)],
    }


def cochain_from_json(obj: Dict[str, Any], K: SimplicialComplex, cls=Cochain) -> Chain:
    p = _field(obj, "degree", "cochain")
    if not isinstance(p, int) or not 0 <= p <= K.dimension:
        raise InputError(f"cochain degree {p!r} outside 0..{K.dimension}")
    coeffs: Dict[Tuple[int, ...], Fraction] = {}
    for k, item in enumerate(_field(obj, "values", "cochain")):
        s = tuple(_field(item, "simplex", f"cochain entry {k}"))
        if s in coeffs:
            raise InputError(f"cochain entry {k}: simplex {list(s)} listed twice")
        coeffs[s] = _rational(_field(item, "value", f"cochain entry {k}"), f"cochain entry {k}")
    try:
        return cls.from_dict(K, p, coeffs)
    except (KeyError, ValueError) as exc:
        raise InputError(f"cochain: {exc.args[0]}") from exc


def split_to_json(split: HodgeSplit) -> Dict[str, Any]:
    return {
        "exact": cochain_to_json(split.exact),
        "coexact": cochain_to_json(split.coexact),
        "harmonic": cochain_to_json(split.harmonic),
        "alpha": cochain_to_json(split.alpha),
        "beta": cochain_to_json(split.beta),
    }


# -- OFF meshes --------------------------------------------------------------

def _off_lines(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def parse_off(text: str) -> Tuple[SimplicialComplex, List[Tuple[Fraction, ...]]]:
    """Triangle-only OFF: returns the 2-complex and exact vertex coordinates."""
    lines = _off_lines(text)
    if not lines or lines[0][1][0] != "OFF":
        raise InputError("OFF: missing 'OFF' header", lines[0][0] if lines else 1, 1)
    header_rest = lines[0][1][1:]
    body = lines[1:]
    if header_rest:
        counts_line = (lines[0][0], header_rest)
    else:
        if not body:
            raise InputError("OFF: missing counts line")
        counts_line, body = body[0], body[1:]
    lineno, counts = counts_line
    try:
        nv, nf = int(counts[0]), int(counts[1])
        if len(counts) > 2:
            int(counts[2])
    except (IndexError, ValueError):
        raise InputError("OFF: malformed counts line 'V F E'", lineno, 1) from None
    if nv < 0 or nf < 0:
        raise InputError("OFF: negative counts", lineno, 1)
    if len(body) < nv + nf:
        raise InputError(f"OFF: expected {nv} vertices and {nf} faces, file is short")
    coords = []
    for lineno, fields in body[:nv]:
        if len(fields) != 3:
            raise InputError("OFF: vertex lines need 3 coordinates", lineno, 1)
        try:
            coords.append(tuple(Fraction(x) for x in fields))
        except ValueError:
            raise InputError("OFF: malformed vertex coordinate", lineno, 1) from None
    facets = []
    for lineno, fields in body[nv:nv + nf]:
        try:
            ids = [int(x) for x in fields]
        except ValueError:
            raise InputError("OFF: malformed face line", lineno, 1) from None
        if not ids or ids[0] != 3 or len(ids) < 4:
            raise InputError("OFF: only triangular faces are supported", lineno, 1)
        face = tuple(ids[1:4])
        if any(not 0 <= v < nv for v in face):
            raise InputError(f"OFF: face references a vertex outside 0..{nv - 1}", lineno, 1)
        facets.append(face)
    # isolated vertices still belong to the complex
    used = {v for f in facets for v in f}
    facets.extend((v,) for v in range(nv) if v not in used)
    try:
        K = SimplicialComplex(facets)
    except ValueError as exc:
        raise InputError(f"OFF: {exc}") from exc
    return K, coords


def ingest_off(path: PathLike) -> Tuple[SimplicialComplex, List[Tuple[Fraction, ...]]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_off(text)


def off_to_embedded_chain(K: SimplicialComplex, coords) -> EmbeddedChain:
    """The oriented triangles of an OFF surface as a 2-chain in R^3."""
    terms = [(1, EmbeddedSimplex([coords[v] for v in f])) for f in K.facets if len(f) == 3]
    return EmbeddedChain(3, 2, terms)


def ingest_complex(path: PathLike) -> SimplicialComplex:
    """Complex from a ``.off`` file or complex JSON ``{"facets": [...]}``."""
    if str(path).lower().endswith(".off"):
        return ingest_off(path)[0]
    return complex_from_json(_load_json(path))


def ingest_complex_json(path: PathLike) -> SimplicialComplex:
    return complex_from_json(_load_json(path))


def ingest_chain_json(path: PathLike) -> EmbeddedChain:
    return load_embedded_chain(path)


def ingest_cochain_json(path: PathLike, K: SimplicialComplex, cls=Cochain) -> Chain:
    return cochain_from_json(_load_json(path), K, cls)
