"""
JSON codec for command inputs and results

Numbers are exact on the wire: a rational is an integer or a [numerator, denominator]
pair, an element a + b*sqrt(D) is {"a": ..., "b": ..., "D": ...}. A cone is
{"n": ..., "generators": [...], "facets": [...]} with at least one of the two lists.

Every decoder first validates its input against the JSON Schemas shipped in
``algsupport/schemas``; a violation raises SchemaError carrying the JSONPath of the
offending value. Only the checks a schema cannot express (dimensions against n,
field sizes, agreement of generators and facets) are made by hand.
"""

import json
import logging
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from .binom_ideal import DicksonResult
from .charp.artin_schreier import ASRoot
from .charp.field import FiniteField, FqElem
from .charp.laurent import LaurentPoly
from .exceptions import SchemaError, ValidationError
from .gapcheck import GapReport
from .geom import Cone, Shift
from .numbers import QuadraticValue, RatVec, Scalar, quad
from .orders import WeightOrder
from .support import (
    DiagnosticReport,
    Family,
    FaceWitness,
    LinearCondition,
    NormalizationResult,
    PTailFamily,
    RayFamily,
    SemigroupFamily,
    SupportSpec,
    TauResult,
    Threshold,
    _denominator,
)

logger = logging.getLogger(__name__)

JSON = Any

SCHEMA_DIR = Path(__file__).parent / "schemas"


@lru_cache(maxsize=None)
def _registry() -> Registry:
    resources = []
    for path in sorted(SCHEMA_DIR.glob("*.json")):
        contents = json.loads(path.read_text(encoding="utf-8"))
        resources.append((contents["$id"], Resource.from_contents(contents)))
    logger.debug("loaded %d schemas from %s", len(resources), SCHEMA_DIR)
    return Registry().with_resources(resources)


@lru_cache(maxsize=None)
def _validator(ref: str) -> Draft202012Validator:
    return Draft202012Validator({"$ref": ref}, registry=_registry())


def validate(instance: JSON, ref: str, path: str = "$") -> None:
    """
    Validate a JSON value against a packaged schema

    Args:
        instance: Decoded JSON value
        ref: Schema reference, a file such as ``"dickson.json"`` or a definition such
            as ``"common.json#/$defs/cone"``
        path: JSONPath of ``instance`` inside the enclosing document

    Raises:
        SchemaError: The value violates the schema; ``path`` of the error points at the
            shallowest offending value
    """
    errors = list(_validator(ref).iter_errors(instance))
    if not errors:
        return
    err = min(
        errors,
        key=lambda e: (len(e.absolute_path), [str(p) for p in e.absolute_path], e.message),
    )
    raise SchemaError(err.message, path + err.json_path[1:]) from err


def loads(text: str) -> JSON:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} at line {e.lineno}") from e


def dumps(obj: JSON) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _rational(v: JSON) -> Fraction:
    if isinstance(v, list):
        return Fraction(int(v[0]), int(v[1]))
    return Fraction(int(v))


def _scalar(v: JSON, path: str) -> Scalar:
    if not isinstance(v, dict):
        return _rational(v)
    try:
        return quad(_rational(v.get("a", 0)), _rational(v.get("b", 0)), int(v["D"]))
    except ValidationError as e:
        raise SchemaError(str(e), path) from e


def _vec(v: JSON, path: str, n: Optional[int] = None) -> RatVec:
    if n is not None and len(v) != n:
        raise SchemaError(f"expected {n} coordinates, got {len(v)}", path)
    return RatVec(_scalar(x, f"{path}[{i}]") for i, x in enumerate(v))


def _vecs(v: JSON, path: str, n: Optional[int] = None) -> List[RatVec]:
    return [_vec(x, f"{path}[{i}]", n) for i, x in enumerate(v)]


def decode_rational(v: JSON, path: str = "$") -> Fraction:
    validate(v, "common.json#/$defs/rational", path)
    return _rational(v)


def decode_scalar(v: JSON, path: str = "$") -> Scalar:
    validate(v, "common.json#/$defs/scalar", path)
    return _scalar(v, path)


def encode_rational(x: Any) -> JSON:
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else [f.numerator, f.denominator]


def encode_scalar(x: Any) -> JSON:
    if isinstance(x, QuadraticValue):
        return {"a": encode_rational(x.a), "b": encode_rational(x.b), "D": x.D}
    return encode_rational(x)


def decode_vec(v: JSON, path: str = "$", n: Optional[int] = None) -> RatVec:
    validate(v, "common.json#/$defs/vector", path)
    return _vec(v, path, n)


def encode_vec(v: Sequence[Any]) -> JSON:
    return [encode_scalar(x) for x in v]


def _cone(d: JSON, path: str) -> Cone:
    n = d.get("n")
    gens = _vecs(d["generators"], f"{path}.generators", n) if "generators" in d else None
    facets = _vecs(d["facets"], f"{path}.facets", n) if "facets" in d else None
    try:
        by_gens = Cone.from_generators(gens, n) if gens is not None else None
        by_facets = Cone.from_inequalities(facets, [], n) if facets is not None else None
    except ValidationError as e:
        raise SchemaError(str(e), path) from e
    if by_gens is None:
        return by_facets  # type: ignore[return-value]
    if by_facets is not None:
        if by_gens.n != by_facets.n:
            raise SchemaError("generators and facets live in different dimensions", path)
        if not (by_gens.contains_cone(by_facets) and by_facets.contains_cone(by_gens)):
            raise SchemaError("generators and facets describe different cones", path)
    return by_gens


def decode_cone(d: JSON, path: str = "$") -> Cone:
    """
    Decode a cone given by generators, facet normals or both

    Args:
        d: ``{"n": ..., "generators": [...], "facets": [...]}``; ``n`` is optional when a
            list is nonempty, and the cone is ``{u : f.u >= 0 for every facet f}``
        path: JSONPath of ``d`` for error messages

    Returns:
        The cone, in canonical form

    Raises:
        SchemaError: Malformed input, vectors of the wrong length, or generators and
            facets that describe different cones
    """
    validate(d, "common.json#/$defs/cone", path)
    return _cone(d, path)


def encode_cone(c: Cone) -> JSON:
    return {
        "n": c.n,
        "generators": [encode_vec(g) for g in sorted(c.generators)],
        "facets": [encode_vec(f) for f in sorted(c.facets)],
    }


def decode_order(d: JSON, path: str = "$") -> WeightOrder:
    validate(d, "common.json#/$defs/order", path)
    try:
        return WeightOrder(tuple(_vecs(d["weights"], f"{path}.weights")))
    except SchemaError:
        raise
    except ValidationError as e:
        raise SchemaError(str(e), f"{path}.weights") from e


def encode_order(o: WeightOrder) -> JSON:
    return {"weights": [encode_vec(w) for w in o.weights]}


def decode_shifts(d: JSON, path: str = "$") -> List[Shift]:
    """[{"gamma": [...], "cone": {...}}, ...] as (gamma, cone) pairs"""
    validate(d, "dickson.json", path)
    shifts: List[Shift] = []
    for i, item in enumerate(d["shifts"]):
        where = f"{path}.shifts[{i}]"
        cone = _cone(item["cone"], f"{where}.cone")
        gamma = _vec(item["gamma"], f"{where}.gamma", cone.n)
        if not gamma.is_rational():
            raise SchemaError("shift vectors must be rational", f"{where}.gamma")
        shifts.append((gamma, cone))
    return shifts


def decode_truncations(d: JSON, path: str = "$") -> List[List[RatVec]]:
    validate(d, "diagnose.json", path)
    return [_vecs(level, f"{path}.truncations[{i}]") for i, level in enumerate(d["truncations"])]


def _family(kind: str, d: JSON, path: str, n: int) -> Family:
    base = _vec(d["base"], f"{path}.base", n)
    if kind == "rays":
        return RayFamily(base, _vec(d["step"], f"{path}.step", n))
    if kind == "semigroups":
        return SemigroupFamily(base, tuple(_vecs(d["gens"], f"{path}.gens", n)))
    drift = d.get("drift")
    return PTailFamily(
        base,
        _vec(d["dir"], f"{path}.dir", n),
        int(d["p"]),
        _vec(drift, f"{path}.drift", n) if drift is not None else None,
    )


def decode_spec(d: JSON, path: str = "$") -> SupportSpec:
    """
    Decode a finitely presented support

    Args:
        d: ``{"n", "points", "rays", "semigroups", "ptails", "lattice_scale"}``; every key
            but ``n`` is optional
        path: JSONPath of ``d`` for error messages

    Returns:
        The support specification; ``lattice_scale`` defaults to the common denominator
        of every vector in it

    Raises:
        SchemaError: Malformed input, or a family or lattice scale the support model
            rejects
    """
    validate(d, "support_spec.json", path)
    n = int(d["n"])
    points = _vecs(d.get("points", []), f"{path}.points", n)
    try:
        families: Dict[str, List[Any]] = {}
        for kind in ("rays", "semigroups", "ptails"):
            families[kind] = [
                _family(kind, item, f"{path}.{kind}[{i}]", n) for i, item in enumerate(d.get(kind, []))
            ]
        vectors = points + [v for fams in families.values() for f in fams for v in f.vectors()]
        scale = d.get("lattice_scale")
        return SupportSpec(
            n,
            tuple(points),
            tuple(families["rays"]),  # type: ignore[arg-type]
            tuple(families["semigroups"]),  # type: ignore[arg-type]
            tuple(families["ptails"]),  # type: ignore[arg-type]
            int(scale) if scale is not None else _denominator(vectors),
        )
    except SchemaError:
        raise
    except ValidationError as e:
        raise SchemaError(str(e), path) from e


def encode_family(f: Family) -> JSON:
    if isinstance(f, RayFamily):
        return {"kind": "ray", "base": encode_vec(f.base), "step": encode_vec(f.step)}
    if isinstance(f, SemigroupFamily):
        return {"kind": "semigroup", "base": encode_vec(f.base), "gens": [encode_vec(g) for g in f.gens]}
    out = {"kind": "ptail", "base": encode_vec(f.base), "dir": encode_vec(f.dir), "p": f.p}
    if f.drift is not None:
        out["drift"] = encode_vec(f.drift)
    return out


def encode_spec(s: SupportSpec) -> JSON:
    def strip(f: Family) -> JSON:
        out = encode_family(f)
        del out["kind"]
        return out

    return {
        "n": s.n,
        "points": [encode_vec(x) for x in s.points],
        "rays": [strip(f) for f in s.rays],
        "semigroups": [strip(f) for f in s.semigroups],
        "ptails": [strip(f) for f in s.ptails],
        "lattice_scale": s.lattice_scale,
    }


def _finite_field(d: JSON, path: str) -> Optional[FiniteField]:
    if d is None:
        return None
    try:
        return FiniteField(int(d["p"]), int(d.get("m", 1)))
    except ValidationError as e:
        raise SchemaError(str(e), path) from e


def decode_field(d: JSON, path: str = "$") -> Optional[FiniteField]:
    validate(d, "common.json#/$defs/field", path)
    return _finite_field(d, path)


def _coeff(v: JSON, field: Optional[FiniteField], path: str) -> Any:
    if field is None:
        if isinstance(v, dict):
            raise SchemaError("finite field coefficients need a field", path)
        return _rational(v)
    if isinstance(v, list):
        raise SchemaError("coefficients over a finite field are integers or {\"fq\": [...]}", path)
    if not isinstance(v, dict):
        return field.element(int(v))
    try:
        return field.from_coeffs([int(x) for x in v["fq"]])
    except ValidationError as e:
        raise SchemaError(str(e), path) from e


def _encode_coeff(c: Any) -> JSON:
    if isinstance(c, FqElem):
        return c.coeffs()[0] if c.field.m == 1 else {"fq": c.coeffs()}
    return encode_rational(c)


def decode_poly(d: JSON, path: str = "$") -> LaurentPoly:
    """
    Decode a Laurent polynomial with rational exponents

    Args:
        d: ``{"field": {"p", "m"} | null, "n": ..., "terms": [{"exp", "coeff"}, ...]}``;
            coefficients are rationals over Q and integers or ``{"fq": [...]}`` over F_q
        path: JSONPath of ``d`` for error messages

    Returns:
        The polynomial with like terms merged

    Raises:
        SchemaError: Malformed input, an invalid field, or exponents of the wrong length
    """
    validate(d, "common.json#/$defs/laurent_poly", path)
    field = _finite_field(d.get("field"), f"{path}.field")
    n = int(d["n"])
    terms = []
    for i, t in enumerate(d.get("terms", [])):
        where = f"{path}.terms[{i}]"
        exp = _vec(t["exp"], f"{where}.exp", n)
        terms.append((exp, _coeff(t["coeff"], field, f"{where}.coeff")))
    try:
        return LaurentPoly(n, tuple(terms), field)
    except ValidationError as e:
        raise SchemaError(str(e), path) from e


def encode_poly(g: LaurentPoly) -> JSON:
    field = None if g.field is None else {"p": g.field.p, "m": g.field.m}
    return {
        "field": field,
        "n": g.n,
        "terms": [{"exp": encode_vec(e), "coeff": _encode_coeff(c)} for e, c in g.terms],
    }


def encode_conditions(conds: Sequence[LinearCondition]) -> JSON:
    return [{"normal": encode_vec(c.normal), "strict": c.strict} for c in conds]


def encode_tau(r: TauResult) -> JSON:
    return {
        "tau": encode_cone(r.tau),
        "tau_dual": encode_cone(r.tau_dual),
        "tau0_conditions": encode_conditions(r.tau0_conditions),
        "tau0_empty": r.tau0_empty,
        "tau1_conditions": encode_conditions(r.tau1_conditions),
        "tau_tilde": encode_cone(r.tau_tilde),
    }


def encode_threshold(t: Threshold) -> JSON:
    return {"t": encode_rational(t.t), "attained": t.attained, "level_infinite": t.level_infinite}


def _encode_witness(w: FaceWitness) -> JSON:
    return {
        "kind": w.kind.value,
        "face": encode_cone(w.face),
        "apex": encode_vec(w.apex) if w.apex is not None else None,
        "family": encode_family(w.family) if w.family is not None else None,
    }


def encode_normalization(r: NormalizationResult) -> JSON:
    return {
        "C": [encode_vec(c) for c in r.C],
        "removed_points": [encode_vec(x) for x in r.removed_points],
        "orthant_adjust": encode_spec(r.orthant_adjust),
        "residual": encode_spec(r.residual),
        "face_witnesses": [_encode_witness(w) for w in r.face_witnesses],
        "sigma": encode_cone(r.sigma),
        "levels": [{"normal": encode_vec(u), "level": encode_rational(c)} for u, c in r.levels],
    }


def encode_dickson(r: DicksonResult) -> JSON:
    return {
        "C": [encode_vec(x) for x in r.C],
        "sigma": encode_cone(r.sigma),
        "certified": r.certified,
    }


def encode_asroot(r: ASRoot) -> JSON:
    return {
        "root": encode_poly(r.root),
        "residual": encode_poly(r.residual),
        "root_set_size": r.root_set_size,
        "depth": r.depth,
    }


def _opt_rational(x: Optional[Fraction]) -> JSON:
    return encode_rational(x) if x is not None else None


def encode_gap(r: GapReport) -> JSON:
    return {
        "d": r.d,
        "nu": encode_rational(r.nu),
        "K": encode_rational(r.K),
        "ratios": [_opt_rational(x) for x in r.ratios],
        "verdict": r.verdict,
        "first_violation": r.first_violation,
        "residual_valuation": _opt_rational(r.residual_valuation),
        "levels": [encode_rational(k) for k in r.levels],
    }


def encode_diagnostic(r: DiagnosticReport) -> JSON:
    return {
        "lower_slopes": [_opt_rational(x) for x in r.lower_slopes],
        "upper_slopes": [_opt_rational(x) for x in r.upper_slopes],
        "verdict": r.verdict.value,
        "stabilized_at": r.stabilized_at,
    }
