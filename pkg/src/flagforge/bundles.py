"""JSON bundles: distributions, flags and lists of flags.

Forms and fields travel as text (``z0..zN`` naming); everything is re-validated
on load, so a bundle that parses is a bundle that describes a distribution.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple, Union

from flagforge import examples
from flagforge.extalg import MultiVector, PForm
from flagforge.polyring import Poly
from flagforge.projective import (
    DistributionError,
    FieldsDistribution,
    ProjDistribution,
    descend_form,
    fields_distribution,
)
from flagforge.textfmt import ParseError


class BundleError(ValueError):
    """Malformed bundle: missing keys, wrong types, unparsable text."""


def _require(data: Dict[str, Any], key: str, kind):
    if key not in data:
        raise BundleError(f"missing key {key!r}")
    value = data[key]
    if kind is int and isinstance(value, bool):
        raise BundleError(f"key {key!r} must be an integer")
    if not isinstance(value, kind):
        raise BundleError(f"key {key!r} has the wrong type")
    return value


def form_to_dict(dist: ProjDistribution) -> dict:
    return {"n": dist.n, "codim": dist.codim, "degree": dist.degree, "omega": str(dist.omega)}


def form_from_dict(data: Dict[str, Any]) -> ProjDistribution:
    n = _require(data, "n", int)
    codim = _require(data, "codim", int)
    text = _require(data, "omega", str)
    try:
        omega = PForm.parse(text, nvars=n + 1, degree=codim)
    except ParseError as exc:
        raise BundleError(f"cannot parse omega: {exc}") from exc
    dist = descend_form(omega, n)
    if "degree" in data and _require(data, "degree", int) != dist.degree:
        raise DistributionError(f"declared degree {data['degree']} but the form has degree {dist.degree}")
    return dist


def fields_to_dict(dist: FieldsDistribution) -> dict:
    return {"n": dist.n, "fields": [str(x) for x in dist.generators], "degrees": list(dist.degrees)}


def fields_from_dict(data: Dict[str, Any]) -> FieldsDistribution:
    n = _require(data, "n", int)
    texts = _require(data, "fields", list)
    try:
        gens = [MultiVector.parse(_str(t), nvars=n + 1, degree=1) for t in texts]
    except ParseError as exc:
        raise BundleError(f"cannot parse field: {exc}") from exc
    if not gens:
        raise BundleError("a fields distribution needs at least one field")
    dist = fields_distribution(gens, n)
    if "degrees" in data and list(_require(data, "degrees", list)) != list(dist.degrees):
        raise DistributionError(f"declared degrees {data['degrees']} but the fields have degrees {list(dist.degrees)}")
    return dist


def _str(value) -> str:
    if not isinstance(value, str):
        raise BundleError("field text must be a string")
    return value


@dataclass(frozen=True)
class FlagBundle:
    """A lower tangent-presented member and a codimension-one upper member."""

    n: int
    lower: FieldsDistribution
    upper: ProjDistribution
    meta: Dict[str, Any] = field(default_factory=dict, hash=False)

    def to_dict(self) -> dict:
        out = {"n": self.n, "lower": fields_to_dict(self.lower), "upper": form_to_dict(self.upper)}
        out.update(self.meta)
        return out

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FlagBundle":
        n = _require(data, "n", int)
        lower = fields_from_dict(_require(data, "lower", dict))
        upper = form_from_dict(_require(data, "upper", dict))
        if lower.n != n or upper.n != n:
            raise BundleError("members live on different projective spaces")
        meta = {k: v for k, v in data.items() if k not in ("n", "lower", "upper")}
        return cls(n, lower, upper, meta)


@dataclass(frozen=True)
class MultiBundle:
    flags: Tuple[FlagBundle, ...]

    def to_dict(self) -> dict:
        return {"flags": [f.to_dict() for f in self.flags]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "MultiBundle":
        items = _require(data, "flags", list)
        if not items:
            raise BundleError("empty list of flags")
        for item in items:
            if not isinstance(item, dict):
                raise BundleError("each flag must be an object")
        return cls(tuple(FlagBundle.from_dict(item) for item in items))


Bundle = Union[ProjDistribution, FieldsDistribution, FlagBundle, MultiBundle]


def bundle_from_dict(data: Any) -> Bundle:
    if not isinstance(data, dict):
        raise BundleError("a bundle must be a JSON object")
    if "flags" in data:
        return MultiBundle.from_dict(data)
    if "lower" in data or "upper" in data:
        return FlagBundle.from_dict(data)
    if "omega" in data:
        return form_from_dict(data)
    if "fields" in data:
        return fields_from_dict(data)
    raise BundleError("unrecognized bundle: expected one of flags, lower/upper, omega, fields")


def bundle_to_dict(bundle: Bundle) -> dict:
    if isinstance(bundle, ProjDistribution):
        return form_to_dict(bundle)
    if isinstance(bundle, FieldsDistribution):
        return fields_to_dict(bundle)
    return bundle.to_dict()


def dumps(data: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Bundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(f"invalid JSON: {exc}") from exc
    return bundle_from_dict(data)


# -- generated bundles ----------------------------------------------------------------


def disti_bundle(k: int) -> FlagBundle:
    """The antisymmetric-matrix distribution on P^3 with its tangent line field."""
    omega, x = examples.antisym_example(k)
    upper = descend_form(omega, 3)
    lower = fields_distribution([x], 3)
    meta = {
        "source": {"family": "disti", "k": k},
        "unverified": ["Sing(G) is finite (see the sing subcommand for evidence)"],
    }
    return FlagBundle(3, lower, upper, meta)


def hamilton_bundle(f: Poly, n2: int, k: Optional[int] = None, indices: Optional[Sequence[int]] = None) -> FlagBundle:
    """Kupka form of f with a selection of validated Hamiltonian fields below it.

    ``indices`` picks fields by number (default: H_1 only).  A printed field
    that fails validation is replaced by its corrected version; a field with
    neither is an error.
    """
    if k is None:
        k = examples.polynomial_degree(f)
    upper = examples.kupka_form(f, k, n2)
    candidates = examples.hamiltonian_fields(f, n2)
    indices = sorted(set(indices or [1]))
    chosen = []
    for i in indices:
        if not 1 <= i <= len(candidates):
            raise BundleError(f"field index {i} outside 1..{len(candidates)}")
        cand = candidates[i - 1]
        pattern = cand.pattern if cand.valid else cand.corrected_pattern
        if pattern is None:
            raise BundleError(f"H_{i} fails validation and has no sign correction")
        chosen.append(examples.homogenized_field(pattern, f, k))
    lower = fields_distribution(chosen, n2)
    brackets = examples.hamiltonian_brackets(candidates)
    meta = {
        "source": {"family": "hamilton", "f": str(f), "k": k, "n2": n2, "fields": indices},
        "candidates": [c.to_dict() for c in candidates],
        "brackets": {f"{i},{j}": str(b) for (i, j), b in sorted(brackets.items())},
        "unverified": [
            "f has a single critical point at the origin",
            "{f_k = 0} is smooth",
        ],
    }
    return FlagBundle(n2, lower, upper, meta)


__all__ = [
    "BundleError",
    "FlagBundle",
    "MultiBundle",
    "bundle_from_dict",
    "bundle_to_dict",
    "disti_bundle",
    "dumps",
    "hamilton_bundle",
    "fields_from_dict",
    "fields_to_dict",
    "form_from_dict",
    "form_to_dict",
    "loads",
]
