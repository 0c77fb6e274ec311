"""Closed method whitelist: every statement a script or editor may produce.

The registry is keyed by (target kind, method name).  Each entry fixes the
parameter signature and, for creation methods, the child kind that a call
appends to its command object.  Anything outside this table is UnknownMethod.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, TypeMismatch, UnknownMethod

# parameter types: real | string | bool | real_list | string_list | rect
# rect = real_list of exactly 4 entries


@dataclass(frozen=True)
class Param:
    name: str
    type: str


@dataclass(frozen=True)
class MethodSpec:
    target_kind: str
    name: str
    params: tuple[Param, ...]
    creates: str | None = None  # child segment kind appended by the call


def _spec(kind: str, name: str, *params: tuple[str, str], creates: str | None = None) -> MethodSpec:
    return MethodSpec(kind, name, tuple(Param(n, t) for n, t in params), creates)


_SPECS = [
    _spec("figure", "set_size_cm", ("width_cm", "real"), ("height_cm", "real")),
    _spec("figure", "set_dpi", ("dpi", "real")),
    _spec("figure", "add_axes", ("rect", "rect"), creates="axes"),
    _spec("axes", "set_position", ("rect", "rect")),
    _spec("axes", "set_xlim", ("low", "real"), ("high", "real")),
    _spec("axes", "set_ylim", ("low", "real"), ("high", "real")),
    _spec("axes", "set_xlabel", ("label", "string")),
    _spec("axes", "set_ylabel", ("label", "string")),
    _spec("axes", "set_title", ("title", "string")),
    _spec("axes", "set_xticks", ("locations", "real_list")),
    _spec("axes", "set_xticklabels", ("labels", "string_list")),
    _spec("axes", "set_yticks", ("locations", "real_list")),
    _spec("axes", "set_yticklabels", ("labels", "string_list")),
    _spec("axes", "plot_csv", ("path", "string"), ("xcol", "string"), ("ycol", "string"), creates="lines"),
    _spec("axes", "text", ("x", "real"), ("y", "real"), ("content", "string"), creates="texts"),
    _spec("axes", "legend", creates="legend"),
    _spec("axes", "grid", ("visible", "bool")),
    _spec("text", "set_text", ("content", "string")),
    _spec("text", "set_position", ("x", "real"), ("y", "real")),
    _spec("text", "set_fontsize", ("points", "real")),
    _spec("text", "set_color", ("color", "string")),
    _spec("text", "set_rotation", ("degrees", "real")),
    _spec("text", "set_weight", ("weight", "string")),
    _spec("legend", "set_loc_fraction", ("x", "real"), ("y", "real")),
    _spec("legend", "set_visible", ("visible", "bool")),
]

REGISTRY: dict[tuple[str, str], MethodSpec] = {(s.target_kind, s.name): s for s in _SPECS}

CREATION_METHODS = {s.name for s in _SPECS if s.creates}


def lookup(target_kind: str, method: str) -> MethodSpec:
    spec = REGISTRY.get((target_kind, method))
    if spec is None:
        raise UnknownMethod(f"no method {method!r} on {target_kind}")
    return spec


def _coerce_value(value, typ: str, name: str):
    if typ == "real":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise TypeMismatch(f"parameter {name!r} must be a real number")
        return float(value)
    if typ == "string":
        if not isinstance(value, str):
            raise TypeMismatch(f"parameter {name!r} must be a string")
        if "\n" in value or "\r" in value:
            raise TypeMismatch(f"parameter {name!r} must not contain line breaks")
        return value
    if typ == "bool":
        if not isinstance(value, bool):
            raise TypeMismatch(f"parameter {name!r} must be true or false")
        return value
    if typ == "rect":
        coerced = _coerce_value(value, "real_list", name)
        if len(coerced) != 4:
            raise TypeMismatch(f"parameter {name!r} must be a list of 4 reals")
        return coerced
    if typ == "real_list":
        if not isinstance(value, tuple):
            raise TypeMismatch(f"parameter {name!r} must be a list of reals")
        out = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise TypeMismatch(f"parameter {name!r} must be a list of reals")
            out.append(float(item))
        return tuple(out)
    if typ == "string_list":
        if not isinstance(value, tuple) or not all(isinstance(i, str) for i in value):
            raise TypeMismatch(f"parameter {name!r} must be a list of strings")
        if any("\n" in i or "\r" in i for i in value):
            raise TypeMismatch(f"parameter {name!r} must not contain line breaks")
        return value
    raise AssertionError(f"unknown param type {typ}")


def coerce_args(spec: MethodSpec, args) -> tuple:
    """Validate an argument tuple against a signature; integers become reals.

    Returns the canonical argument tuple stored on ChangeRecords, so equal
    calls compare and emit identically.
    """
    if len(args) != len(spec.params):
        raise ArityMismatch(
            f"{spec.name} takes {len(spec.params)} argument(s), got {len(args)}"
        )
    return tuple(_coerce_value(a, p.type, p.name) for p, a in zip(spec.params, args))
