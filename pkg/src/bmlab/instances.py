"""JSON instance files.

All numerics are rational text ("3/4", "2", "inf"), never floating
literals, so instances are exact and diff-able. Parse errors carry the
JSON path of the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .gridfun import GridFunction
from .lattice import Lattice
from .rationals import Ext, parse_exponent, parse_rational
from .sets import AxisBox, FinitePoints, Iv, SetRep, VPolytope


class InstanceError(ValueError):
    """A parse or validation failure, annotated with its JSON path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class Instance:
    """The optional-field union of everything a checker might need."""

    n: int | None = None
    p: Fraction | None = None
    lam: Fraction | None = None
    alpha: Ext | None = None
    t: Fraction | None = None
    s: Fraction | None = None
    k: SetRep | None = None
    l: SetRep | None = None
    f: GridFunction | None = None
    g: GridFunction | None = None
    h: GridFunction | None = None
    lattice: Lattice | None = None
    cube: SetRep | None = None

    def require(self, *names):
        for name in names:
            attr = "lam" if name == "lambda" else name
            if getattr(self, attr) is None:
                raise InstanceError(name, "required field is missing")
        return tuple(getattr(self, "lam" if n == "lambda" else n)
                     for n in names)


def _rational(raw, path: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise InstanceError(path, f"expected rational text, got {raw!r}")
    try:
        return parse_rational(str(raw))
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from None


def _exponent(raw, path: str) -> Ext:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise InstanceError(path, f"expected exponent text, got {raw!r}")
    try:
        return parse_exponent(str(raw))
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from None


def _point(raw, path: str) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise InstanceError(path, "expected a coordinate list")
    return tuple(_rational(c, f"{path}[{i}]") for i, c in enumerate(raw))


def _interval(raw, path: str) -> Iv:
    if not isinstance(raw, list) or len(raw) not in (2, 4):
        raise InstanceError(
            path, 'expected ["lo", "hi"] or ["lo", "hi", lo_open, hi_open]')
    lo = _rational(raw[0], f"{path}[0]")
    hi = _rational(raw[1], f"{path}[1]")
    flags = raw[2:] or [False, False]
    for i, fl in enumerate(flags):
        if not isinstance(fl, bool):
            raise InstanceError(f"{path}[{i + 2}]", "open flag must be a bool")
    try:
        return Iv(lo, hi, *flags)
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from None


def parse_set(raw, path: str) -> SetRep:
    if not isinstance(raw, dict) or "type" not in raw:
        raise InstanceError(path, 'expected an object with a "type" field')
    kind = raw["type"]
    try:
        if kind == "points":
            pts = raw.get("points")
            if not isinstance(pts, list) or not pts:
                raise InstanceError(f"{path}.points", "expected a point list")
            return FinitePoints(tuple(
                _point(p, f"{path}.points[{i}]") for i, p in enumerate(pts)))
        if kind == "box":
            ivs = raw.get("intervals")
            if not isinstance(ivs, list) or not ivs:
                raise InstanceError(f"{path}.intervals",
                                    "expected an interval list")
            return AxisBox(tuple(
                _interval(iv, f"{path}.intervals[{i}]")
                for i, iv in enumerate(ivs)))
        if kind == "polytope":
            vts = raw.get("vertices")
            if not isinstance(vts, list) or not vts:
                raise InstanceError(f"{path}.vertices",
                                    "expected a vertex list")
            return VPolytope(tuple(
                _point(p, f"{path}.vertices[{i}]")
                for i, p in enumerate(vts)))
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from None
    raise InstanceError(f"{path}.type",
                        f"unknown set type {kind!r}; "
                        'use "points", "box" or "polytope"')


def _gridfun(raw, path: str, domain: SetRep | None) -> GridFunction:
    if not isinstance(raw, list):
        raise InstanceError(path, "expected a list of [point, value] pairs")
    support = []
    pts = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, list) or len(entry) != 2:
            raise InstanceError(f"{path}[{i}]", "expected [point, value]")
        pt = _point(entry[0], f"{path}[{i}][0]")
        val = _rational(entry[1], f"{path}[{i}][1]")
        support.append((pt, val))
        pts.append(pt)
    if domain is None:
        domain = FinitePoints(tuple(pts))
    try:
        return GridFunction(tuple(support), domain)
    except ValueError as exc:
        raise InstanceError(path, str(exc)) from None


def parse_instance(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("$", "instance file must hold a JSON object")
    known = {"n", "p", "lambda", "alpha", "t", "s", "K", "L",
             "f", "g", "h", "lattice", "cube"}
    for key in data:
        if key not in known:
            raise InstanceError(key, "unknown field")
    out: dict = {}
    if "n" in data:
        if isinstance(data["n"], bool) or not isinstance(data["n"], int) \
                or data["n"] < 1:
            raise InstanceError("n", "dimension must be a positive integer")
        out["n"] = data["n"]
    for key, attr in (("p", "p"), ("lambda", "lam"), ("t", "t"), ("s", "s")):
        if key in data:
            out[attr] = _rational(data[key], key)
    if "alpha" in data:
        out["alpha"] = _exponent(data["alpha"], "alpha")
    for key, attr in (("K", "k"), ("L", "l"), ("cube", "cube")):
        if key in data and data[key] is not None:
            out[attr] = parse_set(data[key], key)
    for key in ("f", "g", "h"):
        if key in data and data[key] is not None:
            domain = out.get("k") if key == "f" else \
                out.get("l") if key == "g" else None
            out[key] = _gridfun(data[key], key, domain)
    if "lattice" in data and data["lattice"] is not None:
        raw = data["lattice"]
        if not isinstance(raw, list) or not raw:
            raise InstanceError("lattice", "expected a list of basis vectors")
        basis = tuple(_point(v, f"lattice[{i}]") for i, v in enumerate(raw))
        try:
            out["lattice"] = Lattice(basis)
        except ValueError as exc:
            raise InstanceError("lattice", str(exc)) from None
    inst = Instance(**out)
    for name in ("k", "l"):
        s = getattr(inst, name)
        if s is not None and inst.n is not None and s.dim != inst.n:
            raise InstanceError(name.upper(),
                                f"dimension {s.dim} does not match n={inst.n}")
    return inst


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceError(
                "$", f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                     f"{exc.msg}") from None
    return parse_instance(data)
