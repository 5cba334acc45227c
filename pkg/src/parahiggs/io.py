"""JSON codecs with exact rationals as "p/q" strings.

Every decoder reports the JSON pointer of the offending field, so the CLI
can say where an input went wrong.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction
from typing import Any

from .arith import SUnClass, WeightSystem, format_rational, parse_rational
from .higgs import GradedHiggsModel
from .parabolic import FLAG_MODES, LineSummand, SplitBundle, SplitParabolicBundle
from .schubert import GWQuery

SCHEMA = 1


class InputError(ValueError):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer or "/"

    def __str__(self) -> str:
        return f"{self.pointer}: {self.args[0]}"


def to_jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        raise TypeError("floats never appear in reports")
    if isinstance(x, SplitParabolicBundle):
        return bundle_to_json(x)
    if isinstance(x, SplitBundle):
        return list(x.degrees)
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: to_jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in x]
        return sorted(items, key=dumps) if isinstance(x, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(x: Any) -> str:
    return json.dumps(to_jsonable(x), sort_keys=True, separators=(",", ":"))


def pretty(x: Any) -> str:
    return json.dumps(to_jsonable(x), sort_keys=True, indent=2)


def digest(x: Any) -> str:
    return hashlib.sha256(dumps(x).encode()).hexdigest()


def _ptr(base: str, key) -> str:
    return f"{base}/{key}"


def _get(obj: Any, key: str, ptr: str):
    if not isinstance(obj, dict):
        raise InputError("expected an object", ptr)
    if key not in obj:
        raise InputError(f"missing field {key!r}", ptr)
    return obj[key]


def _int(x: Any, ptr: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError("expected an integer", ptr)
    return x


def _list(x: Any, ptr: str) -> list:
    if not isinstance(x, list):
        raise InputError("expected a list", ptr)
    return x


def _rational(x: Any, ptr: str) -> Fraction:
    try:
        return parse_rational(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc), ptr) from None


def _check_schema(obj: Any, ptr: str = "") -> None:
    if isinstance(obj, dict) and "schema" in obj and obj["schema"] != SCHEMA:
        raise InputError(f"unsupported schema {obj['schema']!r}", _ptr(ptr, "schema"))


# --- bundles -------------------------------------------------------------------

def bundle_to_json(E: SplitParabolicBundle) -> dict:
    return {
        "punctures": E.punctures,
        "summands": [{"deg": s.degree, "weights": [format_rational(a) for a in s.weights]}
                     for s in E.summands],
        "flag_mode": E.flag_mode,
    }


def bundle_from_json(obj: Any, ptr: str = "") -> SplitParabolicBundle:
    _check_schema(obj, ptr)
    d = _int(_get(obj, "punctures", ptr), _ptr(ptr, "punctures"))
    mode = obj.get("flag_mode", "adapted")
    if mode not in FLAG_MODES:
        raise InputError(f"flag_mode must be one of {FLAG_MODES}", _ptr(ptr, "flag_mode"))
    summands = []
    sp = _ptr(ptr, "summands")
    for i, s in enumerate(_list(_get(obj, "summands", ptr), sp)):
        p = _ptr(sp, i)
        deg = _int(_get(s, "deg", p), _ptr(p, "deg"))
        wp = _ptr(p, "weights")
        ws = _list(_get(s, "weights", p), wp)
        if len(ws) != d:
            raise InputError(f"expected {d} weights, got {len(ws)}", wp)
        alphas = tuple(_rational(a, _ptr(wp, j)) for j, a in enumerate(ws))
        for j, a in enumerate(alphas):
            if not 0 <= a < 1:
                raise InputError(f"weight {a} outside [0,1)", _ptr(wp, j))
        summands.append(LineSummand(deg, alphas))
    try:
        return SplitParabolicBundle(d, tuple(summands), mode)
    except ValueError as exc:
        raise InputError(str(exc), ptr) from None


def split_from_json(obj: Any, ptr: str) -> SplitBundle:
    return SplitBundle(tuple(_int(a, _ptr(ptr, i)) for i, a in enumerate(_list(obj, ptr))))


# --- graded models ---------------------------------------------------------------

def model_to_json(M: GradedHiggsModel) -> dict:
    return {
        "schema": SCHEMA,
        "pieces": [bundle_to_json(P) for P in M.pieces],
        "higgs_rank": list(M.higgs_rank),
        "ker_split": {str(k): list(v.degrees) for k, v in sorted(M.ker_split.items())},
        "coker_split": {str(k): list(v.degrees) for k, v in sorted(M.coker_split.items())},
    }


def _levels(obj: Any, ptr: str) -> dict[int, SplitBundle]:
    if obj is None:
        return {}
    if not isinstance(obj, dict):
        raise InputError("expected an object keyed by level", ptr)
    out = {}
    for key, v in obj.items():
        try:
            k = int(key)
        except ValueError:
            raise InputError(f"level key {key!r} is not an integer", ptr) from None
        out[k] = split_from_json(v, _ptr(ptr, key))
    return out


def model_from_json(obj: Any, ptr: str = "") -> GradedHiggsModel:
    _check_schema(obj, ptr)
    pp = _ptr(ptr, "pieces")
    pieces = tuple(bundle_from_json(P, _ptr(pp, i))
                   for i, P in enumerate(_list(_get(obj, "pieces", ptr), pp)))
    hp = _ptr(ptr, "higgs_rank")
    ranks = tuple(_int(h, _ptr(hp, i)) for i, h in enumerate(_list(obj.get("higgs_rank", []), hp)))
    ker = _levels(obj.get("ker_split"), _ptr(ptr, "ker_split"))
    coker = _levels(obj.get("coker_split"), _ptr(ptr, "coker_split"))
    try:
        return GradedHiggsModel(pieces, ranks, ker, coker)
    except ValueError as exc:
        raise InputError(str(exc), ptr) from None


# --- weights and classes ---------------------------------------------------------

def weights_to_json(w: WeightSystem) -> dict:
    return {
        "schema": SCHEMA,
        "rank": w.rank,
        "weights": [[[format_rational(a), m] for a, m in block] for block in w.weights],
    }


def weights_from_json(obj: Any, ptr: str = "") -> WeightSystem:
    """Accepts ``[["p/q", mult], ...]`` pairs or plain repeated values per puncture."""
    _check_schema(obj, ptr)
    n = _int(_get(obj, "rank", ptr), _ptr(ptr, "rank"))
    wp = _ptr(ptr, "weights")
    lists = []
    for j, block in enumerate(_list(_get(obj, "weights", ptr), wp)):
        bp = _ptr(wp, j)
        vals = []
        for i, item in enumerate(_list(block, bp)):
            ip = _ptr(bp, i)
            if isinstance(item, list):
                if len(item) != 2:
                    raise InputError("expected [weight, multiplicity]", ip)
                a = _rational(item[0], _ptr(ip, 0))
                m = _int(item[1], _ptr(ip, 1))
                if m < 1:
                    raise InputError("multiplicity must be positive", _ptr(ip, 1))
                vals += [a] * m
            else:
                vals.append(_rational(item, ip))
        lists.append(vals)
    try:
        return WeightSystem.from_lists(n, lists)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc), wp) from None


def classes_to_json(cs) -> dict:
    return {"schema": SCHEMA, "classes": [[format_rational(t) for t in c.theta] for c in cs]}


def classes_from_json(obj: Any, ptr: str = "") -> list[SUnClass]:
    _check_schema(obj, ptr)
    if isinstance(obj, dict):
        cp = _ptr(ptr, "classes")
        items = _list(_get(obj, "classes", ptr), cp)
    else:
        cp = ptr
        items = _list(obj, ptr)
    out = []
    for i, c in enumerate(items):
        p = _ptr(cp, i)
        theta = tuple(_rational(t, _ptr(p, j)) for j, t in enumerate(_list(c, p)))
        try:
            out.append(SUnClass(theta))
        except ValueError as exc:
            raise InputError(str(exc), p) from None
    return out


def query_to_json(q: GWQuery) -> dict:
    return {"schema": SCHEMA, "k": q.k, "n": q.n, "classes": [list(c) for c in q.classes],
            "degree": q.degree}


def query_from_json(obj: Any, ptr: str = "") -> GWQuery:
    _check_schema(obj, ptr)
    k = _int(_get(obj, "k", ptr), _ptr(ptr, "k"))
    n = _int(_get(obj, "n", ptr), _ptr(ptr, "n"))
    degree = _int(_get(obj, "degree", ptr), _ptr(ptr, "degree"))
    cp = _ptr(ptr, "classes")
    classes = tuple(tuple(_int(x, _ptr(_ptr(cp, i), j)) for j, x in enumerate(_list(c, _ptr(cp, i))))
                    for i, c in enumerate(_list(_get(obj, "classes", ptr), cp)))
    try:
        return GWQuery(k, n, classes, degree)
    except ValueError as exc:
        raise InputError(str(exc), ptr) from None
