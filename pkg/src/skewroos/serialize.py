"""JSON and text forms for field elements, towers, codes and certificates."""

from __future__ import annotations

import json
import re

from .errors import NotInField, SpecError, TowerError
from .fields import conway_polynomial, prime_power
from .tower import Tower, build_tower

_POW = re.compile(r"^\s*(?:a|g|gamma)\s*\^\s*(-?\d+)\s*$")


def elem_to_json(fld, x: int) -> dict:
    """``{"pow": k}`` when the field has a log table and x != 0, else ``{"coords": [...]}``."""
    if x and getattr(fld, "has_tables", False):
        return {"pow": fld.log(x)}
    return {"coords": [int(c) for c in fld.coords(x)]}


def elem_from_json(fld, obj) -> int:
    """Accept ``{"pow": k}``, ``{"coords": [...]}``, ``"a^k"``/``"gamma^k"``, or a bare integer."""
    if isinstance(obj, dict):
        if set(obj) == {"pow"}:
            return fld.exp(int(obj["pow"]))
        if set(obj) == {"coords"}:
            cs = [int(c) for c in obj["coords"]]
            return fld.from_coords(cs + [0] * (fld.degree - len(cs)))
        raise NotInField(f"unrecognised element object {obj!r}")
    if isinstance(obj, bool):
        raise NotInField(f"booleans are not field elements: {obj!r}")
    if isinstance(obj, int):
        return fld.check(obj)
    if isinstance(obj, str):
        s = obj.strip()
        if s in ("0", "1"):
            return int(s)
        m = _POW.match(s)
        if m:
            return fld.exp(int(m.group(1)))
        if s in ("a", "g", "gamma"):
            return fld.exp(1)
    raise NotInField(f"cannot read a field element from {obj!r}")


def elem_text(fld, x: int, symbol: str = "a") -> str:
    """``"0"``, ``"1"``, ``"a^k"``; coordinate list when the field has no log table."""
    if x == 0:
        return "0"
    if x == 1:
        return "1"
    if getattr(fld, "has_tables", False):
        return f"{symbol}^{fld.log(x)}"
    return "[" + ",".join(str(c) for c in fld.coords(x)) + "]"


# ------------------------------------------------------------------ towers

def _modulus(q: int, deg: int, value):
    if value is None:
        return None
    if isinstance(value, str):
        if value.lower() == "conway":
            p, e = prime_power(q)
            if e != 1:
                raise TowerError("Conway moduli are only available over a prime field")
            return conway_polynomial(p, deg)
        raise TowerError(f"unknown modulus keyword {value!r}")
    return tuple(int(c) for c in value)


def tower_from_json(spec: dict) -> Tower:
    try:
        q, mu, nu = int(spec["q"]), int(spec["mu"]), int(spec["nu"])
    except (KeyError, TypeError, ValueError) as exc:
        raise TowerError(f"tower spec needs integer q, mu, nu ({exc})") from exc
    modF = _modulus(q, mu, spec.get("modF"))
    modE = _modulus(q, mu * nu, spec.get("modE"))
    tower = build_tower(q, mu, nu, modF, modE, spec.get("embed_hint"))
    alpha = spec.get("alpha")
    if alpha is not None:
        tower = tower.with_alpha(elem_from_json(tower.E, alpha))
    return tower


def tower_to_json(tower: Tower) -> dict:
    return {
        "q": tower.q,
        "mu": tower.mu,
        "nu": tower.nu,
        "modF": list(tower.F.modulus),
        "modE": list(tower.E.modulus),
        "embed_hint": tower.embed_exponent,
        "alpha": elem_to_json(tower.E, tower.alpha) if tower.alpha is not None else None,
    }


# ------------------------------------------------------------------- misc

def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc
