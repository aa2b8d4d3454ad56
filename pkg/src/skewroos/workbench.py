"""Job specs and report builders behind the command-line interface."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .bounds import (RoosCertificate, bound_report, mrd_certify, repeated_gabidulin,
                     singleton_bounds)
from .code import DefiningSet, SkewCyclicCode, generator_from_set
from .distance import classify, min_hamming_distance, min_rank_distance
from .errors import SpecError, TableMismatch
from .serialize import elem_from_json, elem_text, tower_from_json
from .tower import find_normal


@dataclass
class Budgets:
    subsets: int | None = None
    subspaces: int | None = None
    threads: int = 1
    max_n: int | None = None


# ------------------------------------------------------------------- specs

def code_from_spec(spec: dict) -> SkewCyclicCode:
    """Build a code from ``{"tower", "alpha", <one input mode>, "auto_close"}``.

    Input modes: ``"T"`` (explicit defining set), ``"roos"`` (certificate whose
    positions form T) or ``"repeated_gabidulin"`` (``{"b", "s", "delta"}``).
    """
    if not isinstance(spec, dict) or "tower" not in spec:
        raise SpecError("code spec needs a \"tower\" object")
    modes = [m for m in ("T", "roos", "repeated_gabidulin") if m in spec]
    if len(modes) != 1:
        raise SpecError(f"exactly one of T / roos / repeated_gabidulin is required (got {modes or 'none'})")
    tower = tower_from_json(spec["tower"])
    n, mu, nu = tower.n, tower.mu, tower.nu
    alpha = spec.get("alpha")
    if alpha is not None:
        alpha = elem_from_json(tower.E, alpha)
    elif tower.alpha is not None:
        alpha = tower.alpha
    else:
        alpha = find_normal(tower)
    mode = modes[0]
    if mode == "T":
        T = spec["T"]
        if not isinstance(T, list) or not all(isinstance(t, int) for t in T):
            raise SpecError("T must be a list of integers")
        T = DefiningSet(n, mu, tuple(T))
    elif mode == "roos":
        c = spec["roos"]
        try:
            cert = RoosCertificate(c["b"], c["s"], c["delta"], c["r"], tuple(c["k"]))
        except (KeyError, TypeError) as exc:
            raise SpecError(f"roos parameters need b, s, delta, r, k ({exc})") from exc
        cert.validate(n)
        T = DefiningSet(n, mu, tuple(cert.positions(n)))
    else:
        c = spec["repeated_gabidulin"]
        try:
            T = repeated_gabidulin(c["b"], c["s"], c["delta"], mu, nu)
        except KeyError as exc:
            raise SpecError(f"repeated_gabidulin needs b, s, delta ({exc})") from exc
    if len(T) == 0:
        raise SpecError("the defining set is empty")
    return generator_from_set(tower, alpha, T, auto_close=bool(spec.get("auto_close", True)))


# ----------------------------------------------------------------- reports

def _sym(code: SkewCyclicCode) -> str:
    return "gamma" if code.over_E else "a"


def vector_text(code: SkewCyclicCode, v) -> list[str]:
    return [elem_text(code.field, x, _sym(code)) for x in v]


def construct_report(code: SkewCyclicCode) -> dict:
    tw = code.tower
    return {
        "n": code.n,
        "k": code.k,
        "g": vector_text(code, code.g.coeffs),
        "g_text": code.g.to_text(lambda c: elem_text(code.field, c, _sym(code))),
        "T": list(code.T.elements),
        "T_F": list(code.T.restricted),
        "field": "E" if code.over_E else "F",
        "alpha": elem_text(tw.E, tw.alpha, "gamma"),
        "beta": elem_text(tw.E, tw.beta, "gamma"),
    }


def bounds_report(code: SkewCyclicCode, budgets: Budgets = Budgets()) -> dict:
    rep = bound_report(code.T, threads=budgets.threads, max_n=budgets.max_n)
    out = rep.to_dict()
    out["mrd_reason"] = mrd_certify(code.T, rep.roos).reason if code.T.is_mu_closed else None
    return out


def distance_report(code: SkewCyclicCode, budgets: Budgets = Budgets(), lower: int = 1) -> dict:
    h = min_hamming_distance(code, lower=lower, budget=budgets.subsets, threads=budgets.threads)
    r = min_rank_distance(code, lower=lower, budget=budgets.subspaces, threads=budgets.threads)
    cls = classify(code.n, code.k, code.tower.mu, h.lo if h.exact else None, r.lo if r.exact else None)
    return {
        "d_H": h.to_json(),
        "d_R": r.to_json(),
        "witness_hamming": vector_text(code, h.witness) if h.witness else None,
        "witness_rank": vector_text(code, r.witness) if r.witness else None,
        **cls.to_dict(),
        "partial": not (h.exact and r.exact),
        "work": {"subsets": h.work, "subspaces": r.work},
        "method": {"d_H": h.method, "d_R": r.method},
    }


def classify_report(code: SkewCyclicCode, budgets: Budgets = Budgets(), force_hamming: bool = False) -> dict:
    """Bounds first; exact search only where the sandwich leaves a gap."""
    br = bound_report(code.T, threads=budgets.threads, max_n=budgets.max_n)
    lower = br.d_H_lower
    out = {"bounds": br.to_dict()}
    partial = False
    if br.mds_proven and not force_hamming:
        d_H, h_method, h_work, wh = br.d_H_singleton, "sandwich", 0, None
    else:
        h = min_hamming_distance(code, lower=lower, budget=budgets.subsets, threads=budgets.threads)
        d_H = h.lo if h.exact else None
        partial |= not h.exact
        h_method, h_work, wh = h.method, h.work, h.to_json()
    if br.mrd_proven:
        d_R, r_method, r_work, wr = br.d_R_singleton, "sandwich", 0, None
    else:
        r = min_rank_distance(code, lower=lower, budget=budgets.subspaces, threads=budgets.threads)
        d_R = r.lo if r.exact else None
        partial |= not r.exact
        r_method, r_work, wr = r.method, r.work, r.to_json()
    cls = classify(code.n, code.k, code.tower.mu, d_H, d_R)
    out.update({
        "n": code.n, "k": code.k,
        "d_H": d_H if d_H is not None else wh,
        "d_R": d_R if d_R is not None else wr,
        "d_H_method": "proven by sandwich" if h_method == "sandwich" else h_method,
        "d_R_method": "proven by sandwich" if r_method == "sandwich" else r_method,
        "work": {"subsets": h_work, "subspaces": r_work},
        **cls.to_dict(),
        "partial": partial,
    })
    return out


# ------------------------------------------------------------------ tables

def bundled_rows() -> list[dict]:
    data = resources.files("skewroos").joinpath("data/table_rows.json").read_text(encoding="utf-8")
    return json.loads(data)["rows"]


def bundled_golden() -> list[dict]:
    data = resources.files("skewroos").joinpath("data/tables_golden.json").read_text(encoding="utf-8")
    return json.loads(data)["rows"]


def _field_names(spec: dict) -> tuple[str, str, str]:
    t = spec["tower"]
    q, mu, nu = t["q"], t["mu"], t["nu"]
    return f"GF({q})", f"GF({q}^{mu})", f"GF({q}^{mu * nu})"


def table_row(spec: dict, budgets: Budgets = Budgets()) -> dict:
    """Both table rows for one bundled code: exact d_H by search, d_R by sandwich or search."""
    code = code_from_spec(spec)
    br = bound_report(code.T, threads=budgets.threads, max_n=budgets.max_n)
    h = min_hamming_distance(code, lower=br.d_H_lower, budget=budgets.subsets, threads=budgets.threads)
    if br.mrd_proven:
        d_R, r_method, r_work = br.d_R_singleton, "sandwich", 0
    else:
        r = min_rank_distance(code, lower=br.d_R_lower, budget=budgets.subspaces, threads=budgets.threads)
        d_R, r_method, r_work = r.to_json(), r.method, r.work
    K, F, E = _field_names(spec)
    printed = spec.get("printed", {})
    cls = classify(code.n, code.k, code.tower.mu, h.lo if h.exact else None,
                   d_R if isinstance(d_R, int) else None)
    h_ub, r_ub = singleton_bounds(code.n, code.k, code.tower.mu)
    return {
        "row": spec["row"], "K": K, "F": F, "E": E,
        "alpha": spec.get("alpha_text", ""),
        "b": printed.get("b"), "delta": printed.get("delta"), "r": printed.get("r"),
        "T": list(code.T.elements),
        "n": code.n, "k": code.k, "d_H": h.to_json(), "mds": cls.is_mds,
        "d_H_singleton": h_ub, "d_R_singleton": r_ub, "d_R": d_R, "mrd": cls.is_mrd,
        "roos": br.roos.to_dict(), "d_R_method": r_method,
        "work": {"subsets": h.work, "subspaces": r_work},
    }


def compare_to_golden(rows: list[dict], golden: list[dict]) -> list[str]:
    """Cells that differ from the golden file (intervals and known deviations accepted)."""
    by_row = {g["row"]: g for g in golden}
    problems = []
    for row in rows:
        g = by_row.get(row["row"])
        if g is None:
            problems.append(f"row {row['row']}: no golden entry")
            continue
        dev = g.get("known_deviations", {})
        for key in ("n", "k", "d_H", "mds", "d_H_singleton", "d_R_singleton", "d_R", "mrd"):
            want, got = g[key], row[key]
            if key in dev:
                ok = got == dev[key]
            elif isinstance(want, dict):
                ok = isinstance(got, int) and want["lo"] <= got <= want["hi"]
            else:
                ok = got == want
            if not ok:
                problems.append(f"row {row['row']}: {key} = {got!r}, expected {dev.get(key, want)!r}")
    return problems


def tables_report(budgets: Budgets = Budgets(), rows: list[int] | None = None,
                  specs: list[dict] | None = None) -> dict:
    specs = specs if specs is not None else bundled_rows()
    if rows:
        wanted = set(rows)
        unknown = wanted - {s["row"] for s in specs}
        if unknown:
            raise SpecError(f"unknown table rows {sorted(unknown)}")
        specs = [s for s in specs if s["row"] in wanted]
    out = [table_row(s, budgets) for s in specs]
    problems = compare_to_golden(out, bundled_golden())
    return {"rows": out, "mismatches": problems}


def check_tables(report: dict) -> None:
    if report["mismatches"]:
        raise TableMismatch("; ".join(report["mismatches"]))

