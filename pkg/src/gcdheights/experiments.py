"""Declarative sweep runner: grids over the library operations, tables out.

A sweep is described by a ``SweepConfig`` (kind + parameter map + seed),
validated up front, expanded into independent cells, evaluated serially or on
a process pool, and merged in index order — so a given config produces
byte-identical CSV no matter the job count.  Per-cell failures become tagged
error rows instead of aborting the run; a configurable error budget (default
0) turns unexpected ones into a failure at the end.

Row schemas are fixed per kind (see KIND_COLUMNS): index columns first, then
exact integer witnesses as decimal strings, then the log-space lhs/rhs pair
and the holds flag.  Reals are rendered with 12 significant digits.
"""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd, log
from statistics import median

from .arith import EPS_SLACK, PrimeSet
from .elliptic import (
    Curve,
    Point,
    denominator_D,
    add,
    eds,
    exceptional_subgroups,
    naive_height,
    on_curve,
)
from .gcd_height import PnPoint, PolySystem, VojtaParams, check_mixed, check_pn
from .mulgrp import (
    EXCEPTIONAL,
    INEQUALITY_HOLDS,
    LN2,
    POWER_RELATION,
    cz_classify,
    gcd_pair,
    mult_independent,
    s_unit_enumerate,
)

__all__ = [
    "SweepKind",
    "SweepConfig",
    "SweepResult",
    "KIND_COLUMNS",
    "run",
    "fit_constant",
    "detect_exceptional",
    "render_csv",
    "render_json",
    "format_real",
]


class SweepKind(str, Enum):
    BCZ = "BCZ"
    CZ_TRICHOTOMY = "CZ_TRICHOTOMY"
    AR_RETURNS = "AR_RETURNS"
    EDS_GCD = "EDS_GCD"
    PN_CHECK = "PN_CHECK"
    MIXED_CHECK = "MIXED_CHECK"
    SIEGEL = "SIEGEL"
    ABELIAN_GROWTH = "ABELIAN_GROWTH"


@dataclass(frozen=True)
class SweepConfig:
    kind: SweepKind
    parameters: dict
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", SweepKind(self.kind))


@dataclass
class SweepResult:
    config: SweepConfig
    records: list[dict]
    summary: dict


KIND_COLUMNS: dict[SweepKind, list[str]] = {
    SweepKind.BCZ: ["n", "gcd", "lhs", "hA", "rhs", "holds", "error"],
    SweepKind.CZ_TRICHOTOMY: [
        "alpha", "beta", "verdict", "m", "n", "gcd", "lhs", "rhs", "holds", "error",
    ],
    SweepKind.AR_RETURNS: ["n", "gcd", "base_gcd", "is_return", "error"],
    SweepKind.EDS_GCD: [
        "m", "n", "d_m", "d_n", "gcd", "lhs", "hA", "rhs", "holds",
        "exceptional", "error",
    ],
    SweepKind.PN_CHECK: [
        "point", "gcd", "lhs", "hA", "hcount", "rhs", "holds", "error",
    ],
    SweepKind.MIXED_CHECK: [
        "n", "b", "d_q", "gcd", "lhs", "hA", "rhs", "holds", "error",
    ],
    SweepKind.SIEGEL: ["n", "d", "naive", "ratio", "error"],
    SweepKind.ABELIAN_GROWTH: [
        "n", "d_p", "d_q", "gcd", "lhs", "hA", "rhs", "holds", "error",
    ],
}

#: Kinds whose records carry (lhs, hA[, hcount]) and admit constant fitting.
FITTABLE = (
    SweepKind.BCZ,
    SweepKind.EDS_GCD,
    SweepKind.PN_CHECK,
    SweepKind.MIXED_CHECK,
    SweepKind.ABELIAN_GROWTH,
)

_INDEX_KEYS: dict[SweepKind, tuple[str, ...]] = {
    SweepKind.BCZ: ("n",),
    SweepKind.CZ_TRICHOTOMY: ("alpha", "beta"),
    SweepKind.AR_RETURNS: ("n",),
    SweepKind.EDS_GCD: ("m", "n"),
    SweepKind.PN_CHECK: ("point",),
    SweepKind.MIXED_CHECK: ("n", "b"),
    SweepKind.SIEGEL: ("n",),
    SweepKind.ABELIAN_GROWTH: ("n",),
}


# ----------------------------------------------------------------------------
# config validation and cell preparation (runs serially, may do real work)
# ----------------------------------------------------------------------------

def _need(params: dict, key: str, kind: SweepKind):
    if key not in params:
        raise ValueError(f"{kind.value} config missing required key {key!r}")
    return params[key]


def _curve_of(params: dict) -> Curve:
    coeffs = _as_int_list(params["curve"], "curve")
    if len(coeffs) != 5:
        raise ValueError("curve needs exactly 5 coefficients a1,a2,a3,a4,a6")
    return Curve(*coeffs)


def _as_int_list(v, what: str) -> list[int]:
    if not isinstance(v, (list, tuple)):
        raise ValueError(f"{what} must be a list of integers")
    return [int(x) for x in v]


def _point_of(c: Curve, raw, what: str = "point") -> Point:
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise ValueError(f"{what} must be a pair [x, y] of rationals")
    x, y = (Fraction(str(t)) for t in raw)
    p = Point(x, y)
    if not on_curve(c, p):
        raise ValueError(f"{what} is not on the curve")
    return p


def _multiples(c: Curve, p: Point, n_max: int) -> list[Point]:
    """[P, 2P, ..., n_max P], erroring out on finite order."""
    out = []
    q = p
    for n in range(1, n_max + 1):
        if q.is_identity:
            raise ValueError(f"point has finite order {n}")
        out.append(q)
        q = add(c, q, p)
    return out


def _prepare_bcz(params: dict) -> list[dict]:
    a = int(_need(params, "a", SweepKind.BCZ))
    b = int(_need(params, "b", SweepKind.BCZ))
    eps = float(_need(params, "eps", SweepKind.BCZ))
    n_max = int(_need(params, "n_max", SweepKind.BCZ))
    C = float(params.get("C", 0.0))
    if eps <= 0:
        raise ValueError("eps must be positive")
    if a < 2 or b < 2:
        raise ValueError("a and b must be >= 2")
    if not mult_independent(a, b):
        raise ValueError("multiplicatively dependent inputs: hypothesis violated")
    return [
        {"index": {"n": n}, "a": a, "b": b, "n": n, "eps": eps, "C": C}
        for n in range(1, n_max + 1)
    ]


def _row_bcz(cell: dict) -> dict:
    g = gcd_pair(cell["a"], cell["b"], cell["n"])
    lhs = log(g)
    hA = cell["n"] * LN2
    rhs = cell["eps"] * hA + cell["C"]
    return {
        "n": cell["n"], "gcd": g, "lhs": lhs, "hA": hA, "rhs": rhs,
        "holds": lhs <= rhs + EPS_SLACK,
    }


def _prepare_cz(params: dict) -> list[dict]:
    primes = _as_int_list(_need(params, "primes", SweepKind.CZ_TRICHOTOMY), "primes")
    bound = int(_need(params, "bound", SweepKind.CZ_TRICHOTOMY))
    eps = float(_need(params, "eps", SweepKind.CZ_TRICHOTOMY))
    if eps <= 0:
        raise ValueError("eps must be positive")
    units = s_unit_enumerate(PrimeSet(tuple(primes)), bound)
    return [
        {
            "index": {"alpha": a, "beta": b},
            "alpha": a, "beta": b, "primes": tuple(primes), "eps": eps,
        }
        for a in units
        for b in units
    ]


def _row_cz(cell: dict) -> dict:
    S = PrimeSet(cell["primes"])
    a, b, eps = cell["alpha"], cell["beta"], cell["eps"]
    v = cz_classify(a, b, S, eps)
    g = gcd(abs(a - 1), abs(b - 1))
    lhs = log(g)
    rhs = eps * log(max(abs(a), abs(b)))
    return {
        "alpha": a, "beta": b, "verdict": v.kind, "m": v.m, "n": v.n,
        "gcd": g, "lhs": lhs, "rhs": rhs, "holds": lhs <= rhs + EPS_SLACK,
    }


def _prepare_ar(params: dict) -> list[dict]:
    a = int(_need(params, "a", SweepKind.AR_RETURNS))
    b = int(_need(params, "b", SweepKind.AR_RETURNS))
    n_max = int(_need(params, "n_max", SweepKind.AR_RETURNS))
    if a < 2 or b < 2:
        raise ValueError("a and b must be >= 2")
    if not mult_independent(a, b):
        raise ValueError("multiplicatively dependent inputs: hypothesis violated")
    base = gcd_pair(a, b, 1)
    return [
        {"index": {"n": n}, "a": a, "b": b, "n": n, "base": base}
        for n in range(1, n_max + 1)
    ]


def _row_ar(cell: dict) -> dict:
    g = gcd_pair(cell["a"], cell["b"], cell["n"])
    return {
        "n": cell["n"], "gcd": g, "base_gcd": cell["base"],
        "is_return": g == cell["base"],
    }


def _prepare_eds_gcd(params: dict) -> list[dict]:
    c = _curve_of(params)
    p = _point_of(c, _need(params, "p", SweepKind.EDS_GCD), "p")
    q = _point_of(c, params["q"], "q") if params.get("q") is not None else p
    m_max = int(_need(params, "m_max", SweepKind.EDS_GCD))
    n_max = int(_need(params, "n_max", SweepKind.EDS_GCD))
    eps = float(_need(params, "eps", SweepKind.EDS_GCD))
    C = float(params.get("C", 0.0))
    if eps <= 0:
        raise ValueError("eps must be positive")
    mp = _multiples(c, p, m_max)
    nq = _multiples(c, q, n_max)
    dm = [denominator_D(t) for t in mp]
    dn = [denominator_D(t) for t in nq]
    hm = [naive_height(t).value for t in mp]
    hn = [naive_height(t).value for t in nq]
    predicted = set(exceptional_subgroups(eps))
    cells = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            g = gcd(m, n)
            cells.append({
                "index": {"m": m, "n": n},
                "m": m, "n": n,
                "d_m": dm[m - 1], "d_n": dn[n - 1],
                "h_m": hm[m - 1], "h_n": hn[n - 1],
                "eps": eps, "C": C,
                "exceptional": (m // g, n // g) in predicted,
            })
    return cells


def _row_eds_gcd(cell: dict) -> dict:
    g = gcd(cell["d_m"], cell["d_n"])
    lhs = log(g)
    hA = cell["h_m"] + cell["h_n"]
    rhs = cell["eps"] * hA + cell["C"]
    return {
        "m": cell["m"], "n": cell["n"], "d_m": cell["d_m"], "d_n": cell["d_n"],
        "gcd": g, "lhs": lhs, "hA": hA, "rhs": rhs,
        "holds": lhs <= rhs + EPS_SLACK, "exceptional": cell["exceptional"],
    }


def _prepare_pn(params: dict) -> list[dict]:
    texts = _need(params, "polys", SweepKind.PN_CHECK)
    if not isinstance(texts, (list, tuple)) or not texts:
        raise ValueError("polys must be a nonempty list of polynomial strings")
    codim = int(params.get("codim_r", 2))
    system = PolySystem.of(*[str(t) for t in texts], codim_r=codim)
    nvars = max(f.max_var() for f in system.polys) + 1
    if nvars < 2:
        raise ValueError("system must involve at least X0 and X1")
    primes = _as_int_list(_need(params, "primes", SweepKind.PN_CHECK), "primes")
    bound = int(_need(params, "bound", SweepKind.PN_CHECK))
    eps = float(_need(params, "eps", SweepKind.PN_CHECK))
    delta = float(params.get("delta", 1.0))
    C = float(params.get("C", 0.0))
    r = int(params.get("r", codim))
    vp = VojtaParams(epsilon=eps, delta=delta, C=C, r=r)
    sample = params.get("sample")
    seed = int(params.get("_seed", 0))

    nonzero = [v for v in range(-bound, bound + 1) if v != 0]
    pts = []
    # first coordinate positive fixes the projective sign; zero coordinates
    # are outside the counting function's domain, so the grid omits them
    for first in range(1, bound + 1):
        stack = [(first,)]
        while stack:
            tup = stack.pop()
            if len(tup) == nvars:
                g = 0
                for t in tup:
                    g = gcd(g, t)
                if g != 1:
                    continue
                if all(f(tup) == 0 for f in system.polys):
                    continue  # on V: outside the checker's domain
                pts.append(tup)
                continue
            for v in reversed(nonzero):
                stack.append(tup + (v,))
    pts.sort()
    if sample is not None and len(pts) > int(sample):
        rng = random.Random(seed)
        pts = sorted(rng.sample(pts, int(sample)))
    return [
        {
            "index": {"point": ":".join(str(t) for t in tup)},
            "coords": tup, "system": system, "primes": tuple(primes), "vp": vp,
        }
        for tup in pts
    ]


def _row_pn(cell: dict) -> dict:
    rec = check_pn(
        PnPoint(cell["coords"]), cell["system"], PrimeSet(cell["primes"]), cell["vp"]
    )
    d = rec.descriptor
    return {
        "point": ":".join(str(t) for t in cell["coords"]),
        "gcd": d["gcd_witness"], "lhs": rec.lhs, "hA": d["hA"],
        "hcount": d["hcount"], "rhs": rec.rhs, "holds": rec.holds,
    }


def _prepare_mixed(params: dict) -> list[dict]:
    c = _curve_of(params)
    p = _point_of(c, _need(params, "point", SweepKind.MIXED_CHECK))
    primes = _as_int_list(_need(params, "primes", SweepKind.MIXED_CHECK), "primes")
    eps = float(_need(params, "eps", SweepKind.MIXED_CHECK))
    C = float(params.get("C", 1.0))
    n_max = int(_need(params, "n_max", SweepKind.MIXED_CHECK))
    b_bound = int(params.get("b_bound", 100))
    S = PrimeSet(tuple(primes))
    units = s_unit_enumerate(S, b_bound)
    mults = _multiples(c, p, n_max)
    cells = []
    for n in range(1, n_max + 1):
        for b in units:
            cells.append({
                "index": {"n": n, "b": b},
                "curve": c, "q": mults[n - 1], "n": n, "b": b,
                "primes": tuple(primes), "eps": eps, "C": C,
            })
    return cells


def _row_mixed(cell: dict) -> dict:
    rec = check_mixed(
        cell["curve"], cell["q"], cell["b"], PrimeSet(cell["primes"]),
        cell["eps"], cell["C"],
    )
    d = rec.descriptor
    return {
        "n": cell["n"], "b": cell["b"], "d_q": d["d_q"], "gcd": d["gcd_witness"],
        "lhs": rec.lhs, "hA": d["hA"], "rhs": rec.rhs, "holds": rec.holds,
    }


def _prepare_siegel(params: dict) -> list[dict]:
    c = _curve_of(params)
    p = _point_of(c, _need(params, "point", SweepKind.SIEGEL))
    n_min = int(params.get("n_min", 1))
    n_max = int(_need(params, "n_max", SweepKind.SIEGEL))
    if n_min < 1 or n_max < n_min:
        raise ValueError("need 1 <= n_min <= n_max")
    mults = _multiples(c, p, n_max)
    cells = []
    for n in range(n_min, n_max + 1):
        q = mults[n - 1]
        cells.append({
            "index": {"n": n},
            "n": n, "d": denominator_D(q), "naive": naive_height(q).value,
        })
    return cells


def _row_siegel(cell: dict) -> dict:
    d = cell["d"]
    ratio = 0.0 if d == 1 else 2.0 * log(d) / cell["naive"]
    return {"n": cell["n"], "d": d, "naive": cell["naive"], "ratio": ratio}


def _prepare_abelian(params: dict) -> list[dict]:
    if params.get("independence_asserted") is not True:
        raise ValueError(
            "ABELIAN_GROWTH requires independence_asserted: true "
            "(caller must vouch for independent points)"
        )
    c = _curve_of(params)
    p = _point_of(c, _need(params, "p", SweepKind.ABELIAN_GROWTH), "p")
    q = _point_of(c, _need(params, "q", SweepKind.ABELIAN_GROWTH), "q")
    n_max = int(_need(params, "n_max", SweepKind.ABELIAN_GROWTH))
    eps = float(_need(params, "eps", SweepKind.ABELIAN_GROWTH))
    C = float(params.get("C", 0.0))
    if eps <= 0:
        raise ValueError("eps must be positive")
    dp = [denominator_D(t) for t in _multiples(c, p, n_max)]
    dq = [denominator_D(t) for t in _multiples(c, q, n_max)]
    return [
        {
            "index": {"n": n},
            "n": n, "d_p": dp[n - 1], "d_q": dq[n - 1], "eps": eps, "C": C,
        }
        for n in range(1, n_max + 1)
    ]


def _row_abelian(cell: dict) -> dict:
    g = gcd(cell["d_p"], cell["d_q"])
    lhs = log(g)
    hA = float(cell["n"] ** 2)
    rhs = cell["eps"] * hA + cell["C"]
    return {
        "n": cell["n"], "d_p": cell["d_p"], "d_q": cell["d_q"], "gcd": g,
        "lhs": lhs, "hA": hA, "rhs": rhs, "holds": lhs <= rhs + EPS_SLACK,
    }


_PREPARE = {
    SweepKind.BCZ: _prepare_bcz,
    SweepKind.CZ_TRICHOTOMY: _prepare_cz,
    SweepKind.AR_RETURNS: _prepare_ar,
    SweepKind.EDS_GCD: _prepare_eds_gcd,
    SweepKind.PN_CHECK: _prepare_pn,
    SweepKind.MIXED_CHECK: _prepare_mixed,
    SweepKind.SIEGEL: _prepare_siegel,
    SweepKind.ABELIAN_GROWTH: _prepare_abelian,
}

_ROW = {
    SweepKind.BCZ.value: _row_bcz,
    SweepKind.CZ_TRICHOTOMY.value: _row_cz,
    SweepKind.AR_RETURNS.value: _row_ar,
    SweepKind.EDS_GCD.value: _row_eds_gcd,
    SweepKind.PN_CHECK.value: _row_pn,
    SweepKind.MIXED_CHECK.value: _row_mixed,
    SweepKind.SIEGEL.value: _row_siegel,
    SweepKind.ABELIAN_GROWTH.value: _row_abelian,
}


def _eval_cell(task: tuple[str, dict]) -> dict:
    """Evaluate one cell; failures become tagged rows, never exceptions."""
    kind_value, cell = task
    try:
        return _ROW[kind_value](cell)
    except Exception as exc:  # per-record capture is the contract here
        row = dict(cell.get("index", {}))
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row


# ----------------------------------------------------------------------------
# the runner
# ----------------------------------------------------------------------------

def run(config: SweepConfig, jobs: int = 1) -> SweepResult:
    """Execute a sweep; deterministic for a fixed config at any job count."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    kind = config.kind
    params = dict(config.parameters)
    params["_seed"] = config.seed
    cells = _PREPARE[kind](params)
    tasks = [(kind.value, cell) for cell in cells]
    if jobs == 1 or len(tasks) < 2:
        records = [_eval_cell(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_eval_cell, tasks, chunksize=chunk))
    budget = int(config.parameters.get("error_budget", 0))
    errors = [r for r in records if r.get("error")]
    if len(errors) > budget:
        first = errors[0].get("error", "")
        raise ValueError(
            f"error budget exceeded: {len(errors)} error rows "
            f"(budget {budget}); first: {first}"
        )
    summary = summarize(kind, records, config)
    return SweepResult(config=config, records=records, summary=summary)


def summarize(kind: SweepKind, records: list[dict], config: SweepConfig) -> dict:
    """Recompute the summary block from the records alone."""
    s: dict = {
        "kind": kind.value,
        "cells": len(records),
        "error_rows": sum(1 for r in records if r.get("error")),
    }
    good = [r for r in records if not r.get("error")]
    if kind in FITTABLE or kind == SweepKind.CZ_TRICHOTOMY:
        if kind == SweepKind.CZ_TRICHOTOMY:
            # power-relation pairs may fail the raw inequality legitimately;
            # the trichotomy's genuine violations are the EXCEPTIONAL rows
            viol = [r for r in good if r.get("verdict") == EXCEPTIONAL]
        else:
            viol = [r for r in good if r.get("holds") is False]
        s["violations"] = len(viol)
        idx_keys = _INDEX_KEYS[kind]
        s["max_violating_index"] = (
            [viol[-1][k] for k in idx_keys] if viol else None
        )
    if kind in FITTABLE:
        try:
            eps = float(config.parameters["eps"])
            s["fitted_constant"] = fit_constant_records(good, eps, config.parameters)
        except (KeyError, ValueError):
            s["fitted_constant"] = None
    if kind == SweepKind.CZ_TRICHOTOMY:
        counts = {POWER_RELATION: 0, INEQUALITY_HOLDS: 0, EXCEPTIONAL: 0}
        for r in good:
            counts[r["verdict"]] += 1
        s["verdicts"] = counts
        s["exceptional_pairs"] = [
            [r["alpha"], r["beta"]] for r in good if r["verdict"] == EXCEPTIONAL
        ]
    if kind == SweepKind.AR_RETURNS:
        idx = [r["n"] for r in good if r.get("is_return")]
        s["returns"] = len(idx)
        s["density"] = len(idx) / len(good) if good else 0.0
        s["return_indices"] = idx
    if kind == SweepKind.SIEGEL:
        ratios = [r["ratio"] for r in good]
        s["median_abs_dev"] = (
            median(abs(x - 1.0) for x in ratios) if ratios else None
        )
        s["max_ratio"] = max(ratios) if ratios else None
    if kind == SweepKind.PN_CHECK:
        s["points"] = len(good)
    return s


# ----------------------------------------------------------------------------
# fitting and exceptional-set probing
# ----------------------------------------------------------------------------

def fit_constant_records(
    records: list[dict], eps: float, params: dict | None = None
) -> float:
    """Exact infimum C with lhs <= eps*hA [+ hcount/(r-1+delta*eps)] + C.

    Records flagged exceptional are excluded (they are the asserted
    exceptional set); an all-exceptional or empty input is an error.
    """
    params = params or {}
    r = int(params.get("r", params.get("codim_r", 2)))
    delta = float(params.get("delta", 1.0))
    denom = r - 1 + delta * eps
    best = None
    for rec in records:
        if rec.get("error") or rec.get("exceptional"):
            continue
        need = rec["lhs"] - eps * rec["hA"] - rec.get("hcount", 0.0) / denom
        best = need if best is None else max(best, need)
    if best is None:
        raise ValueError("all records exceptional or errored; nothing to fit")
    return best


def fit_constant(result: SweepResult, eps: float) -> float:
    """Fit the empirical constant for a finished sweep at tolerance eps."""
    if result.config.kind not in FITTABLE:
        raise ValueError(f"cannot fit a constant for {result.config.kind.value}")
    if not result.records:
        raise ValueError("no records to fit")
    return fit_constant_records(result.records, eps, dict(result.config.parameters))


def detect_exceptional(result: SweepResult, kind: SweepKind | None = None) -> list[dict]:
    """Group violating inputs and propose structure (never assert it).

    EDS_GCD: violating (m, n) pairs grouped by their reduced direction
    (m/g, n/g) — the proportional-index probe; each group reports whether the
    direction was on the predicted list for the sweep's eps.
    PN_CHECK: violating points listed raw for external analysis.
    """
    kind = SweepKind(kind) if kind is not None else result.config.kind
    if kind == SweepKind.EDS_GCD:
        eps = float(result.config.parameters["eps"])
        predicted = set(exceptional_subgroups(eps))
        groups: dict[tuple[int, int], list[list[int]]] = {}
        for r in result.records:
            if r.get("error") or r.get("holds") is not False:
                continue
            m, n = r["m"], r["n"]
            g = gcd(m, n)
            groups.setdefault((m // g, n // g), []).append([m, n])
        return [
            {
                "subgroup": list(d),
                "count": len(members),
                "indices": members,
                "predicted": d in predicted,
            }
            for d, members in sorted(groups.items())
        ]
    if kind == SweepKind.PN_CHECK:
        return [
            {"point": r["point"], "lhs": r["lhs"], "rhs": r["rhs"]}
            for r in result.records
            if not r.get("error") and r.get("holds") is False
        ]
    raise ValueError("detect_exceptional expects EDS_GCD or PN_CHECK records")


# ----------------------------------------------------------------------------
# emission
# ----------------------------------------------------------------------------

def format_real(x: float) -> str:
    """Fixed 12-significant-digit rendering used by all emitted reals."""
    return f"{x:.12g}"


def _format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_real(v)
    return str(v)


def render_csv(result: SweepResult) -> str:
    """One row per record in index order, fixed header per kind."""
    cols = KIND_COLUMNS[result.config.kind]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for rec in result.records:
        w.writerow([_format_value(rec.get(c)) for c in cols])
    return buf.getvalue()


def _round_floats(obj):
    if isinstance(obj, float):
        return float(format_real(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def render_json(result: SweepResult, version: str | None = None) -> str:
    """Full result: effective config, summary, records; reals at 12 digits.

    The embedded config block re-ingests as a SweepConfig that reproduces
    this output exactly.
    """
    if version is None:
        from . import __version__ as version
    doc = {
        "version": version,
        "config": {
            "kind": result.config.kind.value,
            "parameters": _round_floats(dict(result.config.parameters)),
            "seed": result.config.seed,
        },
        "summary": _round_floats(result.summary),
        "records": _round_floats(result.records),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
