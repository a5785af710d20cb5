"""Experiment runners: one deterministic row builder per experiment kind.

Rows for different moduli are independent, so a run is a task list mapped
either serially or over a process pool; results are merged in task order,
which makes the emitted report identical for any worker count.  Witnesses
are re-verified (digest replay) before the report is returned.

Asymptotic claims are never asserted here: rows carry exact counts next to
main-term shapes and ratios, and only exact identities (inequalities that
hold pointwise, agreement of independent oracles) count as violations.
"""

from __future__ import annotations

import bisect
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .. import arith, chars, counting, fermat, solvers
from ..arith import CONSTANTS
from ..errors import (
    BadModulusError,
    BadSubgroupError,
    ConfigError,
    NoNonprincipalError,
    ResourceExceededError,
    VerificationError,
)
from .config import ExperimentConfig
from .report import (
    INF,
    TOOL_VERSION,
    ExperimentReport,
    fq_witness_digest,
    product_witness_digest,
    replay_digest,
)

DEFAULT_ANCHORS = (10.0, 100.0, 1000.0, 10000.0, 100000.0)
DEFAULT_COFACTOR_ANCHORS = (100.0, 1000.0)
GREEDY_CAP = 256  # largest packing capacity swept per run
BALOG_TRIPLE_CAP = 10**7

_BASE_COLUMNS = {
    "coprime-count": ("q", "cube_free", "anchor", "exact", "main_term", "error", "tau_q", "within_2tau", "ratio_m_kappa"),
    "prime-cofactor": ("q", "anchor", "zeta", "exact", "main_term", "ratio"),
    "mertens": ("x", "y", "reciprocal_sum", "main_term", "delta", "slack", "within"),
    "char-scan": ("q", "phi", "upper", "max_abs", "argmax_char", "ratio_q_quarter", "ratio_sqrt_m", "ratio_linear"),
    "mean-value": ("q", "phi", "vectors", "max_ratio", "violations"),
    "product-length": ("q", "cube_free", "B", "exponent", "uniform_k", "max_argmax_a", "witness_digest"),
    "subgroup-length": ("q", "cube_free", "t", "subgroup", "B", "exponent", "uniform_k", "max_argmax_coset", "witness_digest"),
    "fermat-length": ("p", "U", "uniform_k", "max_argmax_a", "witness_digest", "value_count"),
    "correspondence": ("p", "U", "agree", "mismatches", "additive_max"),
    "greedy-pack": ("u", "n_count", "violations", "max_factors"),
    "balog": ("q", "a", "n_anchor", "zeta", "threshold", "widen", "pairs", "sum_b", "lhs", "e_term", "f_term", "holds", "lam", "main_term"),
    "subgroup-pairs": ("q", "t", "subgroup", "x_bound", "count", "bound_shape", "ratio"),
    "grh-ratio": ("q", "t", "subgroup", "B", "k", "factor_count", "count_min", "count_max", "count_mean", "main_term", "min_ratio", "max_ratio"),
}

# (column, expected value); a row violates when the column differs
_VIOLATION_COLS = {
    "coprime-count": ("within_2tau", True),
    "mertens": ("within", True),
    "mean-value": ("violations", 0),
    "correspondence": ("agree", True),
    "greedy-pack": ("violations", 0),
    "balog": ("holds", True),
}


def report_columns(cfg: ExperimentConfig) -> tuple[str, ...]:
    cols = _BASE_COLUMNS[cfg.kind]
    if cfg.kind == "product-length" and cfg.k_max is not None:
        cols = cols + ("coverage_k", "coverage_frac")
    return cols


# -- task selection --------------------------------------------------------------


def _log_sample(values: list[int], count: int) -> list[int]:
    """Deterministic log-spaced subsample, keeping endpoints."""
    if count <= 0 or len(values) <= count:
        return values
    lo, hi = values[0], values[-1]
    picked = []
    for i in range(count):
        target = lo * (hi / lo) ** (i / (count - 1)) if hi > lo else lo
        j = bisect.bisect_left(values, target)
        near = [values[k] for k in (j - 1, j) if 0 <= k < len(values)]
        picked.append(min(near, key=lambda v: (abs(v - target), v)))
    return sorted(set(picked))


def _modulus_tasks(cfg: ExperimentConfig) -> list[int]:
    lo = max(cfg.q_lo, 1 if cfg.kind == "coprime-count" else 2)
    needs_cube_free = cfg.cube_free_only or cfg.kind in ("char-scan", "mean-value")
    out = []
    for q in range(lo, cfg.q_hi + 1):
        if cfg.primes_only and not arith.is_prime(q):
            continue
        if needs_cube_free and not arith.factor_profile(q).cube_free:
            continue
        out.append(q)
    return _log_sample(out, cfg.sample)


def _default_mertens_grid() -> tuple[float, ...]:
    return tuple(10.0 * (100.0 ** (i / 9.0)) for i in range(10))


def experiment_tasks(cfg: ExperimentConfig) -> list:
    if cfg.kind == "mertens":
        xs = cfg.anchors or _default_mertens_grid()
        return [float(x) for x in xs]
    if cfg.kind in ("fermat-length", "correspondence"):
        ps = arith.primes_in_range(max(2, cfg.q_lo), cfg.q_hi)
        return _log_sample(ps, cfg.sample)
    if cfg.kind == "greedy-pack":
        if cfg.q_hi > GREEDY_CAP:
            raise ResourceExceededError(
                f"greedy-pack capacity sweep capped at {GREEDY_CAP}, got {cfg.q_hi}"
            )
        return list(range(max(4, cfg.q_lo), cfg.q_hi + 1))
    return _modulus_tasks(cfg)


# -- per-kind row builders ---------------------------------------------------------


def _rows_coprime_count(cfg: ExperimentConfig, q: int) -> list[dict]:
    anchors = cfg.anchors or DEFAULT_ANCHORS
    cube_free = arith.factor_profile(q).cube_free
    rows = []
    for anchor in anchors:
        m = int(anchor) if float(anchor).is_integer() else float(anchor)
        res = counting.count_coprime_window(m, q)
        rows.append(
            {
                "q": q,
                "cube_free": cube_free,
                "anchor": float(anchor),
                "exact": res.exact,
                "main_term": res.main_term,
                "error": res.error,
                "tau_q": res.tau_q,
                "within_2tau": res.within_2tau,
                "ratio_m_kappa": res.ratio_m_kappa,
            }
        )
    return rows


def _rows_prime_cofactor(cfg: ExperimentConfig, q: int) -> list[dict]:
    zeta = CONSTANTS.zeta(cfg.epsilon)
    anchors = cfg.anchors or DEFAULT_COFACTOR_ANCHORS
    rows = []
    for anchor in anchors:
        res = counting.count_prime_cofactor_pairs(float(anchor), zeta, q)
        rows.append(
            {
                "q": q,
                "anchor": float(anchor),
                "zeta": zeta,
                "exact": res.exact,
                "main_term": res.main_term,
                "ratio": res.exact / res.main_term if res.main_term > 0 else None,
            }
        )
    return rows


def _rows_mertens(cfg: ExperimentConfig, x: float) -> list[dict]:
    lo = 2.0 * x
    hi = 1e6
    ys = [lo * (hi / lo) ** (i / 9.0) for i in range(10)] if lo < hi else [x + 1.0]
    rows = []
    for y in ys:
        res = counting.mertens_delta(x, y)
        slack = 4.0 / math.log(x)
        rows.append(
            {
                "x": x,
                "y": y,
                "reciprocal_sum": res.reciprocal_sum,
                "main_term": res.main_term,
                "delta": res.delta,
                "slack": slack,
                "within": abs(res.delta) <= slack,
            }
        )
    return rows


def _rows_char_scan(cfg: ExperimentConfig, q: int) -> list[dict]:
    group = chars.build_character_group(q)
    if group.order < 2:
        return []
    if cfg.bound is not None:
        upper = cfg.bound
    elif cfg.bound_exp is not None:
        upper = max(1, math.floor(q**cfg.bound_exp))
    else:
        upper = math.ceil(math.sqrt(q))
    try:
        scan = chars.char_sum_scan(group, upper)
    except NoNonprincipalError:
        return []
    return [
        {
            "q": q,
            "phi": group.order,
            "upper": upper,
            "max_abs": scan.max_abs,
            "argmax_char": scan.argmax.digest(),
            "ratio_q_quarter": scan.max_abs / q**0.25,
            "ratio_sqrt_m": scan.ratio_sqrt,
            "ratio_linear": scan.ratio_linear,
        }
    ]


def _rows_mean_value(cfg: ExperimentConfig, q: int) -> list[dict]:
    group = chars.build_character_group(q)
    rng = random.Random(f"{cfg.seed}:mean-value:{q}")
    n_max = 2 * q
    matrix = chars.value_matrix(group, n_max)
    violations = 0
    max_ratio = 0.0
    for _ in range(cfg.vectors):
        n_len = rng.randint(1, n_max)
        coeffs = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n_len)]
        res = chars.mean_value_check(group, coeffs, matrix=matrix[:, :n_len])
        if not res.holds:
            violations += 1
        if res.rhs > 0:
            max_ratio = max(max_ratio, res.lhs / res.rhs)
    return [
        {
            "q": q,
            "phi": group.order,
            "vectors": cfg.vectors,
            "max_ratio": max_ratio,
            "violations": violations,
        }
    ]


def _rows_product_length(cfg: ExperimentConfig, q: int) -> list[dict]:
    bound = cfg.bound_for(q)
    lmap = solvers.product_length_map(q, bound)
    uk = lmap.uniform_k
    arg = lmap.argmax_unit
    digest = ""
    if uk is not None:
        digest = product_witness_digest(solvers.witness_from_length_map(lmap, arg))
    row = {
        "q": q,
        "cube_free": arith.factor_profile(q).cube_free,
        "B": bound,
        "exponent": cfg.exponent_label(),
        "uniform_k": uk if uk is not None else INF,
        "max_argmax_a": arg,
        "witness_digest": digest,
    }
    if cfg.k_max is not None:
        row["coverage_k"] = cfg.k_max
        row["coverage_frac"] = lmap.coverage(cfg.k_max)
    return [row]


def _rows_subgroup_length(cfg: ExperimentConfig, q: int) -> list[dict]:
    try:
        sub = solvers.make_subgroup(q, cfg.subgroup or "auto-sqrt")
    except (BadModulusError, BadSubgroupError):
        return []
    bound = cfg.bound_for(q)
    cmap = solvers.subgroup_length_map(q, bound, sub)
    uk = cmap.uniform_k
    arg = cmap.argmax_coset
    digest = ""
    if uk is not None:
        witness = solvers.solve_product_subgroup(arg, q, uk, bound, sub)
        digest = product_witness_digest(witness)
    return [
        {
            "q": q,
            "cube_free": arith.factor_profile(q).cube_free,
            "t": sub.order,
            "subgroup": sub.digest(),
            "B": bound,
            "exponent": cfg.exponent_label(),
            "uniform_k": uk if uk is not None else INF,
            "max_argmax_coset": arg,
            "witness_digest": digest,
        }
    ]


def _rows_fermat_length(cfg: ExperimentConfig, p: int) -> list[dict]:
    upper = min(cfg.bound_for(p), p * p - 1)
    lengths = fermat.fq_length_map(p, upper)
    missing = [a for a, l in enumerate(lengths) if l is None]
    if missing:
        uk, arg, digest = None, missing[0], ""
    else:
        uk = max(lengths)
        arg = lengths.index(uk)
        digest = fq_witness_digest(fermat.solve_quotient_sum(arg, p, uk, upper))
    values = {fermat.fermat_quotient(u, p) for u in range(1, upper + 1)}
    return [
        {
            "p": p,
            "U": upper,
            "uniform_k": uk if uk is not None else INF,
            "max_argmax_a": arg,
            "witness_digest": digest,
            "value_count": len(values),
        }
    ]


def _rows_correspondence(cfg: ExperimentConfig, p: int) -> list[dict]:
    upper = min(cfg.bound_for(p), p * p - 1)
    res = fermat.quotient_product_correspondence(p, upper)
    mismatches = sum(1 for a, b in zip(res.additive, res.multiplicative) if a != b)
    finite = [l for l in res.additive if l is not None]
    return [
        {
            "p": p,
            "U": upper,
            "agree": res.agree,
            "mismatches": mismatches,
            "additive_max": max(finite) if len(finite) == len(res.additive) else INF,
        }
    ]


def _rows_greedy_pack(cfg: ExperimentConfig, u: int) -> list[dict]:
    spf = arith.smallest_prime_factor_sieve(u * u)
    n_count = 0
    violations = 0
    max_factors = 0
    for n in range(1, u * u + 1):
        m, biggest = n, 1
        while m > 1:
            p = spf[m]
            biggest = max(biggest, p)
            m //= p
        if biggest > u:
            continue
        n_count += 1
        parts = solvers.greedy_pack(n, u)
        prod = math.prod(parts)
        max_factors = max(max_factors, len(parts))
        if len(parts) > 3 or prod != n or any(v > u for v in parts):
            violations += 1
    return [{"u": u, "n_count": n_count, "violations": violations, "max_factors": max_factors}]


def _rows_balog(cfg: ExperimentConfig, q: int) -> list[dict]:
    eps = cfg.epsilon
    zeta = CONSTANTS.zeta(eps)
    a = next((x for x in range(2, q) if math.gcd(x, q) == 1), 1)
    n_anchor = q ** (0.25 + eps)
    r_anchor = q ** (1.5 + float(CONSTANTS.delta))
    widen = cfg.demo_widening
    w_n = arith.dyadic_window(n_anchor, widen=widen)
    w_r = arith.dyadic_window(r_anchor, widen=widen)
    rs = [r for r in w_r if math.gcd(r, q) == 1]
    window_n = list(w_n)
    if len(rs) * len(window_n) ** 2 > BALOG_TRIPLE_CAP:
        raise ResourceExceededError(
            f"balog enumeration for q={q} exceeds {BALOG_TRIPLE_CAP} triples"
        )
    pairs = [(m, n) for m in window_n for n in window_n]
    threshold = n_anchor**zeta
    x = n_anchor * n_anchor * r_anchor
    lhs = e_term = f_term = 0
    for r in rs:
        dec = counting.balog_decompose(
            pairs,
            lambda s, r=r: x <= r * s <= 2 * x and (r * s) % q == a,
            threshold,
        )
        lhs += dec.lhs
        e_term += dec.e_term
        f_term += dec.f_term
    profile = arith.factor_profile(q)
    lam = 1.0 / profile.phi
    main = 2.0 * lam * math.log1p(eps) * (profile.kappa * CONSTANTS.xi * n_anchor) ** 2 * len(rs)
    return [
        {
            "q": q,
            "a": a,
            "n_anchor": n_anchor,
            "zeta": zeta,
            "threshold": threshold,
            "widen": widen,
            "pairs": len(pairs),
            "sum_b": len(rs),
            "lhs": lhs,
            "e_term": e_term,
            "f_term": f_term,
            "holds": lhs >= e_term - f_term,
            "lam": lam,
            "main_term": main,
        }
    ]


def _rows_subgroup_pairs(cfg: ExperimentConfig, q: int) -> list[dict]:
    try:
        sub = solvers.make_subgroup(q, cfg.subgroup or "auto-sqrt")
    except (BadModulusError, BadSubgroupError):
        return []
    t = sub.order
    if cfg.bound is not None:
        x_bound = cfg.bound
    else:
        x_bound = math.ceil(q**0.75 / t**0.25)
    x_bound = max(1, min(x_bound, q - 1))
    res = solvers.count_subgroup_ratio_pairs(q, x_bound, sub)
    return [
        {
            "q": q,
            "t": t,
            "subgroup": sub.digest(),
            "x_bound": x_bound,
            "count": res.count,
            "bound_shape": res.bound_shape,
            "ratio": res.count / res.bound_shape if res.bound_shape > 0 else None,
        }
    ]


def _rows_grh_ratio(cfg: ExperimentConfig, q: int) -> list[dict]:
    import numpy as np

    try:
        sub = solvers.make_subgroup(q, cfg.subgroup or "auto-sqrt")
    except (BadModulusError, BadSubgroupError):
        return []
    t = sub.order
    bound = cfg.bound_for(q)
    beta_exp = cfg.bound_exp if cfg.bound_exp is not None else CONSTANTS.beta + cfg.epsilon
    if cfg.k_max is not None:
        k = cfg.k_max
    else:
        theta = math.log(t) / math.log(q)
        k = max(1, math.floor(2.0 * (1.0 - theta) / beta_exp) + 1)
    factors = solvers._factor_array(q, bound)
    n_factors = int(factors.size)
    if n_factors == 0:
        return []
    if n_factors**k >= 2**62:
        raise ResourceExceededError(f"count table overflow: {n_factors}^{k} products")
    counts = np.zeros(q, dtype=np.int64)
    counts[1 % q] = 1
    for _ in range(k):
        nxt = np.zeros(q, dtype=np.int64)
        nz = np.flatnonzero(counts)
        idx = (nz[:, None] * factors[None, :]).reshape(-1) % q
        np.add.at(nxt, idx, np.repeat(counts[nz], n_factors))
        counts = nxt
    units = np.flatnonzero(np.gcd(np.arange(q, dtype=np.int64), q) == 1)
    g = np.array(sub.elements, dtype=np.int64)
    if units.size * t > 2 * 10**7:
        raise ResourceExceededError(f"coset sums for q={q} exceed the cap")
    per_target = counts[units[:, None] * g[None, :] % q].sum(axis=1)
    phi = int(units.size)
    main = t * n_factors**k / phi
    return [
        {
            "q": q,
            "t": t,
            "subgroup": sub.digest(),
            "B": bound,
            "k": k,
            "factor_count": n_factors,
            "count_min": int(per_target.min()),
            "count_max": int(per_target.max()),
            "count_mean": float(per_target.mean()),
            "main_term": main,
            "min_ratio": float(per_target.min()) / main if main > 0 else None,
            "max_ratio": float(per_target.max()) / main if main > 0 else None,
        }
    ]


_BUILDERS = {
    "coprime-count": _rows_coprime_count,
    "prime-cofactor": _rows_prime_cofactor,
    "mertens": _rows_mertens,
    "char-scan": _rows_char_scan,
    "mean-value": _rows_mean_value,
    "product-length": _rows_product_length,
    "subgroup-length": _rows_subgroup_length,
    "fermat-length": _rows_fermat_length,
    "correspondence": _rows_correspondence,
    "greedy-pack": _rows_greedy_pack,
    "balog": _rows_balog,
    "subgroup-pairs": _rows_subgroup_pairs,
    "grh-ratio": _rows_grh_ratio,
}


def _build_rows(cfg: ExperimentConfig, task) -> list[dict]:
    return _BUILDERS[cfg.kind](cfg, task)


# -- assembly ----------------------------------------------------------------------


def _replay_row(cfg: ExperimentConfig, row: dict) -> bool:
    digest = row.get("witness_digest", "")
    if not digest:
        return True
    sub = None
    if cfg.kind == "subgroup-length":
        sub = solvers.make_subgroup(row["q"], row["subgroup"])
    return replay_digest(digest, subgroup=sub)


def count_violations(kind: str, rows: list[dict]) -> int:
    rule = _VIOLATION_COLS.get(kind)
    if rule is None:
        return 0
    col, expected = rule
    return sum(1 for row in rows if row.get(col) != expected)


def _aggregates(columns, rows) -> dict:
    out = {}
    for col in columns:
        nums = [
            float(row[col])
            for row in rows
            if isinstance(row.get(col), (int, float)) and not isinstance(row.get(col), bool)
        ]
        if nums:
            out[col] = {
                "min": min(nums),
                "max": max(nums),
                "mean": sum(nums) / len(nums),
            }
    return out


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    """Run one experiment sweep and return the verified report."""
    cfg.validate()
    if cfg.kind in ("prime-cofactor", "balog") and CONSTANTS.zeta(cfg.epsilon) >= 1.0:
        raise ConfigError(
            f"epsilon {cfg.epsilon} pushes the smoothness exponent past 1"
        )
    start = time.perf_counter()
    tasks = experiment_tasks(cfg)
    build = partial(_build_rows, cfg)
    if cfg.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(build, tasks, chunksize=max(1, len(tasks) // (4 * cfg.workers) or 1)))
    else:
        chunks = [build(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    replay_failures = 0
    for row in rows:
        if not _replay_row(cfg, row):
            replay_failures += 1
    if replay_failures:
        raise VerificationError(f"{replay_failures} witness digests failed to replay")
    columns = report_columns(cfg)
    violations = count_violations(cfg.kind, rows)
    summary = {
        "kind": cfg.kind,
        "row_count": len(rows),
        "violations": violations,
        "witnesses_replayed": sum(1 for r in rows if r.get("witness_digest")),
        "aggregates": _aggregates(columns, rows),
        "seed": cfg.seed,
        "tool_version": TOOL_VERSION,
        "elapsed_s": time.perf_counter() - start,
    }
    return ExperimentReport(config=cfg.to_dict(), columns=columns, rows=rows, summary=summary)
