"""Scenario-level verification: exact quantities vs closed-form bounds.

A Scenario binds a finite product space, a distribution, a weight
vector, and one target (a set, or a functional checked around its
median, its mean, or for the mean-median gap).  Each verify_* flow
certifies the structural conditions its bounds assume, computes the
exact left-hand quantities by enumeration, evaluates every applicable
bound on a grid, and returns a BoundReport whose rows record lhs,
bound, slack, and a pass flag at slack tolerance -1e-12.

Reports are deterministic: given the same scenario and seed, the JSON
serialization is byte-identical (no timestamps, floats printed with 17
significant digits, fixed row order).
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import ClassVar, Iterable, Union

import numpy as np

from . import bounds
from ._util import dumps, fmt_float
from .bounds import BoundId
from .estimators import exact_functional_stats, exact_set_stats, mgf_from_law
from .functionals import (
    Functional,
    check_drop_condition,
    check_lipschitz,
    check_self_bounding,
    drop_infimum_family,
)
from .hamming import AlphaWeights
from .space import RNG_NAME, Distribution, FiniteSpace, SetSpec, _rng

__all__ = [
    "PASS_TOL",
    "DEFAULT_LAMBDA_GRID",
    "GENERATOR_KINDS",
    "SetTarget",
    "MedianTarget",
    "GapTarget",
    "MeanTarget",
    "Target",
    "Scenario",
    "BoundRow",
    "BoundReport",
    "default_t_grid",
    "scenario_to_dict",
    "scenario_fingerprint",
    "verify_set",
    "verify_median",
    "verify_gap",
    "verify_drop_functional",
    "verify_scenario",
    "random_scenario",
    "SweepResult",
    "sweep",
]

# A row passes when bound - lhs >= -PASS_TOL; the tolerance only absorbs
# float rounding of exactly-computed rational quantities.
PASS_TOL = 1e-12

# Default t grid: geometric sweep covering both exponent branches and
# the tail-vanishing region beyond the functional's total range.
T_GRID_SIZE = 24
T_GRID_MIN = 0.05
T_GRID_SPAN = 1.2

DEFAULT_LAMBDA_GRID = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0)

# Generator/sweep vocabulary; "drop" produces mean-centered targets
# verified through the drop-condition flow.
GENERATOR_KINDS = ("set", "median", "gap", "drop")


@dataclass(frozen=True)
class SetTarget:
    """Verify the set-distance bounds for a fixed nonempty set."""

    set_spec: SetSpec
    kind: ClassVar[str] = "set"


@dataclass(frozen=True)
class MedianTarget:
    """Verify the median-centered tail bounds for a Lipschitz functional."""

    functional: Functional
    kind: ClassVar[str] = "median"


@dataclass(frozen=True)
class GapTarget:
    """Verify the mean-median gap bounds for a Lipschitz functional."""

    functional: Functional
    kind: ClassVar[str] = "gap"


@dataclass(frozen=True)
class MeanTarget:
    """Verify mean-centered tail and MGF bounds under the drop condition."""

    functional: Functional
    kind: ClassVar[str] = "mean"


Target = Union[SetTarget, MedianTarget, GapTarget, MeanTarget]


def _clean_grid(values: Iterable[float], name: str, minimum_exclusive: bool) -> tuple:
    out = sorted({float(v) for v in values})
    if not out:
        raise ValueError(f"{name} must be nonempty when given")
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"{name} values must be finite, got {v}")
        if minimum_exclusive and v <= 0.0:
            raise ValueError(f"{name} values must be positive, got {v}")
        if not minimum_exclusive and v < 0.0:
            raise ValueError(f"{name} values must be nonnegative, got {v}")
    return tuple(out)


@dataclass(frozen=True)
class Scenario:
    """One testable unit: space, law, weights, target, and grids.

    Grids left as None are resolved per flow: the t grid defaults to
    :func:`default_t_grid` with flow-specific points inserted, the
    lambda grid to DEFAULT_LAMBDA_GRID.  ``seed`` identifies generated
    scenarios and keys reproducibility; exact verification itself draws
    no randomness.
    """

    space: FiniteSpace
    dist: Distribution
    alpha: AlphaWeights
    target: Target
    t_grid: tuple[float, ...] | None = None
    lambda_grid: tuple[float, ...] | None = None
    seed: int = 0
    cap: int | None = None

    def __post_init__(self) -> None:
        if self.alpha.n != self.space.n:
            raise ValueError(
                f"alpha has {self.alpha.n} weights, space has {self.space.n} coordinates"
            )
        self.dist.require_matches(self.space)
        if self.t_grid is not None:
            object.__setattr__(self, "t_grid", _clean_grid(self.t_grid, "t grid", True))
        if self.lambda_grid is not None:
            object.__setattr__(
                self, "lambda_grid", _clean_grid(self.lambda_grid, "lambda grid", False)
            )
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if self.cap is not None and (not isinstance(self.cap, int) or self.cap < 1):
            raise ValueError(f"cap must be a positive integer, got {self.cap!r}")


def default_t_grid(alpha: AlphaWeights, extras: Iterable[float] = ()) -> tuple:
    """Geometric grid of 24 points from 0.05 to 1.2 * sum(alpha), plus extras.

    Extras (a mean distance rho, a mean-median gap) are inserted when
    positive so the grid always probes the exponent's branch point and
    the shifted bound's validity boundary.
    """
    hi = T_GRID_SPAN * alpha.l1_sum
    if hi <= T_GRID_MIN:
        raise ValueError("weight vector is too small to span the default grid")
    vals = {float(x) for x in np.geomspace(T_GRID_MIN, hi, T_GRID_SIZE)}
    for e in extras:
        e = float(e)
        if math.isfinite(e) and e > 0.0:
            vals.add(e)
    return tuple(sorted(vals))


@dataclass(frozen=True)
class BoundRow:
    """One evaluated inequality: exact lhs against one bound at one point."""

    target_kind: str
    bound_id: str
    lhs: float
    bound: float
    slack: float
    passed: bool
    vacuous: bool
    median_used: float | None = None
    tail: str | None = None
    t: float | None = None
    lam: float | None = None

    def to_dict(self) -> dict:
        return {
            "target_kind": self.target_kind,
            "median_used": self.median_used,
            "tail": self.tail,
            "t": self.t,
            "lambda": self.lam,
            "lhs": self.lhs,
            "bound_id": self.bound_id,
            "bound": self.bound,
            "slack": self.slack,
            "pass": self.passed,
            "vacuous": self.vacuous,
        }


CSV_COLUMNS = (
    "target_kind",
    "median_used",
    "tail",
    "t",
    "lambda",
    "lhs",
    "bound_id",
    "bound",
    "slack",
    "pass",
    "vacuous",
)


def _row(
    target_kind: str,
    bound_id: BoundId,
    lhs: float,
    bound: float,
    *,
    probability: bool = True,
    median_used: float | None = None,
    tail: str | None = None,
    t: float | None = None,
    lam: float | None = None,
) -> BoundRow:
    lhs = float(lhs)
    bound = float(bound)
    slack = bound - lhs
    return BoundRow(
        target_kind=target_kind,
        bound_id=bound_id.value,
        lhs=lhs,
        bound=bound,
        slack=slack,
        passed=slack >= -PASS_TOL,
        vacuous=bool(probability and bound > 1.0),
        median_used=median_used,
        tail=tail,
        t=t,
        lam=lam,
    )


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return fmt_float(value)
    return str(value)


@dataclass(frozen=True)
class BoundReport:
    """All rows for one scenario, with a summary and certificate notes.

    ``summary`` records row counts, the worst slack seen per bound, and
    the derived quantities (membership probability, mean distances,
    mean, medians, gaps) the rows were built from.  Serializations are
    deterministic; JSON and CSV carry identical numeric strings.
    """

    fingerprint: str
    rng: str
    scenario: dict
    rows: tuple[BoundRow, ...]
    summary: dict
    notes: tuple[str, ...] = ()

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    def failing_rows(self) -> tuple[BoundRow, ...]:
        return tuple(r for r in self.rows if not r.passed)

    def to_json(self) -> str:
        payload = {
            "fingerprint": self.fingerprint,
            "rng": self.rng,
            "scenario": self.scenario,
            "rows": [r.to_dict() for r in self.rows],
            "summary": self.summary,
            "notes": list(self.notes),
        }
        return dumps(payload)

    def to_csv(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for r in self.rows:
            d = r.to_dict()
            lines.append(",".join(_csv_cell(d[c]) for c in CSV_COLUMNS))
        return "\r\n".join(lines) + "\r\n"


def _summary(rows: list[BoundRow], derived: dict) -> dict:
    worst: dict[str, float] = {}
    for r in rows:
        cur = worst.get(r.bound_id)
        if cur is None or r.slack < cur:
            worst[r.bound_id] = r.slack
    return {
        "rows": len(rows),
        "failures": sum(1 for r in rows if not r.passed),
        "vacuous_rows": sum(1 for r in rows if r.vacuous),
        "all_pass": all(r.passed for r in rows),
        "worst_slack": dict(sorted(worst.items())),
        "derived": derived,
    }


def _functional_to_dict(f: Functional, space: FiniteSpace) -> dict:
    d: dict = {
        "type": "table",
        "values": [f.value(p) for p in space.points()],
    }
    if f.drop_label is not None:
        d["drop"] = f.drop_label
    if f.self_bounding_params is not None:
        d["params"] = list(f.self_bounding_params)
    return d


def scenario_to_dict(scenario: Scenario) -> dict:
    """Canonical plain-data form: functionals flattened to value tables,
    weights stored already normalized.  Fingerprints hash this form."""
    if scenario.dist.kind == "product":
        dd: dict = {
            "kind": "product",
            "pmfs": [list(pmf) for pmf in scenario.dist.pmfs],
        }
    else:
        dd = {"kind": "joint", "joint_table": list(scenario.dist.joint_table)}
    tgt = scenario.target
    if isinstance(tgt, SetTarget):
        td: dict = {
            "kind": "set",
            "set": {
                "members": [list(p.symbols) for p in tgt.set_spec.members(scenario.space)]
            },
        }
    else:
        td = {
            "kind": tgt.kind,
            "functional": _functional_to_dict(tgt.functional, scenario.space),
        }
    return {
        "space": {"alphabet_sizes": list(scenario.space.alphabet_sizes)},
        "distribution": dd,
        "alpha": {"weights": list(scenario.alpha.weights), "normalize": False},
        "target": td,
        "t_grid": list(scenario.t_grid) if scenario.t_grid is not None else None,
        "lambda_grid": (
            list(scenario.lambda_grid) if scenario.lambda_grid is not None else None
        ),
        "seed": scenario.seed,
        "cap": scenario.cap,
    }


def _fingerprint(scenario_dict: dict) -> str:
    return hashlib.sha256(
        dumps(scenario_dict, sort_keys=True).encode("utf-8")
    ).hexdigest()


def scenario_fingerprint(scenario: Scenario) -> str:
    """Hash of the canonical serialization; stable across runs and machines."""
    return _fingerprint(scenario_to_dict(scenario))


def _make_report(
    scenario: Scenario, rows: list[BoundRow], derived: dict, notes: Iterable[str]
) -> BoundReport:
    sd = scenario_to_dict(scenario)
    return BoundReport(
        fingerprint=_fingerprint(sd),
        rng=RNG_NAME,
        scenario=sd,
        rows=tuple(rows),
        summary=_summary(rows, derived),
        notes=tuple(notes),
    )


def _require_unit_alpha(alpha: AlphaWeights) -> None:
    if not alpha.normalized:
        raise ValueError(
            f"theorems require ||α||=1; the weight norm is {fmt_float(alpha.l2_norm)} "
            "(normalize the weights first)"
        )


def _require_product(dist: Distribution, what: str) -> None:
    if dist.kind != "product":
        raise ValueError(
            f"{what} require independent coordinates (a product distribution); "
            "got a joint table"
        )


def _certify_lipschitz(
    f: Functional, alpha: AlphaWeights, space: FiniteSpace
) -> list[str]:
    """Certify the Lipschitz property, via the drop reduction when possible.

    A drop family with gaps in [0, alpha_i] forces the Lipschitz bound
    coordinate by coordinate, so when the functional carries one we try
    that reduction first and record which path succeeded.
    """
    notes: list[str] = []
    if f.drop_family is not None:
        cert = check_drop_condition(f, alpha, space)
        if cert.holds:
            notes.append(
                "lipschitz certified via the drop-condition reduction "
                f"(drop worst slack {fmt_float(cert.worst_slack)})"
            )
            return notes
        notes.append(
            f"drop condition does not hold (worst slack {fmt_float(cert.worst_slack)}); "
            "checking the Lipschitz condition directly"
        )
    cert = check_lipschitz(f, alpha, space)
    if not cert.holds:
        a, b = cert.witness
        raise ValueError(
            "functional is not Lipschitz for the weighted Hamming distance: "
            f"|f(x) - f(x')| exceeds d_alpha(x, x') by {fmt_float(cert.worst_slack)} "
            f"at x={a.symbols}, x'={b.symbols}"
        )
    notes.append(f"lipschitz certified directly (worst slack {fmt_float(cert.worst_slack)})")
    return notes


def verify_set(scenario: Scenario) -> BoundReport:
    """Set-distance bounds: three tail rows per t plus one membership row.

    For each t: lhs = P(X in A) * P(d_alpha(X, A) >= t) against the
    classical exp(-t^2/2), the intermediate exp(-t^2), and the piecewise
    exp(-h(t, rho)) bounds, rho being the exact mean distance to A.  The
    final row checks P(X in A) * P(X not in A) <= exp(-2 rho^2).
    """
    tgt = scenario.target
    if not isinstance(tgt, SetTarget):
        raise ValueError("verify_set needs a scenario with a set target")
    _require_unit_alpha(scenario.alpha)
    _require_product(scenario.dist, "the set-distance bounds")
    st = exact_set_stats(
        scenario.space, scenario.dist, scenario.alpha, tgt.set_spec, scenario.cap
    )
    ts = scenario.t_grid or default_t_grid(scenario.alpha, extras=(st.rho,))
    rows: list[BoundRow] = []
    for t in ts:
        lhs = st.p_in * st.distance_curve.prob_ge(t)
        rows.append(_row("set", BoundId.MCD_SET, lhs, bounds.mcdiarmid_set_bound(t), t=t))
        rows.append(_row("set", BoundId.SIMPLE_SET, lhs, bounds.simple_set_bound(t), t=t))
        rows.append(
            _row("set", BoundId.IMPROVED_SET, lhs, bounds.improved_set_bound(t, st.rho), t=t)
        )
    rows.append(
        _row(
            "set",
            BoundId.MEMBERSHIP_PRODUCT,
            st.p_in * (1.0 - st.p_in),
            bounds.membership_product_bound(st.rho),
        )
    )
    derived = {"p_in": st.p_in, "rho": st.rho}
    return _make_report(scenario, rows, derived, ())


def _median_infos(
    scenario: Scenario, f: Functional, law_stats, mu: float
) -> list[dict]:
    """Per-median derived quantities: rho for both level sets and the gap.

    The tail rows use the sublevel-set rho on both tails, matching the
    bound's published form; the superlevel-set rho (the one the lower
    tail's own derivation passes through) is recorded as a diagnostic
    but never asserted.
    """
    medians = [law_stats.median_lo]
    if law_stats.median_hi != law_stats.median_lo:
        medians.append(law_stats.median_hi)
    infos = []
    for m in medians:
        sub = SetSpec.sublevel(f.value, m)
        sup = SetSpec.from_predicate(lambda p, _m=m: f.value(p) >= _m)
        rho_sub = exact_set_stats(
            scenario.space, scenario.dist, scenario.alpha, sub, scenario.cap
        ).rho
        rho_sup = exact_set_stats(
            scenario.space, scenario.dist, scenario.alpha, sup, scenario.cap
        ).rho
        infos.append(
            {
                "median": m,
                "rho_sublevel": rho_sub,
                "rho_superlevel": rho_sup,
                "gap": abs(m - mu),
            }
        )
    return infos


def verify_median(scenario: Scenario) -> BoundReport:
    """Median-centered tail bounds at both median endpoints.

    Per median m and per t: upper rows check P(f - m >= t), lower rows
    P(m - f >= t), each against 2*exp(-h(t, rho)) and the classical
    2*exp(-t^2/2); shifted rows reuse the mean-centered bound
    exp(-2(t - gap)^2) and only exist for t > gap = |m - mu|.
    """
    tgt = scenario.target
    if not isinstance(tgt, MedianTarget):
        raise ValueError("verify_median needs a scenario with a median target")
    _require_unit_alpha(scenario.alpha)
    _require_product(scenario.dist, "the median bounds")
    f = tgt.functional
    notes = _certify_lipschitz(f, scenario.alpha, scenario.space)
    law = exact_functional_stats(scenario.space, scenario.dist, f, scenario.cap)
    mu = law.stats.mean
    infos = _median_infos(scenario, f, law.stats, mu)
    extras = [x for info in infos for x in (info["rho_sublevel"], info["gap"])]
    ts = scenario.t_grid or default_t_grid(scenario.alpha, extras=extras)
    rows: list[BoundRow] = []
    for info in infos:
        m = info["median"]
        rho = info["rho_sublevel"]
        gap = info["gap"]
        for t in ts:
            lhs_u = law.curve.prob_ge(m + t)
            lhs_l = law.curve.prob_le(m - t)
            for tail, lhs in (("upper", lhs_u), ("lower", lhs_l)):
                rows.append(
                    _row(
                        "median",
                        BoundId.MEDIAN_IMPROVED,
                        lhs,
                        bounds.median_tail_bound(t, rho),
                        median_used=m,
                        tail=tail,
                        t=t,
                    )
                )
                rows.append(
                    _row(
                        "median",
                        BoundId.MEDIAN_CLASSICAL,
                        lhs,
                        bounds.median_tail_classical(t),
                        median_used=m,
                        tail=tail,
                        t=t,
                    )
                )
                if t > gap:
                    rows.append(
                        _row(
                            "median",
                            BoundId.SHIFTED_MEDIAN,
                            lhs,
                            bounds.shifted_median_bound(t, gap),
                            median_used=m,
                            tail=tail,
                            t=t,
                        )
                    )
    derived = {
        "mu": mu,
        "median_lo": law.stats.median_lo,
        "median_hi": law.stats.median_hi,
        "medians": infos,
    }
    notes.append(
        "tail rows use rho from the sublevel set {f <= m} on both tails; "
        "the superlevel-set rho is recorded in summary.derived.medians as a diagnostic"
    )
    return _make_report(scenario, rows, derived, notes)


def verify_gap(scenario: Scenario) -> BoundReport:
    """Mean-median gap bounds at both median endpoints.

    lhs = |mu - m| against (2*rho + sqrt(pi/2))*exp(-2*rho^2) with rho
    from the sublevel set, and against the rho-free sqrt(2*pi).
    """
    tgt = scenario.target
    if not isinstance(tgt, GapTarget):
        raise ValueError("verify_gap needs a scenario with a gap target")
    _require_unit_alpha(scenario.alpha)
    _require_product(scenario.dist, "the gap bounds")
    f = tgt.functional
    notes = _certify_lipschitz(f, scenario.alpha, scenario.space)
    law = exact_functional_stats(scenario.space, scenario.dist, f, scenario.cap)
    mu = law.stats.mean
    infos = _median_infos(scenario, f, law.stats, mu)
    rows: list[BoundRow] = []
    for info in infos:
        m = info["median"]
        lhs = abs(mu - m)
        rows.append(
            _row(
                "gap",
                BoundId.GAP_IMPROVED,
                lhs,
                bounds.gap_bound(info["rho_sublevel"]),
                probability=False,
                median_used=m,
            )
        )
        rows.append(
            _row(
                "gap",
                BoundId.GAP_CLASSICAL,
                lhs,
                bounds.gap_bound_classical(),
                probability=False,
                median_used=m,
            )
        )
    derived = {
        "mu": mu,
        "median_lo": law.stats.median_lo,
        "median_hi": law.stats.median_hi,
        "medians": infos,
    }
    return _make_report(scenario, rows, derived, notes)


def verify_drop_functional(scenario: Scenario) -> BoundReport:
    """Mean-centered bounds under the coordinate-drop condition.

    The distribution may be a joint table: the drop-condition rows are
    stated without an independence hypothesis, so they are emitted (and
    checked) under dependence as well.  Rows per t: both tails against
    exp(-2t^2) when the drop gaps stay within alpha, and against
    exp(-2t^2/n) when they stay within 1.  MGF rows compare the exact
    centered moment generating function with exp(lambda^2/8).  When
    self-bounding parameters are present the distribution must be a
    product and the (a, b) conditions must certify; that adds the
    sb-upper/sb-lower rows.
    """
    tgt = scenario.target
    if not isinstance(tgt, MeanTarget):
        raise ValueError("verify_drop_functional needs a scenario with a mean target")
    _require_unit_alpha(scenario.alpha)
    space = scenario.space
    f = tgt.functional
    notes: list[str] = []
    if f.drop_family is None:
        f = drop_infimum_family(f, space)
        notes.append("no drop family supplied; using the coordinate-infimum family")
    cert_alpha = check_drop_condition(f, scenario.alpha, space)
    unit = AlphaWeights((1.0,) * space.n)
    cert_unit = check_drop_condition(f, unit, space)
    notes.append(
        f"drop certificate vs alpha: holds={cert_alpha.holds} "
        f"(worst slack {fmt_float(cert_alpha.worst_slack)})"
    )
    notes.append(
        f"drop certificate vs unit increments: holds={cert_unit.holds} "
        f"(worst slack {fmt_float(cert_unit.worst_slack)})"
    )
    if not cert_alpha.holds and not cert_unit.holds:
        w = cert_alpha.witness
        raise ValueError(
            "drop condition fails for both the weight vector and unit increments "
            f"(worst slacks {fmt_float(cert_alpha.worst_slack)} and "
            f"{fmt_float(cert_unit.worst_slack)}; witness x={w.symbols if w else None})"
        )
    params = f.self_bounding_params
    cert_sb = None
    if params is not None:
        _require_product(scenario.dist, "the self-bounding bounds")
        cert_sb = check_self_bounding(f, space)
        if not cert_sb.holds:
            w = cert_sb.witness
            raise ValueError(
                f"self-bounding conditions fail for params (a={fmt_float(params[0])}, "
                f"b={fmt_float(params[1])}): worst sum slack "
                f"{fmt_float(cert_sb.worst_slack)}, witness x={w.symbols if w else None}"
            )
        notes.append(
            f"self-bounding certificate holds (worst sum slack {fmt_float(cert_sb.worst_slack)})"
        )
    law = exact_functional_stats(scenario.space, scenario.dist, f, scenario.cap)
    mu = law.stats.mean
    ts = scenario.t_grid or default_t_grid(scenario.alpha)
    lams = scenario.lambda_grid or DEFAULT_LAMBDA_GRID
    rows: list[BoundRow] = []
    for t in ts:
        lhs_u = law.curve.prob_ge(mu + t)
        lhs_l = law.curve.prob_le(mu - t)
        if cert_alpha.holds:
            b = bounds.drop_mean_tail_bound(t)
            rows.append(_row("mean", BoundId.DROP_MEAN_TAIL, lhs_u, b, tail="upper", t=t))
            rows.append(_row("mean", BoundId.DROP_MEAN_TAIL, lhs_l, b, tail="lower", t=t))
        if cert_unit.holds:
            b = bounds.drop_mean_tail_scaled(t, space.n)
            rows.append(
                _row("mean", BoundId.DROP_MEAN_TAIL_SCALED, lhs_u, b, tail="upper", t=t)
            )
            rows.append(
                _row("mean", BoundId.DROP_MEAN_TAIL_SCALED, lhs_l, b, tail="lower", t=t)
            )
        if cert_sb is not None:
            rows.append(
                _row(
                    "mean",
                    BoundId.SB_UPPER,
                    lhs_u,
                    bounds.sb_upper_bound(t, mu, params[0], params[1]),
                    tail="upper",
                    t=t,
                )
            )
            rows.append(
                _row(
                    "mean",
                    BoundId.SB_LOWER,
                    lhs_l,
                    bounds.sb_lower_bound(t, mu, params[0], params[1]),
                    tail="lower",
                    t=t,
                )
            )
    if cert_alpha.holds:
        for lam in lams:
            rows.append(
                _row(
                    "mean",
                    BoundId.MGF,
                    mgf_from_law(law.values, law.probs, lam),
                    bounds.mgf_bound(lam),
                    probability=False,
                    lam=lam,
                )
            )
    derived = {
        "mu": mu,
        "n": space.n,
        "drop_family": f.drop_label,
        "certificates": {
            "drop_alpha": cert_alpha.holds,
            "drop_unit": cert_unit.holds,
            "self_bounding": None if cert_sb is None else cert_sb.holds,
        },
    }
    return _make_report(scenario, rows, derived, notes)


def verify_scenario(scenario: Scenario) -> BoundReport:
    """Route a scenario to the flow its target asks for."""
    tgt = scenario.target
    if isinstance(tgt, SetTarget):
        return verify_set(scenario)
    if isinstance(tgt, MedianTarget):
        return verify_median(scenario)
    if isinstance(tgt, GapTarget):
        return verify_gap(scenario)
    if isinstance(tgt, MeanTarget):
        return verify_drop_functional(scenario)
    raise ValueError(f"unknown target type {type(tgt).__name__}")


def _random_lipschitz_table(
    rng: np.random.Generator, space: FiniteSpace, alpha: AlphaWeights
) -> list[float]:
    """A random table that is Lipschitz for d_alpha by construction.

    Either a weighted coordinate sum sum_i alpha_i * theta_i * v_i(x_i)
    with per-symbol values v_i in [0, 1] (each coordinate change moves f
    by at most alpha_i), or an inf-convolution min_j (c_j + d_alpha(x, y_j))
    over random anchor points, which is Lipschitz as a minimum of
    Lipschitz functions.
    """
    symbols = np.indices(space.alphabet_sizes, dtype=np.int64).reshape(space.n, -1).T
    w = np.asarray(alpha.weights, dtype=np.float64)
    if rng.random() < 0.5:
        total = np.zeros(space.size, dtype=np.float64)
        for i, k in enumerate(space.alphabet_sizes):
            v = rng.uniform(0.0, 1.0, k)
            theta = 1.0 if rng.random() < 0.5 else -1.0
            total += w[i] * theta * v[symbols[:, i]]
        return [float(x) for x in total]
    n_anchors = int(rng.integers(1, min(space.size, 4) + 1))
    anchor_ranks = rng.choice(space.size, size=n_anchors, replace=False)
    anchors = symbols[np.sort(anchor_ranks)]
    offsets = rng.uniform(0.0, alpha.l1_sum, n_anchors)
    dists = ((symbols[:, None, :] != anchors[None, :, :]) @ w) + offsets[None, :]
    return [float(x) for x in dists.min(axis=1)]


def random_scenario(
    seed: int, kind: str, max_n: int = 4, max_alphabet: int = 3
) -> Scenario:
    """Deterministic random scenario for soundness sweeps.

    kind selects the target: "set", "median", "gap", or "drop".  Set,
    median, and gap scenarios always draw product distributions (their
    flows require independence); drop scenarios draw a joint table half
    the time, exercising the dependence-free form of the drop rows.
    """
    if kind not in GENERATOR_KINDS:
        raise ValueError(f"kind must be one of {GENERATOR_KINDS}, got {kind!r}")
    if max_n < 1 or max_alphabet < 2:
        raise ValueError("limits need max_n >= 1 and max_alphabet >= 2")
    if max_alphabet**max_n > 4096:
        raise ValueError("limits allow more than 4096 outcomes")
    rng = _rng(seed)
    n = int(rng.integers(2, max_n + 1)) if max_n >= 2 else 1
    sizes = tuple(int(x) for x in rng.integers(2, max_alphabet + 1, n))
    space = FiniteSpace(sizes)
    use_joint = kind == "drop" and bool(rng.random() < 0.5)
    if use_joint:
        table = rng.uniform(0.1, 1.0, space.size)
        table /= table.sum()
        dist = Distribution.joint(tuple(float(x) for x in table))
    else:
        pmfs = []
        for k in sizes:
            p = rng.uniform(0.1, 1.0, k)
            p /= p.sum()
            pmfs.append(tuple(float(x) for x in p))
        dist = Distribution.product(tuple(pmfs))
    w = rng.uniform(0.1, 1.0, n)
    w /= math.sqrt(float(np.dot(w, w)))
    alpha = AlphaWeights(tuple(float(x) for x in w))
    if kind == "set":
        count = int(rng.integers(1, space.size))
        ranks = sorted(int(r) for r in rng.choice(space.size, size=count, replace=False))
        target: Target = SetTarget(
            SetSpec.from_points(space.unrank(r) for r in ranks)
        )
    else:
        f = Functional.from_table(space, _random_lipschitz_table(rng, space, alpha))
        if kind == "median":
            target = MedianTarget(f)
        elif kind == "gap":
            target = GapTarget(f)
        else:
            target = MeanTarget(drop_infimum_family(f, space))
    return Scenario(space=space, dist=dist, alpha=alpha, target=target, seed=seed)


@dataclass(frozen=True)
class SweepResult:
    """Outcome of a randomized soundness sweep."""

    kind: str
    trials: int
    passes: int
    failing_seeds: tuple[int, ...]
    worst_slack: float
    worst_seed: int
    joint_count: int

    @property
    def all_pass(self) -> bool:
        return self.passes == self.trials


def sweep(
    kind: str,
    trials: int,
    seed: int = 0,
    *,
    max_n: int = 4,
    max_alphabet: int = 3,
) -> SweepResult:
    """Verify `trials` random scenarios; trial i uses seed `seed + i`.

    Scenarios run in trial order and results are reduced in that order,
    so the outcome is deterministic for a given starting seed.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    passes = 0
    failing: list[int] = []
    worst = math.inf
    worst_seed = seed
    joint_count = 0
    for i in range(trials):
        sc = random_scenario(seed + i, kind, max_n, max_alphabet)
        if sc.dist.kind == "joint":
            joint_count += 1
        report = verify_scenario(sc)
        if report.all_pass:
            passes += 1
        else:
            failing.append(sc.seed)
        for r in report.rows:
            if r.slack < worst:
                worst = r.slack
                worst_seed = sc.seed
    return SweepResult(
        kind=kind,
        trials=trials,
        passes=passes,
        failing_seeds=tuple(failing),
        worst_slack=worst,
        worst_seed=worst_seed,
        joint_count=joint_count,
    )
