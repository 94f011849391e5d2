"""Read scenarios from plain JSON files.

Schema (one object per file)::

    {
      "space":        {"alphabet_sizes": [2, 2]},
      "distribution": {"kind": "product", "pmfs": [[0.5, 0.5], [0.5, 0.5]]}
                      or {"kind": "joint", "joint_table": [0.5, 0.0, 0.0, 0.5]},
      "alpha":        {"weights": [0.707, 0.707], "normalize": true},
      "target":       {"kind": "set", "set": {"members": [[0, 0]]}}
                      or {"kind": "median" | "gap" | "mean",
                          "functional":
                              {"type": "table", "values": [...]}
                              | {"type": "weighted_sum", "coefficients": [...]}
                              | {"type": "distance_to_set", "set": {"members": [...]}},
                          "params": [a, b]},
      "grids":        {"t": [...], "lambda": [...]},
      "seed":         0,
      "caps":         {"enumeration": 1000000}
    }

"grids", "seed", "caps", and "params" are optional; "params" is only
meaningful for mean targets and switches on the self-bounding rows.
Weights must satisfy ||alpha|| = 1 unless "normalize" is true.  Mean
targets get the coordinate-infimum drop family attached so the drop
certificates can run.  Malformed files raise ScenarioFileError naming
the offending key; the command-line driver maps that to exit code 2.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .functionals import Functional, drop_infimum_family
from .hamming import AlphaWeights, normalize
from .space import Distribution, FiniteSpace, SetSpec
from .verify import GapTarget, MeanTarget, MedianTarget, Scenario, SetTarget, Target

__all__ = ["ScenarioFileError", "scenario_from_dict", "load_scenario"]


class ScenarioFileError(ValueError):
    """Malformed scenario file; the message names the offending key."""


_TOP_KEYS = {"space", "distribution", "alpha", "target", "grids", "seed", "caps"}


def _require(data: dict, key: str, where: str) -> Any:
    if key not in data:
        full = f"{where}.{key}" if where else key
        raise ScenarioFileError(f"missing key {full}")
    return data[key]


def _as_dict(v: Any, where: str) -> dict:
    if not isinstance(v, dict):
        raise ScenarioFileError(f"{where} must be an object")
    return v


def _as_list(v: Any, where: str) -> list:
    if not isinstance(v, list):
        raise ScenarioFileError(f"{where} must be an array")
    return v


def _as_number(v: Any, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioFileError(f"{where} must be a number")
    return float(v)


def _as_int(v: Any, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioFileError(f"{where} must be an integer")
    return v


def _as_bool(v: Any, where: str) -> bool:
    if not isinstance(v, bool):
        raise ScenarioFileError(f"{where} must be a boolean")
    return v


def _number_list(v: Any, where: str) -> list[float]:
    return [_as_number(x, f"{where}[{i}]") for i, x in enumerate(_as_list(v, where))]


def _space_from(data: dict) -> FiniteSpace:
    d = _as_dict(_require(data, "space", ""), "space")
    raw = _as_list(_require(d, "alphabet_sizes", "space"), "space.alphabet_sizes")
    sizes = [_as_int(x, f"space.alphabet_sizes[{i}]") for i, x in enumerate(raw)]
    try:
        return FiniteSpace(tuple(sizes))
    except ValueError as e:
        raise ScenarioFileError(f"space.alphabet_sizes: {e}") from None


def _distribution_from(data: dict, space: FiniteSpace) -> Distribution:
    d = _as_dict(_require(data, "distribution", ""), "distribution")
    kind = _require(d, "kind", "distribution")
    if kind == "product":
        raw = _as_list(_require(d, "pmfs", "distribution"), "distribution.pmfs")
        pmfs = [_number_list(p, f"distribution.pmfs[{i}]") for i, p in enumerate(raw)]
        try:
            dist = Distribution.product(tuple(tuple(p) for p in pmfs))
            dist.require_matches(space)
        except ValueError as e:
            raise ScenarioFileError(f"distribution.pmfs: {e}") from None
        return dist
    if kind == "joint":
        table = _number_list(
            _require(d, "joint_table", "distribution"), "distribution.joint_table"
        )
        try:
            dist = Distribution.joint(tuple(table))
            dist.require_matches(space)
        except ValueError as e:
            raise ScenarioFileError(f"distribution.joint_table: {e}") from None
        return dist
    raise ScenarioFileError(
        f'distribution.kind must be "product" or "joint", got {kind!r}'
    )


def _alpha_from(data: dict) -> AlphaWeights:
    d = _as_dict(_require(data, "alpha", ""), "alpha")
    extra = set(d) - {"weights", "normalize"}
    if extra:
        raise ScenarioFileError(f"unknown key alpha.{sorted(extra)[0]}")
    weights = _number_list(_require(d, "weights", "alpha"), "alpha.weights")
    do_norm = _as_bool(d.get("normalize", False), "alpha.normalize")
    try:
        a = AlphaWeights(tuple(weights))
    except ValueError as e:
        raise ScenarioFileError(f"alpha.weights: {e}") from None
    if do_norm:
        return normalize(a)
    if not a.normalized:
        raise ScenarioFileError(
            "alpha.weights: theorems require ||α||=1; "
            'set "normalize": true or supply a unit-norm vector'
        )
    return a


def _set_from(v: Any, where: str, space: FiniteSpace) -> SetSpec:
    sd = _as_dict(v, where)
    raw = _as_list(_require(sd, "members", where), f"{where}.members")
    if not raw:
        raise ScenarioFileError(f"{where}.members must be nonempty")
    points = []
    for i, m in enumerate(raw):
        row = _as_list(m, f"{where}.members[{i}]")
        syms = [_as_int(s, f"{where}.members[{i}][{j}]") for j, s in enumerate(row)]
        if len(syms) != space.n:
            raise ScenarioFileError(
                f"{where}.members[{i}] has {len(syms)} symbols, "
                f"space has {space.n} coordinates"
            )
        for j, s in enumerate(syms):
            if not 0 <= s < space.alphabet_sizes[j]:
                raise ScenarioFileError(
                    f"{where}.members[{i}][{j}] must be in "
                    f"[0, {space.alphabet_sizes[j] - 1}], got {s}"
                )
        points.append(tuple(syms))
    return SetSpec.from_points(points)


def _functional_from(
    v: Any,
    where: str,
    space: FiniteSpace,
    alpha: AlphaWeights,
    params: tuple[float, float] | None,
) -> Functional:
    fd = _as_dict(v, where)
    ftype = _require(fd, "type", where)
    kw: dict = {} if params is None else {"self_bounding_params": params}
    if ftype == "table":
        values = _number_list(_require(fd, "values", where), f"{where}.values")
        try:
            return Functional.from_table(space, values, **kw)
        except ValueError as e:
            raise ScenarioFileError(f"{where}.values: {e}") from None
    if ftype == "weighted_sum":
        coeffs = _number_list(
            _require(fd, "coefficients", where), f"{where}.coefficients"
        )
        if len(coeffs) != space.n:
            raise ScenarioFileError(
                f"{where}.coefficients has {len(coeffs)} entries, "
                f"space has {space.n} coordinates"
            )
        return Functional.weighted_sum(coeffs, **kw)
    if ftype == "distance_to_set":
        spec = _set_from(_require(fd, "set", where), f"{where}.set", space)
        return Functional.distance_to(alpha, spec, space, **kw)
    raise ScenarioFileError(
        f'{where}.type must be "table", "weighted_sum", or "distance_to_set", '
        f"got {ftype!r}"
    )


def _target_from(data: dict, space: FiniteSpace, alpha: AlphaWeights) -> Target:
    d = _as_dict(_require(data, "target", ""), "target")
    kind = _require(d, "kind", "target")
    if kind == "set":
        return SetTarget(_set_from(_require(d, "set", "target"), "target.set", space))
    if kind in ("median", "gap", "mean"):
        params = None
        if "params" in d:
            if kind != "mean":
                raise ScenarioFileError('target.params is only valid for "mean" targets')
            raw = _as_list(d["params"], "target.params")
            if len(raw) != 2:
                raise ScenarioFileError("target.params must be [a, b]")
            a = _as_number(raw[0], "target.params[0]")
            b = _as_number(raw[1], "target.params[1]")
            if not math.isfinite(a) or a <= 0.0:
                raise ScenarioFileError(f"target.params[0] (a) must be positive, got {a}")
            if not math.isfinite(b) or b < 0.0:
                raise ScenarioFileError(
                    f"target.params[1] (b) must be nonnegative, got {b}"
                )
            params = (a, b)
        f = _functional_from(
            _require(d, "functional", "target"), "target.functional", space, alpha, params
        )
        if kind == "median":
            return MedianTarget(f)
        if kind == "gap":
            return GapTarget(f)
        return MeanTarget(drop_infimum_family(f, space))
    raise ScenarioFileError(
        f'target.kind must be one of "set", "median", "gap", "mean", got {kind!r}'
    )


def scenario_from_dict(data: Any) -> Scenario:
    """Build a Scenario from already-parsed JSON data."""
    if not isinstance(data, dict):
        raise ScenarioFileError("scenario file must hold a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ScenarioFileError(f"unknown key {sorted(unknown)[0]!r}")
    space = _space_from(data)
    dist = _distribution_from(data, space)
    alpha = _alpha_from(data)
    if alpha.n != space.n:
        raise ScenarioFileError(
            f"alpha.weights has {alpha.n} entries, space has {space.n} coordinates"
        )
    target = _target_from(data, space, alpha)
    t_grid: tuple | None = None
    lam_grid: tuple | None = None
    if "grids" in data:
        gd = _as_dict(data["grids"], "grids")
        extra = set(gd) - {"t", "lambda"}
        if extra:
            raise ScenarioFileError(f"unknown key grids.{sorted(extra)[0]}")
        if "t" in gd:
            vals = _number_list(gd["t"], "grids.t")
            if not vals:
                raise ScenarioFileError("grids.t must be nonempty when given")
            for i, t in enumerate(vals):
                if not math.isfinite(t) or t <= 0.0:
                    raise ScenarioFileError(f"grids.t[{i}] must be positive, got {t}")
            t_grid = tuple(vals)
        if "lambda" in gd:
            vals = _number_list(gd["lambda"], "grids.lambda")
            if not vals:
                raise ScenarioFileError("grids.lambda must be nonempty when given")
            for i, lam in enumerate(vals):
                if not math.isfinite(lam) or lam < 0.0:
                    raise ScenarioFileError(
                        f"grids.lambda[{i}] must be nonnegative, got {lam}"
                    )
            lam_grid = tuple(vals)
    seed = 0
    if "seed" in data:
        seed = _as_int(data["seed"], "seed")
        if seed < 0:
            raise ScenarioFileError(f"seed must be nonnegative, got {seed}")
    cap = None
    if "caps" in data:
        cd = _as_dict(data["caps"], "caps")
        extra = set(cd) - {"enumeration"}
        if extra:
            raise ScenarioFileError(f"unknown key caps.{sorted(extra)[0]}")
        if "enumeration" in cd:
            cap = _as_int(cd["enumeration"], "caps.enumeration")
            if cap < 1:
                raise ScenarioFileError(f"caps.enumeration must be positive, got {cap}")
    try:
        return Scenario(
            space=space,
            dist=dist,
            alpha=alpha,
            target=target,
            t_grid=t_grid,
            lambda_grid=lam_grid,
            seed=seed,
            cap=cap,
        )
    except ValueError as e:
        raise ScenarioFileError(str(e)) from None


def load_scenario(path) -> Scenario:
    """Parse one scenario from a JSON file on disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise ScenarioFileError(f"invalid JSON in {path}: {e}") from None
    return scenario_from_dict(data)
