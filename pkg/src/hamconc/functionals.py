"""Functionals on product spaces and the conditions the bounds need.

Three conditions are certified exhaustively over the space:

* Lipschitz: |f(x) - f(x')| <= d_alpha(x, x') for all pairs.
* Coordinate drop: for a family f_1, ..., f_n, with f_i defined on the
  space with coordinate i removed,
      0 <= f(x) - f_i(x with coordinate i dropped) <= alpha_i.
* Self-bounding with parameters (a, b): the drop gaps lie in [0, 1] and
  their sum is at most a * f(x) + b.

The drop condition implies the Lipschitz property: changing coordinate i
moves f by at most alpha_i because both values sit in the interval
[f_i, f_i + alpha_i] over the same dropped point, and a chain of single
coordinate changes telescopes.  ``check_*`` functions return a
:class:`Certificate` rather than a bare bool so a failing point is kept
as evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .hamming import AlphaWeights, Point, hamming_distance
from .space import Distribution, FiniteSpace, SetSpec, enumerate_outcomes

__all__ = [
    "Functional",
    "Certificate",
    "Stats",
    "check_lipschitz",
    "check_drop_condition",
    "drop_infimum_family",
    "check_self_bounding",
    "stats",
    "stats_from_law",
]

# Checks allow this much float slack on their upper comparisons.
CERT_TOL = 1e-12
# Values closer than this collapse into one atom of a reported law.
VALUE_ATOL = 1e-12


@dataclass(frozen=True)
class Functional:
    """A real-valued function of a point, with optional extra structure.

    Attributes
    ----------
    evaluator:
        Maps a Point to a real number.
    drop_family:
        Optional tuple of n callables; entry i maps a Point of dimension
        n-1 (coordinate i removed) to a real number.
    self_bounding_params:
        Optional (a, b) with a > 0, b >= 0 for the self-bounding checks.
    drop_label:
        How the drop family arose ("infimum" for the canonical one,
        "custom" for user-supplied); serialization uses it.
    """

    evaluator: Callable[[Point], float]
    drop_family: tuple[Callable[[Point], float], ...] | None = None
    self_bounding_params: tuple[float, float] | None = None
    drop_label: str | None = None

    def __post_init__(self) -> None:
        if self.self_bounding_params is not None:
            a, b = self.self_bounding_params
            if not (a > 0.0 and b >= 0.0):
                raise ValueError(
                    f"self-bounding parameters need a > 0 and b >= 0, got {a}, {b}"
                )
            object.__setattr__(self, "self_bounding_params", (float(a), float(b)))
        if self.drop_family is not None:
            object.__setattr__(self, "drop_family", tuple(self.drop_family))
            if self.drop_label is None:
                object.__setattr__(self, "drop_label", "custom")

    def value(self, point: Point) -> float:
        return float(self.evaluator(point))

    def drop_value(self, i: int, reduced: Point) -> float:
        if self.drop_family is None:
            raise ValueError("functional has no drop family")
        return float(self.drop_family[i](reduced))

    @classmethod
    def from_table(cls, space: FiniteSpace, values: Iterable[float], **kw) -> "Functional":
        """Explicit value per outcome rank."""
        table = tuple(float(v) for v in values)
        if len(table) != space.size:
            raise ValueError(
                f"table has {len(table)} values, space has {space.size} outcomes"
            )
        return cls(evaluator=lambda p: table[space.rank(p)], **kw)

    @classmethod
    def weighted_sum(cls, coefficients: Iterable[float], **kw) -> "Functional":
        """f(x) = sum of c_i * x_i over the symbol indices x_i."""
        coeffs = tuple(float(c) for c in coefficients)

        def ev(p: Point) -> float:
            if p.n != len(coeffs):
                raise ValueError(
                    f"dimension mismatch: {len(coeffs)} coefficients, point has {p.n}"
                )
            total = 0.0
            for c, s in zip(coeffs, p.symbols):
                total += c * s
            return total

        return cls(evaluator=ev, **kw)

    @classmethod
    def distance_to(
        cls, alpha: AlphaWeights, a: SetSpec, space: FiniteSpace, **kw
    ) -> "Functional":
        """f(x) = d_alpha(x, A); the canonical Lipschitz functional."""
        members = tuple(a.members(space))
        if not members:
            raise ValueError("empty set has infinite distance")

        def ev(p: Point) -> float:
            best = math.inf
            for y in members:
                d = hamming_distance(alpha, p, y)
                if d < best:
                    best = d
                    if best == 0.0:
                        break
            return best

        return cls(evaluator=ev, **kw)


@dataclass(frozen=True)
class Certificate:
    """Outcome of an exhaustive (or sampled) condition check.

    ``worst_slack`` is the largest violation margin seen: positive means
    the condition failed somewhere, nonpositive means it held with that
    much room.  When ``holds`` is false, ``witness`` is a point (or a
    pair of points, for the Lipschitz check) where re-evaluating the
    condition reproduces the violation.
    """

    condition: str
    holds: bool
    witness: Point | tuple[Point, Point] | None
    worst_slack: float


@dataclass(frozen=True)
class Stats:
    """Exact mean, the median interval, and the aggregated value law."""

    mean: float
    median_lo: float
    median_hi: float
    value_distribution: tuple[tuple[float, float], ...]


def _values_in_rank_order(f: Functional, space: FiniteSpace) -> np.ndarray:
    return np.fromiter(
        (f.value(p) for p in space.points()), dtype=np.float64, count=space.size
    )


def _symbols_matrix(space: FiniteSpace) -> np.ndarray:
    return np.indices(space.alphabet_sizes, dtype=np.int64).reshape(space.n, -1).T


def _pair_distance_matrix(alpha: AlphaWeights, symbols: np.ndarray) -> np.ndarray:
    s = symbols.shape[0]
    d = np.zeros((s, s), dtype=np.float64)
    for i, w in enumerate(alpha.weights):
        col = symbols[:, i]
        d += w * (col[:, None] != col[None, :])
    return d


def check_lipschitz(
    f: Functional,
    alpha: AlphaWeights,
    space: FiniteSpace,
    *,
    mode: str = "auto",
    max_pairs: int = 10**6,
    pair_budget: int = 10**6,
    seed: int = 0,
) -> Certificate:
    """Certify |f(x) - f(x')| <= d_alpha(x, x') over pairs of points.

    ``mode`` is "auto" (exhaustive when the ordered pair count fits in
    ``max_pairs``, else sampled), "exhaustive", or "sampled".  Identical
    points are excluded: they satisfy the condition trivially and would
    pin ``worst_slack`` at zero for every functional.

    Raises
    ------
    ValueError
        In exhaustive mode when the pair count exceeds ``max_pairs``;
        switch to sampled mode with an explicit ``pair_budget``.
    """
    if not alpha.normalized:
        raise ValueError("Lipschitz certification assumes a unit weight vector")
    if alpha.n != space.n:
        raise ValueError(f"alpha has {alpha.n} weights, space has {space.n} coordinates")
    size = space.size
    n_pairs = size * size
    if mode == "auto":
        mode = "exhaustive" if n_pairs <= max_pairs else "sampled"
    if mode == "exhaustive" and n_pairs > max_pairs:
        raise ValueError(
            f"{n_pairs} ordered pairs exceed the exhaustive limit {max_pairs}; "
            "use sampled mode with a pair budget"
        )
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"mode must be auto, exhaustive, or sampled, got {mode!r}")

    values = _values_in_rank_order(f, space)
    symbols = _symbols_matrix(space)

    if size == 1:
        return Certificate("lipschitz", True, None, -math.inf)

    if mode == "exhaustive":
        slack = np.abs(values[:, None] - values[None, :])
        slack -= _pair_distance_matrix(alpha, symbols)
        np.fill_diagonal(slack, -np.inf)
        flat = int(np.argmax(slack))
        i, j = divmod(flat, size)
        worst = float(slack[i, j])
    else:
        rng = np.random.Generator(np.random.Philox(seed))
        ii = rng.integers(0, size, pair_budget)
        jj = (ii + 1 + rng.integers(0, size - 1, pair_budget)) % size
        diffs = np.abs(values[ii] - values[jj])
        dists = np.zeros(pair_budget, dtype=np.float64)
        for k, w in enumerate(alpha.weights):
            col = symbols[:, k]
            dists += w * (col[ii] != col[jj])
        slacks = diffs - dists
        flat = int(np.argmax(slacks))
        i, j = int(ii[flat]), int(jj[flat])
        worst = float(slacks[flat])

    holds = worst <= CERT_TOL
    witness = None
    if not holds:
        witness = (space.unrank(i), space.unrank(j))
    return Certificate("lipschitz", holds, witness, worst)


def _reduced_rank_array(space: FiniteSpace, symbols: np.ndarray, i: int) -> np.ndarray:
    """Rank of each row within the space with coordinate i removed."""
    sizes = space.alphabet_sizes
    r = np.zeros(symbols.shape[0], dtype=np.int64)
    for k in range(space.n):
        if k == i:
            continue
        r = r * sizes[k] + symbols[:, k]
    return r


def _drop_gap_arrays(f: Functional, space: FiniteSpace) -> list[np.ndarray]:
    """For each coordinate i, the gap f(x) - f_i(x without i), per rank."""
    if f.drop_family is None:
        raise ValueError("functional has no drop family")
    if len(f.drop_family) != space.n:
        raise ValueError(
            f"drop family has {len(f.drop_family)} entries, space has {space.n} coordinates"
        )
    values = _values_in_rank_order(f, space)
    symbols = _symbols_matrix(space)
    gaps = []
    for i in range(space.n):
        if space.n == 1:
            reduced_points = [Point(())]
        else:
            reduced_space = FiniteSpace(
                space.alphabet_sizes[:i] + space.alphabet_sizes[i + 1 :]
            )
            reduced_points = list(reduced_space.points())
        fi = np.fromiter(
            (f.drop_value(i, p) for p in reduced_points),
            dtype=np.float64,
            count=len(reduced_points),
        )
        gaps.append(values - fi[_reduced_rank_array(space, symbols, i)])
    return gaps


def check_drop_condition(
    f: Functional, alpha: AlphaWeights, space: FiniteSpace
) -> Certificate:
    """Certify 0 <= f(x) - f_i(x without i) <= alpha_i everywhere.

    The lower comparison is exact; the upper one allows CERT_TOL of
    float slack.  ``worst_slack`` is the largest of -gap and
    gap - alpha_i over all points and coordinates.
    """
    if alpha.n != space.n:
        raise ValueError(f"alpha has {alpha.n} weights, space has {space.n} coordinates")
    gaps = _drop_gap_arrays(f, space)
    worst = -math.inf
    witness_rank: int | None = None
    holds = True
    for i, g in enumerate(gaps):
        viol = np.maximum(-g, g - alpha.weights[i])
        k = int(np.argmax(viol))
        if float(viol[k]) > worst:
            worst = float(viol[k])
        bad = (g < 0.0) | (g > alpha.weights[i] + CERT_TOL)
        if bad.any():
            holds = False
            r = int(np.argmax(bad))
            if witness_rank is None:
                witness_rank = r
    witness = space.unrank(witness_rank) if witness_rank is not None else None
    return Certificate("drop", holds, witness, worst)


def drop_infimum_family(f: Functional, space: FiniteSpace) -> Functional:
    """Attach the canonical drop family f_i = min over symbols at i.

    For every x this family satisfies f(x) - f_i >= 0 exactly, because
    the minimum ranges over f(x) itself; the upper drop comparison then
    measures the oscillation of f along coordinate i.
    """
    sizes = space.alphabet_sizes

    def make(i: int) -> Callable[[Point], float]:
        def fi(reduced: Point) -> float:
            return min(f.value(reduced.insert(i, s)) for s in range(sizes[i]))

        return fi

    return replace(
        f, drop_family=tuple(make(i) for i in range(space.n)), drop_label="infimum"
    )


def check_self_bounding(f: Functional, space: FiniteSpace) -> Certificate:
    """Certify the (a, b)-self-bounding conditions for f's drop family.

    Both conditions are checked at every point: each gap lies in
    [0, 1 + CERT_TOL], and the gap sum is at most a*f(x) + b + CERT_TOL.
    ``worst_slack`` reports the sum condition's margin, max over points
    of (sum of gaps - a*f(x) - b), as that is the binding one in use.
    """
    if f.self_bounding_params is None:
        raise ValueError("functional has no self-bounding parameters")
    a, b = f.self_bounding_params
    gaps = _drop_gap_arrays(f, space)
    values = _values_in_rank_order(f, space)
    total = np.zeros(space.size, dtype=np.float64)
    holds = True
    witness_rank: int | None = None
    for g in gaps:
        bad = (g < 0.0) | (g > 1.0 + CERT_TOL)
        if bad.any():
            holds = False
            if witness_rank is None:
                witness_rank = int(np.argmax(bad))
        total += g
    sum_slack = total - a * values - b
    worst = float(np.max(sum_slack))
    bad_sum = sum_slack > CERT_TOL
    if bad_sum.any():
        holds = False
        if witness_rank is None:
            witness_rank = int(np.argmax(bad_sum))
    witness = space.unrank(witness_rank) if witness_rank is not None else None
    return Certificate("self_bounding", holds, witness, worst)


def stats_from_law(
    values: Sequence[float] | np.ndarray, probs: Sequence[float] | np.ndarray
) -> Stats:
    """Exact stats of a discrete law given parallel value/probability arrays.

    Medians come from exact float comparisons on the raw values, so the
    median interval endpoints really are medians of the stored law:
    median_lo is the least value v with P(f <= v) >= 1/2, median_hi the
    greatest with P(f >= v) >= 1/2.  The reported value_distribution
    additionally collapses values within VALUE_ATOL of each other, which
    absorbs float noise between equal-in-exact-arithmetic outcomes.
    """
    v = np.asarray(values, dtype=np.float64)
    p = np.asarray(probs, dtype=np.float64)
    if v.shape != p.shape or v.ndim != 1 or v.size == 0:
        raise ValueError("values and probs must be matching nonempty 1-d arrays")
    total = math.fsum(map(float, p))
    if total <= 0.0:
        raise ValueError("law has no mass")
    mean = math.fsum(float(x) * float(q) for x, q in zip(v, p)) / total

    uniq, inverse = np.unique(v, return_inverse=True)
    mass = np.bincount(inverse, weights=p, minlength=uniq.size)
    cum = np.cumsum(mass)
    half = 0.5 * total - 1e-12
    median_lo = float(uniq[int(np.argmax(cum >= half))])
    suffix = total - cum + mass
    median_hi = float(uniq[uniq.size - 1 - int(np.argmax(suffix[::-1] >= half))])

    atoms: list[tuple[float, float]] = []
    group_value: float | None = None
    group_mass: list[float] = []
    prev = None
    for value, m in zip(uniq, mass):
        value = float(value)
        if m == 0.0:
            continue
        if prev is not None and value - prev <= VALUE_ATOL:
            group_mass.append(float(m))
        else:
            if group_value is not None:
                atoms.append((group_value, math.fsum(group_mass) / total))
            group_value = value
            group_mass = [float(m)]
        prev = value
    if group_value is not None:
        atoms.append((group_value, math.fsum(group_mass) / total))
    return Stats(mean, median_lo, median_hi, tuple(atoms))


def stats(
    f: Functional, space: FiniteSpace, dist: Distribution, cap: int | None = None
) -> Stats:
    """Exact mean, median interval, and value law of f(X) by enumeration."""
    values: list[float] = []
    probs: list[float] = []
    for point, prob in enumerate_outcomes(space, dist, cap):
        values.append(f.value(point))
        probs.append(prob)
    return stats_from_law(values, probs)
