"""Allocation rule families for rank-order competitions.

Implemented families, all behind the single dispatch ``allocate``:

* equal division and winner-takes-all,
* winner-takes-surplus with cap ``a``,
* interval rules (equal division outside designated average-endowment
  intervals; inside an interval the top positions saturate at the upper
  endpoint, the tail holds at the lower endpoint, one position transitions),
* single-parametric rules (prizes x, f(x), f(f(x)), ... with x solved so
  the total equals the endowment),
* parametric rules (prizes f_1(x), ..., f_n(x), f_1 the identity),
* geometric rules (prize at position r proportional to lambda^(r-1)),
* proportional rules (prize at position r proportional to a fixed
  non-increasing weight), and
* a handful of named counterexample rules that each violate exactly one
  of the checked axioms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .core import Allocation, Competition, PrizeAllocError
from .solver import DEFAULT_SOLVER, SolverConfig, iterate_f, interval_locate, solve_level


class InvalidRuleParams(PrizeAllocError):
    pass


class UnknownCounterexample(PrizeAllocError):
    pass


# ---------------------------------------------------------------------------
# Monotone generator functions


@dataclass(frozen=True)
class MonotoneFn:
    """A continuous, non-decreasing function with 0 <= f(x) <= x on x >= 0.

    Either a named builtin (identity, zero, linear, shift, cap) or a
    piecewise-linear curve given by breakpoints.  Piecewise curves start at
    (0, 0) and extrapolate the final segment's slope, which must lie in
    [0, 1] so that f(x) <= x keeps holding beyond the last breakpoint.
    """

    kind: str
    param: float = 0.0
    points: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "linear":
            if not 0.0 <= self.param <= 1.0:
                raise InvalidRuleParams(f"linear slope must be in [0, 1], got {self.param}")
        elif self.kind in ("shift", "cap"):
            if self.param < 0:
                raise InvalidRuleParams(f"{self.kind} parameter must be >= 0, got {self.param}")
        elif self.kind == "pwl":
            self._validate_pwl()
        elif self.kind not in ("identity", "zero"):
            raise InvalidRuleParams(f"unknown function kind: {self.kind!r}")

    def _validate_pwl(self) -> None:
        pts = self.points
        if not pts:
            raise InvalidRuleParams("piecewise curve needs at least one breakpoint")
        if pts[0] != (0.0, 0.0):
            raise InvalidRuleParams(f"piecewise curve must start at (0, 0), got {pts[0]}")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x1 <= x0:
                raise InvalidRuleParams("breakpoint x-coordinates must be strictly increasing")
            if y1 < y0:
                raise InvalidRuleParams("breakpoint values must be non-decreasing")
        for x, y in pts:
            if not 0.0 <= y <= x:
                raise InvalidRuleParams(f"need 0 <= f(x) <= x at breakpoints, violated at {(x, y)}")
        if len(pts) >= 2:
            (x0, y0), (x1, y1) = pts[-2], pts[-1]
            slope = (y1 - y0) / (x1 - x0)
        else:
            slope = 0.0
        if not 0.0 <= slope <= 1.0:
            raise InvalidRuleParams(f"final segment slope must be in [0, 1], got {slope}")

    # -- constructors

    @staticmethod
    def identity() -> "MonotoneFn":
        return MonotoneFn("identity")

    @staticmethod
    def zero() -> "MonotoneFn":
        return MonotoneFn("zero")

    @staticmethod
    def linear(slope: float) -> "MonotoneFn":
        return MonotoneFn("linear", param=slope)

    @staticmethod
    def shift(c: float) -> "MonotoneFn":
        """max(0, x - c)."""
        return MonotoneFn("shift", param=c)

    @staticmethod
    def cap(a: float) -> "MonotoneFn":
        """min(a, x)."""
        return MonotoneFn("cap", param=a)

    @staticmethod
    def piecewise(points: Sequence[tuple[float, float]]) -> "MonotoneFn":
        return MonotoneFn("pwl", points=tuple((float(x), float(y)) for x, y in points))

    def __call__(self, x: float) -> float:
        if self.kind == "identity":
            return x
        if self.kind == "zero":
            return 0.0
        if self.kind == "linear":
            return self.param * x
        if self.kind == "shift":
            return max(0.0, x - self.param)
        if self.kind == "cap":
            return min(self.param, x)
        return self._eval_pwl(x)

    def _eval_pwl(self, x: float) -> float:
        pts = self.points
        if len(pts) == 1 or x <= pts[0][0]:
            return pts[0][1] if x >= pts[0][0] else 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        (x0, y0), (x1, y1) = pts[-2], pts[-1]
        slope = (y1 - y0) / (x1 - x0)
        return y1 + slope * (x - pts[-1][0])


def pointwise_leq(f_lo: MonotoneFn, f_hi: MonotoneFn, xs: Sequence[float]) -> bool:
    """Check f_lo(x) <= f_hi(x) on a sample of points (breakpoint-level check)."""
    return all(f_lo(x) <= f_hi(x) + 1e-12 for x in xs)


# ---------------------------------------------------------------------------
# Interval lists


@dataclass(frozen=True)
class IntervalList:
    """Disjoint open intervals (a_k, b_k), sorted ascending.

    Endpoints may coincide (b_k = a_{k+1}); only the last upper endpoint may
    be infinite.  An empty list degenerates the interval rule to equal
    division.
    """

    pairs: tuple[tuple[float, float], ...] = ()

    def __post_init__(self) -> None:
        for a, b in self.pairs:
            if a < 0:
                raise InvalidRuleParams(f"interval lower endpoint must be >= 0, got {a}")
            if not a < b:
                raise InvalidRuleParams(f"need a < b in each interval, got ({a}, {b})")
        for (a0, b0), (a1, b1) in zip(self.pairs, self.pairs[1:]):
            if b0 == math.inf or b0 > a1:
                raise InvalidRuleParams(
                    f"intervals must be disjoint and sorted: ({a0}, {b0}) vs ({a1}, {b1})"
                )

    @staticmethod
    def of(*pairs: tuple[float, float]) -> "IntervalList":
        return IntervalList(tuple((float(a), float(b)) for a, b in pairs))


def unit_steps(count: int) -> IntervalList:
    """Intervals (k-1, k) for k = 1..count: dollar-step allocation."""
    return IntervalList.of(*((k - 1.0, float(k)) for k in range(1, count + 1)))


# ---------------------------------------------------------------------------
# Rule specifications


@dataclass(frozen=True)
class ED:
    pass


@dataclass(frozen=True)
class WTA:
    pass


@dataclass(frozen=True)
class WTS:
    """Everyone receives cap ``a`` once E >= n*a, the winner also takes the
    surplus; below n*a the endowment is divided equally."""

    a: float

    def __post_init__(self) -> None:
        if self.a < 0:
            raise InvalidRuleParams(f"WTS cap must be >= 0 or inf, got {self.a}")


@dataclass(frozen=True)
class Interval:
    intervals: IntervalList


@dataclass(frozen=True)
class SingleParametric:
    f: MonotoneFn


@dataclass(frozen=True)
class Parametric:
    """Explicit prefix of level functions, lazily extensible by a generator.

    ``extend(k)`` supplies the function for position k beyond the prefix.
    f_1 must be the identity and f_{k+1} <= f_k pointwise.
    """

    fs: tuple[MonotoneFn, ...] = ()
    extend: Callable[[int], MonotoneFn] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        if not self.fs and self.extend is None:
            raise InvalidRuleParams("parametric rule needs level functions")
        if self.fs and self.fs[0] != MonotoneFn.identity():
            raise InvalidRuleParams("first level function must be the identity")
        xs = _order_check_points(self.fs)
        for f_hi, f_lo in zip(self.fs, self.fs[1:]):
            if not pointwise_leq(f_lo, f_hi, xs):
                raise InvalidRuleParams("level functions must be pointwise non-increasing in k")

    def fn(self, k: int) -> MonotoneFn:
        if k <= len(self.fs):
            return self.fs[k - 1]
        if self.extend is not None:
            return self.extend(k)
        raise InvalidRuleParams(
            f"rule defines {len(self.fs)} level functions, position {k} requested"
        )


def _order_check_points(fs: Sequence[MonotoneFn]) -> list[float]:
    xs = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0}
    for f in fs:
        for x, _ in f.points:
            xs.add(x)
        if f.kind in ("shift", "cap") and math.isfinite(f.param):
            xs.add(f.param)
    return sorted(xs)


@dataclass(frozen=True)
class Geometric:
    """Prize at position r is lambda^(r-1) / sum_k lambda^(k-1) times E.

    lambda > 1 breaks order preservation and is admitted only behind the
    explicit ``allow_above_one`` flag (used to exhibit that counterexample).
    """

    lam: float
    allow_above_one: bool = False

    def __post_init__(self) -> None:
        if self.lam < 0:
            raise InvalidRuleParams(f"geometric ratio must be >= 0, got {self.lam}")
        if self.lam > 1 and not self.allow_above_one:
            raise InvalidRuleParams(
                f"geometric ratio must be in [0, 1], got {self.lam} "
                "(pass allow_above_one=True to override)"
            )


@dataclass(frozen=True)
class Proportional:
    """Prize at position r proportional to the fixed weight lams[r-1]."""

    lams: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.lams or self.lams[0] <= 0:
            raise InvalidRuleParams("first proportional weight must be > 0")
        for lo, hi in zip(self.lams[1:], self.lams):
            if lo < 0 or lo > hi:
                raise InvalidRuleParams(
                    f"proportional weights must be non-negative and non-increasing: {self.lams}"
                )


COUNTEREXAMPLE_NAMES = (
    "lowest-takes-all",
    "threshold-switch",
    "pair-favoritism",
    "late-dollar",
    "ed2wta3",
)


@dataclass(frozen=True)
class Counterexample:
    """Named rules that each violate exactly one checked axiom.

    pair-favoritism requires the two designated competitor ids i and j.
    """

    name: str
    i: str | None = None
    j: str | None = None

    def __post_init__(self) -> None:
        if self.name not in COUNTEREXAMPLE_NAMES:
            raise UnknownCounterexample(
                f"unknown counterexample rule {self.name!r}; known: {COUNTEREXAMPLE_NAMES}"
            )
        if self.name == "pair-favoritism" and (self.i is None or self.j is None):
            raise InvalidRuleParams("pair-favoritism needs designated ids i and j")


RuleSpec = Union[
    ED, WTA, WTS, Interval, SingleParametric, Parametric, Geometric, Proportional,
    Counterexample,
]


def arithmetic_rule() -> SingleParametric:
    """Single-parametric rule with f(x) = max(0, x - 1)."""
    return SingleParametric(MonotoneFn.shift(1.0))


def _hyperarithmetic_fn(k: int) -> MonotoneFn:
    return MonotoneFn.identity() if k == 1 else MonotoneFn.shift(float(k))


def hyperarithmetic_rule() -> Parametric:
    """Parametric rule with f_1(x) = x and f_k(x) = max(0, x - k) for k >= 2."""
    return Parametric(fs=(MonotoneFn.identity(),), extend=_hyperarithmetic_fn,
                      name="hyperarithmetic")


def step_rule(max_dollars: int = 64) -> Interval:
    """Interval rule with intervals (k-1, k): prizes grow one dollar at a time."""
    return Interval(unit_steps(max_dollars))


# ---------------------------------------------------------------------------
# Allocation


def _wrap(competition: Competition, by_position: Sequence[float]) -> Allocation:
    prizes = {
        competition.ranking.id_at(r): float(v)
        for r, v in enumerate(by_position, start=1)
    }
    return Allocation(prizes=prizes)


def allocate_ed(competition: Competition) -> Allocation:
    n, e = competition.n, competition.endowment
    return _wrap(competition, [e / n] * n)


def allocate_wta(competition: Competition) -> Allocation:
    n, e = competition.n, competition.endowment
    return _wrap(competition, [e] + [0.0] * (n - 1))


def allocate_wts(a: float, competition: Competition) -> Allocation:
    if a < 0:
        raise InvalidRuleParams(f"WTS cap must be >= 0, got {a}")
    n, e = competition.n, competition.endowment
    if math.isfinite(a) and e >= n * a:
        return _wrap(competition, [e - (n - 1) * a] + [a] * (n - 1))
    return allocate_ed(competition)


def _mul(count: int, value: float) -> float:
    # 0 * inf must read as 0 in the interval formula bounds.
    return 0.0 if count == 0 else count * value


def _interval_prize(n: int, e: float, rank: int, a: float, b: float) -> float:
    lo1, hi1 = n * a, (n - rank + 1) * a + _mul(rank - 1, b)
    if lo1 <= e <= hi1:
        return a
    hi2 = _mul(n - rank, a) + _mul(rank, b)
    if hi1 <= e <= hi2:
        return e - (n - rank) * a - _mul(rank - 1, b)
    if hi2 <= e <= _mul(n, b):
        return b
    return e / n


def allocate_interval(intervals: IntervalList, competition: Competition) -> Allocation:
    n, e = competition.n, competition.endowment
    idx = interval_locate(intervals, e / n)
    if idx is None:
        return allocate_ed(competition)
    a, b = intervals.pairs[idx]
    return _wrap(competition, [_interval_prize(n, e, r, a, b) for r in range(1, n + 1)])


def allocate_single_parametric(
    f: MonotoneFn, competition: Competition, cfg: SolverConfig = DEFAULT_SOLVER
) -> Allocation:
    n, e = competition.n, competition.endowment
    levels = [lambda x, k=k: iterate_f(f, x, k) for k in range(n)]
    x = solve_level(levels, n, e, cfg)
    prizes = [x]
    for _ in range(n - 1):
        prizes.append(f(prizes[-1]))
    return _wrap(competition, prizes)


def allocate_parametric(
    rule: Parametric, competition: Competition, cfg: SolverConfig = DEFAULT_SOLVER
) -> Allocation:
    n, e = competition.n, competition.endowment
    fns = [rule.fn(k) for k in range(1, n + 1)]
    if fns[0] != MonotoneFn.identity():
        raise InvalidRuleParams("first level function must be the identity")
    x = solve_level(fns, n, e, cfg)
    return _wrap(competition, [fn(x) for fn in fns])


def allocate_geometric(
    lam: float, competition: Competition, allow_above_one: bool = False
) -> Allocation:
    if lam < 0 or (lam > 1 and not allow_above_one):
        raise InvalidRuleParams(f"geometric ratio must be in [0, 1], got {lam}")
    n, e = competition.n, competition.endowment
    weights = [1.0]
    for _ in range(n - 1):
        weights.append(weights[-1] * lam)
    total = sum(weights)
    return _wrap(competition, [w / total * e for w in weights])


def allocate_proportional(lams: Sequence[float], competition: Competition) -> Allocation:
    n, e = competition.n, competition.endowment
    if len(lams) < n:
        raise InvalidRuleParams(
            f"proportional rule defines {len(lams)} weights, competition has {n} competitors"
        )
    weights = list(lams[:n])
    total = sum(weights)
    return _wrap(competition, [w / total * e for w in weights])


def _late_dollar_vector(n: int, e: float) -> list[float]:
    """One continuous dollar to position 1; then positions 2,1; then 3,2,1;
    up to n..1; afterwards repeated rounds lowest-to-highest."""
    v = [0.0] * n
    rem = e
    # triangular phase: round r hands one dollar each to positions r..1
    for r in range(1, n + 1):
        for pos in range(r, 0, -1):
            amt = min(1.0, rem)
            v[pos - 1] += amt
            rem -= amt
            if rem <= 0:
                return v
    # whole repeated rounds can be batched: each adds one dollar per position
    rounds = int(rem // n)
    if rounds:
        v = [p + rounds for p in v]
        rem -= rounds * n
    for pos in range(n, 0, -1):
        amt = min(1.0, rem)
        v[pos - 1] += amt
        rem -= amt
        if rem <= 0:
            break
    return v


def allocate_counterexample(rule: Counterexample, competition: Competition) -> Allocation:
    n, e = competition.n, competition.endowment
    name = rule.name
    if name == "lowest-takes-all":
        return _wrap(competition, [0.0] * (n - 1) + [e])
    if name == "threshold-switch":
        return allocate_ed(competition) if e <= 1.0 else allocate_wta(competition)
    if name == "ed2wta3":
        return allocate_ed(competition) if n <= 2 else allocate_wta(competition)
    if name == "late-dollar":
        return _wrap(competition, _late_dollar_vector(n, e))
    # pair-favoritism
    ranking = competition.ranking
    ids = ranking.competitors
    if (
        rule.i in ids
        and rule.j in ids
        and ranking.position_of(rule.i) == 1
        and ranking.position_of(rule.j) == 2
    ):
        prizes = {cid: 0.0 for cid in ids}
        prizes[rule.i] = e / 2.0
        prizes[rule.j] = e / 2.0
        return Allocation(prizes=prizes)
    return allocate_wta(competition)


def allocate(
    rule: RuleSpec, competition: Competition, cfg: SolverConfig = DEFAULT_SOLVER
) -> Allocation:
    """Apply any rule to a competition. Deterministic; sums to E within tolerance."""
    if isinstance(rule, ED):
        return allocate_ed(competition)
    if isinstance(rule, WTA):
        return allocate_wta(competition)
    if isinstance(rule, WTS):
        return allocate_wts(rule.a, competition)
    if isinstance(rule, Interval):
        return allocate_interval(rule.intervals, competition)
    if isinstance(rule, SingleParametric):
        return allocate_single_parametric(rule.f, competition, cfg)
    if isinstance(rule, Parametric):
        return allocate_parametric(rule, competition, cfg)
    if isinstance(rule, Geometric):
        return allocate_geometric(rule.lam, competition, rule.allow_above_one)
    if isinstance(rule, Proportional):
        return allocate_proportional(rule.lams, competition)
    if isinstance(rule, Counterexample):
        return allocate_counterexample(rule, competition)
    raise InvalidRuleParams(f"unknown rule spec: {rule!r}")


def describe(rule: RuleSpec) -> str:
    """Render a rule in the CLI mini-language (inverse of cli.parse_rule_spec)."""
    if isinstance(rule, ED):
        return "ed"
    if isinstance(rule, WTA):
        return "wta"
    if isinstance(rule, WTS):
        return f"wts:a={'inf' if math.isinf(rule.a) else _fmt(rule.a)}"
    if isinstance(rule, Interval):
        parts = ";".join(
            f"[{_fmt(a)},{'inf' if math.isinf(b) else _fmt(b)}]"
            for a, b in rule.intervals.pairs
        )
        return f"interval:{parts}"
    if isinstance(rule, SingleParametric):
        f = rule.f
        if f == MonotoneFn.shift(1.0):
            return "sp:arithmetic"
        if f.kind == "linear":
            return f"sp:linear={_fmt(f.param)}"
        if f.kind == "cap":
            return f"sp:cap={_fmt(f.param)}"
        if f.kind == "pwl":
            return "sp:pwl=" + ",".join(f"{_fmt(x)}:{_fmt(y)}" for x, y in f.points)
        if f.kind == "identity":
            return "sp:linear=1"
        return "sp:linear=0"
    if isinstance(rule, Parametric):
        return f"param:{rule.name or 'custom'}"
    if isinstance(rule, Geometric):
        return f"geometric:lambda={_fmt(rule.lam)}"
    if isinstance(rule, Proportional):
        return "proportional:" + ",".join(_fmt(v) for v in rule.lams)
    if isinstance(rule, Counterexample):
        if rule.name == "pair-favoritism":
            return f"cx:pair-favoritism={rule.i},{rule.j}"
        return f"cx:{rule.name}"
    raise InvalidRuleParams(f"unknown rule spec: {rule!r}")


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return s if s else "0"
