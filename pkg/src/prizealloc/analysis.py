"""Fitting and classifying observed prize tables.

Given position -> prize data from real events, estimate the parameters of
the candidate allocation shapes (geometric decay, fixed proportional
shares, flat-top/flat-tail interval pattern) and report a fit verdict at a
relative tolerance.  A classification ties the verdicts into a single tier.

Fitting a shape to a finite table establishes necessity, not proof: the
reports describe how well the data matches the shape, nothing more.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .core import (
    TAU_EQ,
    EventSet,
    PrizeAllocError,
    PrizeTable,
    standard_competition,
)
from .rules import RuleSpec, allocate
from .axioms import CHECK_SOLVER, Verdict, Witness

# Default fit tolerance: 1% relative, loose enough to absorb the rounding
# noise in published prize lists.
TAU_FIT = 0.01


class TooFewPositions(PrizeAllocError):
    pass


@dataclass(frozen=True)
class FitReport:
    """Outcome of fitting one shape family to observed prizes.

    ``max_rel_dev`` is the worst relative deviation between observed and
    reconstructed prizes; ``verdict`` is True iff it is within the
    tolerance the fit was run at (after any absolute rounding slack).
    """

    family: str
    parameters: dict[str, object]
    max_rel_dev: float
    verdict: bool
    tolerance: float
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class Classification:
    order_preserved: bool
    geometric: FitReport
    proportional: FitReport
    interval_pattern: FitReport
    scale_invariant_across_events: FitReport | None
    tier: str  # consistent-shape | locally-consistent | top-consistent | unordered


def _excess(observed: float, predicted: float, abs_slack: float) -> float:
    """Relative deviation net of an absolute rounding slack."""
    gap = max(0.0, abs(observed - predicted) - abs_slack)
    if gap == 0.0:
        return 0.0
    denom = max(abs(observed), abs(predicted))
    return gap / denom if denom else math.inf


def fit_geometric(
    table: PrizeTable, tau_fit: float = TAU_FIT, abs_slack: float = 0.0
) -> FitReport:
    """Estimate a constant decay ratio: prize(r+1) ~= lam * prize(r).

    lam-hat is the geometric mean of the consecutive ratios over the
    strictly positive prefix.  A trailing block of zeros is compatible with
    the shape only when it starts at position 2 (all-to-the-winner, lam=0);
    a later zero block is a shape violation, since lam^k > 0 for lam > 0.
    """
    prizes = table.prizes
    if len(prizes) < 2:
        raise TooFewPositions("need at least two positions to fit a decay ratio")
    warnings = []
    if any(prizes[k] < prizes[k + 1] for k in range(len(prizes) - 1)):
        warnings.append("prizes are not non-increasing")

    first_zero = next((k for k, p in enumerate(prizes) if p == 0), len(prizes))
    if any(p != 0 for p in prizes[first_zero:]):
        # zero followed by a positive prize: no decay ratio reproduces it
        return FitReport(
            family="geometric", parameters={"lam": math.nan},
            max_rel_dev=math.inf, verdict=False, tolerance=tau_fit,
            warnings=(*warnings, "zero prize above a positive prize"),
        )
    if first_zero == 0:
        # all-zero table cannot arise (endowment > 0), but guard anyway
        lam = 0.0
    elif first_zero == 1:
        lam = 0.0
    else:
        ratios = [prizes[k + 1] / prizes[k] for k in range(first_zero - 1)]
        if first_zero < len(prizes):
            # positive prefix then zeros from position >= 3: not geometric
            return FitReport(
                family="geometric", parameters={"lam": math.nan},
                max_rel_dev=math.inf, verdict=False, tolerance=tau_fit,
                warnings=(*warnings, "trailing zeros after position 2"),
            )
        if any(r == 0 for r in ratios):
            lam = 0.0
        else:
            lam = math.exp(statistics.fmean(math.log(r) for r in ratios))

    # deviation of each consecutive prize from lam times its predecessor,
    # measured relative to the predecessor (the larger of the two)
    max_dev = 0.0
    for k in range(len(prizes) - 1):
        if prizes[k] == 0:
            continue
        gap = max(0.0, abs(prizes[k + 1] - lam * prizes[k]) - abs_slack)
        max_dev = max(max_dev, gap / prizes[k])
    return FitReport(
        family="geometric", parameters={"lam": lam}, max_rel_dev=max_dev,
        verdict=max_dev <= tau_fit, tolerance=tau_fit, warnings=tuple(warnings),
    )


def fit_proportional(
    events: EventSet, tau_fit: float = TAU_FIT, abs_slack: float = 0.0
) -> FitReport:
    """Estimate fixed per-position shares of the endowment, in percent.

    The share vector averages prize/endowment per position across events.
    The verdict is true iff the shares are non-increasing and every event's
    prizes are reproduced from the shares within the tolerance.
    """
    npos = events.positions
    if npos < 1:
        raise TooFewPositions("need at least one position")
    shares = [
        statistics.fmean(ev.prizes[k] / ev.endowment for ev in events.events)
        for k in range(npos)
    ]
    warnings = []
    ordered = all(shares[k] >= shares[k + 1] for k in range(npos - 1))
    if not ordered:
        warnings.append("averaged shares are not non-increasing")
    max_dev = 0.0
    for ev in events.events:
        for k in range(npos):
            predicted = shares[k] * ev.endowment
            max_dev = max(max_dev, _excess(ev.prizes[k], predicted, abs_slack))
    return FitReport(
        family="proportional",
        parameters={"shares_percent": tuple(100.0 * s for s in shares)},
        max_rel_dev=max_dev,
        verdict=ordered and max_dev <= tau_fit,
        tolerance=tau_fit,
        warnings=tuple(warnings),
    )


def detect_interval_pattern(
    table: PrizeTable, tau_fit: float = TAU_FIT, abs_slack: float = 0.0
) -> FitReport:
    """Search for the flat-top/flat-tail shape (b, ..., b, x, a, ..., a).

    Every split position r is tried: positions before r must share a common
    high value b, positions after r a common low value a, and the
    transitional prize x must satisfy a <= x <= b.  All-equal tables match
    trivially with a = b.
    """
    prizes = table.prizes
    if len(prizes) < 2:
        raise TooFewPositions("need at least two positions to detect the pattern")
    best: FitReport | None = None
    for r in range(1, len(prizes) + 1):
        prefix = prizes[: r - 1]
        suffix = prizes[r:]
        x = prizes[r - 1]
        b = statistics.fmean(prefix) if prefix else x
        a = statistics.fmean(suffix) if suffix else x
        dev = 0.0
        for p in prefix:
            dev = max(dev, _excess(p, b, abs_slack))
        for p in suffix:
            dev = max(dev, _excess(p, a, abs_slack))
        slack = tau_fit * max(abs(a), abs(b), abs(x)) + abs_slack
        if not (a - slack <= x <= b + slack) or a > b + slack:
            continue
        report = FitReport(
            family="interval",
            parameters={"a": a, "b": b, "split": r},
            max_rel_dev=dev, verdict=dev <= tau_fit, tolerance=tau_fit,
        )
        if best is None or dev < best.max_rel_dev:
            best = report
    if best is None:
        return FitReport(
            family="interval", parameters={}, max_rel_dev=math.inf,
            verdict=False, tolerance=tau_fit,
            warnings=("no split position admits the flat-top/flat-tail shape",),
        )
    return best


def _cross_event_scale(events: EventSet, tau_fit: float, abs_slack: float) -> FitReport:
    """Do per-position shares of the endowment agree across events?"""
    npos = events.positions
    mean_shares = [
        statistics.fmean(ev.prizes[k] / ev.endowment for ev in events.events)
        for k in range(npos)
    ]
    max_dev = 0.0
    for ev in events.events:
        for k in range(npos):
            predicted = mean_shares[k] * ev.endowment
            max_dev = max(max_dev, _excess(ev.prizes[k], predicted, abs_slack))
    return FitReport(
        family="cross_event_scale",
        parameters={"shares_percent": tuple(100.0 * s for s in mean_shares)},
        max_rel_dev=max_dev, verdict=max_dev <= tau_fit, tolerance=tau_fit,
    )


def classify(
    events: EventSet, tau_fit: float = TAU_FIT, abs_slack: float = 0.0
) -> Classification:
    """Run the shape fits and assign a tier.

    Tier decision, first match wins: every event shows the interval pattern
    -> consistent-shape; geometric fit holds for every event ->
    locally-consistent; proportional fit holds -> top-consistent; otherwise
    unordered.  Prizes that increase with position force unordered.
    """
    order_preserved = all(
        all(ev.prizes[k] >= ev.prizes[k + 1] for k in range(len(ev.prizes) - 1))
        for ev in events.events
    )
    geo_reports = [fit_geometric(ev, tau_fit, abs_slack) for ev in events.events]
    geometric = _worst(geo_reports)
    proportional = fit_proportional(events, tau_fit, abs_slack)
    interval_reports = [detect_interval_pattern(ev, tau_fit, abs_slack) for ev in events.events]
    interval = _worst(interval_reports)
    scale = (
        _cross_event_scale(events, tau_fit, abs_slack)
        if len(events.events) > 1 else None
    )
    if not order_preserved:
        tier = "unordered"
    elif interval.verdict:
        tier = "consistent-shape"
    elif geometric.verdict:
        tier = "locally-consistent"
    elif proportional.verdict:
        tier = "top-consistent"
    else:
        tier = "unordered"
    return Classification(
        order_preserved=order_preserved,
        geometric=geometric,
        proportional=proportional,
        interval_pattern=interval,
        scale_invariant_across_events=scale,
        tier=tier,
    )


def _worst(reports: list[FitReport]) -> FitReport:
    """Combine per-event reports: the verdict holds only if all do."""
    worst = max(reports, key=lambda r: r.max_rel_dev)
    if all(r.verdict for r in reports) == worst.verdict:
        return worst
    return FitReport(
        family=worst.family, parameters=worst.parameters,
        max_rel_dev=worst.max_rel_dev, verdict=all(r.verdict for r in reports),
        tolerance=worst.tolerance, warnings=worst.warnings,
    )


def check_data_top_consistency(
    table: PrizeTable, rule: RuleSpec, tol: float = TAU_EQ, abs_slack: float = 0.0
) -> Verdict:
    """Does re-allocating each observed prefix sum reproduce the prefix?

    For every prefix length m, the sum of the top-m observed prizes is
    allocated by the rule to an m-competitor field; the result must match
    the observed prizes within the (relative) tolerance plus slack.
    """
    prizes = table.prizes
    count = 0
    for m in range(1, len(prizes) + 1):
        prefix_sum = sum(prizes[:m])
        comp = standard_competition(m, prefix_sum)
        vec = allocate(rule, comp, CHECK_SOLVER).by_position(comp.ranking)
        for pos in range(1, m + 1):
            count += 1
            observed = prizes[pos - 1]
            predicted = vec[pos - 1]
            if _excess(observed, predicted, abs_slack) > tol:
                witness = Witness(
                    axiom="data_top_consistency", mode=None,
                    competitions=(comp,), subset=None,
                    competitor=comp.ranking.id_at(pos), position=pos,
                    lhs=observed, rhs=predicted,
                    relation="rule on prefix sum reproduces observed prize",
                    margin=abs(observed - predicted),
                )
                return Verdict(
                    axiom="data_top_consistency", mode=None, passed=False,
                    samples_checked=count, witness=witness, tolerance=tol,
                    budget=f"{len(prizes)} prefixes of table {table.name!r}",
                )
    return Verdict(
        axiom="data_top_consistency", mode=None, passed=True,
        samples_checked=count, witness=None, tolerance=tol,
        budget=f"{len(prizes)} prefixes of table {table.name!r}",
    )
