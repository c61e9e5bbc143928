"""Empirical axiom checkers.

Each checker takes a rule and a sampling budget and returns a Verdict:
pass-with-count or fail-with-witness.  The checkers are falsifiers, not
provers — the axioms quantify over infinite domains, so Pass only means
"no violation within the budget", and every verdict states the budget.

Samples are enumerated in a deterministic ascending order (field size,
identity arrangement, endowment, subset size), so the first witness found
is already small; a snapping pass then moves endowments onto round grid
points while the violation persists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .core import (
    TAU_EQ,
    Competition,
    PrizeAllocError,
    Ranking,
    subranking,
)
from .rules import Counterexample, RuleSpec, allocate, describe
from .solver import SolverConfig

# Tighter residual than the allocation default, so solver error stays well
# below the comparison tolerance in consistency identities.
CHECK_SOLVER = SolverConfig(residual_tol=1e-12, max_iter=300)

# Below this endowment gap, strict-increase comparisons are numerically
# meaningless and the pair is skipped.
MIN_STRICT_GAP = 1e-6


class PreconditionNotChecked(PrizeAllocError):
    pass


@dataclass(frozen=True)
class SampleBudget:
    """Sampling budget: competitor counts 1..max_n and an endowment grid."""

    max_n: int = 5
    endowment_grid: tuple[float, ...] = ()
    rng_seed: int = 0
    pair_only: bool = False

    def __post_init__(self) -> None:
        if self.max_n < 2:
            raise ValueError("max_n must be >= 2")
        if not self.endowment_grid:
            object.__setattr__(self, "endowment_grid", _default_grid(self.rng_seed))
        if any(e < 0 for e in self.endowment_grid):
            raise ValueError("endowment grid must be non-negative")

    def sorted_grid(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.endowment_grid)))

    def scan_grid(self) -> tuple[float, ...]:
        """Grid in scan order: round quarter-dollar values first, so the
        first witness found lands on a readable endowment."""
        values = sorted(set(self.endowment_grid))
        round_vals = [e for e in values if abs(e * 4 - round(e * 4)) < 1e-12]
        rest = [e for e in values if abs(e * 4 - round(e * 4)) >= 1e-12]
        return tuple(round_vals + rest)

    def describe(self) -> str:
        return (
            f"max_n={self.max_n}, {len(self.endowment_grid)} grid endowments, "
            f"seed={self.rng_seed}"
        )


def _default_grid(seed: int) -> tuple[float, ...]:
    uniform = [k * 0.25 for k in range(41)]
    rng = random.Random(seed)
    draws = [rng.uniform(0.0, 10.0) for _ in range(50)]
    return tuple(uniform + draws)


def _pair_values(grid: Sequence[float], limit: int = 48) -> list[float]:
    """Subsample for quadratic pair scans, keeping the scan affordable."""
    values = sorted(set(grid))
    if len(values) <= limit:
        return values
    stride = (len(values) - 1) / (limit - 1)
    return [values[round(i * stride)] for i in range(limit)]


@dataclass(frozen=True)
class Witness:
    """A concrete, reproducible axiom violation.

    ``competitions`` holds the one or two competitions involved; ``subset``
    the reduced-competition ids for consistency checks.  ``lhs`` and ``rhs``
    are the two sides of the violated relation, ``margin`` the violation
    magnitude (for equality- and weak-inequality violations it exceeds the
    tolerance; for strict-inequality violations it is the missing gap).
    """

    axiom: str
    mode: str | None
    competitions: tuple[Competition, ...]
    subset: tuple[str, ...] | None
    competitor: str | None
    position: int | None
    lhs: float
    rhs: float
    relation: str
    margin: float


@dataclass(frozen=True)
class Verdict:
    axiom: str
    mode: str | None
    passed: bool
    samples_checked: int
    witness: Witness | None
    tolerance: float
    budget: str

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"


def _verdict(axiom, mode, budget, tol, count, witness=None) -> Verdict:
    return Verdict(
        axiom=axiom,
        mode=mode,
        passed=witness is None,
        samples_checked=count,
        witness=witness,
        tolerance=tol,
        budget=budget.describe(),
    )


# ---------------------------------------------------------------------------
# Sampling helpers


def _designated_pair(rule: RuleSpec) -> tuple[str, str] | None:
    if isinstance(rule, Counterexample) and rule.name == "pair-favoritism":
        return (rule.i, rule.j)
    return None


def _arrangements(rule: RuleSpec, n: int) -> list[Ranking]:
    """Identity arrangements to sample: a generic one, plus placements of a
    rule's designated competitors at varying position pairs."""
    rankings = [Ranking(tuple(f"c{k}" for k in range(1, n + 1)))]
    pair = _designated_pair(rule)
    if pair and n >= 2:
        i, j = pair
        fillers = [f"z{k}" for k in range(1, n + 1)]
        for pi in range(1, n + 1):
            for pj in range(1, n + 1):
                if pi == pj:
                    continue
                ids = fillers[:]
                ids[pi - 1] = i
                ids[pj - 1] = j
                rankings.append(Ranking(tuple(ids)))
    return rankings


def _alloc_cache(rule: RuleSpec) -> Callable[[Ranking, float], tuple[float, ...]]:
    cache: dict[tuple, tuple[float, ...]] = {}
    def get(ranking: Ranking, endowment: float) -> tuple[float, ...]:
        key = (ranking.by_position, endowment)
        if key not in cache:
            comp = Competition(ranking=ranking, endowment=endowment)
            cache[key] = allocate(rule, comp, CHECK_SOLVER).by_position(ranking)
        return cache[key]
    return get


def _snap_candidates(e: float) -> list[float]:
    """Round grid points to try in place of a raw endowment, nearest first."""
    snapped = round(e * 4) / 4
    out = []
    for cand in (snapped, round(e), round(e * 2) / 2):
        if cand >= 0 and abs(cand - e) > 1e-12 and cand not in out:
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Anonymity


def check_anonymity(rule: RuleSpec, budget: SampleBudget, tol: float = TAU_EQ) -> Verdict:
    count = 0
    for n in range(1, budget.max_n + 1):
        rankings = _arrangements(rule, n)
        if len(rankings) == 1:
            # generic rules still get one relabelled arrangement to compare
            rankings.append(Ranking(tuple(f"d{k}" for k in range(n, 0, -1))))
        for e in budget.scan_grid():
            base = None
            for ranking in rankings:
                comp = Competition(ranking=ranking, endowment=e)
                vec = allocate(rule, comp, CHECK_SOLVER).by_position(ranking)
                if base is None:
                    base_comp, base = comp, vec
                    continue
                count += 1
                for pos in range(1, n + 1):
                    if abs(vec[pos - 1] - base[pos - 1]) > tol:
                        w = Witness(
                            axiom="anonymity", mode=None,
                            competitions=(base_comp, comp), subset=None,
                            competitor=comp.ranking.id_at(pos), position=pos,
                            lhs=base[pos - 1], rhs=vec[pos - 1],
                            relation="equal prize for equal position",
                            margin=abs(vec[pos - 1] - base[pos - 1]),
                        )
                        return _verdict("anonymity", None, budget, tol, count, w)
    return _verdict("anonymity", None, budget, tol, count)


# ---------------------------------------------------------------------------
# Order preservation


ORDER_MODES = ("weak", "winner_loser_strict", "strict")


def check_order_preservation(
    rule: RuleSpec, budget: SampleBudget, mode: str = "weak", tol: float = TAU_EQ
) -> Verdict:
    if mode not in ORDER_MODES:
        raise ValueError(f"unknown order-preservation mode: {mode}")
    count = 0

    def violation(ranking: Ranking, e: float) -> Witness | None:
        comp = Competition(ranking=ranking, endowment=e)
        vec = allocate(rule, comp, CHECK_SOLVER).by_position(ranking)
        n = ranking.n

        def make(hi: int, lo: int, relation: str, margin: float) -> Witness:
            return Witness(
                axiom="order_preservation", mode=mode, competitions=(comp,),
                subset=None, competitor=ranking.id_at(hi), position=hi,
                lhs=vec[hi - 1], rhs=vec[lo - 1], relation=relation, margin=margin,
            )

        for r in range(1, n):
            if vec[r - 1] < vec[r] - tol:
                return make(r, r + 1, "prize(r) >= prize(r+1)", vec[r] - vec[r - 1])
        if e > 0 and mode == "winner_loser_strict" and n >= 2:
            if vec[0] <= vec[n - 1] + tol:
                return make(1, n, "prize(1) > prize(n) for E > 0",
                            vec[n - 1] - vec[0] + tol)
        if e > 0 and mode == "strict":
            for r in range(1, n):
                if vec[r - 1] <= vec[r] + tol:
                    return make(r, r + 1, "prize(r) > prize(r+1) for E > 0",
                                vec[r] - vec[r - 1] + tol)
        return None

    for n in range(2, budget.max_n + 1):
        for ranking in _arrangements(rule, n):
            for e in budget.scan_grid():
                count += 1
                w = violation(ranking, e)
                if w is not None:
                    w = _snap_single(w, lambda e2: violation(ranking, e2))
                    return _verdict("order_preservation", mode, budget, tol, count, w)
    return _verdict("order_preservation", mode, budget, tol, count)


def _snap_single(w: Witness, recheck: Callable[[float], Witness | None]) -> Witness:
    """Try to move a one-competition witness onto a round endowment."""
    e = w.competitions[0].endowment
    for cand in _snap_candidates(e):
        w2 = recheck(cand)
        if w2 is not None:
            return w2
    return w


# ---------------------------------------------------------------------------
# Endowment monotonicity and the Lipschitz consequence


MONOTONICITY_MODES = ("weak", "winner_strict", "strict")


def check_endowment_monotonicity(
    rule: RuleSpec, budget: SampleBudget, mode: str = "weak", tol: float = TAU_EQ
) -> Verdict:
    if mode not in MONOTONICITY_MODES:
        raise ValueError(f"unknown endowment-monotonicity mode: {mode}")
    count = 0
    grid = budget.sorted_grid()

    for n in range(1, budget.max_n + 1):
        for ranking in _arrangements(rule, n):
            get = _alloc_cache(rule)
            for a_idx in range(len(grid)):
                for b_idx in range(a_idx + 1, len(grid)):
                    e_lo, e_hi = grid[a_idx], grid[b_idx]
                    count += 1
                    w = _monotonicity_violation(rule, ranking, e_lo, e_hi, mode, tol, get)
                    if w is not None:
                        w = _snap_pair(
                            w, lambda lo, hi: _monotonicity_violation(
                                rule, ranking, lo, hi, mode, tol, _alloc_cache(rule))
                        )
                        return _verdict("endowment_monotonicity", mode, budget, tol, count, w)
    return _verdict("endowment_monotonicity", mode, budget, tol, count)


def _monotonicity_violation(rule, ranking, e_lo, e_hi, mode, tol, get) -> Witness | None:
    if e_hi <= e_lo:
        return None
    lo = get(ranking, e_lo)
    hi = get(ranking, e_hi)
    n = ranking.n
    comp_lo = Competition(ranking=ranking, endowment=e_lo)
    comp_hi = Competition(ranking=ranking, endowment=e_hi)

    def make(pos: int, relation: str, margin: float) -> Witness:
        return Witness(
            axiom="endowment_monotonicity", mode=mode,
            competitions=(comp_lo, comp_hi), subset=None,
            competitor=ranking.id_at(pos), position=pos,
            lhs=lo[pos - 1], rhs=hi[pos - 1], relation=relation, margin=margin,
        )

    for pos in range(1, n + 1):
        if lo[pos - 1] > hi[pos - 1] + tol:
            return make(pos, "prize non-decreasing in E", lo[pos - 1] - hi[pos - 1])
    if e_hi - e_lo < MIN_STRICT_GAP:
        return None
    if mode == "winner_strict":
        if hi[0] <= lo[0] + tol:
            return make(1, "winner prize strictly increasing in E",
                        lo[0] - hi[0] + tol)
    if mode == "strict":
        for pos in range(1, n + 1):
            if hi[pos - 1] <= lo[pos - 1] + tol:
                return make(pos, "prize strictly increasing in E",
                            lo[pos - 1] - hi[pos - 1] + tol)
    return None


def _snap_pair(w: Witness, recheck: Callable[[float, float], Witness | None]) -> Witness:
    e_lo = w.competitions[0].endowment
    e_hi = w.competitions[1].endowment
    for lo_cand in [e_lo] + _snap_candidates(e_lo):
        for hi_cand in [e_hi] + _snap_candidates(e_hi):
            if (lo_cand, hi_cand) == (e_lo, e_hi):
                continue
            w2 = recheck(lo_cand, hi_cand)
            if w2 is not None:
                return w2
    return w


def check_lipschitz(
    rule: RuleSpec,
    budget: SampleBudget,
    monotonicity: Verdict | None = None,
    tol: float = TAU_EQ,
) -> Verdict:
    """Check |prize(E) - prize(E')| <= |E - E'| + tol over all grid pairs.

    The inequality is a consequence of (weak) endowment monotonicity, so the
    caller must supply a passing weak-monotonicity verdict for the same rule.
    """
    if monotonicity is None:
        raise PreconditionNotChecked(
            "check endowment monotonicity (weak) first and pass its verdict"
        )
    if monotonicity.axiom != "endowment_monotonicity" or monotonicity.mode != "weak":
        raise PreconditionNotChecked("expected a weak endowment-monotonicity verdict")
    if not monotonicity.passed:
        raise PreconditionNotChecked("rule fails weak endowment monotonicity")
    count = 0
    grid = budget.sorted_grid()
    for n in range(1, budget.max_n + 1):
        ranking = Ranking(tuple(f"c{k}" for k in range(1, n + 1)))
        get = _alloc_cache(rule)
        for a_idx in range(len(grid)):
            for b_idx in range(a_idx + 1, len(grid)):
                e_lo, e_hi = grid[a_idx], grid[b_idx]
                count += 1
                lo = get(ranking, e_lo)
                hi = get(ranking, e_hi)
                for pos in range(1, n + 1):
                    gap = abs(hi[pos - 1] - lo[pos - 1])
                    if gap > (e_hi - e_lo) + tol:
                        w = Witness(
                            axiom="lipschitz", mode=None,
                            competitions=(
                                Competition(ranking=ranking, endowment=e_lo),
                                Competition(ranking=ranking, endowment=e_hi),
                            ),
                            subset=None, competitor=ranking.id_at(pos), position=pos,
                            lhs=gap, rhs=e_hi - e_lo,
                            relation="|prize(E) - prize(E')| <= |E - E'|",
                            margin=gap - (e_hi - e_lo),
                        )
                        return _verdict("lipschitz", None, budget, tol, count, w)
    return _verdict("lipschitz", None, budget, tol, count)


# ---------------------------------------------------------------------------
# Scale invariance (checked jointly with endowment additivity)


def check_scale_invariance(
    rule: RuleSpec, budget: SampleBudget, tol: float = TAU_EQ
) -> Verdict:
    count = 0
    values = _pair_values(budget.endowment_grid)
    scalars = [0.0, 0.25, 0.5, 2.0, 3.0]
    for n in range(1, budget.max_n + 1):
        ranking = Ranking(tuple(f"c{k}" for k in range(1, n + 1)))
        get = _alloc_cache(rule)
        # scale: prize(c * E) = c * prize(E)
        for e in values:
            base = get(ranking, e)
            for c in scalars:
                count += 1
                scaled = get(ranking, c * e)
                for pos in range(1, n + 1):
                    lhs, rhs = scaled[pos - 1], c * base[pos - 1]
                    if abs(lhs - rhs) > tol * max(1.0, abs(lhs), abs(rhs)):
                        w = Witness(
                            axiom="scale_invariance", mode="scale",
                            competitions=(
                                Competition(ranking=ranking, endowment=e),
                                Competition(ranking=ranking, endowment=c * e),
                            ),
                            subset=None, competitor=ranking.id_at(pos), position=pos,
                            lhs=lhs, rhs=rhs,
                            relation=f"prize({c}*E) = {c}*prize(E)",
                            margin=abs(lhs - rhs),
                        )
                        return _verdict("scale_invariance", None, budget, tol, count, w)
        # additivity: prize(E + E') = prize(E) + prize(E')
        for a_idx in range(len(values)):
            for b_idx in range(a_idx, len(values)):
                e1, e2 = values[a_idx], values[b_idx]
                count += 1
                total = get(ranking, e1 + e2)
                p1, p2 = get(ranking, e1), get(ranking, e2)
                for pos in range(1, n + 1):
                    lhs = total[pos - 1]
                    rhs = p1[pos - 1] + p2[pos - 1]
                    if abs(lhs - rhs) > tol * max(1.0, abs(lhs), abs(rhs)):
                        w = Witness(
                            axiom="scale_invariance", mode="additivity",
                            competitions=(
                                Competition(ranking=ranking, endowment=e1),
                                Competition(ranking=ranking, endowment=e2),
                            ),
                            subset=None, competitor=ranking.id_at(pos), position=pos,
                            lhs=lhs, rhs=rhs,
                            relation="prize(E + E') = prize(E) + prize(E')",
                            margin=abs(lhs - rhs),
                        )
                        return _verdict("scale_invariance", None, budget, tol, count, w)
    return _verdict("scale_invariance", None, budget, tol, count)


# ---------------------------------------------------------------------------
# Consistency (full / bilateral / local / top)


CONSISTENCY_MODES = ("full", "bilateral", "local", "top")


def _position_subsets(n: int, mode: str, pair_only: bool) -> Iterator[tuple[int, ...]]:
    """Qualifying position subsets of sizes 2..n-1, smallest first.

    Size-1 subsets and the full set make the consistency identity trivially
    true and are skipped.
    """
    max_size = 2 if (mode == "bilateral" or pair_only) else n - 1
    for size in range(2, max_size + 1):
        if mode == "top":
            yield tuple(range(1, size + 1))
        elif mode == "local":
            for start in range(1, n - size + 2):
                yield tuple(range(start, start + size))
        else:
            yield from _combinations(n, size)


def _combinations(n: int, size: int) -> Iterator[tuple[int, ...]]:
    import itertools
    yield from itertools.combinations(range(1, n + 1), size)


def check_consistency(
    rule: RuleSpec, budget: SampleBudget, mode: str = "full", tol: float = TAU_EQ
) -> Verdict:
    if mode not in CONSISTENCY_MODES:
        raise ValueError(f"unknown consistency mode: {mode}")
    count = 0
    for n in range(3, budget.max_n + 1):
        for ranking in _arrangements(rule, n):
            for positions in _position_subsets(n, mode, budget.pair_only):
                for e in budget.scan_grid():
                    count += 1
                    w = _consistency_violation(rule, ranking, e, positions, mode, tol)
                    if w is not None:
                        w = _snap_single(
                            w,
                            lambda e2: _consistency_violation(
                                rule, ranking, e2, positions, mode, tol),
                        )
                        return _verdict("consistency", mode, budget, tol, count, w)
    return _verdict("consistency", mode, budget, tol, count)


def _consistency_violation(rule, ranking, e, positions, mode, tol) -> Witness | None:
    comp = Competition(ranking=ranking, endowment=e)
    vec = allocate(rule, comp, CHECK_SOLVER).by_position(ranking)
    ids = tuple(ranking.id_at(p) for p in positions)
    sub_e = sum(vec[p - 1] for p in positions)
    sub_ranking = subranking(ranking, ids)
    reduced = Competition(ranking=sub_ranking, endowment=sub_e)
    red_vec = allocate(rule, reduced, CHECK_SOLVER).by_position(sub_ranking)
    for sub_pos, orig_pos in enumerate(positions, start=1):
        lhs = vec[orig_pos - 1]
        rhs = red_vec[sub_pos - 1]
        if abs(lhs - rhs) > tol:
            return Witness(
                axiom="consistency", mode=mode, competitions=(comp, reduced),
                subset=ids, competitor=ranking.id_at(orig_pos), position=orig_pos,
                lhs=lhs, rhs=rhs,
                relation="prize in reduced competition equals original prize",
                margin=abs(lhs - rhs),
            )
    return None


# ---------------------------------------------------------------------------
# Witness re-verification


def verify_witness(rule: RuleSpec, witness: Witness, tol: float = TAU_EQ) -> tuple[bool, float]:
    """Re-evaluate a witness from scratch.

    Returns (still_violates, margin).  For equality- and weak-inequality
    violations the margin must exceed the tolerance; for strict-inequality
    violations the claim is the absence of the required strict gap.
    """
    ax, mode = witness.axiom, witness.mode
    if ax == "anonymity":
        c1, c2 = witness.competitions
        v1 = allocate(rule, c1, CHECK_SOLVER).by_position(c1.ranking)
        v2 = allocate(rule, c2, CHECK_SOLVER).by_position(c2.ranking)
        margin = abs(v1[witness.position - 1] - v2[witness.position - 1])
        return margin > tol, margin
    if ax == "order_preservation":
        (comp,) = witness.competitions
        vec = allocate(rule, comp, CHECK_SOLVER).by_position(comp.ranking)
        hi = witness.position
        lo = _order_partner(witness, comp.ranking.n)
        gap = vec[hi - 1] - vec[lo - 1]
        if mode == "weak" or gap < -tol:
            return gap < -tol, -gap
        return gap <= tol, tol - gap
    if ax == "endowment_monotonicity":
        c_lo, c_hi = witness.competitions
        v_lo = allocate(rule, c_lo, CHECK_SOLVER).by_position(c_lo.ranking)
        v_hi = allocate(rule, c_hi, CHECK_SOLVER).by_position(c_hi.ranking)
        pos = witness.position
        diff = v_hi[pos - 1] - v_lo[pos - 1]
        if diff < -tol:
            return True, -diff
        if mode in ("winner_strict", "strict"):
            return diff <= tol, tol - diff
        return False, diff
    if ax == "lipschitz":
        c_lo, c_hi = witness.competitions
        v_lo = allocate(rule, c_lo, CHECK_SOLVER).by_position(c_lo.ranking)
        v_hi = allocate(rule, c_hi, CHECK_SOLVER).by_position(c_hi.ranking)
        pos = witness.position
        gap = abs(v_hi[pos - 1] - v_lo[pos - 1])
        margin = gap - abs(c_hi.endowment - c_lo.endowment)
        return margin > tol, margin
    if ax == "scale_invariance":
        c1, c2 = witness.competitions
        v1 = allocate(rule, c1, CHECK_SOLVER).by_position(c1.ranking)
        v2 = allocate(rule, c2, CHECK_SOLVER).by_position(c2.ranking)
        pos = witness.position
        if mode == "scale":
            c = c2.endowment / c1.endowment if c1.endowment else 0.0
            margin = abs(v2[pos - 1] - c * v1[pos - 1])
        else:
            comp3 = Competition(ranking=c1.ranking, endowment=c1.endowment + c2.endowment)
            v3 = allocate(rule, comp3, CHECK_SOLVER).by_position(comp3.ranking)
            margin = abs(v3[pos - 1] - (v1[pos - 1] + v2[pos - 1]))
        return margin > tol, margin
    if ax == "consistency":
        comp, _ = witness.competitions
        w2 = _consistency_violation(
            rule, comp.ranking, comp.endowment,
            tuple(comp.ranking.position_of(cid) for cid in witness.subset),
            mode, tol,
        )
        if w2 is None:
            return False, 0.0
        return True, w2.margin
    raise ValueError(f"unknown witness axiom: {ax}")


def _order_partner(witness: Witness, n: int) -> int:
    if witness.mode == "winner_loser_strict" and witness.position == 1:
        return n
    return witness.position + 1


# ---------------------------------------------------------------------------
# Axiom matrix


MATRIX_CELLS = (
    ("anonymity", None),
    ("order_preservation", "weak"),
    ("order_preservation", "winner_loser_strict"),
    ("order_preservation", "strict"),
    ("endowment_monotonicity", "weak"),
    ("endowment_monotonicity", "winner_strict"),
    ("endowment_monotonicity", "strict"),
    ("lipschitz", None),
    ("scale_invariance", None),
    ("consistency", "full"),
    ("consistency", "bilateral"),
    ("consistency", "local"),
    ("consistency", "top"),
)


def cell_key(axiom: str, mode: str | None) -> str:
    return axiom if mode is None else f"{axiom}:{mode}"


def run_axiom_matrix(
    rules: Sequence[RuleSpec], budget: SampleBudget, tol: float = TAU_EQ
) -> dict[str, dict[str, Verdict | None]]:
    """One Verdict per (rule, axiom, mode) cell; deterministic given the seed.

    The Lipschitz cell is None when the rule fails weak endowment
    monotonicity (the lemma's hypothesis is unmet).
    """
    matrix: dict[str, dict[str, Verdict | None]] = {}
    for rule in rules:
        row: dict[str, Verdict | None] = {}
        row[cell_key("anonymity", None)] = check_anonymity(rule, budget, tol)
        for mode in ORDER_MODES:
            row[cell_key("order_preservation", mode)] = check_order_preservation(
                rule, budget, mode, tol)
        mono_weak = check_endowment_monotonicity(rule, budget, "weak", tol)
        row[cell_key("endowment_monotonicity", "weak")] = mono_weak
        for mode in ("winner_strict", "strict"):
            row[cell_key("endowment_monotonicity", mode)] = check_endowment_monotonicity(
                rule, budget, mode, tol)
        if mono_weak.passed:
            row[cell_key("lipschitz", None)] = check_lipschitz(rule, budget, mono_weak, tol)
        else:
            row[cell_key("lipschitz", None)] = None
        row[cell_key("scale_invariance", None)] = check_scale_invariance(rule, budget, tol)
        for mode in CONSISTENCY_MODES:
            row[cell_key("consistency", mode)] = check_consistency(rule, budget, mode, tol)
        matrix[describe(rule)] = row
    return matrix
