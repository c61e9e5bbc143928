
import pytest
from hypothesis import given, strategies as st

from prizealloc.core import (
    Allocation,
    Competition,
    DuplicateId,
    EmptySubset,
    EventSet,
    InconsistentPositionCounts,
    KeyMismatch,
    NegativeEndowment,
    NotAPermutation,
    PrizeAllocError,
    PrizeTable,
    Ranking,
    UnknownCompetitor,
    make_competition,
    standard_competition,
    subranking,
    tau_sum,
    validate_allocation,
)


class TestRanking:
    def test_positions_and_ids(self):
        r = Ranking(("a", "b", "c"))
        assert r.n == 3
        assert r.position_of("a") == 1
        assert r.position_of("c") == 3
        assert r.id_at(1) == "a"
        assert r.competitors == {"a", "b", "c"}

    def test_duplicate_ids_rejected(self):
        with pytest.raises(DuplicateId):
            Ranking(("a", "a"))

    def test_empty_rejected(self):
        with pytest.raises(NotAPermutation):
            Ranking(())

    def test_empty_id_rejected(self):
        with pytest.raises(DuplicateId):
            Ranking(("a", ""))

    def test_unknown_competitor(self):
        with pytest.raises(UnknownCompetitor):
            Ranking(("a",)).position_of("z")


class TestCompetition:
    def test_negative_endowment_rejected(self):
        with pytest.raises(NegativeEndowment):
            Competition(ranking=Ranking(("a",)), endowment=-1.0)

    def test_zero_endowment_allowed(self):
        assert Competition(ranking=Ranking(("a",)), endowment=0.0).endowment == 0.0

    def test_make_competition_maps_positions(self):
        comp = make_competition(["x", "y", "z"], [2, 1, 3], 6.0)
        assert comp.ranking.by_position == ("y", "x", "z")

    def test_make_competition_rejects_non_permutation(self):
        with pytest.raises(NotAPermutation):
            make_competition(["x", "y"], [1, 3], 1.0)
        with pytest.raises(NotAPermutation):
            make_competition(["x", "y"], [1, 1], 1.0)

    def test_make_competition_rejects_duplicates(self):
        with pytest.raises(DuplicateId):
            make_competition(["x", "x"], [1, 2], 1.0)

    def test_standard_competition(self):
        comp = standard_competition(3, 5.0)
        assert comp.ranking.by_position == ("c1", "c2", "c3")
        assert comp.endowment == 5.0


class TestSubranking:
    def test_preserves_relative_order(self):
        r = Ranking(("a", "b", "c", "d"))
        assert subranking(r, {"d", "b"}).by_position == ("b", "d")

    def test_empty_subset_rejected(self):
        with pytest.raises(EmptySubset):
            subranking(Ranking(("a",)), set())

    def test_unknown_member_rejected(self):
        with pytest.raises(UnknownCompetitor):
            subranking(Ranking(("a",)), {"a", "z"})

    @given(st.integers(min_value=1, max_value=8), st.data())
    def test_relative_order_property(self, n, data):
        ids = tuple(f"c{k}" for k in range(n))
        subset = data.draw(st.sets(st.sampled_from(ids), min_size=1))
        sub = subranking(Ranking(ids), subset)
        positions = [ids.index(cid) for cid in sub.by_position]
        assert positions == sorted(positions)
        assert set(sub.by_position) == subset


class TestValidateAllocation:
    def test_valid(self):
        comp = standard_competition(2, 4.0)
        assert validate_allocation(comp, Allocation({"c1": 3.0, "c2": 1.0}))

    def test_sum_mismatch(self):
        comp = standard_competition(2, 4.0)
        assert not validate_allocation(comp, Allocation({"c1": 3.0, "c2": 0.5}))

    def test_negative_prize(self):
        comp = standard_competition(2, 4.0)
        assert not validate_allocation(comp, Allocation({"c1": 5.0, "c2": -1.0}))

    def test_key_mismatch_raises(self):
        comp = standard_competition(2, 4.0)
        with pytest.raises(KeyMismatch):
            validate_allocation(comp, Allocation({"c1": 4.0}))

    def test_tolerance_scales_with_endowment(self):
        assert tau_sum(0.5) == 1e-9
        assert tau_sum(1e6) == pytest.approx(1e-3)
        comp = standard_competition(1, 1e9)
        assert validate_allocation(comp, Allocation({"c1": 1e9 + 0.1}))


class TestPrizeTable:
    def test_prizes_may_undershoot_endowment(self):
        t = PrizeTable(name="x", endowment=10.0, prizes=(5.0, 2.0))
        assert sum(t.prizes) < t.endowment

    def test_prizes_exceeding_endowment_rejected(self):
        with pytest.raises(PrizeAllocError):
            PrizeTable(name="x", endowment=5.0, prizes=(4.0, 2.0))

    def test_negative_prize_rejected(self):
        with pytest.raises(PrizeAllocError):
            PrizeTable(name="x", endowment=5.0, prizes=(-1.0,))

    def test_nonpositive_endowment_rejected(self):
        with pytest.raises(NegativeEndowment):
            PrizeTable(name="x", endowment=0.0, prizes=())


class TestEventSet:
    def test_mismatched_position_counts_rejected(self):
        a = PrizeTable(name="a", endowment=10.0, prizes=(5.0, 3.0))
        b = PrizeTable(name="b", endowment=10.0, prizes=(5.0,))
        with pytest.raises(InconsistentPositionCounts):
            EventSet(events=(a, b))

    def test_empty_rejected(self):
        with pytest.raises(PrizeAllocError):
            EventSet(events=())

    def test_positions(self):
        a = PrizeTable(name="a", endowment=10.0, prizes=(5.0, 3.0))
        assert EventSet(events=(a,)).positions == 2
