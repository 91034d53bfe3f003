import itertools

import pytest

from maxitive import (BudgetError, FiniteSpace, InputError, ValidationError,
                      analysis, borel_structure, enumerate_topologies,
                      hofmann_mislove_check, t0_reflection)
from maxitive.topology import (compact_saturated_family, continuous_maps,
                               enumerate_t0_spaces, generate_topology,
                               is_compact, irreducible_closed_sets)


def all_topologies_by_filtering(n):
    """Independent oracle: filter every family of subsets of an n-point
    set by the topology axioms directly."""
    masks = range(1 << n)
    full = (1 << n) - 1
    out = set()
    for fam_mask in range(1 << (1 << n)):
        fam = [m for m in masks if (fam_mask >> m) & 1]
        fams = set(fam)
        if 0 not in fams or full not in fams:
            continue
        if all(u | v in fams and u & v in fams for u in fam for v in fam):
            out.add(frozenset(fams))
    return out


class TestEnumeration:
    def test_counts_match_known_sequence(self):
        assert [sum(1 for _ in enumerate_topologies(n))
                for n in range(5)] == [1, 1, 4, 29, 355]

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_against_axiom_filtering_oracle(self, n):
        enumerated = {s.opens for s in enumerate_topologies(n)}
        assert enumerated == all_topologies_by_filtering(n)

    def test_budget(self):
        with pytest.raises(BudgetError):
            list(enumerate_topologies(5))

    def test_t0_enumeration_subset(self):
        all3 = set(enumerate_topologies(3))
        t03 = set(enumerate_t0_spaces(3))
        assert t03 <= all3
        assert len(t03) == 19  # labeled T0 topologies on 3 points


class TestFiniteSpace:
    def test_axioms_validated(self):
        with pytest.raises(ValidationError):
            FiniteSpace(("a", "b"), (0, 0b01))  # full set missing
        with pytest.raises(ValidationError):
            # {a} and {b} present but their union missing
            FiniteSpace(("a", "b", "c"), (0, 0b001, 0b010, 0b111))

    def test_unknown_point(self, sier):
        with pytest.raises(InputError):
            sier.mask(("z",))

    def test_generate_topology_closes(self):
        sp = generate_topology(("a", "b", "c"), [0b001, 0b010])
        assert sp.opens == frozenset({0, 0b001, 0b010, 0b011, 0b111})

    def test_specialization_sierpinski(self, sier):
        # b is the open point: a specializes to b nowhere, b <= a nowhere;
        # a's least open is the whole space so a specializes to b
        assert sier.spec_le(0, 1)
        assert not sier.spec_le(1, 0)

    def test_saturate_and_closure(self, sier):
        assert sier.saturate(0b01) == 0b11  # {a} saturates to everything
        assert sier.closure(0b10) == 0b11  # {b} is dense
        assert sier.closure(0b01) == 0b01  # {a} closed

    def test_interior(self, sier):
        assert sier.interior(0b01) == 0
        assert sier.interior(0b10) == 0b10


class TestCompactness:
    def test_all_subsets_compact_on_finite(self):
        for space in enumerate_topologies(3):
            for mask in range(1 << 3):
                assert is_compact(space, mask)

    def test_compact_saturated_equals_opens_here(self):
        # on a finite space saturated sets are exactly unions of minimal
        # opens, and all sets are compact, so the family is the opens
        for space in enumerate_topologies(3):
            qs = compact_saturated_family(space)
            assert set(qs) == {u for u in space.opens}


class TestHofmannMislove:
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_all_spaces_pass(self, n):
        for space in enumerate_topologies(n):
            rep = hofmann_mislove_check(space)
            assert rep.ok, (space, rep)
            assert rep.families_checked > 0 or n == 0

    def test_quasisoberness_always_holds(self):
        for n in range(4):
            for space in enumerate_topologies(n):
                _, quasisober, _ = irreducible_closed_sets(space)
                assert quasisober


class TestBorel:
    def test_sierpinski_atoms(self, sier):
        bs = borel_structure(sier)
        assert bs.atoms == (0b01, 0b10)
        assert bs.atom_labels == ("a", "b")
        assert set(bs.sets) == {0, 0b01, 0b10, 0b11}

    def test_indiscrete_single_atom(self, indisc):
        bs = borel_structure(indisc)
        assert bs.atoms == (0b11,)
        assert bs.atom_labels == ("a/b",)
        assert set(bs.sets) == {0, 0b11}

    def test_borel_sets_are_atom_unions(self):
        for space in enumerate_topologies(3):
            bs = borel_structure(space)
            for b in bs.sets:
                union = 0
                for a in bs.atoms:
                    if not a & ~b:
                        union |= a
                assert union == b


class TestT0Reflection:
    def test_sierpinski_already_t0(self, sier):
        ref = t0_reflection(sier)
        assert ref.quotient.n == 2

    def test_indiscrete_collapses(self, indisc):
        ref = t0_reflection(indisc)
        assert ref.quotient.n == 1
        assert ref.class_masks == (0b11,)

    def test_borel_bijection_all_small_spaces(self):
        targets = tuple(itertools.chain.from_iterable(
            enumerate_t0_spaces(n) for n in range(3)))
        for space in enumerate_topologies(2):
            # raises CrossCheckError on any failed invariant
            t0_reflection(space, factor_targets=targets)

    def test_continuous_maps_compose(self, sier, indisc):
        maps = list(continuous_maps(indisc, sier))
        # both points must land on one point whose preimage of {b} is
        # empty or everything: the constant maps
        assert all(len(set(f)) == 1 for f in maps)


class TestAnalysis:
    def test_predicates_discrete(self):
        sp = FiniteSpace.discrete(("a", "b"))
        p = analysis(sp).predicates
        assert p.discrete and p.t1 and p.metrizable and p.polish

    def test_predicates_sierpinski(self, sier):
        p = analysis(sier).predicates
        assert not p.t1 and not p.metrizable
        assert p.t0 and p.quasisober and p.sober
        assert p.second_countable and p.locally_compact

    def test_indiscrete_not_t0(self, indisc):
        p = analysis(indisc).predicates
        assert not p.t0 and not p.sober and p.quasisober

    def test_cached(self, sier):
        assert analysis(sier) is analysis(FiniteSpace.sierpinski())
