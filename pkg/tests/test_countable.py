import itertools

import pytest

from maxitive import (COUNTABLE, EXT_REALS, Ext, FinCofinSet, FinitePoset,
                      InputError, PreconditionError, TailDensity)
from maxitive.countable import (cached_tail_flags, is_compact, sample_sets,
                                singleton_cover_check, tail_flags)


def window(s, horizon=40):
    """The set restricted to {0, ..., horizon-1}, as a Python set."""
    return {x for x in range(horizon) if s.contains(x)}


class TestFinCofinSet:
    def test_construction(self):
        s = FinCofinSet.of_points((3, 1, 1))
        assert s.members() == (1, 3)
        assert not s.is_infinite
        c = FinCofinSet.cofinite((0,))
        assert c.is_infinite and not c.contains(0) and c.contains(7)

    def test_rejects_negatives(self):
        with pytest.raises(InputError):
            FinCofinSet.of_points((-1,))

    def test_algebra_against_set_oracle(self):
        pool = [FinCofinSet.empty(), FinCofinSet.universe(),
                FinCofinSet.of_points((0, 2)), FinCofinSet.of_points((1,)),
                FinCofinSet.cofinite((0, 1)), FinCofinSet.cofinite((2, 5))]
        for a, b in itertools.product(pool, repeat=2):
            assert window(a.union(b)) == window(a) | window(b)
            assert window(a.intersection(b)) == window(a) & window(b)
            assert window(a.difference(b)) == window(a) - window(b)
            assert a.issubset(b) == (window(a) <= window(b)
                                     and (b.is_infinite or not a.is_infinite))

    def test_complement_involution(self):
        s = FinCofinSet.of_points((4, 9))
        assert s.complement().complement() == s
        assert s.complement().kind == "cofinite"

    def test_members_of_cofinite_needs_limit(self):
        c = FinCofinSet.cofinite((1,))
        assert c.members(limit=4) == (0, 2, 3, 4)
        with pytest.raises(InputError):
            c.members()

    def test_compactness(self):
        assert is_compact(FinCofinSet.of_points((0, 1)))
        assert not is_compact(FinCofinSet.cofinite(()))
        assert singleton_cover_check(FinCofinSet.of_points((0, 5)))


class TestCountableSpace:
    def test_identity_operators(self):
        s = FinCofinSet.cofinite((2,))
        assert COUNTABLE.saturate(s) == s
        assert COUNTABLE.closure(s) == s

    def test_predicates_all_true(self):
        p = COUNTABLE.predicates
        assert p.polish and p.metrizable and p.discrete and p.quasisober


class TestTailDensity:
    def test_requires_chain(self):
        with pytest.raises(PreconditionError):
            TailDensity(FinitePoset.diamond(), {}, 0, 0)

    def test_canonicalization(self, chain2):
        # exceptions equal to the tail disappear; dominated mass drops
        td = TailDensity(chain2, {0: 1, 3: 0}, 0, 0)
        assert td.exceptions == ((0, 1),)
        td2 = TailDensity(chain2, {}, 1, 1)
        assert td2.infinite_mass == 0
        assert td2 == TailDensity(chain2, {5: 1}, 1, 0)

    def test_values(self, chain3):
        td = TailDensity(chain3, {0: 2}, 1, 2)
        assert td.density(0) == 2 and td.density(9) == 1
        assert td.value(FinCofinSet.of_points((0,))) == 2
        assert td.value(FinCofinSet.of_points((3,))) == 1
        assert td.value(FinCofinSet.empty()) == 0
        assert td.value(FinCofinSet.cofinite((0,))) == 2  # mass dominates

    def test_ext_real_values(self):
        td = TailDensity(EXT_REALS, {0: "3/2"}, "1/2", "inf")
        assert td.density(0) == Ext.of("3/2")
        assert td.value(FinCofinSet.cofinite(())) == Ext.of("inf")

    def test_conflicting_duplicates_rejected(self, chain2):
        with pytest.raises(InputError):
            TailDensity(chain2, [(0, 0), (0, 1)], 0, 0)


class TestTailFlags:
    def test_eta_profile(self, eta):
        flags = tail_flags(eta.tail)
        assert flags["outer"] and flags["weak_outer"] and flags["saturated"]
        assert flags["q_smooth"] and flags["k_smooth"]
        assert not flags["inner"] and not flags["weak_inner"]
        assert not flags["tight"] and not flags["f_smooth"]
        assert not flags["sigma_maxitive"] and not flags["optimal"]
        assert not flags["usc_density_exists"]
        assert flags["upper_compact_density"]

    def test_theta_profile(self, theta):
        flags = tail_flags(theta.tail)
        for name in ("inner", "outer", "regular", "tight", "optimal",
                     "sigma_maxitive", "completely_maxitive"):
            assert flags[name], name
        assert flags["upper_compact_density"]  # the tail value is bottom

    def test_closed_forms_over_grid(self):
        # inner continuity is mass <= tail; tightness is mass join tail = 0
        chain = FinitePoset.chain(3)
        for v0, v1, tail, mass in itertools.product(range(3), repeat=4):
            td = TailDensity(chain, {0: v0, 1: v1}, tail, mass)
            flags = tail_flags(td)
            assert flags["inner"] == (mass <= tail)
            assert flags["sigma_maxitive"] == (mass <= tail)
            assert flags["regular"] == (mass <= tail)
            assert flags["tight"] == (mass == 0 and tail == 0)
            assert flags["optimal"] == flags["tight"]
            assert flags["outer"] and flags["weak_outer"]
            assert flags["saturated"] and flags["q_smooth"]
            assert flags["upper_compact_density"] == (tail == 0)

    def test_cache_returns_same_object(self, eta):
        assert cached_tail_flags(eta.tail) is cached_tail_flags(eta.tail)


class TestSampleSets:
    def test_pool_shape(self, rho):
        pool = sample_sets(rho.tail)
        assert FinCofinSet.empty() in pool
        assert FinCofinSet.universe() in pool
        assert any(s.kind == "cofinite" for s in pool)
        assert any(s.kind == "finite" and not s.is_empty for s in pool)
        assert len(pool) == len(set(pool))
