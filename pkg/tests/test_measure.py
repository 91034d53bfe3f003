import itertools

import pytest

from maxitive import (EXT_REALS, Ext, FinCofinSet, FinitePoset, InputError,
                      MaxitiveMeasure, TailDensity, ValidationError, analysis,
                      enumerate_topologies)


def brute_outer(measure, b):
    """Infimum of open-superset values, straight from the definition."""
    lat = measure.lattice
    space = measure.space
    vals = [measure.value(g) for g in space.opens_list if not b & ~g]
    out = vals[0]
    for v in vals[1:]:
        out = lat.meet(out, v)
    return out


class TestConstruction:
    def test_atom_count_checked(self, sier, chain3):
        with pytest.raises(InputError):
            MaxitiveMeasure(sier, chain3, atom_values=(1,))

    def test_from_atom_values_by_label(self, indisc, chain2):
        m = MaxitiveMeasure.from_atom_values(indisc, chain2, {"a/b": 1})
        assert m.value(0b11) == 1
        with pytest.raises(InputError):
            MaxitiveMeasure.from_atom_values(indisc, chain2, {"zz": 1})

    def test_from_density_joins_into_atoms(self, indisc, chain2):
        m = MaxitiveMeasure.from_density(indisc, chain2,
                                         {"a": 0, "b": 1})
        assert m.atom_values == (1,)

    def test_from_table_accepts_maxitive(self, sier, chain3, mu1):
        table = {b: mu1.value(b) for b in analysis(sier).borel_masks}
        again = MaxitiveMeasure.from_table(sier, chain3, table)
        assert again == mu1

    def test_from_table_rejects_non_maxitive(self, sier, chain3):
        # value drops on a union: not maxitive
        table = {0: 0, 0b01: 2, 0b10: 2, 0b11: 1}
        with pytest.raises(ValidationError) as exc:
            MaxitiveMeasure.from_table(sier, chain3, table)
        assert exc.value.witness is not None

    def test_from_table_rejects_nonzero_empty(self, sier, chain3):
        table = {0: 1, 0b01: 1, 0b10: 1, 0b11: 1}
        with pytest.raises(ValidationError):
            MaxitiveMeasure.from_table(sier, chain3, table)

    def test_tail_lattice_must_match(self, chain2, chain3):
        from maxitive import COUNTABLE
        td = TailDensity(chain2, {}, 0, 0)
        with pytest.raises(InputError):
            MaxitiveMeasure(COUNTABLE, chain3, tail=td)

    def test_value_requires_borel(self, mu1):
        with pytest.raises(InputError):
            mu1.value(0b100)

    def test_countable_value_requires_fincofin(self, eta):
        with pytest.raises(InputError):
            eta.value({0, 1})


class TestValues:
    def test_join_over_atoms(self, mu1):
        assert mu1.value(0) == 0
        assert mu1.value(0b01) == 0  # {a}
        assert mu1.value(0b10) == 1  # {b}
        assert mu1.value(0b11) == 1

    def test_outer_matches_brute_force_everywhere(self):
        for space in enumerate_topologies(2):
            an = analysis(space)
            k = 3
            chain = FinitePoset.chain(k)
            for assign in itertools.product(range(k),
                                            repeat=len(an.atoms)):
                m = MaxitiveMeasure(space, chain, atom_values=assign)
                for b in an.borel_masks:
                    assert m.outer_value(b) == brute_outer(m, b)

    def test_ext_real_values(self, sier):
        m = MaxitiveMeasure.from_density(sier, EXT_REALS,
                                         {"a": "1/2", "b": "inf"})
        assert m.value(0b01) == Ext.of("1/2")
        assert m.outer_value(0b01) == Ext.of("inf")

    def test_table_covers_all_borel_sets(self, mu1, sier):
        table = mu1.table()
        assert set(table) == set(analysis(sier).borel_masks)


class TestClassification:
    def test_mu1_record(self, mu1):
        r = mu1.classify()
        assert not r.inner and not r.outer and not r.regular
        assert r.weak_inner and not r.weak_outer
        assert not r.saturated
        assert r.q_smooth and r.f_smooth and r.k_smooth
        assert r.tight
        assert r.sigma_maxitive and r.completely_maxitive
        assert r.continuous_from_above and r.optimal
        assert not r.usc_density_exists

    def test_mu2_record(self, mu2):
        r = mu2.classify()
        assert all(r.as_dict().values())

    def test_record_fields_are_exactly_the_contract(self, mu1):
        assert set(mu1.classify().as_dict()) == {
            "inner", "outer", "weak_inner", "weak_outer", "regular",
            "saturated", "q_smooth", "f_smooth", "k_smooth", "tight",
            "sigma_maxitive", "completely_maxitive", "continuous_from_above",
            "optimal", "usc_density_exists"}

    def test_countable_record_matches_tail_flags(self, eta, theta, rho):
        for m in (eta, theta, rho):
            rec = m.classify().as_dict()
            from maxitive.countable import tail_flags
            flags = tail_flags(m.tail)
            for name, value in rec.items():
                assert flags[name] == value, name

    def test_classification_cached(self, mu1):
        assert mu1.classify() is mu1.classify()


class TestUpperDensity:
    def test_mu1_density_is_top(self, mu1):
        info = mu1.upper_density()
        assert info.values == (1, 1)
        assert info.usc and info.upper_compact

    def test_mu2_density(self, mu2):
        info = mu2.upper_density()
        assert info.values == (1, 0)

    def test_ext_real_density(self, sier):
        m = MaxitiveMeasure.from_density(sier, EXT_REALS,
                                         {"a": "1", "b": "2"})
        info = m.upper_density()
        assert info.values == (Ext.of(2), Ext.of(2))
        assert info.usc

    def test_countable_density(self, rho):
        info = rho.upper_density()
        assert info.values == TailDensity(rho.lattice, {0: 2}, 1, 0)
        assert info.usc
        assert not info.upper_compact  # sets where the density exceeds 0
        # stay cofinite, never compact

    def test_usc_search_honest_on_regular_chain(self, sier, chain3):
        # on the Sierpinski space a density exists iff the closed point
        # carries at least the open point's weight
        for va, vb in itertools.product(range(3), repeat=2):
            m = MaxitiveMeasure.from_density(sier, chain3,
                                             {"a": va, "b": vb})
            expected = va >= vb
            assert m.classify().usc_density_exists == expected, (va, vb)


class TestOuterRegularization:
    def test_mu1_outer_measure(self, mu1):
        plus = mu1.outer_regularization()
        assert plus.atom_values == (1, 1)
        assert plus.classify().outer

    def test_idempotent(self, mu1, eta):
        for m in (mu1, eta):
            plus = m.outer_regularization()
            assert plus.outer_regularization() == plus

    def test_countable_outer_is_identity(self, eta):
        assert eta.outer_regularization() == eta
        s = FinCofinSet.cofinite((3,))
        assert eta.outer_value(s) == eta.value(s)

    def test_dominates(self, mu1):
        plus = mu1.outer_regularization()
        for b in mu1.table():
            assert mu1.lattice.le(mu1.value(b), plus.value(b))
