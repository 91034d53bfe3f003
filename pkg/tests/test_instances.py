import json

import pytest

from maxitive import (BudgetError, EXT_REALS, FinitePoset, InputError,
                      InstanceConfig, generate_instances, load_instance,
                      parse_instance, serialize_instance)
from maxitive.instances import parse_lattice, parse_space, serialize_lattice


def make_obj(**measure):
    return {
        "lattice": {"kind": "chain", "size": 2},
        "space": {"kind": "countable_discrete"},
        "measure": measure,
    }


class TestParsing:
    def test_minimal_finite_instance(self):
        obj = {
            "lattice": {"kind": "chain", "size": 3},
            "space": {"kind": "finite", "points": ["a", "b"],
                      "subbasis": [["b"]]},
            "measure": {"kind": "density", "values": {"b": "2"}},
        }
        m = parse_instance(obj)
        assert m.value(m.space.mask(("b",))) == 2

    def test_tail_instance(self):
        obj = make_obj(kind="tail", exceptions={"0": "1"}, tail="0",
                       infinite_mass="1")
        m = parse_instance(obj)
        assert m.tail.density(0) == 1 and m.tail.infinite_mass == 1

    def test_extreal_lattice(self):
        obj = {
            "lattice": {"kind": "extreal"},
            "space": {"kind": "countable_discrete"},
            "measure": {"kind": "tail", "exceptions": {},
                        "tail": "1/2", "infinite_mass": "inf"},
        }
        m = parse_instance(obj)
        assert m.lattice is EXT_REALS

    def test_finite_lattice_kind(self):
        lat = parse_lattice({"kind": "finite", "names": ["0", "x", "1"],
                             "le": [["0", "x"], ["x", "1"]]})
        assert lat.is_chain() and lat.n == 3

    def test_errors_name_fields(self):
        cases = [
            ({"lattice": {"kind": "ring"}}, "lattice.kind"),
            ({"lattice": {"kind": "chain"}}, "lattice.size"),
            ({"lattice": {"kind": "chain", "size": 2}}, "instance.space"),
            ({"lattice": {"kind": "chain", "size": 2},
              "space": {"kind": "torus"}}, "space.kind"),
            (make_obj(kind="orbit"), "measure.kind"),
            (make_obj(kind="tail", exceptions={"x": "0"}, tail="0",
                      infinite_mass="0"), "measure.exceptions"),
            (make_obj(kind="tail", exceptions={}, tail="7",
                      infinite_mass="0"), None),  # unknown element name
        ]
        for obj, field in cases:
            with pytest.raises(InputError) as exc:
                parse_instance(obj)
            if field is not None:
                assert field in str(exc.value), (obj, str(exc.value))

    def test_density_on_countable_rejected(self):
        with pytest.raises(InputError):
            parse_instance(make_obj(kind="density", values={}))

    def test_file_loading(self, tmp_path, mu1):
        path = tmp_path / "inst.json"
        path.write_text(json.dumps(serialize_instance(mu1)))
        assert load_instance(str(path)) == mu1

    def test_bad_json_reported(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        with pytest.raises(InputError) as exc:
            load_instance(str(path))
        assert "line" in str(exc.value)


class TestRoundTrip:
    def test_fixtures(self, mu1, mu2, eta, theta, rho):
        for m in (mu1, mu2, eta, theta, rho):
            assert parse_instance(serialize_instance(m)) == m

    def test_serialized_form_is_sorted_json_stable(self, rho):
        a = json.dumps(serialize_instance(rho), sort_keys=True)
        b = json.dumps(serialize_instance(rho), sort_keys=True)
        assert a == b

    def test_nonchain_lattice_round_trips(self):
        d = FinitePoset.diamond()
        obj = serialize_lattice(d)
        assert obj["kind"] == "finite"
        assert parse_lattice(obj) == d

    def test_extreal_round_trips(self):
        assert parse_lattice(serialize_lattice(EXT_REALS)) is EXT_REALS

    def test_space_round_trips(self, sier):
        assert parse_space({"kind": "finite", "points": ["a", "b"],
                            "subbasis": [["b"]]}) == sier


class TestGeneration:
    def test_counts(self):
        cfg = InstanceConfig(points=2, lattice_size=2)
        assert sum(1 for _ in generate_instances(cfg)) == 14
        cfg = InstanceConfig(points=3, lattice_size=3)
        spaces = {repr(s) for s, _, _ in generate_instances(cfg)}
        assert len(spaces) == 29
        cfg = InstanceConfig(backend="countable", lattice_size=3)
        assert sum(1 for _ in generate_instances(cfg)) == 81

    def test_exhaustive_budget(self):
        with pytest.raises(BudgetError):
            list(generate_instances(InstanceConfig(points=4)))
        with pytest.raises(BudgetError):
            list(generate_instances(InstanceConfig(points=5,
                                                   mode="sampled")))
        with pytest.raises(BudgetError):
            list(generate_instances(InstanceConfig(lattice_size=5)))

    def test_sampled_deterministic(self):
        cfg = InstanceConfig(points=4, lattice_size=2, mode="sampled",
                             samples=8, seed=11)
        first = [repr(m) for _, _, m in generate_instances(cfg)]
        second = [repr(m) for _, _, m in generate_instances(cfg)]
        assert first == second
        other = InstanceConfig(points=4, lattice_size=2, mode="sampled",
                               samples=8, seed=12)
        assert first != [repr(m) for _, _, m in generate_instances(other)]

    def test_config_validation(self):
        with pytest.raises(InputError):
            generate_instances(InstanceConfig(backend="sheaf")).__next__()
        with pytest.raises(InputError):
            generate_instances(InstanceConfig(mode="psychic")).__next__()
