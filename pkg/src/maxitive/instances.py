"""Instance files and instance streams.

An instance couples a lattice, a space, and a measure.  On disk it is
a JSON object with those three keys.  Lattice elements travel as
element names for finite lattices and as fraction strings ("p/q",
"inf") for the extended rationals; sets of points travel as arrays of
point names.  Parse errors always name the offending field.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .countable import COUNTABLE, TailDensity
from .errors import BudgetError, InputError
from .measure import MaxitiveMeasure
from .order import EXT_REALS, Ext, FinitePoset
from .topology import FiniteSpace, analysis, enumerate_topologies, stable_seed


def _need(obj, field, where):
    if not isinstance(obj, dict):
        raise InputError(f"field {where!r} must be an object")
    if field not in obj:
        raise InputError(f"missing field {where + '.' + field!r}")
    return obj[field]


def parse_lattice(obj):
    kind = _need(obj, "kind", "lattice")
    if kind == "chain":
        size = _need(obj, "size", "lattice")
        if not isinstance(size, int) or size < 1:
            raise InputError("field 'lattice.size' must be a positive integer")
        return FinitePoset.chain(size)
    if kind == "finite":
        names = _need(obj, "names", "lattice")
        if (not isinstance(names, list)
                or not all(isinstance(s, str) for s in names)):
            raise InputError("field 'lattice.names' must be a list of strings")
        pairs = _need(obj, "le", "lattice")
        try:
            return FinitePoset.from_pairs(names, [tuple(p) for p in pairs])
        except (TypeError, ValueError):
            raise InputError("field 'lattice.le' must be a list of name "
                             "pairs") from None
    if kind == "extreal":
        return EXT_REALS
    raise InputError(f"unknown lattice kind {kind!r} in field 'lattice.kind'")


def serialize_lattice(lat):
    if lat is EXT_REALS or not lat.is_finite:
        return {"kind": "extreal"}
    if lat == FinitePoset.chain(lat.n):
        return {"kind": "chain", "size": lat.n}
    pairs = [[lat.name(a), lat.name(b)]
             for a in lat.values() for b in lat.values()
             if a != b and lat.le(a, b)]
    return {"kind": "finite", "names": list(lat.names), "le": pairs}


def parse_space(obj):
    kind = _need(obj, "kind", "space")
    if kind == "countable_discrete":
        return COUNTABLE
    if kind == "finite":
        points = _need(obj, "points", "space")
        if (not isinstance(points, list)
                or not all(isinstance(p, str) for p in points)):
            raise InputError("field 'space.points' must be a list of strings")
        index = {p: i for i, p in enumerate(points)}
        subbasis = _need(obj, "subbasis", "space")
        if not isinstance(subbasis, list):
            raise InputError("field 'space.subbasis' must be a list of "
                             "point-name arrays")
        masks = []
        for member in subbasis:
            m = 0
            for p in member:
                if p not in index:
                    raise InputError(f"unknown point {p!r} in field "
                                     f"'space.subbasis'")
                m |= 1 << index[p]
            masks.append(m)
        return FiniteSpace.from_subbasis(tuple(points), masks)
    raise InputError(f"unknown space kind {kind!r} in field 'space.kind'")


def serialize_space(space):
    if space is COUNTABLE or not space.is_finite:
        return {"kind": "countable_discrete"}
    return {"kind": "finite", "points": list(space.names),
            "subbasis": [list(space.point_names(u))
                         for u in space.opens_list]}


def _value_string(lattice, v):
    if lattice.is_finite:
        return lattice.name(v)
    return repr(v)


def _parse_tail_value(lattice, v, where):
    if lattice.is_finite:
        if isinstance(v, str):
            return lattice.index(v)
        raise InputError(f"field {where!r} must name a lattice element")
    try:
        return Ext.of(v)
    except (InputError, TypeError, ValueError):
        raise InputError(f"field {where!r} must be a fraction string "
                         f"like \"1/2\" or \"inf\"") from None


def parse_instance(obj):
    if not isinstance(obj, dict):
        raise InputError("an instance file must hold a JSON object")
    lattice = parse_lattice(_need(obj, "lattice", "instance"))
    space = parse_space(_need(obj, "space", "instance"))
    mobj = _need(obj, "measure", "instance")
    kind = _need(mobj, "kind", "measure")
    if kind == "density":
        if space is COUNTABLE:
            raise InputError("field 'measure.kind': density maps describe "
                             "finite spaces; use kind \"tail\" here")
        values = _need(mobj, "values", "measure")
        if not isinstance(values, dict):
            raise InputError("field 'measure.values' must map points or "
                             "atoms to lattice values")
        return MaxitiveMeasure.from_density(space, lattice, values)
    if kind == "tail":
        if space is not COUNTABLE:
            raise InputError("field 'measure.kind': tail measures live on "
                             "the countable discrete space")
        exc_obj = _need(mobj, "exceptions", "measure")
        if not isinstance(exc_obj, dict):
            raise InputError("field 'measure.exceptions' must map naturals "
                             "to lattice values")
        exceptions = {}
        for key, v in exc_obj.items():
            try:
                x = int(key)
            except ValueError:
                raise InputError(f"field 'measure.exceptions': key {key!r} "
                                 f"is not a natural number") from None
            exceptions[x] = _parse_tail_value(lattice, v,
                                              f"measure.exceptions.{key}")
        tail = _parse_tail_value(lattice, _need(mobj, "tail", "measure"),
                                 "measure.tail")
        mass = _parse_tail_value(lattice,
                                 _need(mobj, "infinite_mass", "measure"),
                                 "measure.infinite_mass")
        return MaxitiveMeasure.from_tail(
            TailDensity(lattice, exceptions, tail, mass))
    raise InputError(f"unknown measure kind {kind!r} in field 'measure.kind'")


def serialize_instance(measure):
    lat = measure.lattice
    out = {"lattice": serialize_lattice(lat),
           "space": serialize_space(measure.space)}
    if measure.is_finite_backend:
        labels = analysis(measure.space).borel.atom_labels
        out["measure"] = {
            "kind": "density",
            "values": {lab: _value_string(lat, v)
                       for lab, v in zip(labels, measure.atom_values)}}
    else:
        td = measure.tail
        out["measure"] = {
            "kind": "tail",
            "exceptions": {str(x): _value_string(lat, v)
                           for x, v in td.exceptions},
            "tail": _value_string(lat, td.tail),
            "infinite_mass": _value_string(lat, td.infinite_mass)}
    return out


def instance_to_json(measure):
    return json.dumps(serialize_instance(measure), sort_keys=True, indent=2)


def load_instance(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read instance file: {e}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"instance file is not valid JSON: "
                         f"line {e.lineno} column {e.colno}") from None
    return parse_instance(obj)


# instance streams


@dataclass(frozen=True)
class InstanceConfig:
    """Configuration for a deterministic instance stream.

    The finite backend enumerates every labeled topology on exactly
    `points` points and pairs it with the chain of height
    `lattice_size`.  In exhaustive mode every atom assignment is
    produced, which is only allowed within the bounds below; sampled
    mode draws `samples` seeded assignments per space instead.  The
    countable backend ignores the mode and walks the full tail grid
    with exceptional points 0 and 1.
    """

    backend: str = "finite"
    points: int = 3
    lattice_size: int = 3
    mode: str = "exhaustive"
    seed: int = 0
    samples: int = 64

    def validate(self):
        if self.backend not in ("finite", "countable"):
            raise InputError(f"unknown backend {self.backend!r}")
        if self.mode not in ("exhaustive", "sampled"):
            raise InputError(f"unknown mode {self.mode!r}")
        if self.points < 0 or self.lattice_size < 1:
            raise InputError("points must be nonnegative and lattice_size "
                             "positive")
        return self


def generate_instances(config=InstanceConfig()):
    """Yield (space, lattice, measure) triples, lexicographically.

    Exhaustive bounds: spaces on at most 4 points, chains of height at
    most 4, and at most 3 atoms per space for density enumeration;
    anything larger needs sampled mode, which stays deterministic
    through seeds derived from the space itself.
    """
    config.validate()
    if config.lattice_size > 4:
        raise BudgetError("chains are enumerated up to height 4")
    chain = FinitePoset.chain(config.lattice_size)
    if config.backend == "countable":
        k = config.lattice_size
        for v0, v1, tail, mass in itertools.product(range(k), repeat=4):
            td = TailDensity(chain, {0: v0, 1: v1}, tail, mass)
            yield COUNTABLE, chain, MaxitiveMeasure.from_tail(td)
        return
    if config.points > 4:
        raise BudgetError("spaces are enumerated for at most 4 points")
    for space in enumerate_topologies(config.points):
        an = analysis(space)
        k_atoms = len(an.atoms)
        if config.mode == "exhaustive":
            if k_atoms > 3:
                raise BudgetError(
                    f"space with {k_atoms} atoms exceeds the exhaustive "
                    f"density budget; use sampled mode")
            assigns = itertools.product(range(config.lattice_size),
                                        repeat=k_atoms)
        else:
            rng = random.Random(stable_seed("densities", repr(space),
                                            config.lattice_size, config.seed))
            assigns = sorted({
                tuple(rng.randrange(config.lattice_size)
                      for _ in range(k_atoms))
                for _ in range(config.samples)})
        for assign in assigns:
            yield space, chain, MaxitiveMeasure(space, chain,
                                                atom_values=assign)
