"""Maxitive measures on the Borel algebra of a finite space, and their
classification, plus the bridge to the countable discrete backend.

A maxitive measure assigns the bottom value to the empty set and turns
binary unions into joins.  On a finite Borel algebra it is therefore
determined by its values on the atoms, so that tuple is the canonical
representation; tables are validated against maxitivity and reduced to
it.  Classification computes every flag literally from its definition,
quantifying over the (capped) families the space analysis provides,
and wherever two formulations of the same flag are available both are
computed and compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .countable import COUNTABLE, FinCofinSet, TailDensity, cached_tail_flags
from .errors import CrossCheckError, InputError, ValidationError
from .order import EXT_REALS, Ext, FinitePoset, INFINITY, bits
from .topology import (FiniteSpace, analysis, filtered_subfamilies,
                       subfamily_pool)


@dataclass(frozen=True)
class ClassificationRecord:
    """The continuity, smoothness, and approximation flags of a measure."""

    inner: bool
    outer: bool
    weak_inner: bool
    weak_outer: bool
    regular: bool
    saturated: bool
    q_smooth: bool
    f_smooth: bool
    k_smooth: bool
    tight: bool
    sigma_maxitive: bool
    completely_maxitive: bool
    continuous_from_above: bool
    optimal: bool
    usc_density_exists: bool

    _FIELDS = ("inner", "outer", "weak_inner", "weak_outer", "regular",
               "saturated", "q_smooth", "f_smooth", "k_smooth", "tight",
               "sigma_maxitive", "completely_maxitive",
               "continuous_from_above", "optimal", "usc_density_exists")

    def as_dict(self):
        return {f: getattr(self, f) for f in self._FIELDS}


@dataclass(frozen=True)
class DensityInfo:
    """The upper density of a measure: its pointwise values, whether it
    is upper semicontinuous, and whether its superlevel complements are
    compact."""

    values: object
    usc: bool
    upper_compact: bool


def _coerce_value(lattice, v):
    if lattice is EXT_REALS:
        return Ext.of(v)
    if isinstance(lattice, FinitePoset):
        if isinstance(v, str):
            return lattice.index(v)
        if isinstance(v, int) and 0 <= v < lattice.n:
            return v
        raise InputError(f"value {v!r} outside the lattice")
    raise InputError(f"unsupported value lattice {lattice!r}")


class MaxitiveMeasure:
    """A maxitive measure over one of the two supported backends.

    Finite backend: a finite space plus one lattice value per Borel
    atom.  Countable backend: the countable discrete space plus a tail
    density.  Instances are immutable and hashable so classification
    can be cached.
    """

    def __init__(self, space, lattice, atom_values=None, tail=None):
        self.space = space
        self.lattice = lattice
        if isinstance(space, FiniteSpace):
            atom_values = tuple(atom_values)
            an = analysis(space)
            if len(atom_values) != len(an.atoms):
                raise InputError("one value per atom required")
            _ = lattice.bottom  # the empty set needs a value; raises when absent
            self.atom_values = tuple(_coerce_value(lattice, v)
                                     for v in atom_values)
            self.tail = None
        else:
            if not isinstance(tail, TailDensity):
                raise InputError("countable measures take a tail density")
            if tail.lattice != lattice:
                raise InputError("tail density lattice mismatch")
            self.atom_values = None
            self.tail = tail

    @classmethod
    def from_atom_values(cls, space, lattice, values):
        """Measure from per-atom values: a sequence in atom order, or a
        mapping keyed by atom label."""
        an = analysis(space)
        if hasattr(values, "keys"):
            by_label = dict(values)
            unknown = set(by_label) - set(an.borel.atom_labels)
            if unknown:
                raise InputError(f"unknown atom labels {sorted(unknown)}")
            values = [by_label.get(lab, lattice.bottom)
                      for lab in an.borel.atom_labels]
        return cls(space, lattice, atom_values=values)

    @classmethod
    def from_density(cls, space, lattice, values):
        """Measure whose value on each atom is the join of the supplied
        pointwise values inside it; keys are point names or atom labels,
        missing keys contribute bottom."""
        an = analysis(space)
        atom_vals = [lattice.bottom] * len(an.atoms)
        for key, v in values.items():
            v = _coerce_value(lattice, v)
            if key in an.borel.atom_labels:
                i = an.borel.atom_labels.index(key)
            elif key in space.names:
                i = an.borel.atom_of_point[space.names.index(key)]
            else:
                raise InputError(f"unknown point or atom {key!r}")
            atom_vals[i] = lattice.join(atom_vals[i], v)
        return cls(space, lattice, atom_values=atom_vals)

    @classmethod
    def from_table(cls, space, lattice, table):
        """Measure from a full table over the Borel algebra.

        The table must cover every Borel set, send the empty set to
        bottom, and turn unions into joins; the first violated pair is
        reported as a witness.  The resulting measure reproduces the
        table exactly.
        """
        an = analysis(space)
        table = {int(k): _coerce_value(lattice, v) for k, v in table.items()}
        missing = [b for b in an.borel_masks if b not in table]
        if missing:
            raise InputError(f"table misses Borel sets {missing}")
        extra = [k for k in table if k not in an.borel.sets]
        if extra:
            raise InputError(f"table keys {extra} are not Borel sets")
        if table[0] != lattice.bottom:
            raise ValidationError("the empty set must carry the bottom value",
                                  witness=(0,))
        for a in an.borel_masks:
            for b in an.borel_masks:
                joined = lattice.join(table[a], table[b])
                if table[a | b] != joined:
                    raise ValidationError(
                        "table is not maxitive", witness=(a, b))
        measure = cls(space, lattice,
                      atom_values=[table[a] for a in an.atoms])
        for b in an.borel_masks:
            if measure.value(b) != table[b]:
                raise CrossCheckError(
                    f"atom reduction fails to reproduce the table at {b:b}")
        return measure

    @classmethod
    def from_tail(cls, tail):
        return cls(COUNTABLE, tail.lattice, tail=tail)

    @property
    def is_finite_backend(self):
        return isinstance(self.space, FiniteSpace)

    def __eq__(self, other):
        return (isinstance(other, MaxitiveMeasure)
                and self.space == other.space
                and self.lattice == other.lattice
                and self.atom_values == other.atom_values
                and self.tail == other.tail)

    def __hash__(self):
        return hash((self.space, self.lattice, self.atom_values, self.tail))

    def __repr__(self):
        if self.is_finite_backend:
            an = analysis(self.space)
            vals = ", ".join(f"{lab}:{v!r}" for lab, v in
                             zip(an.borel.atom_labels, self.atom_values))
            return f"MaxitiveMeasure({self.space!r}; {vals})"
        return f"MaxitiveMeasure(countable; {self.tail!r})"

    # evaluation

    def value(self, b):
        if not self.is_finite_backend:
            if not isinstance(b, FinCofinSet):
                raise InputError("countable measures evaluate FinCofinSet")
            return self.tail.value(b)
        an = analysis(self.space)
        if b not in an.borel.sets:
            raise InputError(f"mask {b:b} is not a Borel set")
        out = self.lattice.bottom
        for i, a in enumerate(an.atoms):
            if not a & ~b:
                out = self.lattice.join(out, self.atom_values[i])
        return out

    def outer_value(self, b):
        """Value of the outer regularization: the infimum of the
        measure over open supersets.

        Computed literally over all opens containing the set, then
        cross-checked against the measure of the saturation, which the
        finite backend makes the least open superset.
        """
        if not self.is_finite_backend:
            return self.value(b)
        an = analysis(self.space)
        vals = [self.value(g) for g in self.space.opens_list if not b & ~g]
        literal = self.lattice.inf(vals)
        sat = an.sat_table[b]
        if literal != self.value(sat):
            raise CrossCheckError(
                f"outer value at {b:b}: open infimum {literal!r} differs "
                f"from the saturation value")
        return literal

    def table(self):
        an = analysis(self.space)
        return {b: self.value(b) for b in an.borel_masks}

    # derived objects

    def outer_regularization(self):
        """The measure of open supersets, as a measure.

        Its atom values determine it, and the full table is checked to
        agree with the literal outer values before returning.
        """
        if not self.is_finite_backend:
            return MaxitiveMeasure.from_tail(self.tail)
        an = analysis(self.space)
        outer = MaxitiveMeasure(
            self.space, self.lattice,
            atom_values=[self.outer_value(a) for a in an.atoms])
        for b in an.borel_masks:
            if outer.value(b) != self.outer_value(b):
                raise CrossCheckError(
                    f"outer regularization is not atom-determined at {b:b}")
        return outer

    def upper_density(self):
        """Pointwise outer values of atoms, with the semicontinuity and
        compactness of their level sets checked literally."""
        if not self.is_finite_backend:
            flags = cached_tail_flags(self.tail)
            d = TailDensity(self.lattice, dict(self.tail.exceptions),
                            self.tail.tail, self.lattice.bottom)
            return DensityInfo(d, True, flags["upper_compact_density"])
        an = analysis(self.space)
        lat = self.lattice
        c = tuple(self.outer_value(a) for a in an.atoms)
        per_point = tuple(c[an.borel.atom_of_point[x]]
                          for x in range(self.space.n))
        grid = _level_grid(lat, per_point)
        usc = all(_way_above_mask(self.space, lat, t, per_point)
                  in self.space.opens for t in grid)
        uc = all(
            self.space.full & ~_way_above_mask(self.space, lat, t, per_point)
            in an.compact_masks
            for t in grid if lat.way_above(t, lat.bottom))
        return DensityInfo(c, usc, uc)

    def classify(self):
        return _classify(self)


def _way_above_mask(space, lat, t, per_point):
    m = 0
    for x in range(space.n):
        if lat.way_above(t, per_point[x]):
            m |= 1 << x
    return m


def _level_grid(lat, values):
    """Levels sufficient to distinguish every way-above superlevel set
    of a function with the given values.

    A finite lattice is swept in full.  On the extended rationals the
    superlevel sets only change at the values themselves, so the values
    together with midpoints between neighbours, one level above the
    largest finite value, bottom, and infinity cover every case.
    """
    if lat.is_finite:
        return tuple(lat.values())
    finite_vals = sorted({v.finite for v in values if v.finite is not None})
    grid = {Ext.of(0), INFINITY}
    grid.update(Ext(f) for f in finite_vals)
    for a, b in zip(finite_vals, finite_vals[1:]):
        grid.add(Ext((a + b) / 2))
    if finite_vals:
        grid.add(Ext(finite_vals[-1] + 1))
    return tuple(sorted(grid, key=lambda v: (v.finite is None, v.finite or 0)))


# classification

@lru_cache(maxsize=None)
def _borel_subfamilies(space):
    an = analysis(space)
    return subfamily_pool(an.borel_masks, f"borel:{space!r}")


@lru_cache(maxsize=None)
def _filtered_families(space, kind):
    an = analysis(space)
    members = {"opens": space.opens_list,
               "closed": space.closed_list,
               "compact_borel": an.compact_borel}[kind]
    return filtered_subfamilies(members, f"{kind}:{space!r}")


@lru_cache(maxsize=None)
def _descending_borel_chains(space):
    fams, exhaustive = _borel_subfamilies(space)
    chains = []
    for fam in fams:
        if all(not a & ~b or not b & ~a for a in fam for b in fam):
            chains.append(tuple(sorted(fam, key=lambda m: -bin(m).count("1"))))
    return tuple(chains), exhaustive


@lru_cache(maxsize=None)
def _classify(measure):
    if not measure.is_finite_backend:
        flags = cached_tail_flags(measure.tail)
        return ClassificationRecord(
            **{f: flags[f] for f in ClassificationRecord._FIELDS})

    space, lat = measure.space, measure.lattice
    an = analysis(space)
    bottom = lat.bottom
    borel = an.borel_masks
    compact_borel = an.compact_borel

    def sup(vals):
        out = bottom
        for v in vals:
            out = lat.join(out, v)
        return out

    def inf(vals):
        vals = list(vals)
        return lat.inf(vals)

    # approximation from inside by saturations of compact Borel sets
    inner = all(
        measure.value(b) == sup(measure.value(an.sat_table[k])
                                for k in compact_borel if not k & ~b)
        for b in borel)

    outer = all(measure.value(b) == measure.outer_value(b) for b in borel)

    # two routes to inner approximation on opens: outer values of
    # compact subsets, and distributing the measure over open covers
    wi_compact = all(
        measure.value(g) == sup(measure.outer_value(k)
                                for k in compact_borel if not k & ~g)
        for g in space.opens_list)
    open_fams, _ = subfamily_pool(space.opens_list, f"wi:{space!r}")
    wi_covers = True
    for fam in open_fams:
        union = 0
        for g in fam:
            union |= g
        if measure.value(union) != sup(measure.value(g) for g in fam):
            wi_covers = False
    if wi_compact != wi_covers:
        raise CrossCheckError(
            "the two formulations of inner approximation on opens disagree")
    weak_inner = wi_compact

    # two routes to outer approximation on compacts: all compact Borel
    # sets, and atoms alone
    wo_all = all(measure.value(k) == measure.outer_value(k)
                 for k in compact_borel)
    wo_atoms = all(measure.value(a) == measure.outer_value(a)
                   for a in an.atoms)
    if wo_all != wo_atoms:
        raise CrossCheckError(
            "outer approximation on compacts disagrees with its atom form")
    weak_outer = wo_all
    # the outer value of a compact set is always the join of the outer
    # values of its atoms
    for k in compact_borel:
        expected = sup(measure.outer_value(a) for a in an.atoms if not a & ~k)
        if measure.outer_value(k) != expected:
            raise CrossCheckError(
                f"outer value of {k:b} is not the join over its atoms")

    saturated = all(measure.value(k) == measure.value(an.sat_table[k])
                    for k in compact_borel)

    def smooth(kind):
        fams, _ = _filtered_families(space, kind)
        for fam in fams:
            inter = space.full
            for m in fam:
                inter &= m
            if inf(measure.value(m) for m in fam) != measure.value(inter):
                return False
        return True

    q_smooth = smooth("opens")
    f_smooth = smooth("closed")
    k_smooth = smooth("compact_borel")

    tight = inf(measure.value(space.full & ~k)
                for k in compact_borel) == bottom

    fams, _ = _borel_subfamilies(space)
    sigma = True
    for fam in fams:
        union = 0
        for m in fam:
            union |= m
        if measure.value(union) != sup(measure.value(m) for m in fam):
            sigma = False
    completely = sigma

    chains, _ = _descending_borel_chains(space)
    cfa = True
    for chain in chains:
        inter = space.full
        for m in chain:
            inter &= m
        if inf(measure.value(m) for m in chain) != measure.value(inter):
            cfa = False

    usc_density = _usc_density_search(measure)

    return ClassificationRecord(
        inner=inner, outer=outer, weak_inner=weak_inner,
        weak_outer=weak_outer, regular=inner and outer, saturated=saturated,
        q_smooth=q_smooth, f_smooth=f_smooth, k_smooth=k_smooth, tight=tight,
        sigma_maxitive=sigma, completely_maxitive=completely,
        continuous_from_above=cfa, optimal=cfa and sigma,
        usc_density_exists=usc_density)


def _usc_density_search(measure):
    """Search for an upper semicontinuous density.

    A density must join to the measure on every atom, so each point's
    value is bounded by its atom's value.  Finite lattices are searched
    over all such assignments.  Over the extended rationals the search
    is restricted to bottom and the atom values: rounding any density
    down to that set keeps the per-atom joins (the join on a chain is
    attained at some point, whose value is kept exactly) and keeps
    upper semicontinuity (each superlevel set of the rounded density is
    a superlevel set of the original).
    """
    space, lat = measure.space, measure.lattice
    an = analysis(measure.space)
    if space.n == 0:
        return True
    if lat.is_finite:
        pool = tuple(lat.values())
    else:
        pool = tuple(sorted({EXT_REALS.bottom, *measure.atom_values},
                            key=lambda v: (v.finite is None, v.finite or 0)))
    atom_of = an.borel.atom_of_point
    candidates = []
    for x in range(space.n):
        bound = measure.atom_values[atom_of[x]]
        candidates.append([v for v in pool if lat.le(v, bound)])
    grid_source = measure.atom_values
    for assignment in itertools.product(*candidates):
        ok = True
        for i, a in enumerate(an.atoms):
            joined = lat.bottom
            for x in bits(a):
                joined = lat.join(joined, assignment[x])
            if joined != measure.atom_values[i]:
                ok = False
                break
        if not ok:
            continue
        grid = _level_grid(lat, tuple(grid_source) + tuple(assignment))
        if all(_way_above_mask(space, lat, t, assignment) in space.opens
               for t in grid):
            return True
    return False
