"""Finite topological spaces: specialization, saturation, compactness,
irreducible closed sets, Borel atoms, and the T0 quotient.

Points are indexed; subsets are bitmasks; a topology is a frozenset of
open bitmasks validated to contain the empty set and the whole space
and to be closed under binary union and intersection.  Finite spaces
are Alexandrov: arbitrary intersections of opens are open, so the
saturated sets coincide with the open sets and the specialization
preorder determines everything.  Several operations exploit that
collapse but still compute the general formula and cross-check the two
routes, raising CrossCheckError on disagreement; the degeneracy itself
is surfaced to callers rather than silently assumed.
"""

from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetError, CrossCheckError, InputError, ValidationError
from .order import bits

# Families of subsets are enumerated exhaustively up to this size and
# deterministically sampled beyond it.
FAMILY_ENUM_LIMIT = 12
FAMILY_SAMPLE = 256

_POINT_LIMIT = 8


def stable_seed(*parts):
    """Deterministic RNG seed derived from the reprs of the parts."""
    return zlib.crc32("|".join(repr(p) for p in parts).encode())


def subfamily_pool(members, label):
    """Nonempty subfamilies of members: all of them when feasible, else
    a deterministic sample.  Returns (families, exhaustive)."""
    members = tuple(members)
    k = len(members)
    if k <= FAMILY_ENUM_LIMIT:
        fams = tuple(tuple(members[i] for i in bits(m))
                     for m in range(1, 1 << k))
        return fams, True
    rng = random.Random(stable_seed("subfamilies", label, members))
    fams = []
    for _ in range(FAMILY_SAMPLE):
        size = rng.randint(1, k)
        picked = sorted(rng.sample(range(k), size))
        fams.append(tuple(members[i] for i in picked))
    return tuple(fams), False


def filtered_subfamilies(members, label):
    """Subfamilies filtered under reverse inclusion: every two members
    contain a third member of the family.  Returns (families, exhaustive)."""
    pool, exhaustive = subfamily_pool(members, "filtered:" + label)
    fams = []
    for fam in pool:
        if all(any(not c & ~(a & b) for c in fam) for a in fam for b in fam):
            fams.append(fam)
    return tuple(fams), exhaustive


class FiniteSpace:
    """A finite topological space with named points and bitmask opens."""

    is_finite = True

    def __init__(self, names, opens):
        names = tuple(names)
        n = len(names)
        if len(set(names)) != n:
            raise InputError("duplicate point names")
        if n > _POINT_LIMIT:
            raise BudgetError(f"finite spaces support at most {_POINT_LIMIT} points")
        full = (1 << n) - 1
        opens = frozenset(int(u) for u in opens)
        for u in opens:
            if u & ~full or u < 0:
                raise InputError("open set out of range")
        if 0 not in opens or full not in opens:
            raise ValidationError("a topology contains the empty set and the whole space")
        for u in opens:
            for v in opens:
                if u | v not in opens:
                    raise ValidationError("opens not closed under union",
                                          witness=(u, v))
                if u & v not in opens:
                    raise ValidationError("opens not closed under intersection",
                                          witness=(u, v))
        self.names = names
        self.n = n
        self.full = full
        self.opens = opens
        self.opens_list = tuple(sorted(opens))
        self.closed_list = tuple(sorted(full & ~u for u in opens))
        # up[x]: the least open containing x; down[x]: closure of {x}
        up, down = [], []
        for x in range(n):
            m = full
            for u in opens:
                if (u >> x) & 1:
                    m &= u
            up.append(m)
            c = 0
            for u in opens:
                if not (u >> x) & 1:
                    c |= u
            down.append(full & ~c)
        self.up = tuple(up)
        self.down = tuple(down)

    @classmethod
    def from_subbasis(cls, names, subbasis_masks):
        return generate_topology(names, subbasis_masks)

    @classmethod
    def discrete(cls, names):
        n = len(tuple(names))
        return cls(names, range(1 << n))

    @classmethod
    def indiscrete(cls, names):
        n = len(tuple(names))
        return cls(names, (0, (1 << n) - 1))

    @classmethod
    def sierpinski(cls):
        """Two points a, b; opens are the empty set, {b}, and the space."""
        return cls(("a", "b"), (0, 0b10, 0b11))

    def __eq__(self, other):
        return (isinstance(other, FiniteSpace)
                and self.names == other.names and self.opens == other.opens)

    def __hash__(self):
        return hash((self.names, self.opens))

    def __repr__(self):
        shown = ", ".join("{" + ",".join(self.point_names(u)) + "}"
                          for u in self.opens_list)
        return f"FiniteSpace({','.join(self.names)}; opens {shown})"

    # subsets by mask

    def mask(self, point_names):
        m = 0
        for p in point_names:
            try:
                m |= 1 << self.names.index(p)
            except ValueError:
                raise InputError(f"unknown point {p!r}") from None
        return m

    def point_names(self, mask):
        return tuple(self.names[i] for i in bits(mask))

    def is_open(self, mask):
        return mask in self.opens

    def is_closed(self, mask):
        return (self.full & ~mask) in self.opens

    def spec_le(self, x, y):
        """Specialization: every open containing x contains y."""
        return bool((self.up[x] >> y) & 1)

    def saturate(self, mask):
        """Intersection of all opens containing the set.

        Computed both as that intersection and as the union of the
        pointwise up-sets; in finite spaces the two agree because the
        union of up-sets is itself open.
        """
        inter = self.full
        for u in self.opens:
            if not mask & ~u:
                inter &= u
        via_points = 0
        for x in bits(mask):
            via_points |= self.up[x]
        if inter != via_points:
            raise CrossCheckError(
                f"saturation routes disagree on mask {mask:b}")
        return inter

    def closure(self, mask):
        """Smallest closed superset; equals the union of point closures."""
        biggest = 0
        for u in self.opens:
            if not u & mask:
                biggest |= u
        via_complement = self.full & ~biggest
        via_points = 0
        for x in bits(mask):
            via_points |= self.down[x]
        if via_complement != via_points:
            raise CrossCheckError(
                f"closure routes disagree on mask {mask:b}")
        return via_complement

    def interior(self, mask):
        m = 0
        for u in self.opens:
            if not u & ~mask:
                m |= u
        return m


def generate_topology(names, subbasis_masks):
    """Smallest topology containing the given subbasis.

    Closes under binary intersections, then under unions, after seeding
    with the empty set and the whole space.
    """
    names = tuple(names)
    n = len(names)
    full = (1 << n) - 1
    current = {0, full}
    for m in subbasis_masks:
        m = int(m)
        if m & ~full or m < 0:
            raise InputError("subbasis member out of range")
        current.add(m)
    while True:
        extra = {u & v for u in current for v in current} - current
        if not extra:
            break
        current |= extra
    while True:
        extra = {u | v for u in current for v in current} - current
        if not extra:
            break
        current |= extra
    return FiniteSpace(names, current)


def specialization(space):
    """The specialization preorder as a tuple of up-masks."""
    return space.up


def irreducible_closed_sets(space):
    """All irreducible closed sets, with quasisobriety and T0 flags.

    A nonempty closed C is irreducible when C inside a union of two
    closed sets forces C inside one of them.  The space is quasisober
    when each irreducible closed set is a point closure, and T0 when
    distinct points have distinct closures.
    """
    closeds = space.closed_list
    irr = []
    for c in closeds:
        if c == 0:
            continue
        ok = True
        for f in closeds:
            for g in closeds:
                if not c & ~(f | g) and c & ~f and c & ~g:
                    ok = False
        if ok:
            irr.append(c)
    quasisober = all(any(space.down[x] == c for x in range(space.n))
                     for c in irr)
    t0 = all(space.down[x] != space.down[y]
             for x in range(space.n) for y in range(x + 1, space.n))
    return tuple(irr), quasisober, t0


def is_compact(space, mask):
    """Literal open-cover compactness test.

    Every subfamily of opens covering the set must admit a finite
    subcover; a per-point choice of covering member is extracted as an
    explicit witness.  Subfamilies are enumerated exhaustively up to the
    family cap and deterministically sampled beyond it.  On finite
    spaces the test always succeeds, but it is kept literal so the same
    notion serves backends where compactness genuinely discriminates.
    """
    covers, _ = subfamily_pool(space.opens_list, f"covers:{mask}")
    for fam in covers:
        union = 0
        for u in fam:
            union |= u
        if mask & ~union:
            continue
        witness = 0
        for x in bits(mask):
            for u in fam:
                if (u >> x) & 1:
                    witness |= u
                    break
        if mask & ~witness:
            return False
    return True


def compact_saturated_family(space):
    """All compact saturated subsets, ascending by mask."""
    return tuple(m for m in range(space.full + 1)
                 if space.saturate(m) == m and is_compact(space, m))


@dataclass(frozen=True)
class HMReport:
    """Outcome of the compact-saturated structure check."""

    binary_unions: bool
    filtered_intersections: bool
    open_escape: bool
    families_checked: int
    exhaustive: bool

    @property
    def ok(self):
        return self.binary_unions and self.filtered_intersections and self.open_escape


def hofmann_mislove_check(space):
    """Check that compact saturated sets behave dually to opens:
    closed under binary unions and filtered intersections, and every
    filtered family whose intersection lands in an open has a member
    already inside that open."""
    qs = compact_saturated_family(space)
    qset = set(qs)
    unions_ok = all(a | b in qset for a in qs for b in qs)
    fams, exhaustive = filtered_subfamilies(qs, f"hm:{space.names}:{sorted(space.opens)}")
    inter_ok = True
    escape_ok = True
    for fam in fams:
        inter = space.full
        for q in fam:
            inter &= q
        if inter not in qset:
            inter_ok = False
        for g in space.opens:
            if not inter & ~g and not any(not q & ~g for q in fam):
                escape_ok = False
    return HMReport(unions_ok, inter_ok, escape_ok, len(fams), exhaustive)


@dataclass(frozen=True)
class BorelStructure:
    """Atoms of the Borel algebra and the sets they generate.

    The atom of a point is the intersection of its saturation with its
    closure, i.e. its class under the equivalence identifying points
    with the same closure; every Borel set is a union of atoms.
    """

    atoms: tuple
    atom_labels: tuple
    atom_of_point: tuple
    sets: tuple

    def label_of_mask(self, space, mask):
        inside = [self.atom_labels[i] for i, a in enumerate(self.atoms)
                  if not a & ~mask]
        return "{" + ",".join(inside) + "}"


def borel_structure(space):
    """Compute the Borel algebra of a finite space.

    The algebra generated by the opens (compact saturated sets add
    nothing: they are unions of atoms too) is produced literally by
    closing under complement and binary union, then compared with the
    unions-of-atoms description; any mismatch is an error, as is a
    Borel set that contains a point without its whole atom.
    """
    atoms = []
    atom_of_point = [-1] * space.n
    for x in range(space.n):
        a = space.up[x] & space.down[x]
        if a not in atoms:
            atoms.append(a)
        atom_of_point[x] = atoms.index(a)
    order = sorted(range(len(atoms)), key=lambda i: atoms[i] & -atoms[i])
    atoms = [atoms[i] for i in order]
    rank = {old: new for new, old in enumerate(order)}
    atom_of_point = [rank[i] for i in atom_of_point]
    labels = tuple("/".join(space.point_names(a)) for a in atoms)

    generated = set(space.opens)
    while True:
        extra = {space.full & ~b for b in generated} - generated
        extra |= {a | b for a in generated for b in generated} - generated
        if not extra:
            break
        generated |= extra
    by_atoms = set()
    for k in range(1 << len(atoms)):
        m = 0
        for i in bits(k):
            m |= atoms[i]
        by_atoms.add(m)
    if generated != by_atoms:
        raise CrossCheckError("Borel algebra differs from unions of atoms")
    for b in generated:
        for x in bits(b):
            if atoms[atom_of_point[x]] & ~b:
                raise CrossCheckError(
                    f"Borel set {b:b} splits the class of point {space.names[x]}")
    return BorelStructure(tuple(atoms), labels, tuple(atom_of_point),
                          tuple(sorted(generated)))


@dataclass(frozen=True)
class Reflection:
    """T0 quotient of a space together with the projection data."""

    space: FiniteSpace
    quotient: FiniteSpace
    point_map: tuple
    class_masks: tuple

    def image_mask(self, mask):
        m = 0
        for x in bits(mask):
            m |= 1 << self.point_map[x]
        return m

    def preimage_mask(self, mask):
        m = 0
        for i in bits(mask):
            m |= self.class_masks[i]
        return m


def t0_reflection(space, factor_targets=None):
    """Quotient by the equal-closure equivalence.

    Builds the quotient space on the atom classes, checks it is T0,
    checks that images and preimages of opens and of compact saturated
    sets stay open and compact saturated, and that taking images is a
    bijection between the Borel algebras preserving unions and
    complements.  When factor_targets (a list of T0 spaces) is given,
    every continuous map into every target is checked to factor through
    the projection by exactly one continuous map.
    """
    bs = borel_structure(space)
    classes = bs.atoms
    point_map = bs.atom_of_point
    qnames = bs.atom_labels
    qopens = set()
    for u in space.opens:
        for x in bits(u):
            if classes[point_map[x]] & ~u:
                raise CrossCheckError("an open set splits a class")
        qopens.add(_image(u, point_map))
    quotient = FiniteSpace(qnames, qopens)
    refl = Reflection(space, quotient, point_map, classes)

    _, _, t0 = irreducible_closed_sets(quotient)
    if not t0:
        raise CrossCheckError("quotient is not T0")

    for u in space.opens:
        if refl.preimage_mask(refl.image_mask(u)) != u:
            raise CrossCheckError("projection does not fix a saturated set")
    qs = compact_saturated_family(space)
    qs_quotient = set(compact_saturated_family(quotient))
    for q in qs:
        if refl.image_mask(q) not in qs_quotient:
            raise CrossCheckError("image of a compact saturated set is not one")
    for q in qs_quotient:
        pre = refl.preimage_mask(q)
        if space.saturate(pre) != pre or not is_compact(space, pre):
            raise CrossCheckError("preimage of a compact saturated set is not one")

    qborel = borel_structure(quotient)
    images = {}
    for b in bs.sets:
        im = refl.image_mask(b)
        if refl.preimage_mask(im) != b:
            raise CrossCheckError("projection does not fix a Borel set")
        images[b] = im
    if sorted(images.values()) != list(qborel.sets) or len(set(images.values())) != len(images):
        raise CrossCheckError("Borel correspondence is not a bijection")
    for a in bs.sets:
        for b in bs.sets:
            if images[a | b] != images[a] | images[b]:
                raise CrossCheckError("Borel correspondence misses a union")
        if images[space.full & ~a] != quotient.full & ~images[a]:
            raise CrossCheckError("Borel correspondence misses a complement")

    if factor_targets is not None:
        for target in factor_targets:
            for f in continuous_maps(space, target):
                _check_factorization(refl, target, f)
    return refl


def _image(mask, point_map):
    m = 0
    for x in bits(mask):
        m |= 1 << point_map[x]
    return m


def continuous_maps(space, target):
    """All continuous maps, as tuples indexed by source point."""
    if space.n == 0:
        yield ()
        return
    for f in itertools.product(range(target.n), repeat=space.n):
        ok = True
        for w in target.opens:
            pre = 0
            for x in range(space.n):
                if (w >> f[x]) & 1:
                    pre |= 1 << x
            if pre not in space.opens:
                ok = False
                break
        if ok:
            yield f


def _check_factorization(refl, target, f):
    """Exactly one continuous map through the quotient reproduces f."""
    k = refl.quotient.n
    solutions = 0
    for g in itertools.product(range(target.n), repeat=k):
        if any(g[refl.point_map[x]] != f[x] for x in range(refl.space.n)):
            continue
        if _is_continuous(refl.quotient, target, g):
            solutions += 1
    if solutions != 1:
        raise CrossCheckError(
            f"map {f} admits {solutions} factorizations through the quotient")


def _is_continuous(space, target, f):
    for w in target.opens:
        pre = 0
        for x in range(space.n):
            if (w >> f[x]) & 1:
                pre |= 1 << x
        if pre not in space.opens:
            return False
    return True


_TOPO_ENUM_LIMIT = 4
_TOPO_NAMES = "abcd"


def enumerate_topologies(n):
    """All labeled topologies on n points, via Alexandrov preorders.

    Each unordered point pair independently carries one of four
    relation states (incomparable, below, above, equivalent); the
    assignments surviving transitivity are exactly the preorders, whose
    up-closed sets are the topologies.  Emission order is the
    lexicographic order of the state vectors.
    """
    if not 0 <= n <= _TOPO_ENUM_LIMIT:
        raise BudgetError(
            f"exhaustive topology enumeration supports 0 <= n <= {_TOPO_ENUM_LIMIT}")
    names = tuple(_TOPO_NAMES[:n])
    if n == 0:
        yield FiniteSpace((), (0,))
        return
    pairs = list(itertools.combinations(range(n), 2))
    for states in itertools.product(range(4), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for (i, j), st in zip(pairs, states):
            if st & 1:
                up[i] |= 1 << j
            if st & 2:
                up[j] |= 1 << i
        if any(up[j] & ~up[i] for i in range(n) for j in bits(up[i])):
            continue
        opens = [m for m in range(1 << n)
                 if all(not up[x] & ~m for x in bits(m))]
        yield FiniteSpace(names, opens)


def enumerate_t0_spaces(n):
    for space in enumerate_topologies(n):
        _, _, t0 = irreducible_closed_sets(space)
        if t0:
            yield space


@dataclass(frozen=True)
class SpacePredicates:
    """Topological side conditions, decided for the finite backend.

    Every finite space is second-countable, locally compact (the least
    open neighborhood of a point is compact), sigma-compact, and
    separable.  Metrizability collapses to discreteness: a finite
    metrizable space is T1, and finite T1 means every subset is open.
    """

    t0: bool
    t1: bool
    quasisober: bool
    sober: bool
    discrete: bool
    second_countable: bool
    locally_compact: bool
    sigma_compact: bool
    separable: bool
    metrizable: bool
    completely_metrizable: bool
    polish: bool

    def as_dict(self):
        return {
            "t0": self.t0,
            "t1": self.t1,
            "quasisober": self.quasisober,
            "sober": self.sober,
            "discrete": self.discrete,
            "second_countable": self.second_countable,
            "locally_compact": self.locally_compact,
            "sigma_compact": self.sigma_compact,
            "separable": self.separable,
            "metrizable": self.metrizable,
            "completely_metrizable": self.completely_metrizable,
            "polish": self.polish,
        }


@dataclass(frozen=True)
class SpaceAnalysis:
    """Everything the measure layer needs about one finite space."""

    space: FiniteSpace
    borel: BorelStructure
    sat_table: tuple
    closure_table: tuple
    compact_masks: frozenset
    compact_saturated: tuple
    compact_borel: tuple
    irreducible_closed: tuple
    predicates: SpacePredicates

    @property
    def borel_masks(self):
        return self.borel.sets

    @property
    def atoms(self):
        return self.borel.atoms


@lru_cache(maxsize=None)
def analysis(space):
    """Precompute and cache the derived structure of a finite space."""
    sat_table = tuple(space.saturate(m) for m in range(space.full + 1))
    closure_table = tuple(space.closure(m) for m in range(space.full + 1))
    compact_masks = frozenset(m for m in range(space.full + 1)
                              if is_compact(space, m))
    qs = tuple(m for m in range(space.full + 1)
               if sat_table[m] == m and m in compact_masks)
    if set(qs) != space.opens:
        # Alexandrov collapse: saturated sets are exactly the opens
        raise CrossCheckError("compact saturated family differs from the opens")
    bs = borel_structure(space)
    kb = tuple(m for m in bs.sets if m in compact_masks)
    irr, quasisober, t0 = irreducible_closed_sets(space)
    t1 = all(space.up[x] == 1 << x for x in range(space.n))
    discrete = len(space.opens) == space.full + 1
    if t1 != discrete:
        raise CrossCheckError("finite T1 space that is not discrete")
    preds = SpacePredicates(
        t0=t0, t1=t1, quasisober=quasisober, sober=quasisober and t0,
        discrete=discrete, second_countable=True, locally_compact=True,
        sigma_compact=True, separable=True, metrizable=discrete,
        completely_metrizable=discrete, polish=discrete)
    return SpaceAnalysis(space, bs, sat_table, closure_table, compact_masks,
                         qs, kb, irr, preds)
