"""Groups with an action of a finite group, 1-cocycles, and H0/H1.

Convention, centralized here and used everywhere else in the package:

* the action is written exponentially, ``a^g = act(g, a)``, and composes as
  a homomorphism into the automorphism group: ``(a^g)^h = a^(hg)``;
* the cocycle law is ``alpha(hg) = alpha(h) * alpha(g)^h``
  (:func:`cocycle_defect`);
* two cocycles are equivalent when ``alpha(g) = a^-1 * beta(g) * a^g`` for
  some base element a (:func:`coboundary_transform`).

These three formulas are mutually consistent: the transform preserves the
law for every (also nonabelian) acting group, equivalence is an honest
equivalence relation, and descent maps ``g -> b^-1 * b^g`` are cocycles.
Class enumeration asserts internally that coboundary orbits stay inside the
enumerated cocycle set, so any convention drift fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DEFAULT_MAX_CANDIDATES, NotStable, SizeLimit, check_buffer
from .groups import FiniteGroup, GroupHom, Subgroup, homs_up_to_conjugacy, subgroup_as_group


class GammaGroup:
    """A base group together with an action of ``gamma`` by automorphisms.

    ``action[g, a]`` is a^g. Validated on construction: the identity acts
    trivially, every row is an automorphism of the base, and rows compose
    compatibly with gamma's multiplication table.
    """

    __slots__ = ("gamma", "base", "action")

    def __init__(self, gamma: FiniteGroup, base: FiniteGroup, action):
        arr = np.asarray(action)
        if arr.shape != (gamma.order, base.order):
            raise ValueError(
                f"action must have shape ({gamma.order}, {base.order}), got {arr.shape}"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= base.order):
            raise ValueError("action entries must be base element indices")
        arr = arr.astype(base.table.dtype, copy=True)
        idx = np.arange(base.order)
        if not np.array_equal(arr[gamma.identity], idx):
            raise ValueError("identity of gamma must act trivially")
        if not np.all(np.sort(arr, axis=1) == idx[None, :]):
            raise ValueError("some action row is not a bijection")
        tbl = base.table
        for g in range(gamma.order):
            row = arr[g]
            if not np.array_equal(row[tbl], tbl[np.ix_(row, row)]):
                raise ValueError(f"action of gamma element {g} is not multiplicative")
        for d in range(gamma.order):
            for g in range(gamma.order):
                if not np.array_equal(arr[int(gamma.table[d, g])], arr[d][arr[g]]):
                    raise ValueError(
                        f"action rows do not compose: gamma pair ({d}, {g})"
                    )
        arr.setflags(write=False)
        self.gamma = gamma
        self.base = base
        self.action = arr

    def act(self, g: int, a: int) -> int:
        """a^g."""
        return int(self.action[g, a])

    def __repr__(self) -> str:
        return f"GammaGroup(|gamma|={self.gamma.order}, |base|={self.base.order})"


def trivial_action(gamma: FiniteGroup, base: FiniteGroup) -> GammaGroup:
    action = np.tile(np.arange(base.order), (gamma.order, 1))
    return GammaGroup(gamma, base, action)


def action_from_gen_images(
    gamma: FiniteGroup, base: FiniteGroup, gen_images: dict[int, tuple[int, ...]]
) -> GammaGroup:
    """Extend automorphisms assigned to gamma's greedy generators to all of gamma."""
    gens = gamma.generators()
    if set(gen_images) != set(gens):
        raise ValueError(f"gen_images must assign exactly the generators {gens}")
    action = np.empty((gamma.order, base.order), dtype=np.int64)
    action[gamma.identity] = np.arange(base.order)
    for g in gens:
        action[g] = np.asarray(gen_images[g])
    for new, prev, gen in gamma.word_tree():
        action[new] = action[prev][action[gen]]
    return GammaGroup(gamma, base, action)


def conjugation_action(gamma: FiniteGroup, base: FiniteGroup, hom: GroupHom) -> GammaGroup:
    """gamma acts on base through a hom c: gamma -> base, by a^g = c(g) a c(g)^-1."""
    if hom.source is not gamma or hom.target is not base:
        raise ValueError("hom must map gamma into base")
    action = np.empty((gamma.order, base.order), dtype=np.int64)
    for g in range(gamma.order):
        c = hom(g)
        action[g] = [base.conj(c, a) for a in range(base.order)]
    return GammaGroup(gamma, base, action)


def inversion_action(gamma: FiniteGroup, base: FiniteGroup, inverting_gens=None) -> GammaGroup:
    """Designated gamma generators act on an abelian base by inversion."""
    if not base.is_abelian():
        raise ValueError("inversion is an automorphism only for abelian bases")
    gens = gamma.generators()
    if inverting_gens is None:
        inverting_gens = gens
    inv_perm = tuple(base.inv(a) for a in range(base.order))
    ident = tuple(range(base.order))
    images = {g: (inv_perm if g in set(inverting_gens) else ident) for g in gens}
    return action_from_gen_images(gamma, base, images)


@dataclass(frozen=True)
class Cocycle:
    """Map gamma -> base satisfying the cocycle law, stored as a value tuple."""

    parent: GammaGroup
    values: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.values[g]


def cocycle_defect(parent: GammaGroup, values, h: int, g: int) -> bool:
    """True when alpha(hg) = alpha(h) * alpha(g)^h holds at the pair (h, g)."""
    gamma, base = parent.gamma, parent.base
    hg = gamma.mul(h, g)
    return values[hg] == base.mul(values[h], parent.act(h, values[g]))


def is_cocycle(parent: GammaGroup, values) -> tuple[bool, tuple[int, int] | None]:
    """Check the law on all pairs; returns (ok, first violating pair)."""
    values = tuple(int(v) for v in values)
    if len(values) != parent.gamma.order:
        raise ValueError("values must be defined on all of gamma")
    for h in range(parent.gamma.order):
        for g in range(parent.gamma.order):
            if not cocycle_defect(parent, values, h, g):
                return False, (h, g)
    return True, None


def make_cocycle(parent: GammaGroup, values) -> Cocycle:
    ok, witness = is_cocycle(parent, values)
    if not ok:
        raise ValueError(f"cocycle law fails at pair {witness}")
    return Cocycle(parent, tuple(int(v) for v in values))


def trivial_cocycle(parent: GammaGroup) -> Cocycle:
    return Cocycle(parent, (parent.base.identity,) * parent.gamma.order)


def coboundary_transform(alpha: Cocycle, a: int) -> Cocycle:
    """The equivalent cocycle g -> a^-1 * alpha(g) * a^g."""
    parent = alpha.parent
    base = parent.base
    ainv = base.inv(a)
    values = tuple(
        base.mul(base.mul(ainv, alpha.values[g]), parent.act(g, a))
        for g in range(parent.gamma.order)
    )
    return Cocycle(parent, values)


def cohomologous(alpha: Cocycle, beta: Cocycle) -> int | None:
    """Exhaustive search for a witness a with alpha = (a . beta); None if none."""
    if alpha.parent is not beta.parent:
        raise ValueError("cocycles must share a parent")
    for a in range(alpha.parent.base.order):
        if coboundary_transform(beta, a).values == alpha.values:
            return a
    return None


def h0(parent: GammaGroup) -> Subgroup:
    """Fixed-point subgroup of the base."""
    idx = np.arange(parent.base.order)
    fixed = np.flatnonzero(np.all(parent.action == idx[None, :], axis=0))
    return Subgroup.from_members(parent.base, fixed.tolist())


class H1Set:
    """Pointed set of cocycle classes.

    ``classes`` holds the lexicographically least cocycle of each class, in
    lexicographic order; ``class_of`` maps every enumerated cocycle's value
    tuple to its class index; ``distinguished`` is the trivial class.
    """

    __slots__ = ("parent", "classes", "class_of", "distinguished")

    def __init__(
        self,
        parent: GammaGroup,
        classes: tuple[Cocycle, ...],
        class_of: dict[tuple[int, ...], int],
        distinguished: int,
    ):
        self.parent = parent
        self.classes = classes
        self.class_of = class_of
        self.distinguished = distinguished

    @property
    def order(self) -> int:
        return len(self.classes)

    @property
    def n_cocycles(self) -> int:
        return len(self.class_of)

    def class_index(self, cocycle: Cocycle) -> int:
        try:
            return self.class_of[cocycle.values]
        except KeyError:
            raise ValueError("cocycle not in the enumerated set") from None

    def __repr__(self) -> str:
        return f"H1Set({self.order} classes, {self.n_cocycles} cocycles)"


def _partition_into_classes(
    parent: GammaGroup, survivor_keys: set[tuple[int, ...]]
) -> H1Set:
    base = parent.base
    table = base.table
    inv_arr = np.array([base.inv(a) for a in range(base.order)])
    act_t = parent.action.T  # [a, g] = a^g
    classes: list[Cocycle] = []
    class_of: dict[tuple[int, ...], int] = {}
    for key in sorted(survivor_keys):
        if key in class_of:
            continue
        rep_arr = np.asarray(key)
        orbit = table[table[inv_arr[:, None], rep_arr[None, :]], act_t]
        ci = len(classes)
        for row in orbit:
            k2 = tuple(int(v) for v in row)
            assert k2 in survivor_keys, (
                "coboundary transform left the cocycle set; action convention bug"
            )
            class_of.setdefault(k2, ci)
        classes.append(Cocycle(parent, key))
    trivial_key = (base.identity,) * parent.gamma.order
    distinguished = class_of[trivial_key]
    return H1Set(parent, tuple(classes), class_of, distinguished)


def h1(parent: GammaGroup, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> H1Set:
    """Enumerate all 1-cocycles and partition them into classes.

    Candidates choose values on a greedy generating set of gamma, extend
    along the BFS word decomposition via the cocycle law, and survive a
    full check of the law on all pairs.
    """
    gamma, base = parent.gamma, parent.base
    ng, na = gamma.order, base.order
    if ng == 1:
        triv = trivial_cocycle(parent)
        return H1Set(parent, (triv,), {triv.values: 0}, 0)
    gens = gamma.generators()
    k = len(gens)
    n_cand = na**k
    if n_cand > max_candidates:
        raise SizeLimit(
            f"{na}^{k} = {n_cand} cocycle candidates exceed bound {max_candidates}"
        )
    check_buffer(n_cand * ng, 8, "cocycle candidate table")
    vals = np.empty((n_cand, ng), dtype=np.int64)
    vals[:, gamma.identity] = base.identity
    idx = np.arange(n_cand)
    for j, g in enumerate(gens):
        vals[:, g] = (idx // na ** (k - 1 - j)) % na
    table = base.table
    act = parent.action
    for new, prev, gen in gamma.word_tree():
        vals[:, new] = table[vals[:, prev], act[prev][vals[:, gen]]]
    ok = np.ones(n_cand, dtype=bool)
    for h in range(ng):
        act_h = act[h]
        for g in range(ng):
            hg = gamma.mul(h, g)
            ok &= vals[:, hg] == table[vals[:, h], act_h[vals[:, g]]]
    survivors = {tuple(int(v) for v in row) for row in vals[ok]}
    return _partition_into_classes(parent, survivors)


def h1_trivial_action(
    gamma: FiniteGroup, base: FiniteGroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> H1Set:
    """H1 for the trivial action, computed as homs modulo target conjugacy.

    Produces the identical H1Set the generic enumeration would: with a
    trivial action the cocycle law is the homomorphism law and equivalence
    is conjugation.
    """
    parent = trivial_action(gamma, base)
    reps = homs_up_to_conjugacy(gamma, base, max_candidates)
    survivors = set()
    for rep in reps:
        for s in range(base.order):
            survivors.add(tuple(base.conj(s, x) for x in rep.image))
    result = _partition_into_classes(parent, survivors)
    assert tuple(c.values for c in result.classes) == tuple(r.image for r in reps)
    return result


@dataclass(frozen=True)
class EquivariantHom:
    """Group hom between the bases of two actions of the same gamma."""

    source: GammaGroup
    target: GammaGroup
    hom: GroupHom

    @staticmethod
    def make(source: GammaGroup, target: GammaGroup, hom: GroupHom) -> EquivariantHom:
        if source.gamma is not target.gamma:
            raise ValueError("source and target must share the same gamma group")
        if hom.source is not source.base or hom.target is not target.base:
            raise ValueError("hom must map source base to target base")
        for g in range(source.gamma.order):
            for a in range(source.base.order):
                if hom(source.act(g, a)) != target.act(g, hom(a)):
                    raise ValueError(
                        f"hom does not commute with the action at (gamma={g}, a={a})"
                    )
        return EquivariantHom(source, target, hom)


def restrict_to_subgroup(
    parent: GammaGroup, sub: Subgroup
) -> tuple[GammaGroup, EquivariantHom]:
    """Action restricted to a stable subgroup, relabeled as its own group.

    Returns the restricted GammaGroup plus the inclusion as an equivariant
    hom. Raises NotStable with a witness when the subgroup is not preserved.
    """
    if sub.parent is not parent.base:
        raise ValueError("subgroup must live in the parent's base group")
    members = set(sub.members)
    for g in range(parent.gamma.order):
        for a in sub.members:
            if parent.act(g, a) not in members:
                raise NotStable(a, g)
    sub_group, embed = subgroup_as_group(sub)
    pos = {m: i for i, m in enumerate(embed)}
    action = np.empty((parent.gamma.order, sub_group.order), dtype=np.int64)
    for g in range(parent.gamma.order):
        action[g] = [pos[parent.act(g, m)] for m in embed]
    restricted = GammaGroup(parent.gamma, sub_group, action)
    inclusion = GroupHom.make(sub_group, parent.base, embed)
    return restricted, EquivariantHom.make(restricted, parent, inclusion)


def induced_map(f: EquivariantHom, h1_source: H1Set, h1_target: H1Set) -> tuple[int, ...]:
    """Class map [alpha] -> [f o alpha]; index i gives the target class of source class i.

    Well-definedness is re-asserted by pushing a second representative
    through whenever the source class has one.
    """
    if h1_source.parent is not f.source or h1_target.parent is not f.target:
        raise ValueError("H1 sets must belong to the hom's source and target")

    def push(values: tuple[int, ...]) -> int:
        mapped = tuple(f.hom(v) for v in values)
        return h1_target.class_of[mapped]

    result = []
    for i, rep in enumerate(h1_source.classes):
        target_class = push(rep.values)
        second = next(
            (k for k, c in h1_source.class_of.items() if c == i and k != rep.values),
            None,
        )
        if second is not None and push(second) != target_class:
            raise AssertionError("induced map not constant on a class (convention bug)")
        result.append(target_class)
    return tuple(result)


def kernel_of(class_map: tuple[int, ...], h1_target: H1Set) -> tuple[int, ...]:
    """Source class indices mapping to the target's distinguished class."""
    return tuple(i for i, c in enumerate(class_map) if c == h1_target.distinguished)
