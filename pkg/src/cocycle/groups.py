"""Finite groups as multiplication tables, with 0-based element indices.

Construction validates the group axioms: exhaustively for order <= 64,
by a fixed-seed sample of 10**5 triples above that. Named constructions
(cyclic, symmetric, dihedral) emit elements in a documented deterministic
order so downstream fixtures are stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    DEFAULT_MAX_CANDIDATES,
    DEFAULT_MAX_GROUP_ORDER,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotNormal,
    SizeLimit,
    check_buffer,
)

ASSOCIATIVITY_EXHAUSTIVE_LIMIT = 64
ASSOCIATIVITY_SAMPLES = 100_000
_ASSOCIATIVITY_SEED = 917

Perm = tuple[int, ...]


def _table_dtype(order: int) -> np.dtype:
    if order <= 0xFF:
        return np.dtype(np.uint8)
    if order <= 0xFFFF:
        return np.dtype(np.uint16)
    return np.dtype(np.int32)


class FiniteGroup:
    """Immutable finite group backed by a full multiplication table.

    ``table[a, b]`` is the index of the product a*b. Optional ``labels``
    give a human-readable name per element; optional ``perms`` attach a
    permutation array per element (populated for symmetric groups).
    """

    __slots__ = ("order", "table", "identity", "labels", "perms", "_inv", "_gens")

    def __init__(
        self,
        table: np.ndarray,
        identity: int,
        inverses: np.ndarray,
        labels: tuple[str, ...] | None,
        perms: tuple[Perm, ...] | None,
    ):
        self.order = int(table.shape[0])
        self.table = table
        self.identity = int(identity)
        self.labels = labels
        self.perms = perms
        self._inv = inverses
        self._gens: tuple[int, ...] | None = None

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def conj(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return int(self.table[self.table[g, a], self._inv[g]])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(a), -k)
        result = self.identity
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def generated_subgroup(self, seeds) -> tuple[int, ...]:
        """Sorted element indices of the subgroup generated by ``seeds``."""
        members = {self.identity}
        frontier = [self.identity]
        seeds = list(seeds)
        while frontier:
            new = []
            for x in frontier:
                for s in seeds:
                    y = self.mul(x, s)
                    if y not in members:
                        members.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(members))

    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly add the smallest index outside."""
        if self._gens is not None:
            return self._gens
        gens: list[int] = []
        span = {self.identity}
        while len(span) < self.order:
            nxt = min(x for x in range(self.order) if x not in span)
            gens.append(nxt)
            span = set(self.generated_subgroup(gens))
        self._gens = tuple(gens)
        return self._gens

    def word_tree(self) -> list[tuple[int, int, int]]:
        """BFS decomposition: triples (new, prev, gen) with new = prev * gen.

        Every non-identity element appears exactly once as ``new``; ``prev``
        always appears earlier (or is the identity). Deterministic.
        """
        gens = self.generators()
        seen = {self.identity}
        tree: list[tuple[int, int, int]] = []
        frontier = [self.identity]
        while frontier:
            nxt: list[int] = []
            for prev in frontier:
                for g in gens:
                    new = self.mul(prev, g)
                    if new not in seen:
                        seen.add(new)
                        tree.append((new, prev, g))
                        nxt.append(new)
            frontier = nxt
        return tree

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    idx = np.arange(n)
    rows = np.all(table == idx[None, :], axis=1)
    cols = np.all(table == idx[:, None], axis=0)
    hits = np.flatnonzero(rows & cols)
    if hits.size == 0:
        raise NoIdentity("no two-sided identity element in table")
    return int(hits[0])


def _check_associativity(table: np.ndarray) -> None:
    n = table.shape[0]
    if n <= ASSOCIATIVITY_EXHAUSTIVE_LIMIT:
        left = table[table, :]          # left[a,b,c] = (a*b)*c
        right = table[:, table]         # right[a,b,c] = a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = (int(v) for v in bad[0])
            raise NotAssociative(a, b, c)
        return
    rng = np.random.default_rng(_ASSOCIATIVITY_SEED)
    trips = rng.integers(0, n, size=(ASSOCIATIVITY_SAMPLES, 3))
    a, b, c = trips[:, 0], trips[:, 1], trips[:, 2]
    mismatch = np.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
    if mismatch.size:
        i = int(mismatch[0])
        raise NotAssociative(int(a[i]), int(b[i]), int(c[i]))


def make_group(
    table,
    labels: tuple[str, ...] | None = None,
    perms: tuple[Perm, ...] | None = None,
) -> FiniteGroup:
    """Validate a multiplication table and wrap it as a FiniteGroup."""
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValueError(f"table must be a nonempty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise ValueError("table entries must be element indices in range")
    check_buffer(n * n, arr.itemsize, "group multiplication table")
    arr = arr.astype(_table_dtype(n), copy=True)
    arr.setflags(write=False)
    identity = _find_identity(arr)
    _check_associativity(arr)
    inverses = np.empty(n, dtype=arr.dtype)
    for a in range(n):
        hits = np.flatnonzero(arr[a] == identity)
        if hits.size == 0 or arr[int(hits[0]), a] != identity:
            raise NoInverse(a)
        inverses[a] = hits[0]
    if labels is not None and len(labels) != n:
        raise ValueError("labels length must match group order")
    return FiniteGroup(arr, identity, inverses, labels, perms)


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def cyclic_group(n: int) -> FiniteGroup:
    """Z/n with elements 0..n-1 (rotation k has index k) and rotation labels."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = tuple(f"r{k}" for k in range(n))
    return make_group(table, labels)


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Composite permutation: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(q)))


def perm_sign(p: Perm) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def perm_cycle_type(p: Perm) -> tuple[int, ...]:
    """Cycle lengths sorted descending."""
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _perm_label(p: Perm) -> str:
    seen = [False] * len(p)
    parts = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) if parts else "()"


def symmetric_group(m: int, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> FiniteGroup:
    """S_m with elements in lexicographic permutation order (identity first)."""
    if m < 1:
        raise ValueError("symmetric group degree must be >= 1")
    fact = reduce(lambda a, b: a * b, range(1, m + 1), 1)
    if fact > max_order:
        raise SizeLimit(f"|S_{m}| = {fact} exceeds bound {max_order}")
    perms = tuple(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((fact, fact), dtype=_table_dtype(fact))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[perm_mul(p, q)]
    labels = tuple(_perm_label(p) for p in perms)
    return make_group(table, labels, perms)


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n; rotations r0..r{n-1} at indices 0..n-1, reflections after.

    Element (eps, i) = s^eps r^i sits at index eps*n + i; relation s r s = r^-1.
    """
    if n < 1:
        raise ValueError("dihedral group parameter must be >= 1")
    order = 2 * n
    table = np.empty((order, order), dtype=_table_dtype(order))
    for e1 in (0, 1):
        for i1 in range(n):
            for e2 in (0, 1):
                for i2 in range(n):
                    e = e1 ^ e2
                    i = (i2 + (i1 if e2 == 0 else -i1)) % n
                    table[e1 * n + i1, e2 * n + i2] = e * n + i
    labels = tuple(f"r{i}" for i in range(n)) + tuple(f"sr{i}" for i in range(n))
    return make_group(table, labels)


def quaternion_group() -> FiniteGroup:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k in that order."""
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    idx = {n: t for t, n in enumerate(names)}
    basic = {
        ("1", "1"): "1",
        ("1", "i"): "i", ("i", "1"): "i",
        ("1", "j"): "j", ("j", "1"): "j",
        ("1", "k"): "k", ("k", "1"): "k",
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }

    def mul(a: str, b: str) -> str:
        sign = a.startswith("-") ^ b.startswith("-")
        res = basic[(a.lstrip("-"), b.lstrip("-"))]
        if res.startswith("-"):
            sign = not sign
            res = res[1:]
        return ("-" if sign else "") + res

    table = [[idx[mul(a, b)] for b in names] for a in names]
    return make_group(table, names)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with element (a, b) at index a*|H| + b."""
    ng, nh = g.order, h.order
    ai, bi = np.divmod(np.arange(ng * nh), nh)
    table = g.table[np.ix_(ai, ai)].astype(np.int64) * nh + h.table[np.ix_(bi, bi)]
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a, b in zip(ai, bi))
    return make_group(table, labels)


@dataclass(frozen=True)
class Subgroup:
    """Subset of a parent group, closed under product and inverse."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @staticmethod
    def from_members(parent: FiniteGroup, members) -> Subgroup:
        mset = set(int(x) for x in members)
        if parent.identity not in mset:
            raise ValueError("subgroup must contain the identity")
        for a in mset:
            if parent.inv(a) not in mset:
                raise ValueError(f"subgroup not closed under inverse at element {a}")
            for b in mset:
                if parent.mul(a, b) not in mset:
                    raise ValueError(f"subgroup not closed under product at ({a}, {b})")
        return Subgroup(parent, tuple(sorted(mset)))

    @property
    def order(self) -> int:
        return len(self.members)

    def contains(self, a: int) -> bool:
        return a in set(self.members)

    def is_normal(self) -> bool:
        mset = set(self.members)
        for g in self.parent.elements():
            for a in self.members:
                if self.parent.conj(g, a) not in mset:
                    return False
        return True


def whole_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(range(g.order)))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,))


def subgroup_as_group(sub: Subgroup) -> tuple[FiniteGroup, tuple[int, ...]]:
    """Relabel a subgroup as its own group; returns (group, embedding).

    ``embedding[i]`` is the parent index of the relabeled element i; elements
    keep the sorted-parent-index order.
    """
    members = sub.members
    pos = {m: i for i, m in enumerate(members)}
    n = len(members)
    table = np.empty((n, n), dtype=_table_dtype(n))
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            table[i, j] = pos[sub.parent.mul(a, b)]
    labels = None
    if sub.parent.labels is not None:
        labels = tuple(sub.parent.labels[m] for m in members)
    return make_group(table, labels), members


def all_subgroups(g: FiniteGroup, max_gens: int = 3) -> list[Subgroup]:
    """All subgroups generated by up to ``max_gens`` elements.

    Complete for every group of order <= 24 used in the test corpus (their
    subgroups are all at most 3-generated).
    """
    found: dict[tuple[int, ...], Subgroup] = {}
    ident = (g.identity,)
    found[ident] = Subgroup(g, ident)
    for size in range(1, max_gens + 1):
        for seeds in itertools.combinations(range(g.order), size):
            members = g.generated_subgroup(seeds)
            if members not in found:
                found[members] = Subgroup(g, members)
    return sorted(found.values(), key=lambda s: (s.order, s.members))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism between finite groups, stored as an image array."""

    source: FiniteGroup
    target: FiniteGroup
    image: tuple[int, ...]

    @staticmethod
    def make(source: FiniteGroup, target: FiniteGroup, image) -> GroupHom:
        img = tuple(int(x) for x in image)
        if len(img) != source.order:
            raise ValueError("image length must match source order")
        if img[source.identity] != target.identity:
            raise ValueError("homomorphism must send identity to identity")
        for a in source.elements():
            for b in source.elements():
                if img[source.mul(a, b)] != target.mul(img[a], img[b]):
                    raise ValueError(f"homomorphism law fails at pair ({a}, {b})")
        return GroupHom(source, target, img)

    def __call__(self, a: int) -> int:
        return self.image[a]

    def kernel(self) -> Subgroup:
        members = tuple(
            a for a in self.source.elements() if self.image[a] == self.target.identity
        )
        return Subgroup(self.source, members)

    def image_subgroup(self) -> Subgroup:
        return Subgroup(self.target, tuple(sorted(set(self.image))))

    def is_injective(self) -> bool:
        return len(set(self.image)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.target.order

    def compose(self, inner: GroupHom) -> GroupHom:
        """self o inner."""
        if inner.target is not self.source:
            raise ValueError("compose requires inner.target == self.source")
        return GroupHom(
            inner.source, self.target, tuple(self.image[x] for x in inner.image)
        )


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(range(g.order)))


def enumerate_homs(
    source: FiniteGroup,
    target: FiniteGroup,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> list[GroupHom]:
    """All homomorphisms source -> target, ordered by image tuple.

    Candidates assign target elements to a greedy generating set of the
    source, extend along the BFS word tree, then verify the homomorphism
    law on every pair.
    """
    gens = source.generators()
    k = len(gens)
    n_candidates = target.order**k
    if n_candidates > max_candidates:
        raise SizeLimit(
            f"{target.order}^{k} = {n_candidates} hom candidates exceed bound {max_candidates}"
        )
    tree = source.word_tree()
    homs: list[GroupHom] = []
    for assignment in itertools.product(range(target.order), repeat=k):
        image = [0] * source.order
        image[source.identity] = target.identity
        gen_img = dict(zip(gens, assignment))
        for new, prev, gen in tree:
            image[new] = target.mul(image[prev], gen_img[gen])
        ok = True
        for a in source.elements():
            for b in source.elements():
                if image[source.mul(a, b)] != target.mul(image[a], image[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            homs.append(GroupHom(source, target, tuple(image)))
    homs.sort(key=lambda h: h.image)
    return homs


def conjugate_hom(hom: GroupHom, s: int) -> GroupHom:
    """s * hom(.) * s^-1 in the target."""
    t = hom.target
    return GroupHom(hom.source, t, tuple(t.conj(s, x) for x in hom.image))


def homs_up_to_conjugacy(
    source: FiniteGroup,
    target: FiniteGroup,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> list[GroupHom]:
    """One lexicographically-least representative per target-conjugacy orbit."""
    homs = enumerate_homs(source, target, max_candidates)
    hom_keys = {h.image for h in homs}
    reps: list[GroupHom] = []
    assigned: set[tuple[int, ...]] = set()
    for hom in homs:  # already sorted, so first hit per orbit is the least
        if hom.image in assigned:
            continue
        orbit = set()
        for s in target.elements():
            conj = conjugate_hom(hom, s)
            assert conj.image in hom_keys, "conjugate of a hom must be a hom"
            orbit.add(conj.image)
        assigned |= orbit
        reps.append(hom)
    return reps


def quotient_group(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Coset group G/N plus the canonical projection; N must be normal."""
    if n.parent is not g:
        raise ValueError("subgroup parent mismatch")
    mset = set(n.members)
    for x in g.elements():
        for a in n.members:
            if g.conj(x, a) not in mset:
                raise NotNormal(x, a)
    coset_of = [-1] * g.order
    coset_reps: list[int] = []
    for x in g.elements():
        if coset_of[x] >= 0:
            continue
        idx = len(coset_reps)
        coset_reps.append(x)
        for a in n.members:
            coset_of[g.mul(x, a)] = idx
    q = len(coset_reps)
    table = np.empty((q, q), dtype=_table_dtype(q))
    for i, x in enumerate(coset_reps):
        for j, y in enumerate(coset_reps):
            table[i, j] = coset_of[g.mul(x, y)]
    labels = tuple(f"[{g.label(x)}]" for x in coset_reps)
    quot = make_group(table, labels)
    proj = GroupHom.make(g, quot, tuple(coset_of))
    return quot, proj


def automorphism_group(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms as permutations of element indices, sorted.

    Brute force over generator images with order filtering; meant for the
    small groups of the verification corpora.
    """
    gens = g.generators()
    tree = g.word_tree()
    by_order: dict[int, list[int]] = {}
    for b in g.elements():
        by_order.setdefault(g.element_order(b), []).append(b)
    pools = [by_order[g.element_order(x)] for x in gens]
    autos = []
    for assignment in itertools.product(*pools):
        image = [0] * g.order
        image[g.identity] = g.identity
        gen_img = dict(zip(gens, assignment))
        for new, prev, gen in tree:
            image[new] = g.mul(image[prev], gen_img[gen])
        if len(set(image)) != g.order:
            continue
        ok = True
        for a in g.elements():
            for b in g.elements():
                if image[g.mul(a, b)] != g.mul(image[a], image[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            autos.append(tuple(image))
    return sorted(autos)


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> GroupHom | None:
    """Search for an isomorphism by assigning images to generators."""
    if g.order != h.order:
        return None
    if sorted(g.element_order(a) for a in g.elements()) != sorted(
        h.element_order(b) for b in h.elements()
    ):
        return None
    gens = g.generators()
    tree = g.word_tree()
    by_order: dict[int, list[int]] = {}
    for b in h.elements():
        by_order.setdefault(h.element_order(b), []).append(b)
    pools = [by_order.get(g.element_order(x), []) for x in gens]
    for assignment in itertools.product(*pools):
        image = [0] * g.order
        image[g.identity] = h.identity
        gen_img = dict(zip(gens, assignment))
        for new, prev, gen in tree:
            image[new] = h.mul(image[prev], gen_img[gen])
        if len(set(image)) != g.order:
            continue
        ok = True
        for a in g.elements():
            for b in g.elements():
                if image[g.mul(a, b)] != h.mul(image[a], image[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return GroupHom(g, h, tuple(image))
    return None
