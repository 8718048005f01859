"""Twisted actions, principal homogeneous spaces, and Shapiro induction.

With the package's action composition (``(g^s)^t = g^(ts)``), a twisted
semiaction ``rho(hg, s) = h^s rho(g, s)``, ``rho(1,1) = 1`` is a twisted
action when ``rho(rho(g, s), t) = rho(g, ts)``. Semiactions are determined
by the vector ``c(s) = rho(1, s)`` via ``rho(g, s) = g^s c(s)``; the action
condition becomes ``c(ts) = c(s)^t c(t)``, and ``s -> c(s)^-1`` translates
twisted actions bijectively into 1-cocycles.

The group of all maps ``f: gamma -> G`` carries the translation action
``f^s(t) = f(ts)``; for a subgroup H and an H-group G, the induced group is
the maps with ``phi(l*s) = phi(s)^l`` for l in H, and evaluation at the
identity restricts its cocycles to H-cocycles of G. Both formulas are pinned
by the verification suites (Shapiro bijection, triviality of H1 of the full
map group), not taken on faith.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cohomology import (
    Cocycle,
    GammaGroup,
    H1Set,
    h1,
    make_cocycle,
)
from .errors import (
    DEFAULT_MAX_CANDIDATES,
    BijectionFailure,
    SizeLimit,
    check_buffer,
)
from .groups import FiniteGroup, Subgroup, make_group, subgroup_as_group


@dataclass(frozen=True)
class TwistedSemiaction:
    """Map rho: G x gamma -> G with rho(hg,s) = h^s rho(g,s) and rho(1,1) = 1."""

    parent: GammaGroup
    rho: tuple[tuple[int, ...], ...]  # rho[g][s]

    @staticmethod
    def make(parent: GammaGroup, rho) -> TwistedSemiaction:
        g_n, s_n = parent.base.order, parent.gamma.order
        table = tuple(tuple(int(x) for x in row) for row in rho)
        if len(table) != g_n or any(len(row) != s_n for row in table):
            raise ValueError("rho must be indexed by (base element, gamma element)")
        if table[parent.base.identity][parent.gamma.identity] != parent.base.identity:
            raise ValueError("rho(1, 1) must be 1")
        for h in range(g_n):
            for g in range(g_n):
                hg = parent.base.mul(h, g)
                for s in range(s_n):
                    if table[hg][s] != parent.base.mul(parent.act(s, h), table[g][s]):
                        raise ValueError(
                            f"semiaction law fails at (h={h}, g={g}, s={s})"
                        )
        return TwistedSemiaction(parent, table)

    @staticmethod
    def from_vector(parent: GammaGroup, vector) -> TwistedSemiaction:
        """Reconstruct the full table from c(s) = rho(1, s)."""
        vec = tuple(int(x) for x in vector)
        if vec[parent.gamma.identity] != parent.base.identity:
            raise ValueError("vector must send the identity of gamma to 1")
        base = parent.base
        rho = tuple(
            tuple(base.mul(parent.act(s, g), vec[s]) for s in range(parent.gamma.order))
            for g in range(base.order)
        )
        return TwistedSemiaction(parent, rho)

    @property
    def vector(self) -> tuple[int, ...]:
        return self.rho[self.parent.base.identity]


def untwisted_action(parent: GammaGroup) -> TwistedSemiaction:
    """rho0(g, s) = g^s."""
    return TwistedSemiaction.from_vector(
        parent, (parent.base.identity,) * parent.gamma.order
    )


def is_twisted_action(
    semiaction: TwistedSemiaction,
) -> tuple[bool, tuple[int, int, int] | None]:
    """Check rho(rho(g,s), t) = rho(g, ts) on every triple."""
    parent, rho = semiaction.parent, semiaction.rho
    for g in range(parent.base.order):
        for s in range(parent.gamma.order):
            for t in range(parent.gamma.order):
                ts = parent.gamma.mul(t, s)
                if rho[rho[g][s]][t] != rho[g][ts]:
                    return False, (g, s, t)
    return True, None


def enumerate_twisted_actions(
    parent: GammaGroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> list[TwistedSemiaction]:
    """Brute-force scan of all semiaction vectors, keeping the genuine actions."""
    g_n, s_n = parent.base.order, parent.gamma.order
    n_vectors = g_n ** (s_n - 1)
    if n_vectors > max_candidates:
        raise SizeLimit(f"{n_vectors} semiaction vectors exceed bound {max_candidates}")
    others = [s for s in range(s_n) if s != parent.gamma.identity]
    found = []
    for choice in itertools.product(range(g_n), repeat=len(others)):
        vec = [parent.base.identity] * s_n
        for s, v in zip(others, choice):
            vec[s] = v
        candidate = TwistedSemiaction.from_vector(parent, vec)
        ok, _ = is_twisted_action(candidate)
        if ok:
            found.append(candidate)
    return found


@dataclass(frozen=True)
class TwistCorrespondence:
    """Bijection between twisted actions and 1-cocycles via alpha(s) = c(s)^-1."""

    parent: GammaGroup
    pairs: tuple[tuple[TwistedSemiaction, Cocycle], ...]
    h1: H1Set


def cocycle_of_twist(twist: TwistedSemiaction) -> Cocycle:
    parent = twist.parent
    values = tuple(parent.base.inv(v) for v in twist.vector)
    return make_cocycle(parent, values)


def twist_of_cocycle(alpha: Cocycle) -> TwistedSemiaction:
    parent = alpha.parent
    vector = tuple(parent.base.inv(v) for v in alpha.values)
    twist = TwistedSemiaction.from_vector(parent, vector)
    ok, witness = is_twisted_action(twist)
    assert ok, f"cocycle translated to a non-action at {witness}"
    return twist


def cocycle_twist_correspondence(
    parent: GammaGroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> TwistCorrespondence:
    """Pair every twisted action with its cocycle; round-trips are asserted."""
    twists = enumerate_twisted_actions(parent, max_candidates)
    h1_set = h1(parent, max_candidates)
    seen = set()
    pairs = []
    for twist in twists:
        alpha = cocycle_of_twist(twist)
        if alpha.values in seen:
            raise BijectionFailure("two twisted actions map to one cocycle")
        seen.add(alpha.values)
        back = twist_of_cocycle(alpha)
        if back.vector != twist.vector:
            raise BijectionFailure("twist -> cocycle -> twist does not round-trip")
        pairs.append((twist, alpha))
    if seen != set(h1_set.class_of):
        raise BijectionFailure(
            f"twisted actions ({len(seen)}) do not match cocycles ({h1_set.n_cocycles})"
        )
    return TwistCorrespondence(parent, tuple(pairs), h1_set)


# ---------------------------------------------------------------------------
# principal homogeneous spaces


@dataclass(frozen=True)
class GSpace:
    """Finite set with commuting G- and gamma-actions.

    Compatibility ``g^s * x^s = (g * x)^s`` and both action laws are checked
    on construction; ``principal`` asserts the G-action is free and
    transitive.
    """

    parent: GammaGroup
    n_points: int
    g_action: tuple[tuple[int, ...], ...]      # [g][x]
    gamma_action: tuple[tuple[int, ...], ...]  # [s][x]
    principal: bool

    @staticmethod
    def make(parent: GammaGroup, g_action, gamma_action, principal: bool) -> GSpace:
        g_act = tuple(tuple(int(x) for x in row) for row in g_action)
        s_act = tuple(tuple(int(x) for x in row) for row in gamma_action)
        n = len(g_act[0]) if g_act else 0
        base, gamma = parent.base, parent.gamma
        for x in range(n):
            if g_act[base.identity][x] != x or s_act[gamma.identity][x] != x:
                raise ValueError("identities must act trivially")
        for g in range(base.order):
            for g2 in range(base.order):
                prod = base.mul(g, g2)
                for x in range(n):
                    if g_act[prod][x] != g_act[g][g_act[g2][x]]:
                        raise ValueError(f"G-action law fails at ({g},{g2},{x})")
        for s in range(gamma.order):
            for t in range(gamma.order):
                ts = gamma.mul(t, s)
                for x in range(n):
                    if s_act[t][s_act[s][x]] != s_act[ts][x]:
                        raise ValueError(f"gamma-action law fails at ({s},{t},{x})")
        for g in range(base.order):
            for s in range(gamma.order):
                gs = parent.act(s, g)
                for x in range(n):
                    if g_act[gs][s_act[s][x]] != s_act[s][g_act[g][x]]:
                        raise ValueError(
                            f"compatibility g^s * x^s = (g*x)^s fails at ({g},{s},{x})"
                        )
        if principal:
            if n != base.order:
                raise ValueError("principal space must have |G| points")
            orbit = {g_act[g][0] for g in range(base.order)}
            if len(orbit) != n:
                raise ValueError("G-action is not free and transitive")
        return GSpace(parent, n, g_act, s_act, principal)


def twisted_space(twist: TwistedSemiaction) -> GSpace:
    """The set G with left translation and the twisted gamma-action."""
    parent = twist.parent
    base = parent.base
    g_action = tuple(tuple(base.mul(g, x) for x in range(base.order)) for g in range(base.order))
    gamma_action = tuple(
        tuple(twist.rho[x][s] for x in range(base.order)) for s in range(parent.gamma.order)
    )
    return GSpace.make(parent, g_action, gamma_action, principal=True)


def phs_isomorphism(p: GSpace, q: GSpace) -> int | None:
    """Image of p's base point under an isomorphism, or None.

    A G-equivariant bijection of principal spaces is determined by the image
    of one point, so the search runs over q's points.
    """
    if p.parent is not q.parent or not (p.principal and q.principal):
        raise ValueError("isomorphism search requires principal spaces over one parent")
    base, gamma = p.parent.base, p.parent.gamma
    transporter = [0] * p.n_points
    for g in range(base.order):
        transporter[p.g_action[g][0]] = g
    for y in range(q.n_points):
        theta = [q.g_action[transporter[x]][y] for x in range(p.n_points)]
        if all(
            theta[p.gamma_action[s][x]] == q.gamma_action[s][theta[x]]
            for s in range(gamma.order)
            for x in range(p.n_points)
        ):
            return y
    return None


@dataclass(frozen=True)
class PhsClassification:
    """One principal homogeneous space per cohomology class, verified distinct."""

    h1: H1Set
    spaces: tuple[GSpace, ...]

    @property
    def n_classes(self) -> int:
        return len(self.spaces)


def classify_phs(
    parent: GammaGroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> PhsClassification:
    """Realize every H1 class as a twisted structure on G and verify the
    classes are pairwise non-isomorphic while cohomologous cocycles give
    isomorphic spaces."""
    h1_set = h1(parent, max_candidates)
    spaces = []
    for rep in h1_set.classes:
        spaces.append(twisted_space(twist_of_cocycle(rep)))
    for i in range(len(spaces)):
        for j in range(i + 1, len(spaces)):
            if phs_isomorphism(spaces[i], spaces[j]) is not None:
                raise BijectionFailure(
                    f"spaces of distinct classes {i} and {j} are isomorphic"
                )
    for i, rep in enumerate(h1_set.classes):
        second = next(
            (k for k, c in h1_set.class_of.items() if c == i and k != rep.values), None
        )
        if second is not None:
            other = twisted_space(twist_of_cocycle(Cocycle(parent, second)))
            if phs_isomorphism(spaces[i], other) is None:
                raise BijectionFailure(
                    f"cohomologous cocycles of class {i} gave non-isomorphic spaces"
                )
    return PhsClassification(h1_set, tuple(spaces))


# ---------------------------------------------------------------------------
# Shapiro induction


@dataclass(frozen=True)
class InducedGammaGroup:
    """Constrained maps gamma -> G with the translation gamma-action.

    ``maps[i]`` is the value tuple of the i-th element; the group is their
    pointwise product and ``gamma_group`` carries the action
    ``phi^s(t) = phi(ts)``.
    """

    gamma: FiniteGroup
    h_sub: Subgroup
    base_action: GammaGroup
    maps: tuple[tuple[int, ...], ...]
    gamma_group: GammaGroup


def _check_h_action(gamma: FiniteGroup, h_sub: Subgroup, g_action: GammaGroup) -> FiniteGroup:
    h_group, embed = subgroup_as_group(h_sub)
    if g_action.gamma.order != h_group.order or not np.array_equal(
        g_action.gamma.table, h_group.table
    ):
        raise ValueError(
            "g_action must be an action of the canonical relabeled subgroup "
            "(build it over subgroup_as_group(h_sub)[0])"
        )
    return h_group


def shapiro_induce(
    gamma: FiniteGroup,
    h_sub: Subgroup,
    g_action: GammaGroup,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> InducedGammaGroup:
    """Group of maps phi with phi(l*s) = phi(s)^l for l in H, as a gamma-group."""
    if h_sub.parent is not gamma:
        raise ValueError("h_sub must be a subgroup of gamma")
    _check_h_action(gamma, h_sub, g_action)
    g = g_action.base
    ng = gamma.order
    h_pos = {m: i for i, m in enumerate(h_sub.members)}
    # right-coset structure: H*s; each map is free on the lex-least representatives
    coset_rep = [-1] * ng
    reps: list[int] = []
    for s in range(ng):
        if coset_rep[s] >= 0:
            continue
        reps.append(s)
        for m in h_sub.members:
            coset_rep[gamma.mul(m, s)] = s
    index = ng // h_sub.order
    n_maps = g.order**index
    if n_maps > max_candidates:
        raise SizeLimit(f"|G|^(index) = {n_maps} induced elements exceed bound")
    check_buffer(n_maps * ng, 8, "induced map table")
    rep_col = {r: i for i, r in enumerate(reps)}
    maps_arr = np.empty((n_maps, ng), dtype=np.int64)
    free = np.array(list(itertools.product(range(g.order), repeat=index)), dtype=np.int64)
    for s in range(ng):
        r = coset_rep[s]
        # s = l * r for a unique l in H
        l = next(m for m in h_sub.members if gamma.mul(m, r) == s)
        maps_arr[:, s] = g_action.action[h_pos[l]][free[:, rep_col[r]]]
    # deterministic element order: lexicographic by value tuple
    order_key = np.lexsort(maps_arr.T[::-1])
    maps_arr = maps_arr[order_key]
    radix = g.order ** np.arange(ng - 1, -1, -1, dtype=np.int64)
    encodings = maps_arr @ radix
    assert np.all(np.diff(encodings) > 0), "induced map set has duplicates"

    def locate(arr: np.ndarray) -> np.ndarray:
        enc = arr @ radix
        pos = np.searchsorted(encodings, enc)
        if np.any(pos >= len(encodings)) or np.any(encodings[pos] != enc):
            raise AssertionError("operation left the induced map set")
        return pos

    table = np.empty((n_maps, n_maps), dtype=np.int64)
    for i in range(n_maps):
        table[i] = locate(g.table[maps_arr[i][None, :], maps_arr])
    group = make_group(table)
    action = np.empty((ng, n_maps), dtype=np.int64)
    for s in range(ng):
        perm = [gamma.mul(t, s) for t in range(ng)]
        action[s] = locate(maps_arr[:, perm])
    gamma_group = GammaGroup(gamma, group, action)
    maps = tuple(tuple(int(v) for v in row) for row in maps_arr)
    return InducedGammaGroup(gamma, h_sub, g_action, maps, gamma_group)


def map_group(
    gamma: FiniteGroup, g: FiniteGroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> InducedGammaGroup:
    """The full map group (induction from the trivial subgroup)."""
    h_sub = Subgroup(gamma, (gamma.identity,))
    h_group, _ = subgroup_as_group(h_sub)
    trivial = GammaGroup(h_group, g, np.arange(g.order)[None, :])
    return shapiro_induce(gamma, h_sub, trivial, max_candidates)


@dataclass(frozen=True)
class ShapiroReport:
    induced: InducedGammaGroup
    h1_induced: H1Set
    h1_subgroup: H1Set
    class_map: tuple[int, ...]  # induced class index -> subgroup class index


def shapiro_verify(
    gamma: FiniteGroup,
    h_sub: Subgroup,
    g_action: GammaGroup,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> ShapiroReport:
    """Exhibit H1(gamma, induced) = H1(H, G) through evaluation at the identity."""
    induced = shapiro_induce(gamma, h_sub, g_action, max_candidates)
    h1_big = h1(induced.gamma_group, max_candidates)
    h1_small = h1(g_action, max_candidates)
    h_elements = h_sub.members  # embedding order of the canonical relabeling

    def restrict(values: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(induced.maps[values[m]][gamma.identity] for m in h_elements)

    class_map = []
    for i, rep in enumerate(h1_big.classes):
        restricted = make_cocycle(g_action, restrict(rep.values))
        target = h1_small.class_index(restricted)
        second = next(
            (k for k, c in h1_big.class_of.items() if c == i and k != rep.values), None
        )
        if second is not None:
            other = make_cocycle(g_action, restrict(second))
            if h1_small.class_index(other) != target:
                raise BijectionFailure("restriction is not constant on a class")
        class_map.append(target)
    if sorted(class_map) != list(range(h1_small.order)):
        raise BijectionFailure(
            f"restriction maps {h1_big.order} classes onto {sorted(set(class_map))} "
            f"of {h1_small.order}"
        )
    return ShapiroReport(induced, h1_big, h1_small, tuple(class_map))
