"""Fixed cosets, the orbit-kernel bijection, six-term exactness, and H2.

Degree-two machinery works over a presentation of an abelian module by
invariant factors. With the action convention of :mod:`cocycle.cohomology`
(``(a^g)^h = a^(hg)``, written additively below as a matrix action
``g . x = M_g x``), the inhomogeneous differentials are

    (d0 a)(g)      = g.a - a
    (d1 f)(g, h)   = g.f(h) - f(gh) + f(g)
    (d2 c)(g, h, k) = g.c(h, k) - c(gh, k) + c(g, hk) - c(g, h)

ker d1 / im d0 reproduces the pointed-set H1 for abelian coefficients, and
a set-theoretic section beta of a central quotient B -> B/A with beta(e) = e
turns a quotient 1-cocycle gamma into

    c(h, g) = beta(hg)^-1 * beta(h) * beta(g)^h  in  A,

which lands in ker d2: expanding u(g) u(h)^g u(k)^{gh} in the two bracketed
orders gives c(gh,k) + c(g,h) = g.c(h,k) + c(g,hk) since A is central. The
delta class is lift-independent (asserted per call with a second section)
and exact at H1(B/A) (asserted in the verification suites).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cohomology import (
    Cocycle,
    EquivariantHom,
    GammaGroup,
    H1Set,
    h0,
    h1,
    induced_map,
    kernel_of,
    make_cocycle,
    restrict_to_subgroup,
)
from .errors import (
    DEFAULT_MAX_CANDIDATES,
    DEFAULT_MAX_SNF_ENTRIES,
    BijectionFailure,
    SizeLimit,
)
from .groups import FiniteGroup, Subgroup, quotient_group
from .snf import IntegerSolver, cokernel_invariant_factors, kernel_basis, solve_integer


# ---------------------------------------------------------------------------
# coset spaces and the orbit-kernel bijection


@dataclass(frozen=True)
class CosetSpace:
    """Left cosets bA of a stable subgroup, with the induced gamma action."""

    parent: GammaGroup
    sub: Subgroup
    cosets: tuple[tuple[int, ...], ...]
    coset_of: tuple[int, ...]
    gamma_action: tuple[tuple[int, ...], ...]  # [g][coset] -> coset
    fixed: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]  # B^Gamma-orbit partition of `fixed`
    restricted: GammaGroup
    inclusion: EquivariantHom


def fixed_cosets(parent: GammaGroup, sub: Subgroup) -> CosetSpace:
    """All gamma-fixed cosets bA and their orbit partition under B^Gamma."""
    restricted, inclusion = restrict_to_subgroup(parent, sub)  # raises NotStable
    b = parent.base
    coset_of = [-1] * b.order
    cosets: list[tuple[int, ...]] = []
    for x in range(b.order):
        if coset_of[x] >= 0:
            continue
        idx = len(cosets)
        members = tuple(sorted(b.mul(x, a) for a in sub.members))
        cosets.append(members)
        for m in members:
            coset_of[m] = idx
    ng = parent.gamma.order
    gamma_action = []
    for g in range(ng):
        row = tuple(coset_of[parent.act(g, c[0])] for c in cosets)
        gamma_action.append(row)
    fixed = tuple(
        i for i in range(len(cosets)) if all(gamma_action[g][i] == i for g in range(ng))
    )
    fixed_set = set(fixed)
    invariants = h0(parent).members
    orbits: list[tuple[int, ...]] = []
    assigned: set[int] = set()
    for i in fixed:
        if i in assigned:
            continue
        orbit = set()
        for c in invariants:
            j = coset_of[b.mul(c, cosets[i][0])]
            assert j in fixed_set, "translation by an invariant left the fixed cosets"
            orbit.add(j)
        orbits.append(tuple(sorted(orbit)))
        assigned |= orbit
    return CosetSpace(
        parent,
        sub,
        tuple(cosets),
        tuple(coset_of),
        tuple(gamma_action),
        fixed,
        tuple(orbits),
        restricted,
        inclusion,
    )


def coset_to_cocycle(space: CosetSpace, coset_index: int) -> Cocycle:
    """Descent cocycle g -> b^-1 * b^g of a fixed coset, valued in A."""
    if coset_index not in set(space.fixed):
        raise ValueError(f"coset {coset_index} is not gamma-fixed")
    parent, b = space.parent, space.parent.base
    rep = space.cosets[coset_index][0]
    rep_inv = b.inv(rep)
    embed = space.inclusion.hom.image
    pos = {m: i for i, m in enumerate(embed)}
    values = []
    for g in range(parent.gamma.order):
        val = b.mul(rep_inv, parent.act(g, rep))
        assert val in pos, "descent value escaped the subgroup (stability bug)"
        values.append(pos[val])
    return make_cocycle(space.restricted, tuple(values))


@dataclass(frozen=True)
class OrbitKernelReport:
    """Verified bijection between coset orbits and kernel classes."""

    space: CosetSpace
    h1_sub: H1Set
    h1_parent: H1Set
    kernel_classes: tuple[int, ...]
    pairs: tuple[tuple[tuple[int, ...], int], ...]  # (orbit, class index in H1(A))

    @property
    def n_orbits(self) -> int:
        return len(self.space.orbits)


def orbit_kernel_bijection(
    parent: GammaGroup, sub: Subgroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> OrbitKernelReport:
    """Match (B/A)^Gamma / B^Gamma with ker(H1(A) -> H1(B)), both sides computed
    independently; a mismatch raises BijectionFailure."""
    space = fixed_cosets(parent, sub)
    h1_sub = h1(space.restricted, max_candidates)
    h1_parent = h1(parent, max_candidates)
    cmap = induced_map(space.inclusion, h1_sub, h1_parent)
    kernel = kernel_of(cmap, h1_parent)
    pairs = []
    seen: dict[int, tuple[int, ...]] = {}
    for orbit in space.orbits:
        classes = {h1_sub.class_index(coset_to_cocycle(space, i)) for i in orbit}
        if len(classes) != 1:
            raise BijectionFailure(
                f"orbit {orbit} maps to several classes {sorted(classes)}"
            )
        cls = classes.pop()
        if cls in seen:
            raise BijectionFailure(
                f"orbits {seen[cls]} and {orbit} both map to class {cls}"
            )
        if cls not in set(kernel):
            raise BijectionFailure(f"orbit {orbit} maps to class {cls} outside the kernel")
        seen[cls] = orbit
        pairs.append((orbit, cls))
    missing = [c for c in kernel if c not in seen]
    if missing:
        raise BijectionFailure(f"kernel classes {missing} not hit by any fixed coset")
    return OrbitKernelReport(space, h1_sub, h1_parent, kernel, tuple(pairs))


# ---------------------------------------------------------------------------
# quotients and the six-term sequence


def quotient_gamma_group(
    parent: GammaGroup, sub: Subgroup
) -> tuple[GammaGroup, EquivariantHom]:
    """B/A with the induced action (bA)^g = b^g A; A must be normal and stable."""
    restrict_to_subgroup(parent, sub)  # stability check (NotStable)
    quot, proj = quotient_group(parent.base, sub)  # normality check (NotNormal)
    reps = [proj.image.index(c) for c in range(quot.order)]
    action = np.empty((parent.gamma.order, quot.order), dtype=np.int64)
    for g in range(parent.gamma.order):
        action[g] = [proj(parent.act(g, r)) for r in reps]
    quotient = GammaGroup(parent.gamma, quot, action)
    return quotient, EquivariantHom.make(parent, quotient, proj)


@dataclass(frozen=True)
class SixTermReport:
    nodes: tuple[str, ...]
    ok: tuple[bool, ...]
    details: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return all(self.ok)

    @property
    def first_failure(self) -> str | None:
        for name, good in zip(self.nodes, self.ok):
            if not good:
                return name
        return None


def six_term_check(
    parent: GammaGroup, sub: Subgroup, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> SixTermReport:
    """Pointed-set exactness of 0 -> A^G -> B^G -> (B/A)^G -> H1(A) -> H1(B) -> H1(B/A)
    at the four interior nodes: image = preimage of the distinguished point."""
    space = fixed_cosets(parent, sub)
    quotient, proj = quotient_gamma_group(parent, sub)
    b = parent.base
    b_fixed = h0(parent).members
    a_fixed_embedded = {space.inclusion.hom(a) for a in h0(space.restricted).members}
    h1_sub = h1(space.restricted, max_candidates)
    h1_parent = h1(parent, max_candidates)
    h1_quot = h1(quotient, max_candidates)
    inc_map = induced_map(space.inclusion, h1_sub, h1_parent)
    proj_map = induced_map(proj, h1_parent, h1_quot)

    nodes, oks, details = [], [], []

    # node B^Gamma: im(A^G) = ker(B^G -> (B/A)^G)
    identity_coset = space.coset_of[b.identity]
    ker1 = {x for x in b_fixed if space.coset_of[x] == identity_coset}
    nodes.append("B^Gamma")
    oks.append(ker1 == a_fixed_embedded)
    details.append(f"image {sorted(a_fixed_embedded)} vs kernel {sorted(ker1)}")

    # node (B/A)^Gamma: im(B^G) = delta0-preimage of the trivial H1(A) class
    image2 = {space.coset_of[x] for x in b_fixed}
    ker2 = {
        i
        for i in space.fixed
        if h1_sub.class_index(coset_to_cocycle(space, i)) == h1_sub.distinguished
    }
    nodes.append("(B/A)^Gamma")
    oks.append(image2 == ker2)
    details.append(f"image {sorted(image2)} vs kernel {sorted(ker2)}")

    # node H1(A): im(delta0) = ker(H1(A) -> H1(B))
    image3 = {h1_sub.class_index(coset_to_cocycle(space, i)) for i in space.fixed}
    ker3 = set(kernel_of(inc_map, h1_parent))
    nodes.append("H1(A)")
    oks.append(image3 == ker3)
    details.append(f"image {sorted(image3)} vs kernel {sorted(ker3)}")

    # node H1(B): im(H1(A)) = ker(H1(B) -> H1(B/A))
    image4 = set(inc_map)
    ker4 = set(kernel_of(proj_map, h1_quot))
    nodes.append("H1(B)")
    oks.append(image4 == ker4)
    details.append(f"image {sorted(image4)} vs kernel {sorted(ker4)}")

    return SixTermReport(tuple(nodes), tuple(oks), tuple(details))


# ---------------------------------------------------------------------------
# abelian presentations and H2


@dataclass(frozen=True)
class AbelianPresentation:
    """Abelian module given by invariant factors and per-element action matrices.

    The module is Z/n_1 + ... + Z/n_k with n_1 | n_2 | ... | n_k (all > 1);
    ``matrices[g]`` acts on coordinate columns. Validated: the identity acts
    as the identity matrix, matrices compose with the group table modulo the
    factors, and each matrix respects coordinate orders
    (n_t * M[s][t] == 0 mod n_s).
    """

    gamma: FiniteGroup
    factors: tuple[int, ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        k = len(self.factors)
        if any(f <= 1 for f in self.factors):
            raise ValueError("invariant factors must all exceed 1")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        if len(self.matrices) != self.gamma.order:
            raise ValueError("one action matrix per gamma element required")
        for g, mat in enumerate(self.matrices):
            if len(mat) != k or any(len(row) != k for row in mat):
                raise ValueError(f"action matrix of gamma element {g} has wrong shape")
            for s in range(k):
                for t in range(k):
                    if (self.factors[t] * mat[s][t]) % self.factors[s] != 0:
                        raise ValueError(
                            f"matrix of gamma element {g} does not respect orders at ({s},{t})"
                        )
        ident = self.matrices[self.gamma.identity]
        for s in range(k):
            for t in range(k):
                if (ident[s][t] - (1 if s == t else 0)) % self.factors[s] != 0:
                    raise ValueError("identity of gamma must act as the identity matrix")
        for d in range(self.gamma.order):
            for g in range(self.gamma.order):
                comp = _mat_mod_mul(self.matrices[d], self.matrices[g], self.factors)
                expect = _mat_mod(self.matrices[int(self.gamma.table[d, g])], self.factors)
                if comp != expect:
                    raise ValueError(f"matrices do not compose at gamma pair ({d},{g})")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def module_order(self) -> int:
        order = 1
        for f in self.factors:
            order *= f
        return order

    def apply(self, g: int, vec: tuple[int, ...]) -> tuple[int, ...]:
        mat = self.matrices[g]
        return tuple(
            sum(mat[s][t] * vec[t] for t in range(self.rank)) % self.factors[s]
            for s in range(self.rank)
        )


def _mat_mod(m, factors) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(m[s][t] % factors[s] for t in range(len(factors))) for s in range(len(factors))
    )


def _mat_mod_mul(a, b, factors) -> tuple[tuple[int, ...], ...]:
    k = len(factors)
    return tuple(
        tuple(sum(a[s][i] * b[i][t] for i in range(k)) % factors[s] for t in range(k))
        for s in range(k)
    )


def trivial_module(gamma: FiniteGroup, factors: tuple[int, ...]) -> AbelianPresentation:
    k = len(factors)
    ident = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    return AbelianPresentation(gamma, tuple(factors), (ident,) * gamma.order)


def _decompose_abelian(group: FiniteGroup) -> tuple[tuple[int, ...], list[int]]:
    """Invariant factors (>1, ascending) and a generator element per factor."""
    if not group.is_abelian():
        raise ValueError("invariant-factor decomposition requires an abelian group")
    if group.order == 1:
        return (), []
    gens = list(group.generators())
    orders = [group.element_order(g) for g in gens]
    r = len(gens)

    def image_of(exps) -> int:
        x = group.identity
        for g, e in zip(gens, exps):
            x = group.mul(x, group.power(g, e))
        return x

    relations: list[list[int]] = [
        [orders[j] if i == j else 0 for j in range(r)] for i in range(r)
    ]
    box = 1
    for o in orders:
        box *= o
    if box > 1_000_000:
        raise SizeLimit(f"relation search space {box} too large")
    for exps in itertools.product(*[range(o) for o in orders]):
        if any(exps) and image_of(exps) == group.identity:
            relations.append(list(exps))
    rel_matrix = [[rel[i] for rel in relations] for i in range(r)]
    factors, lifts = cokernel_invariant_factors(rel_matrix, r)
    gen_elements = [image_of(lift) for lift in lifts]
    return tuple(factors), gen_elements


@dataclass(frozen=True)
class ModuleBridge:
    """Presentation of a concrete abelian gamma-subgroup plus coordinate maps."""

    presentation: AbelianPresentation
    to_coords: dict[int, tuple[int, ...]]  # parent element index -> coordinates
    from_coords: dict[tuple[int, ...], int]


def presentation_of_subgroup(parent: GammaGroup, sub: Subgroup) -> ModuleBridge:
    """Decompose a stable abelian subgroup and express the action in coordinates."""
    restricted, inclusion = restrict_to_subgroup(parent, sub)
    group = restricted.base
    factors, gen_elements = _decompose_abelian(group)
    k = len(factors)
    from_local: dict[tuple[int, ...], int] = {}
    for vec in itertools.product(*[range(f) for f in factors]) if k else [()]:
        x = group.identity
        for g, e in zip(gen_elements, vec):
            x = group.mul(x, group.power(g, e))
        from_local[tuple(vec)] = x
    if len(from_local) != group.order:
        raise AssertionError("invariant-factor coordinates do not enumerate the module")
    to_local = {x: vec for vec, x in from_local.items()}
    matrices = []
    for g in range(parent.gamma.order):
        cols = [to_local[restricted.act(g, gen)] for gen in gen_elements]
        matrices.append(tuple(tuple(cols[t][s] for t in range(k)) for s in range(k)))
    pres = AbelianPresentation(parent.gamma, factors, tuple(matrices))
    embed = inclusion.hom.image
    to_coords = {embed[x]: vec for x, vec in to_local.items()}
    from_coords = {vec: embed[x] for vec, x in from_local.items()}
    return ModuleBridge(pres, to_coords, from_coords)


@dataclass(frozen=True)
class H2Group:
    """H2 as an abelian group: invariant factors plus generating 2-cocycles.

    Generators are normalized 2-cochains, stored as flat integer vectors in
    the (pair, factor) coordinate order of :func:`_normalized_d_matrices`.
    """

    gamma: FiniteGroup
    presentation: AbelianPresentation
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        total = 1
        for f in self.invariant_factors:
            total *= f
        return total


def _nonidentity(gamma: FiniteGroup) -> list[int]:
    return [g for g in range(gamma.order) if g != gamma.identity]


def _normalized_d_sparse(gamma: FiniteGroup, pres: AbelianPresentation):
    """d1 (dense columns) and d2 (sparse rows) on normalized cochains.

    C1 coordinates: (x, t) for x != e; C2: (g, h, t) with g, h != e;
    C3: (g, h, k, t), all != e. Row-major over the listed index order; a
    d2 row has at most rank + 3 nonzero entries, which the cocycle-lattice
    sweep exploits.
    """
    k = pres.rank
    g1 = _nonidentity(gamma)
    pos1 = {x: i for i, x in enumerate(g1)}
    pairs = [(g, h) for g in g1 for h in g1]
    pos2 = {p: i for i, p in enumerate(pairs)}
    d1 = [[0] * (len(g1) * k) for _ in range(len(pairs) * k)]
    for (g, h) in pairs:
        row0 = pos2[(g, h)] * k
        mat = pres.matrices[g]
        for s in range(k):
            for t in range(k):
                d1[row0 + s][pos1[h] * k + t] += mat[s][t]
        gh = gamma.mul(g, h)
        if gh != gamma.identity:
            for s in range(k):
                d1[row0 + s][pos1[gh] * k + s] -= 1
        for s in range(k):
            d1[row0 + s][pos1[g] * k + s] += 1
    d2_rows: list[list[tuple[int, int]]] = []
    moduli3: list[int] = []
    for g in g1:
        mat = pres.matrices[g]
        for h in g1:
            gh = gamma.mul(g, h)
            for x in g1:
                hx = gamma.mul(h, x)
                for s in range(k):
                    entries: dict[int, int] = {}
                    for t in range(k):
                        if mat[s][t]:
                            col = pos2[(h, x)] * k + t
                            entries[col] = entries.get(col, 0) + mat[s][t]
                    if gh != gamma.identity:
                        col = pos2[(gh, x)] * k + s
                        entries[col] = entries.get(col, 0) - 1
                    if hx != gamma.identity:
                        col = pos2[(g, hx)] * k + s
                        entries[col] = entries.get(col, 0) + 1
                    col = pos2[(g, h)] * k + s
                    entries[col] = entries.get(col, 0) - 1
                    d2_rows.append(sorted(entries.items()))
                    moduli3.append(pres.factors[s])
    moduli1 = [pres.factors[t] for _ in g1 for t in range(k)]
    moduli2 = [pres.factors[t] for _ in pairs for t in range(k)]
    return d1, d2_rows, moduli1, moduli2, moduli3, pairs


def h2_central(
    gamma: FiniteGroup,
    pres: AbelianPresentation,
    max_entries: int = DEFAULT_MAX_SNF_ENTRIES,
) -> H2Group:
    """H2 of the abelian module, by integer linear algebra on normalized cochains.

    The 2-cocycle lattice {c : d2 c = 0 mod orders} is built one congruence
    at a time (d2 rows are sparse: at most rank + 3 entries), then the
    coboundary-plus-orders sublattice is expressed in that basis and the
    quotient read off a Smith form.
    """
    k = pres.rank
    n1 = gamma.order - 1
    if k == 0 or n1 == 0:
        return H2Group(gamma, pres, (), ())
    d2_dim, d3_dim = n1 * n1 * k, n1 * n1 * n1 * k
    if d3_dim * (d2_dim + d3_dim) > max_entries:
        raise SizeLimit(
            f"H2 matrix of {d3_dim}x{d2_dim + d3_dim} entries exceeds bound {max_entries}"
        )
    d1, d2_rows, _, moduli2, moduli3, _ = _normalized_d_sparse(gamma, pres)
    # lattice of 2-cocycles L = {c : d2 c = 0 mod orders}, as the projection
    # of the integer kernel of [d2 | -diag(orders)]
    stacked = []
    for i, row in enumerate(d2_rows):
        dense = [0] * (d2_dim + d3_dim)
        for idx, coef in row:
            dense[idx] = coef
        dense[d2_dim + i] = -moduli3[i]
        stacked.append(dense)
    l_cols = [col[:d2_dim] for col in kernel_basis(stacked)]
    l_mat = [[col[i] for col in l_cols] for i in range(d2_dim)]
    solver = IntegerSolver(l_mat)
    # subgroup M = im(d1) + orders * Z^d2, expressed in L-spanning coordinates
    m_cols = [[d1[i][j] for i in range(d2_dim)] for j in range(len(d1[0]) if d1 else 0)]
    m_cols += [
        [moduli2[i] if i == j else 0 for i in range(d2_dim)] for j in range(d2_dim)
    ]
    relation_cols = []
    for col in m_cols:
        y = solver.solve(col)
        assert y is not None, "im(d1) escaped the 2-cocycle lattice (differential bug)"
        relation_cols.append(y)
    relation_cols += kernel_basis(l_mat)
    s = len(l_cols)
    relations = [[col[i] for col in relation_cols] for i in range(s)]
    factors, lifts = cokernel_invariant_factors(relations, s)
    generators = []
    for lift in lifts:
        vec = [
            sum(l_mat[i][j] * lift[j] for j in range(s)) % moduli2[i]
            for i in range(d2_dim)
        ]
        for row, n in zip(d2_rows, moduli3):
            defect = sum(coef * vec[idx] for idx, coef in row) % n
            assert defect == 0, "reported H2 generator fails the 2-cocycle identity"
        generators.append(tuple(vec))
    return H2Group(gamma, pres, tuple(factors), tuple(generators))


def h2_brute_force_order(gamma: FiniteGroup, pres: AbelianPresentation, limit: int = 1 << 16) -> int:
    """Oracle: |ker d2| / |im d1| over all raw (non-normalized) 2-cochains."""
    ng, k = gamma.order, pres.rank
    if k == 0 or ng == 1:
        return 1
    n_cochains = pres.module_order ** (ng * ng)
    if n_cochains > limit:
        raise SizeLimit(f"{n_cochains} raw 2-cochains exceed oracle limit {limit}")
    dim2 = ng * ng * k
    pairs = [(g, h) for g in range(ng) for h in range(ng)]
    pos2 = {p: i for i, p in enumerate(pairs)}
    d2 = np.zeros((ng * ng * ng * k, dim2), dtype=np.int64)
    moduli3 = []
    row = 0
    for g in range(ng):
        mat = np.array(pres.matrices[g], dtype=np.int64)
        for h in range(ng):
            gh = gamma.mul(g, h)
            for x in range(ng):
                hx = gamma.mul(h, x)
                d2[row : row + k, pos2[(h, x)] * k : pos2[(h, x)] * k + k] += mat
                for s in range(k):
                    d2[row + s, pos2[(gh, x)] * k + s] -= 1
                    d2[row + s, pos2[(g, hx)] * k + s] += 1
                    d2[row + s, pos2[(g, h)] * k + s] -= 1
                moduli3.extend(pres.factors)
                row += k
    moduli3 = np.array(moduli3, dtype=np.int64)
    moduli_flat = np.array([pres.factors[t] for _ in pairs for t in range(k)], dtype=np.int64)
    ranges = [range(int(m)) for m in moduli_flat]
    cochains = np.array(list(itertools.product(*ranges)), dtype=np.int64)
    defects = (cochains @ d2.T) % moduli3[None, :]
    cocycle_count = int(np.sum(~np.any(defects, axis=1)))
    # coboundaries of all raw 1-cochains
    dim1 = ng * k
    d1 = np.zeros((dim2, dim1), dtype=np.int64)
    for g in range(ng):
        mat = np.array(pres.matrices[g], dtype=np.int64)
        for h in range(ng):
            r0 = pos2[(g, h)] * k
            d1[r0 : r0 + k, h * k : h * k + k] += mat
            gh = gamma.mul(g, h)
            for s in range(k):
                d1[r0 + s, gh * k + s] -= 1
                d1[r0 + s, g * k + s] += 1
    ranges1 = [range(pres.factors[t]) for _ in range(ng) for t in range(k)]
    fs = np.array(list(itertools.product(*ranges1)), dtype=np.int64)
    images = (fs @ d1.T) % moduli_flat[None, :]
    coboundary_count = len({tuple(map(int, row)) for row in images})
    assert cocycle_count % coboundary_count == 0
    return cocycle_count // coboundary_count


# ---------------------------------------------------------------------------
# connecting map into H2


@dataclass(frozen=True)
class DeltaResult:
    """delta of a quotient 1-class: a normalized 2-cochain over the presentation."""

    bridge: ModuleBridge
    cochain: tuple[int, ...]
    trivial: bool


def _section(parent: GammaGroup, proj: EquivariantHom, values, greatest: bool) -> list[int]:
    b, quot = parent.base, proj.target.base
    section = []
    for g in range(parent.gamma.order):
        if g == parent.gamma.identity:
            section.append(b.identity)
            continue
        fiber = [x for x in range(b.order) if proj.hom(x) == values[g]]
        section.append(max(fiber) if greatest else min(fiber))
    return section


def _factor_set(parent: GammaGroup, section: list[int]) -> dict[tuple[int, int], int]:
    b = parent.base
    out = {}
    for h in range(parent.gamma.order):
        for g in range(parent.gamma.order):
            hg = parent.gamma.mul(h, g)
            val = b.mul(b.inv(section[hg]), b.mul(section[h], parent.act(h, section[g])))
            out[(h, g)] = val
    return out


def _cochain_vector(
    gamma: FiniteGroup, bridge: ModuleBridge, factor_set: dict[tuple[int, int], int]
) -> list[int]:
    k = bridge.presentation.rank
    g1 = _nonidentity(gamma)
    vec: list[int] = []
    for g in g1:
        for h in g1:
            coords = bridge.to_coords[factor_set[(g, h)]]
            vec.extend(coords)
    assert len(vec) == len(g1) * len(g1) * k
    return vec


def _is_coboundary(gamma: FiniteGroup, pres: AbelianPresentation, vec: list[int]) -> bool:
    d1, _, _, moduli2, _, _ = _normalized_d_sparse(gamma, pres)
    dim2 = len(moduli2)
    if dim2 == 0:
        return True
    aug = [d1[i][:] + [moduli2[i] if i == j else 0 for j in range(dim2)] for i in range(dim2)]
    return solve_integer(aug, list(vec)) is not None


def connecting_delta(
    parent: GammaGroup, central: Subgroup, quotient_cocycle: Cocycle
) -> DeltaResult:
    """delta: H1(gamma, B/A) -> H2(gamma, A) for a central stable subgroup A.

    Lifts the quotient cocycle through the lexicographically least section
    (identity at the identity), forms the factor set
    c(h,g) = beta(hg)^-1 beta(h) beta(g)^h, and checks: values land in A,
    the 2-cocycle identity holds, and the class does not depend on the lift.
    """
    b = parent.base
    a_set = set(central.members)
    for x in range(b.order):
        for a in central.members:
            if b.mul(x, a) != b.mul(a, x):
                raise ValueError(f"subgroup is not central: {a} and {x} do not commute")
    quotient, proj = quotient_gamma_group(parent, central)
    structurally_same = (
        quotient_cocycle.parent.gamma is parent.gamma
        and quotient_cocycle.parent.base.order == quotient.base.order
        and np.array_equal(quotient_cocycle.parent.base.table, quotient.base.table)
        and np.array_equal(quotient_cocycle.parent.action, quotient.action)
    )
    if not structurally_same:
        raise ValueError("quotient cocycle must live over the induced quotient action")
    bridge = presentation_of_subgroup(parent, central)
    values = quotient_cocycle.values
    section = _section(parent, proj, values, greatest=False)
    fset = _factor_set(parent, section)
    for (h, g), val in fset.items():
        assert val in a_set, "factor set escaped the central subgroup"
        e = parent.gamma.identity
        if h == e or g == e:
            assert val == b.identity, "factor set is not normalized"
    # 2-cocycle identity, checked directly in the group
    for g in range(parent.gamma.order):
        for h in range(parent.gamma.order):
            for x in range(parent.gamma.order):
                gh = parent.gamma.mul(g, h)
                hx = parent.gamma.mul(h, x)
                lhs = b.mul(fset[(gh, x)], fset[(g, h)])
                rhs = b.mul(parent.act(g, fset[(h, x)]), fset[(g, hx)])
                assert lhs == rhs, "factor set fails the 2-cocycle identity"
    vec = _cochain_vector(parent.gamma, bridge, fset)
    second = _factor_set(parent, _section(parent, proj, values, greatest=True))
    vec2 = _cochain_vector(parent.gamma, bridge, second)
    diff = [x - y for x, y in zip(vec, vec2)]
    assert _is_coboundary(parent.gamma, bridge.presentation, diff), (
        "delta class depends on the choice of section"
    )
    trivial = _is_coboundary(parent.gamma, bridge.presentation, vec)
    return DeltaResult(bridge, tuple(vec), trivial)
