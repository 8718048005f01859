"""Classification of semisimple commutative algebras of a given dimension.

Classes are homs of the acting group into a symmetric group, up to
conjugacy; structural predicates (field, Galois, cyclic, discriminant) read
off the image subgroup. Over a finite field tower the class is realized
concretely as the fixed points of the coordinate-permuting semilinear
action v -> P_psi(sigma) . v^sigma, where (P_pi v)_j = v_{pi^-1(j)}; the
resulting algebra is factored independently through its primitive
idempotents and must reproduce the orbit sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DEFAULT_MAX_CANDIDATES, NotAField
from .fields import FqTower
from .galois import SemilinearAction, invariant_basis
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    cyclic_group,
    homs_up_to_conjugacy,
    perm_sign,
    symmetric_group,
)

Vector = tuple[int, ...]


@dataclass(frozen=True)
class EtaleClass:
    """One conjugacy class of homs gamma -> S_m, with its orbit data."""

    gamma: FiniteGroup
    m: int
    psi: GroupHom
    image: Subgroup
    orbits: tuple[tuple[int, ...], ...]


def classify_etale(
    gamma: FiniteGroup, m: int, max_candidates: int = DEFAULT_MAX_CANDIDATES
) -> list[EtaleClass]:
    """Lexicographically-least representatives of Hom(gamma, S_m) up to conjugacy."""
    sym = symmetric_group(m)
    classes = []
    for psi in homs_up_to_conjugacy(gamma, sym, max_candidates):
        image = Subgroup.from_members(sym, sorted(set(psi.image)))
        seen: set[int] = set()
        orbits = []
        for start in range(m):
            if start in seen:
                continue
            orbit = {start}
            frontier = [start]
            while frontier:
                point = frontier.pop()
                for g in image.members:
                    nxt = sym.perms[g][point]
                    if nxt not in orbit:
                        orbit.add(nxt)
                        frontier.append(nxt)
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
        classes.append(EtaleClass(gamma, m, psi, image, tuple(orbits)))
    return classes


def is_field(cls: EtaleClass) -> bool:
    """The class is a field exactly when the image acts transitively."""
    return len(cls.orbits) == 1


def factor_structure(cls: EtaleClass) -> tuple[int, ...]:
    """Degrees of the field factors: the orbit sizes, largest first."""
    return tuple(sorted((len(o) for o in cls.orbits), reverse=True))


def fixing_kernel(cls: EtaleClass) -> Subgroup:
    """ker(psi), cross-checked against the intersected point stabilizers."""
    kernel = cls.psi.kernel()
    assert kernel.is_normal()
    if is_field(cls):
        sym = cls.psi.target
        stab_preimage = {
            g for g in cls.gamma.elements() if sym.perms[cls.psi(g)][0] == 0
        }
        intersection = set(cls.gamma.elements())
        for s in cls.gamma.elements():
            conj = {cls.gamma.mul(cls.gamma.mul(s, h), cls.gamma.inv(s)) for h in stab_preimage}
            intersection &= conj
        assert intersection == set(kernel.members), (
            "kernel does not match the intersection of stabilizer conjugates"
        )
    return kernel


def is_galois(cls: EtaleClass) -> tuple[bool, Subgroup | None]:
    """Regularity of the image action; returns the Galois group when it holds."""
    if not is_field(cls):
        raise NotAField("Galois predicate applies to field classes only")
    regular = cls.image.order == cls.m
    return (True, cls.image) if regular else (False, None)


def is_cyclic_field(cls: EtaleClass) -> bool:
    """Image generated by a single m-cycle."""
    sym = cls.psi.target
    for g in cls.image.members:
        if len(set(sym.perms[g])) == cls.m and sym.element_order(g) == cls.m:
            if sym.generated_subgroup([g]) == cls.image.members:
                return True
    return False


def discriminant(cls: EtaleClass) -> GroupHom:
    """sign o psi as a hom into the two-element group; trivial iff image is even.

    For Galois field classes of odd dimension the result is checked to be
    trivial (odd-order groups contain no odd permutations).
    """
    sym = cls.psi.target
    z2 = cyclic_group(2)
    image = tuple(
        0 if perm_sign(sym.perms[cls.psi(g)]) == 1 else 1 for g in cls.gamma.elements()
    )
    hom = GroupHom.make(cls.gamma, z2, image)
    if is_field(cls):
        galois, _ = is_galois(cls)
        if galois and cls.m % 2 == 1:
            assert all(v == 0 for v in image), "odd Galois class with odd permutation"
    return hom


def discriminant_is_trivial(cls: EtaleClass) -> bool:
    return all(v == 0 for v in discriminant(cls).image)


# ---------------------------------------------------------------------------
# realization over a finite field tower


@dataclass(frozen=True)
class EtaleAlgebra:
    """Base-field algebra in an invariant basis, with verified semisimplicity.

    ``structure[i][j][s]`` are the base-field coefficients of b_i b_j in the
    basis; ``one_coords`` expresses the unit. Validated: commutative,
    associative, unital, and without nonzero nilpotents (x*x = 0 only for 0,
    exhaustively); ``factor_degrees`` comes from the primitive idempotents.
    """

    tower: FqTower
    m: int
    structure: tuple[tuple[Vector, ...], ...]
    one_coords: Vector
    basis: tuple[Vector, ...]
    factor_degrees: tuple[int, ...]

    def multiply(self, x: Vector, y: Vector) -> Vector:
        t = self.tower
        out = [0] * self.m
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                scale = t.mul(xi, yj)
                for s in range(self.m):
                    c = self.structure[i][j][s]
                    if c:
                        out[s] = t.add(out[s], t.mul(scale, c))
        return tuple(out)

    def elements(self):
        return itertools.product(self.tower.k_elements, repeat=self.m)


def _field_solve(tower: FqTower, columns: list[Vector], rhs: Vector) -> Vector | None:
    """Solve sum_t c_t columns[t] = rhs over the base field, by RREF."""
    n_rows = len(rhs)
    n_cols = len(columns)
    aug = [[columns[c][r] for c in range(n_cols)] + [rhs[r]] for r in range(n_rows)]
    rank = 0
    pivots = []
    for c in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if aug[r][c] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        pinv = tower.inv(aug[rank][c])
        aug[rank] = [tower.mul(x, pinv) for x in aug[rank]]
        for r in range(n_rows):
            if r != rank and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [tower.sub(x, tower.mul(f, y)) for x, y in zip(aug[r], aug[rank])]
        pivots.append(c)
        rank += 1
    for r in range(rank, n_rows):
        if aug[r][n_cols] != 0:
            return None
    out = [0] * n_cols
    for r, c in enumerate(pivots):
        out[c] = aug[r][n_cols]
    return tuple(out)


def realize_over_fq(tower: FqTower, cls: EtaleClass) -> EtaleAlgebra:
    """Fixed points of the coordinate-permuting twisted action, as an algebra.

    Requires the class's gamma to be the cyclic group matching the tower's
    Galois group, element j acting through frob^j.
    """
    gamma = cls.gamma
    reference = cyclic_group(gamma.order)
    if gamma.order != tower.n or not np.array_equal(gamma.table, reference.table):
        raise ValueError(
            "realization needs gamma = cyclic_group(n) for the tower's degree n"
        )
    m, sym = cls.m, cls.psi.target
    mats = []
    for j in range(tower.n):
        perm = sym.perms[cls.psi(j)]
        mats.append(
            tuple(tuple(1 if r == perm[c] else 0 for c in range(m)) for r in range(m))
        )
    action = SemilinearAction.make(tower, m, mats)
    basis = invariant_basis(action)  # DimensionFailure on wrong dimension

    def coords_of(vec: Vector) -> Vector | None:
        flat_cols = [
            tuple(coord for x in b for coord in tower.k_coords(x)) for b in basis
        ]
        flat_rhs = tuple(coord for x in vec for coord in tower.k_coords(x))
        return _field_solve(tower, flat_cols, flat_rhs)

    structure = []
    for bi in basis:
        row = []
        for bj in basis:
            product = tuple(tower.mul(x, y) for x, y in zip(bi, bj))
            coords = coords_of(product)
            assert coords is not None, "fixed space is not closed under multiplication"
            row.append(coords)
        structure.append(tuple(row))
    one = coords_of((1,) * m)
    assert one is not None, "the unit vector is not in the fixed space"
    algebra = _with_validation(
        EtaleAlgebra(tower, m, tuple(structure), one, tuple(basis), ())
    )
    assert algebra.factor_degrees == factor_structure(cls), (
        f"idempotent factors {algebra.factor_degrees} != orbit sizes {factor_structure(cls)}"
    )
    return algebra


def _with_validation(algebra: EtaleAlgebra) -> EtaleAlgebra:
    t, m = algebra.tower, algebra.m
    zero = (0,) * m
    coords = list(itertools.product(t.k_elements, repeat=m))
    unit_basis = [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]
    for i in range(m):
        for j in range(m):
            assert algebra.structure[i][j] == algebra.structure[j][i], "not commutative"
    for i in range(m):
        for j in range(m):
            for s in range(m):
                lhs = algebra.multiply(
                    algebra.multiply(unit_basis[i], unit_basis[j]), unit_basis[s]
                )
                rhs = algebra.multiply(
                    unit_basis[i], algebra.multiply(unit_basis[j], unit_basis[s])
                )
                assert lhs == rhs, "not associative"
    for i in range(m):
        assert algebra.multiply(algebra.one_coords, unit_basis[i]) == unit_basis[i], (
            "unit fails"
        )
    idempotents = []
    for x in coords:
        sq = algebra.multiply(x, x)
        if sq == zero:
            assert x == zero, f"nonzero nilpotent {x}"
        if sq == x and x != zero:
            idempotents.append(x)
    primitive = []
    for e in idempotents:
        below = [
            f for f in idempotents if f != e and algebra.multiply(e, f) == f
        ]
        if not below:
            primitive.append(e)
    degrees = []
    for e in primitive:
        images = [algebra.multiply(e, b) for b in unit_basis]
        degrees.append(_rank_over_base(t, images))
    assert sum(degrees) == m, "primitive idempotent blocks do not fill the algebra"
    return EtaleAlgebra(
        t,
        m,
        algebra.structure,
        algebra.one_coords,
        algebra.basis,
        tuple(sorted(degrees, reverse=True)),
    )


def _rank_over_base(tower: FqTower, vectors: list[Vector]) -> int:
    mat = [list(v) for v in vectors]
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    rank = 0
    for c in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if mat[r][c] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        pinv = tower.inv(mat[rank][c])
        mat[rank] = [tower.mul(x, pinv) for x in mat[rank]]
        for r in range(n_rows):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c]
                mat[r] = [tower.sub(x, tower.mul(f, y)) for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def trace_form_determinant(algebra: EtaleAlgebra) -> int:
    """Determinant of the trace form T(b_i, b_j) = tr(mult by b_i b_j), in k."""
    t, m = algebra.tower, algebra.m
    unit_basis = [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]
    gram = []
    for i in range(m):
        row = []
        for j in range(m):
            prod = algebra.structure[i][j]
            trace = 0
            for s in range(m):
                image = algebra.multiply(prod, unit_basis[s])
                trace = t.add(trace, image[s])
            row.append(trace)
        gram.append(tuple(row))
    return _det_over_base(t, gram)


def _det_over_base(tower: FqTower, mat) -> int:
    m = len(mat)
    work = [list(row) for row in mat]
    det = 1
    for c in range(m):
        pivot = next((r for r in range(c, m) if work[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = tower.neg(det)
        det = tower.mul(det, work[c][c])
        pinv = tower.inv(work[c][c])
        for r in range(c + 1, m):
            if work[r][c] != 0:
                f = tower.mul(work[r][c], pinv)
                work[r] = [
                    tower.sub(x, tower.mul(f, y)) for x, y in zip(work[r], work[c])
                ]
    return det


def is_square_in_base(tower: FqTower, x: int) -> bool:
    squares = {tower.mul(a, a) for a in tower.k_elements}
    return x in squares


def trace_discriminant_matches_sign(tower: FqTower, cls: EtaleClass) -> bool:
    """Square class of the realized trace-form determinant vs the sign hom.

    For odd base fields: the determinant is a nonsquare exactly when
    sign o psi is nontrivial.
    """
    if tower.p == 2:
        raise ValueError("square-class comparison needs an odd base field")
    algebra = realize_over_fq(tower, cls)
    det = trace_form_determinant(algebra)
    assert det != 0, "trace form of a semisimple algebra must be nondegenerate"
    return is_square_in_base(tower, det) == discriminant_is_trivial(cls)
