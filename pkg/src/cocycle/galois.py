"""Galois descent over finite field towers.

Semilinear actions v -> A_j . v^(frob^j) of the cyclic Galois group, bases
of invariant vectors by base-field linear algebra (no averaging map, which
can vanish in characteristic p), exhaustive Hilbert-90 style cocycle scans
for GL_m and SL_m, and two-route classification of tensor forms.

Cyclic cocycles are stored through their generator matrix A: the value at
frob^j is A * A^frob * ... * A^(frob^(j-1)), the norm condition
N(A) = A A^frob ... A^(frob^(n-1)) = I is the cocycle condition, and
coboundaries are exactly B^-1 * B^frob. The transport cocycle of a form
with transporter g is j -> g^-1 * g^(frob^j).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cohomology import GammaGroup, h1, H1Set
from .errors import (
    DEFAULT_MAX_MATRICES,
    CounterexampleFound,
    DimensionFailure,
    MatchFailure,
    SizeLimit,
)
from .fields import (
    FqTower,
    Matrix,
    enumerate_gl,
    enumerate_sl,
    mat_det,
    mat_frob,
    mat_identity,
    mat_inv,
    mat_mul,
    mat_vec,
    vec_frob,
)
from .groups import cyclic_group, make_group


def automorphism_independence_check(tower: FqTower, exhaustive_limit: int = 10_000) -> bool:
    """No nonzero K-linear combination of the Frobenius powers vanishes on K.

    Always verified by a rank computation on the matrix (b^(q^j)) over an
    F_p-spanning set; additionally cross-checked exhaustively over all
    coefficient tuples when the tower is small enough.
    """
    n = tower.n
    spanning = [tower.p**i for i in range(tower.degree)]  # encodings of x^i
    rows = [[tower.frob(b, j) for j in range(n)] for b in spanning]
    rank = _field_rank(tower, rows)
    independent = rank == n
    if tower.size**n <= exhaustive_limit:
        brute = True
        for coeffs in itertools.product(range(tower.size), repeat=n):
            if not any(coeffs):
                continue
            if all(
                _combo_vanishes(tower, coeffs, x) for x in range(tower.size)
            ):
                brute = False
                break
        assert brute == independent, "rank and exhaustive independence checks disagree"
    return independent


def _combo_vanishes(tower: FqTower, coeffs, x: int) -> bool:
    acc = 0
    for j, c in enumerate(coeffs):
        acc = tower.add(acc, tower.mul(c, tower.frob(x, j)))
    return acc == 0


def _field_rank(tower: FqTower, rows: list[list[int]]) -> int:
    mat = [row[:] for row in rows]
    n_rows, n_cols = len(mat), len(mat[0]) if mat else 0
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


@dataclass(frozen=True)
class SemilinearAction:
    """Matrices A_j, one per Galois element frob^j, acting as v -> A_j v^(frob^j).

    Composition is checked on all pairs: A_{(i+j) mod n} = A_i * A_j^(frob^i).
    """

    tower: FqTower
    dim: int
    mats: tuple[Matrix, ...]

    @staticmethod
    def make(tower: FqTower, dim: int, mats) -> SemilinearAction:
        mats = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in mats)
        if len(mats) != tower.n:
            raise ValueError("one matrix per Galois group element required")
        if mats[0] != mat_identity(tower, dim):
            raise ValueError("the identity Galois element must act by the identity matrix")
        for m in mats:
            if mat_inv(tower, m) is None:
                raise ValueError("semilinear action matrices must be invertible")
        for i in range(tower.n):
            for j in range(tower.n):
                expected = mats[(i + j) % tower.n]
                got = mat_mul(tower, mats[i], mat_frob(tower, mats[j], i))
                if got != expected:
                    raise ValueError(f"composition law fails at Galois pair ({i}, {j})")
        return SemilinearAction(tower, dim, mats)

    @staticmethod
    def from_generator(tower: FqTower, dim: int, gen: Matrix) -> SemilinearAction:
        """Extend a generator matrix along the cyclic group by the composition law."""
        mats = [mat_identity(tower, dim)]
        for j in range(1, tower.n):
            mats.append(mat_mul(tower, mats[-1], mat_frob(tower, gen, j - 1)))
        return SemilinearAction.make(tower, dim, mats)

    def apply(self, j: int, v: tuple[int, ...]) -> tuple[int, ...]:
        return mat_vec(self.tower, self.mats[j % self.tower.n], vec_frob(self.tower, v, j))


def untwisted_semilinear(tower: FqTower, dim: int) -> SemilinearAction:
    return SemilinearAction.make(tower, dim, (mat_identity(tower, dim),) * tower.n)


def invariant_basis(action: SemilinearAction) -> tuple[tuple[int, ...], ...]:
    """A base-field basis of the fixed vectors {v : A_j v^(frob^j) = v for all j}.

    Solved as a k-linear kernel problem in the k-coordinates of K^m; the
    fixed space must have k-dimension m (DimensionFailure otherwise), and
    every returned vector is re-checked against the definition.
    """
    tower, m = action.tower, action.dim
    basis_k = tower.k_basis
    n = tower.n
    dim_total = m * n
    rows: list[list[int]] = [[0] * dim_total for _ in range(dim_total)]
    for i in range(m):
        for j in range(n):
            w = [0] * m
            w[i] = basis_k[j]
            image = action.apply(1, tuple(w))
            for r in range(m):
                coords = tower.k_coords(image[r])
                for jj in range(n):
                    col = i * n + j
                    rows[r * n + jj][col] = coords[jj]
    for t in range(dim_total):
        rows[t][t] = tower.sub(rows[t][t], 1)
    kernel = _field_kernel(tower, rows)
    if len(kernel) != m:
        raise DimensionFailure(
            f"fixed space has k-dimension {len(kernel)}, expected {m}"
        )
    vectors = []
    for coords in kernel:
        v = []
        for i in range(m):
            acc = 0
            for j in range(n):
                acc = tower.add(acc, tower.mul(coords[i * n + j], basis_k[j]))
            v.append(acc)
        vectors.append(tuple(v))
    for v in vectors:
        for j in range(n):
            assert action.apply(j, v) == v, "returned vector is not invariant"
    columns = tuple(tuple(v[i] for v in vectors) for i in range(m))
    if mat_det(tower, columns) == 0:
        raise DimensionFailure("invariant vectors are not K-linearly independent")
    return tuple(vectors)


def _field_kernel(tower: FqTower, rows: list[list[int]]) -> list[list[int]]:
    """Kernel basis of a matrix over the base field (entries are k-elements)."""
    mat = [row[:] for row in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    pivots: list[int] = []
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
        pivots.append(c)
        rank += 1
    free = [c for c in range(n_cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        vec = [0] * n_cols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = tower.neg(mat[r][fc])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Hilbert 90 scans


@dataclass(frozen=True)
class CocycleScanReport:
    """Exhaustive check that every norm-one matrix is a coboundary."""

    tower: FqTower
    dim: int
    special: bool
    group_size: int
    n_cocycles: int
    witness_sample: tuple[tuple[Matrix, Matrix], ...]  # (cocycle generator, B)


_WITNESS_SAMPLE_SIZE = 8


def _norm_accumulate(tower: FqTower, a: Matrix) -> Matrix:
    acc = a
    for j in range(1, tower.n):
        acc = mat_mul(tower, acc, mat_frob(tower, a, j))
    return acc


def hilbert90_verify(
    tower: FqTower,
    m: int,
    special: bool = False,
    max_matrices: int = DEFAULT_MAX_MATRICES,
) -> CocycleScanReport:
    """Scan GL_m (or SL_m) for norm-one matrices and trivialize each one.

    A norm-one matrix with no coboundary witness raises CounterexampleFound;
    by the classification theorems this indicates an implementation bug.
    """
    total = tower.size ** (m * m)
    if total > max_matrices:
        raise SizeLimit(f"{total} matrices exceed bound {max_matrices}")
    if tower._tables_built and m in (1, 2):
        return _scan_vectorized(tower, m, special)
    return _scan_scalar(tower, m, special, max_matrices)


def _scan_scalar(
    tower: FqTower, m: int, special: bool, max_matrices: int
) -> CocycleScanReport:
    group = (enumerate_sl if special else enumerate_gl)(tower, m, max_matrices)
    ident = mat_identity(tower, m)
    witnesses_by_cocycle: dict[Matrix, Matrix] = {}
    for b in group:
        b_inv = mat_inv(tower, b)
        cocycle = mat_mul(tower, b_inv, mat_frob(tower, b, 1))
        witnesses_by_cocycle.setdefault(cocycle, b)
    n_cocycles = 0
    sample = []
    for a in group:
        if _norm_accumulate(tower, a) != ident:
            continue
        n_cocycles += 1
        witness = witnesses_by_cocycle.get(a)
        if witness is None:
            raise CounterexampleFound(
                f"norm-one matrix {a} over {tower!r} is not a coboundary"
            )
        if len(sample) < _WITNESS_SAMPLE_SIZE:
            sample.append((a, witness))
    assert len(witnesses_by_cocycle) == n_cocycles, (
        "coboundaries produced a non-cocycle (norm condition bug)"
    )
    return CocycleScanReport(tower, m, special, len(group), n_cocycles, tuple(sample))


def _scan_vectorized(tower: FqTower, m: int, special: bool) -> CocycleScanReport:
    """Table-gather implementation of the scan for m = 1 or 2."""
    size, n = tower.size, tower.n
    mul, add, neg, inv = tower.mul_table, tower.add_table, tower.neg_table, tower.inv_table
    frob = tower.frob_table

    def frob_j(x, j):
        for _ in range(j % n):
            x = frob[x]
        return x

    if m == 1:
        a = np.arange(1, size)
        norm = a.copy()
        for j in range(1, n):
            norm = mul[norm, frob_j(a, j)]
        if special:
            keep = a[a == 1]
        else:
            keep = a
        cocycles = keep[norm[keep - 1] == 1] if not special else keep
        cobs = mul[inv[keep], frob_j(keep, 1)]
        cob_set = set(int(x) for x in cobs)
        sample = []
        for value in cocycles:
            if int(value) not in cob_set:
                raise CounterexampleFound(
                    f"norm-one scalar {int(value)} over {tower!r} is not a coboundary"
                )
            if len(sample) < _WITNESS_SAMPLE_SIZE:
                b = int(keep[int(np.flatnonzero(cobs == value)[0])])
                sample.append((((int(value),),), ((b,),)))
        assert len(cob_set) == len(cocycles)
        return CocycleScanReport(
            tower, 1, special, len(keep), len(cocycles), tuple(sample)
        )

    idx = np.arange(size**4, dtype=np.int64)
    e00 = idx // size**3 % size
    e01 = idx // size**2 % size
    e10 = idx // size % size
    e11 = idx % size
    det = add[mul[e00, e11], neg[mul[e01, e10]]]
    keep = det == 1 if special else det != 0
    e00, e01, e10, e11 = e00[keep], e01[keep], e10[keep], e11[keep]
    det = det[keep]
    group_size = len(e00)

    def mat2_mul(a, b):
        return (
            add[mul[a[0], b[0]], mul[a[1], b[2]]],
            add[mul[a[0], b[1]], mul[a[1], b[3]]],
            add[mul[a[2], b[0]], mul[a[3], b[2]]],
            add[mul[a[2], b[1]], mul[a[3], b[3]]],
        )

    a_mat = (e00, e01, e10, e11)
    norm = a_mat
    for j in range(1, n):
        norm = mat2_mul(norm, tuple(frob_j(c, j) for c in a_mat))
    is_cocycle = (norm[0] == 1) & (norm[1] == 0) & (norm[2] == 0) & (norm[3] == 1)

    dinv = inv[det]
    b_inv = (mul[e11, dinv], mul[neg[e01], dinv], mul[neg[e10], dinv], mul[e00, dinv])
    b_frob = tuple(frob_j(c, 1) for c in a_mat)
    cob = mat2_mul(b_inv, b_frob)
    encode = ((cob[0] * size + cob[1]) * size + cob[2]) * size + cob[3]
    cob_index: dict[int, int] = {}
    for i, key in enumerate(encode.tolist()):
        cob_index.setdefault(key, i)
    cocycle_pos = np.flatnonzero(is_cocycle)
    sample = []
    for pos in cocycle_pos.tolist():
        key = ((int(e00[pos]) * size + int(e01[pos])) * size + int(e10[pos])) * size + int(
            e11[pos]
        )
        hit = cob_index.get(key)
        if hit is None:
            raise CounterexampleFound(
                f"norm-one matrix encoded {key} over {tower!r} is not a coboundary"
            )
        if len(sample) < _WITNESS_SAMPLE_SIZE:
            a = ((int(e00[pos]), int(e01[pos])), (int(e10[pos]), int(e11[pos])))
            b = ((int(e00[hit]), int(e01[hit])), (int(e10[hit]), int(e11[hit])))
            sample.append((a, b))
    assert len(cob_index) == len(cocycle_pos), (
        "coboundaries produced a non-cocycle (norm condition bug)"
    )
    return CocycleScanReport(
        tower, 2, special, group_size, len(cocycle_pos), tuple(sample)
    )


def det_image_on_rational_points(
    tower: FqTower, m: int, max_matrices: int = DEFAULT_MAX_MATRICES
) -> set[int]:
    """Image of det: GL_m(k) -> k*, for the surjectivity half of SL triviality."""
    k_set = set(tower.k_elements)
    total = tower.size ** (m * m)
    if total > max_matrices:
        raise SizeLimit(f"{total} matrices exceed bound {max_matrices}")
    image = set()
    for flat in itertools.product(tower.k_elements, repeat=m * m):
        a = tuple(tuple(flat[i * m + j] for j in range(m)) for i in range(m))
        det = mat_det(tower, a)
        if det != 0:
            assert det in k_set
            image.add(det)
    return image


def sl_h1_verify(
    tower: FqTower, m: int, max_matrices: int = DEFAULT_MAX_MATRICES
) -> CocycleScanReport:
    """SL-cocycles are SL-coboundaries, plus det surjectivity on rational points."""
    report = hilbert90_verify(tower, m, special=True, max_matrices=max_matrices)
    image = det_image_on_rational_points(tower, m, max_matrices)
    expected = {x for x in tower.k_elements if x != 0}
    if image != expected:
        raise CounterexampleFound(
            f"det image on rational points is {sorted(image)}, expected all of k*"
        )
    return report


def units_gamma_group(tower: FqTower) -> tuple[GammaGroup, tuple[int, ...]]:
    """K* as a finite group with the Frobenius action; returns (action, unit list).

    Cross-check helper: the generic cocycle engine on this action must find a
    single class, matching the m = 1 scan.
    """
    units = tuple(x for x in range(1, tower.size))
    pos = {u: i for i, u in enumerate(units)}
    table = [[pos[tower.mul(a, b)] for b in units] for a in units]
    group = make_group(table)
    gamma = cyclic_group(tower.n)
    action = [[pos[tower.frob(u, j)] for u in units] for j in range(tower.n)]
    return GammaGroup(gamma, group, action), units


# ---------------------------------------------------------------------------
# tensors and forms


@dataclass(frozen=True)
class TensorOnV:
    """Linear map V^(x l) -> V^(x r) stored as an m^r x m^l coefficient matrix."""

    tower: FqTower
    dim: int
    l: int
    r: int
    coeffs: Matrix

    @staticmethod
    def make(tower: FqTower, dim: int, l: int, r: int, coeffs) -> TensorOnV:
        mat = tuple(tuple(int(x) for x in row) for row in coeffs)
        if len(mat) != dim**r or any(len(row) != dim**l for row in mat):
            raise ValueError(
                f"coefficients must be a {dim**r} x {dim**l} matrix"
            )
        return TensorOnV(tower, dim, l, r, mat)

    def defined_over_base(self) -> bool:
        return all(self.tower.in_base(x) for row in self.coeffs for x in row)

    def frob(self, j: int = 1) -> TensorOnV:
        return TensorOnV(
            self.tower, self.dim, self.l, self.r, mat_frob(self.tower, self.coeffs, j)
        )


def quadratic_form_tensor(tower: FqTower, gram: Matrix) -> TensorOnV:
    """Symmetric bilinear form as a (2, 0) tensor from its Gram matrix."""
    m = len(gram)
    row = tuple(gram[i][j] for i in range(m) for j in range(m))
    return TensorOnV.make(tower, m, 2, 0, (row,))


def kron_power(tower: FqTower, a: Matrix, t: int) -> Matrix:
    out = ((1,),)
    for _ in range(t):
        out = _kron(tower, out, a)
    return out


def _kron(tower: FqTower, a: Matrix, b: Matrix) -> Matrix:
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    return tuple(
        tuple(
            tower.mul(a[i // rb][j // cb], b[i % rb][j % cb]) for j in range(ca * cb)
        )
        for i in range(ra * rb)
    )


def apply_to_tensor(g: Matrix, tensor: TensorOnV) -> TensorOnV:
    """g(tau) = g^(x r) o tau o (g^(x l))^-1."""
    tower = tensor.tower
    g_inv = mat_inv(tower, g)
    if g_inv is None:
        raise ValueError("tensor transport requires an invertible matrix")
    left = kron_power(tower, g, tensor.r)
    right = kron_power(tower, g_inv, tensor.l)
    coeffs = mat_mul(tower, mat_mul(tower, left, tensor.coeffs), right)
    return TensorOnV(tower, tensor.dim, tensor.l, tensor.r, coeffs)


@dataclass(frozen=True)
class FormsReport:
    """Two-route classification of the forms of a tensor."""

    tensor: TensorOnV
    stabilizer_size: int
    direct_orbits: tuple[tuple[Matrix, ...], ...]  # invariant tensors per k-orbit
    h1_stabilizer: H1Set
    matching: tuple[tuple[int, int], ...]  # (direct orbit index, h1 class index)

    @property
    def n_classes(self) -> int:
        return len(self.direct_orbits)


def classify_forms(
    tower: FqTower,
    tensor: TensorOnV,
    max_matrices: int = DEFAULT_MAX_MATRICES,
    max_stabilizer: int = 512,
) -> FormsReport:
    """Count the forms of a tensor two independent ways and match them.

    Direct route: Galois-invariant tensors in the GL_m(K)-orbit, partitioned
    into GL_m(k)-orbits. Cohomological route: classes of stabilizer-valued
    cocycles (their images in GL are all coboundaries; asserted). The
    transport map orbit -> class must be a bijection, else MatchFailure.
    """
    if not tensor.defined_over_base():
        raise ValueError("reference tensor must be defined over the base field")
    m = tensor.dim
    gl = enumerate_gl(tower, m, max_matrices)
    ident = mat_identity(tower, m)
    stabilizer = [g for g in gl if apply_to_tensor(g, tensor).coeffs == tensor.coeffs]
    if len(stabilizer) > max_stabilizer:
        raise SizeLimit(
            f"stabilizer of size {len(stabilizer)} exceeds bound {max_stabilizer}"
        )
    orbit: dict[Matrix, Matrix] = {}
    for g in gl:
        moved = apply_to_tensor(g, tensor).coeffs
        orbit.setdefault(moved, g)
    invariants = [
        t for t in orbit if mat_frob(tower, t, 1) == t
    ]
    k_rational = [g for g in gl if all(tower.in_base(x) for row in g for x in row)]
    remaining = set(invariants)
    direct_orbits: list[tuple[Matrix, ...]] = []
    while remaining:
        seed = min(remaining)
        seed_tensor = TensorOnV(tower, m, tensor.l, tensor.r, seed)
        members = set()
        for g in k_rational:
            moved = apply_to_tensor(g, seed_tensor).coeffs
            assert moved in orbit, "rational transport left the orbit"
            members.add(moved)
        assert members <= remaining, "rational orbits do not partition the invariants"
        direct_orbits.append(tuple(sorted(members)))
        remaining -= members

    # stabilizer as a finite group with the Frobenius action
    stab_index = {g: i for i, g in enumerate(stabilizer)}
    table = [
        [stab_index[mat_mul(tower, a, b)] for b in stabilizer] for a in stabilizer
    ]
    stab_group = make_group(table)
    gamma = cyclic_group(tower.n)
    action = []
    for j in range(tower.n):
        row = []
        for g in stabilizer:
            moved = mat_frob(tower, g, j)
            assert moved in stab_index, "stabilizer is not Frobenius-stable"
            row.append(stab_index[moved])
        action.append(row)
    stab_gamma = GammaGroup(gamma, stab_group, action)
    h1_stab = h1(stab_gamma)

    # Hilbert 90 on the ambient group: every class dies in GL
    for rep in h1_stab.classes:
        gen_matrix = stabilizer[rep.values[1 % gamma.order]] if gamma.order > 1 else ident
        trivializer = None
        for b in gl:
            b_inv = mat_inv(tower, b)
            if mat_mul(tower, b_inv, mat_frob(tower, b, 1)) == gen_matrix:
                trivializer = b
                break
        if gamma.order > 1 and trivializer is None:
            raise CounterexampleFound(
                "stabilizer cocycle is not a GL coboundary (Hilbert 90 violation)"
            )

    matching = []
    used: dict[int, int] = {}
    for oi, members in enumerate(direct_orbits):
        classes = set()
        for t in members:
            g = orbit[t]
            g_inv = mat_inv(tower, g)
            values = []
            for j in range(gamma.order):
                c = mat_mul(tower, g_inv, mat_frob(tower, g, j))
                assert c in stab_index, "transport cocycle left the stabilizer"
                values.append(stab_index[c])
            classes.add(h1_stab.class_of[tuple(values)])
        if len(classes) != 1:
            raise MatchFailure(f"one rational orbit hit several classes {sorted(classes)}")
        cls = classes.pop()
        if cls in used:
            raise MatchFailure(f"orbits {used[cls]} and {oi} both map to class {cls}")
        used[cls] = oi
        matching.append((oi, cls))
    if len(direct_orbits) != h1_stab.order:
        raise MatchFailure(
            f"direct count {len(direct_orbits)} != cohomological count {h1_stab.order}"
        )
    return FormsReport(
        tensor, len(stabilizer), tuple(direct_orbits), h1_stab, tuple(matching)
    )
