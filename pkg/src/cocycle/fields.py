"""Finite field towers F_{p^{dn}} / F_{p^d} with an explicit Frobenius.

Elements are integers in [0, p^(d*n)) encoding polynomial coefficient
vectors base p (digit i is the coefficient of x^i) modulo a canonical
irreducible: the one with the smallest integer encoding, i.e. the
lexicographically least coefficient vector read from the constant term up.
Small fields get dense lookup tables; larger towers fall back to on-demand
polynomial arithmetic. The base field of the tower is the fixed field of
x -> x^(p^d), verified at construction through the Frobenius matrix.
"""

from __future__ import annotations

import itertools
import numpy as np

from .errors import (
    DEFAULT_MAX_FIELD,
    DEFAULT_MAX_MATRICES,
    FIELD_TABLE_LIMIT,
    NoIrreducible,
    NotPrime,
    SizeLimit,
    check_buffer,
)

Matrix = tuple[tuple[int, ...], ...]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


# -- polynomial helpers over F_p (digit-tuple representation) ----------------


def _decode(value: int, p: int, width: int) -> list[int]:
    digits = []
    for _ in range(width):
        digits.append(value % p)
        value //= p
    return digits


def _encode(digits, p: int) -> int:
    value = 0
    for d in reversed(list(digits)):
        value = value * p + d
    return value


def _poly_deg(digits) -> int:
    for i in range(len(digits) - 1, -1, -1):
        if digits[i]:
            return i
    return -1


def _poly_divmod(num, den, p):
    num = list(num)
    dd = _poly_deg(den)
    lead_inv = pow(den[dd], p - 2, p)
    for i in range(_poly_deg(num), dd - 1, -1):
        if num[i] == 0:
            continue
        coef = num[i] * lead_inv % p
        for j in range(dd + 1):
            num[i - dd + j] = (num[i - dd + j] - coef * den[j]) % p
    return num


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _is_irreducible(poly, p) -> bool:
    deg = _poly_deg(poly)
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            trial = list(coeffs) + [1]  # monic of degree d
            rem = _poly_divmod(poly, trial, p)
            if _poly_deg(rem) < 0:
                return False
    return True


def least_irreducible(p: int, degree: int) -> list[int]:
    """Monic irreducible of the given degree with the least integer encoding."""
    for enc in range(p**degree):
        poly = _decode(enc, p, degree) + [1]
        if _is_irreducible(poly, p):
            return poly
    raise NoIrreducible(f"no irreducible of degree {degree} over F_{p}")


class FqTower:
    """K = F_{p^{dn}} over k = F_{p^d}, with Frobenius x -> x^(p^d)."""

    def __init__(self, p: int, d: int, n: int, max_field: int = DEFAULT_MAX_FIELD):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if d < 1 or n < 1:
            raise ValueError("degrees must be positive")
        size = p ** (d * n)
        if size > max_field:
            raise SizeLimit(f"field size {size} exceeds bound {max_field}")
        self.p, self.d, self.n = p, d, n
        self.q = p**d
        self.size = size
        self.degree = d * n
        self.modulus = least_irreducible(p, self.degree)
        self._reductions = self._power_reductions()
        self.frobenius_matrix = self._frobenius_matrix()
        self._validate_frobenius()
        self._tables_built = False
        self._k_elements: tuple[int, ...] | None = None
        self._k_basis: tuple[int, ...] | None = None
        self._k_coords: dict[int, tuple[int, ...]] | None = None
        if size <= FIELD_TABLE_LIMIT:
            self._build_tables()

    # -- raw polynomial arithmetic -------------------------------------

    def _power_reductions(self) -> list[list[int]]:
        """x^(degree + j) reduced mod the modulus, for j = 0..degree-2."""
        p, deg = self.p, self.degree
        reductions = []
        current = [(-c) % p for c in self.modulus[:deg]]  # x^deg
        reductions.append(current[:])
        for _ in range(deg - 2):
            shifted = [0] + current[:-1]
            top = current[-1]
            if top:
                for i in range(deg):
                    shifted[i] = (shifted[i] + top * reductions[0][i]) % p
            current = shifted
            reductions.append(current[:])
        return reductions

    def _mul_digits(self, a: list[int], b: list[int]) -> list[int]:
        p, deg = self.p, self.degree
        prod = _poly_mul(a, b, p)
        out = prod[:deg] + [0] * max(0, deg - len(prod))
        for j in range(deg, len(prod)):
            c = prod[j]
            if c:
                red = self._reductions[j - deg]
                for i in range(deg):
                    out[i] = (out[i] + c * red[i]) % p
        return out[:deg]

    def _frobenius_matrix(self) -> np.ndarray:
        deg = self.degree
        mat = np.zeros((deg, deg), dtype=np.int64)
        for i in range(deg):
            mat[:, i] = self._pow_digits(self._monomial(i), self.q)
        return mat

    def _monomial(self, i: int) -> list[int]:
        digits = [0] * self.degree
        digits[i] = 1
        return digits

    def _pow_digits(self, base: list[int], e: int) -> list[int]:
        result = [1] + [0] * (self.degree - 1)
        cur = base[:]
        while e:
            if e & 1:
                result = self._mul_digits(result, cur)
            cur = self._mul_digits(cur, cur)
            e >>= 1
        return result

    def _validate_frobenius(self) -> None:
        deg, p = self.degree, self.p
        eye = np.eye(deg, dtype=np.int64)
        power = eye.copy()
        for _ in range(self.n):
            power = (self.frobenius_matrix @ power) % p
        if not np.array_equal(power % p, eye):
            raise AssertionError("frobenius does not have order dividing n")
        for ell in {f for f in range(2, self.n + 1) if self.n % f == 0 and is_prime(f)}:
            power = eye.copy()
            for _ in range(self.n // ell):
                power = (self.frobenius_matrix @ power) % p
            if np.array_equal(power % p, eye):
                raise AssertionError("frobenius has order smaller than n")
        nullity = deg - _fp_rank((self.frobenius_matrix - eye) % p, p)
        if p**nullity != self.q:
            raise AssertionError("fixed field of frobenius is not the base field")

    # -- dense tables ----------------------------------------------------

    def _build_tables(self) -> None:
        size, p, deg = self.size, self.p, self.degree
        check_buffer(size * size, 8, "field multiplication table")
        digits = np.array([_decode(v, p, deg) for v in range(size)], dtype=np.int64)
        powers = p ** np.arange(deg, dtype=np.int64)
        self.add_table = (
            ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        ).astype(np.int64)
        self.neg_table = (((-digits) % p) @ powers).astype(np.int64)
        # shift[i] maps digit vectors b to digits of x^i * b mod modulus
        shift = np.empty((deg, deg, deg), dtype=np.int64)
        for i in range(deg):
            for j in range(deg):
                shift[i, :, j] = self._mul_digits(self._monomial(i), self._monomial(j))
        mul = np.empty((size, size), dtype=np.int64)
        for a in range(size):
            op = np.tensordot(digits[a], shift, axes=(0, 0)) % p  # deg x deg
            mul[a] = (((digits @ op.T) % p) @ powers)
        self.mul_table = mul
        frob = ((digits @ self.frobenius_matrix.T) % p) @ powers
        self.frob_table = frob.astype(np.int64)
        inv = np.zeros(size, dtype=np.int64)
        for a in range(1, size):
            inv[a] = self._pow_table_free(a, size - 2)
        self.inv_table = inv
        self._tables_built = True
        self._k_elements = tuple(
            int(a) for a in range(size) if int(self.frob_table[a]) == a
        )
        assert len(self._k_elements) == self.q

    def _pow_table_free(self, a: int, e: int) -> int:
        result = 1
        cur = a
        while e:
            if e & 1:
                result = int(self.mul_table[result, cur])
            cur = int(self.mul_table[cur, cur])
            e >>= 1
        return result

    # -- element operations ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._tables_built:
            return int(self.add_table[a, b])
        da, db = _decode(a, self.p, self.degree), _decode(b, self.p, self.degree)
        return _encode([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a: int) -> int:
        if self._tables_built:
            return int(self.neg_table[a])
        return _encode([(-x) % self.p for x in _decode(a, self.p, self.degree)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._tables_built:
            return int(self.mul_table[a, b])
        da, db = _decode(a, self.p, self.degree), _decode(b, self.p, self.degree)
        return _encode(self._mul_digits(da, db), self.p)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self._tables_built:
            return int(self.inv_table[a])
        return self.pow(a, self.size - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 0 if e else 1
        e %= self.size - 1
        result = 1
        cur = a
        while e:
            if e & 1:
                result = self.mul(result, cur)
            cur = self.mul(cur, cur)
            e >>= 1
        return result

    def frob(self, a: int, j: int = 1) -> int:
        j %= self.n
        if self._tables_built:
            for _ in range(j):
                a = int(self.frob_table[a])
            return a
        for _ in range(j):
            a = self.pow(a, self.q)
        return a

    def norm_to_base(self, a: int) -> int:
        out = 1
        for j in range(self.n):
            out = self.mul(out, self.frob(a, j))
        return out

    def in_base(self, a: int) -> bool:
        return self.frob(a) == a

    # -- base-field coordinates -------------------------------------------

    @property
    def k_elements(self) -> tuple[int, ...]:
        if self._k_elements is None:
            raise SizeLimit("tower too large for base-field element enumeration")
        return self._k_elements

    def _ensure_coords(self) -> None:
        if not self._tables_built:
            raise SizeLimit("tower too large for dense base-field coordinates")
        if self._k_basis is not None:
            return
        basis: list[int] = []
        span = {0}
        for e in range(self.size):
            if len(basis) == self.n:
                break
            if e in span:
                continue
            basis.append(e)
            span = {self.add(s, self.mul(c, e)) for s in span for c in self.k_elements}
        assert len(basis) == self.n
        coords: dict[int, tuple[int, ...]] = {}
        for combo in itertools.product(self.k_elements, repeat=self.n):
            val = 0
            for c, b in zip(combo, basis):
                val = self.add(val, self.mul(c, b))
            coords[val] = combo
        assert len(coords) == self.size
        self._k_basis = tuple(basis)
        self._k_coords = coords

    @property
    def k_basis(self) -> tuple[int, ...]:
        self._ensure_coords()
        return self._k_basis

    def k_coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of a K-element over the base field, in k_basis."""
        self._ensure_coords()
        return self._k_coords[a]

    def from_k_coords(self, coords) -> int:
        self._ensure_coords()
        val = 0
        for c, b in zip(coords, self._k_basis):
            val = self.add(val, self.mul(c, b))
        return val

    def __repr__(self) -> str:
        return f"FqTower(F_{self.p}^{self.degree} over F_{self.q})"


def _fp_rank(mat: np.ndarray, p: int) -> int:
    m = mat % p
    m = m.copy()
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r, c] % p:
                pivot = r
                break
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank] = (m[rank] * inv) % p
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] = (m[r] - m[r, c] * m[rank]) % p
        rank += 1
    return rank


_TOWER_CACHE: dict[tuple[int, int, int], FqTower] = {}


def make_tower(p: int, d: int, n: int, max_field: int = DEFAULT_MAX_FIELD) -> FqTower:
    """Validated tower; see FqTower for the canonical modulus choice.

    Towers are immutable, so identical parameters share one instance.
    """
    key = (p, d, n)
    cached = _TOWER_CACHE.get(key)
    if cached is not None:
        if cached.size > max_field:
            raise SizeLimit(f"field size {cached.size} exceeds bound {max_field}")
        return cached
    tower = FqTower(p, d, n, max_field)
    _TOWER_CACHE[key] = tower
    return tower


# -- matrices over a tower ----------------------------------------------------


def mat_identity(tower: FqTower, m: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))


def mat_mul(tower: FqTower, a: Matrix, b: Matrix) -> Matrix:
    m, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(m):
        row = []
        for j in range(cols):
            acc = 0
            for t in range(inner):
                acc = tower.add(acc, tower.mul(a[i][t], b[t][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(tower: FqTower, a: Matrix, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(
        _dot(tower, row, v) for row in a
    )


def _dot(tower: FqTower, row, v) -> int:
    acc = 0
    for x, y in zip(row, v):
        acc = tower.add(acc, tower.mul(x, y))
    return acc


def mat_frob(tower: FqTower, a: Matrix, j: int = 1) -> Matrix:
    return tuple(tuple(tower.frob(x, j) for x in row) for row in a)


def vec_frob(tower: FqTower, v, j: int = 1) -> tuple[int, ...]:
    return tuple(tower.frob(x, j) for x in v)


def mat_det(tower: FqTower, a: Matrix) -> int:
    m = len(a)
    if m == 1:
        return a[0][0]
    if m == 2:
        return tower.sub(tower.mul(a[0][0], a[1][1]), tower.mul(a[0][1], a[1][0]))
    # cofactor expansion along the first row
    det = 0
    for j in range(m):
        if a[0][j] == 0:
            continue
        minor = tuple(
            tuple(row[t] for t in range(m) if t != j) for row in a[1:]
        )
        term = tower.mul(a[0][j], mat_det(tower, minor))
        det = tower.add(det, term if j % 2 == 0 else tower.neg(term))
    return det


def mat_inv(tower: FqTower, a: Matrix) -> Matrix | None:
    m = len(a)
    det = mat_det(tower, a)
    if det == 0:
        return None
    if m == 1:
        return ((tower.inv(det),),)
    if m == 2:
        dinv = tower.inv(det)
        return (
            (tower.mul(a[1][1], dinv), tower.mul(tower.neg(a[0][1]), dinv)),
            (tower.mul(tower.neg(a[1][0]), dinv), tower.mul(a[0][0], dinv)),
        )
    # Gauss-Jordan for larger sizes
    aug = [list(row) + [1 if i == j else 0 for j in range(m)] for i, row in enumerate(a)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pinv = tower.inv(aug[col][col])
        aug[col] = [tower.mul(x, pinv) for x in aug[col]]
        for r in range(m):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [
                    tower.sub(x, tower.mul(factor, y)) for x, y in zip(aug[r], aug[col])
                ]
    return tuple(tuple(row[m:]) for row in aug)


def enumerate_matrices(tower: FqTower, m: int):
    """All m x m matrices over K, in row-major lexicographic order."""
    for flat in itertools.product(range(tower.size), repeat=m * m):
        yield tuple(tuple(flat[i * m + j] for j in range(m)) for i in range(m))


def enumerate_gl(
    tower: FqTower, m: int, max_matrices: int = DEFAULT_MAX_MATRICES
) -> list[Matrix]:
    total = tower.size ** (m * m)
    if total > max_matrices:
        raise SizeLimit(f"{total} matrices exceed bound {max_matrices}")
    return [a for a in enumerate_matrices(tower, m) if mat_det(tower, a) != 0]


def enumerate_sl(
    tower: FqTower, m: int, max_matrices: int = DEFAULT_MAX_MATRICES
) -> list[Matrix]:
    total = tower.size ** (m * m)
    if total > max_matrices:
        raise SizeLimit(f"{total} matrices exceed bound {max_matrices}")
    return [a for a in enumerate_matrices(tower, m) if mat_det(tower, a) == 1]
