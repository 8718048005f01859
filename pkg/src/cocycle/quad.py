"""Imaginary quadratic rings Z[omega], ideal arithmetic, and the unit-ideal
cohomology isomorphism at finite scale.

The base field is the rationals, whose ideals are all principal, so the
invariant-principal-ideal quotient collapses to a finite computation: an
invariant ideal factors with equal exponents over each rational prime, a
product of the primes above p is extended (hence killed in the quotient)
exactly when the ramification degree divides the exponent, and unramified
primes have degree one. What remains is indexed by subsets of the ramified
primes; the quotient is the subgroup of subsets whose prime product is
principal, each tested exactly by lattice-point enumeration.

Ideals are stored in Hermite normal form (a, b + c*omega) with a, c > 0 and
0 <= b < a; the norm is a*c. All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .cohomology import GammaGroup, H1Set, h1, make_cocycle
from .errors import (
    DEFAULT_MAX_QUAD_D,
    BijectionFailure,
    NotSquarefree,
    SizeLimit,
)
from .groups import cyclic_group, make_group

Elem = tuple[int, int]  # x + y*omega


@dataclass(frozen=True)
class QuadRing:
    """Ring of integers of Q(sqrt(-d)); omega is sqrt(-d), or (1+sqrt(-d))/2
    when d = 3 mod 4."""

    d: int
    half_basis: bool
    discriminant: int

    @property
    def omega_trace(self) -> int:
        # omega + conj(omega)
        return 1 if self.half_basis else 0

    @property
    def omega_norm(self) -> int:
        # omega * conj(omega)
        return (self.d + 1) // 4 if self.half_basis else self.d

    def add(self, u: Elem, v: Elem) -> Elem:
        return (u[0] + v[0], u[1] + v[1])

    def mul(self, u: Elem, v: Elem) -> Elem:
        # omega^2 = omega_trace * omega - omega_norm
        x1, y1 = u
        x2, y2 = v
        cross = y1 * y2
        return (
            x1 * x2 - self.omega_norm * cross,
            x1 * y2 + y1 * x2 + self.omega_trace * cross,
        )

    def conj(self, u: Elem) -> Elem:
        x, y = u
        return (x + self.omega_trace * y, -y)

    def norm(self, u: Elem) -> int:
        x, y = u
        return x * x + self.omega_trace * x * y + self.omega_norm * y * y

    def mul_omega(self, u: Elem) -> Elem:
        return self.mul(u, (0, 1))


def make_ring(d: int, max_d: int = DEFAULT_MAX_QUAD_D) -> QuadRing:
    if d < 1 or d > max_d:
        raise SizeLimit(f"d must be in [1, {max_d}], got {d}")
    for f in range(2, math.isqrt(d) + 1):
        if d % (f * f) == 0:
            raise NotSquarefree(f"{d} is divisible by {f}^2")
    half = d % 4 == 3
    disc = -d if half else -4 * d
    return QuadRing(d, half, disc)


@dataclass(frozen=True)
class QuadIdeal:
    """Nonzero integral ideal in Hermite normal form (a, b + c*omega)."""

    ring: QuadRing
    a: int
    b: int
    c: int

    @property
    def norm(self) -> int:
        return self.a * self.c

    def contains(self, u: Elem) -> bool:
        x, y = u
        if y % self.c != 0:
            return False
        return (x - (y // self.c) * self.b) % self.a == 0

    def basis(self) -> tuple[Elem, Elem]:
        return (self.a, 0), (self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a}, {self.b}+{self.c}w)"


def _hnf_two_rows(vectors: list[Elem]) -> tuple[int, int, int]:
    """Hermite form of the lattice spanned by (x, y) columns: ((a,0),(b,c))."""
    vecs = [v for v in vectors if v != (0, 0)]
    if not vecs:
        raise ValueError("zero lattice has no normal form")
    # gcd of the y-components with a witnessing combination
    b, c = 0, 0
    xs: list[int] = []
    for x, y in vecs:
        if y == 0:
            xs.append(x)
            continue
        if c == 0:
            b, c = x, y
            continue
        g, s, t = _extgcd(c, y)
        # s*c + t*y = g; the combination has y-part g, and the two reduced
        # leftovers drop into the x-only pile
        nb = s * b + t * x
        xs.append((y // g) * b - (c // g) * x)
        b, c = nb, g
    if c < 0:
        b, c = -b, -c
    a = 0
    for x in xs:
        a = math.gcd(a, abs(x))
    if a == 0:
        raise ValueError("lattice does not have full rank")
    if c == 0:
        raise ValueError("lattice does not have full rank")
    b %= a
    return a, b, c


def _extgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def ideal_from_generators(ring: QuadRing, gens: list[Elem]) -> QuadIdeal:
    """Ideal generated by ring elements: the lattice spanned by g and omega*g."""
    vectors: list[Elem] = []
    for g in gens:
        vectors.append(g)
        vectors.append(ring.mul_omega(g))
    a, b, c = _hnf_two_rows(vectors)
    ideal = QuadIdeal(ring, a, b, c)
    for v in ((a, 0), (b, c)):
        assert ideal.contains(ring.mul_omega(v)), "normal form is not omega-stable"
    return ideal


def principal_ideal(ring: QuadRing, g: Elem) -> QuadIdeal:
    if g == (0, 0):
        raise ValueError("principal ideal needs a nonzero generator")
    return ideal_from_generators(ring, [g])


def whole_ring(ring: QuadRing) -> QuadIdeal:
    return principal_ideal(ring, (1, 0))


def multiply(i: QuadIdeal, j: QuadIdeal) -> QuadIdeal:
    if i.ring is not j.ring:
        raise ValueError("ideals must share a ring")
    ring = i.ring
    products = [ring.mul(u, v) for u in i.basis() for v in j.basis()]
    vectors = products + [ring.mul_omega(p) for p in products]
    a, b, c = _hnf_two_rows(vectors)
    result = QuadIdeal(ring, a, b, c)
    assert result.norm == i.norm * j.norm, "ideal norm is not multiplicative"
    return result


def conjugate(i: QuadIdeal) -> QuadIdeal:
    ring = i.ring
    vectors = []
    for v in i.basis():
        w = ring.conj(v)
        vectors.append(w)
        vectors.append(ring.mul_omega(w))
    a, b, c = _hnf_two_rows(vectors)
    return QuadIdeal(ring, a, b, c)


def elements_of_norm(ring: QuadRing, n: int) -> list[Elem]:
    """All x + y*omega with norm exactly n, by ellipse lattice enumeration."""
    if n <= 0:
        return []
    out = []
    if ring.half_basis:
        # 4n = (2x + y)^2 + d y^2
        y_bound = math.isqrt(4 * n // ring.d)
        for y in range(-y_bound, y_bound + 1):
            rest = 4 * n - ring.d * y * y
            if rest < 0:
                continue
            s = math.isqrt(rest)
            if s * s != rest:
                continue
            for sign in ((s,) if s == 0 else (s, -s)):
                if (sign - y) % 2 == 0:
                    out.append(((sign - y) // 2, y))
    else:
        y_bound = math.isqrt(n // ring.d)
        for y in range(-y_bound, y_bound + 1):
            rest = n - ring.d * y * y
            s = math.isqrt(rest)
            if s * s != rest:
                continue
            for sign in ((s,) if s == 0 else (s, -s)):
                out.append((sign, y))
    return sorted(set(out))


def is_principal(i: QuadIdeal, max_norm: int = 10**9) -> Elem | None:
    """A generator of the ideal, or None; exact and complete for the norm bound."""
    n = i.norm
    if n > max_norm:
        raise SizeLimit(f"norm {n} exceeds principality-search bound {max_norm}")
    for g in elements_of_norm(i.ring, n):
        if principal_ideal(i.ring, g) == i:
            return g
    return None


def ramified_primes(ring: QuadRing) -> list[tuple[int, QuadIdeal]]:
    """Primes dividing the discriminant with the ideal above each; checks
    that the square is the rational prime and the ideal is conjugation-fixed."""
    out = []
    disc = abs(ring.discriminant)
    for p in range(2, disc + 1):
        if disc % p != 0 or any(p % q == 0 for q in range(2, p)):
            continue
        found = None
        for b in range(p):
            # omega-stability of (p, b + omega): p | b^2 + tr*b + nm
            value = b * b + ring.omega_trace * b + ring.omega_norm
            if value % p == 0:
                found = ideal_from_generators(ring, [(p, 0), (b, 1)])
                assert found.norm == p, f"lattice (p, b+w) above {p} is not stable"
                break
        assert found is not None, f"no prime ideal above ramified {p}"
        assert multiply(found, found) == principal_ideal(ring, (p, 0)), (
            f"square of the ideal above {p} is not ({p})"
        )
        assert conjugate(found) == found, f"ideal above {p} is not conjugation-fixed"
        out.append((p, found))
    return out


@dataclass(frozen=True)
class InvariantQuotientReport:
    """P_K^Gamma / (extended principal ideals), as subsets of ramified primes."""

    ring: QuadRing
    ramified: tuple[tuple[int, QuadIdeal], ...]
    principal_subsets: tuple[tuple[tuple[int, ...], Elem], ...]  # (prime subset, generator)

    @property
    def order(self) -> int:
        return len(self.principal_subsets)


def invariant_principal_quotient(ring: QuadRing) -> InvariantQuotientReport:
    """Test each subset of ramified primes for principality of its product."""
    ram = ramified_primes(ring)
    if len(ram) > 20:
        raise SizeLimit("too many ramified primes to enumerate subsets")
    principal: list[tuple[tuple[int, ...], Elem]] = []
    principal_keys: set[tuple[int, ...]] = set()
    for size in range(len(ram) + 1):
        for combo in itertools.combinations(ram, size):
            product = whole_ring(ring)
            for _, ideal in combo:
                product = multiply(product, ideal)
            gen = is_principal(product)
            if gen is not None:
                key = tuple(p for p, _ in combo)
                principal.append((key, gen))
                principal_keys.add(key)
    # subgroup structure under symmetric difference (squares are rational)
    for k1 in principal_keys:
        for k2 in principal_keys:
            sym_diff = tuple(sorted(set(k1) ^ set(k2)))
            assert sym_diff in principal_keys, "principal subsets are not a subgroup"
    return InvariantQuotientReport(ring, tuple(ram), tuple(principal))


@dataclass(frozen=True)
class UnitGroup:
    """Finite unit group with the conjugation action of the order-2 Galois group."""

    ring: QuadRing
    elements: tuple[Elem, ...]
    gamma_group: GammaGroup


def unit_group(ring: QuadRing) -> UnitGroup:
    units = elements_of_norm(ring, 1)
    pos = {u: i for i, u in enumerate(units)}
    table = [[pos[ring.mul(u, v)] for v in units] for u in units]
    group = make_group(table, tuple(f"{x}+{y}w" for x, y in units))
    gamma = cyclic_group(2)
    action = [list(range(len(units))), [pos[ring.conj(u)] for u in units]]
    return UnitGroup(ring, tuple(units), GammaGroup(gamma, group, action))


def unit_h1(ring: QuadRing) -> H1Set:
    return h1(unit_group(ring).gamma_group)


@dataclass(frozen=True)
class UnitsIsoReport:
    """Explicit match between principal invariant subsets and unit cocycle classes."""

    ring: QuadRing
    quotient: InvariantQuotientReport
    h1: H1Set
    pairs: tuple[tuple[tuple[int, ...], Elem, int], ...]  # (subset, generator, class)

    @property
    def matched(self) -> bool:
        return True  # construction fails loudly otherwise


def _unit_quotient(ring: QuadRing, numerator: Elem, denominator: Elem) -> Elem:
    """numerator / denominator, which must land in the ring."""
    n = ring.norm(denominator)
    product = ring.mul(numerator, ring.conj(denominator))
    assert product[0] % n == 0 and product[1] % n == 0, "quotient is not integral"
    return (product[0] // n, product[1] // n)


def verify_units_iso(ring: QuadRing) -> UnitsIsoReport:
    """Match lambda -> (sigma -> conj(lambda)/lambda) against the cocycle classes.

    The map must be a bijection from the principal-subset quotient onto the
    classes of H1 of the units; failure raises BijectionFailure.
    """
    quotient = invariant_principal_quotient(ring)
    units = unit_group(ring)
    h1_set = h1(units.gamma_group)
    pos = {u: i for i, u in enumerate(units.elements)}
    assignment: dict[int, tuple[int, ...]] = {}
    pairs = []
    identity = units.gamma_group.base.identity
    for subset, gen in quotient.principal_subsets:
        ratio = _unit_quotient(ring, ring.conj(gen), gen)
        assert ratio in pos, "conj(lambda)/lambda is not a unit"
        cocycle = make_cocycle(units.gamma_group, (identity, pos[ratio]))
        cls = h1_set.class_index(cocycle)
        if cls in assignment and assignment[cls] != subset:
            raise BijectionFailure(
                f"subsets {assignment[cls]} and {subset} map to one class"
            )
        assignment[cls] = subset
        pairs.append((subset, gen, cls))
    if len(assignment) != h1_set.order:
        raise BijectionFailure(
            f"{len(assignment)} classes hit, H1 has {h1_set.order}"
        )
    return UnitsIsoReport(ring, quotient, h1_set, tuple(pairs))
