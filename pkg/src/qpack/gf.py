"""Exact arithmetic in GF(p^n), plus the primality helpers used by the bound
calculator.

Fields are constructed through :func:`make_field`, which factors the order,
picks a deterministic irreducible modulus and returns an immutable
:class:`FieldSpec`.  Elements are reduced coefficient vectors with a total
order (zero first), so every downstream structure has one canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering
from typing import Iterable, Sequence


class NotPrimePowerError(ValueError):
    """Field order is not p^n for a prime p and n >= 1."""


# ---------------------------------------------------------------------------
# primes
# ---------------------------------------------------------------------------

def is_prime(m: int) -> bool:
    """Deterministic trial division; every order in scope fits in 64 bits."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def next_prime_geq(m: int) -> int:
    """Smallest prime >= m (m >= 2).

    The result is checked against the Bertrand window on every call: there is
    always a prime in [m, 2m), so anything outside it is a bug.
    """
    if m < 2:
        raise ValueError(f"next_prime_geq needs m >= 2, got {m}")
    p = m
    while not is_prime(p):
        p += 1
    assert p < 2 * m, f"prime search left the Bertrand window: {p} >= 2*{m}"
    return p


def prime_power_decomposition(q: int) -> tuple[int, int]:
    """Write q as p^n; raise :class:`NotPrimePowerError` otherwise."""
    if q < 2:
        raise NotPrimePowerError(f"field order must be >= 2, got {q}")
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    n = 0
    rest = q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise NotPrimePowerError(f"{q} has at least two distinct prime factors")
    return p, n


def is_prime_power(q: int) -> bool:
    try:
        prime_power_decomposition(q)
    except NotPrimePowerError:
        return False
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p); coefficient lists, constant term first
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    rem = list(a)
    _trim(rem)
    quot = [0] * max(len(rem) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while len(rem) >= len(b):
        shift = len(rem) - len(b)
        factor = rem[-1] * inv_lead % p
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
        _trim(rem)
    return _trim(quot), rem


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for idx in range(p**d):
            trial = [(idx // p**k) % p for k in range(d)] + [1]
            _, rem = _poly_divmod(poly, trial, p)
            if not rem:
                return False
    return True


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible of degree n, scanning the low coefficients as a
    base-p counter with the constant term least significant."""
    for idx in range(p**n):
        poly = [(idx // p**k) % p for k in range(n)] + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible of degree {n} over GF({p})")  # impossible


# ---------------------------------------------------------------------------
# field and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """An explicit GF(p^n): order, characteristic and reduction modulus.

    ``modulus`` is monic of degree n, constant term first, and is always the
    lexicographically smallest irreducible in the scan order of
    :func:`_smallest_irreducible`, so identical orders give identical fields.
    """

    p: int
    n: int
    q: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if self.q != self.p**self.n or not is_prime(self.p) or self.n < 1:
            raise NotPrimePowerError(f"inconsistent field spec p={self.p} n={self.n} q={self.q}")
        if len(self.modulus) != self.n + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")

    def __repr__(self):
        return f"GF({self.q})"

    # -- elements ----------------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        """Element with canonical-order index ``value`` (base-p digits are the
        coefficients, constant term least significant)."""
        if not 0 <= value < self.q:
            raise ValueError(f"element value {value} outside [0, {self.q})")
        return FieldElement(self, tuple((value // self.p**i) % self.p for i in range(self.n)))

    def from_coeffs(self, coeffs: Iterable[int]) -> "FieldElement":
        reduced = tuple(c % self.p for c in coeffs)
        if len(reduced) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(reduced)}")
        return FieldElement(self, reduced)

    def elements(self) -> tuple["FieldElement", ...]:
        """All q elements in canonical order, zero first."""
        return self._elements

    @cached_property
    def _elements(self) -> tuple["FieldElement", ...]:
        return tuple(self.element(v) for v in range(self.q))

    @cached_property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.element(1)

    # -- dense operation tables (fast path for the geometry loops) ----------

    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        els = self._elements
        return tuple(tuple((a + b).value for b in els) for a in els)

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        els = self._elements
        return tuple(tuple((a * b).value for b in els) for a in els)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple((-a).value for a in self._elements)

    @cached_property
    def inv_table(self) -> tuple[int, ...]:
        """Multiplicative inverses by element value; index 0 is unused."""
        return (0,) + tuple(a.inverse().value for a in self._elements[1:])


@total_ordering
@dataclass(frozen=True)
class FieldElement:
    """A reduced element of a :class:`FieldSpec`; coefficient vector, constant
    term first."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @cached_property
    def value(self) -> int:
        """Canonical integer form: base-p digits read most significant first."""
        return sum(c * self.field.p**i for i, c in enumerate(self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        return f"{self.field!r}[{self.value}]"

    def __lt__(self, other: "FieldElement") -> bool:
        self._check(other)
        return self.value < other.value

    def _check(self, other: "FieldElement"):
        if self.field != other.field:
            raise ValueError(f"mixed fields: {self.field!r} and {other.field!r}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        f = self.field
        if f.n == 1:
            return FieldElement(f, (self.coeffs[0] * other.coeffs[0] % f.p,))
        prod = _poly_mul(self.coeffs, other.coeffs, f.p)
        _, rem = _poly_divmod(prod, f.modulus, f.p)
        rem += [0] * (f.n - len(rem))
        return FieldElement(f, tuple(rem))

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse; extended Euclid against the modulus."""
        if self.is_zero:
            raise ZeroDivisionError(f"0 has no inverse in {self.field!r}")
        f = self.field
        if f.n == 1:
            return FieldElement(f, (pow(self.coeffs[0], f.p - 2, f.p),))
        r0, r1 = list(f.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, f.p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, f.p), f.p)
        # r0 is a nonzero constant: modulus is irreducible and self != 0
        scale = pow(r0[0], f.p - 2, f.p)
        inv = [c * scale % f.p for c in s0]
        inv += [0] * (f.n - len(inv))
        return FieldElement(f, tuple(inv[: f.n]))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """The field of order q with the deterministic modulus choice.

    Pure: repeated calls return the identical field object (cached), and
    rebuilding from scratch yields the same modulus.
    """
    p, n = prime_power_decomposition(q)
    return FieldSpec(p=p, n=n, q=q, modulus=_smallest_irreducible(p, n))
