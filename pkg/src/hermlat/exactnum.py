"""Exact arithmetic in K = Q(sqrt(-p)) and the positive determinant classes.

Elements of K are pairs (a, b) of rationals standing for a + b*sqrt(-p).
The class of a positive rational q modulo norms from K is written in the
canonical form (inert support, residual bit): the square-free set of inert
primes at which q has odd valuation, together with one extra bit that is
only available when p = 1 mod 4 and records whether the residual factor of
q fails to be a 2-adic local norm.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._ints import FACTOR_BOUND, factor_fraction, is_prime, require_prime
from .errors import InvalidInput
from .symbols import artin, hilbert, legendre

Rational = Fraction


@dataclass(frozen=True)
class KElem:
    """a + b*sqrt(-p) with exact rational coordinates."""

    p: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        require_prime(self.p)
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    # -- ring/field structure -------------------------------------------------
    def _coerce(self, other) -> "KElem":
        if isinstance(other, KElem):
            if other.p != self.p:
                raise InvalidInput("mixed base primes")
            return other
        return KElem(self.p, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._coerce(other)
        return KElem(self.p, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return KElem(self.p, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return KElem(
            self.p,
            self.a * o.a - self.p * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "KElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in K")
        return KElem(self.p, self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def conj(self) -> "KElem":
        return KElem(self.p, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.p * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    # -- integrality ----------------------------------------------------------
    def in_order_r(self) -> bool:
        """Membership in Z[sqrt(-p)]."""
        return self.a.denominator == 1 and self.b.denominator == 1

    def in_order_ok(self) -> bool:
        """Membership in the maximal order of K."""
        if self.p % 4 != 3:
            return self.in_order_r()
        two_a, two_b = 2 * self.a, 2 * self.b
        return (
            two_a.denominator == 1
            and two_b.denominator == 1
            and (two_a - two_b) % 2 == 0
        )

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt(-{self.p})"


def k_elem(p: int, a=0, b=0) -> KElem:
    return KElem(p, Fraction(a), Fraction(b))


def sqrt_minus_p(p: int) -> KElem:
    return KElem(p, Fraction(0), Fraction(1))


def k_norm(x: KElem) -> Fraction:
    """Norm down to Q: x times its conjugate."""
    return x.norm()


@dataclass(frozen=True)
class DetClass:
    """Class of a positive rational modulo norms of K = Q(sqrt(-p))."""

    p: int
    inert_support: frozenset[int]
    rs_bit: int

    def __post_init__(self):
        require_prime(self.p)
        object.__setattr__(self, "inert_support", frozenset(self.inert_support))
        if self.rs_bit not in (0, 1):
            raise InvalidInput("rs_bit must be 0 or 1")
        if self.rs_bit and not (self.p % 4 == 1):
            raise InvalidInput("rs_bit is only available when p = 1 mod 4")
        for ell in self.inert_support:
            if artin(self.p, ell) != -1:
                raise InvalidInput(f"{ell} is not inert for p={self.p}")

    def is_trivial(self) -> bool:
        return not self.inert_support and self.rs_bit == 0

    def __mul__(self, other: "DetClass") -> "DetClass":
        if other.p != self.p:
            raise InvalidInput("mixed base primes")
        return DetClass(
            self.p,
            self.inert_support ^ other.inert_support,
            (self.rs_bit + other.rs_bit) % 2,
        )

    def __str__(self):
        if self.is_trivial():
            return "[1]"
        parts = [str(ell) for ell in sorted(self.inert_support)]
        if self.rs_bit:
            parts.append("g")
        return "[" + "*".join(parts) + "]"


def trivial_class(p: int) -> DetClass:
    return DetClass(p, frozenset(), 0)


def det_class_of(q, p: int, bound: int = FACTOR_BOUND) -> DetClass:
    """Canonical form of a positive rational q modulo norms from K."""
    q = Fraction(q)
    if q <= 0:
        raise InvalidInput("det_class_of needs a positive rational")
    require_prime(p)
    support = {
        ell
        for ell, e in factor_fraction(q, bound).items()
        if artin(p, ell) == -1 and e % 2
    }
    residual = q
    for ell in support:
        residual /= ell
    bit = 0
    if p % 4 == 1 and hilbert(residual, -p, 2) == -1:
        bit = 1
    return DetClass(p, frozenset(support), bit)


def gamma_rs_generator(p: int) -> int:
    """Smallest prime representing the residual-class generator, when
    p = 1 mod 4.  Verified against its defining local symbols."""
    require_prime(p)
    if p % 4 != 1:
        raise InvalidInput("residual class group is trivial unless p = 1 mod 4")
    g = 3
    while True:
        if is_prime(g) and g % 4 == 3 and g % p != 0 and legendre(g, p) == -1:
            break
        g += 2
    # defining conditions: nontrivial exactly at 2 and p
    assert hilbert(g, -p, 2) == -1
    assert hilbert(g, -p, p) == -1
    assert hilbert(g, -p, g) == 1
    return g
