"""Bounded-precision l-adic integers and the local quadratic algebras K_l.

A ``PadicInt`` is a residue known modulo l^N.  A ``LocalQuadAlg`` fixes the
completion of Q(sqrt(-p)) at l together with a working precision; its
elements (``LocalKElem``) store coordinates w.r.t. a canonical integral
basis:

* split:     the two components of K_l = Q_l x Q_l;
* inert:     {1, w} where w = sqrt(-p) for odd l, and w = (1+sqrt(-p))/2
             in the dyadic inert case (p = 3 mod 8), which is where the
             maximal order needs half-coordinates;
* ramified:  {1, sqrt(-p)}, with valuations in uniformizer units
             (val(l) = 2).
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from ._ints import require_prime, val
from .errors import InsufficientPrecision, InvalidInput, NoRoot
from .symbols import artin, hilbert

DEFAULT_PRECISION = 64

#: Sentinel returned by valuations of residues indistinguishable from zero.
INFINITE = float("inf")

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"


@dataclass(frozen=True)
class PadicInt:
    ell: int
    precision: int
    residue: int

    def __post_init__(self):
        require_prime(self.ell)
        if self.precision < 1:
            raise InvalidInput("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.ell**self.precision)

    @property
    def modulus(self) -> int:
        return self.ell**self.precision

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.ell != self.ell:
                raise InvalidInput("mixed primes")
            return other
        return PadicInt(self.ell, self.precision, int(other))

    def _binop(self, other, fn) -> "PadicInt":
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        return PadicInt(self.ell, n, fn(self.residue, o.residue))

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.ell, self.precision, -self.residue)

    def is_zero(self) -> bool:
        return self.residue == 0

    def is_unit(self) -> bool:
        return self.residue % self.ell != 0

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise InsufficientPrecision("inverse of a non-unit")
        return PadicInt(
            self.ell, self.precision, pow(self.residue, -1, self.modulus)
        )

    def shift_down(self, k: int) -> "PadicInt":
        """Exact division by ell^k; costs k digits of precision."""
        if k == 0:
            return self
        if self.precision <= k:
            raise InsufficientPrecision("no digits left after shift")
        if self.residue % self.ell**k:
            raise InvalidInput("residue not divisible")
        return PadicInt(self.ell, self.precision - k, self.residue // self.ell**k)

    def valuation(self) -> Union[int, float]:
        if self.residue == 0:
            return INFINITE
        return val(self.residue, self.ell)

    def __str__(self):
        return f"{self.residue} (mod {self.ell}^{self.precision})"


def hensel_root(coeffs: Sequence[int], ell: int, precision: int) -> PadicInt:
    """Root of f = sum coeffs[i] x^i mod ell^precision, lifted by Newton
    iteration from a simple residue root (smallest such root is chosen)."""
    require_prime(ell)

    def f(x, m):
        acc = 0
        for c in reversed(list(coeffs)):
            acc = (acc * x + c) % m
        return acc

    def df(x, m):
        acc = 0
        deg = len(coeffs) - 1
        for i, c in enumerate(coeffs):
            if i >= 1:
                acc = (acc + i * c * pow(x, i - 1, m)) % m
        del deg
        return acc

    root = None
    for r in range(ell):
        if f(r, ell) == 0 and df(r, ell) % ell != 0:
            root = r
            break
    if root is None:
        raise NoRoot("no simple residue root")
    modulus = ell**precision
    x = root
    known = 1
    while known < precision:
        known = min(2 * known, precision)
        m = ell**known
        x = (x - f(x, m) * pow(df(x, m), -1, m)) % m
    assert f(x, modulus) == 0
    return PadicInt(ell, precision, x)


def _sqrt_mod_odd_prime(a: int, ell: int) -> int:
    """Tonelli-Shanks; assumes a is a nonzero square mod the odd prime ell."""
    a %= ell
    if ell % 4 == 3:
        return pow(a, (ell + 1) // 4, ell)
    q, s = ell - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (ell - 1) // 2, ell) != ell - 1:
        z += 1
    c = pow(z, q, ell)
    x = pow(a, (q + 1) // 2, ell)
    t = pow(a, q, ell)
    m = s
    while t != 1:
        t2i, i = t, 0
        for i in range(1, m):
            t2i = t2i * t2i % ell
            if t2i == 1:
                break
        b = pow(c, 1 << (m - i - 1), ell)
        x = x * b % ell
        c = b * b % ell
        t = t * c % ell
        m = i
    return x


def _sqrt_2adic(u: int, precision: int) -> int:
    """Square root of u = 1 mod 8 in Z_2, normalized to be 1 mod 4."""
    if u % 8 != 1:
        raise NoRoot("2-adic square root needs u = 1 mod 8")
    x = 1
    for j in range(3, precision):
        if (x * x - u) % (1 << (j + 1)):
            x += 1 << (j - 1)
    m = 1 << precision
    x %= m
    if x % 4 != 1:
        x = (-x) % m
    assert (x * x - u) % m == 0
    return x


@dataclass(frozen=True)
class LocalQuadAlg:
    """Completion of Q(sqrt(-p)) at ell, at a fixed working precision."""

    p: int
    ell: int
    precision: int
    kind: str
    split_root: Optional[PadicInt] = None

    @property
    def half_basis(self) -> bool:
        """True when the integral basis is {1, (1+sqrt(-p))/2}."""
        return self.kind == INERT and self.ell == 2

    def one(self) -> "LocalKElem":
        return LocalKElem(self, 1, 0) if self.kind != SPLIT else LocalKElem(self, 1, 1)

    def zero(self) -> "LocalKElem":
        return LocalKElem(self, 0, 0)

    def from_int(self, n: int) -> "LocalKElem":
        if self.kind == SPLIT:
            return LocalKElem(self, n, n)
        return LocalKElem(self, n, 0)

    def sqrt_minus_p(self) -> "LocalKElem":
        if self.kind == SPLIT:
            u = self.split_root.residue
            return LocalKElem(self, u, -u)
        if self.half_basis:
            return LocalKElem(self, -1, 2)  # 2w - 1
        return LocalKElem(self, 0, 1)

    def from_k_coords(self, a, b) -> "LocalKElem":
        """Element a + b*sqrt(-p) from exact rational coordinates."""
        from fractions import Fraction

        a, b = Fraction(a), Fraction(b)
        m = self.ell**self.precision
        try:
            ar = a.numerator * pow(a.denominator, -1, m) % m
            br = b.numerator * pow(b.denominator, -1, m) % m
        except ValueError:
            raise InvalidInput("coordinates are not integral at ell")
        return self.from_int(ar) + LocalKElem.scalar(self, br) * self.sqrt_minus_p()


def make_local_alg(p: int, ell: int, precision: int = DEFAULT_PRECISION) -> LocalQuadAlg:
    """Build the completion K_ell at the requested precision."""
    require_prime(p), require_prime(ell)
    if precision < 4:
        raise InsufficientPrecision("need at least 4 digits")
    a = artin(p, ell)
    if a == 1:
        if ell == 2:
            root = PadicInt(2, precision, _sqrt_2adic((-p) % (1 << precision), precision))
        else:
            r = _sqrt_mod_odd_prime(-p, ell)
            r = min(r, ell - r)
            root = hensel_root([p, 0, 1], ell, precision)
            if root.residue % ell != r:
                root = PadicInt(ell, precision, -root.residue)
        assert (root.residue**2 + p) % ell**precision == 0
        return LocalQuadAlg(p, ell, precision, SPLIT, root)
    return LocalQuadAlg(p, ell, precision, INERT if a == -1 else RAMIFIED)


@dataclass(frozen=True)
class LocalKElem:
    """Element of a LocalQuadAlg in its canonical integral basis."""

    alg: LocalQuadAlg
    c0: int
    c1: int
    precision: Optional[int] = None

    def __post_init__(self):
        n = self.precision if self.precision is not None else self.alg.precision
        m = self.alg.ell**n
        object.__setattr__(self, "precision", n)
        object.__setattr__(self, "c0", self.c0 % m)
        object.__setattr__(self, "c1", self.c1 % m)

    @staticmethod
    def scalar(alg: "LocalQuadAlg", n: int) -> "LocalKElem":
        return alg.from_int(n)

    @property
    def modulus(self) -> int:
        return self.alg.ell**self.precision

    def _coerce(self, other) -> "LocalKElem":
        if isinstance(other, LocalKElem):
            if other.alg.ell != self.alg.ell or other.alg.kind != self.alg.kind:
                raise InvalidInput("mixed algebras")
            return other
        return self.alg.from_int(int(other))

    def _with(self, c0, c1, prec=None) -> "LocalKElem":
        return LocalKElem(self.alg, c0, c1, prec if prec is not None else self.precision)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        return self._with(self.c0 + o.c0, self.c1 + o.c1, n)

    __radd__ = __add__

    def __neg__(self):
        return self._with(-self.c0, -self.c1)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        a, b, c, d = self.c0, self.c1, o.c0, o.c1
        alg = self.alg
        if alg.kind == SPLIT:
            return self._with(a * c, b * d, n)
        if alg.half_basis:
            q = (1 + alg.p) // 4
            return self._with(a * c - q * b * d, a * d + b * c + b * d, n)
        return self._with(a * c - alg.p * b * d, a * d + b * c, n)

    __rmul__ = __mul__

    def conj(self) -> "LocalKElem":
        if self.alg.kind == SPLIT:
            return self._with(self.c1, self.c0)
        if self.alg.half_basis:
            return self._with(self.c0 + self.c1, -self.c1)
        return self._with(self.c0, -self.c1)

    def norm(self) -> PadicInt:
        prod = self * self.conj()
        if self.alg.kind == SPLIT:
            assert prod.c0 == prod.c1
            return PadicInt(self.alg.ell, prod.precision, prod.c0)
        assert prod.c1 == 0
        return PadicInt(self.alg.ell, prod.precision, prod.c0)

    def trace(self) -> PadicInt:
        s = self + self.conj()
        return PadicInt(self.alg.ell, s.precision, s.c0)

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def inverse(self) -> "LocalKElem":
        if not self.is_unit():
            raise InsufficientPrecision("inverse of a non-unit")
        if self.alg.kind == SPLIT:
            m = self.modulus
            return self._with(pow(self.c0, -1, m), pow(self.c1, -1, m))
        n = self.norm()
        return self.conj() * _lift_inverse(n)

    def scale_down(self, k: int) -> "LocalKElem":
        """Exact division by ell^k (costs k digits)."""
        if k == 0:
            return self
        if self.precision <= k:
            raise InsufficientPrecision("no digits left after scale_down")
        d = self.alg.ell**k
        if self.c0 % d or self.c1 % d:
            raise InvalidInput("not divisible by ell^k")
        return self._with(self.c0 // d, self.c1 // d, self.precision - k)

    def valuation(self) -> Union[int, float]:
        """Valuation; uniformizer-normalized in the ramified case (so the
        rational prime has valuation 2), min of components in the split
        case, the l-adic valuation otherwise."""
        alg, ell = self.alg, self.alg.ell
        if self.is_zero():
            return INFINITE
        if alg.kind == SPLIT:
            vs = [INFINITE if c == 0 else val(c, ell) for c in (self.c0, self.c1)]
            return min(vs)
        if alg.kind == INERT:
            vs = [INFINITE if c == 0 else val(c, ell) for c in (self.c0, self.c1)]
            return min(vs)
        # ramified
        if ell == alg.p or ell == 2 == alg.p:
            v0 = INFINITE if self.c0 == 0 else 2 * val(self.c0, ell)
            v1 = INFINITE if self.c1 == 0 else 2 * val(self.c1, ell) + 1
            return min(v0, v1)
        # dyadic ramified with p = 1 mod 4: uniformizer 1 + sqrt(-p)
        x, v = self, 0
        while True:
            if x.is_zero():
                return INFINITE
            if (x.c0 + x.c1) % 2:
                return v
            if x.c0 % 2 == 0 and x.c1 % 2 == 0:
                x = x.scale_down(1)
                v += 2
                continue
            # both coordinates odd: divide once by the uniformizer
            num = x * LocalKElem(x.alg, 1, -1)  # times conj(1 + sqrt(-p))
            half = (1 + x.alg.p) // 2
            num = num.scale_down(1)
            x = num * x.alg.from_int(pow(half, -1, num.modulus))
            v += 1

    def __str__(self):
        if self.alg.kind == SPLIT:
            return f"({self.c0}, {self.c1})"
        gen = "w" if self.alg.half_basis else f"sqrt(-{self.alg.p})"
        return f"{self.c0} + {self.c1}*{gen}"


def _lift_inverse(n: PadicInt) -> int:
    if not n.is_unit():
        raise InsufficientPrecision("inverse of a non-unit")
    return pow(n.residue, -1, n.modulus)


def padic_val(x: Union[PadicInt, LocalKElem]) -> Union[int, float]:
    """Valuation of a bounded-precision element (INFINITE for residue 0)."""
    return x.valuation()


def is_local_norm(a, p: int, ell: int) -> bool:
    """True iff the nonzero rational a is a norm from K_ell."""
    return hilbert(a, -p, ell) == 1
