"""Legendre, Hilbert and Artin symbols over Q and its completions.

Sign conventions follow the classical closed formulas: for an odd prime l
and a = l^alpha*u, b = l^beta*v (u, v units),

    (a,b)_l = (-1)^(alpha*beta*eps(l)) * (u|l)^beta * (v|l)^alpha,

and at l = 2, with a = 2^alpha*u, b = 2^beta*v,

    (a,b)_2 = (-1)^(eps(u)eps(v) + alpha*omega(v) + beta*omega(u)),

where eps(x) = (x-1)/2 and omega(x) = (x^2-1)/8 taken mod 2.  The infinite
place is the sentinel ``INFINITE_PLACE``; the symbol there is -1 exactly
when both arguments are negative.
"""

from fractions import Fraction

from ._ints import factor_fraction, fraction_val, is_prime
from .errors import InvalidInput

#: Sentinel "prime" standing for the real place, so product-formula loops
#: can treat all places uniformly.
INFINITE_PLACE = 0

Rational = Fraction


def legendre(a: int, ell: int) -> int:
    """Legendre symbol (a|ell) for an odd prime ell and gcd(a, ell) = 1."""
    if ell == 2 or not is_prime(ell):
        raise InvalidInput(f"legendre needs an odd prime, got {ell}")
    if a % ell == 0:
        raise InvalidInput(f"legendre needs gcd(a, ell) = 1, got a={a}, ell={ell}")
    s = pow(a, (ell - 1) // 2, ell)
    return -1 if s == ell - 1 else 1


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def _split_val(x: Fraction, ell: int) -> tuple[int, Fraction]:
    v = fraction_val(x, ell)
    return v, x / Fraction(ell) ** v


def hilbert(a, b, ell: int) -> int:
    """Hilbert symbol (a,b)_ell; ell is a prime or INFINITE_PLACE."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise InvalidInput("hilbert symbol needs nonzero arguments")
    if ell == INFINITE_PLACE:
        return -1 if (a < 0 and b < 0) else 1
    if not is_prime(ell):
        raise InvalidInput(f"{ell} is not a prime or the infinite place")
    alpha, u = _split_val(a, ell)
    beta, v = _split_val(b, ell)
    if ell == 2:
        un = u.numerator * u.denominator  # odd; same class mod squares
        vn = v.numerator * v.denominator
        e = _eps(un) * _eps(vn) + alpha * _omega(vn) + beta * _omega(un)
        return -1 if e % 2 else 1
    un = u.numerator * pow(u.denominator, -1, ell) % ell
    vn = v.numerator * pow(v.denominator, -1, ell) % ell
    s = 1
    if alpha % 2 and beta % 2 and _eps(ell):
        s = -s
    if beta % 2:
        s *= legendre(un, ell)
    if alpha % 2:
        s *= legendre(vn, ell)
    return s


def hilbert_support(a, b) -> list[int]:
    """Places where (a,b)_l could be nontrivial: infinity, 2 and every
    prime dividing a numerator or denominator of either argument."""
    places = {INFINITE_PLACE, 2}
    for x in (Fraction(a), Fraction(b)):
        places.update(factor_fraction(abs(x)))
    return sorted(places)


def artin(p: int, ell: int) -> int:
    """Splitting behaviour of the quadratic field Q(sqrt(-p)) at ell:
    +1 split, 0 ramified, -1 inert."""
    if not is_prime(p) or not is_prime(ell):
        raise InvalidInput("artin symbol needs prime arguments")
    if p == 2:
        return 0 if ell == 2 else legendre(-2, ell)
    # odd p: ramified exactly at the primes dividing the field discriminant
    if ell == p:
        return 0
    if ell == 2:
        if p % 4 == 1:
            return 0
        return 1 if p % 8 == 7 else -1
    return legendre(-p, ell)


def ramified_primes(p: int) -> tuple[int, ...]:
    """Primes where Q(sqrt(-p)) ramifies."""
    if p == 2 or p % 4 == 3:
        return (p,)
    return (2, p)
