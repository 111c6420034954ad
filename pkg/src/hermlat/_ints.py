"""Small integer helpers: primality, trial-division factoring, CRT."""

from fractions import Fraction

from .errors import FactorBoundExceeded, InvalidInput

FACTOR_BOUND = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(p: int) -> int:
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    return p


def factor(n: int, bound: int = FACTOR_BOUND) -> dict[int, int]:
    """Factor a positive integer by trial division up to ``bound``."""
    if n <= 0:
        raise InvalidInput("factor() needs a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        if d > bound:
            raise FactorBoundExceeded(f"unfactored part {n} exceeds bound {bound}")
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if n > bound and n > FACTOR_BOUND:
            # a single leftover prime is fine as long as it is certified prime
            if not is_prime(n):
                raise FactorBoundExceeded(f"unfactored part {n} exceeds bound {bound}")
        out[n] = out.get(n, 0) + 1
    return out


def factor_fraction(q: Fraction, bound: int = FACTOR_BOUND) -> dict[int, int]:
    """Signed prime exponents of a positive rational."""
    if q <= 0:
        raise InvalidInput("expected a positive rational")
    out = dict(factor(q.numerator, bound))
    for p, e in factor(q.denominator, bound).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e != 0}


def val(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise InvalidInput("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def fraction_val(q: Fraction, p: int) -> int:
    if q == 0:
        raise InvalidInput("valuation of 0")
    return val(q.numerator, p) - val(q.denominator, p)


def crt(residues: list[int], moduli: list[int]) -> int:
    """Chinese remainder for pairwise coprime moduli."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = pow(m, -1, n)
        x = x + m * ((r - x) * g % n)
        m *= n
    return x % m
