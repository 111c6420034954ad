"""Hermitian Gram-matrix lattices over K, its orders, and completions.

A lattice is presented by a square hermitian Gram matrix together with one
order tag per basis vector: tag "ok" means the vector carries a maximal
order coefficient, tag "r" a Z[sqrt(-p)] coefficient.  All entries are
exact elements of K; a local context changes how predicates read the same
data (which prime matters, which precision bounds internal reductions),
not how it is stored.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._ints import factor_fraction, fraction_val, require_prime
from .errors import InvalidInput, NonHermitian, SingularGram
from .exactnum import DetClass, KElem, det_class_of, k_elem, sqrt_minus_p
from .kmatrix import (
    Matrix,
    conj_transpose,
    field_inverse,
    gauss_det,
    is_hermitian,
    mat,
    mat_mul,
    submatrix,
)
from .padic import DEFAULT_PRECISION, INFINITE

TAG_R, TAG_OK = "r", "ok"

GLOBAL_OK, GLOBAL_R, LOCAL_OK, LOCAL_R2 = (
    "global-ok",
    "global-r",
    "local-ok",
    "local-r2",
)


@dataclass(frozen=True)
class RingCtx:
    """Which ring the lattice lives over, and (if local) at which prime."""

    p: int
    kind: str
    prime: Optional[int] = None
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        require_prime(self.p)
        if self.kind in (GLOBAL_OK, GLOBAL_R):
            if self.prime is not None:
                raise InvalidInput("global context takes no prime")
        elif self.kind == LOCAL_OK:
            require_prime(self.prime)
        elif self.kind == LOCAL_R2:
            if self.prime != 2 or self.p % 4 != 3:
                raise InvalidInput(
                    "the non-maximal local order only occurs at 2 with p = 3 mod 4"
                )
        else:
            raise InvalidInput(f"unknown ring kind {self.kind}")
        if self.kind in (GLOBAL_R, LOCAL_R2) and self.p % 4 != 3:
            raise InvalidInput("Z[sqrt(-p)] is maximal unless p = 3 mod 4; use the ok ring")

    @property
    def is_global(self) -> bool:
        return self.kind in (GLOBAL_OK, GLOBAL_R)

    @property
    def uses_tags(self) -> bool:
        return self.kind in (GLOBAL_R, LOCAL_R2)


def global_ok(p: int) -> RingCtx:
    return RingCtx(p, GLOBAL_OK)


def global_r(p: int) -> RingCtx:
    return RingCtx(p, GLOBAL_R)


def local_ok(p: int, ell: int, precision: int = DEFAULT_PRECISION) -> RingCtx:
    return RingCtx(p, LOCAL_OK, ell, precision)


def local_r2(p: int, precision: int = DEFAULT_PRECISION) -> RingCtx:
    return RingCtx(p, LOCAL_R2, 2, precision)


@dataclass(frozen=True)
class HermLattice:
    ctx: RingCtx
    gram: Matrix
    order_tags: tuple

    def __post_init__(self):
        n = len(self.gram)
        if n == 0 or any(len(r) != n for r in self.gram):
            raise InvalidInput("gram must be square and nonempty")
        if len(self.order_tags) != n:
            raise InvalidInput("one order tag per basis vector")
        if not self.ctx.uses_tags and any(t != TAG_OK for t in self.order_tags):
            raise InvalidInput("r-tagged vectors need an r-flavored context")
        if any(t not in (TAG_R, TAG_OK) for t in self.order_tags):
            raise InvalidInput("tags must be 'r' or 'ok'")
        if not is_hermitian(self.gram):
            raise NonHermitian("gram is not conjugate-symmetric")
        if gauss_det(self.gram).is_zero():
            raise SingularGram("gram is degenerate")

    @property
    def n(self) -> int:
        return len(self.gram)

    @property
    def p(self) -> int:
        return self.ctx.p

    def det(self) -> KElem:
        return gauss_det(self.gram)

    def det_rational(self) -> Fraction:
        d = self.det()
        assert d.is_rational()
        return d.a


def herm_lattice(ctx: RingCtx, rows, order_tags=None) -> HermLattice:
    g = mat(
        [
            [x if isinstance(x, KElem) else k_elem(ctx.p, x) for x in row]
            for row in rows
        ]
    )
    if order_tags is None:
        order_tags = (TAG_OK,) * len(g)
    return HermLattice(ctx, g, tuple(order_tags))


# ---------------------------------------------------------------------------
# exact valuations and memberships
# ---------------------------------------------------------------------------


def val_at_ramified(x: KElem, ell: int):
    """Valuation in uniformizer units at a ramified prime (val(ell) = 2)."""
    if x.is_zero():
        return INFINITE
    return fraction_val(x.norm(), ell)


def val_at_inert(x: KElem, ell: int):
    if x.is_zero():
        return INFINITE
    v = fraction_val(x.norm(), ell)
    assert v % 2 == 0
    return v // 2


def in_order(x: KElem, tag: str) -> bool:
    return x.in_order_r() if tag == TAG_R else x.in_order_ok()


def in_colon_ideal(x: KElem, target_tag: str, source_tag: str) -> bool:
    """Membership in (C_target : C_source) inside K, for C in {R, O_K}.

    (R:R) = R, (O:O) = O, (R:O) = conductor = 2*O_K, (O:R) = O_K.
    """
    if target_tag == TAG_R and source_tag == TAG_OK:
        if x.p % 4 != 3:
            return x.in_order_r()
        half = KElem(x.p, x.a / 2, x.b / 2)
        return half.in_order_ok()
    if target_tag == TAG_R:
        return x.in_order_r()
    return x.in_order_ok()


def lattice_contains(tags_outer, transform: Matrix, tags_inner) -> bool:
    """Does span(C_outer[j] * e_j) contain span(C_inner[i] * f_i), where
    f_i = sum_j transform[i][j] * e_j?"""
    for i, row in enumerate(transform):
        for j, x in enumerate(row):
            if not in_colon_ideal(x, tags_outer[j], tags_inner[i]):
                return False
    return True


def lattices_equal(tags_a, transform_b_in_a: Matrix, tags_b) -> bool:
    t = transform_b_in_a
    return lattice_contains(tags_a, t, tags_b) and lattice_contains(
        tags_b, field_inverse(t), tags_a
    )


# ---------------------------------------------------------------------------
# duals, modularity, ideals
# ---------------------------------------------------------------------------

STAR, VEE = "star", "vee"


def _alpha(tag: str) -> int:
    """Conductor generator scaling the dual of a tagged slot."""
    return 1 if tag == TAG_R else 2


def dual_transform(ll: HermLattice, dual_kind: str) -> Matrix:
    """Rows expressing a (pseudo-)basis of the requested dual lattice in
    the coordinates of ll's own basis."""
    try:
        ginv = field_inverse(ll.gram)
    except SingularGram:
        raise SingularGram("cannot dualize a degenerate gram")
    c = conj_transpose(ginv)  # rows f_i with phi(f_i, e_j) = delta_ij
    if dual_kind == STAR:
        return c
    if dual_kind != VEE:
        raise InvalidInput(f"unknown dual kind {dual_kind}")
    if ll.p % 4 != 3:
        return c  # the two dual notions coincide
    if ll.ctx.uses_tags:
        scales = [_alpha(t) for t in ll.order_tags]
    else:
        scales = [2] * ll.n  # R-valued dual of a maximal-order lattice
    return mat(
        [[k_elem(ll.p, s) * x for x in row] for s, row in zip(scales, c)]
    )


def dual_gram(ll: HermLattice, dual_kind: str = STAR) -> HermLattice:
    """The dual lattice, presented on its own (pseudo-)basis."""
    t = dual_transform(ll, dual_kind)
    g = mat_mul(mat_mul(t, ll.gram), conj_transpose(t))
    return HermLattice(ll.ctx, g, ll.order_tags)


def natural_dual_kind(ll: HermLattice) -> str:
    return VEE if ll.ctx.uses_tags else STAR


def is_modular(ll: HermLattice, exponent: int, dual_kind: Optional[str] = None) -> bool:
    """Is the lattice a-modular for a = (sqrt(-p))^exponent, i.e. does
    a * dual equal the lattice itself?"""
    kind = dual_kind or natural_dual_kind(ll)
    t = dual_transform(ll, kind)
    a = sqrt_minus_p(ll.p) if exponent >= 0 else sqrt_minus_p(ll.p).inverse()
    factor = k_elem(ll.p, 1)
    for _ in range(abs(exponent)):
        factor = factor * a
    scaled = mat([[factor * x for x in row] for row in t])
    return lattices_equal(ll.order_tags, scaled, ll.order_tags)


@dataclass(frozen=True)
class IdealVal:
    """Valuation data of a fractional ideal at the primes that matter.

    ``entries`` maps a prime to its exponent; ramified primes use
    uniformizer units (the rational prime has exponent 2 there).  ``rest``
    is the leftover positive rational content away from those primes
    (only meaningful for ideals generated by rationals).
    """

    p: int
    entries: tuple
    rest: Fraction = Fraction(1)

    def exponent(self, ell: int) -> int:
        for q, e in self.entries:
            if q == ell:
                return e
        return 0

    def contains(self, other: "IdealVal") -> bool:
        return all(self.exponent(q) <= other.exponent(q) for q, _ in
                   set(self.entries) | set(other.entries))

    def __str__(self):
        parts = [f"pi_{q}^{e}" for q, e in self.entries if e]
        if self.rest != 1:
            parts.append(str(self.rest))
        return "(" + (" * ".join(parts) if parts else "1") + ")"


def _relevant_primes(ctx: RingCtx):
    if ctx.is_global:
        return sorted({2, ctx.p})
    return [ctx.prime]


def _entry_val(x: KElem, p: int, ell: int):
    from .symbols import artin

    if artin(p, ell) == 0:
        return val_at_ramified(x, ell)
    if x.is_zero():
        return INFINITE
    # unramified: use coordinate valuations (valid in both integral bases)
    if p % 4 == 3 and ell == 2:
        u, v = x.a - x.b, 2 * x.b  # coordinates w.r.t. {1, (1+sqrt(-p))/2}
        vals = [fraction_val(c, ell) for c in (u, v) if c != 0]
    else:
        vals = [fraction_val(c, ell) for c in (x.a, x.b) if c != 0]
    return min(vals)


def _trace_ideal_gens(x: KElem, tag: str):
    """Rational generators of the Z-module of traces Tr(x*C)."""
    if tag == TAG_R or x.p % 4 != 3:
        gens = [x.trace(), (x * sqrt_minus_p(x.p)).trace()]
    else:
        omega = KElem(x.p, Fraction(1, 2), Fraction(1, 2))
        gens = [x.trace(), (x * omega).trace()]
    return [g for g in gens if g != 0]


def ideals(ll: HermLattice):
    """(scale, norm) of the lattice as valuation data."""
    primes = _relevant_primes(ll.ctx)
    scale_entries = []
    for q in primes:
        vals = [
            _entry_val(x, ll.p, q)
            for row in ll.gram
            for x in row
            if not x.is_zero()
        ]
        scale_entries.append((q, min(vals)))
    # rational generators of the norm ideal: diagonal values plus traces of
    # off-diagonal entries against their coefficient ideals
    gens = []
    for i in range(ll.n):
        if not ll.gram[i][i].is_zero():
            gens.append(ll.gram[i][i].a)
    for i in range(ll.n):
        for j in range(i + 1, ll.n):
            x = ll.gram[i][j]
            if x.is_zero():
                continue
            tag = (
                TAG_OK
                if TAG_OK in (ll.order_tags[i], ll.order_tags[j])
                else TAG_R
            )
            gens.extend(_trace_ideal_gens(x, tag))
    if not gens:
        raise InvalidInput("norm ideal of the zero lattice")
    content = _gcd_fractions(gens)
    norm_entries = []
    rest = abs(content)
    for q in primes:
        from .symbols import artin

        v = fraction_val(content, q)
        e = 2 * v if artin(ll.p, q) == 0 else v
        norm_entries.append((q, e))
        rest /= Fraction(q) ** v
    scale = IdealVal(ll.p, tuple(scale_entries))
    norm = IdealVal(ll.p, tuple(norm_entries), rest)
    assert scale.contains(norm), "norm ideal must sit inside the scale"
    return scale, norm


def _gcd_fractions(xs):
    """gcd of rationals: scale to a common denominator, gcd the numerators."""
    from math import gcd, lcm

    fracs = [Fraction(x) for x in xs]
    common = 1
    for x in fracs:
        common = lcm(common, x.denominator)
    g = 0
    for x in fracs:
        g = gcd(g, abs(int(x * common)))
    return Fraction(g, common)


def is_positive_definite(ll: HermLattice) -> bool:
    """All leading principal minors positive (exact)."""
    if not ll.ctx.is_global:
        raise InvalidInput("positive definiteness is a global predicate")
    for k in range(1, ll.n + 1):
        minor = gauss_det(submatrix(ll.gram, range(k), range(k)))
        if not minor.is_rational():
            raise NonHermitian("a leading minor is not fixed by conjugation")
        if minor.a <= 0:
            return False
    return True


def global_det_class(ll: HermLattice) -> DetClass:
    if not is_positive_definite(ll):
        raise InvalidInput("determinant class needs a positive-definite lattice")
    return det_class_of(ll.det_rational(), ll.p)


def entries_integral(ll: HermLattice) -> bool:
    """Is the pairing integral on the lattice (tag-aware)?"""
    for i in range(ll.n):
        for j in range(ll.n):
            x = ll.gram[i][j]
            ti, tj = ll.order_tags[i], ll.order_tags[j]
            if ll.ctx.uses_tags:
                # values must multiply the two coefficient ideals into R
                if TAG_OK in (ti, tj):
                    if not in_colon_ideal(x, TAG_R, TAG_OK):
                        return False
                elif not x.in_order_r():
                    return False
            else:
                if not x.in_order_ok():
                    return False
    return True
