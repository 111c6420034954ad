"""Isometry classes of self-dual and sqrt(-p)-modular lattices over the
local maximal orders O_{K_l}.

At an unramified prime there is a single self-dual class (existing only
for trivial determinant class when the prime is inert).  At a ramified
odd p every modular lattice is a sum of modular hyperbolic planes.  At a
ramified dyadic prime the classes are separated by the determinant sign
in the local norm-class group together with the norm ideal, which exact
Gram data (valuations, diagonal parities, odd part of the determinant)
decides completely.
"""

from dataclasses import dataclass
from fractions import Fraction

from ._ints import fraction_val
from .errors import Inconsistent, InvalidInput, NotModular, NotSelfDual
from .exactnum import k_elem, sqrt_minus_p
from .herm import (
    LOCAL_OK,
    HermLattice,
    RingCtx,
    _entry_val,
    herm_lattice,
    local_ok,
    val_at_ramified,
)
from .kmatrix import block_diag, mat
from .symbols import artin, hilbert

SELF_DUAL_UNRAMIFIED = "self-dual-unramified"
MODULAR_P = "modular-p"
RP_UNIQUE = "rp-unique"
RP_NORM_HYPERBOLIC = "rp-norm-hyperbolic"
RP_NORM_TWO = "rp-norm-two"
RU_NORMAL_PLUS = "ru-normal-plus"
RU_NORMAL_MIXED = "ru-normal-mixed"
RU_SUBNORMAL = "ru-subnormal"

ALL_VARIANTS = (
    SELF_DUAL_UNRAMIFIED,
    MODULAR_P,
    RP_UNIQUE,
    RP_NORM_HYPERBOLIC,
    RP_NORM_TWO,
    RU_NORMAL_PLUS,
    RU_NORMAL_MIXED,
    RU_SUBNORMAL,
)


@dataclass(frozen=True)
class LocalClassLabel:
    variant: str
    n: int

    def __post_init__(self):
        if self.variant not in ALL_VARIANTS:
            raise InvalidInput(f"unknown variant {self.variant}")
        if self.n < 1:
            raise InvalidInput("rank must be positive")

    def __str__(self):
        return f"{self.variant}(n={self.n})"


def _det_odd_part_sign(det: Fraction, p: int, ell: int) -> int:
    """Sign of the determinant in the local norm-class group at the
    ramified dyadic prime: +1 iff the odd part is a local norm."""
    v = fraction_val(det, ell)
    odd = det / Fraction(ell) ** v
    return hilbert(odd, -p, 2)


def _min_diag_val(ll: HermLattice, ell: int):
    vals = []
    for i in range(ll.n):
        x = ll.gram[i][i]
        if not x.is_zero():
            vals.append(fraction_val(x.a, ell))
    return min(vals) if vals else None


def _require_integral(ll: HermLattice, ell: int):
    for row in ll.gram:
        for x in row:
            if not x.is_zero() and _entry_val(x, ll.p, ell) < 0:
                raise NotSelfDual(f"entries are not integral at {ell}")


def _local_prime(ll: HermLattice, ell=None) -> int:
    if ell is not None:
        return ell
    if ll.ctx.is_global:
        raise InvalidInput("classification of a global lattice needs a prime")
    return ll.ctx.prime


def classify_local(ll: HermLattice, ell: int = None) -> LocalClassLabel:
    """Isometry class of the completion of ll at ell (or at the prime of
    a local context).  Preconditions (self-duality away from p, modularity
    at p and in the p = 2 case) are validated and raise otherwise."""
    ell = _local_prime(ll, ell)
    p, n = ll.p, ll.n
    a = artin(p, ell)
    det = ll.det_rational()

    if a != 0:
        _require_integral(ll, ell)
        if fraction_val(det, ell) != 0:
            raise NotSelfDual(f"determinant has nonzero valuation at {ell}")
        return LocalClassLabel(SELF_DUAL_UNRAMIFIED, n)

    if ell == p:  # ramified: the sqrt(-p)-modular side
        scale = min(
            val_at_ramified(x, ell) for row in ll.gram for x in row if not x.is_zero()
        )
        if scale < 1:
            raise NotModular("scale is not contained in the ramified prime")
        if val_at_ramified(ll.det(), ell) != n:
            raise NotModular("determinant valuation does not match modularity")
        if p != 2:
            return LocalClassLabel(MODULAR_P, n)
        # p = 2: ramified-prime dyadic case
        sign = _det_odd_part_sign(det, p, 2)
        want_unique = -1 if (n // 2) % 2 == 0 else 1  # (-1)^(n/2 - 1)
        if sign == want_unique:
            return LocalClassLabel(RP_UNIQUE, n)
        dv = _min_diag_val(ll, 2)
        if dv is not None and dv == 1:
            return LocalClassLabel(RP_NORM_TWO, n)
        return LocalClassLabel(RP_NORM_HYPERBOLIC, n)

    # ramified dyadic with ell = 2 != p, i.e. p = 1 mod 4
    _require_integral(ll, 2)
    if fraction_val(det, 2) != 0:
        raise NotSelfDual("determinant has nonzero valuation at 2")
    sign = _det_odd_part_sign(det, p, 2)
    dv = _min_diag_val(ll, 2)
    normal = dv is not None and dv == 0
    if n % 2 == 0:
        want_plus = -1 if (n // 2) % 2 == 0 else 1  # (-1)^(n/2 - 1)
        if sign == want_plus:
            if not normal:
                raise NotSelfDual("plus-type class must be normal")
            return LocalClassLabel(RU_NORMAL_PLUS, n)
        if normal:
            return LocalClassLabel(RU_NORMAL_MIXED, n)
        return LocalClassLabel(RU_SUBNORMAL, n)
    # odd rank: always normal, separated by the determinant sign
    return LocalClassLabel(RU_NORMAL_PLUS if sign == 1 else RU_NORMAL_MIXED, n)


# ---------------------------------------------------------------------------
# canonical representatives
# ---------------------------------------------------------------------------


def _blocks_for(label: LocalClassLabel, p: int):
    n = label.n
    delta = sqrt_minus_p(p)
    one = k_elem(p, 1)
    line = lambda c: mat([[k_elem(p, c)]])
    if label.variant == SELF_DUAL_UNRAMIFIED:
        return [line(1)] * n
    if label.variant == MODULAR_P:
        if n % 2 or p == 2:
            raise Inconsistent("modular planes at odd p need even rank")
        hp = mat([[k_elem(p, 0), delta], [-delta, k_elem(p, 0)]])
        return [hp] * (n // 2)
    if label.variant.startswith("rp-"):
        if p != 2 or n % 2:
            raise Inconsistent("ramified-prime labels need p = 2 and even rank")
        h21 = mat([[k_elem(2, 0), delta], [-delta, k_elem(2, 0)]])
        m_plus = mat([[k_elem(2, -2), delta], [-delta, k_elem(2, 4)]])
        m_minus = mat([[k_elem(2, -2), delta], [-delta, k_elem(2, 0)]])
        if label.variant == RP_NORM_HYPERBOLIC:
            return [h21] * (n // 2)
        head = m_plus if label.variant == RP_UNIQUE else m_minus
        return [head] + [h21] * (n // 2 - 1)
    # ramified-unit labels
    if p % 4 != 1:
        raise Inconsistent("ramified-unit labels need p = 1 mod 4")
    h20 = mat([[k_elem(p, 0), one], [one, k_elem(p, 0)]])
    if label.variant == RU_SUBNORMAL:
        if n % 2:
            raise Inconsistent("subnormal class needs even rank")
        return [h20] * (n // 2)
    if label.variant == RU_NORMAL_PLUS:
        if n % 2:
            return [line(1)] * n
        return [line(1), line(1)] + [h20] * (n // 2 - 1)
    if label.variant == RU_NORMAL_MIXED:
        if n % 2:
            return [line(1)] * (n - 1) + [line(-1)]
        return [line(1), line(-1)] + [h20] * (n // 2 - 1)
    raise Inconsistent(f"no representative for {label}")


def standard_gram(label: LocalClassLabel, ctx: RingCtx) -> HermLattice:
    """Canonical Gram representative of the label in the given local
    maximal-order context."""
    if ctx.kind != LOCAL_OK:
        raise InvalidInput("standard grams live in local maximal-order contexts")
    want_ell = ctx.p if label.variant in (MODULAR_P,) or label.variant.startswith("rp-") else 2
    if label.variant == SELF_DUAL_UNRAMIFIED:
        if artin(ctx.p, ctx.prime) == 0:
            raise Inconsistent("unramified label at a ramified prime")
    elif ctx.prime != want_ell or artin(ctx.p, ctx.prime) != 0:
        raise Inconsistent(f"label {label} does not live at prime {ctx.prime}")
    g = block_diag(*_blocks_for(label, ctx.p))
    return HermLattice(ctx, g, ("ok",) * label.n)


def standard_lattice(p: int, ell: int, label_variant: str, n: int,
                     precision: int = 64) -> HermLattice:
    return standard_gram(LocalClassLabel(label_variant, n), local_ok(p, ell, precision))


# ---------------------------------------------------------------------------
# existence tables
# ---------------------------------------------------------------------------


def local_exists(ctx: RingCtx, n: int, d_sign: int) -> frozenset:
    """Isometry classes of self-dual (unramified / ramified-unit) or
    sqrt(-p)-modular (at p) lattices of rank n whose determinant class has
    local symbol ``d_sign`` in {+1, -1}."""
    if n < 1:
        raise InvalidInput("rank must be positive")
    if d_sign not in (1, -1):
        raise InvalidInput("determinant sign must be +1 or -1")
    if ctx.kind != LOCAL_OK:
        raise InvalidInput("existence tables live in local maximal-order contexts")
    p, ell = ctx.p, ctx.prime
    a = artin(p, ell)
    if a == 1:
        return frozenset({LocalClassLabel(SELF_DUAL_UNRAMIFIED, n)})
    if a == -1:
        if d_sign == 1:
            return frozenset({LocalClassLabel(SELF_DUAL_UNRAMIFIED, n)})
        return frozenset()
    if ell == p and p != 2:
        if n % 2:
            return frozenset()
        want = hilbert(-1, -p, p) if (n // 2) % 2 else 1
        if d_sign == want:
            return frozenset({LocalClassLabel(MODULAR_P, n)})
        return frozenset()
    if ell == p == 2:
        if n % 2:
            return frozenset()
        unique_sign = -1 if (n // 2) % 2 == 0 else 1
        if d_sign == unique_sign:
            return frozenset({LocalClassLabel(RP_UNIQUE, n)})
        return frozenset(
            {LocalClassLabel(RP_NORM_HYPERBOLIC, n), LocalClassLabel(RP_NORM_TWO, n)}
        )
    # ramified dyadic, p = 1 mod 4
    if n % 2:
        v = RU_NORMAL_PLUS if d_sign == 1 else RU_NORMAL_MIXED
        return frozenset({LocalClassLabel(v, n)})
    plus_sign = -1 if (n // 2) % 2 == 0 else 1
    if d_sign == plus_sign:
        return frozenset({LocalClassLabel(RU_NORMAL_PLUS, n)})
    return frozenset(
        {LocalClassLabel(RU_NORMAL_MIXED, n), LocalClassLabel(RU_SUBNORMAL, n)}
    )
