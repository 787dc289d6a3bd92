"""Cohen-Lenstra weights, truncated measures and their A-th moments.

Weights are high-precision binary floats (mpmath) in a private context, so
the global mpmath precision is never touched.  Every measure records its
support bound M (classes of order <= l^M) and the number N of Euler-product
factors used; infinite sums are always reported as partial sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .counting import aut_count, surj_count
from .errors import DomainError
from .poset import GroupClass, check_ell, enumerate_classes

__all__ = [
    "DEFAULT_PRECISION",
    "DEFAULT_PRODUCT_TERMS",
    "TruncatedMeasure",
    "euler_product",
    "nu",
    "nu_bracket",
    "cohen_lenstra_measure",
    "finite_measure",
    "total_mass",
    "moment",
    "decimal_string",
]

DEFAULT_PRECISION = 128
DEFAULT_PRODUCT_TERMS = 64


def _context(precision: int) -> mpmath.ctx_mp.MPContext:
    if precision < 2:
        raise DomainError(f"precision must be at least 2 bits, got {precision}")
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return ctx


def _product(ctx, ell: int, n: int):
    p = ctx.mpf(1)
    for i in range(1, n + 1):
        p *= 1 - ctx.mpf(1) / ell ** i
    return p


def euler_product(ell: int, product_terms: int, precision: int = DEFAULT_PRECISION):
    """prod_{i=1}^{N} (1 - l^{-i})."""
    check_ell(ell)
    if product_terms < 1:
        raise DomainError(f"need at least one product term, got {product_terms}")
    return _product(_context(precision), ell, product_terms)


def nu(a: GroupClass, product_terms: int = DEFAULT_PRODUCT_TERMS, precision: int = DEFAULT_PRECISION):
    """Cohen-Lenstra weight of A with the Euler product cut after N factors.

    Each dropped factor is below 1, so this overestimates the limit; see
    :func:`nu_bracket` for a two-sided bound.
    """
    ctx = _context(precision)
    return euler_product(a.ell, product_terms, precision) / ctx.mpf(aut_count(a))


def nu_bracket(a: GroupClass, product_terms: int = DEFAULT_PRODUCT_TERMS, precision: int = DEFAULT_PRECISION):
    """(lower, upper) enclosing the untruncated weight of A.

    The tail prod_{i>N} (1 - l^{-i}) lies in [1 - l^{-N}/(l-1), 1].
    """
    ctx = _context(precision)
    upper = nu(a, product_terms, precision)
    tail = ctx.mpf(1) / (ctx.mpf(a.ell) ** product_terms * (a.ell - 1))
    return upper * (1 - tail), upper


@dataclass(frozen=True)
class TruncatedMeasure:
    ell: int
    order_bound_exponent: int
    product_terms: int | None
    precision: int
    weights: dict[GroupClass, mpmath.mpf] = field(hash=False)

    def __post_init__(self):
        check_ell(self.ell)
        for b, w in self.weights.items():
            if b.ell != self.ell:
                raise DomainError(f"class {b} is for l={b.ell}, measure is for l={self.ell}")
            if b.size > self.order_bound_exponent:
                raise DomainError(f"class {b} lies outside the support bound l^{self.order_bound_exponent}")
            if w < 0:
                raise DomainError(f"negative weight {w} on {b}")

    def support(self) -> list[GroupClass]:
        return sorted(self.weights, key=GroupClass.sort_key)

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "M": self.order_bound_exponent,
            "N": self.product_terms,
            "precision": self.precision,
            "weights": [[str(b), decimal_string(self.weights[b], self.precision)] for b in self.support()],
            "total_mass": decimal_string(total_mass(self), self.precision),
        }


def decimal_string(x, precision: int) -> str:
    digits = max(1, int(precision * 0.30103))
    return mpmath.nstr(x, digits, strip_zeros=False)


def cohen_lenstra_measure(
    ell: int,
    order_bound_exponent: int,
    product_terms: int = DEFAULT_PRODUCT_TERMS,
    precision: int = DEFAULT_PRECISION,
) -> TruncatedMeasure:
    """The Cohen-Lenstra measure restricted to classes of order <= l^M."""
    if order_bound_exponent < 0:
        raise DomainError(f"support bound must be >= 0, got {order_bound_exponent}")
    ctx = _context(precision)
    head = euler_product(ell, product_terms, precision)
    weights = {
        b: head / ctx.mpf(aut_count(b)) for b in enumerate_classes(ell, order_bound_exponent)
    }
    return TruncatedMeasure(ell, order_bound_exponent, product_terms, precision, weights)


def finite_measure(weights: dict[GroupClass, object], precision: int = DEFAULT_PRECISION) -> TruncatedMeasure:
    """A finitely supported measure from explicit weights (ints, strings, floats)."""
    if not weights:
        raise DomainError("a finite measure needs at least one class")
    ells = {b.ell for b in weights}
    if len(ells) != 1:
        raise DomainError(f"classes for several primes: {sorted(ells)}")
    ctx = _context(precision)
    w = {b: ctx.mpf(v) for b, v in weights.items()}
    bound = max(b.size for b in w)
    return TruncatedMeasure(ells.pop(), bound, None, precision, w)


def total_mass(mu: TruncatedMeasure):
    ctx = _context(mu.precision)
    s = ctx.mpf(0)
    for b in mu.support():
        s += mu.weights[b]
    return s


def moment(a: GroupClass, mu: TruncatedMeasure):
    """Partial A-th moment: sum over the support of |Surj(B, A)| * weight(B)."""
    if a.ell != mu.ell:
        raise DomainError(f"class {a} is for l={a.ell}, measure is for l={mu.ell}")
    ctx = _context(mu.precision)
    s = ctx.mpf(0)
    for b in mu.support():
        k = surj_count(b, a)
        if k:
            s += k * mu.weights[b]
    return s
