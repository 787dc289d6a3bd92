"""Exact closed-form counts of maps and subgroups between finite abelian l-groups.

Everything here is integer arithmetic.  Exponents are summed first and
powers of l taken last.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DomainError, FormulaError
from .poset import Chain, GroupClass

__all__ = [
    "lambda_count",
    "inj_count",
    "aut_count",
    "sub_count",
    "surj_count",
    "chain_weight",
]


def _same_ell(a: GroupClass, b: GroupClass):
    if a.ell != b.ell:
        raise DomainError(f"mismatched primes: {a.ell} vs {b.ell}")


def lambda_count(a: GroupClass) -> int:
    """Number of alternating bilinear forms on A, as a Z/exp(A)-module.

    A form is fixed by its values on generator pairs i < j, and the value on
    (e_i, e_j) is killed by l^min(a_i, a_j).
    """
    p = a.parts
    return a.ell ** sum(min(p[i], p[j]) for i in range(len(p)) for j in range(i + 1, len(p)))


def _inj_factors(a: GroupClass, b: GroupClass) -> list[int]:
    ell = a.ell
    bp = b.parts
    factors = []
    for i, ai in enumerate(a.parts):
        hi = sum(min(ai, bj) for bj in bp[i:])
        lo = sum(min(ai - 1, bj) for bj in bp[i:])
        factors.append(ell ** hi - ell ** lo)
    return factors


@lru_cache(maxsize=65536)
def inj_count(a: GroupClass, b: GroupClass) -> int:
    """|Inj(A, B)|, the number of injective homomorphisms A -> B."""
    _same_ell(a, b)
    n = lambda_count(a)
    for f in _inj_factors(a, b):
        n *= f
    return n


def aut_count(a: GroupClass) -> int:
    return inj_count(a, a)


@lru_cache(maxsize=65536)
def sub_count(a: GroupClass, b: GroupClass) -> int:
    """Number of subgroups of B isomorphic to A."""
    _same_ell(a, b)
    q, r = divmod(inj_count(a, b), aut_count(a))
    if r:
        raise FormulaError(f"|Aut {a}| does not divide |Inj({a}, {b})|")
    return q


def surj_count(b: GroupClass, a: GroupClass) -> int:
    """|Surj(B, A)|; equal to |Inj(A, B)| by Pontryagin duality."""
    _same_ell(a, b)
    return inj_count(a, b)


def chain_weight(chain: Chain) -> int:
    """(-1)^len * sub(A, A_1) * sub(A_1, A_2) * ... for an A-chain."""
    if not isinstance(chain, Chain):
        raise DomainError(f"expected a Chain, got {type(chain).__name__}")
    w = -1 if len(chain) % 2 else 1
    prev = chain.base
    for x in chain.links:
        w *= sub_count(prev, x)
        if not w:
            raise DomainError(f"invalid chain: {prev} does not embed in {x}")
        prev = x
    return w
