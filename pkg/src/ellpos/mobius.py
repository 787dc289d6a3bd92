"""The Mobius-type function S on the poset of finite abelian l-groups.

``S(A, C)`` is defined as a signed sum over A-chains ending at C.  Two
evaluators are provided:

* :func:`s_chain` sums chain weights literally, one chain at a time;
* :func:`s_conv` uses the equivalent recursion
  ``sum_{A <= B <= C} sub(A, B) * S(B, C) = [A == C]``, which follows from
  splitting each chain after its first link.

They are kept independent so each can check the other.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Literal

from .counting import chain_weight, sub_count
from .errors import DomainError, ResourceGuardError
from .poset import (
    GroupClass,
    elementary_cokernel_embeddable,
    embeds,
    enumerate_chains,
    enumerate_classes,
    enumerate_interval,
)
from .report import SweepReport

__all__ = [
    "SEntry",
    "DEFAULT_MAX_INTERVAL",
    "max_interval_members",
    "s_chain",
    "s_conv",
    "s_value",
    "clear_cache",
    "theorem_temp_factor",
    "verify_theorems",
]

DEFAULT_MAX_INTERVAL = 10_000
ENV_MAX_INTERVAL = "ELLPOS_MAX_INTERVAL"


@dataclass(frozen=True)
class SEntry:
    a: GroupClass
    c: GroupClass
    value: int
    method: Literal["chain_sum", "convolution"]
    chain_count: int | None = None


def max_interval_members() -> int:
    """Chain-enumeration guard: the environment override, else the default."""
    raw = os.environ.get(ENV_MAX_INTERVAL)
    if raw is None:
        return DEFAULT_MAX_INTERVAL
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{ENV_MAX_INTERVAL} must be an integer, got {raw!r}") from None
    if n < 0:
        raise DomainError(f"{ENV_MAX_INTERVAL} must be >= 0, got {n}")
    return n


def _same_ell(a: GroupClass, c: GroupClass):
    if a.ell != c.ell:
        raise DomainError(f"mismatched primes: {a.ell} vs {c.ell}")


def s_chain(a: GroupClass, c: GroupClass, max_interval: int | None = None) -> SEntry:
    """S(A, C) as the literal sum of chain weights.

    Refuses with :class:`ResourceGuardError` when the open interval (A, C)
    has more than ``max_interval`` members; chain counts grow much faster
    than the interval, so :func:`s_conv` is the tool for large inputs.
    """
    _same_ell(a, c)
    if a == c:
        return SEntry(a, c, 1, "chain_sum", 0)
    if not embeds(a, c):
        return SEntry(a, c, 0, "chain_sum", 0)
    interval = enumerate_interval(a, c)
    limit = max_interval_members() if max_interval is None else max_interval
    inner = len(interval) - 2
    if inner > limit:
        raise ResourceGuardError(
            "chain blowup",
            f"open interval ({a}, {c}) has {inner} members > {limit}; "
            f"use the convolution method or raise {ENV_MAX_INTERVAL}",
        )
    total = 0
    count = 0
    for ch in enumerate_chains(a, c, interval):
        total += chain_weight(ch)
        count += 1
    return SEntry(a, c, total, "chain_sum", count)


# Memo tables for s_conv, one per prime.  Reads are lock-free; inserts are
# serialised.  Values are deterministic, so a lost race only costs time.
_caches: dict[int, dict[tuple[GroupClass, GroupClass], int]] = {}
_cache_lock = threading.Lock()


def _cache_for(ell: int) -> dict:
    table = _caches.get(ell)
    if table is None:
        with _cache_lock:
            table = _caches.setdefault(ell, {})
    return table


def clear_cache(ell: int | None = None):
    with _cache_lock:
        if ell is None:
            _caches.clear()
        else:
            _caches.pop(ell, None)


def s_conv(a: GroupClass, c: GroupClass, cache: dict | None = None) -> SEntry:
    """S(A, C) via ``S(B, C) = -sum_{B < D <= C} sub(B, D) S(D, C)``.

    Fills S(B, C) for every B in [A, C], top down.  ``cache`` defaults to the
    shared per-prime memo; pass a fresh dict to evaluate cold.
    """
    _same_ell(a, c)
    if not embeds(a, c):
        return SEntry(a, c, 0, "convolution")
    if cache is None:
        cache = _cache_for(a.ell)
    key = (a, c)
    if key in cache:
        return SEntry(a, c, cache[key], "convolution")

    members = enumerate_interval(a, c).members
    fresh = {}
    for i in range(len(members) - 1, -1, -1):
        b = members[i]
        if (b, c) in cache:
            fresh[b] = cache[(b, c)]
            continue
        if b == c:
            val = 1
        else:
            val = 0
            for d in members[i + 1:]:
                if embeds(b, d):
                    val -= sub_count(b, d) * fresh[d]
        fresh[b] = val
    with _cache_lock:
        for b, val in fresh.items():
            cache.setdefault((b, c), val)
    return SEntry(a, c, fresh[a], "convolution")


def s_value(a: GroupClass, c: GroupClass) -> int:
    return s_conv(a, c).value


def theorem_temp_factor(a: GroupClass, c: GroupClass) -> tuple[GroupClass, int] | None:
    """The (B, k) with A <= B < C, rank B = rank A and B + (Z/l)^k = C, if any.

    Such a B can only be the first rank(A) parts of C, and it works iff the
    remaining parts of C are all 1 and A embeds in it.
    """
    _same_ell(a, c)
    if a.rank >= c.rank:
        raise DomainError(f"need rank A < rank C, got {a.rank} and {c.rank}")
    head, tail = c.parts[: a.rank], c.parts[a.rank:]
    b = c.with_parts(head)
    if all(p == 1 for p in tail) and embeds(a, b):
        return b, len(tail)
    return None


def _s_pair(a, c, method, max_interval):
    if method == "conv":
        return s_conv(a, c).value, None
    if method == "chain":
        return s_chain(a, c, max_interval).value, None
    conv = s_conv(a, c).value
    chain = s_chain(a, c, max_interval).value
    return conv, chain


def verify_theorems(
    ell: int,
    max_order_exponent: int,
    method: Literal["conv", "chain", "both"] = "both",
    max_interval: int | None = None,
) -> SweepReport:
    """Check the structural vanishing/factorisation results on every pair.

    Pairs (A, C) range over all classes of order at most l^bound, sorted by
    C then A.  For each pair:

    * rank A < rank C: S(A, C) = S(A, B) S(B, C) when
      :func:`theorem_temp_factor` finds B, else S(A, C) = 0;
    * rank A = rank C and no injection with elementary cokernel: S = 0;
    * S(A, C) != 0 implies an injection with elementary cokernel exists.

    With ``method="both"`` the two evaluators are compared as well.
    """
    if max_order_exponent < 0:
        raise DomainError(f"bound must be >= 0, got {max_order_exponent}")
    classes = enumerate_classes(ell, max_order_exponent)
    rep = SweepReport("theorems", ell, max_order_exponent)

    def bad(kind, a, c, **extra):
        rep.counterexamples.append(
            {"kind": kind, "a": str(a), "c": str(c), **{k: str(v) for k, v in extra.items()}}
        )

    for c in classes:
        for a in classes:
            rep.pairs_checked += 1
            s, other = _s_pair(a, c, method, max_interval)
            if other is not None and other != s:
                bad("method_mismatch", a, c, convolution=s, chain_sum=other)
            if s:
                rep.tally("s_nonzero")

            if not embeds(a, c):
                if s:
                    bad("nonzero_off_order", a, c, s=s)
                continue
            if a == c and s != 1:
                bad("diagonal_not_one", a, c, s=s)

            ece = elementary_cokernel_embeddable(a, c)
            if a.rank < c.rank:
                rep.tally("rank_increase")
                f = theorem_temp_factor(a, c)
                if f is None:
                    expected = 0
                else:
                    b, _ = f
                    expected = s_conv(a, b).value * s_conv(b, c).value
                    rep.tally("rank_increase_factored")
                if s != expected:
                    bad("rank_increase", a, c, s=s, expected=expected)
            else:
                rep.tally("equal_rank")
                if not ece and s:
                    bad("equal_rank_nonzero", a, c, s=s)
            if s and not ece:
                bad("nonzero_without_elementary_cokernel", a, c, s=s)
    return rep
