"""Isomorphism classes of finite abelian l-groups and the embedding order.

A class is stored as the descending partition of exponents, so
``Z/l^4 + Z/l^4 + Z/l`` is ``GroupClass(l, (4, 4, 1))`` and the trivial
group is the empty partition.  ``A <= B`` in the poset iff A injects into
B, which for partitions is componentwise containment of the (zero-padded)
parts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import zip_longest
from math import isqrt
from typing import Iterator

from .errors import DomainError

__all__ = [
    "GroupClass",
    "Chain",
    "Interval",
    "check_ell",
    "parse_partition",
    "format_partition",
    "embeds",
    "rank_prefix",
    "add_elementary",
    "insert_part",
    "mod_power_quotient",
    "enumerate_interval",
    "enumerate_chains",
    "elementary_cokernel_embeddable",
    "enumerate_classes",
    "partitions_up_to",
]


@lru_cache(maxsize=None)
def _is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    return all(n % p for p in range(3, isqrt(n) + 1, 2))


def check_ell(ell) -> int:
    """Return ``ell`` if it is an odd prime, else raise :class:`DomainError`.

    l = 2 is refused: the counting identities are only claimed for odd l.
    """
    if isinstance(ell, bool) or not isinstance(ell, int) or not _is_odd_prime(ell):
        raise DomainError(f"ell must be an odd prime >= 3, got {ell!r}")
    return ell


@dataclass(frozen=True, repr=False)
class GroupClass:
    """Isomorphism class of ``Z/l^{a_1} + ... + Z/l^{a_r}``.

    Parts are canonicalised on construction (sorted descending, zeros
    dropped), so equality and hashing are structural on the class.
    """

    ell: int
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        check_ell(self.ell)
        parts = tuple(self.parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p < 0:
                raise DomainError(f"partition parts must be nonnegative integers, got {parts!r}")
        object.__setattr__(self, "parts", tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        """log_l of the order."""
        return sum(self.parts)

    @property
    def order(self) -> int:
        return self.ell ** self.size

    @property
    def exponent(self) -> int:
        return self.ell ** self.parts[0] if self.parts else 1

    @property
    def is_elementary(self) -> bool:
        return all(p == 1 for p in self.parts)

    def padded(self, n: int) -> tuple[int, ...]:
        return self.parts + (0,) * (n - len(self.parts))

    def sort_key(self):
        return (self.size, self.parts)

    def with_parts(self, parts) -> GroupClass:
        return GroupClass(self.ell, tuple(parts))

    def __str__(self):
        return format_partition(self.parts)

    def __repr__(self):
        return f"GroupClass({self.ell}, {format_partition(self.parts)})"


@dataclass(frozen=True)
class Chain:
    """An A-chain: ``base < links[0] < links[1] < ...``."""

    base: GroupClass
    links: tuple[GroupClass, ...]

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        if not self.links:
            raise DomainError("a chain needs at least one link")
        prev = self.base
        for x in self.links:
            if x == prev or not embeds(prev, x):
                raise DomainError(f"chain is not strictly increasing at {prev} -> {x}")
            prev = x

    @property
    def top(self) -> GroupClass:
        return self.links[-1]

    def __len__(self):
        return len(self.links)


@dataclass(frozen=True)
class Interval:
    lo: GroupClass
    hi: GroupClass
    members: tuple[GroupClass, ...]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members


_PARTITION_RE = re.compile(r"^\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*$")


def parse_partition(text: str) -> tuple[int, ...]:
    """Parse ``"[2,1]"`` into ``(2, 1)``; ``"[]"`` is the trivial group.

    The parts must already be descending and positive.
    """
    m = _PARTITION_RE.match(text)
    if not m:
        raise DomainError(f"malformed partition {text!r}; expected e.g. [2,1] or []")
    body = m.group(1)
    parts = tuple(int(x) for x in body.split(",")) if body else ()
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise DomainError(f"partition {text!r} must list positive parts in descending order")
    return parts


def format_partition(parts) -> str:
    return "[" + ",".join(str(p) for p in parts) + "]"


def _same_ell(a: GroupClass, b: GroupClass):
    if a.ell != b.ell:
        raise DomainError(f"mismatched primes: {a.ell} vs {b.ell}")


def embeds(a: GroupClass, b: GroupClass) -> bool:
    """True iff A injects into B."""
    _same_ell(a, b)
    if a.rank > b.rank:
        return False
    return all(x <= y for x, y in zip(a.parts, b.parts))


def rank_prefix(a: GroupClass, i: int) -> int:
    """dim over F_l of l^{i-1}A / l^i A, i.e. the number of parts >= i."""
    if i < 1:
        raise DomainError(f"rank_prefix needs i >= 1, got {i}")
    return sum(1 for p in a.parts if p >= i)


def add_elementary(a: GroupClass, i: int) -> GroupClass:
    """A + (Z/l)^i."""
    if i < 0:
        raise DomainError(f"cannot add {i} copies of Z/l")
    return a.with_parts(a.parts + (1,) * i)


def insert_part(a: GroupClass, j: int) -> GroupClass:
    """A + Z/l^j."""
    if j < 1:
        raise DomainError(f"cyclic summand exponent must be >= 1, got {j}")
    return a.with_parts(a.parts + (j,))


def mod_power_quotient(b: GroupClass, e: int) -> GroupClass:
    """B / l^e B."""
    if e < 0:
        raise DomainError(f"quotient exponent must be >= 0, got {e}")
    return b.with_parts(min(p, e) for p in b.parts)


def _interval_parts(lo: tuple[int, ...], hi: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    n = len(hi)
    lo = lo + (0,) * (n - len(lo))
    out = [0] * n

    def rec(i, cap):
        if i == n:
            yield tuple(out)
            return
        for v in range(lo[i], min(hi[i], cap) + 1):
            out[i] = v
            yield from rec(i + 1, v)

    yield from rec(0, hi[0] if hi else 0)


def enumerate_interval(a: GroupClass, c: GroupClass) -> Interval:
    """All B with A <= B <= C, sorted by (order, parts)."""
    _same_ell(a, c)
    if not embeds(a, c):
        return Interval(a, c, ())
    members = {a.with_parts(p) for p in _interval_parts(a.parts, c.parts)}
    return Interval(a, c, tuple(sorted(members, key=GroupClass.sort_key)))


def enumerate_chains(a: GroupClass, c: GroupClass, interval: Interval | None = None) -> Iterator[Chain]:
    """Stream every A-chain whose maximum is C, each exactly once.

    Nothing is yielded unless A < C.  Links are drawn from the open interval
    (A, C]; the order of the stream is deterministic (depth first, links
    tried in interval order).
    """
    _same_ell(a, c)
    if a == c or not embeds(a, c):
        return
    if interval is None:
        interval = enumerate_interval(a, c)
    members = interval.members
    # above[x]: members strictly above x, in interval order
    above = {
        x: [y for y in members if y != x and embeds(x, y)]
        for x in members
    }
    path: list[GroupClass] = []

    def rec(x):
        for y in above[x]:
            path.append(y)
            if y == c:
                yield Chain(a, tuple(path))
            else:
                yield from rec(y)
            path.pop()

    yield from rec(a)


def elementary_cokernel_embeddable(a: GroupClass, c: GroupClass) -> bool:
    """True iff some injection A -> C has elementary abelian (possibly trivial) cokernel.

    The image must sit between lC and C, which happens exactly when
    ``max(c_i - 1, 0) <= a_i <= c_i`` for every i.
    """
    _same_ell(a, c)
    if a.rank > c.rank:
        return False
    return all(max(y - 1, 0) <= x <= y for x, y in zip_longest(a.parts, c.parts, fillvalue=0))


def partitions_up_to(m: int) -> list[tuple[int, ...]]:
    """All partitions of every n <= m, sorted by (size, parts)."""
    if m < 0:
        raise DomainError(f"size bound must be >= 0, got {m}")
    out = []

    def rec(remaining, cap, prefix):
        out.append(tuple(prefix))
        for p in range(min(remaining, cap), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(m, m, [])
    return sorted(out, key=lambda p: (sum(p), p))


def enumerate_classes(ell: int, m: int) -> list[GroupClass]:
    """Every class of order at most l^m."""
    check_ell(ell)
    return [GroupClass(ell, p) for p in partitions_up_to(m)]
