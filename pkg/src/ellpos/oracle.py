"""Brute-force ground truth on explicit small groups.

Nothing in this module uses the closed-form counts.  Groups are
materialised as arrays of residue vectors, subgroups as explicit element
sets, and every number is obtained by enumeration:

* subgroups: closure of the trivial group under joins with cyclic
  subgroups (each step an index-l extension), to a fixpoint;
* isomorphism types: from counts of elements killed by l^i;
* Mobius values: the defining recursion on the containment order;
* homomorphism counts: all tuples of generator images, grouped by the
  subgroup the tuple generates so far (:func:`oracle_maps`), or one tuple
  at a time (:func:`oracle_maps_naive`, for small cases).

It is meant to be slow and easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import comb
from typing import Literal

import numpy as np

from .errors import DomainError, ResourceGuardError
from .mobius import s_conv
from .poset import GroupClass, elementary_cokernel_embeddable, enumerate_classes, enumerate_interval
from .report import SweepReport

__all__ = [
    "DEFAULT_CAP",
    "HARD_CAP",
    "ConcreteGroup",
    "Subgroup",
    "SubgroupLattice",
    "enumerate_subgroups",
    "lattice_for",
    "mu_lattice",
    "oracle_sub",
    "oracle_maps",
    "oracle_maps_naive",
    "amalgam_sum",
    "amalgam_check",
    "hall_trivialyes_check",
]

DEFAULT_CAP = 3 ** 5
HARD_CAP = 10_000

MapKind = Literal["injective", "surjective", "alternating_forms"]


def _check_cap(order: int, cap: int, what: str):
    if cap > HARD_CAP:
        raise DomainError(f"cap {cap} exceeds the hard cap of {HARD_CAP} elements")
    if order > cap:
        raise ResourceGuardError("oracle cap", f"{what} has {order} elements > cap {cap}")


def _mask_int(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


class ConcreteGroup:
    """``Z/l^{c_1} + ... + Z/l^{c_r}`` with elements indexed 0..n-1.

    Element ``k`` is the k-th residue vector in lexicographic order, so
    index 0 is the identity.
    """

    def __init__(self, shape: GroupClass, cap: int = DEFAULT_CAP):
        _check_cap(shape.order, cap, f"group {shape}")
        self.shape = shape
        self.ell = shape.ell
        self.order = shape.order
        self.moduli = np.array([self.ell ** c for c in shape.parts], dtype=np.int64)
        r = shape.rank
        strides = np.ones(r, dtype=np.int64)
        for i in range(r - 2, -1, -1):
            strides[i] = strides[i + 1] * self.moduli[i + 1]
        self.strides = strides
        self.coords = np.array(
            list(product(*(range(int(m)) for m in self.moduli))), dtype=np.int64
        ).reshape(self.order, r)
        self.times_ell = self.encode(self.coords * self.ell)
        self._pow_cache = {0: np.arange(self.order), 1: self.times_ell}
        # order_exp[x] = log_l of the order of x
        order_exp = np.zeros(self.order, dtype=np.int64)
        cur = np.arange(self.order)
        for _ in range(shape.parts[0] if r else 0):
            order_exp += cur != 0
            cur = self.times_ell[cur]
        self.order_exp = order_exp

    def encode(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self.moduli) @ self.strides

    def add(self, idx, g: int) -> np.ndarray:
        return self.encode(self.coords[idx] + self.coords[g])

    def add_one(self, x: int, g: int) -> int:
        return int(self.encode(self.coords[x] + self.coords[g]))

    def times_ell_power(self, k: int) -> np.ndarray:
        """Index of l^k * x, for every x."""
        if k not in self._pow_cache:
            self._pow_cache[k] = self.times_ell[self.times_ell_power(k - 1)]
        return self._pow_cache[k]

    def generators(self) -> list[int]:
        return [int(s) for s in self.strides]

    def element(self, idx: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coords[idx])

    def flags(self, members: np.ndarray) -> np.ndarray:
        out = np.zeros(self.order, dtype=bool)
        out[members] = True
        return out

    def join_cyclic(self, members: np.ndarray, flags: np.ndarray, g: int) -> np.ndarray:
        """Elements of H + <g>, as the union of the cosets H + k g."""
        chunks = [members]
        x = g
        while not flags[x]:
            chunks.append(self.add(members, x))
            x = self.add_one(x, g)
        return np.sort(np.concatenate(chunks))

    def iso_type(self, members: np.ndarray) -> GroupClass:
        """Isomorphism type of a subgroup from its element orders.

        If n_i elements are killed by l^i, then l^{i-1}H / l^i H has
        dimension log_l(n_i / n_{i-1}), and the parts are the conjugate of
        that rank sequence.
        """
        exps = self.order_exp[members]
        top = int(exps.max()) if len(exps) else 0
        killed = [int((exps <= i).sum()) for i in range(top + 1)]
        ranks = []
        for i in range(1, top + 1):
            ratio, rem = divmod(killed[i], killed[i - 1])
            d = _exact_log(ratio, self.ell)
            if rem or d is None:
                raise AssertionError(f"element set of size {len(members)} is not a subgroup")
            ranks.append(d)
        parts = [sum(1 for rk in ranks if rk >= j) for j in range(1, (ranks[0] if ranks else 0) + 1)]
        return GroupClass(self.ell, tuple(parts))

    def __repr__(self):
        return f"ConcreteGroup({self.shape!r})"


def _exact_log(n: int, base: int) -> int | None:
    k = 0
    while n > 1 and n % base == 0:
        n //= base
        k += 1
    return k if n == 1 else None


@dataclass(frozen=True, eq=False)
class Subgroup:
    index: int
    members: np.ndarray
    mask: int
    iso_type: GroupClass

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def issubset(self, other: Subgroup) -> bool:
        return self.mask & other.mask == self.mask


class SubgroupLattice:
    """All subgroups of a concrete group, ordered by inclusion.

    Subgroups are indexed so that a proper subgroup always has a smaller
    index than its supergroups; index 0 is trivial and the last is G.
    """

    def __init__(self, group: ConcreteGroup, subgroups: list[Subgroup], covers: list[list[int]]):
        self.group = group
        self.subgroups = subgroups
        self.covers = covers
        n = len(subgroups)
        up: list[frozenset] = [frozenset()] * n
        for i in range(n - 1, -1, -1):
            up[i] = frozenset({i}).union(*(up[k] for k in covers[i]))
        covered_by: list[list[int]] = [[] for _ in range(n)]
        for i, ks in enumerate(covers):
            for k in ks:
                covered_by[k].append(i)
        down: list[frozenset] = [frozenset()] * n
        for i in range(n):
            down[i] = frozenset({i}).union(*(down[k] for k in covered_by[i]))
        self.up = up
        self.down = down
        self._by_mask = {s.mask: s.index for s in subgroups}
        self._mu_to: dict[int, dict[int, int]] = {}

    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    @property
    def bottom(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def top(self) -> Subgroup:
        return self.subgroups[-1]

    def _idx(self, s) -> int:
        if isinstance(s, Subgroup):
            i = s.index if s.index < len(self.subgroups) and self.subgroups[s.index] is s else None
        else:
            i = int(s) if 0 <= int(s) < len(self.subgroups) else None
        if i is None:
            raise DomainError(f"subgroup {s!r} is not in this lattice")
        return i

    def leq(self, x, y) -> bool:
        return self._idx(y) in self.up[self._idx(x)]

    def of_type(self, a: GroupClass) -> list[Subgroup]:
        return [s for s in self.subgroups if s.iso_type == a]

    def lookup(self, members) -> Subgroup | None:
        i = self._by_mask.get(_mask_int(self.group.flags(np.asarray(members))))
        return None if i is None else self.subgroups[i]

    def mu_to(self, z) -> dict[int, int]:
        """mu(x, z) for every x <= z, by mu(x, z) = -sum_{x < y <= z} mu(y, z)."""
        zi = self._idx(z)
        if zi not in self._mu_to:
            mu = {zi: 1}
            for x in sorted(self.down[zi], reverse=True):
                if x != zi:
                    mu[x] = -sum(mu[y] for y in self.up[x] if y != x and y in mu)
            self._mu_to[zi] = mu
        return self._mu_to[zi]

    def mu(self, x, z) -> int:
        return self.mu_to(z).get(self._idx(x), 0)

    def to_json(self) -> dict:
        return {
            "ell": self.group.ell,
            "shape": str(self.group.shape),
            "subgroups": [
                {"index": s.index, "order": str(s.order), "iso_type": str(s.iso_type)}
                for s in self.subgroups
            ],
            "covers": [[i, k] for i, ks in enumerate(self.covers) for k in sorted(ks)],
        }


def enumerate_subgroups(group: ConcreteGroup) -> SubgroupLattice:
    """Every subgroup of ``group`` exactly once, with its covering relation.

    Starting from the trivial group, each H is joined with every cyclic
    subgroup <g> for which g is outside H but l g is inside; those joins are
    exactly the subgroups containing H with index l.  Any subgroup is
    reached this way through a composition series.
    """
    triv = np.array([0])
    tflags = group.flags(triv)
    subs = [Subgroup(0, triv, _mask_int(tflags), group.iso_type(triv))]
    index = {subs[0].mask: 0}
    covers: list[list[int]] = [[]]
    level = [0]
    while level:
        nxt = []
        for h in level:
            members = subs[h].members
            flags = group.flags(members)
            cand = flags[group.times_ell] & ~flags
            while cand.any():
                g = int(np.argmax(cand))
                joined = group.join_cyclic(members, flags, g)
                jflags = group.flags(joined)
                m = _mask_int(jflags)
                k = index.get(m)
                if k is None:
                    k = len(subs)
                    index[m] = k
                    subs.append(Subgroup(k, joined, m, group.iso_type(joined)))
                    covers.append([])
                    nxt.append(k)
                covers[h].append(k)
                cand &= ~jflags
        level = nxt
    return SubgroupLattice(group, subs, covers)


@lru_cache(maxsize=64)
def lattice_for(shape: GroupClass, cap: int = DEFAULT_CAP) -> SubgroupLattice:
    return enumerate_subgroups(ConcreteGroup(shape, cap))


def mu_lattice(lattice: SubgroupLattice, b, c) -> int:
    return lattice.mu(b, c)


def _same_ell(a: GroupClass, b: GroupClass):
    if a.ell != b.ell:
        raise DomainError(f"mismatched primes: {a.ell} vs {b.ell}")


def oracle_sub(a: GroupClass, g: GroupClass, cap: int = DEFAULT_CAP) -> int:
    """Number of subgroups of the concrete group ``g`` isomorphic to A."""
    _same_ell(a, g)
    return len(lattice_for(g, cap).of_type(a))


def _count_injective(a: GroupClass, group: ConcreteGroup) -> int:
    # Images g_1..g_r of A's generators define an injection iff each g_i has
    # order l^{a_i} and <g_i> meets H_{i-1} = <g_1..g_{i-1}> trivially.  Every
    # valid g_i inside a join H_{i-1} + <g> generates that same join, so
    # tuples are tallied per join.
    if a.rank == 0:
        return 1
    triv = np.array([0])
    states = {_mask_int(group.flags(triv)): (triv, 1)}
    total = 0
    for step, ai in enumerate(a.parts):
        last = step == a.rank - 1
        new: dict[int, tuple[np.ndarray, int]] = {}
        exact = group.order_exp == ai
        socle = group.times_ell_power(ai - 1)
        for members, cnt in states.values():
            flags = group.flags(members)
            valid = exact & ~flags[socle]
            if last:
                total += cnt * int(valid.sum())
                continue
            while valid.any():
                g = int(np.argmax(valid))
                joined = group.join_cyclic(members, flags, g)
                n = int(valid[joined].sum())
                valid[joined] = False
                m = _mask_int(group.flags(joined))
                prev = new.get(m)
                new[m] = (joined, cnt * n + (prev[1] if prev else 0))
        states = new
    return total


def _count_surjective(domain: GroupClass, group: ConcreteGroup) -> int:
    # Homs domain -> group are tuples x_j with l^{d_j} x_j = 0; the map is
    # onto iff the x_j generate the whole group.  Tuples are tallied per
    # generated subgroup.  With k(x) minimal such that l^k x lies in H,
    # |H + <x>| = |H| l^k(x), and x' inside H + <x> generates the same join
    # iff k(x') = k(x).
    if domain.rank == 0:
        return 1 if group.order == 1 else 0
    triv = np.array([0])
    states = {_mask_int(group.flags(triv)): (triv, 1)}
    total = 0
    for step, dj in enumerate(domain.parts):
        last = step == domain.rank - 1
        allowed = group.order_exp <= dj
        new: dict[int, tuple[np.ndarray, int]] = {}
        for members, cnt in states.values():
            flags = group.flags(members)
            k_of = np.full(group.order, -1)
            cur = np.arange(group.order)
            k = 0
            while (k_of < 0).any():
                k_of[(k_of < 0) & flags[cur]] = k
                cur = group.times_ell[cur]
                k += 1
            if last:
                need = _exact_log(group.order // len(members), group.ell)
                total += cnt * int((allowed & (k_of == need)).sum())
                continue
            rest = allowed.copy()
            while rest.any():
                x = int(np.argmax(rest))
                joined = group.join_cyclic(members, flags, x)
                same = group.flags(joined) & (k_of == k_of[x]) & rest
                n = int(same.sum())
                rest &= ~same
                m = _mask_int(group.flags(joined))
                prev = new.get(m)
                new[m] = (joined, cnt * n + (prev[1] if prev else 0))
        states = new
    return total


ALT_FORM_LIMIT = 2_000_000


def _count_alternating_forms(a: GroupClass) -> int:
    # A form is given by values v_ij in Z/exp(A) on generator pairs i < j
    # (v_ji = -v_ij, v_ii = 0).  It is well defined on A iff replacing e_i
    # by l^{a_i} e_i = 0 kills every entry of row i.  All candidate value
    # tuples are materialised and tested.
    p = a.parts
    r = len(p)
    if r < 2:
        return 1
    e = a.exponent
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    n_candidates = e ** len(pairs)
    if n_candidates > ALT_FORM_LIMIT:
        raise ResourceGuardError("oracle cap", f"{n_candidates} candidate forms on {a}")
    values = np.indices((e,) * len(pairs)).reshape(len(pairs), -1)
    matrix = np.zeros((r, r, n_candidates), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        matrix[i, j] = values[k]
        matrix[j, i] = -values[k] % e
    scale = np.array([a.ell ** x for x in p], dtype=np.int64).reshape(r, 1, 1)
    ok = ((scale * matrix) % e == 0).all(axis=(0, 1))
    return int(ok.sum())


def oracle_maps(a: GroupClass, g: GroupClass, kind: MapKind, cap: int = DEFAULT_CAP) -> int:
    """Exhaustive map counts on concrete groups.

    * ``injective``: injective homs A -> G;
    * ``surjective``: surjective homs G -> A (A is the codomain);
    * ``alternating_forms``: alternating bilinear forms on A (G must be A).
    """
    _same_ell(a, g)
    if kind == "injective":
        return _count_injective(a, ConcreteGroup(g, cap))
    if kind == "surjective":
        _check_cap(g.order, cap, f"domain {g}")
        return _count_surjective(g, ConcreteGroup(a, cap))
    if kind == "alternating_forms":
        if a != g:
            raise DomainError("alternating forms are counted on A itself; pass G = A")
        _check_cap(a.order, cap, f"group {a}")
        return _count_alternating_forms(a)
    raise DomainError(f"unknown map kind {kind!r}")


NAIVE_LIMIT = 200_000


def _image_size(domain: ConcreteGroup, target: ConcreteGroup, images: tuple[int, ...]) -> int:
    # evaluate the hom on every element of the domain
    acc = np.zeros((domain.order, target.shape.rank), dtype=np.int64)
    for col, y in enumerate(images):
        acc += np.outer(domain.coords[:, col], target.coords[y])
    return len(np.unique(target.encode(acc)))


def oracle_maps_naive(a: GroupClass, g: GroupClass, kind: Literal["injective", "surjective"]) -> int:
    """Same counts as :func:`oracle_maps`, one homomorphism at a time."""
    _same_ell(a, g)
    if kind == "injective":
        dom, tgt = ConcreteGroup(a), ConcreteGroup(g)
    elif kind == "surjective":
        dom, tgt = ConcreteGroup(g), ConcreteGroup(a)
    else:
        raise DomainError(f"unknown map kind {kind!r}")
    choices = [np.flatnonzero(tgt.order_exp <= d) for d in dom.shape.parts]
    n_tuples = 1
    for c in choices:
        n_tuples *= len(c)
    if n_tuples > NAIVE_LIMIT:
        raise ResourceGuardError("oracle cap", f"{n_tuples} homomorphisms {dom.shape} -> {tgt.shape}")
    want = dom.order if kind == "injective" else tgt.order
    return sum(1 for images in product(*choices) if _image_size(dom, tgt, images) == want)


def amalgam_sum(a: GroupClass, c: GroupClass, cap: int = DEFAULT_CAP) -> int:
    """sum of mu_C(B, C) over subgroups B of the concrete C with B = A."""
    _same_ell(a, c)
    lat = lattice_for(c, cap)
    mu = lat.mu_to(lat.top)
    return sum(mu.get(s.index, 0) for s in lat.of_type(a))


def amalgam_check(a: GroupClass, c: GroupClass, cap: int = DEFAULT_CAP) -> bool:
    return amalgam_sum(a, c, cap) == s_conv(a, c).value


def hall_value(g: GroupClass) -> int:
    """mu_G(1, G) as predicted for an l-group G."""
    if not g.is_elementary:
        return 0
    n = g.rank
    return (-1) ** n * g.ell ** comb(n, 2)


def hall_trivialyes_check(ell: int, max_order_exponent: int, cap: int = DEFAULT_CAP) -> SweepReport:
    """Check mu_G(1, G) and the unique-subgroup vanishing on every concrete G.

    For each G of order at most l^bound: mu_G(1, G) must be 0 unless G is
    elementary abelian, where it is (-1)^n l^binom(n, 2).  And whenever G has
    exactly one subgroup of type A but no injection of A with elementary
    cokernel, mu_G(that subgroup, G) must vanish.
    """
    rep = SweepReport("hall_trivialyes", ell, max_order_exponent)
    for g in enumerate_classes(ell, max_order_exponent):
        lat = lattice_for(g, cap)
        mu = lat.mu_to(lat.top)
        got = mu[lat.bottom.index]
        want = hall_value(g)
        rep.pairs_checked += 1
        rep.tally("elementary" if g.is_elementary else "non_elementary")
        if got != want:
            rep.counterexamples.append({"kind": "hall", "g": str(g), "mu": str(got), "expected": str(want)})
        for a in enumerate_interval(GroupClass(ell), g):
            found = lat.of_type(a)
            if len(found) != 1 or elementary_cokernel_embeddable(a, g):
                continue
            rep.pairs_checked += 1
            rep.tally("trivialyes")
            val = mu.get(found[0].index, 0)
            if val:
                rep.counterexamples.append(
                    {"kind": "trivialyes", "a": str(a), "g": str(g), "mu": str(val)}
                )
    return rep
