"""Acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line
per criterion.
"""

import itertools
import time
from contextlib import contextmanager

import mpmath
import pytest

from ellpos import mobius
from ellpos.cohen_lenstra import cohen_lenstra_measure, moment, total_mass
from ellpos.counting import aut_count, inj_count, lambda_count, sub_count, surj_count
from ellpos.oracle import (
    amalgam_sum,
    hall_trivialyes_check,
    lattice_for,
    oracle_maps,
    oracle_sub,
)
from ellpos.poset import (
    GroupClass,
    add_elementary,
    elementary_cokernel_embeddable,
    enumerate_classes,
    insert_part,
)


@contextmanager
def criterion(name, limit=None):
    start = time.perf_counter()
    ok = False
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        detail = f"{elapsed:.1f}s"
        if limit is not None:
            detail += f" (limit {limit}s)"
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        ok = True
    finally:
        print(f"\n{'PASS' if ok else 'FAIL'}  {name}  {detail}")


def _oracle_mismatches(ell, m):
    bad = []
    classes = enumerate_classes(ell, m)
    for a in classes:
        if lambda_count(a) != oracle_maps(a, a, "alternating_forms"):
            bad.append(("lambda", a))
        if aut_count(a) != oracle_maps(a, a, "injective"):
            bad.append(("aut", a))
    pairs = 0
    for a, b in itertools.product(classes, repeat=2):
        pairs += 1
        if inj_count(a, b) != oracle_maps(a, b, "injective"):
            bad.append(("inj", a, b))
        if sub_count(a, b) != oracle_sub(a, b):
            bad.append(("sub", a, b))
        if surj_count(b, a) != oracle_maps(a, b, "surjective"):
            bad.append(("surj", b, a))
    return len(classes), pairs, bad


def test_formula_oracle_equivalence():
    with criterion("formula/oracle equivalence, order <= 3^5 and <= 5^3", limit=60):
        shapes3, pairs3, bad3 = _oracle_mismatches(3, 5)
        shapes5, pairs5, bad5 = _oracle_mismatches(5, 3)
        assert shapes3 >= 18 and pairs3 >= 300
        assert bad3 == [] and bad5 == []
        assert shapes5 == 7 and pairs5 == 49


def test_s_method_agreement():
    with criterion("s_chain == s_conv, |C| <= 3^6 and <= 5^4", limit=120):
        mobius.clear_cache()
        n = 0
        for ell, m in [(3, 6), (5, 4)]:
            classes = enumerate_classes(ell, m)
            for a, c in itertools.product(classes, repeat=2):
                assert mobius.s_chain(a, c).value == mobius.s_conv(a, c).value, (a, c)
                n += 1
        assert n == 30 * 30 + 12 * 12


def test_amalgam():
    with criterion("S(A,C) equals the subgroup-lattice Mobius sum, |C| <= 3^5"):
        classes = enumerate_classes(3, 5)
        for a, c in itertools.product(classes, repeat=2):
            assert amalgam_sum(a, c) == mobius.s_value(a, c), (a, c)


def test_hall():
    with criterion("mu_G(1,G) on elementary (n <= 4) and non-elementary G, |G| <= 3^5"):
        want = {1: -1, 2: 3, 3: -27, 4: 729}
        for n, v in want.items():
            lat = lattice_for(GroupClass(3, (1,) * n))
            assert lat.mu(lat.bottom, lat.top) == v
        for g in enumerate_classes(3, 5):
            if not g.is_elementary:
                lat = lattice_for(g)
                assert lat.mu(lat.bottom, lat.top) == 0, g
        assert hall_trivialyes_check(3, 5).ok


def _theorem_report():
    return mobius.verify_theorems(3, 6, method="conv")


def test_rank_increase_sweep():
    with criterion("rank-increasing pairs factor or vanish, |C| <= 3^6"):
        rep = _theorem_report()
        assert rep.tallies["rank_increase"] > 0
        assert [x for x in rep.counterexamples if x["kind"] == "rank_increase"] == []
        assert rep.ok


def test_elementary_cokernel_sweep():
    with criterion("S(A,C) = 0 without an elementary-cokernel injection, |C| <= 3^6"):
        rep = _theorem_report()
        assert [x for x in rep.counterexamples if x["kind"] in ("equal_rank_nonzero", "nonzero_without_elementary_cokernel")] == []
        for a, c in itertools.product(enumerate_classes(3, 6), repeat=2):
            if not elementary_cokernel_embeddable(a, c):
                assert mobius.s_value(a, c) == 0, (a, c)


def test_sub_count_lemmas():
    with criterion("subgroup-count lemmas, order <= 3^6"):
        classes = enumerate_classes(3, 6)
        checked = 0
        for a, b in itertools.product(classes, repeat=2):
            i = b.rank - a.rank
            if i >= 0:
                mid = add_elementary(a, i)
                assert sub_count(a, mid) * sub_count(mid, b) == sub_count(a, b), (a, b)
                checked += 1
            if a.rank == b.rank and a.rank:
                for j in range(1, a.parts[-1] + 1):
                    a2, b2 = insert_part(a, j), insert_part(b, j)
                    assert sub_count(a2, b2) == sub_count(a, b), (a, b, j)
                    checked += 1
        for a in classes:
            top = a.parts[-1] if a.rank else 0
            for i in range(top + 1):
                assert sub_count(a.with_parts((i,) * a.rank), a) == 1
                checked += 1
        assert checked > 500


def test_cyclic_base_case():
    with criterion("S([a],[c]) trichotomy, 0 <= a <= c <= 8"):
        for a in range(9):
            for c in range(a, 9):
                want = {0: 1, 1: -1}.get(c - a, 0)
                s = mobius.s_chain(GroupClass(3, (a,)), GroupClass(3, (c,))).value
                assert s == want == mobius.s_conv(GroupClass(3, (a,)), GroupClass(3, (c,))).value


def test_cohen_lenstra_truncation():
    with criterion("truncated measure mass increases, stays <= 1, passes 0.99 by M <= 12"):
        masses = []
        crossing = None
        for m in range(13):
            mu = cohen_lenstra_measure(3, m)
            mass = total_mass(mu)
            assert moment(GroupClass(3), mu) == mass
            masses.append(mass)
            if crossing is None and mass > mpmath.mpf("0.99"):
                crossing = m
        assert all(x < y for x, y in zip(masses, masses[1:]))
        assert all(x <= 1 for x in masses)
        assert crossing == 4
        print(f"\n  mass first exceeds 0.99 at M={crossing}: {mpmath.nstr(masses[crossing], 8)}")
