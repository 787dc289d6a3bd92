import itertools

import pytest

from ellpos.counting import (
    aut_count,
    chain_weight,
    inj_count,
    lambda_count,
    sub_count,
    surj_count,
)
from ellpos.errors import DomainError
from ellpos.poset import Chain, GroupClass, add_elementary, enumerate_classes, insert_part

# Expected values below were produced by the brute-force oracle
# (ellpos.oracle.oracle_maps / oracle_sub) and frozen.


@pytest.mark.parametrize(
    "parts,ell,expected",
    [((), 3, 1), ((1, 1), 3, 3), ((2, 1), 3, 3), ((1, 1, 1), 3, 27), ((2, 2), 5, 25)],
)
def test_lambda_count(parts, ell, expected):
    assert lambda_count(GroupClass(ell, parts)) == expected


@pytest.mark.parametrize(
    "a,b,expected",
    [((1,), (1,), 2), ((1,), (1, 1), 8), ((1, 1), (2,), 0), ((2, 1), (2, 2), 432), ((1, 1), (2, 2), 48)],
)
def test_inj_count(a, b, expected):
    assert inj_count(GroupClass(3, a), GroupClass(3, b)) == expected


@pytest.mark.parametrize(
    "parts,expected", [((), 1), ((1, 1), 48), ((2,), 6), ((2, 1), 108), ((1, 1, 1), 11232)]
)
def test_aut_count(parts, expected):
    assert aut_count(GroupClass(3, parts)) == expected


def test_aut_count_general_linear_group():
    # |GL_5(F_3)|, from the oracle's injection count on (Z/3)^5
    assert aut_count(GroupClass(3, (1,) * 5)) == 475566474240


@pytest.mark.parametrize(
    "a,b,expected",
    [((1,), (1, 1), 4), ((2,), (2, 1), 3), ((1, 1), (2, 1), 1), ((1,), (1, 1, 1), 13), ((3,), (2, 1), 0)],
)
def test_sub_count(a, b, expected):
    assert sub_count(GroupClass(3, a), GroupClass(3, b)) == expected


@pytest.mark.parametrize("b,a,expected", [((1, 1), (1,), 8), ((1,), (1, 1), 0), ((2,), (1,), 2)])
def test_surj_count(b, a, expected):
    assert surj_count(GroupClass(3, b), GroupClass(3, a)) == expected


def test_mismatched_ell():
    a, b = GroupClass(3, (1,)), GroupClass(5, (1,))
    for f in (inj_count, sub_count, surj_count):
        with pytest.raises(DomainError):
            f(a, b)


class TestChainWeight:
    def test_examples(self, g3):
        assert chain_weight(Chain(g3(1), (g3(2, 1),))) == -4
        assert chain_weight(Chain(g3(1), (g3(1, 1), g3(2, 1)))) == 4
        assert chain_weight(Chain(g3(), (g3(1),))) == -1

    def test_rejects_non_chain(self, g3):
        with pytest.raises(DomainError):
            chain_weight((g3(1), g3(2)))


ALL3 = enumerate_classes(3, 6)
ALL5 = enumerate_classes(5, 6)


@pytest.mark.parametrize("classes", [ALL3, ALL5], ids=["ell3", "ell5"])
def test_inj_is_aut_times_sub(classes):
    for a, b in itertools.product(classes, repeat=2):
        assert inj_count(a, b) == aut_count(a) * sub_count(a, b)
        assert aut_count(a) > 0


@pytest.mark.parametrize("classes", [ALL3, ALL5], ids=["ell3", "ell5"])
def test_lemma_add_elementary_factorisation(classes):
    n = 0
    for a, b in itertools.product(classes, repeat=2):
        i = b.rank - a.rank
        if i < 0:
            continue
        mid = add_elementary(a, i)
        assert sub_count(a, mid) * sub_count(mid, b) == sub_count(a, b), (a, b)
        n += 1
    assert n == 544


@pytest.mark.parametrize("classes", [ALL3, ALL5], ids=["ell3", "ell5"])
def test_lemma_common_cyclic_summand(classes):
    n = 0
    for a, b in itertools.product(classes, repeat=2):
        if a.rank != b.rank or a.rank == 0:
            continue
        # largest i with rank_{l^i} A = rank A is the smallest part of A
        for j in range(1, a.parts[-1] + 1):
            a2, b2 = insert_part(a, j), insert_part(b, j)
            if b2.size > 6 or a2.size > 6:
                continue
            assert sub_count(a2, b2) == sub_count(a, b), (a, b, j)
            n += 1
    assert n == 101


@pytest.mark.parametrize("classes", [ALL3, ALL5], ids=["ell3", "ell5"])
def test_lemma_homocyclic_subgroup_unique(classes):
    for a in classes:
        r = a.rank
        for i in range(0, (a.parts[-1] if r else 0) + 1):
            assert sub_count(a.with_parts((i,) * r), a) == 1


def test_big_values_are_exact():
    a = GroupClass(101, (7, 5, 5, 2, 1))
    b = GroupClass(101, (9, 7, 5, 5, 3, 1, 1))
    n = inj_count(a, b)
    assert n > 2 ** 256
    assert n == aut_count(a) * sub_count(a, b)
