import mpmath
import pytest

from ellpos.cohen_lenstra import (
    TruncatedMeasure,
    cohen_lenstra_measure,
    euler_product,
    finite_measure,
    moment,
    nu,
    nu_bracket,
    total_mass,
)
from ellpos.counting import aut_count
from ellpos.errors import DomainError
from ellpos.poset import GroupClass, enumerate_classes


def test_nu_values(g3):
    # truncated products evaluated directly with N = 64; the tail is below 3^-64
    assert mpmath.nstr(nu(g3()), 5) == "0.56013"
    assert mpmath.nstr(nu(g3(1)), 5) == "0.28006"
    assert mpmath.nstr(nu(g3(1, 1)), 5) == "0.011669"


def test_nu_times_aut_is_constant():
    head = euler_product(3, 40, 160)
    for a in enumerate_classes(3, 5):
        assert nu(a, 40, 160) * aut_count(a) == head


def test_nu_decreases_with_more_factors(g3):
    values = [nu(g3(2, 1), n) for n in range(1, 30)]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_bracket(g3):
    lo, hi = nu_bracket(g3(1), 5)
    assert lo < hi
    assert lo < nu(g3(1), 80) < hi


def test_bad_arguments(g3):
    with pytest.raises(DomainError):
        nu(g3(1), 0)
    with pytest.raises(DomainError):
        nu(g3(1), 10, precision=1)
    with pytest.raises(DomainError):
        cohen_lenstra_measure(3, -1)


def test_total_mass_values():
    assert mpmath.nstr(total_mass(cohen_lenstra_measure(3, 0)), 5) == "0.56013"
    assert mpmath.nstr(total_mass(cohen_lenstra_measure(3, 1)), 5) == "0.84019"


@pytest.mark.parametrize("ell", [3, 5])
def test_total_mass_increasing_below_one(ell):
    masses = [total_mass(cohen_lenstra_measure(ell, m)) for m in range(0, 10)]
    assert all(x < y for x, y in zip(masses, masses[1:]))
    slack = mpmath.mpf(2) ** -64
    assert all(x <= 1 + slack for x in masses)


def test_trivial_moment_is_mass():
    for m in range(0, 8):
        mu = cohen_lenstra_measure(3, m)
        assert moment(GroupClass(3), mu) == total_mass(mu)
    mu = finite_measure({GroupClass(5, (1,)): "0.25", GroupClass(5, (2, 1)): "0.75"})
    assert moment(GroupClass(5), mu) == total_mass(mu) == 1


def test_point_mass_moment(g3):
    assert moment(g3(1), finite_measure({g3(1, 1): 1})) == 8


def test_moment_partial_sums_increase(g3):
    values = [moment(g3(1), cohen_lenstra_measure(3, m)) for m in range(1, 7)]
    assert all(x < y for x, y in zip(values, values[1:]))


def test_deterministic():
    a = cohen_lenstra_measure(5, 6, 50, 200).to_json()
    b = cohen_lenstra_measure(5, 6, 50, 200).to_json()
    assert a == b


def test_measure_validation(g3):
    with pytest.raises(DomainError):
        TruncatedMeasure(3, 1, None, 64, {g3(2): mpmath.mpf(1)})
    with pytest.raises(DomainError):
        TruncatedMeasure(3, 1, None, 64, {g3(1): mpmath.mpf(-1)})
    with pytest.raises(DomainError):
        finite_measure({g3(1): 1, GroupClass(5, (1,)): 1})
    with pytest.raises(DomainError):
        moment(GroupClass(5), finite_measure({g3(1): 1}))


def test_global_precision_untouched():
    before = mpmath.mp.prec
    nu(GroupClass(3, (1,)), 10, 300)
    assert mpmath.mp.prec == before
