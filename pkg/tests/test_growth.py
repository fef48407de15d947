import math

import mpmath
import numpy as np
import pytest

from hyperspectra.errors import DomainError, InsufficientData
from hyperspectra.growth import (
    CountingModel, calculus_difference, crossover_length, fit_growth_exponent, li_exp,
    logarithmic_integral, margulis_count, ps_lower_bound,
)


def li_oracle(y):
    """mpmath's offset logarithmic integral, li(y) - li(2)."""
    return float(mpmath.li(y, offset=True))


def test_li_examples():
    assert logarithmic_integral(2) == 0
    assert logarithmic_integral(math.e ** 2) == pytest.approx(3.9090705758823, abs=1e-9)
    y = math.exp(30)
    assert logarithmic_integral(y) * math.log(y) / y == pytest.approx(1, abs=0.05)
    with pytest.raises(DomainError):
        logarithmic_integral(1.5)


@pytest.mark.parametrize("S", np.linspace(math.log(2.5), 30, 20))
def test_li_against_mpmath(S):
    y = math.exp(S)
    assert logarithmic_integral(y) == pytest.approx(li_oracle(y), rel=1e-12)
    assert li_exp(S) == pytest.approx(li_oracle(y), rel=1e-12)


def test_li_absolute_accuracy_small_range():
    for y in (2.0001, 3, 10, 100, 1e4, 1e6):
        assert abs(logarithmic_integral(y) - li_oracle(y)) < 1e-9


def test_margulis():
    assert margulis_count(1, 1) == pytest.approx(math.e)
    assert margulis_count(1, 2) == pytest.approx(math.e ** 2 / 2)
    # the ratio is exactly e^h (L-1)/L: 2% below e at L = 50, within 1% from L = 100
    r = margulis_count(50, 1) / margulis_count(49, 1)
    assert r == pytest.approx(math.e * 49 / 50, rel=1e-12)
    for L in (100, 200, 500):
        assert margulis_count(L, 1) / margulis_count(L - 1, 1) == pytest.approx(math.e, rel=0.01)


def test_ps_lower_bound():
    m0 = CountingModel()
    assert ps_lower_bound(3, m0) == li_exp(3)
    m = CountingModel(A=10, c=0.9)
    v = ps_lower_bound(5, m)
    assert v == pytest.approx(li_oracle(math.exp(5)) - 10 * math.exp(4.5), rel=1e-12)
    assert v < 0
    for L in (1, 3, 10, 40):
        assert ps_lower_bound(L, m) <= li_exp(L)
    with pytest.raises(DomainError):
        ps_lower_bound(0.5, m)


def test_model_contract():
    for bad in (dict(h=0), dict(A=-1), dict(c=1.0), dict(c=-0.1)):
        with pytest.raises(ValueError):
            CountingModel(**bad)


def test_crossover_without_error_term():
    L0 = crossover_length(CountingModel())
    assert L0 < 2
    assert abs(li_oracle(math.exp(L0)) - math.exp(L0) / L0) < 1e-5 * math.exp(L0)


def test_crossover_with_error_term():
    m = CountingModel(A=10, c=0.9)
    L0 = crossover_length(m)
    assert math.isfinite(L0)
    samples = [calculus_difference(L0 + k, m) for k in range(21)]
    assert all(b > a for a, b in zip(samples, samples[1:]))
    assert calculus_difference(L0 - 1e-3, m) < 0 <= calculus_difference(L0 + 1e-5, m)


def test_crossover_monotone_in_A():
    L = [crossover_length(CountingModel(A=A, c=0.5)) for A in (0, 1, 10, 100, 1000)]
    assert L == sorted(L) and L[0] < L[-1]


def test_difference_eventually_increasing():
    for A, c, cap in ((10, 0.9, 200), (1000, 0.5, 200), (1000, 0.9, 200), (1, 0.95, 400)):
        m = CountingModel(A=A, c=c)
        L0 = crossover_length(m, cap=cap)
        xs = np.arange(L0 + 5, min(L0 + 40, 650), 1.0)
        d = [calculus_difference(x, m) for x in xs]
        assert all(b > a for a, b in zip(d, d[1:]))


def test_crossover_search_exhausted():
    # e^{-0.05 L} only drops below ~1/L^2 near L = 230
    from hyperspectra.errors import SearchExhausted

    with pytest.raises(SearchExhausted):
        crossover_length(CountingModel(A=1, c=0.95))
    assert 200 < crossover_length(CountingModel(A=1, c=0.95), cap=400) < 400


@pytest.mark.parametrize("h", [1.0, 2.0])
def test_fit_synthetic(h):
    L = np.linspace(3, 12, 25)
    counts = list(zip(L, np.exp(h * L) / (h * L)))
    assert fit_growth_exponent(counts) == pytest.approx(h, abs=0.02)


def test_fit_contract():
    with pytest.raises(InsufficientData):
        fit_growth_exponent([(1, 1), (2, 2)])
    with pytest.raises(InsufficientData):
        fit_growth_exponent([(1, 1), (2, 2), (2, 3), (4, 4), (5, 5)])
