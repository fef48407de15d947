import math

import pytest
from hypothesis import given, strategies as st

from hyperspectra.errors import DegenerateLattice, UnsortedInput
from hyperspectra.filling import (
    CuspLattice, Slope, core_length_estimate, normalized_length, sufficiently_different,
    volume_drop_estimate,
)

SQUARE = CuspLattice(1, 1j)


def test_normalized_length_examples():
    assert normalized_length(Slope(1, 0), SQUARE) == 1
    assert normalized_length(Slope(3, 4), SQUARE) == pytest.approx(5)
    lat = CuspLattice(1.3, 0.4 + 2.1j)
    s = Slope(2, -7)
    assert normalized_length(s, lat.scaled(7)) == pytest.approx(normalized_length(s, lat), abs=1e-12)


def test_lattice_contract():
    with pytest.raises(DegenerateLattice):
        CuspLattice(1, 2)
    with pytest.raises(DegenerateLattice):
        SQUARE.rebased(2, 0, 0, 1)
    with pytest.raises(ValueError):
        Slope(2, 4)


cx = st.complex_numbers(min_magnitude=0.2, max_magnitude=5, allow_nan=False, allow_infinity=False)
small = st.integers(-6, 6)


@given(cx, cx, st.integers(-20, 20), st.integers(-20, 20), cx)
def test_scale_invariance(t1, t2, p, q, lam):
    if abs((t2 / t1).imag) < 0.1 or math.gcd(p, q) != 1:
        return
    lat, s = CuspLattice(t1, t2), Slope(p, q)
    assert normalized_length(s, lat.scaled(lam)) == pytest.approx(normalized_length(s, lat), rel=1e-12)


@given(small, small, small, small, st.integers(-20, 20), st.integers(-20, 20))
def test_basis_invariance(a, b, c, d, p, q):
    if abs(a * d - b * c) != 1 or math.gcd(p, q) != 1:
        return
    lat = CuspLattice(1.1, 0.3 + 1.7j)
    new = lat.rebased(a, b, c, d)
    # p t1 + q t2 = p' t1' + q' t2' with (p', q') = (p, q) M^-1
    det = a * d - b * c
    p2, q2 = (p * d - q * c) * det, (q * a - p * b) * det
    assert normalized_length(Slope(p2, q2), new) == pytest.approx(
        normalized_length(Slope(p, q), lat), rel=1e-12)


def test_core_length():
    est, err = core_length_estimate(10)
    assert est == pytest.approx(0.0628319, abs=1e-7) and err == pytest.approx(1e-4)
    assert core_length_estimate(math.sqrt(2 * math.pi))[0] == 1.0
    vals = [core_length_estimate(x)[0] for x in (1, 2, 5, 10, 100, 1e4)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_volume_drop():
    assert volume_drop_estimate([]) == 0
    assert volume_drop_estimate([10]) == pytest.approx(math.pi ** 2 / 100)
    assert volume_drop_estimate([10, 10, 10]) == pytest.approx(3 * math.pi ** 2 / 100)
    assert volume_drop_estimate([10, 5]) > volume_drop_estimate([10])


def test_sufficiently_different_examples():
    r = sufficiently_different((100, 10, 1), 0.03905, margin=1)
    assert r.holds and r.V == pytest.approx(1)
    two_pi = 2 * math.pi
    assert r.chain == pytest.approx((two_pi, two_pi / 100, two_pi / 1e4))
    assert r.chain_holds
    r = sufficiently_different((100, 10, 1), 10 * 0.03905, margin=1)
    assert r.holds and r.V == pytest.approx(10)
    assert r.ratios == pytest.approx((10, 10))
    assert not sufficiently_different((5, 5, 5), 1, margin=1.01).holds
    with pytest.raises(UnsortedInput):
        sufficiently_different((1, 10, 100), 1)


@given(st.floats(1, 50), st.floats(1, 50))
def test_margin_anti_monotone(m1, m2):
    lo, hi = sorted((m1, m2))
    if sufficiently_different((300, 20, 1), 0.1, hi).holds:
        assert sufficiently_different((300, 20, 1), 0.1, lo).holds
