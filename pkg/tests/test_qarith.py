import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from anyonforge.qarith import QContext, qfact, qint, qint_generic


def bracket_from_powers(k, n):
    # independent evaluation from the half-integer powers of q
    q = cmath.exp(2j * math.pi / (k + 2))
    return (q ** (n / 2) - q ** (-n / 2)) / (q ** 0.5 - q ** -0.5)


@given(st.integers(1, 40), st.integers(0, 60))
def test_qint_matches_power_form(k, n):
    got = qint(QContext(k), n)
    want = bracket_from_powers(k, n)
    assert abs(want.imag) < 1e-9
    assert got == pytest.approx(want.real, abs=1e-9)


@given(st.integers(1, 40), st.data())
def test_qint_reflection_and_positivity(k, data):
    ctx = QContext(k)
    n = data.draw(st.integers(1, k + 1))
    assert qint(ctx, n) > 0
    assert qint(ctx, n) == pytest.approx(qint(ctx, k + 2 - n), abs=1e-12)
    assert qint(ctx, k + 2) == pytest.approx(0, abs=1e-12)


def test_small_values():
    ctx = QContext(3)
    phi = (1 + math.sqrt(5)) / 2
    assert qint(ctx, 2) == pytest.approx(phi)
    assert qint(QContext(4), 2) == pytest.approx(math.sqrt(3))
    assert qint(QContext(4), 3) == pytest.approx(2)
    assert qfact(ctx, 0) == 1
    assert qfact(ctx, 3) == pytest.approx(qint(ctx, 2) * qint(ctx, 3))


def test_large_level_approaches_integers():
    ctx = QContext(100000)
    for n in range(1, 10):
        assert qint(ctx, n) == pytest.approx(n, rel=1e-6)


@given(st.integers(1, 30), st.integers(0, 25))
def test_generic_symmetric_agrees_with_level_bracket(k, n):
    q = cmath.exp(1j * math.pi / (k + 2))
    assert qint_generic(q, n) == pytest.approx(qint(QContext(k), n), abs=1e-9)


@given(st.complex_numbers(min_magnitude=0.2, max_magnitude=3), st.integers(0, 12))
def test_generic_variants_are_sums_of_powers(q, n):
    if abs(q - 1) < 1e-3 or abs(q + 1) < 1e-3 or abs(q * q - 1) < 1e-3:
        return
    sym = sum(q ** (n - 1 - 2 * i) for i in range(n))
    geo = sum(q**i for i in range(n))
    assert qint_generic(q, n) == pytest.approx(sym, rel=1e-8, abs=1e-8)
    assert qint_generic(q, n, variant="geometric") == pytest.approx(geo, rel=1e-8, abs=1e-8)


def test_generic_limits_and_errors():
    assert qint_generic(1, 7) == 7
    assert qint_generic(1, 7, variant="geometric") == 7
    assert qint_generic(-1, 4) == -4
    assert qint_generic(-1, 5) == 5
    with pytest.raises(ValueError):
        qint_generic(0, 3)
    with pytest.raises(ValueError):
        qint_generic(0.5, 3, variant="other")


def test_context_validation():
    ctx = QContext(4)
    assert ctx.k == 4 and ctx.denominator == 6
    assert ctx.q == pytest.approx(cmath.exp(1j * math.pi / 3))
    for bad in (0, -2, 2.5):
        with pytest.raises(ValueError):
            QContext(bad)
    with pytest.raises(ValueError):
        QContext(3, tolerance=0)
    with pytest.raises(ValueError):
        qint(ctx, -1)
