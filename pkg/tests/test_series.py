import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_eval, rand_coeffs, rand_quat
from qbohr.errors import ZeroDivisorError
from qbohr.quaternion import I_UNIT, J_UNIT, K_UNIT, ONE, Quaternion, inverse, sample_sphere
from qbohr.series import (QSeries, TailBound, dump_series, evaluate, evaluate_many, parse_series,
                          regular_conjugate, regular_reciprocal, series_close, slice_derivative,
                          star_product, symmetrization, transform_tf)

pytestmark = pytest.mark.usefixtures("backend")


def ser(*qs):
    return QSeries.from_quaternions(qs)


def slice_pair(rng, n, unit):
    """Random series with coefficients in the slice of ``unit`` and its complex image."""
    z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    f = QSeries.from_quaternions([Quaternion(c.real) + c.imag * unit for c in z])
    return f, z


def to_complex(q: Quaternion, unit: Quaternion) -> complex:
    """Read ``q = a + b I`` back as ``a + b i``; checks ``q`` stays in the slice."""
    b = q.x1 * unit.x1 + q.x2 * unit.x2 + q.x3 * unit.x3
    assert abs(q - (Quaternion(q.x0) + b * unit)) <= 1e-10 * max(1.0, abs(q))
    return complex(q.x0, b)


def complex_inverse(z, n):
    g = np.zeros(n, dtype=complex)
    g[0] = 1 / z[0]
    for k in range(1, n):
        g[k] = -sum(z[j] * g[k - j] for j in range(1, min(k, len(z) - 1) + 1)) / z[0]
    return g


# ---------------------------------------------------------------- evaluation

def test_evaluation_examples():
    f = ser(ONE, I_UNIT)
    assert evaluate(f, J_UNIT) == ONE - K_UNIT
    assert f(Quaternion(0.5)) == Quaternion(1, 0.5, 0, 0)
    g = ser(Quaternion(1, 2, 3, 4), ONE, ONE)
    assert g(Quaternion()) == Quaternion(1, 2, 3, 4)


def test_powers_multiply_on_the_left():
    p = Quaternion(0, 0, 1, 0)
    q = Quaternion(0.3, 0.4, 0, 0)
    f = ser(0, 0, p)
    left = q * q * p
    right = p * q * q
    assert abs(left - right) > 0.1
    assert abs(f(q) - left) <= 1e-15


def test_horner_matches_explicit_powers(rng):
    c = rand_coeffs(rng, 20)
    f = QSeries(c)
    pts = rng.uniform(-0.7, 0.7, (25, 4))
    got = evaluate_many(f, pts)
    for row, q in zip(got, pts):
        assert abs(Quaternion(*row) - naive_eval(c, Quaternion(*q))) <= 1e-13


def test_slice_restriction_matches_complex_polynomial(rng):
    for seed in range(50):
        unit = sample_sphere(seed)
        f, z = slice_pair(rng, 12, unit)
        x, y = rng.uniform(-0.6, 0.6, 2)
        w = complex(x, y)
        got = to_complex(f(Quaternion(x) + y * unit), unit)
        assert abs(got - np.polynomial.polynomial.polyval(w, z)) <= 1e-10


# ---------------------------------------------------------------- star product

def test_star_examples():
    u = Quaternion(0, 0.6, 0.8, 0)
    sq = star_product(ser(ONE, u), ser(ONE, u))
    assert series_close(sq, ser(ONE, 2 * u, u * u), 1e-15)
    f = QSeries(np.arange(12.0).reshape(3, 4))
    assert series_close(star_product(f, QSeries.unit()), f, 0)
    assert series_close(star_product(QSeries.unit(), f), f, 0)
    assert series_close(star_product(QSeries.variable(), f), f.shift(1), 0)


def test_star_coefficient_order_is_left_then_right():
    f, h = ser(I_UNIT), ser(J_UNIT)
    assert star_product(f, h)[0] == K_UNIT
    assert star_product(h, f)[0] == -K_UNIT


def test_star_is_noncommutative_in_general():
    f, h = ser(ONE, I_UNIT), ser(ONE, J_UNIT)
    assert not series_close(star_product(f, h), star_product(h, f))


def test_star_pointwise_identity(rng):
    for _ in range(60):
        f, h = QSeries(rand_coeffs(rng, 6)), QSeries(rand_coeffs(rng, 5))
        q = rand_quat(rng, 0.5)
        fq = f(q)
        expect = fq * h(inverse(fq) * q * fq)
        assert abs(star_product(f, h)(q) - expect) <= 1e-9


def test_star_is_associative(rng):
    f, g, h = (QSeries(rand_coeffs(rng, n)) for n in (4, 5, 6))
    lhs = star_product(star_product(f, g), h)
    rhs = star_product(f, star_product(g, h))
    assert series_close(lhs, rhs, 1e-12)


def test_star_truncation(rng):
    f, h = QSeries(rand_coeffs(rng, 10)), QSeries(rand_coeffs(rng, 10))
    full = star_product(f, h)
    assert full.order == 18
    assert series_close(star_product(f, h, order=5), full.truncate(5), 1e-15)


def test_star_on_a_slice_is_complex_convolution(rng):
    unit = sample_sphere(3)
    f, zf = slice_pair(rng, 7, unit)
    h, zh = slice_pair(rng, 5, unit)
    prod = star_product(f, h)
    conv = np.convolve(zf, zh)
    for k in range(len(conv)):
        assert abs(to_complex(prod[k], unit) - conv[k]) <= 1e-13


# ---------------------------------------------------------------- conjugate, symmetrization

def test_conjugate_and_symmetrization_examples():
    f = ser(ONE, I_UNIT)
    assert series_close(regular_conjugate(f), ser(ONE, -I_UNIT), 0)
    assert series_close(symmetrization(f), ser(ONE, 0, ONE), 0)


def test_symmetrization_is_real_and_commutes(rng):
    for _ in range(40):
        f = QSeries(rand_coeffs(rng, 9, 2.0))
        fs = symmetrization(f)
        assert np.max(np.abs(fs.coeffs[:, 1:])) <= 1e-12
        other = star_product(regular_conjugate(f), f)
        assert series_close(fs, other, 1e-12)


def test_symmetrization_low_coefficients(rng):
    p0, p1, p2 = (rand_quat(rng) for _ in range(3))
    fs = symmetrization(ser(p0, p1, p2))
    tr = lambda a, b: 2 * (a * b.conj()).x0  # noqa: E731
    assert abs(fs[0].x0 - abs(p0) ** 2) <= 1e-14
    assert abs(fs[1].x0 - tr(p0, p1)) <= 1e-14
    assert abs(fs[2].x0 - (tr(p0, p2) + abs(p1) ** 2)) <= 1e-14


# ---------------------------------------------------------------- reciprocal

def test_reciprocal_examples():
    u = Quaternion(0, 0, 0.6, 0.8)
    r = regular_reciprocal(ser(ONE, -u), 5)
    powers = [ONE]
    for _ in range(5):
        powers.append(powers[-1] * u)
    assert series_close(r, QSeries.from_quaternions(powers), 1e-14)
    c = Quaternion(1, 2, 0, -1)
    assert series_close(regular_reciprocal(QSeries.constant(c), 3).truncate(0),
                        QSeries.constant(inverse(c)), 1e-15)


def test_reciprocal_rejects_vanishing_constant_term():
    with pytest.raises(ZeroDivisorError):
        regular_reciprocal(ser(0, ONE), 4)


def test_reciprocal_is_a_two_sided_inverse(rng):
    for _ in range(20):
        c = rand_coeffs(rng, 6)
        c[0] += np.array([1.5, 0, 0, 0])
        f = QSeries(c)
        r = regular_reciprocal(f, 64)
        unit = QSeries.unit().padded(64)
        assert series_close(star_product(f, r, 64), unit, 1e-10)
        assert series_close(star_product(r, f, 64), unit, 1e-10)


def test_reciprocal_on_a_slice_is_complex_inverse(rng):
    unit = sample_sphere(11)
    f, z = slice_pair(rng, 4, unit)
    z[0] += 3.0
    f = f + QSeries.constant(3.0)
    r = regular_reciprocal(f, 20)
    g = complex_inverse(z, 21)
    for k in range(21):
        assert abs(to_complex(r[k], unit) - g[k]) <= 1e-12


# ---------------------------------------------------------------- derivative and T_f

def test_slice_derivative():
    f = ser(ONE, I_UNIT, J_UNIT, K_UNIT)
    assert series_close(slice_derivative(f), ser(I_UNIT, 2 * J_UNIT, 3 * K_UNIT), 0)
    assert slice_derivative(QSeries.constant(5.0)).order == 0


def test_slice_derivative_matches_complex_derivative(rng):
    unit = sample_sphere(5)
    f, z = slice_pair(rng, 8, unit)
    w = complex(0.2, -0.3)
    got = to_complex(slice_derivative(f)(Quaternion(0.2) + (-0.3) * unit), unit)
    expect = np.polynomial.polynomial.polyval(w, np.polynomial.polynomial.polyder(z))
    assert abs(got - expect) <= 1e-12


def test_tf_fixes_reals_and_preserves_modulus(rng):
    f = QSeries(rand_coeffs(rng, 6))
    f = f + QSeries.constant(2.0)
    assert abs(transform_tf(f, Quaternion(0.4)) - Quaternion(0.4)) <= 1e-15
    for _ in range(30):
        q = rand_quat(rng, 0.5)
        t = transform_tf(f, q)
        assert abs(abs(t) - abs(q)) <= 1e-14
        assert abs(t.x0 - q.x0) <= 1e-14


def test_tf_and_tfc_are_mutually_inverse(rng):
    for _ in range(50):
        f = QSeries(rand_coeffs(rng, 6)) + QSeries.constant(2.0)
        q = rand_quat(rng, 0.5)
        there = transform_tf(f, q)
        back = transform_tf(regular_conjugate(f), there)
        assert abs(back - q) <= 1e-10


def test_tf_undefined_at_zero_of_conjugate():
    with pytest.raises(ZeroDivisorError):
        transform_tf(ser(0, ONE), Quaternion())


# ---------------------------------------------------------------- misc

def test_literal_roundtrip(rng):
    f = QSeries(rand_coeffs(rng, 7))
    g = parse_series(dump_series(f))
    assert series_close(f, g, 0)
    assert parse_series([[1, 0, 0, 0]])[0] == ONE


@pytest.mark.parametrize("bad", ["[]", "[[1,2,3]]", "{\"a\": 1}", "[1, 2]", "not json"])
def test_bad_literals(bad):
    with pytest.raises(ValueError):
        parse_series(bad)


def test_series_is_immutable():
    f = ser(ONE, I_UNIT)
    with pytest.raises(ValueError):
        f.coeffs[0, 0] = 3.0
    assert f[10] == Quaternion()


def test_tail_bound_nonnegative():
    assert TailBound(0.0).value == 0.0
    with pytest.raises(ValueError):
        TailBound(-1e-3)
    with pytest.raises(ValueError):
        TailBound(float("nan"))


def test_right_mul_is_coefficientwise(rng):
    f = QSeries(rand_coeffs(rng, 5))
    u = rand_quat(rng)
    g = f.right_mul(u)
    for k in range(5):
        assert abs(g[k] - f[k] * u) <= 1e-15


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(*[st.floats(-2, 2)] * 4), min_size=1, max_size=8),
       st.tuples(*[st.floats(-0.6, 0.6)] * 4))
def test_conjugate_evaluated_on_reals_is_conjugate_value(coeffs, x):
    f = QSeries(np.array(coeffs, dtype=float))
    t = Quaternion(x[0])
    assert abs(regular_conjugate(f)(t) - f(t).conj()) <= 1e-12
    # symmetrization at reals is |f|^2
    fs = symmetrization(f)(t)
    assert abs(fs.x0 - abs(f(t)) ** 2) <= 1e-11 * max(1.0, abs(f(t)) ** 2)
    assert json.loads(dump_series(f)) == f.to_literal()
