"""Phase-factor formulas: values, unitarity, inversion, limits, poles."""

import cmath

import numpy as np
import pytest

from todalab.errors import PoleError, ValidationError
from todalab.scattering import (
    ShGParams,
    a_from_b,
    block,
    bulk_coupling,
    cos_from_a,
    free_reflection,
    reflection_factor,
    s_matrix,
)


def test_block_special_values():
    assert block(0.0, 0.9) == pytest.approx(1.0)
    # (2)_theta = -1: sinh(t/2 + i pi/2) / sinh(t/2 - i pi/2) = i cosh / (-i cosh)
    for theta in (0.3, 0.9, 2.4, -1.1):
        assert block(2.0, theta) == pytest.approx(-1.0, abs=1e-12)


def test_block_inversion_and_unitarity():
    rng = np.random.default_rng(0)
    for _ in range(300):
        x = rng.uniform(0.1, 3.9)
        theta = rng.uniform(-3.0, 3.0)
        if abs(theta) < 0.05:
            continue
        b = block(x, theta)
        assert abs(abs(b) - 1.0) < 1e-12
        assert b * block(x, -theta) == pytest.approx(1.0, abs=1e-12)


def test_block_pole_detection():
    # denominator zero at theta = i pi x / 2: for x = 1, theta = i pi/2
    with pytest.raises(PoleError, match="pole"):
        block(1.0, 1j * cmath.pi / 2.0)


def test_bulk_coupling_range():
    assert bulk_coupling(0.0) == 0.0
    assert bulk_coupling(1.0) == pytest.approx(2.0 / (8.0 * np.pi + 1.0))
    for beta in (0.1, 1.0, 10.0, 1e3):
        assert 0.0 <= bulk_coupling(beta) < 2.0


def test_s_matrix_free_limit_is_linear_in_bulk_coupling():
    """beta -> 0: S -> +1, with |S - 1| shrinking linearly in B(beta)."""
    theta = 0.7
    devs = []
    for beta in (0.2, 0.1, 0.05):
        dev = abs(s_matrix(theta, beta) - 1.0)
        devs.append(dev / bulk_coupling(beta))
    assert devs[0] == pytest.approx(devs[1], rel=0.05)
    assert devs[1] == pytest.approx(devs[2], rel=0.05)


def test_s_matrix_self_duality():
    """S is invariant under B <-> 2 - B (the two blocks swap roles)."""
    theta = 0.9
    b = bulk_coupling(1.3)
    direct = -1.0 / (block(b, theta) * block(2.0 - b, theta))
    swapped = -1.0 / (block(2.0 - b, theta) * block(b, theta))
    assert direct == swapped
    assert s_matrix(theta, 1.3) == pytest.approx(direct)


def test_s_matrix_unitarity_and_inversion():
    rng = np.random.default_rng(1)
    for _ in range(200):
        theta = rng.uniform(0.05, 3.0) * rng.choice([-1.0, 1.0])
        beta = rng.uniform(0.1, 4.0)
        s = s_matrix(theta, beta)
        assert abs(abs(s) - 1.0) < 1e-12
        assert s * s_matrix(-theta, beta) == pytest.approx(1.0, abs=1e-12)
    assert abs(abs(s_matrix(0.7, 1.0)) - 1.0) < 1e-12


def test_reflection_factor_unitarity():
    assert abs(abs(reflection_factor(0.9, 0.3, 0.2, 1.0)) - 1.0) < 1e-12


def test_reflection_e_f_exchange_is_a1_sign_flip():
    p = ShGParams(beta=1.2, a0=0.4, a1=0.3)
    q = ShGParams(beta=1.2, a0=0.4, a1=-0.3)
    assert p.e_param == pytest.approx(q.f_param)
    assert p.f_param == pytest.approx(q.e_param)
    # and the reflection factor is invariant under the combined swap
    r1 = reflection_factor(0.8, 0.4, 0.3, 1.2)
    r2 = reflection_factor(0.8, 0.4, -0.3, 1.2)
    assert r1 == pytest.approx(r2)


def test_reflection_theta_parity():
    r = reflection_factor(0.8, 0.3, 0.2, 1.0)
    r_inv = reflection_factor(-0.8, 0.3, 0.2, 1.0)
    assert r * r_inv == pytest.approx(1.0, abs=1e-12)


def test_free_reflection_values():
    assert free_reflection(1.0, 0.0) == pytest.approx(1.0)
    assert free_reflection(0.5, 0.5) == pytest.approx(-1j)
    assert free_reflection(1e8, 0.7) == pytest.approx(1.0, abs=1e-7)
    assert abs(abs(free_reflection(1.5, 0.7)) - 1.0) < 1e-14


def test_free_reflection_bound_state_pole():
    # the bound-state pole sits at ik = lam_b, i.e. k = -i lam_b
    with pytest.raises(PoleError, match="bound-state"):
        free_reflection(0.4j, -0.4)
    with pytest.raises(ValidationError):
        free_reflection(0.0, 0.0)


def test_a_from_b_branch():
    assert a_from_b(1.0) == pytest.approx(0.0)
    assert a_from_b(0.0) == pytest.approx(0.5)
    assert a_from_b(-1.0) == pytest.approx(1.0)
    for b in (-0.8, -0.1, 0.3, 0.99):
        assert cos_from_a(a_from_b(b)) == pytest.approx(b)
    with pytest.raises(ValidationError, match="complex branch"):
        a_from_b(1.5)


def test_params_from_b_roundtrip():
    p = ShGParams.from_b(0.3, -0.4, beta=1.0)
    assert cos_from_a(p.a0) == pytest.approx(0.3)
    assert cos_from_a(p.a1) == pytest.approx(-0.4)
