import math

import numpy as np
import pytest

from renyi_bounds import bounds, linalg, rectangles
from renyi_bounds.bounds import (
    conjugate_order,
    exact_transform_bound,
    function_bound_promise,
    function_bound_uniform,
    holder_entropy_floor,
    ip_bounds_closed,
    qchar_bound_closed,
    state_approx_bound,
)
from renyi_bounds.spectra import INF, Spectrum, renyi, spectrum_of, uniform


def qchar_spectra(q):
    phi = Spectrum([1 - 1 / q] + [1 / (q * (q - 1))] * (q - 1))
    psi = Spectrum([1 / (q - 1)] * (q - 1) + [0])
    return phi, psi


def test_conjugate_order():
    assert conjugate_order(0.5) == INF
    assert conjugate_order(0.75) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        conjugate_order(1.0)


def test_grids():
    assert len(bounds.CONJUGATE_ALPHAS) == 64 and bounds.CONJUGATE_ALPHAS[0] == 0.5
    assert bounds.FUNCTION_BETAS[0] == pytest.approx(1 + 2**-5)
    assert bounds.FUNCTION_BETAS[-1] == INF and len(bounds.FUNCTION_BETAS) == 62


def test_exact_bound_examples():
    p = Spectrum([0.6, 0.3, 0.1])
    assert exact_transform_bound(p, p).value_bits == 0
    assert exact_transform_bound(Spectrum([1.0]), uniform(2**5)).value_bits == pytest.approx(5)
    assert exact_transform_bound(uniform(2), uniform(8)).value_bits == pytest.approx(2)


def test_exact_bound_picks_best_order():
    # log-rank dominates when psi has a long flat tail
    psi = Spectrum([0.9] + [0.1 / 15] * 15)
    report = exact_transform_bound(Spectrum([1.0]), psi)
    assert report.optimizer == 0
    assert report.value_bits == pytest.approx(4)


def test_state_approx_no_false_positive():
    for k in (1, 2, 7):
        assert state_approx_bound(uniform(k), uniform(k), 0).value_bits <= 1e-12


def test_state_approx_qchar_half_order_term():
    q, eps = 101, 0.05
    phi, psi = qchar_spectra(q)
    report = state_approx_bound(phi, psi, eps)
    half_term = dict(report.sweep)[0.5]
    assert half_term == pytest.approx(math.log2(q - 1) - math.log2(4 - 4 / q) + 2 * math.log2(1 - eps), abs=1e-12)
    assert report.value_bits >= half_term


def test_state_approx_q101_exact():
    phi, psi = qchar_spectra(101)
    assert state_approx_bound(phi, psi, 0).value_bits >= math.log2(100) - 2


def test_state_approx_eps_range():
    with pytest.raises(ValueError):
        state_approx_bound(uniform(2), uniform(2), 1.0)


def test_holder_floor_examples():
    assert holder_entropy_floor(Spectrum([1, 0]), 0.7, 0) == 0
    p = Spectrum([0.5, 0.3, 0.2])
    for a in (0.5, 0.6, 0.9):
        assert holder_entropy_floor(p, a, 0) <= renyi(p, a) + 1e-12
    with pytest.raises(ValueError):
        holder_entropy_floor(p, 0.4, 0)


@pytest.mark.parametrize("seed", range(20))
def test_holder_floor_against_measured_fidelity(seed):
    rho, sigma = linalg.random_density(4, seed), linalg.random_density(4, seed + 1000)
    f = linalg.fidelity(rho, sigma)
    for a in (0.5, 0.6, 0.75, 0.9):
        floor = holder_entropy_floor(spectrum_of(sigma), a, 1 - f)
        assert renyi(spectrum_of(rho), a) >= floor - 1e-8


def test_function_bound_uniform_ip():
    for n, eps in ((8, 0.1), (4, 0.0), (6, 0.3)):
        report = function_bound_uniform(uniform(2**n), eps)
        assert report.value_bits == pytest.approx(n / 2 + math.log2(1 - 2 * eps), abs=1e-12)
        if eps > 0:
            assert report.optimizer == INF
    assert function_bound_uniform(uniform(256), 0.1).value_bits == pytest.approx(3.678071905112638, abs=1e-12)


def test_function_bound_uniform_eps_zero_covers_min_entropy():
    p = Spectrum([0.5, 0.2, 0.2, 0.1])
    assert function_bound_uniform(p, 0).value_bits >= 0.5 * renyi(p, INF)
    with pytest.raises(ValueError):
        function_bound_uniform(p, 0.5)


def test_promise_bound_matches_uniform_for_full_support():
    r = rectangles.Rectangle(np.random.default_rng(5).choice([-1, 1], size=(6, 6)))
    for eps in (0, 0.1, 0.3):
        a = function_bound_promise(r, eps).value_bits
        b = function_bound_uniform(rectangles.function_spectrum(r), eps).value_bits
        assert a == pytest.approx(b, abs=1e-9)


def test_promise_bound_is_half_state_bound_at_double_error():
    q, eps = 11, 0.1
    phi, psi = qchar_spectra(q)
    report = function_bound_promise(rectangles.qchar_rectangle(q), eps)
    assert report.value_bits == pytest.approx(0.5 * state_approx_bound(phi, psi, 2 * eps).value_bits, abs=1e-9)


@pytest.mark.parametrize("q, expected", [(101, math.log2(100) - 2), (7, math.log2(6) - 2)])
def test_promise_as_stated_field(q, expected):
    report = function_bound_promise(rectangles.qchar_rectangle(q), 0)
    assert report.companions["as_stated"] == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("eps", np.linspace(0, 0.3, 7))
def test_as_stated_matches_closed_form(eps):
    for q in (7, 11):
        spectral = function_bound_promise(rectangles.qchar_rectangle(q), eps).companions["as_stated"]
        assert spectral == pytest.approx(qchar_bound_closed(q, eps).value_bits, abs=1e-8)


def test_ip_closed_examples():
    exact = ip_bounds_closed(8, 0)
    assert exact.value_bits == 4 and exact.companions["upper_bits"] == 4
    r = ip_bounds_closed(8, 0.1)
    assert r.value_bits == pytest.approx(4 + math.log2(0.8), abs=1e-12)
    assert r.companions["upper_bits"] == 4
    assert r.companions["classical_lower_bits"] == pytest.approx(8 + 2 * math.log2(0.8))


def test_ip_closed_lower_below_upper():
    for n in range(1, 20):
        for eps in np.linspace(0, 0.49, 25):
            r = ip_bounds_closed(n, eps)
            if r.companions["upper_bits"] > 0:
                assert r.value_bits <= r.companions["upper_bits"]


def test_ip_closed_upper_floors_at_zero():
    assert ip_bounds_closed(1, 0.49).companions["upper_bits"] == 0


def test_qchar_closed_examples():
    r = qchar_bound_closed(101, 0)
    assert r.value_bits == pytest.approx(4.643856189774724, abs=1e-12)
    assert r.companions["upper_bits"] == 7
    r3 = qchar_bound_closed(3, 0)
    assert r3.value_bits == pytest.approx(-1) and r3.companions["upper_bits"] == 2
    assert r3.value_bits_floored == 0
    with pytest.raises(ValueError):
        qchar_bound_closed(9, 0)


def test_bounds_non_increasing_in_eps():
    phi, psi = qchar_spectra(13)
    grid = np.linspace(0, 0.45, 10)
    for fn in (
        lambda e: state_approx_bound(phi, psi, e).value_bits,
        lambda e: function_bound_uniform(psi, e).value_bits,
        lambda e: function_bound_promise(rectangles.qchar_rectangle(13), e).value_bits,
        lambda e: ip_bounds_closed(6, e).value_bits,
        lambda e: qchar_bound_closed(13, e).value_bits,
    ):
        values = [fn(e) for e in grid]
        assert all(values[i] >= values[i + 1] - 1e-12 for i in range(len(values) - 1))


def test_report_serialization_fields():
    d = ip_bounds_closed(4, 0.1).to_dict()
    assert set(d) == {"theorem_tag", "value_bits", "value_bits_floored", "optimizer", "eps", "params", "companions"}


@pytest.mark.parametrize("seed", range(10))
def test_weak_subadditivity(seed):
    rho = linalg.random_density(12, seed)
    s_ab = spectrum_of(rho)
    s_a = spectrum_of(linalg.partial_trace_b(rho, 3, 4))
    log_rank_b = renyi(spectrum_of(linalg.partial_trace_a(rho, 3, 4)), 0)
    assert log_rank_b == pytest.approx(2)
    for a in bounds.EXACT_ALPHAS:
        assert renyi(s_a, a) - log_rank_b - 1e-8 <= renyi(s_ab, a) <= renyi(s_a, a) + log_rank_b + 1e-8


def test_majorization_implies_small_exact_bound():
    # p majorizes psi (x) uniform(k) => turning psi into p costs at most log2 k
    psi = Spectrum([0.5, 0.3, 0.2])
    lifted = np.outer(psi.probs, np.full(2, 0.5)).ravel()
    p = Spectrum([lifted[0] + lifted[1], lifted[2] + lifted[3], lifted[4], lifted[5]])
    assert bounds.exact_transform_bound(psi, p).value_bits <= 1 + 1e-12
