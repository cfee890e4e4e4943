"""Rényi-entropic lower bounds on communication.

State-transformation bounds take Schmidt spectra of the initial and target
states. Function bounds go through the associated bipartite states of a
rectangle: running a function protocol, flipping the phase by ``f`` and
uncomputing turns ``phi`` into ``psi`` at twice the cost and twice the error.

Every evaluator returns a :class:`BoundReport`. Bounds can be negative and
are reported as computed; ``value_bits_floored`` is the display value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .rectangles import Rectangle, check_odd_prime, marginals
from .spectra import INF, Spectrum, renyi

EXACT_ALPHAS = (0.0, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0, 2.0, 4.0, 16.0, INF)
CONJUGATE_ALPHAS = tuple(0.5 + j / 128 for j in range(64))
FUNCTION_BETAS = tuple(1.0 + 2.0 ** (k / 4) for k in range(-20, 41)) + (INF,)


@dataclass(frozen=True)
class BoundReport:
    theorem_tag: str
    value_bits: float
    optimizer: float
    eps: float
    params: dict[str, Any] = field(default_factory=dict)
    companions: dict[str, Any] = field(default_factory=dict)
    sweep: tuple[tuple[float, float], ...] = field(default=(), repr=False, compare=False)

    @property
    def value_bits_floored(self) -> float:
        return max(self.value_bits, 0.0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem_tag": self.theorem_tag,
            "value_bits": self.value_bits,
            "value_bits_floored": self.value_bits_floored,
            "optimizer": self.optimizer,
            "eps": self.eps,
            "params": dict(self.params),
            "companions": dict(self.companions),
        }


def conjugate_order(alpha: float) -> float:
    """Hölder partner ``alpha / (2 alpha - 1)`` of an order in [1/2, 1); inf at 1/2."""
    if not 0.5 <= alpha < 1:
        raise ValueError(f"alpha must lie in [1/2, 1), got {alpha!r}")
    return INF if alpha == 0.5 else alpha / (2 * alpha - 1)


def _check_eps(eps: float, upper: float) -> float:
    eps = float(eps)
    if not 0 <= eps < upper:
        raise ValueError(f"eps must lie in [0, {upper:g}), got {eps!r}")
    return eps


def _best(sweep: list[tuple[float, float]]) -> tuple[float, float]:
    # first maximum in grid order, for determinism
    return max(sweep, key=lambda t: t[1])


def exact_transform_bound(phi: Spectrum, psi: Spectrum) -> BoundReport:
    """Qubits needed to turn ``phi`` into ``psi`` exactly: max over orders of S(psi) - S(phi)."""
    sweep = [(a, renyi(psi, a) - renyi(phi, a)) for a in EXACT_ALPHAS]
    alpha, value = _best(sweep)
    return BoundReport("renyi-exact-transform", value, alpha, 0.0, sweep=tuple(sweep))


def holder_entropy_floor(sigma: Spectrum, alpha: float, eps: float) -> float:
    """Least possible ``S_alpha(rho)`` for any ``rho`` with fidelity above ``1 - eps`` to sigma.

    The floor is ``S_beta(sigma) + 2 alpha / (1 - alpha) * log2(1 - eps)`` with
    ``beta`` the conjugate order. It does not depend on the dimension.
    """
    beta = conjugate_order(alpha)
    eps = _check_eps(eps, 1.0)
    return renyi(sigma, beta) + 2 * alpha / (1 - alpha) * math.log2(1 - eps)


def _approx_sweep(phi: Spectrum, psi: Spectrum, eps: float) -> list[tuple[float, float]]:
    penalty = math.log2(1 - eps)
    return [
        (a, renyi(psi, conjugate_order(a)) - renyi(phi, a) + 2 * a / (1 - a) * penalty)
        for a in CONJUGATE_ALPHAS
    ]


def state_approx_bound(phi: Spectrum, psi: Spectrum, eps: float) -> BoundReport:
    """Lower bound on converting ``phi`` to within fidelity ``1 - eps`` of ``psi``.

    Holds with any number of shared maximally entangled pairs, which must be
    returned. The optimizer is the order alpha; its partner beta applies to psi.
    """
    eps = _check_eps(eps, 1.0)
    sweep = _approx_sweep(phi, psi, eps)
    alpha, value = _best(sweep)
    return BoundReport(
        "renyi-approx-transform",
        value,
        alpha,
        eps,
        params={"order": "alpha", "beta": conjugate_order(alpha)},
        sweep=tuple(sweep),
    )


def function_bound_uniform(sigma_f: Spectrum, eps: float) -> BoundReport:
    """Lower bound for a total function under uniform inputs, from its spectrum.

    ``max_beta 1/2 S_beta(sigma_f) + beta / (beta - 1) log2(1 - 2 eps)``.
    """
    eps = _check_eps(eps, 0.5)
    penalty = math.log2(1 - 2 * eps)
    sweep = []
    for b in FUNCTION_BETAS:
        weight = 1.0 if b == INF else b / (b - 1)
        sweep.append((b, 0.5 * renyi(sigma_f, b) + weight * penalty))
    beta, value = _best(sweep)
    return BoundReport("function-uniform", value, beta, eps, sweep=tuple(sweep))


def _as_stated(phi: Spectrum, psi: Spectrum, eps: float) -> dict[str, float]:
    # alpha = 1/2 term at error eps, S_1/2(phi) rounded up to whole bits
    s_half = renyi(phi, 0.5)
    tail = 2 * math.log2(1 - eps)
    head = renyi(psi, INF)
    return {
        "as_stated": head - math.ceil(s_half - 1e-12) + tail,
        "as_stated_unrounded": head - s_half + tail,
    }


def function_bound_promise(r: Rectangle, eps: float) -> BoundReport:
    """Lower bound for a (possibly partial) function, uniform over its support.

    The main value halves the state bound at error ``2 eps``. The companions
    also carry the alpha = 1/2 state bound at error ``eps`` without halving
    (``as_stated``), which is the headline form quoted for the quadratic
    character.
    """
    eps = _check_eps(eps, 0.5)
    pair = marginals(r)
    phi, psi = pair.phi_spectrum, pair.psi_spectrum
    companions = _as_stated(phi, psi, eps)
    params = {"rows": r.rows, "cols": r.cols, "support_size": r.support_size}
    if renyi(phi, 0) == 0:
        # phi is a product state, so the composition is exactly the uniform bound
        base = function_bound_uniform(psi, eps)
        return BoundReport(
            "function-promise", base.value_bits, base.optimizer, eps,
            params={**params, "order": "beta"}, companions=companions, sweep=base.sweep,
        )
    state = state_approx_bound(phi, psi, 2 * eps)
    return BoundReport(
        "function-promise",
        0.5 * state.value_bits,
        state.optimizer,
        eps,
        params={**params, "order": "alpha", "beta": state.params["beta"]},
        companions=companions,
        sweep=tuple((a, 0.5 * v) for a, v in state.sweep),
    )


def ip_bounds_closed(n: int, eps: float) -> BoundReport:
    """Closed-form bounds for inner product on n bits with maximally entangled help."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    eps = _check_eps(eps, 0.5)
    penalty = math.log2(1 - 2 * eps)
    lower = n / 2 + penalty
    upper = max(0, math.ceil(n / 2 + 0.5 * penalty))
    return BoundReport(
        "inner-product-closed",
        lower,
        INF,
        eps,
        params={"n": n},
        companions={"upper_bits": upper, "classical_lower_bits": n + 2 * penalty},
    )


def qchar_bound_closed(q: int, eps: float) -> BoundReport:
    """Closed-form bounds for the quadratic character of ``x - y`` over F_q."""
    q = check_odd_prime(q)
    eps = _check_eps(eps, 1.0)
    lower = math.log2(q - 1) - 2 + 2 * math.log2(1 - eps)
    return BoundReport(
        "quadratic-character-closed",
        lower,
        0.5,
        eps,
        params={"q": q},
        companions={"upper_bits": math.ceil(math.log2(q))},
    )
