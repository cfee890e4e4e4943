"""Dense real symmetric linear algebra.

Eigendecomposition is done with a cyclic Jacobi method. Each sweep visits
every index pair once, grouped by a round-robin schedule so that the pairs in
a round are disjoint and their rotations can be applied together.

Composite systems use A-major indexing: basis vector ``|i_A>|j_B>`` has index
``i * dim_b + j``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

SYMMETRY_RTOL = 1e-12
PSD_TOL = 1e-10
TRACE_TOL = 1e-9
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100


class ConvergenceError(ArithmeticError):
    """Raised when the Jacobi iteration hits its sweep cap."""


class EigenDecomp(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def as_symmetric(a, name: str = "matrix") -> np.ndarray:
    """Validate ``a`` as a square symmetric matrix and return a symmetrized float copy."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValueError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    scale = np.max(np.abs(a))
    if np.max(np.abs(a - a.T)) > SYMMETRY_RTOL * scale:
        raise ValueError(f"{name} is not symmetric")
    return 0.5 * (a + a.T)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint (p, q) index pairs per round; every pair appears exactly once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p >= 0 and q >= 0:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _rotate(a: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    apq = a[p, q]
    active = apq != 0.0
    if not np.any(active):
        return
    p, q, apq = p[active], q[active], apq[active]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    # A <- J^T A J with J[p,p] = J[q,q] = c, J[p,q] = s, J[q,p] = -s
    cp, cq = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * cp - s * cq
    a[:, q] = s * cp + c * cq
    rp, rq = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c[:, None] * rp - s[:, None] * rq
    a[q, :] = s[:, None] * rp + c[:, None] * rq
    a[p, q] = 0.0
    a[q, p] = 0.0

    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def eigh(a) -> EigenDecomp:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues are returned in descending order; column ``i`` of the
    eigenvector matrix belongs to eigenvalue ``i``.

    Raises:
        ValueError: if ``a`` is not square and symmetric.
        ConvergenceError: if the off-diagonal mass has not dropped below
            ``JACOBI_TOL * ||a||_F`` after ``MAX_SWEEPS`` sweeps.
    """
    a = as_symmetric(a)
    n = a.shape[0]
    v = np.eye(n)
    target = JACOBI_TOL * np.linalg.norm(a)
    rounds = _round_robin(n)
    sweeps = 0
    while _off_norm(a) > target:
        if sweeps == MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
        for p, q in rounds:
            _rotate(a, v, p, q)
        sweeps += 1
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomp(w[order], v[:, order])


def check_density(rho, name: str = "rho") -> np.ndarray:
    """Validate a density operator (symmetric, PSD, unit trace)."""
    rho = as_symmetric(rho, name)
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise ValueError(f"{name} does not have unit trace (trace={np.trace(rho)!r})")
    if eigh(rho).eigenvalues[-1] < -PSD_TOL:
        raise ValueError(f"{name} is not positive semidefinite")
    return rho


def psd_sqrt(a) -> np.ndarray:
    """Square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as round-off and clamped to zero.
    """
    w, v = eigh(a)
    if w[-1] < -PSD_TOL:
        raise ValueError(f"matrix is not positive semidefinite (min eigenvalue {w[-1]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    out = (v * root) @ v.T
    return 0.5 * (out + out.T)


def _noise_floor(w: np.ndarray) -> float:
    return 8 * len(w) * np.finfo(float).eps * float(np.max(np.abs(w)))


def _support_root(rho: np.ndarray) -> np.ndarray:
    """``V sqrt(W)`` over eigenvalues above round-off, so ``rho ~= R R^T``."""
    w, v = eigh(rho)
    keep = w > _noise_floor(w)
    return v[:, keep] * np.sqrt(w[keep])


def singular_values(y) -> np.ndarray:
    """Singular values of a real matrix by one-sided (Hestenes) Jacobi, descending.

    Columns are rotated pairwise until mutually orthogonal; the singular
    values are then the column norms. Small values keep their relative
    accuracy because ``y^T y`` is never formed.
    """
    w = np.array(y, dtype=float)
    if w.ndim != 2 or w.size == 0:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {w.shape}")
    if w.shape[1] > w.shape[0]:
        w = w.T.copy()
    rounds = _round_robin(w.shape[1])
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p, q in rounds:
            if len(p) == 0:
                continue
            wp, wq = w[:, p], w[:, q]
            alpha = np.sum(wp * wp, axis=0)
            beta = np.sum(wq * wq, axis=0)
            gamma = np.sum(wp * wq, axis=0)
            active = np.abs(gamma) > JACOBI_TOL * np.sqrt(alpha * beta)
            if not np.any(active):
                continue
            rotated = True
            p, q = p[active], q[active]
            alpha, beta, gamma = alpha[active], beta[active], gamma[active]
            zeta = (beta - alpha) / (2.0 * gamma)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(zeta, 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            wp, wq = w[:, p].copy(), w[:, q].copy()
            w[:, p] = c * wp - s * wq
            w[:, q] = s * wp + c * wq
        if not rotated:
            return np.sort(np.linalg.norm(w, axis=0))[::-1]
    raise ConvergenceError(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity ``Tr sqrt(sqrt(rho) sigma sqrt(rho))`` (not squared).

    Computed as the trace norm of ``sqrt(rho) sqrt(sigma)`` restricted to both
    supports. Eigenvalues at the round-off floor are dropped first, since
    their square roots would otherwise leak ~1e-8 into the result.
    """
    rho = check_density(rho, "rho")
    sigma = check_density(sigma, "sigma")
    if rho.shape != sigma.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {sigma.shape}")
    y = _support_root(rho).T @ _support_root(sigma)
    f = float(np.sum(singular_values(y)))
    return min(max(f, 0.0), 1.0)


def _split(rho_ab, dim_a: int, dim_b: int) -> np.ndarray:
    rho_ab = as_symmetric(rho_ab, "rho_ab")
    if dim_a < 1 or dim_b < 1 or rho_ab.shape[0] != dim_a * dim_b:
        raise ValueError(
            f"cannot factor dimension {rho_ab.shape[0]} as {dim_a} x {dim_b}"
        )
    return rho_ab.reshape(dim_a, dim_b, dim_a, dim_b)


def partial_trace_b(rho_ab, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the second factor of an A-major composite operator."""
    return np.einsum("ijkj->ik", _split(rho_ab, dim_a, dim_b))


def partial_trace_a(rho_ab, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the first factor of an A-major composite operator."""
    return np.einsum("ijil->jl", _split(rho_ab, dim_a, dim_b))


def pinch(rho_ab, dim_a: int, dim_b: int) -> np.ndarray:
    """Dephase ``rho_ab`` in the eigenbasis of its A marginal.

    Returns ``sum_i |i><i| (x) <i|rho_ab|i>`` expressed in that eigenbasis,
    so the result is block diagonal with one ``dim_b`` block per eigenvector.
    """
    blocks = _split(rho_ab, dim_a, dim_b)
    u = eigh(np.einsum("ijkj->ik", blocks)).eigenvectors
    # <i_A| rho |i_A> for each eigenvector i
    diag_blocks = np.einsum("xi,xjyl,yi->ijl", u, blocks, u)
    out = np.zeros((dim_a, dim_b, dim_a, dim_b))
    for i in range(dim_a):
        out[i, :, i, :] = diag_blocks[i]
    out = out.reshape(dim_a * dim_b, dim_a * dim_b)
    return 0.5 * (out + out.T)


def random_density(dim: int, seed: int) -> np.ndarray:
    """Full-rank Wishart density matrix ``G G^T / Tr``, deterministic in ``seed``."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    g = np.random.default_rng(seed).standard_normal((dim, dim))
    rho = g @ g.T
    rho /= np.trace(rho)
    return 0.5 * (rho + rho.T)


def random_bipartite_pure(dim_a: int, dim_b: int, seed: int):
    """Random real bipartite pure state.

    Returns the projector on ``dim_a * dim_b`` dimensions and the Schmidt
    spectrum (squared singular values of the amplitude matrix).
    """
    from .spectra import Spectrum

    if dim_a < 1 or dim_b < 1:
        raise ValueError("dims must be >= 1")
    psi = np.random.default_rng(seed).standard_normal(dim_a * dim_b)
    psi /= np.linalg.norm(psi)
    schmidt = np.linalg.svd(psi.reshape(dim_a, dim_b), compute_uv=False) ** 2
    return np.outer(psi, psi), Spectrum(schmidt / schmidt.sum())
