"""Probability spectra and their Rényi entropies.

All logarithms are base 2, so entropies are in bits. An order is a float
``alpha >= 0``; ``math.inf`` selects the min-entropy.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

INF = math.inf
RANK_TOL = 1e-12
SUM_TOL = 1e-9
NEG_TOL = 1e-12
MAJORIZATION_TOL = 1e-10
FILE_SUM_TOL = 1e-6


class Spectrum:
    """Descending probability vector, e.g. the Schmidt coefficients of a pure state.

    Values are sorted on construction. Entries above ``-1e-12`` that are
    negative are clamped to zero; anything more negative, or a total outside
    ``1 +/- 1e-9``, raises ``ValueError``.
    """

    __slots__ = ("_probs",)

    def __init__(self, values):
        p = np.array(values, dtype=float).ravel()
        if p.size == 0:
            raise ValueError("spectrum must have at least one entry")
        if not np.all(np.isfinite(p)):
            raise ValueError("spectrum has non-finite entries")
        if p.min() < -NEG_TOL:
            raise ValueError(f"spectrum has negative entry {p.min():.3e}")
        total = p.sum()
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"spectrum sums to {total!r}, not 1")
        p = np.sort(np.clip(p, 0.0, None))[::-1].copy()
        p.flags.writeable = False
        self._probs = p

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self._probs > RANK_TOL))

    def __len__(self):
        return len(self._probs)

    def __iter__(self):
        return iter(self._probs.tolist())

    def __array__(self, dtype=None, copy=None):
        return self._probs if dtype is None else self._probs.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return np.array_equal(self._probs, other._probs)

    def __hash__(self):
        return hash(self._probs.tobytes())

    def __repr__(self):
        return f"Spectrum({self._probs.tolist()!r})"

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(length, len(self)))
        out[: len(self)] = self._probs
        return out


def spectrum_of(rho) -> Spectrum:
    """Eigenvalue spectrum of a density operator."""
    from .linalg import eigh

    w = eigh(rho).eigenvalues
    return Spectrum(np.clip(w, 0.0, None))


def uniform(k: int) -> Spectrum:
    """Schmidt spectrum of a maximally entangled state of rank ``k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return Spectrum(np.full(k, 1.0 / k))


def check_order(alpha) -> float:
    alpha = float(alpha)
    if math.isnan(alpha) or alpha < 0:
        raise ValueError(f"Rényi order must be >= 0, got {alpha!r}")
    return alpha


def renyi(p: Spectrum, alpha) -> float:
    """Rényi entropy of order ``alpha`` in bits.

    Orders 0, 1 and inf are the log-rank, Shannon and min-entropy. Other
    orders are evaluated in log space so that large ``alpha`` does not
    underflow.
    """
    alpha = check_order(alpha)
    if not isinstance(p, Spectrum):
        p = Spectrum(p)
    probs = p.probs
    if alpha == 0:
        return math.log2(p.rank)
    if alpha == INF:
        return max(-math.log2(probs[0]), 0.0)
    nz = probs[probs > 0]
    logs = np.log2(nz)
    if alpha == 1:
        return max(float(-np.dot(nz, logs)), 0.0)
    top = logs[0]
    log_sum = alpha * top + math.log2(float(np.sum(np.exp2(alpha * (logs - top)))))
    return max(log_sum / (1.0 - alpha), 0.0)


def majorizes(p: Spectrum, q: Spectrum) -> bool:
    """True if every prefix sum of ``p`` dominates that of ``q``."""
    n = max(len(p), len(q))
    return bool(np.all(np.cumsum(p.padded(n)) >= np.cumsum(q.padded(n)) - MAJORIZATION_TOL))


def eps_rank(p: Spectrum, eps: float) -> int:
    """Fewest largest entries whose total is at least ``1 - eps``."""
    if not 0 <= eps < 1:
        raise ValueError(f"eps must lie in [0, 1), got {eps!r}")
    hits = np.nonzero(np.cumsum(p.probs) >= 1.0 - eps - RANK_TOL)[0]
    return int(hits[0]) + 1 if hits.size else len(p)


def tensor(p: Spectrum, q: Spectrum) -> Spectrum:
    return Spectrum(np.outer(p.probs, q.probs).ravel())


def match_fidelity(p: Spectrum, q: Spectrum) -> float:
    """Largest overlap between two pure states with these Schmidt spectra.

    Pairing sorted coefficients is optimal over local unitaries, giving
    ``sum_j sqrt(p_j q_j)`` with both vectors descending.
    """
    n = max(len(p), len(q))
    f = float(np.sum(np.sqrt(p.padded(n) * q.padded(n))))
    return min(max(f, 0.0), 1.0)


def load_spectrum(path) -> Spectrum:
    """Read one value per line (any order); normalize if within 1e-6 of unit sum.

    Blank lines and lines starting with ``#`` are skipped.
    """
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {line!r}") from None
    if not values:
        raise ValueError(f"{path}: no values")
    arr = np.array(values)
    total = arr.sum()
    if abs(total - 1.0) > FILE_SUM_TOL:
        raise ValueError(f"{path}: values sum to {total!r}, not 1")
    return Spectrum(arr / total)


def save_spectrum(p: Spectrum, path) -> None:
    Path(path).write_text("".join(f"{x!r}\n" for x in p))
