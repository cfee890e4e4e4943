"""Embezzling entanglement from the harmonic family M(d).

``M(d)`` has Schmidt coefficients ``1 / (H_d j)`` for ``j = 1..d``. Without
communication, the parties can only apply local unitaries, so the best
attainable fidelity between ``M(d)`` and ``M(d) (x) target`` is the sorted
Schmidt overlap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectra import Spectrum, match_fidelity, tensor

MAX_PRODUCT = 2**22
MAX_SEARCH_DIM = 2**20


@dataclass(frozen=True)
class EmbezzleResult:
    d: int
    fidelity: float
    target: tuple[float, ...]
    eps_target: float | None = None
    predecessor_d: int | None = None
    predecessor_fidelity: float | None = None

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "fidelity": self.fidelity,
            "target": list(self.target),
            "eps_target": self.eps_target,
            "predecessor_d": self.predecessor_d,
            "predecessor_fidelity": self.predecessor_fidelity,
        }


class EmbezzleCapError(RuntimeError):
    """No probed dimension reached the requested fidelity; ``best`` holds the closest."""

    def __init__(self, message: str, best: EmbezzleResult):
        super().__init__(message)
        self.best = best


def m_spectrum(d: int) -> Spectrum:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    weights = 1.0 / np.arange(1, d + 1)
    return Spectrum(weights / weights.sum())


def embezzle_fidelity(d: int, target: Spectrum) -> float:
    if d * len(target) > MAX_PRODUCT:
        raise ValueError(f"product spectrum of size {d * len(target)} exceeds {MAX_PRODUCT}")
    m = m_spectrum(d)
    return match_fidelity(m, tensor(m, target))


def min_embezzle_dim(target: Spectrum, eps: float) -> EmbezzleResult:
    """Smallest power of two ``d`` with embezzling fidelity above ``1 - eps``.

    Raises:
        EmbezzleCapError: if even ``d = 2**20`` falls short.
    """
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    desc = tuple(target)
    prev_d = prev_f = None
    best = None
    d = 1
    while d <= MAX_SEARCH_DIM:
        f = embezzle_fidelity(d, target)
        if f > 1 - eps:
            return EmbezzleResult(d, f, desc, eps, prev_d, prev_f)
        if best is None or f > best.fidelity:
            best = EmbezzleResult(d, f, desc, eps, prev_d, prev_f)
        prev_d, prev_f = d, f
        d *= 2
    raise EmbezzleCapError(
        f"no d <= {MAX_SEARCH_DIM} reaches fidelity > {1 - eps:g} "
        f"(best {best.fidelity:.6f} at d={best.d})",
        best,
    )
