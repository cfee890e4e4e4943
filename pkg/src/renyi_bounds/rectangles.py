"""Sign matrices of two-party Boolean functions and their marginal states.

A rectangle holds ``f(x, y)`` in ``{-1, +1}`` for every input pair, with 0
marking pairs outside the promise. The associated bipartite states put equal
amplitude on every supported pair (signed by ``f`` for the target state).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import eigh
from .spectra import Spectrum

MAX_IP_N = 13
MAX_Q = 4096
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True, eq=False)
class Rectangle:
    entries: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        r = np.array(self.entries, dtype=np.int8)
        if r.ndim != 2 or 0 in r.shape:
            raise ValueError(f"rectangle must be a non-empty 2-D array, got shape {r.shape}")
        if not np.isin(r, (-1, 0, 1)).all():
            raise ValueError("rectangle entries must be -1, 0 or +1")
        if not r.any():
            raise ValueError("rectangle has empty support")
        r.flags.writeable = False
        object.__setattr__(self, "entries", r)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.entries))

    @property
    def full_support(self) -> bool:
        return self.support_size == self.entries.size


@dataclass(frozen=True)
class MarginalPair:
    """A-side marginals of the unsigned (``phi_a``) and signed (``psi_a``) states."""

    phi_a: np.ndarray
    psi_a: np.ndarray
    phi_spectrum: Spectrum = field(repr=False)
    psi_spectrum: Spectrum = field(repr=False)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_odd_prime(q: int) -> int:
    if isinstance(q, bool) or int(q) != q:
        raise ValueError(f"q must be an integer, got {q!r}")
    q = int(q)
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be an odd prime, got {q}")
    if not is_probable_prime(q):
        raise ValueError(f"q must be an odd prime, {q} is composite")
    return q


def legendre(x: int, q: int) -> int:
    """Quadratic character of ``x`` modulo the odd prime ``q`` (Euler's criterion)."""
    q = check_odd_prime(q)
    if not 0 <= x < q:
        raise ValueError(f"x must lie in [0, {q}), got {x}")
    if x == 0:
        return 0
    return 1 if pow(x, (q - 1) // 2, q) == 1 else -1


def _character_table(q: int) -> np.ndarray:
    table = np.zeros(q, dtype=np.int8)
    for x in range(1, q):
        table[x] = 1 if pow(x, (q - 1) // 2, q) == 1 else -1
    return table


def ip_rectangle(n: int) -> Rectangle:
    """``R[x][y] = (-1)^(x . y)`` over n-bit strings, a 2^n x 2^n Hadamard matrix."""
    if not 1 <= n <= MAX_IP_N:
        raise ValueError(f"n must lie in [1, {MAX_IP_N}], got {n}")
    idx = np.arange(2**n)
    anded = idx[:, None] & idx[None, :]
    parity = np.zeros_like(anded)
    for bit in range(n):
        parity ^= (anded >> bit) & 1
    return Rectangle(1 - 2 * parity.astype(np.int8), name=f"ip{n}")


def qchar_rectangle(q: int) -> Rectangle:
    """Quadratic character of ``x - y`` over F_q; the diagonal lies outside the promise."""
    q = check_odd_prime(q)
    if q > MAX_Q:
        raise ValueError(f"q must be at most {MAX_Q}, got {q}")
    idx = np.arange(q)
    return Rectangle(_character_table(q)[(idx[:, None] - idx[None, :]) % q], name=f"qchar{q}")


def from_csv(path) -> Rectangle:
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or all(not cell.strip() for cell in row):
                continue
            try:
                values = [int(cell) for cell in row]
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-integer entry") from None
            if any(v not in (-1, 0, 1) for v in values):
                raise ValueError(f"{path}:{lineno}: entries must be -1, 0 or 1")
            if rows and len(values) != len(rows[0]):
                raise ValueError(f"{path}:{lineno}: ragged row ({len(values)} vs {len(rows[0])})")
            rows.append(values)
    if not rows:
        raise ValueError(f"{path}: empty rectangle")
    return Rectangle(np.array(rows), name=Path(path).stem)


def to_csv(r: Rectangle, path) -> None:
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(r.entries.tolist())


def marginals(r: Rectangle) -> MarginalPair:
    amp = r.entries.astype(float)
    support = float(r.support_size)
    psi_a = amp @ amp.T / support
    mag = np.abs(amp)
    phi_a = mag @ mag.T / support
    return MarginalPair(
        phi_a=phi_a,
        psi_a=psi_a,
        phi_spectrum=Spectrum(np.clip(eigh(phi_a).eigenvalues, 0.0, None)),
        psi_spectrum=Spectrum(np.clip(eigh(psi_a).eigenvalues, 0.0, None)),
    )


def function_spectrum(r: Rectangle) -> Spectrum:
    """Spectrum of ``R R^T / (|X||Y|)`` for a function defined on every input pair."""
    if not r.full_support:
        raise ValueError("function_spectrum needs a full-support rectangle; use marginals()")
    amp = r.entries.astype(float)
    rho = amp @ amp.T / amp.size
    return Spectrum(np.clip(eigh(rho).eigenvalues, 0.0, None))
