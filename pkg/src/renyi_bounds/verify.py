"""Seeded property checks behind ``renyi-bounds verify``.

Each property draws its own generator from ``(seed, crc32(name))`` so suites
can run alone or together with identical results.
"""

from __future__ import annotations

import itertools
import math
import zlib
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import bounds, embezzle, linalg, rectangles, spectra
from .spectra import INF, Spectrum, renyi

DEFAULT_SEED = 20020901
SUITES = ("spectra", "linalg", "bounds", "embezzle")

SPECTRUM_ALPHAS = bounds.EXACT_ALPHAS
HOLDER_ALPHAS = (0.5, 0.6, 0.75, 0.9)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: int
    total: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f"  ({self.detail})" if self.detail else ""
        return f"[{self.suite}] {self.name}: {self.passed}/{self.total} {status}{tail}"


def rng_for(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def random_spectrum(rng: np.random.Generator, max_len: int = 12, full_rank: bool = False) -> Spectrum:
    n = int(rng.integers(1, max_len + 1))
    p = rng.dirichlet(np.full(n, float(rng.choice([0.2, 0.5, 1.0, 4.0]))))
    # keep entries clear of the rank threshold, even after tensoring
    p[p < 1e-5] = 0.0
    if full_rank:
        p = 0.9 * p + 0.1 / n
    return Spectrum(p / p.sum())


def t_transform(p: Spectrum, rng: np.random.Generator, steps: int = 3) -> Spectrum:
    """Mix random pairs of entries; the result is majorized by ``p``."""
    v = p.probs.copy()
    for _ in range(steps):
        if len(v) < 2:
            break
        i, j = rng.choice(len(v), size=2, replace=False)
        t = rng.uniform()
        v[i], v[j] = t * v[i] + (1 - t) * v[j], (1 - t) * v[i] + t * v[j]
    return Spectrum(v)


def random_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n))
    return g + g.T


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


# -- spectra -------------------------------------------------------------

def check_entropy_range(rng, count=200):
    ok = 0
    for _ in range(count):
        p = random_spectrum(rng)
        top = math.log2(p.rank)
        ok += all(-1e-12 <= renyi(p, a) <= top + 1e-9 for a in SPECTRUM_ALPHAS)
    return ok, count


def check_order_monotone(rng, count=200):
    ok = 0
    for _ in range(count):
        p = random_spectrum(rng)
        s = [renyi(p, a) for a in SPECTRUM_ALPHAS]
        ok += all(s[i] >= s[i + 1] - 1e-9 for i in range(len(s) - 1))
    return ok, count


def check_additivity(rng, count=200):
    ok = 0
    for _ in range(count):
        p, q = random_spectrum(rng, 8), random_spectrum(rng, 8)
        pq = spectra.tensor(p, q)
        ok += all(abs(renyi(pq, a) - renyi(p, a) - renyi(q, a)) <= 1e-8 for a in SPECTRUM_ALPHAS)
    return ok, count


def check_schur_concavity(rng, count=500):
    ok = 0
    for _ in range(count):
        p = random_spectrum(rng)
        q = t_transform(p, rng, steps=int(rng.integers(1, 5)))
        ok += spectra.majorizes(p, q) and all(
            renyi(p, a) <= renyi(q, a) + 1e-9 for a in SPECTRUM_ALPHAS
        )
    return ok, count


def check_continuity(rng, count=100):
    probes = ((1 - 1e-4, 1.0), (1 + 1e-4, 1.0), (1e-4, 0.0), (1e4, INF))
    ok = 0
    for _ in range(count):
        p = random_spectrum(rng, full_rank=True)
        ok += all(abs(renyi(p, a) - renyi(p, b)) <= 1e-2 for a, b in probes)
    return ok, count


def check_minimality(rng, count=100):
    ok = 0
    positive = [a for a in SPECTRUM_ALPHAS if a > 0]
    for _ in range(count):
        n = int(rng.integers(1, 10))
        pure = Spectrum(np.eye(n)[0])
        mixed = random_spectrum(rng)
        is_pure = mixed.probs[0] >= 1 - 1e-12
        ok += all(renyi(pure, a) == 0 for a in positive) and all(
            (renyi(mixed, a) == 0) == is_pure for a in positive
        )
    return ok, count


def check_maximality(rng, count=100):
    ok = 0
    positive = [a for a in SPECTRUM_ALPHAS if a > 0]
    for _ in range(count):
        n = int(rng.integers(2, 12))
        flat = spectra.uniform(n)
        p = Spectrum(rng.dirichlet(np.ones(n)))
        ok += all(abs(renyi(flat, a) - math.log2(n)) <= 1e-9 for a in positive) and all(
            renyi(p, a) < math.log2(n) - 1e-12 for a in positive
        )
    return ok, count


def eps_rank_brute(p: Spectrum, eps: float) -> int:
    values = p.probs.tolist()
    for m in range(1, len(values) + 1):
        if sum(values[:m]) >= 1 - eps - 1e-12:
            return m
    return len(values)


def check_eps_rank(rng, count=1000):
    ok = 0
    for _ in range(count):
        p = random_spectrum(rng, 16)
        eps = float(rng.uniform(0, 0.99))
        ok += spectra.eps_rank(p, eps) == eps_rank_brute(p, eps)
    return ok, count


# -- linalg --------------------------------------------------------------

def check_reconstruction(rng, count=50):
    ok = 0
    for _ in range(count):
        a = random_symmetric(rng, int(rng.integers(1, 13)))
        w, v = linalg.eigh(a)
        n = a.shape[0]
        ok += (
            np.linalg.norm((v * w) @ v.T - a) <= 1e-9 * np.linalg.norm(a)
            and np.linalg.norm(v.T @ v - np.eye(n)) <= 1e-9
            and bool(np.all(np.diff(w) <= 0))
        )
    return ok, count


def check_psd_sqrt(rng, count=30):
    ok = 0
    for _ in range(count):
        rho = linalg.random_density(int(rng.integers(1, 9)), _seed(rng))
        r = linalg.psd_sqrt(rho)
        ok += np.linalg.norm(r @ r - rho) <= 1e-8 * np.linalg.norm(rho)
    return ok, count


def check_fidelity_basics(rng, count=30):
    ok = 0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        rho = linalg.random_density(n, _seed(rng))
        sigma = linalg.random_density(n, _seed(rng))
        f = linalg.fidelity(rho, sigma)
        ok += (
            abs(f - linalg.fidelity(sigma, rho)) <= 1e-8
            and abs(linalg.fidelity(rho, rho) - 1) <= 1e-9
            and 0 <= f <= 1
        )
    return ok, count


def check_fidelity_monotone(rng, count=50):
    ok = 0
    for _ in range(count):
        da, db = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        rho = linalg.random_density(da * db, _seed(rng))
        sigma = linalg.random_density(da * db, _seed(rng))
        joint = linalg.fidelity(rho, sigma)
        marg = linalg.fidelity(
            linalg.partial_trace_b(rho, da, db), linalg.partial_trace_b(sigma, da, db)
        )
        ok += marg >= joint - 1e-8
    return ok, count


def check_measurement_bound(rng, count=50):
    ok = 0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        rho = linalg.random_density(n, _seed(rng))
        sigma = linalg.random_density(n, _seed(rng))
        lam, v = linalg.eigh(rho)
        omega = np.einsum("ij,ik,kj->j", v, sigma, v)
        bound = np.sum(np.sqrt(np.clip(lam, 0, None) * np.clip(omega, 0, None)))
        ok += linalg.fidelity(rho, sigma) <= bound + 1e-8
    return ok, count


def check_pinch_marginal(rng, count=50):
    ok = 0
    for _ in range(count):
        da, db = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        rho = linalg.random_density(da * db, _seed(rng))
        before = spectra.spectrum_of(linalg.partial_trace_b(rho, da, db)).probs
        pinched = linalg.pinch(rho, da, db)
        after = spectra.spectrum_of(linalg.partial_trace_b(pinched, da, db)).probs
        ok += (
            np.max(np.abs(before - after)) <= 1e-9
            and abs(np.trace(pinched) - 1) <= 1e-9
        )
    return ok, count


def check_pinch_schur(rng, count=50):
    ok = 0
    for _ in range(count):
        da, db = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        rho = linalg.random_density(da * db, _seed(rng))
        p0 = spectra.spectrum_of(rho)
        p1 = spectra.spectrum_of(linalg.pinch(rho, da, db))
        ok += all(renyi(p1, a) >= renyi(p0, a) - 1e-9 for a in SPECTRUM_ALPHAS)
    return ok, count


def check_schmidt_symmetry(rng, count=50):
    ok = 0
    for _ in range(count):
        da, db = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        proj, schmidt = linalg.random_bipartite_pure(da, db, _seed(rng))
        sa = spectra.spectrum_of(linalg.partial_trace_b(proj, da, db))
        sb = spectra.spectrum_of(linalg.partial_trace_a(proj, da, db))
        k = min(da, db)
        ok += (
            np.max(np.abs(sa.padded(k)[:k] - sb.padded(k)[:k])) <= 1e-9
            and np.max(np.abs(sa.padded(len(schmidt))[: len(schmidt)] - schmidt.probs)) <= 1e-9
        )
    return ok, count


# -- bounds and rectangles -------------------------------------------------

def check_weak_subadditivity(rng, count=500):
    ok = 0
    for _ in range(count):
        da, db = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        rho = linalg.random_density(da * db, _seed(rng))
        s_ab = spectra.spectrum_of(rho)
        s_a = spectra.spectrum_of(linalg.partial_trace_b(rho, da, db))
        log_rank_b = renyi(spectra.spectrum_of(linalg.partial_trace_a(rho, da, db)), 0)
        good = True
        for a in SPECTRUM_ALPHAS:
            joint, left = renyi(s_ab, a), renyi(s_a, a)
            good &= left - log_rank_b - 1e-8 <= joint <= left + log_rank_b + 1e-8
        ok += good
    return ok, count


def check_communication_step(rng, count=100):
    ok = 0
    for _ in range(count):
        da, db = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        n = int(rng.integers(0, 3))
        dc = 2**n
        psi = rng.standard_normal(da * dc * db)
        psi /= np.linalg.norm(psi)
        rho_acb = np.outer(psi, psi)
        rho_ac = linalg.partial_trace_b(rho_acb, da * dc, db)
        rho_a = linalg.partial_trace_b(rho_ac, da, dc)
        s_ac, s_a = spectra.spectrum_of(rho_ac), spectra.spectrum_of(rho_a)
        ok += all(abs(renyi(s_ac, a) - renyi(s_a, a)) <= n + 1e-8 for a in SPECTRUM_ALPHAS)
    return ok, count


def check_holder_floor(rng, count=200):
    ok = 0
    for _ in range(count):
        n = int(rng.integers(1, 7))
        rho = linalg.random_density(n, _seed(rng))
        sigma = linalg.random_density(n, _seed(rng))
        f = linalg.fidelity(rho, sigma)
        s_rho, s_sigma = spectra.spectrum_of(rho), spectra.spectrum_of(sigma)
        ok += all(
            renyi(s_rho, a) >= bounds.holder_entropy_floor(s_sigma, a, 1 - f) - 1e-8
            for a in HOLDER_ALPHAS
        )
    return ok, count


def _coarsen(p: Spectrum, rng) -> Spectrum:
    # merging entries yields a vector that majorizes the original
    v = rng.permutation(p.probs)
    cuts = np.unique(rng.integers(1, len(v), size=len(v) // 2)) if len(v) > 1 else []
    return Spectrum([part.sum() for part in np.split(v, cuts)])


def check_majorization_step(rng, count=200):
    ok = 0
    for i in range(count):
        q = random_spectrum(rng, 6)
        k = int(rng.integers(1, 5))
        lifted = spectra.tensor(q, spectra.uniform(k))
        p = _coarsen(lifted, rng) if i % 2 == 0 else random_spectrum(rng, 12)
        exceeded = bounds.exact_transform_bound(q, p).value_bits > math.log2(k) + 1e-9
        ok += not (exceeded and spectra.majorizes(p, lifted))
    return ok, count


def check_eps_monotone(rng, count=30):
    ok = 0
    for _ in range(count):
        phi, psi = random_spectrum(rng, 6), random_spectrum(rng, 6)
        eps = np.sort(rng.uniform(0, 0.49, size=4))
        runs = [
            [bounds.state_approx_bound(phi, psi, e).value_bits for e in eps],
            [bounds.function_bound_uniform(psi, e).value_bits for e in eps],
            [bounds.ip_bounds_closed(4, e).value_bits for e in eps],
            [bounds.qchar_bound_closed(7, e).value_bits for e in eps],
        ]
        ok += all(all(r[i] >= r[i + 1] - 1e-12 for i in range(len(r) - 1)) for r in runs)
    return ok, count


def shift_sum(table: np.ndarray, r: int, s: int) -> int:
    q = len(table)
    return sum(int(table[(x + r) % q]) * int(table[(x + s) % q]) for x in range(q))


def check_shift_property(rng, count=100):
    ok = total = 0
    for q, pairs in (
        (7, list(itertools.product(range(7), repeat=2))),
        (101, [tuple(int(v) for v in rng.integers(0, 101, size=2)) for _ in range(count)]),
    ):
        table = np.array([rectangles.legendre(x, q) for x in range(q)])
        for r, s in pairs:
            expected = q - 1 if r == s else -1
            ok += shift_sum(table, r, s) == expected
            total += 1
    return ok, total


def check_marginal_spectra_agree(rng, count=50):
    ok = 0
    for _ in range(count):
        rows, cols = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        r = rectangles.Rectangle(rng.choice([-1, 1], size=(rows, cols)))
        amp = r.entries.astype(float)
        sx = rectangles.function_spectrum(r)
        sy = spectra.spectrum_of(amp.T @ amp / amp.size)
        k = min(rows, cols)
        ok += (
            np.max(np.abs(sx.padded(k)[:k] - sy.padded(k)[:k])) <= 1e-8
            and abs(sx.probs.sum() - 1) <= 1e-9
        )
    return ok, count


def check_qchar_closed_forms(rng, primes=(3, 5, 7, 11, 13)):
    ok = 0
    for q in primes:
        pair = rectangles.marginals(rectangles.qchar_rectangle(q))
        eye, ones = np.eye(q), np.ones((q, q))
        norm = q * (q - 1)
        ok += (
            np.max(np.abs(pair.phi_a - (eye + (q - 2) * ones) / norm)) <= 1e-12
            and np.max(np.abs(pair.psi_a - (q * eye - ones) / norm)) <= 1e-12
            and abs(np.trace(pair.phi_a) - 1) <= 1e-9
            and abs(np.trace(pair.psi_a) - 1) <= 1e-9
        )
    return ok, len(primes)


# -- embezzle --------------------------------------------------------------

EMBEZZLE_TARGETS = (
    ("uniform(2)", spectra.uniform(2)),
    ("uniform(4)", spectra.uniform(4)),
    ("(0.9,0.1)", Spectrum([0.9, 0.1])),
)


def check_embezzle_monotone(rng, max_power=16):
    ok = 0
    for _, target in EMBEZZLE_TARGETS:
        f = [embezzle.embezzle_fidelity(2**k, target) for k in range(max_power + 1)]
        ok += all(f[i + 1] >= f[i] - 1e-12 for i in range(max_power))
    return ok, len(EMBEZZLE_TARGETS)


def check_embezzle_convergence(rng, threshold=0.999):
    ok = 0
    best = []
    for label, target in EMBEZZLE_TARGETS:
        try:
            embezzle.min_embezzle_dim(target, 1 - threshold)
            ok += 1
        except embezzle.EmbezzleCapError as exc:
            best.append(f"{label} best {exc.best.fidelity:.6f} at d={exc.best.d}")
    return ok, len(EMBEZZLE_TARGETS), "; ".join(best)


def check_embezzle_entropy(rng, powers=range(0, 13)):
    ok = 0
    for k in powers:
        m = embezzle.m_spectrum(2**k)
        ok += all(
            math.isfinite(renyi(m, a)) and renyi(m, a) <= k + 1e-9 for a in SPECTRUM_ALPHAS
        )
    return ok, len(powers)


REGISTRY: dict[str, list[tuple[str, Callable]]] = {
    "spectra": [
        ("entropy range", check_entropy_range),
        ("order monotonicity", check_order_monotone),
        ("additivity", check_additivity),
        ("schur concavity", check_schur_concavity),
        ("continuity at exceptional orders", check_continuity),
        ("pure-state minimality", check_minimality),
        ("uniform maximality", check_maximality),
        ("eps-rank brute force", check_eps_rank),
    ],
    "linalg": [
        ("eigh reconstruction", check_reconstruction),
        ("psd sqrt", check_psd_sqrt),
        ("fidelity symmetry and identity", check_fidelity_basics),
        ("fidelity monotone under partial trace", check_fidelity_monotone),
        ("eigenbasis measurement bound", check_measurement_bound),
        ("pinch preserves marginal spectrum", check_pinch_marginal),
        ("pinch raises entropy", check_pinch_schur),
        ("schmidt symmetry", check_schmidt_symmetry),
    ],
    "bounds": [
        ("weak subadditivity", check_weak_subadditivity),
        ("communication step", check_communication_step),
        ("holder floor soundness", check_holder_floor),
        ("majorization step", check_majorization_step),
        ("monotone in eps", check_eps_monotone),
        ("shift property", check_shift_property),
        ("row/column spectra agree", check_marginal_spectra_agree),
        ("qchar marginal closed forms", check_qchar_closed_forms),
    ],
    "embezzle": [
        ("fidelity monotone in d", check_embezzle_monotone),
        ("fidelity reaches 0.999 by d=2^20", check_embezzle_convergence),
        ("M(d) entropy within log d", check_embezzle_entropy),
    ],
}


def run_suite(suite: str, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    names: Iterable[str] = SUITES if suite == "all" else (suite,)
    results = []
    for s in names:
        if s not in REGISTRY:
            raise KeyError(s)
        for name, check in REGISTRY[s]:
            out = check(rng_for(seed, f"{s}/{name}"))
            passed, total, *detail = out
            results.append(CheckResult(s, name, int(passed), int(total), detail[0] if detail else ""))
    return results
