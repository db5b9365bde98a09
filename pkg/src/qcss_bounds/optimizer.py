"""Frequency-domain optimization of the GLB and a local-minimality probe.

Restricting the weight spectrum to ``v_0 = 1`` and a single pair
``v_1 = conj(v_{2N-2}) = r e^{i theta}`` reduces the GLB to a ratio that is
monotone in ``r^2``.  :func:`solve_problem1` picks the end of the feasible
range accordingly.  :func:`local_min_check` then samples feasible
perturbations around the cosine weight and measures ``f(w+e) - f(w)``
through two independent routes.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bounds import BoundResult, glb, glb_cosine_exact, k_bar, welch_bound
from .circulant import (
    DENSE_MAX_N,
    ConsistencyError,
    QcssParams,
    circulant_matrix,
    dft,
    lambda0_lambda1,
    quadratic_form_freq,
    spectrum_closed_form,
    sum_squares_freq,
)
from .weights import cosine_weights, uniform_weights

__all__ = [
    "CaseLabel",
    "GammaTerms",
    "PerturbationReport",
    "classify_case",
    "optimal_r",
    "solve_problem1",
    "fqp_objective",
    "gamma_decomposition",
    "cosine_case_ab",
    "local_min_check",
]

CASE1 = "Case1_decreasing"
CASE2 = "Case2_increasing"


@dataclass(frozen=True)
class CaseLabel:
    label: str
    lambda0: float
    lambda1: float
    k_bar: int
    k_condition: bool
    ratio_condition_holds: bool
    finite_n_condition: bool

    @property
    def is_case1(self) -> bool:
        return self.label == CASE1


def classify_case(params: QcssParams) -> CaseLabel:
    """Decide whether the reduced GLB ratio decreases or increases in ``r^2``."""
    K, M, N = params.K, params.M, params.N
    L = params.length
    lam0, lam1 = lambda0_lambda1(params)
    kb = k_bar(M, N)
    k_cond = K >= kb + 1
    ratio = lam1 < 0 and lam0 / abs(lam1) < L * K - 1
    s2 = math.sin(math.pi / (2 * L)) ** 2
    finite_n = K > 4 * (M * N - 1) * N * s2 + (4 * N * (N - 1) * s2 + 1) / L
    label = CASE1 if (k_cond and ratio) else CASE2
    return CaseLabel(label, lam0, lam1, kb, k_cond, ratio, finite_n)


def optimal_r(params: QcssParams) -> float:
    """Magnitude of ``v_1`` minimizing the reduced ratio."""
    if classify_case(params).is_case1:
        return 1.0 / (2.0 * math.cos(math.pi / params.length))
    return 0.0


def solve_problem1(params: QcssParams, check: bool = True) -> tuple[np.ndarray, BoundResult]:
    """Optimal single-frequency weight and its bound.

    Case 1 gives the cosine weight with the exact cosine GLB, Case 2 the
    uniform weight with the Welch bound.  With ``check`` the general GLB
    functional of the returned weight is compared against the bound.
    """
    if classify_case(params).is_case1:
        w, bound = cosine_weights(params.N, 0), glb_cosine_exact(params)
    else:
        w, bound = uniform_weights(params.N), welch_bound(params)
    if check:
        other = glb(params, w).value
        # M(N - Q) cancels near zero; roundoff there scales with MN
        scale = max(abs(bound.value), params.M * params.N)
        if abs(other - bound.value) > 1e-10 * scale:
            raise ConsistencyError(
                f"weight GLB {other!r} disagrees with closed form {bound.value!r} for {params}"
            )
    return w, bound


def fqp_objective(params: QcssParams, x) -> float:
    """``f(x) = x^T Q_a x / (1 - x^T x / K)``, so that ``GLB = M (N - f(x))``."""
    x = np.asarray(x, dtype=float)
    return quadratic_form_freq(x, params) / (1.0 - sum_squares_freq(x) / params.K)


# --------------------------------------------------------------------------
# alpha / beta / gamma decomposition


@dataclass(frozen=True)
class GammaTerms:
    alpha: float
    beta: float
    gamma: float
    lhs: float
    lhs_direct: float | None
    scale: float

    @property
    def rel_err(self) -> float | None:
        if self.lhs_direct is None:
            return None
        return abs(self.lhs - self.lhs_direct) / self.scale if self.scale > 0 else abs(self.lhs - self.lhs_direct)


def _abg(K, wQw, ww, wQe, eQe, we, ee):
    alpha = wQw * ee - ww * eQe
    beta = wQw * we - ww * wQe
    gamma = (alpha + 2 * beta) / K
    lhs = 2 * wQe + eQe + gamma
    scale = (np.abs(2 * wQe) + np.abs(eQe)
             + (np.abs(wQw * ee) + np.abs(ww * eQe) + 2 * np.abs(wQw * we) + 2 * np.abs(ww * wQe)) / K)
    return alpha, beta, gamma, lhs, scale


def _direct_lhs(K, P, ww, wQe, eQe, we, ee):
    # numerator of f(w+e) - f(w) over D(w) D(w+e), expanded without cancellation
    D0 = 1.0 - ww / K
    return (2 * wQe + eQe) * D0 + P * (2 * we + ee) / K


def gamma_decomposition(params: QcssParams, w, e) -> GammaTerms:
    """``alpha``, ``beta``, ``gamma`` and ``2 w^T Q e + e^T Q e + gamma``.

    The terms come from the spectra of ``w`` and ``e``.  For ``N <= 512`` the
    same left side is also computed from the dense matrix in the time
    domain as ``(f(w+e) - f(w)) D(w) D(w+e)``; ``rel_err`` compares the two.
    """
    w = np.asarray(w, dtype=float)
    e = np.asarray(e, dtype=float)
    L, K = params.length, params.K
    if w.shape != (L,) or e.shape != (L,):
        raise ValueError(f"w and e must both have length {L}")
    if abs(math.fsum(e)) > 1e-12 * max(1.0, float(np.max(np.abs(e)))):
        raise ValueError("perturbation must sum to zero")
    lam = spectrum_closed_form(params).lambdas
    v, E = dft(w), dft(e)
    wQw = float(lam @ np.abs(v) ** 2) / L
    ww = float(np.sum(np.abs(v) ** 2)) / L
    wQe = float(np.real(np.sum(lam * v * np.conj(E)))) / L
    eQe = float(lam @ np.abs(E) ** 2) / L
    we = float(np.real(np.sum(v * np.conj(E)))) / L
    ee = float(np.sum(np.abs(E) ** 2)) / L
    alpha, beta, gamma, lhs, scale = _abg(K, wQw, ww, wQe, eQe, we, ee)
    direct = None
    if params.N <= DENSE_MAX_N:
        Q = circulant_matrix(params)
        Qw = Q @ w
        direct = float(_direct_lhs(K, float(w @ Qw), float(w @ w), float(Qw @ e),
                                   float(e @ Q @ e), float(w @ e), float(e @ e)))
    return GammaTerms(float(alpha), float(beta), float(gamma), float(lhs), direct, float(scale))


def cosine_case_ab(params: QcssParams, E, printed: bool = False) -> tuple[float, float]:
    """``A`` and ``B`` with ``(2N-1) * lhs = lambda_1 A + B`` around the cosine weight.

    ``E`` is the full DFT of the perturbation (length 2N-1); only
    ``E_1..E_{N-1}`` are read.  Expanding ``alpha`` from the spectral
    identities gives ``(lambda_0 - lambda_i) + (lambda_1 - lambda_i)/(2c^2)``
    per bin, so the ``i >= 2`` coefficient in ``B`` is
    ``2 lambda_0 - 2 lambda_i - lambda_i/c^2``.  ``printed=True`` uses
    ``lambda_0 - lambda_i - lambda_i/c^2`` instead, which does not close
    the identity.
    """
    E = np.asarray(E)
    N, K, L = params.N, params.K, params.length
    lam = spectrum_closed_form(params).lambdas
    lam0 = lam[0]
    lam_hi = lam[2:N]
    c = math.cos(math.pi / L)
    E1 = E[1]
    rest = np.abs(E[2:N]) ** 2
    kl = 1.0 / (K * L)
    re2 = 2 * E1.real / c  # (E1 + E1*) / cos
    A = 2 * (1 - kl) * abs(E1) ** 2 + (1 - kl) * re2 + kl * np.sum(rest) / c ** 2
    xi = 2 * np.sum(lam_hi * rest)
    coef = (lam0 - lam_hi if printed else 2 * (lam0 - lam_hi)) - lam_hi / c ** 2
    B = xi + kl * (2 * lam0 * abs(E1) ** 2 + np.sum(coef * rest) + lam0 * re2)
    return float(A), float(B)


# --------------------------------------------------------------------------
# perturbation sampling around the cosine weight


@dataclass
class _ClassStats:
    trials: int = 0
    resampled: int = 0
    min_difference: float = math.inf
    min_rel_difference: float = math.inf
    max_decomp_rel_err: float = 0.0
    min_norm: float = math.inf
    max_norm: float = 0.0
    case1_structure: int = 0
    case2_structure: int = 0

    def update(self, diff, rel, err, norms, case1):
        self.trials += len(diff)
        self.min_difference = min(self.min_difference, float(np.min(diff)))
        self.min_rel_difference = min(self.min_rel_difference, float(np.min(rel)))
        self.max_decomp_rel_err = max(self.max_decomp_rel_err, float(np.max(err)))
        self.min_norm = min(self.min_norm, float(np.min(norms)))
        self.max_norm = max(self.max_norm, float(np.max(norms)))
        self.case1_structure += int(np.sum(case1))
        self.case2_structure += int(np.sum(~case1))


@dataclass
class PerturbationReport:
    K: int
    M: int
    N: int
    trials: int
    norm_cap: float
    seed: int
    f_w: float
    max_violation: float
    max_violation_rel: float
    max_decomp_rel_err: float
    min_norm: float
    max_norm: float
    resampled: int
    breakdown: dict = field(default_factory=dict)
    notes: str = ""

    def passed(self, rel_tol: float = 1e-10, decomp_tol: float = 1e-9) -> bool:
        return self.max_violation_rel >= -rel_tol and self.max_decomp_rel_err <= decomp_tol

    def to_dict(self) -> dict:
        return {
            "params": {"K": self.K, "M": self.M, "N": self.N},
            "trials": self.trials,
            "norm_cap": self.norm_cap,
            "seed": self.seed,
            "f_w": self.f_w,
            "max_violation": self.max_violation,
            "max_violation_rel": self.max_violation_rel,
            "max_decomp_rel_err": self.max_decomp_rel_err,
            "min_norm": self.min_norm,
            "max_norm": self.max_norm,
            "resampled": self.resampled,
            "breakdown": self.breakdown,
            "notes": self.notes,
        }


_GENERATORS = ("unstructured", "case1", "case2")
_MIN_SHRINK = 1e-3
_CHUNK = 1000


class _Sampler:
    """Feasible zero-sum perturbations of the cosine weight ``w``."""

    def __init__(self, params: QcssParams, w: np.ndarray, norm_cap: float, rng):
        self.params = params
        self.w = w
        self.norm_cap = norm_cap
        self.rng = rng
        self.L = params.length
        self.active = w <= 1e-15
        self.free = ~self.active
        self.c = math.cos(math.pi / self.L)

    def _fold(self, e):
        # active coordinates must not go negative; restore zero sum on the rest
        e[self.active] = np.abs(e[self.active])
        e[self.free] -= e.sum() / np.count_nonzero(self.free)
        return e

    def _target_norm(self):
        return self.norm_cap * (1.0 - self.rng.random())  # in (0, cap]

    def _shrink(self, e):
        neg = e < 0
        if not np.any(neg):
            return e, 1.0
        factor = min(1.0, float(np.min(self.w[neg] / -e[neg])))
        return e * factor, factor

    def draw(self, kind: str):
        """One feasible perturbation and the number of rejected draws."""
        rejected = 0
        while True:
            if kind == "unstructured":
                e = self._fold(self.rng.standard_normal(self.L))
                e *= self._target_norm() / np.linalg.norm(e)
            elif kind == "case1":
                e = self._fold(self._sparse_spectrum())
                e *= self._target_norm() / np.linalg.norm(e)
            else:
                e = self._case2()
            e, factor = self._shrink(e)
            if factor >= _MIN_SHRINK and np.all(self.w + e >= 0):
                return e, rejected
            rejected += 1

    def _sparse_spectrum(self):
        N, L = self.params.N, self.L
        if N < 3:
            # no frequencies above 1 exist; fall back to an unstructured draw
            return self.rng.standard_normal(L)
        k = int(self.rng.integers(1, min(6, N - 2) + 1))
        idx = self.rng.choice(np.arange(2, N), size=k, replace=False)
        E = np.zeros(L, dtype=complex)
        E[idx] = self.rng.standard_normal(k) + 1j * self.rng.standard_normal(k)
        if self.rng.random() < 0.5:
            E[1] = self.rng.standard_normal() + 1j * self.rng.standard_normal()
        E[L - np.arange(1, N)] = np.conj(E[1:N])
        return np.real(np.fft.ifft(E))

    def _case2(self):
        L = self.L
        lo = (0.5 + 1.0 / L) * math.pi
        hi = (1.5 - 1.0 / L) * math.pi
        psi = lo + (hi - lo) * self.rng.random()
        # ||e||^2 = (2/L)|E_1|^2 with |E_1| = t / (2 cos(pi/L))
        t_norm = self._target_norm() * math.sqrt(2 * L) * self.c
        t = min(t_norm, -2 * math.cos(psi) - 1e-9)
        i = np.arange(L)
        return t / (L * self.c) * np.cos(2 * np.pi * i / L + psi)


def local_min_check(params: QcssParams, trials: int = 10_000, norm_cap: float = 1e-4,
                    seed: int = 0) -> PerturbationReport:
    """Sample feasible perturbations ``e`` of the cosine weight and record ``f(w+e) - f(w)``.

    Trials rotate through three generators: unstructured zero-sum vectors,
    sparse spectra with some ``E_i != 0`` for ``i >= 2``, and pure ``E_1``
    perturbations with phase in the feasible band.  Every trial evaluates
    the difference twice: in the time domain from the dense ``Q_a`` and in
    the frequency domain from the spectral identities of the cosine
    weight.  This is a verifier, not a proof: it reports the most negative
    difference seen.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    if not norm_cap > 0:
        raise ValueError("norm_cap must be positive")
    if params.N > DENSE_MAX_N:
        raise ValueError(f"local_min_check needs the dense matrix; N must be <= {DENSE_MAX_N}")
    N, K, L = params.N, params.K, params.length
    notes = ""
    if K != k_bar(params.M, N) + 1:
        notes = f"K={K} differs from K-bar+1={k_bar(params.M, N) + 1}; local optimality is only claimed there"

    w = cosine_weights(N, 0)
    Q = circulant_matrix(params)
    Qw = Q @ w
    P = float(w @ Qw)
    ww_t = float(w @ w)
    f_w = P / (1.0 - ww_t / K)

    lam = spectrum_closed_form(params).lambdas
    c = math.cos(math.pi / L)
    wQw_f = (lam[0] + lam[1] / (2 * c * c)) / L
    ww_f = (1 + 1 / (2 * c * c)) / L

    rng = np.random.default_rng(seed)
    sampler = _Sampler(params, w, norm_cap, rng)
    stats = {g: _ClassStats() for g in _GENERATORS}

    counts = [trials // 3 + (1 if g < trials % 3 else 0) for g in range(3)]
    for gen, count in zip(_GENERATORS, counts):
        done = 0
        while done < count:
            size = min(_CHUNK, count - done)
            cols = []
            for _ in range(size):
                e, rejected = sampler.draw(gen)
                stats[gen].resampled += rejected
                cols.append(e)
            Eb = np.stack(cols, axis=1)  # L x size

            # time domain
            QE = Q @ Eb
            wQe_t = Qw @ Eb
            eQe_t = np.einsum("ij,ij->j", Eb, QE)
            we_t = w @ Eb
            ee_t = np.einsum("ij,ij->j", Eb, Eb)
            lhs_direct = _direct_lhs(K, P, ww_t, wQe_t, eQe_t, we_t, ee_t)
            D1 = 1.0 - (ww_t + 2 * we_t + ee_t) / K
            diff = lhs_direct / ((1.0 - ww_t / K) * D1)

            # frequency domain, cosine-weight identities
            F = np.fft.fft(Eb, axis=0)
            power = np.abs(F[1:N]) ** 2
            re1 = F[1].real
            wQe_f = lam[1] * re1 / (L * c)
            eQe_f = 2.0 / L * (lam[1:N] @ power)
            we_f = re1 / (L * c)
            ee_f = 2.0 / L * power.sum(axis=0)
            _, _, _, lhs_freq, scale = _abg(K, wQw_f, ww_f, wQe_f, eQe_f, we_f, ee_f)
            err = np.abs(lhs_freq - lhs_direct) / np.where(scale > 0, scale, 1.0)

            higher = np.max(np.abs(F[2:N]), axis=0) if N > 2 else np.zeros(size)
            case1 = higher > 1e-12 * np.maximum(np.abs(F[1]), 1e-300)
            stats[gen].update(diff, diff / f_w, err, np.sqrt(ee_t), case1)
            done += size

    breakdown = {g: asdict(s) for g, s in stats.items() if s.trials}
    active = [s for s in stats.values() if s.trials]
    max_violation = min(s.min_difference for s in active)
    return PerturbationReport(
        K=K, M=params.M, N=N, trials=trials, norm_cap=norm_cap, seed=seed, f_w=f_w,
        max_violation=max_violation,
        max_violation_rel=max_violation / f_w,
        max_decomp_rel_err=max(s.max_decomp_rel_err for s in active),
        min_norm=min(s.min_norm for s in active),
        max_norm=max(s.max_norm for s in active),
        resampled=sum(s.resampled for s in active),
        breakdown=breakdown,
        notes=notes,
    )
