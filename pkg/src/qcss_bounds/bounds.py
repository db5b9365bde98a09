"""Lower bounds on the squared aperiodic tolerance of a QCSS.

Every bound is reported on the delta_max^2 scale as a :class:`BoundResult`
carrying its formula kind, the parameters, any family parameter and a
validity flag.  Formulas whose preconditions fail still return a value
(``valid=False``) so sweeps can show where validity toggles.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .circulant import QcssParams, lambda0_lambda1, quadratic_form_freq, sum_squares_freq
from .weights import chebyshev_default_m, validate_simplex

__all__ = [
    "BoundKind",
    "BoundResult",
    "TightnessReport",
    "PI2_OVER_4",
    "welch_bound",
    "k_bar",
    "k_bar_split",
    "k_bar_asymptotic",
    "ambiguous_zone",
    "glb",
    "glb_simplified",
    "glb_step",
    "glb_step_best",
    "step_tightness_condition",
    "glb_cosine_exact",
    "glb_cosine_asymptotic",
    "sine_q0",
    "glb_sine",
    "glb_sine_best",
    "f_r",
    "L_r",
    "min_L",
    "argmin_L",
    "glb_sine_asymptotic",
    "glb_chebyshev",
    "chebyshev_threshold",
    "d1",
    "d2",
    "d3",
    "tightness_report",
    "theorem2_set",
    "theorem3_set",
]

PI2_OVER_4 = math.pi ** 2 / 4


class BoundKind(str, enum.Enum):
    WELCH = "welch"
    GLB_GENERAL = "glb_general"
    GLB_SIMPLIFIED = "glb_simplified"
    GLB_STEP = "glb_step"
    GLB_COSINE_EXACT = "glb_cosine_exact"
    GLB_COSINE_ASYMPTOTIC = "glb_cosine_asymptotic"
    GLB_SINE = "glb_sine"
    GLB_SINE_ASYMPTOTIC = "glb_sine_asymptotic"
    GLB_CHEBYSHEV = "glb_chebyshev"

    @property
    def asymptotic(self) -> bool:
        return self.value.endswith("_asymptotic")


@dataclass(frozen=True)
class BoundResult:
    value: float
    kind: BoundKind
    params: QcssParams
    family_param: dict = field(default_factory=dict)
    valid: bool = True
    validity_notes: str = ""

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"{self.kind.value}: bound value is not finite ({self.value})")

    @property
    def rigorous(self) -> bool:
        """Valid and a finite-N theorem (asymptotic forms are approximations)."""
        return self.valid and not self.kind.asymptotic

    def ratio_to(self, other: "BoundResult") -> float:
        return self.value / other.value

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "K": self.params.K,
            "M": self.params.M,
            "N": self.params.N,
            "family_param": dict(self.family_param),
            "valid": self.valid,
            "validity_notes": self.validity_notes,
        }


# --------------------------------------------------------------------------
# Welch bound and the K-bar threshold


def welch_bound(params: QcssParams) -> BoundResult:
    """``M^2 N^2 (K/M - 1) / (K(2N-1) - 1)``; negative (vacuous) when K < M."""
    K, M, N = params.K, params.M, params.N
    value = M * N * N * (K - M) / (K * (2 * N - 1) - 1)
    notes = "vacuous (K < M)" if K < M else ""
    return BoundResult(value, BoundKind.WELCH, params, validity_notes=notes)


def k_bar_split(M: int, N: int) -> tuple[int, float]:
    """Integer part and fractional part of ``4(MN-1)N sin^2(pi/(2(2N-1)))``."""
    if M < 2 or N < 2:
        raise ValueError(f"need M >= 2 and N >= 2, got M={M}, N={N}")
    x = 4 * (M * N - 1) * N * math.sin(math.pi / (2 * (2 * N - 1))) ** 2
    n = math.floor(x)
    return n, x - n


def k_bar(M: int, N: int) -> int:
    """Largest K for which no weight vector beats the Welch bound."""
    return k_bar_split(M, N)[0]


def k_bar_asymptotic(M: int) -> int:
    """Limit of K-bar as N grows: ``floor(pi^2 M / 4)``."""
    return math.floor(PI2_OVER_4 * M)


def ambiguous_zone(M: int, N: int | None = None) -> tuple[float, float]:
    """Open K/M interval where step weights give no verdict.

    ``N=None`` uses the large-N limit of K-bar.
    """
    kb = k_bar_asymptotic(M) if N is None else k_bar(M, N)
    return kb / M, 3 + 1 / M


# --------------------------------------------------------------------------
# general functional


def _checked_weight(params: QcssParams, w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or w.size != params.length:
        raise ValueError(f"weight vector must have length 2N-1 = {params.length}, got shape {w.shape}")
    check = validate_simplex(w)
    if not check:
        raise ValueError(f"weight vector is not on the simplex: {check.message}")
    return w


def glb(params: QcssParams, w, family_param: dict | None = None) -> BoundResult:
    """``M [N - Q(w, a) / (1 - sum(w^2)/K)]`` evaluated in the frequency domain."""
    w = _checked_weight(params, w)
    ssq = sum_squares_freq(w)
    denom = 1.0 - ssq / params.K
    if denom <= 0:
        raise ValueError(f"1 - sum(w^2)/K = {denom:.3e} is not positive")
    quad = quadratic_form_freq(w, params)
    value = params.M * (params.N - quad / denom)
    return BoundResult(value, BoundKind.GLB_GENERAL, params, dict(family_param or {}))


def glb_simplified(params: QcssParams, w, family_param: dict | None = None) -> BoundResult:
    """Weaker form ``M [N - Q(w, M N^2 / K)]``."""
    w = _checked_weight(params, w)
    M, N, K = params.M, params.N, params.K
    quad = quadratic_form_freq(w, params, a=M * N * N / K)
    return BoundResult(M * (N - quad), BoundKind.GLB_SIMPLIFIED, params, dict(family_param or {}))


# --------------------------------------------------------------------------
# step weights


def step_tightness_condition(K: int, M: int, N: int) -> int | None:
    """Which sufficient condition (1 or 2) for the step bound to beat Welch holds."""
    if M < 2 or N < 2:
        return None
    if K >= 4 * M:
        return 2
    if 3 * M + 1 <= K <= 4 * M - 1:
        disc = -3 * K * K + (12 * M - 6) * K + 12 * M + 1
        threshold = math.floor((K - 1 + math.sqrt(disc)) / (2 * (K - 3 * M))) + 1
        if N >= threshold:
            return 1
    return None


def _step_values(params: QcssParams, m: np.ndarray) -> np.ndarray:
    K, M, N = params.K, params.M, params.N
    m = np.asarray(m, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (3 * M * N * K * m - 3 * M * M * N * N - M * K * (m * m - 1)) / (3 * (m * K - 1))


def _step_result(params: QcssParams, m: int, value: float, best: bool) -> BoundResult:
    cond = step_tightness_condition(params.K, params.M, params.N)
    notes = f"beats Welch by condition ({cond})" if cond else "no sufficient condition for beating Welch"
    if best:
        notes = f"best m over [1, N]; {notes}"
    return BoundResult(value, BoundKind.GLB_STEP, params, {"m": int(m)}, True, notes)


def glb_step(params: QcssParams, m: int) -> BoundResult:
    """Closed form of the GLB under step weights of width ``m``."""
    if not 1 <= m <= params.N:
        raise ValueError(f"step bound needs 1 <= m <= N={params.N}, got m={m}")
    if m * params.K <= 1:
        return BoundResult(0.0, BoundKind.GLB_STEP, params, {"m": int(m)}, False, "mK = 1: denominator vanishes")
    return _step_result(params, m, float(_step_values(params, [m])[0]), best=False)


def glb_step_best(params: QcssParams) -> BoundResult:
    """Maximum of :func:`glb_step` over ``1 <= m <= N`` (smallest argmax)."""
    m = np.arange(1, params.N + 1)
    values = _step_values(params, m)
    values[m * params.K <= 1] = -np.inf
    i = int(np.argmax(values))
    return _step_result(params, int(m[i]), float(values[i]), best=True)


# --------------------------------------------------------------------------
# weight vector 1 (cosine)


def _cosine_conditions(params: QcssParams) -> tuple[bool, bool, float, float]:
    lam0, lam1 = lambda0_lambda1(params)
    cond_k = params.K >= k_bar(params.M, params.N) + 1
    cond_ratio = lam1 != 0 and lam0 / abs(lam1) < params.length * params.K - 1
    return cond_k, cond_ratio, lam0, lam1


def glb_cosine_exact(params: QcssParams) -> BoundResult:
    """GLB of the cosine weight vector through ``lambda_0`` and ``lambda_1`` only.

    Uses the signed ``lambda_1``: this is the GLB functional of the cosine
    weight for every parameter set, and equals the ``|lambda_1|`` form on
    the region where the preconditions hold.
    """
    cond_k, cond_ratio, lam0, lam1 = _cosine_conditions(params)
    L, K = params.length, params.K
    c2 = 2.0 * math.cos(math.pi / L) ** 2
    value = params.M * (params.N - K * (lam0 + lam1 / c2) / (L * K - 1 - 1 / c2))
    notes = []
    if not cond_k:
        notes.append(f"K={K} <= K-bar={k_bar(params.M, params.N)}")
    if not cond_ratio:
        notes.append("lambda0/|lambda1| >= (2N-1)K - 1")
    return BoundResult(value, BoundKind.GLB_COSINE_EXACT, params, {"j": 0},
                       cond_k and cond_ratio, "; ".join(notes))


def glb_cosine_asymptotic(params: QcssParams) -> BoundResult:
    """Large-N form ``MN[(1/2 + 1/pi^2) - 3M/(4K)]``."""
    M, N, K = params.M, params.N, params.K
    value = M * N * ((0.5 + 1 / math.pi ** 2) - 3 * M / (4 * K))
    return BoundResult(value, BoundKind.GLB_COSINE_ASYMPTOTIC, params, {"j": 0}, True,
                       "large-N approximation")


# --------------------------------------------------------------------------
# weight vector 2 (sine)


def sine_q0(N: int, m):
    """``Q(w, 0)`` for the sine weight of width ``m``; vectorized over ``m``."""
    m_arr = np.asarray(m, dtype=float)
    t = np.tan(np.pi / (2 * m_arr))
    short = m_arr / 4 * (1 - t * t)
    with np.errstate(divide="ignore", invalid="ignore"):
        long_ = (-(3 * m_arr - 4 * N + 2) / 4
                 - m_arr / 4 * t * t
                 + (m_arr - N - 1) / 2 * np.cos(N * np.pi / m_arr)
                 + ((2 * m_arr - 2 * N + 1) / 4 * t + 3 / (4 * t)) * np.sin(N * np.pi / m_arr))
    out = np.where(m_arr <= N, short, long_)
    return float(out) if np.ndim(out) == 0 else out


# 2K - m tan^2(pi/2m) vanishes exactly at K=1, m=2, where tan(pi/4) rounds below 1
_SINE_DENOM_RTOL = 1e-12


def _sine_values(params: QcssParams, m: np.ndarray):
    K, M, N = params.K, params.M, params.N
    m = np.asarray(m, dtype=float)
    mt2 = m * np.tan(np.pi / (2 * m)) ** 2
    denom = 2 * K - mt2
    with np.errstate(divide="ignore", invalid="ignore"):
        values = M * (N - (N * (M * N - 1) * mt2 + 2 * K * sine_q0(N, m)) / denom)
    return values, denom


def glb_sine(params: QcssParams, m: int) -> BoundResult:
    """GLB of the positive-cycle-of-sine weight of width ``m``."""
    if not 2 <= m <= params.length:
        raise ValueError(f"sine bound needs 2 <= m <= 2N-1={params.length}, got m={m}")
    values, denom = _sine_values(params, np.array([m]))
    valid = bool(denom[0] > _SINE_DENOM_RTOL * 2 * params.K)
    value = float(values[0])
    if not math.isfinite(value):
        value = 0.0
    notes = "" if valid else "2K - m tan^2(pi/2m) <= 0"
    return BoundResult(value, BoundKind.GLB_SINE, params, {"m": int(m)}, valid, notes)


def glb_sine_best(params: QcssParams) -> BoundResult:
    """Maximum of :func:`glb_sine` over every ``m`` in ``[2, 2N-1]``."""
    m = np.arange(2, params.length + 1)
    values, denom = _sine_values(params, m)
    ok = denom > _SINE_DENOM_RTOL * 2 * params.K
    if not np.any(ok):
        return BoundResult(0.0, BoundKind.GLB_SINE, params, {}, False, "no m with positive denominator")
    values = np.where(ok, values, -np.inf)
    i = int(np.argmax(values))
    return BoundResult(float(values[i]), BoundKind.GLB_SINE, params, {"m": int(m[i])}, True,
                       "best m over [2, 2N-1]")


def f_r(r):
    """Large-N limit of ``Q(w,0)/N`` for sine weights of width ``m ~ rN``."""
    r_arr = np.asarray(r, dtype=float)
    if np.any((r_arr <= 0) | (r_arr >= 2)):
        raise ValueError("f_r is defined for 0 < r < 2")
    with np.errstate(divide="ignore", invalid="ignore"):
        upper = ((4 - 3 * r_arr) / 4 + (r_arr - 1) / 2 * np.cos(np.pi / r_arr)
                 + 3 * r_arr / (2 * np.pi) * np.sin(np.pi / r_arr))
    out = np.where(r_arr <= 1, r_arr / 4, upper)
    return float(out) if np.ndim(out) == 0 else out


def L_r(r):
    """K/M threshold above which sine weights with ``m ~ rN`` beat Welch."""
    r_arr = np.asarray(r, dtype=float)
    if np.any((r_arr <= 0) | (r_arr >= 2)):
        raise ValueError("L_r is defined for 0 < r < 2")
    num = np.pi ** 2 - 4 * r_arr
    with np.errstate(divide="ignore", invalid="ignore"):
        lower = num / (4 * r_arr - 2 * r_arr ** 2)
        upper = num / (2 * r_arr * (3 * r_arr - 2)
                       - 4 * r_arr * (r_arr - 1) * np.cos(np.pi / r_arr)
                       - 12 * r_arr ** 2 / np.pi * np.sin(np.pi / r_arr))
    out = np.where(r_arr <= 1, lower, upper)
    return float(out) if np.ndim(out) == 0 else out


def _grid_golden_min(func, lo: float, hi: float, points: int = 10_000, xtol: float = 1e-10):
    """Minimize on the open interval (lo, hi): dense grid, then golden section."""
    grid = np.linspace(lo, hi, points + 2)[1:-1]
    values = func(grid)
    i = int(np.argmin(values))
    if 0 < i < len(grid) - 1:
        bracket = (grid[i - 1], grid[i], grid[i + 1])
        res = minimize_scalar(lambda x: float(func(x)), bracket=bracket, method="golden",
                              options={"xtol": xtol / max(abs(grid[i]), 1.0)})
        if res.fun <= values[i]:
            return float(res.x), float(res.fun)
    return float(grid[i]), float(values[i])


@functools.lru_cache(maxsize=None)
def _min_L() -> tuple[float, float]:
    return _grid_golden_min(L_r, 0.0, 2.0)


def min_L() -> float:
    """``min_{0<r<2} L(r)``, about 2.483257."""
    return _min_L()[1]


def argmin_L() -> float:
    return _min_L()[0]


def glb_sine_asymptotic(params: QcssParams) -> BoundResult:
    """Large-N form ``MN [1 - min_r (M pi^2/(8 K r) + f(r))]``."""
    M, N, K = params.M, params.N, params.K
    r_star, best = _grid_golden_min(lambda r: M * math.pi ** 2 / (8 * K * r) + f_r(r), 0.0, 2.0)
    return BoundResult(M * N * (1 - best), BoundKind.GLB_SINE_ASYMPTOTIC, params, {"r": r_star}, True,
                       "large-N approximation")


# --------------------------------------------------------------------------
# weight vector 3 (chebyshev)


def glb_chebyshev(params: QcssParams) -> BoundResult:
    """``M (N - ceil(pi N / sqrt(8K/M)))`` for ``K <= M N^2``."""
    K, M, N = params.K, params.M, params.N
    value = M * (N - math.ceil(math.pi * N / math.sqrt(8 * K / M)))
    if K > M * N * N:
        return BoundResult(float(value), BoundKind.GLB_CHEBYSHEV, params, {}, False, "K > M N^2")
    m = chebyshev_default_m(params)
    return BoundResult(float(value), BoundKind.GLB_CHEBYSHEV, params, {"m": m}, True,
                       "weight m = floor(pi/phi)+1, lowered to even")


def chebyshev_threshold() -> float:
    """K/M above which the chebyshev bound is asymptotically tighter than Welch."""
    return PI2_OVER_4 - 1 + math.sqrt((math.pi ** 2 / 8 - 1) * math.pi ** 2 / 2)


# --------------------------------------------------------------------------
# tightness regions over M


def _kbar_inf_plus_one_over_m(M):
    M = np.asarray(M)
    return (np.floor(PI2_OVER_4 * M) + 1) / M


def d1(M):
    """Margin by which K = floor(pi^2 M/4)+1 clears the cosine threshold pi^2/4."""
    out = _kbar_inf_plus_one_over_m(M) - PI2_OVER_4
    return float(out) if np.ndim(out) == 0 else out


def d2(M):
    out = _kbar_inf_plus_one_over_m(M) - min_L()
    return float(out) if np.ndim(out) == 0 else out


def d3(M):
    out = _kbar_inf_plus_one_over_m(M) - chebyshev_threshold()
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TightnessReport:
    M: int
    k_bar_inf: int
    d1: float
    d2: float
    d3: float
    cosine_tighter: bool
    sine_tighter: bool
    chebyshev_tighter: bool


def tightness_report(M: int) -> TightnessReport:
    if M < 2:
        raise ValueError(f"M must be >= 2, got {M}")
    a, b, c = d1(M), d2(M), d3(M)
    return TightnessReport(M, k_bar_asymptotic(M), a, b, c, a > 0, b > 0, c > 0)


def theorem2_set(M_max: int = 1000) -> list[int]:
    """Every M in [2, M_max] where sine weights asymptotically beat Welch."""
    M = np.arange(2, M_max + 1)
    return [int(x) for x in M[d2(M) > 0]]


def theorem3_set(M_max: int = 1000) -> list[int]:
    M = np.arange(2, M_max + 1)
    return [int(x) for x in M[d3(M) > 0]]
