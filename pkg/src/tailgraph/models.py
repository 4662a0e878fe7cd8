"""Tail models: power law plus the alternative distribution family.

Every model is a density p(x) = C f(x) normalized on [xmin, inf), in a
continuous formalism (integral normalization) or a discrete one (sum over
integers >= xmin).  Continuous forms:

    power law               f(x) = x**-alpha
    exponential             f(x) = exp(-lam*x)
    lognormal               f(x) = exp(-(ln x - mu)^2 / (2 sigma^2)) / x
    truncated power law     f(x) = x**-alpha * exp(-lam*x)
    stretched exponential   f(x) = x**(beta-1) * exp(-lam * x**beta)

Discrete normalizers use the Hurwitz zeta (power law), a geometric closed
form (exponential), or an explicit sum with an Euler-Maclaurin tail
correction (the rest).  Samplers invert the CDF; the discrete power law
uses an exact CDF table and falls back to the standard rounding
approximation x = floor((xmin - 0.5) u**(-1/(alpha-1)) + 0.5) beyond the
table (and everywhere when xmin >= 1000, where it is reliable).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtr, ndtri

from tailgraph.numerics import hurwitz_zeta, log_upper_gamma

DISCRETE = "discrete"
CONTINUOUS = "continuous"
FORMALISMS = (DISCRETE, CONTINUOUS)

# beyond this cutoff the discrete power-law sampler switches to the
# continuous rounding approximation
_TABLE_LEN = 1 << 14
_BIG_XMIN = 1000


class ModelKind(str, enum.Enum):
    POWER_LAW = "power_law"
    EXPONENTIAL = "exponential"
    LOGNORMAL = "lognormal"
    TRUNCATED_POWER_LAW = "truncated_power_law"
    STRETCHED_EXPONENTIAL = "stretched_exponential"


ALTERNATIVES = (
    ModelKind.EXPONENTIAL,
    ModelKind.LOGNORMAL,
    ModelKind.TRUNCATED_POWER_LAW,
    ModelKind.STRETCHED_EXPONENTIAL,
)


@dataclass(frozen=True)
class ModelParams:
    """Fitted parameters of one model; only the fields of ``kind`` are set.

    ``log_c`` is the log of the normalization constant C over [xmin, inf)
    for the formalism the model was fitted in.
    """

    kind: ModelKind
    formalism: str
    alpha: float | None = None
    lam: float | None = None
    mu: float | None = None
    sigma: float | None = None
    beta: float | None = None
    log_c: float | None = None

    @property
    def C(self) -> float:
        return float(np.exp(self.log_c))

    def to_dict(self) -> dict:
        c = self.C
        return {
            "kind": self.kind.value,
            "formalism": self.formalism,
            "alpha": self.alpha,
            "lambda": self.lam,
            "mu": self.mu,
            "sigma": self.sigma,
            "beta": self.beta,
            "C": c if np.isfinite(c) else None,
            "log_C": self.log_c,
        }


def _check_formalism(formalism: str) -> None:
    if formalism not in FORMALISMS:
        raise ValueError(f"formalism must be one of {FORMALISMS}")


def make_params(kind: ModelKind, formalism: str, xmin: float, **raw) -> ModelParams:
    """Attach the normalization constant for [xmin, inf) to raw parameters."""
    _check_formalism(formalism)
    log_c = -_log_mass(kind, formalism, xmin, raw)
    return ModelParams(kind=kind, formalism=formalism, log_c=float(log_c), **raw)


# ---- unnormalized log f ------------------------------------------------


def _log_f(kind: ModelKind, p: dict, x: np.ndarray) -> np.ndarray:
    if kind == ModelKind.POWER_LAW:
        return -p["alpha"] * np.log(x)
    if kind == ModelKind.EXPONENTIAL:
        return -p["lam"] * x
    if kind == ModelKind.LOGNORMAL:
        lx = np.log(x)
        return -lx - (lx - p["mu"]) ** 2 / (2.0 * p["sigma"] ** 2)
    if kind == ModelKind.TRUNCATED_POWER_LAW:
        return -p["alpha"] * np.log(x) - p["lam"] * x
    if kind == ModelKind.STRETCHED_EXPONENTIAL:
        return (p["beta"] - 1.0) * np.log(x) - p["lam"] * x ** p["beta"]
    raise ValueError(f"unknown model kind {kind}")


def _d_f(kind: ModelKind, p: dict, x: np.ndarray) -> np.ndarray:
    """f'(x), for the Euler-Maclaurin discrete tail correction."""
    f = np.exp(_log_f(kind, p, x))
    if kind == ModelKind.LOGNORMAL:
        return f * (-1.0 / x) * (1.0 + (np.log(x) - p["mu"]) / p["sigma"] ** 2)
    if kind == ModelKind.TRUNCATED_POWER_LAW:
        return f * (-p["alpha"] / x - p["lam"])
    if kind == ModelKind.STRETCHED_EXPONENTIAL:
        b, lam = p["beta"], p["lam"]
        return f * ((b - 1.0) / x - lam * b * x ** (b - 1.0))
    raise ValueError(f"no derivative needed for {kind}")


def _log_integral_tail(kind: ModelKind, p: dict, a: float) -> float:
    """log of integral_a^inf f(x) dx, in closed form."""
    if kind == ModelKind.POWER_LAW:
        alpha = p["alpha"]
        if alpha <= 1.0:
            return np.inf  # not normalizable
        return (1.0 - alpha) * np.log(a) - np.log(alpha - 1.0)
    if kind == ModelKind.EXPONENTIAL:
        lam = p["lam"]
        if lam <= 0.0:
            return np.inf
        return -lam * a - np.log(lam)
    if kind == ModelKind.LOGNORMAL:
        mu, sigma = p["mu"], p["sigma"]
        if sigma <= 0.0:
            return np.inf
        return (
            0.5 * np.log(2.0 * np.pi)
            + np.log(sigma)
            + log_ndtr((mu - np.log(a)) / sigma)
        )
    if kind == ModelKind.TRUNCATED_POWER_LAW:
        alpha, lam = p["alpha"], p["lam"]
        if lam < 0.0:
            return np.inf
        if lam < 1e-12:  # pure power law limit
            return _log_integral_tail(ModelKind.POWER_LAW, p, a)
        return (alpha - 1.0) * np.log(lam) + log_upper_gamma(1.0 - alpha, lam * a)
    if kind == ModelKind.STRETCHED_EXPONENTIAL:
        lam, beta = p["lam"], p["beta"]
        if lam <= 0.0 or beta <= 0.0:
            return np.inf
        return -lam * a**beta - np.log(lam * beta)
    raise ValueError(f"unknown model kind {kind}")


# ---- normalization -----------------------------------------------------

_EM_SUM_LEN = 8192


def _discrete_tail_mass(kind: ModelKind, p: dict, a: float) -> float:
    """sum over integer k >= a of f(k), via explicit sum + EM tail."""
    a = float(a)
    ks = np.arange(a, a + _EM_SUM_LEN, dtype=np.float64)
    logf = _log_f(kind, p, ks)
    peak = logf.max()
    if not np.isfinite(peak):
        return 0.0
    head = float(np.exp(peak) * np.exp(logf - peak).sum())
    b = a + _EM_SUM_LEN
    log_int = _log_integral_tail(kind, p, b)
    tail = float(np.exp(log_int)) if np.isfinite(log_int) else 0.0
    fb = float(np.exp(_log_f(kind, p, np.array([b])))[0])
    dfb = float(_d_f(kind, p, np.array([b]))[0]) if fb > 0 else 0.0
    return head + tail + fb / 2.0 - dfb / 12.0


def _log_mass(kind: ModelKind, formalism: str, xmin: float, p: dict) -> float:
    """log of the total f-mass on [xmin, inf); inf when not normalizable."""
    if formalism == CONTINUOUS:
        return float(_log_integral_tail(kind, p, xmin))
    if kind == ModelKind.POWER_LAW:
        alpha = p["alpha"]
        if alpha <= 1.0:
            return np.inf
        return float(np.log(hurwitz_zeta(alpha, xmin)))
    if kind == ModelKind.EXPONENTIAL:
        lam = p["lam"]
        if lam <= 0.0:
            return np.inf
        return float(-lam * xmin - np.log(-np.expm1(-lam)))
    if kind == ModelKind.TRUNCATED_POWER_LAW and p["lam"] < 1e-12:
        if p["alpha"] <= 1.0:
            return np.inf
        return float(np.log(hurwitz_zeta(p["alpha"], xmin)))
    mass = _discrete_tail_mass(kind, p, xmin)
    if mass <= 0.0 or not np.isfinite(mass):
        return np.inf
    return float(np.log(mass))


def _raw(params: ModelParams) -> dict:
    return {
        k: v
        for k, v in (
            ("alpha", params.alpha),
            ("lam", params.lam),
            ("mu", params.mu),
            ("sigma", params.sigma),
            ("beta", params.beta),
        )
        if v is not None
    }


# ---- normalized density / CDF ------------------------------------------


def log_density(params: ModelParams, xmin: float, x) -> np.ndarray:
    """log pdf (continuous) or log pmf (discrete) at x >= xmin."""
    x_arr = np.asarray(x, dtype=np.float64)
    return params.log_c + _log_f(params.kind, _raw(params), x_arr)


def cdf(params: ModelParams, xmin: float, x) -> np.ndarray:
    """P(X <= x) for the fitted model on [xmin, inf)."""
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if params.formalism == DISCRETE:
        out = 1.0 - ccdf(params, xmin, np.floor(x_arr) + 1.0)
    else:
        out = 1.0 - ccdf(params, xmin, x_arr)
    return out if np.ndim(x) else float(out[0])


def ccdf(params: ModelParams, xmin: float, x) -> np.ndarray:
    """P(X >= x) continuous-style for continuous models; for discrete
    models, the survival mass of integers >= ceil(x)."""
    kind, p = params.kind, _raw(params)
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    scalar = np.ndim(x) == 0
    if params.formalism == CONTINUOUS:
        out = _ccdf_continuous(kind, p, xmin, np.maximum(x_arr, xmin))
    else:
        out = _ccdf_discrete(kind, p, xmin, np.maximum(np.ceil(x_arr), xmin))
    out = np.clip(out, 0.0, 1.0)
    return float(out[0]) if scalar else out


def _ccdf_continuous(kind, p, xmin, x):
    if kind == ModelKind.POWER_LAW:
        return (x / xmin) ** (1.0 - p["alpha"])
    if kind == ModelKind.EXPONENTIAL:
        return np.exp(-p["lam"] * (x - xmin))
    if kind == ModelKind.LOGNORMAL:
        mu, sigma = p["mu"], p["sigma"]
        return ndtr((mu - np.log(x)) / sigma) / ndtr((mu - np.log(xmin)) / sigma)
    if kind == ModelKind.TRUNCATED_POWER_LAW:
        if p["lam"] < 1e-12:
            return (x / xmin) ** (1.0 - p["alpha"])
        s = 1.0 - p["alpha"]
        return np.exp(
            log_upper_gamma(s, p["lam"] * x) - log_upper_gamma(s, p["lam"] * xmin)
        )
    if kind == ModelKind.STRETCHED_EXPONENTIAL:
        return np.exp(-p["lam"] * (x ** p["beta"] - xmin ** p["beta"]))
    raise ValueError(f"unknown model kind {kind}")


def _ccdf_discrete(kind, p, xmin, x):
    if kind == ModelKind.POWER_LAW:
        return hurwitz_zeta(p["alpha"], x) / hurwitz_zeta(p["alpha"], xmin)
    if kind == ModelKind.EXPONENTIAL:
        return np.exp(-p["lam"] * (x - xmin))
    if kind == ModelKind.TRUNCATED_POWER_LAW and p["lam"] < 1e-12:
        return hurwitz_zeta(p["alpha"], x) / hurwitz_zeta(p["alpha"], xmin)
    total = _discrete_tail_mass(kind, p, xmin)
    return np.array([_discrete_tail_mass(kind, p, xi) for xi in x]) / total


# ---- sampling ----------------------------------------------------------


def power_law_quantile(u, alpha: float, xmin: float, formalism: str):
    """Inverse CDF of the fitted power law; u = 0 maps to xmin."""
    _check_formalism(formalism)
    if alpha <= 1.0:
        raise ValueError("power law requires alpha > 1")
    u_arr = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if np.any((u_arr < 0) | (u_arr >= 1)):
        raise ValueError("u must lie in [0, 1)")
    if formalism == CONTINUOUS:
        out = xmin * (1.0 - u_arr) ** (-1.0 / (alpha - 1.0))
    else:
        out = _power_law_discrete_inverse(u_arr, alpha, xmin)
    return float(out[0]) if np.ndim(u) == 0 else out


def _rounding_draw(u: np.ndarray, alpha: float, xmin: float) -> np.ndarray:
    return np.floor((xmin - 0.5) * (1.0 - u) ** (-1.0 / (alpha - 1.0)) + 0.5)


def _power_law_discrete_table(alpha: float, xmin: float) -> np.ndarray:
    """CDF at integers xmin .. xmin + len - 1."""
    ks = np.arange(xmin, xmin + _TABLE_LEN, dtype=np.float64)
    pmf = ks ** (-alpha) / hurwitz_zeta(alpha, xmin)
    return np.cumsum(pmf)


def _power_law_discrete_inverse(u: np.ndarray, alpha: float, xmin: float) -> np.ndarray:
    if xmin >= _BIG_XMIN:
        return np.maximum(_rounding_draw(u, alpha, xmin), xmin)
    table = _power_law_discrete_table(alpha, xmin)
    idx = np.searchsorted(table, u, side="right")
    out = xmin + idx.astype(np.float64)
    over = idx >= table.size
    if np.any(over):
        out[over] = np.maximum(
            _rounding_draw(u[over], alpha, xmin), xmin + float(table.size)
        )
    return out


def sample(params: ModelParams, xmin: float, n: int, seed=None) -> np.ndarray:
    """Draw n observations from the fitted model on [xmin, inf)."""
    rng = np.random.default_rng(seed)
    kind, p = params.kind, _raw(params)
    if params.formalism == DISCRETE:
        if kind == ModelKind.POWER_LAW:
            return _power_law_discrete_inverse(rng.random(n), p["alpha"], xmin)
        if kind == ModelKind.EXPONENTIAL:
            return xmin + np.floor(-np.log1p(-rng.random(n)) / p["lam"])
        return _discrete_table_sample(kind, p, xmin, n, rng)
    u = rng.random(n)
    if kind == ModelKind.POWER_LAW:
        return power_law_quantile(u, p["alpha"], xmin, CONTINUOUS)
    if kind == ModelKind.EXPONENTIAL:
        return xmin - np.log1p(-u) / p["lam"]
    if kind == ModelKind.LOGNORMAL:
        mu, sigma = p["mu"], p["sigma"]
        f0 = ndtr((np.log(xmin) - mu) / sigma)
        return np.exp(mu + sigma * ndtri(f0 + u * (1.0 - f0)))
    if kind == ModelKind.STRETCHED_EXPONENTIAL:
        lam, beta = p["lam"], p["beta"]
        return (xmin**beta - np.log1p(-u) / lam) ** (1.0 / beta)
    if kind == ModelKind.TRUNCATED_POWER_LAW:
        return _tpl_rejection_sample(p, xmin, n, rng)
    raise ValueError(f"unknown model kind {kind}")


def _discrete_table_sample(kind, p, xmin, n, rng) -> np.ndarray:
    """Inverse-CDF over the discretized pmf, table truncated at 1e-10 mass."""
    total = _discrete_tail_mass(kind, p, xmin)
    length = 1024
    while True:
        ks = np.arange(xmin, xmin + length, dtype=np.float64)
        pmf = np.exp(_log_f(kind, p, ks)) / total
        cdf_t = np.cumsum(pmf)
        if 1.0 - cdf_t[-1] < 1e-10 or length >= (1 << 22):
            break
        length *= 4
    idx = np.searchsorted(cdf_t, rng.random(n), side="right")
    return xmin + np.minimum(idx, cdf_t.size - 1).astype(np.float64)


def _tpl_rejection_sample(p, xmin, n, rng) -> np.ndarray:
    # power-law proposal, accept with exp(-lam (x - xmin))
    alpha, lam = p["alpha"], p["lam"]
    if alpha <= 1.0:
        raise ValueError("rejection sampler needs alpha > 1")
    out = np.empty(0)
    while out.size < n:
        m = max(2 * (n - out.size), 1024)
        x = xmin * (1.0 - rng.random(m)) ** (-1.0 / (alpha - 1.0))
        keep = rng.random(m) < np.exp(-lam * (x - xmin))
        out = np.concatenate([out, x[keep]])
    return out[:n]
