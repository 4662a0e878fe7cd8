"""Maximum-likelihood tail fitting with KS cutoff selection and bootstrap.

The power-law fit scans every distinct observed value as a cutoff
candidate (down to a configurable minimum tail size), estimates the
exponent by maximum likelihood on each candidate tail, and keeps the
cutoff whose fitted model is closest to the empirical tail CDF in
Kolmogorov-Smirnov distance.  The goodness-of-fit p-value comes from a
semiparametric bootstrap: synthetic datasets draw from the empirical body
below the cutoff and from the fitted tail above it, are refitted from
scratch (cutoff re-selection included), and the p-value is the fraction
whose KS distance reaches the observed one.

Conventions pinned here:
  - the empirical CDF is a right-continuous step function and the KS
    statistic checks both the upper and lower step at each observation;
  - bootstrap p-values carry a precision of +-1/(2 sqrt(n_sims)), so the
    default 2500 simulations report p to +-0.01;
  - the exponent search range is (1, 24].
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from tailgraph import models
from tailgraph.empirical import EmpiricalDistribution
from tailgraph.errors import (
    DegenerateInputError,
    InsufficientTailError,
    OptimizerError,
)
from tailgraph.models import CONTINUOUS, DISCRETE, ModelKind, ModelParams
from tailgraph.numerics import hurwitz_zeta

DEFAULT_TAIL_FLOOR = 50
DEFAULT_GOF_SIMS = 2500
# Continuous samples have ~n distinct values; scanning every one of them
# is quadratic, so past this many eligible cutoffs the scan thins to a
# uniformly spaced subset of the sorted distinct values.  Discrete degree
# and size data collapse to far fewer distinct values and always get the
# full scan.
DEFAULT_MAX_CANDIDATES = 512
_ALPHA_LO = 1.0 + 1e-3  # keeps the Newton stencil clear of the zeta pole
# Default exponent search cap; matches the bounded exponent grid of the
# reference fitting tools for this methodology.  Steeper tails land on the
# cap, which keeps cutoff selection from chasing tiny ultra-steep tails.
DEFAULT_ALPHA_MAX = 3.5
_ALPHA_HARD_MAX = 24.0  # accuracy limit of the zeta machinery


@dataclass
class FitResult:
    """A fitted tail model with its cutoff and goodness-of-fit summary."""

    params: ModelParams
    xmin: float
    ks_distance: float
    alpha_stderr: float
    tail_fraction: float
    formalism: str
    n_tail: int
    tail_floor: int
    alpha_max: float = DEFAULT_ALPHA_MAX
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    p_value: float | None = None
    n_sims: int | None = None
    seed: int | None = None

    @property
    def alpha(self) -> float:
        return self.params.alpha

    def summary(self) -> str:
        """Fit line in the conventional reporting format.

        The exponent is rounded to the decade of its standard error, e.g.
        "xmin=250, alpha=2.193±0.001".
        """
        digits = _error_decimals(self.alpha_stderr)
        return (
            f"xmin={self.xmin:g}, "
            f"alpha={self.alpha:.{digits}f}±{self.alpha_stderr:.{digits}f}"
        )


def _error_decimals(err: float) -> int:
    if not np.isfinite(err) or err <= 0:
        return 3
    return max(0, -int(math.floor(math.log10(err))))


def pvalue_precision(n_sims: int) -> float:
    """Reporting precision of a bootstrap p-value: 1/(2 sqrt(n_sims))."""
    return 0.5 / math.sqrt(n_sims)


def format_pvalue(p: float, n_sims: int) -> str:
    """Render p with its bootstrap precision, e.g. "0.69±0.01"."""
    digits = _error_decimals(pvalue_precision(n_sims))
    return f"{p:.{digits}f}±{pvalue_precision(n_sims):.{digits}f}"


# ---- power-law fitting ---------------------------------------------------


def fit_power_law(
    d: EmpiricalDistribution,
    formalism: str = DISCRETE,
    xmin: float | None = None,
    tail_floor: int = DEFAULT_TAIL_FLOOR,
    alpha_max: float = DEFAULT_ALPHA_MAX,
    max_candidates: int = DEFAULT_MAX_CANDIDATES,
) -> FitResult:
    """MLE power-law fit with automatic cutoff selection.

    When ``xmin`` is given the cutoff is fixed; otherwise every distinct
    observed value leaving a tail of at least ``tail_floor`` observations
    is scanned and the KS-minimizing cutoff wins.  (If no value satisfies
    the floor, it relaxes to 2 so that small datasets remain fittable;
    beyond ``max_candidates`` eligible cutoffs the scan thins to that many
    uniformly spaced distinct values.)  Exponents are searched in
    (1, alpha_max]; raise ``alpha_max`` (up to 24) for steeper tails.
    """
    models._check_formalism(formalism)
    if not 1.1 <= alpha_max <= _ALPHA_HARD_MAX:
        raise ValueError(f"alpha_max must be in [1.1, {_ALPHA_HARD_MAX}]")
    if d.n_distinct < 2:
        raise DegenerateInputError("need at least 2 distinct values to fit")
    if formalism == DISCRETE and not d.is_integral:
        raise ValueError("discrete fits require integer observations")
    values, counts = d.values, d.counts

    if xmin is not None:
        i = int(np.searchsorted(values, xmin, side="left"))
        if int(counts[i:].sum()) < 2 or values.size - i < 2:
            raise InsufficientTailError(
                f"tail at fixed xmin={xmin} has fewer than 2 observations "
                "or no spread"
            )
        alpha, ks, n_tail = _fit_at_fixed_xmin(
            values, counts, i, xmin, formalism, alpha_max
        )
        chosen = float(xmin)
    else:
        alpha, chosen, ks, n_tail = _scan_xmin(
            values, counts, formalism, tail_floor, alpha_max, max_candidates
        )

    stderr = _alpha_stderr(alpha, chosen, n_tail, formalism)
    params = models.make_params(
        ModelKind.POWER_LAW, formalism, chosen, alpha=float(alpha)
    )
    return FitResult(
        params=params,
        xmin=chosen,
        ks_distance=float(ks),
        alpha_stderr=float(stderr),
        tail_fraction=n_tail / d.total,
        formalism=formalism,
        n_tail=int(n_tail),
        tail_floor=tail_floor,
        alpha_max=alpha_max,
        max_candidates=max_candidates,
    )


def _suffix_stats(values: np.ndarray, counts: np.ndarray):
    n_suffix = np.cumsum(counts[::-1])[::-1]
    s_suffix = np.cumsum((counts * np.log(values))[::-1])[::-1]
    return n_suffix, s_suffix


def _alpha_mle_continuous(n, s, log_xmin, alpha_max=_ALPHA_HARD_MAX):
    return np.minimum(1.0 + n / (s - n * log_xmin), alpha_max)


def _alpha_mle_discrete(
    n: np.ndarray, s: np.ndarray, q: np.ndarray, alpha_max: float
) -> np.ndarray:
    """Vectorized MLE exponent of the zeta-normalized power law.

    Maximizes -alpha*S - n*log zeta(alpha, q) per candidate via
    bracket-safeguarded Newton steps; the log-likelihood is strictly
    concave, so the per-candidate score G(alpha) = -S/n - dlogzeta is
    decreasing and sign evaluations shrink a [lo, hi] bracket around the
    root.  Each iteration costs one stacked zeta evaluation.  Tails
    steeper than the search cap land on the cap.
    """
    target = s / n  # mean log-observation per candidate
    # Clauset's shifted-continuous estimate is an excellent starting point
    with np.errstate(divide="ignore", invalid="ignore"):
        alpha = 1.0 + 1.0 / np.maximum(target - np.log(q - 0.5), 1e-9)
    alpha = np.clip(alpha, 1.01, alpha_max - 1e-6)
    lo = np.full(n.shape, _ALPHA_LO)
    hi = np.full(n.shape, float(alpha_max))
    h = 1e-4
    for _ in range(12):
        stack = np.concatenate([alpha - h, alpha, alpha + h])
        lz = np.log(hurwitz_zeta(stack, np.concatenate([q, q, q])))
        m = alpha.size
        l_dn, l_mid, l_up = lz[:m], lz[m : 2 * m], lz[2 * m :]
        g = -target - (l_up - l_dn) / (2.0 * h)
        curv = (l_up - 2.0 * l_mid + l_dn) / h**2
        lo = np.where(g > 0, alpha, lo)
        hi = np.where(g > 0, hi, alpha)
        step = g / np.maximum(curv, 1e-12)
        nxt = alpha + step
        outside = (nxt <= lo) | (nxt >= hi)
        nxt = np.where(outside, 0.5 * (lo + hi), nxt)
        done = np.abs(nxt - alpha) < 1e-9
        alpha = nxt
        if bool(done.all()):
            break
    return np.clip(alpha, _ALPHA_LO, alpha_max)


def _model_cdf_power_law(alpha, q, x, formalism):
    """Model CDF at tail values x, as (upper, lower) step values.

    A continuous model has no atoms, so both steps share one CDF value.
    A discrete model jumps at the integers exactly where the empirical
    CDF does, so the supremum over the real line compares the model's
    pre-jump value CDF(x-1) against the empirical lower step.
    """
    if formalism == CONTINUOUS:
        f = 1.0 - np.exp((1.0 - alpha) * (np.log(x) - np.log(q)))
        return f, f
    z = hurwitz_zeta(alpha, q)
    tail_at_x = hurwitz_zeta(alpha, x)  # sum_{k >= x} k^-alpha
    f_lower = 1.0 - tail_at_x / z
    f_upper = 1.0 - (tail_at_x - x**-alpha) / z
    return f_upper, f_lower


# Bernoulli coefficients B_2j/(2j)! of the zeta tail polynomial; 7 terms
# keep the scan's fast path at ~1e-12 for exponents up to 6 anchored at 8.
_EM_COEFF = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
)
_FAST_ALPHA_LIMIT = 6.0
_FAST_V_MIN = 8.0


def _discrete_steps_fast(alpha_c, z_c, rep, v, log_v):
    """(upper, lower) discrete power-law CDF steps on the scan pair arrays.

    Factors the Euler-Maclaurin zeta tail into per-candidate polynomial
    coefficients so each pair costs one exp plus a Horner evaluation:
    zeta(a, v) = v**-a * [v/(a-1) + 1/2 + sum_j d_j(a) v**-(2j-1)].
    Requires alpha <= 6 and v >= 8; callers patch smaller v exactly.
    """
    coeff = []
    poch = alpha_c.copy()
    for j, b in enumerate(_EM_COEFF, start=1):
        coeff.append(b * poch)
        poch = poch * (alpha_c + 2 * j - 1) * (alpha_c + 2 * j)
    a = alpha_c[rep]
    w2 = 1.0 / (v * v)
    poly = coeff[6][rep]
    for j in (5, 4, 3, 2, 1, 0):
        poly = coeff[j][rep] + w2 * poly
    poly = v / (a - 1.0) + 0.5 + poly / v
    pmf = np.exp(-a * log_v)
    tail = pmf * poly
    zr = z_c[rep]
    return 1.0 - (tail - pmf) / zr, 1.0 - tail / zr


def _scan_xmin(
    values,
    counts,
    formalism,
    tail_floor,
    alpha_max=DEFAULT_ALPHA_MAX,
    max_candidates=DEFAULT_MAX_CANDIDATES,
):
    D = values.size
    n_suffix, s_suffix = _suffix_stats(values, counts)
    eligible = np.arange(D - 1)  # last distinct value leaves no spread
    floor = max(2, tail_floor)
    keep = n_suffix[eligible] >= floor
    if not keep.any():
        keep = n_suffix[eligible] >= 2
    cand = eligible[keep]
    if cand.size == 0:
        raise InsufficientTailError("no cutoff leaves a tail of 2+ observations")
    if cand.size > max_candidates:
        pick = np.unique(
            np.round(np.linspace(0, cand.size - 1, max_candidates)).astype(int)
        )
        cand = cand[pick]

    n_c = n_suffix[cand].astype(np.float64)
    q_c = values[cand]
    s_c = s_suffix[cand]
    if formalism == CONTINUOUS:
        alphas = _alpha_mle_continuous(n_c, s_c, np.log(q_c), alpha_max)
    else:
        alphas = _alpha_mle_discrete(n_c, s_c, q_c, alpha_max)

    # pair arrays: one row per (candidate, tail value >= cutoff)
    lens = D - cand
    starts = np.concatenate([[0], np.cumsum(lens)[:-1]])
    total = int(lens.sum())
    rep = np.repeat(np.arange(cand.size), lens)
    j = (np.arange(total) - np.repeat(starts, lens)) + cand[rep]

    prefix = np.cumsum(counts, dtype=np.float64)
    before = np.where(cand > 0, prefix[cand - 1], 0.0)
    emp_hi = (prefix[j] - before[rep]) / n_c[rep]
    emp_lo = (np.where(j > 0, prefix[j - 1], 0.0) - before[rep]) / n_c[rep]
    emp_lo = np.maximum(emp_lo, 0.0)

    if formalism == CONTINUOUS:
        log_values = np.log(values)
        f = 1.0 - np.exp((1.0 - alphas[rep]) * (log_values[j] - log_values[cand][rep]))
        f_upper = f_lower = f
    elif alpha_max <= _FAST_ALPHA_LIMIT:
        log_values = np.log(values)
        z_c = hurwitz_zeta(alphas, q_c)
        f_upper, f_lower = _discrete_steps_fast(
            alphas, z_c, rep, values[j], log_values[j]
        )
        small = values[j] < _FAST_V_MIN
        if np.any(small):
            tail_small = hurwitz_zeta(alphas[rep][small], values[j][small])
            pmf_small = values[j][small] ** -alphas[rep][small]
            zr = z_c[rep][small]
            f_upper[small] = 1.0 - (tail_small - pmf_small) / zr
            f_lower[small] = 1.0 - tail_small / zr
    else:
        f_upper, f_lower = _model_cdf_power_law(
            alphas[rep], q_c[rep], values[j], formalism
        )
    dev = np.maximum(np.abs(f_upper - emp_hi), np.abs(f_lower - emp_lo))
    ks_per_candidate = np.maximum.reduceat(dev, starts)

    best = int(np.argmin(ks_per_candidate))
    return (
        float(alphas[best]),
        float(q_c[best]),
        float(ks_per_candidate[best]),
        int(n_c[best]),
    )


def _fit_at_fixed_xmin(values, counts, i, xmin, formalism, alpha_max):
    v, c = values[i:], counts[i:]
    n = float(c.sum())
    s = float((c * np.log(v)).sum())
    if formalism == CONTINUOUS:
        alpha = _alpha_mle_continuous(n, s, np.log(xmin), alpha_max)
    else:
        alpha = float(
            _alpha_mle_discrete(
                np.array([n]), np.array([s]), np.array([float(xmin)]), alpha_max
            )[0]
        )
    f_upper, f_lower = _model_cdf_power_law(
        np.full(v.shape, alpha), np.full(v.shape, float(xmin)), v, formalism
    )
    hi = np.cumsum(c) / n
    lo = np.concatenate([[0.0], np.cumsum(c)[:-1]]) / n
    ks = float(np.maximum(np.abs(f_upper - hi), np.abs(f_lower - lo)).max())
    return alpha, ks, int(n)


def _alpha_stderr(alpha, xmin, n_tail, formalism):
    if formalism == CONTINUOUS:
        return (alpha - 1.0) / math.sqrt(n_tail)
    # observed information: second derivative of n*log zeta at the MLE
    h = 1e-3
    lz = np.log(hurwitz_zeta(np.array([alpha - h, alpha, alpha + h]), float(xmin)))
    d2 = (lz[0] - 2.0 * lz[1] + lz[2]) / h**2
    if d2 <= 0:
        return float("nan")
    return 1.0 / math.sqrt(n_tail * d2)


# ---- KS statistic ---------------------------------------------------------


def ks_statistic(d: EmpiricalDistribution, params: ModelParams, xmin: float) -> float:
    """Two-sided KS distance between the empirical tail and the model CDF.

    The empirical CDF is the right-continuous step function of the
    observations >= xmin; both the upper and lower step are compared at
    each distinct value.  For a discrete model, whose CDF jumps at the
    same integers, the lower step is compared against the model's own
    pre-jump value CDF(v-1), which is the supremum of |S - P| over the
    real line.
    """
    tail = d.tail(xmin)
    if tail.total == 0:
        raise InsufficientTailError(f"no observations at or above xmin={xmin}")
    f_upper = np.atleast_1d(models.cdf(params, xmin, tail.values))
    if params.formalism == DISCRETE:
        f_lower = np.atleast_1d(models.cdf(params, xmin, tail.values - 1.0))
    else:
        f_lower = f_upper
    cum = np.cumsum(tail.counts) / tail.total
    lo = np.concatenate([[0.0], cum[:-1]])
    return float(np.maximum(np.abs(f_upper - cum), np.abs(f_lower - lo)).max())


# ---- goodness-of-fit bootstrap --------------------------------------------


def gof_pvalue(
    d: EmpiricalDistribution,
    fit: FitResult,
    n_sims: int = DEFAULT_GOF_SIMS,
    seed: int | None = None,
    workers: int | None = None,
) -> float:
    """Semiparametric bootstrap p-value for a power-law fit.

    Each synthetic dataset draws every observation from the empirical body
    (below xmin) with probability 1 - tail_fraction, otherwise from the
    fitted power-law tail; it is then refitted with full cutoff
    re-selection and its KS distance compared against the observed one.
    Deterministic for a given (data, fit, n_sims, seed); ``workers``
    defaults to the TAILGRAPH_THREADS environment variable.
    """
    if fit.params.kind != ModelKind.POWER_LAW:
        raise ValueError("goodness-of-fit bootstrap applies to power-law fits")
    if n_sims < 100:
        raise ValueError("n_sims must be at least 100")
    if n_sims < DEFAULT_GOF_SIMS:
        warnings.warn(
            f"n_sims={n_sims} reports p to only ±{pvalue_precision(n_sims):.3f}",
            stacklevel=2,
        )
    if workers is None:
        workers = int(os.environ.get("TAILGRAPH_THREADS", "1"))

    plan = _BootstrapPlan(d, fit)
    seeds = np.random.SeedSequence(seed).spawn(n_sims)
    if workers <= 1:
        hits = _gof_chunk(plan, seeds)
    else:
        chunks = [seeds[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(_gof_chunk, [plan] * workers, chunks))
    return hits / n_sims


@dataclass
class _BootstrapPlan:
    """Everything a bootstrap replicate needs, precomputed once."""

    d: EmpiricalDistribution
    fit: FitResult
    body_values: np.ndarray = field(init=False)
    body_probs: np.ndarray = field(init=False)
    tail_table: np.ndarray | None = field(init=False)

    def __post_init__(self):
        i = int(np.searchsorted(self.d.values, self.fit.xmin, side="left"))
        self.body_values = self.d.values[:i]
        body_counts = self.d.counts[:i].astype(np.float64)
        self.body_probs = (
            body_counts / body_counts.sum() if i else np.empty(0)
        )
        if self.fit.formalism == DISCRETE and self.fit.xmin < models._BIG_XMIN:
            self.tail_table = models._power_law_discrete_table(
                self.fit.alpha, self.fit.xmin
            )
        else:
            self.tail_table = None

    def synthesize(self, rng: np.random.Generator):
        """One synthetic dataset as sorted (values, counts) arrays."""
        n = self.d.total
        fit = self.fit
        n_tail = int(rng.binomial(n, fit.tail_fraction))
        parts_v, parts_c = [], []
        n_body = n - n_tail
        if n_body:
            bc = rng.multinomial(n_body, self.body_probs)
            nz = bc > 0
            parts_v.append(self.body_values[nz])
            parts_c.append(bc[nz])
        if n_tail:
            u = rng.random(n_tail)
            if fit.formalism == CONTINUOUS:
                draws = models.power_law_quantile(u, fit.alpha, fit.xmin, CONTINUOUS)
                tv, tc = np.unique(draws, return_counts=True)
            elif self.tail_table is not None:
                idx = np.searchsorted(self.tail_table, u, side="right")
                inside = np.bincount(
                    np.minimum(idx, self.tail_table.size - 1),
                    minlength=self.tail_table.size,
                )
                over = idx >= self.tail_table.size
                if np.any(over):
                    inside[-1] = 0
                    far = np.maximum(
                        models._rounding_draw(u[over], fit.alpha, fit.xmin),
                        fit.xmin + float(self.tail_table.size),
                    )
                    fv, fc = np.unique(far, return_counts=True)
                else:
                    fv = fc = None
                nz = inside > 0
                tv = fit.xmin + np.flatnonzero(nz).astype(np.float64)
                tc = inside[nz]
                if fv is not None:
                    tv = np.concatenate([tv, fv])
                    tc = np.concatenate([tc, fc])
            else:
                draws = np.maximum(
                    models._rounding_draw(u, fit.alpha, fit.xmin), fit.xmin
                )
                tv, tc = np.unique(draws, return_counts=True)
            parts_v.append(tv)
            parts_c.append(tc.astype(np.int64))
        values = np.concatenate(parts_v) if parts_v else np.empty(0)
        counts = np.concatenate(parts_c) if parts_c else np.empty(0, dtype=np.int64)
        if n_body and n_tail and self.fit.formalism == CONTINUOUS:
            # continuous tails can collide with body values; re-aggregate
            values, inv = np.unique(values, return_inverse=True)
            counts = np.bincount(inv, weights=counts).astype(np.int64)
        return values, counts


def _gof_chunk(plan: _BootstrapPlan, seeds) -> int:
    hits = 0
    observed = plan.fit.ks_distance
    for s in seeds:
        rng = np.random.default_rng(s)
        values, counts = plan.synthesize(rng)
        if values.size < 2:
            hits += 1  # degenerate draw counts as an extreme deviation
            continue
        try:
            _, _, ks, _ = _scan_xmin(
                values,
                counts,
                plan.fit.formalism,
                plan.fit.tail_floor,
                plan.fit.alpha_max,
                plan.fit.max_candidates,
            )
        except InsufficientTailError:
            hits += 1
            continue
        if ks >= observed:
            hits += 1
    return hits


# ---- alternative models ----------------------------------------------------


def fit_alternative(
    d: EmpiricalDistribution,
    kind: ModelKind,
    xmin: float,
    formalism: str = DISCRETE,
) -> ModelParams:
    """MLE fit of an alternative tail model on the x >= xmin tail.

    The exponential rate has a closed form; the lognormal, truncated power
    law and stretched exponential are maximized with a Nelder-Mead simplex
    restarted from 3 spread initial points (bounds: sigma > 0, lambda >= 0,
    beta in (0.05, 3]).
    """
    models._check_formalism(formalism)
    if kind == ModelKind.POWER_LAW:
        raise ValueError("use fit_power_law for the power law")
    tail = d.tail(xmin)
    if tail.total == 0:
        raise InsufficientTailError(f"no observations at or above xmin={xmin}")
    v, c = tail.values, tail.counts.astype(np.float64)
    n = float(c.sum())
    mean = float((v * c).sum() / n)

    if kind == ModelKind.EXPONENTIAL:
        if mean <= xmin:
            raise DegenerateInputError("tail mean does not exceed xmin")
        if formalism == CONTINUOUS:
            lam = 1.0 / (mean - xmin)
        else:
            lam = math.log1p(1.0 / (mean - xmin))
        return models.make_params(kind, formalism, xmin, lam=lam)

    def loglik(raw: dict) -> float:
        log_mass = models._log_mass(kind, formalism, xmin, raw)
        if not np.isfinite(log_mass):
            return -np.inf
        return float((c * models._log_f(kind, raw, v)).sum() - n * log_mass)

    if kind == ModelKind.LOGNORMAL:
        lv = np.log(v)
        m = float((c * lv).sum() / n)
        s = math.sqrt(float((c * (lv - m) ** 2).sum() / n))
        if s == 0.0:
            raise DegenerateInputError("all tail observations identical")
        inits = [(m, s), (m - s, 1.5 * s), (m + 0.5 * s, max(0.3 * s, 0.05))]

        def unpack(theta):
            mu, sigma = theta
            if sigma <= 0 or sigma > 1e3:
                return None
            return {"mu": mu, "sigma": sigma}

    elif kind == ModelKind.TRUNCATED_POWER_LAW:
        a0 = _alpha_mle_continuous(n, float((c * np.log(v)).sum()), math.log(xmin))
        a0 = min(max(a0, 1.05), 20.0)
        lam0 = 1.0 / mean
        inits = [(a0, lam0), (max(1.05, a0 - 0.5), 0.1 * lam0), (0.6 + a0 / 2, lam0 / 3)]

        def unpack(theta):
            alpha, lam = theta
            if lam < 0 or alpha > _ALPHA_HARD_MAX or alpha < -2.0:
                return None
            if lam < 1e-12 and alpha <= 1.0:
                return None
            return {"alpha": alpha, "lam": lam}

    elif kind == ModelKind.STRETCHED_EXPONENTIAL:
        inits = []
        for b0 in (0.3, 0.7, 1.2):
            denom = float((c * (v**b0 - xmin**b0)).sum())
            lam0 = n / denom if denom > 0 else 1.0
            inits.append((lam0, b0))

        def unpack(theta):
            lam, beta = theta
            if lam <= 0 or not (0.05 < beta <= 3.0):
                return None
            return {"lam": lam, "beta": beta}

    else:
        raise ValueError(f"unknown model kind {kind}")

    raw = _maximize(loglik, unpack, inits)
    return models.make_params(kind, formalism, xmin, **raw)


def _maximize(loglik, unpack, inits) -> dict:
    """Nelder-Mead with restarts; relative likelihood tolerance 1e-9."""

    def objective(theta):
        raw = unpack(theta)
        if raw is None:
            return 1e30
        ll = loglik(raw)
        return -ll if np.isfinite(ll) else 1e30

    best = None
    for init in inits:
        x0 = np.asarray(init, dtype=np.float64)
        scale = max(1.0, abs(objective(x0)))
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "xatol": 1e-8,
                "fatol": 1e-9 * scale,
                "maxiter": 2000,
                "maxfev": 4000,
            },
        )
        if best is None or res.fun < best.fun:
            best = res
    if best is None or best.fun >= 1e30 or unpack(best.x) is None:
        last = best.x if best is not None else np.asarray(inits[0])
        raise OptimizerError(
            "likelihood maximization failed", last, _grad_norm(objective, last)
        )
    return unpack(best.x)


def _grad_norm(objective, theta) -> float:
    h = 1e-5
    g = []
    for i in range(len(theta)):
        e = np.zeros_like(theta)
        e[i] = h
        g.append((objective(theta + e) - objective(theta - e)) / (2 * h))
    return float(np.linalg.norm(g))


# ---- sampling ---------------------------------------------------------------


def sample_power_law(
    alpha: float,
    xmin: float,
    n: int,
    formalism: str = DISCRETE,
    seed: int | None = None,
) -> EmpiricalDistribution:
    """n draws from a power law with the given parameters.

    Continuous draws invert x = xmin (1-u)^(-1/(alpha-1)); discrete draws
    invert the zeta-normalized CDF exactly up to a table cutoff and use
    the rounding approximation beyond it.
    """
    if alpha <= 1.0:
        raise ValueError("alpha must exceed 1 for a normalizable power law")
    if n < 1:
        raise ValueError("n must be positive")
    params = models.make_params(ModelKind.POWER_LAW, formalism, xmin, alpha=alpha)
    return EmpiricalDistribution.from_observations(
        models.sample(params, xmin, n, seed)
    )
