"""Likelihood-ratio model selection between tail models.

Two models fitted on the same tail are compared by the normalized
loglikelihood ratio R: the sum of per-observation log-likelihood
differences divided by its sample standard deviation times sqrt(n)
(Vuong's test).  The sign of R picks the favored model and the
significance q = erfc(|R|/sqrt(2)) says whether the sign is reliable;
below q = 0.1 it is.  An alternative's statistical plausibility against
the power law is classified from (R, q), and when several alternatives
earn strong support a pairwise tournament picks the best one.

The same two-sided test is applied to every pair, including the nested
power law / truncated power law pair; no one-sided nestedness correction
is used, and reports note this.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from tailgraph import models, tailfit
from tailgraph.empirical import EmpiricalDistribution
from tailgraph.models import ModelKind, ModelParams

SIGN_RELIABLE_Q = 0.1


class Verdict(str, enum.Enum):
    A_FAVORED = "a_favored"
    B_FAVORED = "b_favored"
    UNDECIDABLE = "undecidable"


class Support(str, enum.Enum):
    """Statistical plausibility of an alternative against the power law."""

    NONE = "none"
    UNDECIDABLE = "undecidable"
    STRONG = "strong"


@dataclass(frozen=True)
class ComparisonResult:
    model_a: ModelKind
    model_b: ModelKind
    r: float
    q: float
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "model_a": self.model_a.value,
            "model_b": self.model_b.value,
            "R": self.r,
            "q": self.q,
            "verdict": self.verdict.value,
        }


@dataclass
class PlausibilityVerdict:
    alternative: ModelKind
    support: Support
    comparison: ComparisonResult | None = None
    params: ModelParams | None = None
    error: str | None = None

    def to_dict(self) -> dict:
        out = {
            "alternative": self.alternative.value,
            "support": self.support.value,
            "R": self.comparison.r if self.comparison else None,
            "q": self.comparison.q if self.comparison else None,
        }
        if self.error:
            out["error"] = self.error
        return out


@dataclass
class TournamentResult:
    winner: ModelKind | None
    unresolved: tuple[ModelKind, ...] = ()
    pairwise: list[ComparisonResult] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "winner": self.winner.value if self.winner else None,
            "unresolved": [k.value for k in self.unresolved],
            "pairwise": [c.to_dict() for c in self.pairwise],
        }


def classify_comparison(r: float, q: float) -> Verdict:
    """Which model a (R, q) pair favors; sign of R, reliable when q < 0.1."""
    if q < SIGN_RELIABLE_Q and r > 0:
        return Verdict.A_FAVORED
    if q < SIGN_RELIABLE_Q and r < 0:
        return Verdict.B_FAVORED
    return Verdict.UNDECIDABLE


def classify_support(r: float, q: float) -> Support:
    """Plausibility of an alternative f from R(pl/f) and q.

    R > 0 with q < 0.1 leaves no support for f; R < 0 with q < 0.1 is
    strong support; anything else (unreliable sign or R = 0) is
    undecidable.
    """
    if q < SIGN_RELIABLE_Q and r > 0:
        return Support.NONE
    if q < SIGN_RELIABLE_Q and r < 0:
        return Support.STRONG
    return Support.UNDECIDABLE


def loglikelihood_ratio(
    d: EmpiricalDistribution,
    fit_a: ModelParams,
    fit_b: ModelParams,
    xmin: float,
) -> ComparisonResult:
    """Normalized loglikelihood ratio of two models on the x >= xmin tail.

    R = sum(l_i) / (sigma sqrt(n)) with l_i the per-observation log
    likelihood differences and sigma their sample standard deviation;
    q = erfc(|R|/sqrt(2)).  Identical per-point likelihoods degenerate to
    R = 0, q = 1 (undecidable).
    """
    tail = d.tail(xmin)
    if tail.total == 0:
        raise ValueError(f"no observations at or above xmin={xmin}")
    v, c = tail.values, tail.counts.astype(np.float64)
    n = float(c.sum())
    ll = models.log_density(fit_a, xmin, v) - models.log_density(fit_b, xmin, v)
    mean = float((c * ll).sum()) / n
    sigma = math.sqrt(float((c * (ll - mean) ** 2).sum()) / n)
    if sigma == 0.0:
        r, q = 0.0, 1.0
    else:
        r = mean * math.sqrt(n) / sigma
        q = float(erfc(abs(r) / math.sqrt(2.0)))
    return ComparisonResult(fit_a.kind, fit_b.kind, r, q, classify_comparison(r, q))


def plausibility_scan(
    d: EmpiricalDistribution,
    pl_fit: tailfit.FitResult,
    alternatives: tuple[ModelKind, ...] = models.ALTERNATIVES,
    formalism: str | None = None,
) -> list[PlausibilityVerdict]:
    """Test the power law against each alternative on the fitted tail.

    Per-model fit failures are recorded on the verdict instead of
    aborting the scan.
    """
    formalism = formalism or pl_fit.formalism
    out = []
    for kind in alternatives:
        try:
            alt = tailfit.fit_alternative(d, kind, pl_fit.xmin, formalism)
            cmp_res = loglikelihood_ratio(d, pl_fit.params, alt, pl_fit.xmin)
        except Exception as exc:  # noqa: BLE001 - per-model isolation
            out.append(
                PlausibilityVerdict(
                    alternative=kind,
                    support=Support.UNDECIDABLE,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
            continue
        out.append(
            PlausibilityVerdict(
                alternative=kind,
                support=classify_support(cmp_res.r, cmp_res.q),
                comparison=cmp_res,
                params=alt,
            )
        )
    return out


def best_alternative_tournament(
    d: EmpiricalDistribution,
    verdicts: list[PlausibilityVerdict],
    fits: dict[ModelKind, ModelParams],
    xmin: float,
) -> TournamentResult:
    """Pick the best among strongly supported alternatives, pairwise.

    The winner must be favored against every other strong candidate;
    cyclic or undecidable pairwise outcomes return the unresolved set
    with all pairwise results attached instead of forcing a choice.
    """
    strong = [v.alternative for v in verdicts if v.support == Support.STRONG]
    if not strong:
        return TournamentResult(winner=None)
    if len(strong) == 1:
        return TournamentResult(winner=strong[0])
    pairwise = []
    wins = {k: 0 for k in strong}
    for i, a in enumerate(strong):
        for b in strong[i + 1 :]:
            res = loglikelihood_ratio(d, fits[a], fits[b], xmin)
            pairwise.append(res)
            if res.verdict == Verdict.A_FAVORED:
                wins[a] += 1
            elif res.verdict == Verdict.B_FAVORED:
                wins[b] += 1
    need = len(strong) - 1
    champions = [k for k, w in wins.items() if w == need]
    if len(champions) == 1:
        return TournamentResult(winner=champions[0], pairwise=pairwise)
    return TournamentResult(winner=None, unresolved=tuple(strong), pairwise=pairwise)
