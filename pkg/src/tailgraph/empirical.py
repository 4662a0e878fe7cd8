"""Sorted multisets of positive observations (degrees, component sizes).

Observations are stored as distinct sorted values with multiplicities,
which keeps the fitting machinery linear in the number of *distinct*
values rather than the sample size.  Discrete analyses require integer
values >= 1; zero-degree nodes are accounted for separately by the degree
histogram and never enter a distribution.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np


@dataclass(eq=False)
class EmpiricalDistribution:
    """Distinct sorted observation values with multiplicities."""

    values: np.ndarray
    counts: np.ndarray
    total: int = field(init=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        counts = np.asarray(self.counts, dtype=np.int64)
        if values.ndim != 1 or counts.shape != values.shape:
            raise ValueError("values and counts must be 1-D arrays of equal length")
        if values.size and not np.all(np.diff(values) > 0):
            raise ValueError("values must be strictly increasing")
        if np.any(counts <= 0):
            raise ValueError("multiplicities must be positive")
        if values.size and values[0] <= 0:
            raise ValueError("observations must be positive")
        self.values = values
        self.counts = counts
        self.total = int(counts.sum())

    # ---- construction ------------------------------------------------

    @classmethod
    def from_observations(cls, observations) -> "EmpiricalDistribution":
        obs = np.asarray(observations, dtype=np.float64)
        values, counts = np.unique(obs, return_counts=True)
        return cls(values, counts)

    @classmethod
    def from_counts(cls, mapping) -> "EmpiricalDistribution":
        """Build from a {value: count} mapping or iterable of (value, count)."""
        items = mapping.items() if hasattr(mapping, "items") else mapping
        pairs = sorted((float(v), int(c)) for v, c in items)
        values = np.array([v for v, _ in pairs], dtype=np.float64)
        counts = np.array([c for _, c in pairs], dtype=np.int64)
        return cls(values, counts)

    @classmethod
    def load(cls, source) -> "EmpiricalDistribution":
        """Read a distribution file.

        Lines with a tab are "value<TAB>count" records; files without tabs
        are raw one-value-per-line samples.  '#' lines are skipped.
        """
        if hasattr(source, "read"):
            text = source.read()
            if isinstance(text, bytes):
                text = text.decode("utf-8")
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        values, counts, raw = [], [], []
        for line in io.StringIO(text):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "\t" in line:
                v, c = line.split("\t")
                values.append(float(v))
                counts.append(int(c))
            else:
                raw.append(float(line))
        if raw and values:
            raise ValueError("mixed frequency and raw records in one file")
        if raw:
            return cls.from_observations(raw)
        agg: dict[float, int] = {}
        for v, c in zip(values, counts):
            agg[v] = agg.get(v, 0) + c
        return cls.from_counts(agg)

    def save(self, target) -> None:
        """Write as "value<TAB>count" lines (integers rendered without .0)."""
        own = not hasattr(target, "write")
        fh = open(target, "w", encoding="utf-8") if own else target
        try:
            for v, c in zip(self.values, self.counts):
                fh.write(f"{_fmt(v)}\t{c}\n")
        finally:
            if own:
                fh.close()

    # ---- queries -----------------------------------------------------

    @property
    def n_distinct(self) -> int:
        return int(self.values.size)

    @property
    def is_integral(self) -> bool:
        return bool(np.all(self.values == np.floor(self.values)))

    def mean(self) -> float:
        return float((self.values * self.counts).sum() / self.total)

    def n_geq(self, x: float) -> int:
        """Number of observations >= x."""
        i = int(np.searchsorted(self.values, x, side="left"))
        return int(self.counts[i:].sum())

    def tail(self, xmin: float) -> "EmpiricalDistribution":
        """Sub-distribution of observations >= xmin."""
        i = int(np.searchsorted(self.values, xmin, side="left"))
        return EmpiricalDistribution(self.values[i:].copy(), self.counts[i:].copy())

    def to_observations(self) -> np.ndarray:
        return np.repeat(self.values, self.counts)

    def ccdf(self) -> np.ndarray:
        """P(X >= v) evaluated at each distinct value."""
        tail_counts = np.cumsum(self.counts[::-1])[::-1]
        return tail_counts / self.total

    def __repr__(self) -> str:
        return (
            f"EmpiricalDistribution(n={self.total}, distinct={self.n_distinct}, "
            f"range=[{self.values[0] if self.n_distinct else None}, "
            f"{self.values[-1] if self.n_distinct else None}])"
        )


def _fmt(v: float) -> str:
    return str(int(v)) if v == int(v) else repr(v)
