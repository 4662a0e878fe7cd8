"""Exception types shared across the package."""

from __future__ import annotations


class EdgeListParseError(ValueError):
    """A malformed edge-list record.  Carries the 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UrlHostError(ValueError):
    """URL has no extractable host component."""


class NoPayLevelDomainError(ValueError):
    """Host equals a public suffix, so no label exists above the suffix."""


class DegenerateInputError(ValueError):
    """Input distribution is too degenerate to fit (fewer than 2 distinct values)."""


class InsufficientTailError(ValueError):
    """No candidate cutoff leaves a tail with at least 2 observations."""


class OptimizerError(RuntimeError):
    """Numerical likelihood maximization failed to converge.

    Carries the last iterate and the finite-difference gradient norm there.
    """

    def __init__(self, message: str, last_iterate, gradient_norm: float):
        super().__init__(
            f"{message} (last iterate {last_iterate}, |grad| {gradient_norm:.3g})"
        )
        self.last_iterate = last_iterate
        self.gradient_norm = gradient_norm


class MissingArtifactError(FileNotFoundError):
    """A pipeline stage output required by a later stage is absent."""

    def __init__(self, artifact: str):
        super().__init__(f"missing pipeline artifact: {artifact}")
        self.artifact = artifact
