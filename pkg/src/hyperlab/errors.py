"""Exception types shared across the package."""


class HyperlabError(Exception):
    """Base class for all hyperlab errors."""


class MetricValidationError(HyperlabError):
    """A distance table violates the metric axioms.

    Carries the full list of violations, not just the first one, so callers
    can render a complete report.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        summary = "; ".join(str(v) for v in self.violations[:8])
        if len(self.violations) > 8:
            summary += f"; ... ({len(self.violations)} total)"
        super().__init__(f"invalid metric: {summary}")


class SingletonSpaceError(HyperlabError):
    """Operation needs at least two points (SINGLETON_SPACE)."""


class TooLargeError(HyperlabError):
    """Input exceeds an enumeration or materialization cap (TOO_LARGE)."""


class KindMismatchError(HyperlabError):
    """Set arguments are of different kinds or belong to different spaces."""


class MissingSingletonsError(HyperlabError):
    """Collection must contain every singleton subset (MISSING_SINGLETONS)."""


class NotInjectiveError(HyperlabError):
    """Inverse-route search needs pairwise distinct image sets (NOT_INJECTIVE)."""


class NotMonotoneError(HyperlabError):
    """Grid map must be nondecreasing after snapping (NOT_MONOTONE)."""


class NotConvexPreservingError(HyperlabError):
    """A contiguous range mapped to an image set with a gap (NOT_CONVEX_PRESERVING)."""


class ModulusDiscrepancyError(HyperlabError):
    """Base-level and set-level moduli disagree beyond tolerance (DISCREPANCY).

    This is never expected on valid inputs; it signals an implementation bug.
    """

    def __init__(self, t, gap):
        self.t = t
        self.gap = gap
        super().__init__(f"modulus discrepancy {gap:.3e} at t={t!r}")


class UnknownNameError(HyperlabError):
    """Requested named sequence/point does not exist (UNKNOWN_NAME)."""


class BadParamsError(HyperlabError):
    """Family parameters outside their documented ranges (BAD_PARAMS)."""


class SpaceFileError(HyperlabError):
    """Parse failure in a space/collection/map file; carries the line number."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"PARSE({line}): {message}")


class UnknownSuiteError(HyperlabError):
    """run_suite called with a name outside the suite registry (UNKNOWN_SUITE)."""


class BadConfigError(HyperlabError):
    """Suite configuration value missing or unparsable (BAD_CONFIG)."""
