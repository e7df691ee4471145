"""Exception hierarchy shared by every kgscatter module, plus the CLI exit-code mapping."""


class KGScatterError(Exception):
    """Base class for all kgscatter failures."""


class DomainError(KGScatterError, ValueError):
    """Input outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Γ evaluated at a nonpositive integer."""


class DegenerateParameterError(DomainError):
    """2F1 connection formula requested where c - a - b is (nearly) an integer."""


class DegenerateChannelError(DomainError):
    """k = 0: the phase shift is undefined."""


class ComplexIndexError(DomainError):
    """Negative radicand under the Varshni-Shukla index λ."""


class BelowThresholdError(DomainError):
    """An above-threshold (real k) quantity was requested for an imaginary k."""


class ConvergenceError(KGScatterError):
    """A series or iteration did not converge within its budget."""


class NoRootError(KGScatterError):
    """No sign change of the target function in the search window."""


class NodeCountError(KGScatterError):
    """Shooting could not isolate a solution with the requested node count."""


class MatchError(KGScatterError):
    """Asymptotic two-point sine fit stayed ill-conditioned after all retries."""


class IntegrationOverflowError(KGScatterError, OverflowError):
    """|u| exceeded the overflow limit during radial integration."""


class UsageError(KGScatterError, ValueError):
    """Invalid command-line arguments or job file."""


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_INVARIANT = 3
EXIT_CONVERGENCE = 4


def exit_code_for(exc: BaseException) -> int:
    """Usage problems exit 1; anything unexpected counts as a numeric failure (4)."""
    if isinstance(exc, UsageError):
        return EXIT_USAGE
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    return EXIT_CONVERGENCE


def domain_status(exc: DomainError) -> str:
    """Short label for a numeric-domain failure, as used in report status columns."""
    if isinstance(exc, DegenerateChannelError):
        return "degenerate"
    if isinstance(exc, PoleError):
        return "pole"
    if isinstance(exc, ComplexIndexError):
        return "complex_index"
    return "domain"
