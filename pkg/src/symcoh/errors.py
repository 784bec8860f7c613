"""Exception taxonomy shared by every module in the package.

All errors raised on bad *input* derive from ValidationFailure so the CLI can
map them to a single exit code.  Internal-consistency failures (things that a
validated input should make impossible) are plain AssertionError on purpose:
they indicate a bug here, not a user mistake.
"""

from __future__ import annotations

__all__ = [
    "SymcohError",
    "ValidationFailure",
    "DimensionMismatch",
    "JacobiViolation",
    "NotARepresentation",
    "NotComplementary",
    "BracketViolation",
    "NotASubalgebra",
    "DegreeZero",
    "NotHorizontal",
    "NonTrivialCoefficients",
    "NotSemisimple",
    "NotInvariant",
    "UnknownGroup",
    "UnknownAlgebra",
    "AlgebraMismatch",
    "NotAMorphism",
    "SizeLimit",
    "NczFailed",
    "UsageError",
]


class SymcohError(Exception):
    """Base class for everything this package raises deliberately."""


class ValidationFailure(SymcohError):
    """Bad user-supplied data (algebra tables, decompositions, sizes...)."""


class DimensionMismatch(ValidationFailure):
    pass


class JacobiViolation(ValidationFailure):
    """Jacobi identity fails on a basis triple; carries the residual vector."""

    def __init__(self, i: int, j: int, k: int, residual):
        self.i, self.j, self.k = i, j, k
        self.residual = list(residual)
        super().__init__(
            "Jacobi identity fails on basis triple (%d, %d, %d); residual %s"
            % (i, j, k, self.residual)
        )


class NotARepresentation(ValidationFailure):
    """Module action matrices do not satisfy rho([x,y]) = [rho(x), rho(y)]."""

    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(
            "action matrices violate the commutator rule on basis pair (%d, %d)" % (i, j)
        )


class NotComplementary(ValidationFailure):
    """Candidate k/p spans do not form a direct-sum basis of the algebra."""


class BracketViolation(ValidationFailure):
    """One of the inclusions [k,k]<=k, [k,p]<=p, [p,p]<=k fails.

    ``inclusion`` is the human-readable name of the failed inclusion and
    ``witness`` the offending basis-pair indices.
    """

    def __init__(self, inclusion: str, witness):
        self.inclusion = inclusion
        self.witness = tuple(witness)
        super().__init__("%s fails on pair %s" % (inclusion, self.witness))


class NotASubalgebra(ValidationFailure):
    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__("span is not closed under the bracket; witness pair %s" % (self.witness,))


class DegreeZero(ValidationFailure):
    """Insertion into a degree-0 cochain is undefined."""


class NotHorizontal(ValidationFailure):
    """Cochain has a nonzero insertion against the subalgebra being factored out."""


class NonTrivialCoefficients(ValidationFailure):
    """Operation only defined for the trivial one-dimensional module."""


class NotSemisimple(ValidationFailure):
    """Operation requires a nondegenerate Killing form."""


class NotInvariant(ValidationFailure):
    """Claimed invariant polynomial fails the adjoint-invariance check."""

    def __init__(self, name: str, witness):
        self.name = name
        self.witness = witness
        super().__init__("polynomial %s is not ad-invariant; witness %s" % (name, witness))


class UnknownGroup(ValidationFailure):
    def __init__(self, name: str):
        self.name = name
        super().__init__("no builtin group named %r" % name)


class UnknownAlgebra(ValidationFailure):
    """No builtin compact-algebra model under the requested identifier."""

    def __init__(self, name: str):
        self.name = name
        super().__init__("no builtin compact algebra named %r" % name)


class AlgebraMismatch(ValidationFailure):
    """Two polynomial or cochain operands live over different algebras."""


class NotAMorphism(ValidationFailure):
    """Claimed inclusion map does not respect the brackets."""

    def __init__(self, witness):
        self.witness = tuple(witness)
        super().__init__("map fails to be a Lie morphism on basis pair %s" % (self.witness,))


class SizeLimit(ValidationFailure):
    """Exterior-basis blowup guard tripped."""

    def __init__(self, requested: int, limit: int):
        self.requested = requested
        self.limit = limit
        super().__init__(
            "cochain space dimension %d exceeds the guard %d "
            "(raise --max-exterior-dim to override)" % (requested, limit)
        )


class NczFailed(SymcohError):
    """Split assembly requested but the pair is not n.c.z. at some degree.

    Not a validation failure: the caller is expected to catch this and fall
    back to the long-exact-sequence report.
    """

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__("pair fails the n.c.z. condition at degree %d" % degree)


class UsageError(SymcohError):
    """Malformed CLI invocation (exit code 1, not 2)."""
