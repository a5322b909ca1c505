"""Exception hierarchy shared by all checkers and the CLI/service layer."""


class ConcheckError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class BoundaryMismatch(ConcheckError):
    """Two objects that should share a boundary (labels, order) do not."""


class LabelCollision(ConcheckError):
    """A tensor/concatenation would produce duplicate labels."""


class ExplosionError(ConcheckError):
    """An exhaustive enumeration would exceed its configured cap."""


class StochasticityError(ConcheckError):
    """A matrix fails the exact column-stochasticity requirement."""


class PreconditionViolated(ConcheckError):
    """A check was called on inputs outside its stated precondition."""


class UnsupportedStructure(ConcheckError):
    """The encoding does not support the requested operation."""


class NotARelaxation(ConcheckError):
    """Target constraint is not weaker than the current one."""


class UncertifiedPair(ConcheckError):
    """An unchecked pair reached an operation that requires a certificate."""


class UnsatisfiedConstraint(ConcheckError):
    """A morphism fails its declared constraint; carries a counter-witness.

    The CLI maps this one to exit code 1.
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness
