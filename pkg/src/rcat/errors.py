"""Exception types shared across the package."""

from __future__ import annotations


class RcatError(Exception):
    """Base class for all package errors."""


class MalformedTable(RcatError):
    """Input data is structurally broken: bad indices, missing composites,
    composites with inconsistent endpoints, duplicate names."""


class UndefinedComposite(RcatError):
    """compose(g, f) requested with dom(g) != cod(f)."""


class UnknownMorphism(MalformedTable):
    """A morphism name or id that the category does not contain."""


class NotParallel(RcatError):
    """An operation on parallel morphisms got a non-parallel pair."""


class ShapeMismatch(RcatError):
    """Concrete tables with incompatible sizes (composition middle, matrix
    shapes, copair targets)."""


class MissingStructure(RcatError):
    """An operation needs structure (a coproduct, a product, a splitting)
    that the instance does not carry."""


class CapExceeded(RcatError):
    """A construction would exceed the morphism cap."""

    def __init__(self, required: int, cap: int):
        super().__init__(f"construction needs {required} morphisms, cap is {cap}")
        self.required = required
        self.cap = cap


class NoZero(MissingStructure):
    """No restriction zero is present or verifiable."""


class NoDecision(MissingStructure):
    """A required decision does not exist; carries the failing row index."""

    def __init__(self, row, message=""):
        super().__init__(message or f"no decision for row {row}")
        self.row = row


class MissingBinaryDecision(MissingStructure):
    """An induction step of the n-ary decision construction failed."""


class InvalidWitness(RcatError):
    """A matrix row witness fails its restriction-inverse invariant."""


class NoProducts(MissingStructure):
    """Ordinary products (or terminal) required but absent."""


class NotSplit(MissingStructure):
    """A required idempotent has no splitting in this category."""


class NoTotalLimit(MissingStructure):
    """The category of total maps lacks the limit the construction needs."""


class NotSeparable(RcatError):
    """The diagonal of the object has no restriction inverse, so the
    total-equalizer construction does not apply."""


class InvalidDistributiveData(RcatError):
    """Declared distributivity data fails its universal-property checks."""
