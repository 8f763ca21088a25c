"""Exception hierarchy. Every check failure names the offending cell."""

from __future__ import annotations


class CategoryError(Exception):
    """Base class for every structural failure raised by this package."""


class MalformedSpec(CategoryError):
    """Unknown identifiers, missing table entries, duplicate definitions."""


class MissingComposite(CategoryError):
    def __init__(self, g, f):
        super().__init__(f"no composite recorded for {g} . {f}")
        self.pair = (g, f)


class NonAssociative(CategoryError):
    def __init__(self, h, g, f, left, right):
        super().__init__(
            f"associativity fails at ({h}, {g}, {f}): "
            f"{h} . ({g} . {f}) = {left} but ({h} . {g}) . {f} = {right}"
        )
        self.triple = (h, g, f)


class BadIdentity(CategoryError):
    def __init__(self, obj, message):
        super().__init__(f"identity at {obj}: {message}")
        self.obj = obj


class NotFunctorial(CategoryError):
    def __init__(self, functor, witness, message):
        super().__init__(f"{functor} is not functorial at {witness}: {message}")
        self.witness = witness


class NotNatural(CategoryError):
    def __init__(self, trans, witness, message):
        super().__init__(f"{trans} is not natural at {witness}: {message}")
        self.witness = witness


class ShapeMismatch(CategoryError):
    pass


class NotInvertible(CategoryError):
    def __init__(self, trans, obj):
        super().__init__(f"{trans} has no inverse component at {obj}")
        self.witness = obj


class CylinderViolation(CategoryError):
    def __init__(self, cell, obj):
        super().__init__(f"{cell} breaks the cylinder condition at {obj}")
        self.witness = obj


class UniversalityError(CategoryError):
    def __init__(self, message, triple, candidates):
        super().__init__(message)
        self.triple = triple
        self.candidates = list(candidates)


class NoWitness(UniversalityError):
    def __init__(self, triple, candidates=()):
        super().__init__(
            f"no universal witness for {triple}; candidates tried: {list(candidates)}",
            triple,
            candidates,
        )


class AmbiguousWitness(UniversalityError):
    def __init__(self, triple, candidates):
        super().__init__(
            f"{len(candidates)} universal witnesses for {triple}: {list(candidates)}",
            triple,
            candidates,
        )


class LawViolation(CategoryError):
    """A defining equation fails. ``law`` is the label of the equation."""

    def __init__(self, entity, law, witness, message=""):
        text = f"{entity}: law {law} fails at {witness}"
        if message:
            text += f" ({message})"
        super().__init__(text)
        self.law = law
        self.witness = witness


class NotAlgebraMorphism(CategoryError):
    def __init__(self, morphism, witness):
        super().__init__(f"{morphism} is not an algebra morphism; fails at {witness}")
        self.witness = witness


class SearchBudgetExceeded(CategoryError):
    def __init__(self, what, budget):
        super().__init__(f"search for {what} exceeded the budget of {budget} candidates")
        self.budget = budget


class MissingImageAlgebra(CategoryError):
    pass


class InternalConsistencyError(CategoryError):
    """A construction guaranteed to satisfy its laws did not. Signals a bug."""


class ParseError(MalformedSpec):
    def __init__(self, message, line=None, source=None):
        where = f"{source or '<input>'}:{line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class UnknownEntity(MalformedSpec):
    def __init__(self, name, kind=None):
        super().__init__(f"unknown {kind or 'entity'} {name!r}")
        self.entity = name
