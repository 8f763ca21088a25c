"""Universal arrows, extension-form monads and the 2-adjunction between them,
computed exhaustively over finite categories."""

from unimonad.errors import (
    AmbiguousWitness,
    BadIdentity,
    CategoryError,
    CylinderViolation,
    InternalConsistencyError,
    LawViolation,
    MalformedSpec,
    MissingComposite,
    MissingImageAlgebra,
    NoWitness,
    NonAssociative,
    NotAlgebraMorphism,
    NotFunctorial,
    NotInvertible,
    NotNatural,
    ParseError,
    SearchBudgetExceeded,
    ShapeMismatch,
    UnknownEntity,
)
from unimonad.fincat import FinCategory, Functor, NatTrans, ObjectFunction

__version__ = "0.1.0"

__all__ = [
    "AmbiguousWitness",
    "BadIdentity",
    "CategoryError",
    "CylinderViolation",
    "FinCategory",
    "Functor",
    "InternalConsistencyError",
    "LawViolation",
    "MalformedSpec",
    "MissingComposite",
    "MissingImageAlgebra",
    "NatTrans",
    "NoWitness",
    "NonAssociative",
    "NotAlgebraMorphism",
    "NotFunctorial",
    "NotInvertible",
    "NotNatural",
    "ObjectFunction",
    "ParseError",
    "SearchBudgetExceeded",
    "ShapeMismatch",
    "UnknownEntity",
]
