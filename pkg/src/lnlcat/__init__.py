"""Finite law checkers for the sequence monads S, C and Q, colax colimits,
left-semi algebras and the linear/non-linear term calculus."""

from .fincat import CategoryView, FinCat, Functor, NatTransform, validate_category
from .lnlmonad import LIN, NONLIN, Q, Tag
from .report import CheckReport, LawViolation
from .seqmonads import C, S, SeqMorphism, check_monad_laws

__version__ = "0.1.0"
