"""Exact graded commutative algebra over prime fields, with a registry of
homological bound and vanishing checks."""

from .kernel import AmbientRing, GroundField, KernelError, Polynomial, RingMismatch, UnsupportedInput
from .modules import GradedMap, GradedModule, Ideal, Morphism, QuotientRing

__version__ = "0.1.0"
