"""Decision procedures and computable models for set- and class-theoretic mereology."""

from .formula import TheoryMode, free_variables, parse, render
from .qe import decide, equivalent, qe_normal_form

__all__ = ["TheoryMode", "decide", "equivalent", "free_variables", "parse", "qe_normal_form", "render"]
__version__ = "0.1.0"
