"""
Quivers with potential

Model types, the text DSL, cyclic derivatives, cuts and the reduced presentation, plus the
shipped model corpus.
"""

from quivers.corpus import corpus_names, corpus_path, cyclic_model, load_corpus, read_model_source
from quivers.dsl import parse_model, render_model, render_polynomial
from quivers.model import Arrow, NCPoly, PathTerm, QuiverModel
from quivers.potential import (
    CutCheck,
    ReducedPresentation,
    cut_degree,
    cyclic_derivative,
    euler_form,
    reduced_presentation,
    resolve_cut,
    validate_cut,
)

__all__ = [
    "corpus_names",
    "corpus_path",
    "cyclic_model",
    "load_corpus",
    "read_model_source",
    "parse_model",
    "render_model",
    "render_polynomial",
    "Arrow",
    "NCPoly",
    "PathTerm",
    "QuiverModel",
    "CutCheck",
    "ReducedPresentation",
    "cut_degree",
    "cyclic_derivative",
    "euler_form",
    "reduced_presentation",
    "resolve_cut",
    "validate_cut",
]
