"""Exact tangle calculus: rational and algebraic tangles, planar diagrams,
link determinants, quasi-alternating certificates, Montesinos forms,
Dehn-filling bookkeeping and Brunner presentations."""

from . import brunner, corpus, dehn, diagram, invariants, montesinos, quasialt, tangle, words
from .brunner import abelianization_order, brunner_presentation, coarse_family_presentation
from .corpus import CorpusSpec
from .dehn import Slope, family_report, montesinos_trick
from .diagram import PlanarDiagram, build_Tn, synthesize
from .invariants import IdentityViolation, det_pair, determinant, link_det
from .montesinos import MontesinosForm, augmented_form, reduced_form
from .quasialt import certify_family, check_certificate
from .tangle import TangleFraction, fraction_of, parse_expr, rational, to_text

__version__ = "0.1.0"

__all__ = [
    "brunner", "corpus", "dehn", "diagram", "invariants", "montesinos", "quasialt", "tangle", "words",
    "abelianization_order", "brunner_presentation", "coarse_family_presentation", "CorpusSpec",
    "Slope", "family_report", "montesinos_trick", "PlanarDiagram", "build_Tn", "synthesize",
    "IdentityViolation", "det_pair", "determinant", "link_det", "MontesinosForm", "augmented_form",
    "reduced_form", "certify_family", "check_certificate", "TangleFraction", "fraction_of",
    "parse_expr", "rational", "to_text",
]
