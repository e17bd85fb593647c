"""NCCC-graphs of finite groups: construction, spectra, energies and closed forms."""

from .analysis import AnalysisRecord, analyze, default_sweep_specs, run_sweep
from .classify import (
    energy_classification,
    energy_ordering,
    integrality_predicates,
    perfect_square_predicates,
)
from .closed_form import ClosedFormResult, cm_polys, family_closed_form, spectra_d2m_quotient, spectra_pp_quotient
from .graphs import Graph, MultipartiteShape, build_ccc, build_nccc, complement, detect_multipartite
from .groups import FamilySpec, build_group, center, central_quotient_kind, conjugacy_classes, load_table_json
from .kernels import BACKEND
from .spectra import CharPoly, Spectrum, char_poly_exact, energies, graph_spectra, integer_root_split
from .surds import Surd

__version__ = "0.1.0"

__all__ = [
    "AnalysisRecord",
    "BACKEND",
    "CharPoly",
    "ClosedFormResult",
    "FamilySpec",
    "Graph",
    "MultipartiteShape",
    "Spectrum",
    "Surd",
    "analyze",
    "build_ccc",
    "build_group",
    "build_nccc",
    "center",
    "central_quotient_kind",
    "char_poly_exact",
    "cm_polys",
    "complement",
    "conjugacy_classes",
    "default_sweep_specs",
    "detect_multipartite",
    "energies",
    "energy_classification",
    "energy_ordering",
    "family_closed_form",
    "graph_spectra",
    "integer_root_split",
    "integrality_predicates",
    "load_table_json",
    "perfect_square_predicates",
    "run_sweep",
    "spectra_d2m_quotient",
    "spectra_pp_quotient",
]
