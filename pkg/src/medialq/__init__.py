"""Quandle coloring invariants, open-strand moves and claim verification."""

from .coloring import (
    EnhancedPoly,
    brute_force_colorings,
    count_colorings,
    enhanced_polynomial,
    enumerate_colorings,
)
from .diagram import Crossing, CrossingRelation, LinkDiagram, apply_reidemeister, crossing_relations, parse_diagram
from .quandle import (
    FMap,
    QuandleTable,
    alexander_quandle,
    build_quandle,
    dihedral_quandle,
    enumerate_quandles,
    fmap_apply,
    medial_report,
    tilde_report,
)
from .tangle import AppliedMove, OpenStrand, apply_move, check_theorem_5_1, random_lom, trivial_strand

__all__ = [
    "AppliedMove",
    "Crossing",
    "CrossingRelation",
    "EnhancedPoly",
    "FMap",
    "LinkDiagram",
    "OpenStrand",
    "QuandleTable",
    "alexander_quandle",
    "apply_move",
    "apply_reidemeister",
    "brute_force_colorings",
    "build_quandle",
    "check_theorem_5_1",
    "count_colorings",
    "crossing_relations",
    "dihedral_quandle",
    "enhanced_polynomial",
    "enumerate_colorings",
    "enumerate_quandles",
    "fmap_apply",
    "medial_report",
    "parse_diagram",
    "random_lom",
    "tilde_report",
    "trivial_strand",
]
