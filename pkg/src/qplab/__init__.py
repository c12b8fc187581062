"""Exact tools for k-quasi-planar drawings.

Rational geometry and crossing detection, crossing-graph queries,
generalized Davenport-Schinzel pattern search, the sequence pipelines on
concrete drawings, bound evaluation, and small-case experiments.
"""
from .bounds import (FORMULAS, BoundValue, ConstantsLedger, bounds_table, c_k, crossing_heavy_audit,
                     evaluate_bound, recursion_audit, table_csv)
from .docio import dumps_document, load_drawing, parse_document, save_drawing, to_document
from .drawing import (Drawing, Edge, SimpleGraph, Vertex, bisection_width, check_bisection_inequality,
                      crossing_count, crossing_graph, is_k_quasiplanar, max_pairwise_crossing,
                      validate_drawing)
from .dsseq import (AckermannScale, contains_up, contains_up_down_up, inverse_ackermann, is_l_regular,
                    klazar_bound, longest_l_regular_subsequence, random_avoiding_sequence)
from .errors import (BudgetExhausted, CoincidentCrossing, DegenerateError, DocumentError, DuplicateX,
                     GeometryError, InvalidCurve, InvalidDrawing, InvalidK, MissingConstant,
                     NoCrossings, NoWitness, OrderViolation, OverlapError, QplabError, RetryBudget,
                     SizeLimit, TangencyError)
from .geometry import (CrossingPoint, Point, PolylineCurve, XMonotoneCurve, crossing_side,
                       curve_crossings, orient, segment_intersection)
from .kernels import BACKEND
from .lab import GeneratorSpec, convex_points, extremal_max_edges, generate, make_k_quasiplanar
from .pipeline import (arc_orders, arcs_from_curves, build_crossing_sequences, build_L_sequences,
                       check_forbidden_udu, check_forbidden_up, check_lemma_regular,
                       dilworth_chain_filter, dilworth_witness, heaviest_edge, vertical_split)

__version__ = "0.1.0"
