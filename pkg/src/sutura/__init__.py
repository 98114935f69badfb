"""Exact Alexander-polynomial and fibered-cone computations for sutured manifolds."""

from .complexes import PairComplex, QRanks, h0_pair, module_order, qf_homology_ranks, specialize
from .cones import (Decoration, FiberedCones, RationalCone, RationalConeSet, decoration_pairing,
                    fibered_cones, normal_cone, single_torus_report)
from .decomp_graph import (BLACK, GREEN, Edge, PruneCertificate, SuturedGraph, bridge_test,
                           class_equal, mv_certificate, prune_non_touching)
from .errors import *  # noqa: F401,F403
from .laurent import (LaurentPoly, RingHom, apply_hom, doteq, format_laurent, gcd_laurent,
                      newton_vertices, normalize, parse_laurent)
from .pd import braid_closure_pd, knot_pair_matrix, wirtinger_from_pd
from .presentation import (AbelianStructure, GroupPresentation, Word, abelianization,
                           alexander_matrix, fox_derivative)
from .problem import ProblemSpec, dump_problem, parse_problem
from .report import emit_report, run
from .torsion import (AlphaClass, ChiSupport, Verdict, chi_sfh_alpha, chi_support, extremal_spinc,
                      product_test, sutured_alexander)

__version__ = "0.1.0"
