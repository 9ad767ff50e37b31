"""Characteristic classes of degeneracy loci in complex cobordism.

Exact computations over ``Q[[CP^1], [CP^2], ...]``: the cobordism formal group
law, Gysin pushforwards along projective and Grassmann bundles, the classes
``Q_r``, ``P_r``, ``Phi_r`` and ``D_1``, and the Chern-Dold character.
"""
from .coeff_ring import CoeffPoly, augment, generator, parse_coeffpoly
from .graded_series import INF, DivisibilityError, GradedSeries, PrecisionError, Var
from .formal_group import FormalGroupLaw, apply_law, fgl, formal_inverse, formal_sum
from .space_models import BundleSpec, SpaceModel, line_bundle, parse_bundle, parse_space
from .pushforward import (grassmann_pushforward, quillen_pushforward,
                          trivial_proj_pushforward)
from .char_classes import (ClassResult, chern_u, d1_class, p_class, phi_classes, q_class,
                           universal_expansion, verify_sum_formula)
from .chern_dold import Genus, apply_genus, ch, todd_class

__all__ = [
    "CoeffPoly", "augment", "generator", "parse_coeffpoly",
    "INF", "DivisibilityError", "GradedSeries", "PrecisionError", "Var",
    "FormalGroupLaw", "apply_law", "fgl", "formal_inverse", "formal_sum",
    "BundleSpec", "SpaceModel", "line_bundle", "parse_bundle", "parse_space",
    "grassmann_pushforward", "quillen_pushforward", "trivial_proj_pushforward",
    "ClassResult", "chern_u", "d1_class", "p_class", "phi_classes", "q_class",
    "universal_expansion", "verify_sum_formula",
    "Genus", "apply_genus", "ch", "todd_class",
]
