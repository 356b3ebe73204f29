"""Exact triangulations of free sums of point configurations."""

from .census import CountReport, ResourceAbort, count_up_to_symmetry
from .complex import Subcomplex, Triangulation, boundary, link, restriction, star
from .configuration import FreeSum, PointConfiguration, cross, dp, dp_minus, free_sum, interval
from .enumeration import brute_force_triangulations
from .io import format_points, format_triangulation, parse_points, parse_triangulation, parse_triangulations
from .placing import placing_triangulation
from .regularity import is_regular
from .stabbing import StabbingPoset, build_stabbing_poset, stabbing_compare_lp, stabbing_compare_tree
from .starballs import StarBallPoset, enumerate_star_balls, is_strictly_star_shaped
from .sumtri import SumTriangulation, construct_sum_triangulation, decompose, origin_part, split_cell
from .symmetry import SymmetryGroup, automorphism_group, canonical_form
from .verify import verify_triangulation
from .webs import WebOfStars, complement_transpose, enumerate_proper_psum_webs

__all__ = [
    "CountReport", "FreeSum", "PointConfiguration", "ResourceAbort", "StabbingPoset", "StarBallPoset",
    "Subcomplex", "SumTriangulation", "SymmetryGroup", "Triangulation", "WebOfStars",
    "automorphism_group", "boundary", "brute_force_triangulations", "build_stabbing_poset",
    "canonical_form", "complement_transpose", "construct_sum_triangulation", "count_up_to_symmetry",
    "cross", "decompose", "dp", "dp_minus", "enumerate_proper_psum_webs", "enumerate_star_balls",
    "format_points", "format_triangulation", "free_sum", "interval", "is_regular",
    "is_strictly_star_shaped", "link", "origin_part", "parse_points", "parse_triangulation",
    "parse_triangulations", "placing_triangulation", "restriction", "split_cell", "stabbing_compare_lp",
    "stabbing_compare_tree", "star", "verify_triangulation",
]
