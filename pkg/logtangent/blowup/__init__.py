"""
Lattice calculus on the cubic surface obtained by blowing up six points of the
plane: intersections, the 27 lines, push-forwards, restrictions of logarithmic
sheaves to rational curves and the search for destabilizing line bundles.
"""

__all__ = [
    "PicClass",
    "LINE",
    "HYPERPLANE",
    "CANONICAL",
    "intersect",
    "genus",
    "slope_log",
    "lines27",
    "cremona",
    "conic_sum_identity",
    "ConicSumIdentity",
    "pushforward_blowup",
    "PushforwardRecord",
    "parse_class",
    "parse_class_list",
    "omega_restriction",
    "key_splitting_on_S",
    "cotangent_pair",
    "CurveFamily",
    "ConstraintRow",
    "Relation",
    "parse_constraint_rows",
    "Scenario",
    "ScenarioKind",
    "SupportAssumption",
    "parse_scenario",
    "restriction_bound",
    "restriction_table",
    "RestrictionTable",
    "slope_row",
    "CandidateSet",
    "ValueRow",
    "DEFAULT_BOX",
    "destabilizer_search",
    "enumerate_box",
    "GeneralPosition",
    "general_position",
    "MemberKind",
    "PencilMember",
    "classify_pencil_member",
]

from ._picard import PicClass
from ._picard import LINE
from ._picard import HYPERPLANE
from ._picard import CANONICAL
from ._picard import intersect
from ._picard import genus
from ._picard import slope_log
from ._picard import lines27
from ._picard import cremona
from ._picard import conic_sum_identity
from ._picard import ConicSumIdentity
from ._picard import pushforward_blowup
from ._picard import PushforwardRecord
from ._picard import parse_class
from ._picard import parse_class_list
from ._restriction import omega_restriction
from ._restriction import key_splitting_on_S
from ._restriction import cotangent_pair
from ._restriction import CurveFamily
from ._restriction import ConstraintRow
from ._restriction import Relation
from ._restriction import parse_constraint_rows
from ._restriction import Scenario
from ._restriction import ScenarioKind
from ._restriction import SupportAssumption
from ._restriction import parse_scenario
from ._restriction import restriction_bound
from ._restriction import restriction_table
from ._restriction import RestrictionTable
from ._restriction import slope_row
from ._search import CandidateSet
from ._search import ValueRow
from ._search import DEFAULT_BOX
from ._search import destabilizer_search
from ._search import enumerate_box
from ._pencil import GeneralPosition
from ._pencil import general_position
from ._pencil import MemberKind
from ._pencil import PencilMember
from ._pencil import classify_pencil_member
