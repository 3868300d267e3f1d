from . import config
from . import blowup
from .config import RunConfig
from .config import OutputFormat
from ._errors import LogTangentError
from ._errors import ParseError
from ._errors import PreconditionError
from ._errors import VerificationError
from ._linalg import as_matrix
from ._linalg import rref
from ._linalg import rank
from ._linalg import nullspace
from ._linalg import solve
from ._linalg import determinant
from ._forms import Form
from ._forms import BinaryForm
from ._forms import PointP2
from ._forms import parse_form
from ._forms import parse_point
from ._forms import gradient
from ._syzygy import graded_map_matrix
from ._syzygy import SyzygyBasis
from ._syzygy import module_kernel
from ._syzygy import syzygies_up_to
from ._syzygy import in_module_span
from ._p1split import LineP2
from ._p1split import parse_line
from ._p1split import restrict_form
from ._p1split import SplittingType
from ._p1split import GradedMatrixP1
from ._p1split import restrict_matrix
from ._p1split import kernel_splitting
from ._p1split import cokernel_splitting
from ._p1split import coker_profile
from ._presentation import PresentationRole
from ._presentation import ChernPair
from ._presentation import GradedPresentation
from ._presentation import parse_presentation
from ._curves import PlaneCurve
from ._curves import PointedCurve
from ._curves import parse_curve
from ._curves import parse_pointed_curve
from ._curves import chern_generalized
from ._curves import logtangent_presentation
from ._curves import KeyRestriction
from ._curves import key_restriction_degrees
from ._arrangement import Arrangement
from ._arrangement import parse_arrangement
from ._arrangement import arrangement_chern
from ._arrangement import FreenessVerdict
from ._arrangement import freeness_certificate
from ._arrangement import arrangement_presentation
from ._jumping import LineVerdict
from ._jumping import jumping_test
from ._jumping import JumpingReport
from ._jumping import build_jumping_report
from ._jumping import PencilLines
from ._jumping import certify_pencil
from ._generalized import ideal_of_points
from ._generalized import hilbert_burch_matrix
from ._generalized import generalized_log_presentation
from ._generalized import steiner_conic_points
from ._generalized import fixed_steiner_matrix
from ._generalized import tangent_line
from ._generalized import tangent_lines_through
from ._generalized import sextic_jumping_tangents
from ._generalized import jumping_set_pointed_conic
from ._cubic import CUBIC_MARKED_POINT
from ._cubic import cubic_point_matrix
from ._cubic import jumping_curve_cubic
from ._cubic import triangle_vertex_test
from ._cubic import jumping_report_cubic
from ._cubic import triple_tangent_pencil
