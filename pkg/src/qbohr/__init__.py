"""Slice regular power series over the quaternions and sharp Bohr-type inequalities."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bohr import (BohrParams, CoefficientClass, Monomial, UserSeries, bohr_sum, functional_K,
                   functional_L, functional_M, functional_N, s_star, sample_class, validate_class)
from .errors import ClassViolation, DomainError, NoWitnessError, ZeroDivisorError
from .extremals import (ExtremalSpec, Family, build, build_by_algebra, closed_form_value,
                        sharpness_witness)
from .harness import SweepTable, VerificationReport, Verdict, sweep, verify, verify_all
from .quaternion import Quaternion, slice_decompose
from .radii import (L_condition, M_m, Q_alpha_r, c_k, radius_classical, radius_deriv_starlike,
                    radius_Rm, radius_Rm_via_infimum, radius_Rstar, radius_starlike)
from .series import (QSeries, evaluate, regular_conjugate, regular_reciprocal, slice_derivative,
                     star_product, symmetrization, transform_tf)
