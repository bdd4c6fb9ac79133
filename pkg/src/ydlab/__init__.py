"""Exact verification of graded Yetter-Drinfeld objects over finite-dimensional bialgebras."""

from .bimonad import (AutFusion, AutGroup, Bimonad, LambdaFamily, ZeroAutomorphism, braided_lambda,
                      group_closure, lambda_from_tau, verify_bimonad, verify_lambda_consequences,
                      verify_zero_automorphism, zero_automorphism)
from .errors import (ClosureTooLarge, DimensionMismatch, EmptyHom, GradingMismatch, GroupMismatch,
                     IntegrityError, MalformedInput, NotInvertible, PreconditionFailed, UnknownCommand,
                     YDLabError)
from .exactmat import LinMap, compose, eq, flip, identity, kron
from .groupsys import FiniteGroup, FusionMap, GradedGroupSystem, verify_system_axioms
from .involution import (Character, GrouplikeElement, InvolutionPair, check_involution_pair, convolution,
                         convolution_inverse, iso_backward, iso_forward, make_pair, yd_from_tau_pair)
from .report import VerificationReport
from .workspace import Workspace, load_workspace
from .ydcat import (GradedYDObject, YDMorphism, apply_phi, build_yd_from_action_coaction, classify_grading,
                    compose_yd, twist_psi, verify_morphism, verify_yd)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
