__version__ = "2026.10.0"

from .cyclo import CycNum
from .errors import BudgetExceeded, TwistbraidError, ValidationError, VerificationFailure
from .groups import BaseAlgebra, Bihomomorphism, FiniteGroup, validate_bihom
from .search import Ansatz, dedup_by_symmetry, enumerate_solutions
from .session import Session
from .tower import BratteliDiagram, FusionRing, bratteli_A, bratteli_C, compare_towers, fusion_ring_D
from .ttp import TTPAlgebra
from .ybo import YBOCandidate, braid_check, verify
