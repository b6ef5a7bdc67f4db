"""altrace: exact traces of Hecke times Atkin-Lehner operators on newform
spaces, with closed-form eigenspace dimension differences, Hurwitz class
number machinery, quadratic-twist bookkeeping, and murmuration scans.

Everything upstream of the final float division in the scan averages is
exact integer or rational arithmetic.
"""

from .arith import FactoredInt, factor, is_prime, is_squarefree, kronecker, mobius
from .classnum import alpha1, alpha2, hprime, hurwitz, hurwitz_oracle
from .murmur import FamilySpec, MurmurationPoint, parse_family, scan_WQ, scan_eigenspace
from .signs import DeltaResult, delta, dim_new, eigenspace_dims, equidistribution_predicate
from .trace import t_full, t_full_fricke, t_new, t_new_level, t_new_squarefree
from .twist import TwistCharacter, classify_local_types, quadtwist_bijection

__version__ = "0.1.0"

__all__ = [
    "FactoredInt",
    "factor",
    "is_prime",
    "is_squarefree",
    "kronecker",
    "mobius",
    "alpha1",
    "alpha2",
    "hprime",
    "hurwitz",
    "hurwitz_oracle",
    "FamilySpec",
    "MurmurationPoint",
    "parse_family",
    "scan_WQ",
    "scan_eigenspace",
    "DeltaResult",
    "delta",
    "dim_new",
    "eigenspace_dims",
    "equidistribution_predicate",
    "t_full",
    "t_full_fricke",
    "t_new",
    "t_new_level",
    "t_new_squarefree",
    "TwistCharacter",
    "classify_local_types",
    "quadtwist_bijection",
    "__version__",
]
