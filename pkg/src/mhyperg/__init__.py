"""Jack polynomials, hypergeometric series of matrix argument, and the
Laguerre, Jacobi and Hermite families built on them."""

from .partitions import Partition, gen_pochhammer, rho
from .jack import binom, jack, jack_power, jstar_at_ones, principal_spec
from .hyper import HyperParams, Truncation, pfq, pfq_two, exp_kernel
from .ortho import OmegaExpansion, hermite, jacobi, jacobi_c, laguerre

__version__ = "0.1.0"

__all__ = [
    "Partition", "gen_pochhammer", "rho",
    "binom", "jack", "jack_power", "jstar_at_ones", "principal_spec",
    "HyperParams", "Truncation", "pfq", "pfq_two", "exp_kernel",
    "OmegaExpansion", "hermite", "jacobi", "jacobi_c", "laguerre",
]
