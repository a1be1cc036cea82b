"""Mod-2 characteristic numbers of Grassmannians and their bordism independence."""

from .gf2poly import Gf2Poly, Monomial, monomial
from .flag import FlagContext
from .grassmann import Field, GrassmannianDesc, SwVector, bounds, nu, partitions, real
from .independence import Gf2Matrix, enumerate_gd, gf2_rank, verify_theorem

__all__ = [
    "Field",
    "FlagContext",
    "Gf2Matrix",
    "Gf2Poly",
    "GrassmannianDesc",
    "Monomial",
    "SwVector",
    "bounds",
    "enumerate_gd",
    "gf2_rank",
    "monomial",
    "nu",
    "partitions",
    "real",
    "verify_theorem",
]

__version__ = "0.1.0"
