"""
arrduality - duality checks for arrangement complements.

Exact, desk-scale computations on complements of hyperplane, toric and
orbit-configuration arrangements:
- Intersection posets, Moebius values and Poincare polynomials
- Building sets, nested set complexes and meridian classes
- Salvetti complexes and rank-1 twisted Betti numbers over GF(p)
- Propagation and generic-vanishing checks on characteristic varieties
- Layer posets of toric arrangements and orbit configuration strata
"""

__version__ = "0.1.0"

from .arrangement import Arrangement, Hyperplane, build_flat_poset, whitney_poincare
from .charvar import SweepOptions, check_generic_vanishing, check_propagation
from .config import RunConfig
from .exceptions import ArrDualityError, ConfigurationError, ParseError
from .orbitconfig import OrbitConfigSpec, classify_duality
from .parsing import parse_arrangement, parse_toric
from .salvetti import Character, model_for, twisted_betti
from .toric import ToricArrangement, ToricHypersurface, layer_poset

__all__ = [
    "Arrangement",
    "Hyperplane",
    "build_flat_poset",
    "whitney_poincare",
    "SweepOptions",
    "check_generic_vanishing",
    "check_propagation",
    "RunConfig",
    "ArrDualityError",
    "ConfigurationError",
    "ParseError",
    "OrbitConfigSpec",
    "classify_duality",
    "parse_arrangement",
    "parse_toric",
    "Character",
    "model_for",
    "twisted_betti",
    "ToricArrangement",
    "ToricHypersurface",
    "layer_poset",
]
