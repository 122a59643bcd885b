"""Default parameters, echoed into every report for reproducibility."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class EstimationParams:
    """Geometric window schedule r0 * 2^k and relative convergence tolerance."""

    tol: Fraction = Fraction(1, 1000)
    r0: Fraction = Fraction(8)
    k_max: int = 12


@dataclass(frozen=True)
class Caps:
    oracle_order: int = 8          # brute-force inf-sup enumeration cap
    oracle_warn_above: int = 10    # runtime warning threshold when the cap is raised
    enumeration: int = 1 << 20     # finite-group element enumeration cap
    exact_cover_cells: int = 20    # exhaustive minimum-cover search cap


DEFAULT_ESTIMATION = EstimationParams()
DEFAULT_CAPS = Caps()
