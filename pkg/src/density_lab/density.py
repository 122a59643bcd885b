"""The density functionals: classical, window, Kahane (compact test sets),
finite-test-set, and chain densities, plus the translation witness and the
neighborhood-growth window construction.

Exact closed forms are used where the instance is fully periodic or has finite
support; everything else is reported as an Estimated schedule of exact finite-r
values, or as a certified Infinite. A brute-force inf-sup oracle over all
nonempty (C, V) pairs is available for small finite groups and doubles as the
acceptance oracle.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .config import DEFAULT_CAPS, DEFAULT_ESTIMATION, EstimationParams
from .errors import CapExceededError, PreconditionError, VerificationError
from .groups import FiniteAbelian, GroupSpec, RealLine, SigmaFiniteChain, ZLattice
from .intervals import IntervalUnion
from .rational import Infinite, is_infinite, rat, rat_str
from .sets import (
    Counting,
    CylinderSet,
    DiracAtZero,
    ExplicitFinite,
    HaarTrace,
    MeasureSum,
    PeriodicDiscrete,
    WeightedDiracs,
)
from .windows import (
    real_layers,
    real_shift_sup,
    real_threshold_witness,
    zd_layers,
    zd_set_window,
    zd_shift_sup,
)

# ---------------------------------------------------------------------------
# window shapes


@dataclass(frozen=True)
class CenteredCube:
    """Cubes of side 2r+1 in Z^d; the reference window for lattices."""


@dataclass(frozen=True)
class IntervalWindow:
    """Intervals [x-r, x+r] on the line, normalizing by 2r."""


@dataclass(frozen=True)
class CustomK:
    """A unit-measure interval union K, scanned as rK + x and normalized by r."""

    shape: IntervalUnion

    def __post_init__(self):
        if self.shape.length != 1:
            raise PreconditionError("custom window shapes must have total length 1")


WindowShape = Union[CenteredCube, IntervalWindow, CustomK]


def _scan_window(K: WindowShape, r: Fraction):
    """(window object, normalizer |rK|) for the scan radius r."""
    if isinstance(K, CenteredCube):
        if not isinstance(r, int):
            if isinstance(r, Fraction) and r.denominator == 1:
                r = int(r)
            else:
                raise PreconditionError("cube radii must be integers")
        return r, None
    r = rat(r)
    if isinstance(K, IntervalWindow):
        return IntervalUnion.closed(-r, r), 2 * r
    return K.shape.scale(r), r


def default_window(group: GroupSpec) -> WindowShape:
    if isinstance(group, ZLattice):
        return CenteredCube()
    if isinstance(group, RealLine):
        return IntervalWindow()
    raise PreconditionError("window scans run on Z^d or the real line")


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Estimated:
    """The literal computed finite-r data; converged iff the last two sup
    ratios differ relatively by less than the stated tolerance."""

    schedule: tuple[tuple[Fraction, Fraction], ...]
    extrapolated: float
    converged: bool
    tol: Fraction

    @property
    def last(self) -> Fraction:
        return self.schedule[-1][1]


@dataclass(frozen=True)
class Witness:
    """Re-evaluatable evidence for a reported value."""

    kind: str
    data: tuple


@dataclass(frozen=True)
class DensityReport:
    notion: str
    value: Union[Fraction, Infinite, Estimated]
    method: str  # closed-form | window-scan | brute-force | certified-lower-bound
    witness: Optional[Witness] = None
    annotations: tuple[str, ...] = ()
    settings: tuple[tuple[str, str], ...] = ()

    @property
    def exact(self) -> Fraction:
        if isinstance(self.value, Fraction):
            return self.value
        raise PreconditionError(f"report value is not an exact rational: {self.value!r}")

    @property
    def is_infinite(self) -> bool:
        return is_infinite(self.value)


def _settings(params: EstimationParams) -> tuple[tuple[str, str], ...]:
    return (
        ("tol", rat_str(params.tol)),
        ("r0", rat_str(params.r0)),
        ("k_max", str(params.k_max)),
    )


# ---------------------------------------------------------------------------
# exact closed forms


def measure_total_finite(nu, group: FiniteAbelian) -> Fraction:
    """Total mass on a finite group."""
    if isinstance(nu, MeasureSum):
        return sum((measure_total_finite(c, group) for c in nu.components), Fraction(0))
    if isinstance(nu, DiracAtZero):
        return Fraction(1)
    if isinstance(nu, WeightedDiracs):
        return sum((w for _, w in nu.atoms), Fraction(0))
    if isinstance(nu, (Counting, HaarTrace)):
        s = nu.of
        if isinstance(s, ExplicitFinite):
            for e in s.elements:
                group.check(e)
            return Fraction(len(s.elements))
        raise PreconditionError("finite-group measures must have explicit finite support")
    raise PreconditionError(f"unsupported measure: {type(nu).__name__}")


def periodic_mean_density(nu, group: GroupSpec) -> Optional[Union[Fraction, Infinite]]:
    """Exact asymptotic mean when every layer is periodic (the closed form),
    0 when all layers have finite support, Infinite with a certificate for
    accumulating counting measures; None when only estimation applies."""
    if isinstance(group, RealLine):
        layers, acc = real_layers(nu)
        if acc:
            return Infinite(("accumulation", acc[0]))
        periodic = [l for l in layers if l.period is not None]
        finite = [l for l in layers if l.period is None]
        if periodic and finite:
            return None
        if not periodic:
            return Fraction(0)
        total = Fraction(0)
        for l in periodic:
            if hasattr(l, "atoms"):
                total += sum((w for _, w in l.atoms), Fraction(0)) / l.period
            else:
                total += l.periodic.mass / l.period
        return total
    if isinstance(group, ZLattice):
        layers = zd_layers(nu, group)
        periodic = [l for l in layers if l.period is not None]
        finite = [l for l in layers if l.period is None]
        if periodic and finite:
            return None
        if not periodic:
            return Fraction(0)
        total = Fraction(0)
        for l in periodic:
            cells = 1
            for m in l.period:
                cells *= m
            total += sum((w for _, w in l.atoms), Fraction(0)) / cells
        return total
    raise PreconditionError("closed forms run on Z^d or the real line")


# ---------------------------------------------------------------------------
# window profiles and the window density


def window_density_profile(nu, group: GroupSpec, K: WindowShape, radii):
    """Exact sup ratios (r, sup_x nu(rK+x) / |rK|, least maximizing x).

    The sup over shifts is computed by event-point enumeration: over one period
    for periodic instances, over the support's bounding box otherwise. Entries
    are Infinite when the window can trap an accumulation marker.
    """
    out = []
    for r in radii:
        if isinstance(group, ZLattice):
            if not isinstance(K, CenteredCube):
                raise PreconditionError("lattice scans use the centered-cube window")
            window, _ = _scan_window(K, r)
            scan = zd_shift_sup(nu, group, window)
            normalizer = Fraction((2 * window + 1) ** group.dimension)
        else:
            if isinstance(K, CenteredCube):
                raise PreconditionError("cube windows apply to lattices only")
            window, normalizer = _scan_window(K, r)
            scan = real_shift_sup(nu, window)
        if is_infinite(scan.value):
            out.append((rat(r), scan.value, scan.argmax))
        else:
            out.append((rat(r), scan.value / normalizer, scan.argmax))
    return out


def _geometric_radii(params: EstimationParams):
    return [params.r0 * (2**k) for k in range(params.k_max + 1)]


def _estimate(nu, group, K, params: EstimationParams):
    schedule = []
    prev = None
    converged = False
    for r in _geometric_radii(params):
        ((r_, ratio, _),) = window_density_profile(nu, group, K, [r])
        if is_infinite(ratio):
            return ratio
        schedule.append((rat(r_), ratio))
        if prev is not None:
            scale = max(abs(ratio), Fraction(1, 10**12))
            if abs(ratio - prev) / scale < params.tol:
                converged = True
                break
        prev = ratio
    return Estimated(
        schedule=tuple(schedule),
        extrapolated=float(schedule[-1][1]),
        converged=converged,
        tol=params.tol,
    )


def auud_window(
    nu,
    group: GroupSpec,
    K: Optional[WindowShape] = None,
    params: EstimationParams = DEFAULT_ESTIMATION,
    force_scan: bool = False,
) -> DensityReport:
    """Asymptotic uniform upper density through growing windows rK + x.

    Periodic instances get the exact closed form; otherwise the geometric
    schedule of exact sup ratios is reported with its convergence flag.
    """
    K = K or default_window(group)
    closed = periodic_mean_density(nu, group)
    if is_infinite(closed):
        return DensityReport(
            notion="window",
            value=closed,
            method="closed-form",
            annotations=("accumulating configuration: every positive-length window has infinite mass",),
            settings=_settings(params),
        )
    if closed is not None and not force_scan:
        annotation = (
            "fully periodic instance: exact mean mass per period"
            if closed != 0 or _has_periodic_layer(nu, group)
            else "finite support: density 0 in the limit"
        )
        return DensityReport(
            notion="window",
            value=closed,
            method="closed-form",
            annotations=(annotation,),
            settings=_settings(params),
        )
    est = _estimate(nu, group, K, params)
    if is_infinite(est):
        return DensityReport(
            notion="window", value=est, method="window-scan", settings=_settings(params)
        )
    r_last = est.schedule[-1][0]
    window, _ = _scan_window(K, r_last)
    if isinstance(group, ZLattice):
        argmax = zd_shift_sup(nu, group, window).argmax
    else:
        argmax = real_shift_sup(nu, window).argmax
    return DensityReport(
        notion="window",
        value=est,
        method="window-scan",
        witness=Witness("shift", (r_last, argmax, est.last)),
        settings=_settings(params),
    )


def _has_periodic_layer(nu, group) -> bool:
    if isinstance(group, RealLine):
        layers, _ = real_layers(nu)
    else:
        layers = zd_layers(nu, group)
    return any(l.period is not None for l in layers)


# ---------------------------------------------------------------------------
# classical upper density on Z


def classical_upper_density(A, group: ZLattice, n_max: int = 10_000) -> DensityReport:
    """limsup of #(A cap [1, n]) / n for subsets of Z (or N)."""
    if not isinstance(group, ZLattice) or group.dimension != 1:
        raise PreconditionError("the classical upper density runs on Z")
    if isinstance(A, PeriodicDiscrete):
        if A.dimension != 1:
            raise PreconditionError("the classical upper density runs on Z")
        value = Fraction(len(A.residues), A.period[0])
        return DensityReport(
            notion="classical",
            value=value,
            method="closed-form",
            annotations=("each residue class meets [1, n] in n/period + O(1) points",),
        )
    if isinstance(A, ExplicitFinite):
        pts = sorted(e[0] for e in A.elements)
        schedule = []
        n = 10
        while n <= n_max:
            count = sum(1 for p in pts if 1 <= p <= n)
            schedule.append((Fraction(n), Fraction(count, n)))
            n *= 10
        value = Estimated(
            schedule=tuple(schedule),
            extrapolated=0.0,
            converged=True,
            tol=DEFAULT_ESTIMATION.tol,
        )
        return DensityReport(
            notion="classical",
            value=value,
            method="window-scan",
            annotations=("finite set: the counts stop growing, the limit is 0",),
        )
    raise PreconditionError(f"unsupported set for the classical density: {type(A).__name__}")


# ---------------------------------------------------------------------------
# brute-force inf-sup oracle on small finite groups


def _finite_group_tables(group: FiniteAbelian):
    elems = group.elements()
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    translate = []
    for g in elems:
        perm = [index[group.add(e, g)] for e in elems]
        table = [0] * (1 << n)
        for mask in range(1 << n):
            low = mask & (-mask)
            if mask == 0:
                continue
            i = low.bit_length() - 1
            table[mask] = table[mask ^ low] | (1 << perm[i])
        translate.append(table)
    return elems, index, translate


def _point_masses(nu, group: FiniteAbelian, elems, index):
    masses = [Fraction(0)] * len(elems)
    def add(point, w):
        masses[index[group.check(point)]] += w
    def walk(m):
        if isinstance(m, MeasureSum):
            for c in m.components:
                walk(c)
        elif isinstance(m, DiracAtZero):
            add(group.zero(), Fraction(1))
        elif isinstance(m, WeightedDiracs):
            for p, w in m.atoms:
                add(p, w)
        elif isinstance(m, (Counting, HaarTrace)):
            s = m.of
            if not isinstance(s, ExplicitFinite):
                raise PreconditionError("finite-group measures must have explicit support")
            for e in s.elements:
                add(e, Fraction(1))
        else:
            raise PreconditionError(f"unsupported measure: {type(m).__name__}")
    walk(nu)
    return masses


def kahane_oracle_finite(nu, group: FiniteAbelian, cap: int = DEFAULT_CAPS.oracle_order):
    """Brute-force inf over nonempty C of sup over nonempty V of nu(V)/#(C+V).

    Enumerates every pair exactly; returns (value, witness C, witness V) where
    C attains the infimum and V the corresponding supremum.
    """
    n = group.order
    if n > cap:
        raise CapExceededError(f"group order {n} exceeds the oracle cap {cap}")
    if cap > DEFAULT_CAPS.oracle_warn_above and n > DEFAULT_CAPS.oracle_warn_above:
        warnings.warn(f"brute-force oracle on order {n}: ~4^{n} ratio evaluations")
    elems, index, translate = _finite_group_tables(group)
    masses = _point_masses(nu, group, elems, index)
    denom_lcm = 1
    for m in masses:
        denom_lcm = denom_lcm * m.denominator // _gcd(denom_lcm, m.denominator)
    scaled = [int(m * denom_lcm) for m in masses]
    size = 1 << n
    nu_of = [0] * size
    for mask in range(1, size):
        low = mask & (-mask)
        nu_of[mask] = nu_of[mask ^ low] + scaled[low.bit_length() - 1]
    best = None  # (num, den, C, V)
    for C in range(1, size):
        cv_card = _cv_cards(C, translate, size, n)
        sup = None
        for V in range(1, size):
            num = nu_of[V]
            den = cv_card[V]
            if sup is None or num * sup[1] > sup[0] * den:
                sup = (num, den, V)
        if best is None or sup[0] * best[1] < best[0] * sup[1]:
            best = (sup[0], sup[1], C, sup[2])
    value = Fraction(best[0], denom_lcm * best[1])
    witness_c = ExplicitFinite(tuple(elems[i] for i in _bits(best[2])))
    witness_v = ExplicitFinite(tuple(elems[i] for i in _bits(best[3])))
    return value, witness_c, witness_v


def _cv_cards(C, translate, size, n):
    gs = [g.bit_length() - 1 for g in _bit_values(C)]
    cards = [0] * size
    for V in range(1, size):
        u = 0
        for i in gs:
            u |= translate[i][V]
        cards[V] = u.bit_count()
    return cards


def _bit_values(mask):
    while mask:
        low = mask & (-mask)
        yield low
        mask ^= low


def _bits(mask):
    return [b.bit_length() - 1 for b in _bit_values(mask)]


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def oracle_counting_sweep(group: FiniteAbelian):
    """Verify, for EVERY subset A, that the brute-force inf-sup equals |A|/|G|.

    Returns the list of mismatches (empty on success) and the subset count.
    """
    n = group.order
    elems, index, translate = _finite_group_tables(group)
    size = 1 << n
    cv = [None] * size
    for C in range(1, size):
        cv[C] = _cv_cards(C, translate, size, n)
    mismatches = []
    vs = list(range(1, size))
    for A in range(size):
        av = [(A & V).bit_count() for V in range(size)]
        best_num, best_den = None, None
        for C in range(1, size):
            cards = cv[C]
            sn, sd = 0, 1
            for V in vs:
                num = av[V]
                den = cards[V]
                if num * sd > sn * den:
                    sn, sd = num, den
            if best_num is None or sn * best_den < best_num * sd:
                best_num, best_den = sn, sd
        got = Fraction(best_num, best_den) if best_den else Fraction(0)
        expect = Fraction(A.bit_count(), n)
        if got != expect:
            mismatches.append((group, A, got, expect))
    return mismatches, size


# ---------------------------------------------------------------------------
# the Kahane density (compact test sets) per group family


def kahane_density_finite_group(
    nu,
    group: FiniteAbelian,
    mode: str = "closed-form",
    cap: int = DEFAULT_CAPS.oracle_order,
) -> DensityReport:
    """On a finite group the inf-sup collapses to nu(G)/|G|: taking C = G
    forces every denominator to |G| and V = G attains the sup, while any C
    admits V = G. Oracle mode re-derives this by full enumeration."""
    if group.order == 0:
        raise PreconditionError("empty group")
    total = measure_total_finite(nu, group)
    closed = total / group.order
    if mode == "closed-form":
        return DensityReport(
            notion="kahane",
            value=closed,
            method="closed-form",
            annotations=("nu(G)/|G| on a finite group",),
        )
    if mode != "oracle":
        raise PreconditionError(f"unknown mode {mode!r}")
    value, wc, wv = kahane_oracle_finite(nu, group, cap=cap)
    if value != closed:
        raise VerificationError(
            "oracle disagrees with the closed form", counterexample=(group, nu, wc, wv)
        )
    return DensityReport(
        notion="kahane",
        value=value,
        method="brute-force",
        witness=Witness("pair", (wc, wv)),
        annotations=("exhaustive inf-sup over all nonempty (C, V) pairs",),
    )


def kahane_density(
    nu,
    group: GroupSpec,
    K: Optional[WindowShape] = None,
    params: EstimationParams = DEFAULT_ESTIMATION,
) -> DensityReport:
    """The compact-test-set density on Z^d or R, computed through its
    window-equivalent form."""
    report = auud_window(nu, group, K=K, params=params)
    return DensityReport(
        notion="kahane",
        value=report.value,
        method=report.method,
        witness=report.witness,
        annotations=report.annotations + ("window-equivalent form",),
        settings=report.settings,
    )


# ---------------------------------------------------------------------------
# the finite-test-set density


def _eta_schedule(max_exponent: int = 7):
    return tuple(
        (Fraction(1, 10**j), Fraction(10**j)) for j in range(max_exponent + 1)
    )


def delta_density(
    nu,
    group: GroupSpec,
    K: Optional[WindowShape] = None,
    params: EstimationParams = DEFAULT_ESTIMATION,
    mode: str = "closed-form",
    cap: int = DEFAULT_CAPS.oracle_order,
) -> DensityReport:
    """The density with the infimum restricted to finite test sets.

    On discrete groups finite sets are exactly the compact sets, so the value
    coincides with the Kahane density. On the real line any measure with an
    atom reports Infinite: shrinking V around the atom makes nu(V)/mu(F+V)
    at least w/(#F eta) for every finite F, with the eta schedule attached as
    the certificate. Atomless traces report the Kahane value as a certified
    lower bound.
    """
    if isinstance(group, FiniteAbelian):
        base = kahane_density_finite_group(nu, group, mode=mode, cap=cap)
        return DensityReport(
            notion="delta",
            value=base.value,
            method=base.method,
            witness=base.witness,
            annotations=base.annotations
            + ("finite test sets = compact test sets on a discrete group",),
        )
    if isinstance(group, (ZLattice, SigmaFiniteChain)):
        if isinstance(group, SigmaFiniteChain):
            raise PreconditionError("use hegyvari_density for chain instances")
        base = kahane_density(nu, group, K=K, params=params)
        return DensityReport(
            notion="delta",
            value=base.value,
            method=base.method,
            witness=base.witness,
            annotations=base.annotations
            + ("finite test sets = compact test sets on a discrete group",),
        )
    if isinstance(group, RealLine):
        layers, acc = real_layers(nu)
        atom = _first_atom(layers, acc)
        if atom is not None:
            point, weight = atom
            return DensityReport(
                notion="delta",
                value=Infinite(
                    (
                        "diverging-schedule",
                        point,
                        weight,
                        _eta_schedule(),
                        "nu(V)/mu(F+V) >= weight/(#F * eta) for V = [point-eta/2, point+eta/2]",
                    )
                ),
                method="certified-lower-bound",
                annotations=(
                    "an atom makes the finite-test-set density infinite on a non-discrete group",
                ),
            )
        base = kahane_density(nu, group, K=K, params=params)
        return DensityReport(
            notion="delta",
            value=base.value,
            method="certified-lower-bound",
            witness=base.witness,
            annotations=base.annotations
            + ("lower bound: the finite-test-set density dominates the compact-test-set density",),
        )
    raise PreconditionError(f"unsupported group: {type(group).__name__}")


def _first_atom(layers, acc):
    for l in layers:
        if hasattr(l, "atoms"):
            for p, w in l.atoms:
                if w > 0:
                    return p, w
    if acc:
        return acc[0].point, Fraction(1)
    return None


def delta_lower_bound_check(point, weight, eta: Fraction, test_set_size: int) -> Fraction:
    """Re-evaluatable certificate: the ratio bound weight/(#F * eta)."""
    if eta <= 0 or test_set_size < 1:
        raise PreconditionError("eta must be positive and the test set nonempty")
    return weight / (test_set_size * eta)


# ---------------------------------------------------------------------------
# chain density


def hegyvari_density(A, chain: SigmaFiniteChain, n_max: Optional[int] = None) -> DensityReport:
    """limsup of #(A cap H_n)/#H_n along the materialized chain.

    Cylinder sets have an exact limit (the ratio is constant beyond the
    cylinder depth); explicit finite sets have limit 0.
    """
    n_max = chain.depth if n_max is None else n_max
    if not (1 <= n_max <= chain.depth):
        raise CapExceededError(f"depth {n_max} outside the materialized chain")
    schedule = []
    if isinstance(A, CylinderSet):
        A.validate_for(chain)
        for n in range(1, n_max + 1):
            schedule.append(
                (Fraction(n), Fraction(A.count_in_subgroup(chain, n), chain.subgroup_order(n)))
            )
        if n_max >= A.depth:
            value = schedule[-1][1]
        else:
            value = Fraction(A.count_in_subgroup(chain, A.depth), chain.subgroup_order(A.depth))
        return DensityReport(
            notion="hegyvari",
            value=value,
            method="closed-form",
            annotations=(
                "cylinder set: the ratio is constant beyond the determining depth",
                "schedule " + ", ".join(f"H_{int(n)}: {rat_str(v)}" for n, v in schedule),
            ),
        )
    if isinstance(A, ExplicitFinite):
        for n in range(1, n_max + 1):
            count = sum(1 for e in A.elements if chain.in_subgroup(e, n))
            schedule.append((Fraction(n), Fraction(count, chain.subgroup_order(n))))
        return DensityReport(
            notion="hegyvari",
            value=Fraction(0),
            method="closed-form",
            annotations=(
                "finite set: the counts are bounded while #H_n grows, the limit is 0",
                "schedule " + ", ".join(f"H_{int(n)}: {rat_str(v)}" for n, v in schedule),
            ),
        )
    raise PreconditionError(f"unsupported chain set: {type(A).__name__}")


# ---------------------------------------------------------------------------
# translation witness


@dataclass(frozen=True)
class NotFound:
    scanned_sup: Fraction
    argmax: object


def translation_witness(nu, group: GroupSpec, W, gamma) -> Union[Fraction, tuple, NotFound]:
    """A shift x with nu(W + x) >= gamma * mu(W), or NotFound with the scanned sup.

    The scan terminates because the instance is periodic or has finite support;
    the returned x is the least event point reaching the threshold.
    """
    gamma = rat(gamma)
    if isinstance(group, RealLine):
        if not isinstance(W, IntervalUnion):
            raise PreconditionError("line windows are interval unions")
        threshold = gamma * W.length
        found, scan = real_threshold_witness(nu, W, threshold)
        if found is None:
            return NotFound(scan.value, scan.argmax)
        return found
    if isinstance(group, ZLattice):
        if not isinstance(W, ExplicitFinite):
            raise PreconditionError("lattice windows are explicit finite sets")
        threshold = gamma * len(W.elements)
        mass_at = zd_set_window(nu, group, W)
        for x in _lattice_witness_candidates(nu, group, W):
            if mass_at(x) >= threshold:
                return x
        scan = max(
            ((mass_at(x), x) for x in _lattice_witness_candidates(nu, group, W)),
            default=(Fraction(0), group.zero()),
        )
        return NotFound(scan[0], scan[1])
    raise PreconditionError(f"translation witness unsupported on {type(group).__name__}")


def _lattice_witness_candidates(nu, group: ZLattice, W):
    layers = zd_layers(nu, group)
    periods = [l.period for l in layers if l.period is not None]
    if periods:
        period = periods[0]
        for p in periods[1:]:
            period = tuple(_lcm_i(a, b) for a, b in zip(period, p))
        return list(itertools.product(*(range(m) for m in period)))
    points = [p for l in layers for p, _ in l.atoms]
    if not points:
        return [group.zero()]
    cands = set()
    for p in points:
        for w in W.elements:
            cands.add(tuple(a - b for a, b in zip(p, w)))
    return sorted(cands)


def _lcm_i(a, b):
    from math import gcd

    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# the neighborhood-growth window (compact set absorbed by a large symmetric window)


@dataclass(frozen=True)
class RudinWindow:
    """W = [0, L] with V = W - W = [-L, L] and mu(C + V) < (1 + eps) mu(V),
    verified exactly; L is the minimal positive integer achieving it."""

    L: int
    W: object
    V: object
    mu_V: Fraction
    mu_CV: Fraction
    epsilon: Fraction
    tried: tuple[int, ...]


def rudin_window(C, epsilon, group: GroupSpec) -> RudinWindow:
    """Find the minimal integer L so the symmetric window V = [-L, L] grows by
    a factor below 1 + epsilon when fattened by the bounded set C.

    Always solvable: on the line mu(C+V) <= 2L + diam(C), so any
    L > diam(C) / (2 epsilon) works; the search doubles then bisects.
    """
    epsilon = rat(epsilon)
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    if isinstance(group, RealLine):
        if not isinstance(C, IntervalUnion):
            raise PreconditionError("line test sets are interval unions")

        def check(L: int):
            V = IntervalUnion.closed(-L, L)
            mu_v = Fraction(2 * L)
            mu_cv = mu_v if C.is_empty else C.minkowski(V).length
            return mu_cv < (1 + epsilon) * mu_v, mu_v, mu_cv

        def build(L: int):
            return IntervalUnion.closed(0, L), IntervalUnion.closed(-L, L)

    elif isinstance(group, ZLattice) and group.dimension == 1:
        if not isinstance(C, ExplicitFinite):
            raise PreconditionError("lattice test sets are explicit finite sets")
        pts = tuple(e[0] for e in C.elements)

        def check(L: int):
            mu_v = Fraction(2 * L + 1)
            if not pts:
                return True, mu_v, mu_v
            pieces = IntervalUnion(tuple((Fraction(p - L), Fraction(p + L)) for p in pts))
            mu_cv = sum((int(b - a) + 1 for a, b in pieces.intervals), 0)
            return Fraction(mu_cv) < (1 + epsilon) * mu_v, mu_v, Fraction(mu_cv)

        def build(L: int):
            return (
                ExplicitFinite(tuple((i,) for i in range(L + 1))),
                ExplicitFinite(tuple((i,) for i in range(-L, L + 1))),
            )

    else:
        raise PreconditionError("the window construction runs on R or Z")

    tried = []
    L = 1
    ok, mu_v, mu_cv = check(L)
    tried.append(L)
    while not ok:
        L *= 2
        ok, mu_v, mu_cv = check(L)
        tried.append(L)
        if L > 1 << 62:
            raise VerificationError("window search diverged", counterexample=(C, epsilon))
    lo, hi = L // 2, L  # smallest failing known bound, current success
    while hi - lo > 1:
        mid = (lo + hi) // 2
        ok_mid, _, _ = check(mid)
        tried.append(mid)
        if ok_mid:
            hi = mid
        else:
            lo = mid
    ok, mu_v, mu_cv = check(hi)
    if not ok:
        raise VerificationError("window verification failed", counterexample=(C, epsilon, hi))
    W, V = build(hi)
    return RudinWindow(
        L=hi, W=W, V=V, mu_V=mu_v, mu_CV=mu_cv, epsilon=epsilon, tried=tuple(tried)
    )
