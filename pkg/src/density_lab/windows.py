"""Exact window-mass evaluation and shift suprema.

Every supported measure decomposes into layers: weighted atoms (finite or
fully periodic) and Haar traces (finite interval unions or periodic patterns).
For a bounded closed window W, the shift function f(x) = nu(x + W) is then
upper semicontinuous and piecewise linear, with breakpoints only where a
window endpoint crosses an atom or a trace endpoint. Hence sup_x f is attained
at one of finitely many event points:

  x = s - w   for s an atom position or trace endpoint, w a window endpoint,

reduced into one period when every layer is periodic. Evaluating f exactly at
a superset of the event points is therefore sound: no candidate can exceed the
supremum, and the supremum is attained at a true event point. Perturbed
lattices mix periodic and finite layers; there the candidates are the events
inside the perturbation zone plus one clean far-field period.

Counting measures of configurations with an accumulation marker have infinite
mass on any window containing a one-sided neighborhood of the marked point;
such results are returned as a certified Infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Optional, Union

from .errors import PreconditionError
from .groups import GroupSpec, RealLine, ZLattice
from .intervals import IntervalUnion, PeriodicPattern
from .rational import Infinite, frac_lcm, rat
from .sets import (
    AccumulationPoint,
    Counting,
    DiracAtZero,
    ExplicitFinite,
    FinitePoints,
    HaarTrace,
    MeasureSum,
    PeriodicDiscrete,
    PeriodicPoints,
    PerturbedLattice,
    WeightedDiracs,
)

# ---------------------------------------------------------------------------
# layer decomposition (real line)


@dataclass(frozen=True)
class AtomLayer:
    period: Optional[Fraction]  # None for a finite layer
    atoms: tuple[tuple[Fraction, Fraction], ...]  # (position or residue, weight)


@dataclass(frozen=True)
class TraceLayer:
    period: Optional[Fraction]
    periodic: Optional[PeriodicPattern] = None
    finite: Optional[IntervalUnion] = None


RealLayer = Union[AtomLayer, TraceLayer]


def real_layers(nu) -> tuple[list[RealLayer], tuple[AccumulationPoint, ...]]:
    layers: list[RealLayer] = []
    acc: list[AccumulationPoint] = []
    _collect_real(nu, layers, acc)
    return layers, tuple(acc)


def _collect_real(nu, layers, acc):
    one = Fraction(1)
    if isinstance(nu, MeasureSum):
        for c in nu.components:
            _collect_real(c, layers, acc)
        return
    if isinstance(nu, DiracAtZero):
        layers.append(AtomLayer(None, ((Fraction(0), one),)))
        return
    if isinstance(nu, WeightedDiracs):
        if nu.atoms:
            layers.append(AtomLayer(None, tuple((rat(p), w) for p, w in nu.atoms)))
        return
    if isinstance(nu, Counting):
        s = nu.of
        if isinstance(s, FinitePoints):
            if s.points:
                layers.append(AtomLayer(None, tuple((p, one) for p in s.points)))
            acc.extend(s.accumulation)
            return
        if isinstance(s, PeriodicPoints):
            if s.residues:
                layers.append(AtomLayer(s.period, tuple((r, one) for r in s.residues)))
            return
        if isinstance(s, PerturbedLattice):
            layers.append(AtomLayer(s.step, ((Fraction(0), one),)))
            if s.extra:
                layers.append(AtomLayer(None, tuple((p, one) for p in s.extra)))
            if s.removed:
                layers.append(AtomLayer(None, tuple((p, -one) for p in s.removed)))
            acc.extend(s.accumulation)
            return
        if isinstance(s, ExplicitFinite):
            if s.elements:
                layers.append(AtomLayer(None, tuple((rat(p), one) for p in s.elements)))
            return
        raise PreconditionError(f"counting measure of {type(s).__name__} is not a line measure")
    if isinstance(nu, HaarTrace):
        s = nu.of
        if isinstance(s, IntervalUnion):
            if not s.is_empty:
                layers.append(TraceLayer(None, finite=s))
            return
        if isinstance(s, PeriodicPattern):
            if not s.pattern.is_empty:
                layers.append(TraceLayer(s.period, periodic=s))
            return
        if isinstance(s, (FinitePoints, PeriodicPoints, ExplicitFinite)):
            return  # Lebesgue-null support, the zero measure
        raise PreconditionError(f"Haar trace of {type(s).__name__} is not a line measure")
    raise PreconditionError(f"unsupported measure: {type(nu).__name__}")


def _finite_atom_index(layer: AtomLayer):
    """Sorted positions with prefix weight sums, for O(log n) interval mass."""
    atoms = sorted(layer.atoms)
    positions = [p for p, _ in atoms]
    prefix = [Fraction(0)]
    for _, w in atoms:
        prefix.append(prefix[-1] + w)
    return positions, prefix


def _layer_mass(layer: RealLayer, window: IntervalUnion, finite_index=None) -> Fraction:
    total = Fraction(0)
    if isinstance(layer, AtomLayer):
        if layer.period is None:
            import bisect

            positions, prefix = (
                finite_index if finite_index is not None else _finite_atom_index(layer)
            )
            for a, b in window.intervals:
                lo = bisect.bisect_left(positions, a)
                hi = bisect.bisect_right(positions, b)
                total += prefix[hi] - prefix[lo]
        else:
            period = layer.period
            for a, b in window.intervals:
                for res, w in layer.atoms:
                    k_lo = ceil((a - res) / period)
                    k_hi = floor((b - res) / period)
                    if k_hi >= k_lo:
                        total += w * (k_hi - k_lo + 1)
        return total
    if layer.period is None:
        return layer.finite.intersect(window).length
    for a, b in window.intervals:
        total += layer.periodic.mass_on(a, b)
    return total


def _accumulation_hit(acc, window: IntervalUnion):
    for ap in acc:
        for a, b in window.intervals:
            if b <= a:
                continue
            above = a <= ap.point < b
            below = a < ap.point <= b
            if (
                (ap.side == "above" and above)
                or (ap.side == "below" and below)
                or (ap.side == "both" and (above or below))
            ):
                return ap
    return None


def _make_evaluator(layers):
    """f(window) = total mass, with finite atom layers indexed once."""
    indexed = [
        (l, _finite_atom_index(l) if isinstance(l, AtomLayer) and l.period is None else None)
        for l in layers
    ]

    def evaluate(window: IntervalUnion) -> Fraction:
        return sum(
            (_layer_mass(l, window, finite_index=idx) for l, idx in indexed), Fraction(0)
        )

    return evaluate


def real_mass(nu, window: IntervalUnion):
    """Exact nu(window); certified Infinite when the window traps an
    accumulation marker on its accumulating side."""
    layers, acc = real_layers(nu)
    hit = _accumulation_hit(acc, window)
    if hit is not None:
        return Infinite(("accumulation", hit, window))
    return sum((_layer_mass(l, window) for l in layers), Fraction(0))


def _base_positions(layer: RealLayer) -> list[Fraction]:
    if isinstance(layer, AtomLayer):
        return [p for p, _ in layer.atoms]
    if layer.period is None:
        return layer.finite.endpoints()
    return layer.periodic.pattern.endpoints()


@dataclass(frozen=True)
class ShiftScan:
    value: object  # Fraction or Infinite
    argmax: Optional[Fraction]
    candidates: int


def _real_candidates(layers, window: IntervalUnion) -> list[Fraction]:
    """Finite candidate superset of the event points of x -> nu(x + W)."""
    ws = window.endpoints()
    periodic = [l for l in layers if l.period is not None]
    finite = [l for l in layers if l.period is None]
    cands: set[Fraction] = {Fraction(0)}
    if periodic and not finite:
        big = periodic[0].period
        for l in periodic[1:]:
            big = frac_lcm(big, l.period)
        for l in periodic:
            reps = int(big / l.period)
            for base in _base_positions(l):
                for w in ws:
                    e = (base - w) % l.period
                    for j in range(reps):
                        cands.add(e + j * l.period)
        return sorted(cands)
    if finite and not periodic:
        for l in finite:
            for base in _base_positions(l):
                for w in ws:
                    cands.add(base - w)
        return sorted(cands)
    if not layers:
        return [Fraction(0)]
    # mixed: event points inside the perturbation zone plus one clean period
    big = periodic[0].period
    for l in periodic[1:]:
        big = frac_lcm(big, l.period)
    support = [p for l in finite for p in _base_positions(l)]
    w_lo, w_hi = min(ws), max(ws)
    zone_lo = min(support) - w_hi - big
    zone_hi = max(support) - w_lo + big
    for l in finite:
        for base in _base_positions(l):
            for w in ws:
                cands.add(base - w)
    for l in periodic:
        for base in _base_positions(l):
            for w in ws:
                e = base - w
                k = ceil((zone_lo - e) / l.period)
                while e + k * l.period <= zone_hi:
                    cands.add(e + k * l.period)
                    k += 1
                # one clean far-field period, unaffected by the perturbation
                far = zone_hi + ((e - zone_hi) % big)
                reps = int(big / l.period)
                for j in range(reps):
                    cands.add(far + j * l.period)
    return sorted(cands)


def _trap_shift(ap: AccumulationPoint, window: IntervalUnion) -> Fraction:
    """A shift that traps the marker on its accumulating side."""
    a, b = next((a, b) for a, b in window.intervals if b > a)
    return ap.point - (b if ap.side == "below" else a)


def real_shift_sup(nu, window: IntervalUnion) -> ShiftScan:
    """sup over x of nu(x + window), with the least maximizing event point."""
    layers, acc = real_layers(nu)
    if acc and any(b > a for a, b in window.intervals):
        x = _trap_shift(acc[0], window)
        return ShiftScan(Infinite(("accumulation", acc[0], window.translate(x))), x, 0)
    cands = _real_candidates(layers, window)
    evaluate = _make_evaluator(layers)
    best = None
    best_x = None
    for x in cands:
        v = evaluate(window.translate(x))
        if best is None or v > best:
            best, best_x = v, x
    return ShiftScan(best if best is not None else Fraction(0), best_x, len(cands))


def real_threshold_witness(nu, window: IntervalUnion, threshold: Fraction):
    """Least event point x with nu(x + window) >= threshold, else None plus scan data."""
    layers, acc = real_layers(nu)
    if acc and any(b > a for a, b in window.intervals):
        return _trap_shift(acc[0], window), real_shift_sup(nu, window)
    cands = _real_candidates(layers, window)
    evaluate = _make_evaluator(layers)
    best = None
    best_x = None
    found = None
    for x in cands:
        v = evaluate(window.translate(x))
        if found is None and v >= threshold:
            found = x
        if best is None or v > best:
            best, best_x = v, x
    return found, ShiftScan(best if best is not None else Fraction(0), best_x, len(cands))


# ---------------------------------------------------------------------------
# discrete (Z^d) engine


@dataclass(frozen=True)
class DiscreteAtomLayer:
    period: Optional[tuple[int, ...]]
    atoms: tuple[tuple[tuple[int, ...], Fraction], ...]


def zd_layers(nu, group: ZLattice) -> list[DiscreteAtomLayer]:
    layers: list[DiscreteAtomLayer] = []
    _collect_zd(nu, group, layers)
    return layers


def _collect_zd(nu, group, layers):
    one = Fraction(1)
    if isinstance(nu, MeasureSum):
        for c in nu.components:
            _collect_zd(c, group, layers)
        return
    if isinstance(nu, DiracAtZero):
        layers.append(DiscreteAtomLayer(None, ((group.zero(), one),)))
        return
    if isinstance(nu, WeightedDiracs):
        if nu.atoms:
            layers.append(
                DiscreteAtomLayer(None, tuple((group.check(p), w) for p, w in nu.atoms))
            )
        return
    if isinstance(nu, (Counting, HaarTrace)):
        s = nu.of
        if isinstance(s, ExplicitFinite):
            if s.elements:
                layers.append(
                    DiscreteAtomLayer(None, tuple((group.check(p), one) for p in s.elements))
                )
            return
        if isinstance(s, PeriodicDiscrete):
            if s.residues:
                layers.append(DiscreteAtomLayer(s.period, tuple((r, one) for r in s.residues)))
            return
        raise PreconditionError(
            f"{type(nu).__name__} of {type(s).__name__} is not a lattice measure"
        )
    raise PreconditionError(f"unsupported measure: {type(nu).__name__}")


def _zd_mass_at(layers, x: tuple[int, ...], r: int) -> Fraction:
    total = Fraction(0)
    for layer in layers:
        if layer.period is None:
            for p, w in layer.atoms:
                if all(abs(c - xc) <= r for c, xc in zip(p, x)):
                    total += w
        else:
            for res, w in layer.atoms:
                count = 1
                for xc, rc, m in zip(x, res, layer.period):
                    k_lo = ceil(Fraction(xc - r - rc, m))
                    k_hi = floor(Fraction(xc + r - rc, m))
                    count *= max(0, k_hi - k_lo + 1)
                total += w * count
    return total


def zd_mass(nu, group: ZLattice, x, r: int) -> Fraction:
    """nu over the cube of side 2r+1 centered at x."""
    x = group.check(x)
    return _zd_mass_at(zd_layers(nu, group), x, r)


def zd_shift_sup(nu, group: ZLattice, r: int) -> ShiftScan:
    """sup over integer centers x of the cube mass, least maximizer first."""
    layers = zd_layers(nu, group)
    d = group.dimension
    if not layers:
        return ShiftScan(Fraction(0), group.zero(), 1)
    periodic = [l for l in layers if l.period is not None]
    finite = [l for l in layers if l.period is None]
    import itertools

    if periodic and not finite:
        period = periodic[0].period
        for l in periodic[1:]:
            period = tuple(_lcm(a, b) for a, b in zip(period, l.period))
        cands = itertools.product(*(range(m) for m in period))
    elif finite and not periodic:
        per_coord = [
            sorted({p[i] - r for l in finite for p, _ in l.atoms} | {0}) for i in range(d)
        ]
        cands = itertools.product(*per_coord)
    else:
        if d != 1:
            raise PreconditionError("mixed periodic and finite lattice layers need d = 1")
        period = 1
        for l in periodic:
            period = _lcm(period, l.period[0])
        support = [p[0] for l in finite for p, _ in l.atoms]
        lo = min(support) - r - period
        hi = max(support) + r + period
        cs = set(range(lo, hi + period + 1))
        cands = ((c,) for c in sorted(cs))
    best = None
    best_x = None
    for x in cands:
        v = _zd_mass_at(layers, x, r)
        if best is None or v > best:
            best, best_x = v, x
    return ShiftScan(best, best_x, 0)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def zd_set_window(nu, group: ZLattice, window: ExplicitFinite):
    """nu evaluated on translates of a finite set: the map x -> nu(window + x)."""
    layers = zd_layers(nu, group)

    def mass_at(x):
        x = group.check(x)
        total = Fraction(0)
        for w in window.elements:
            pt = group.add(w, x)
            for layer in layers:
                if layer.period is None:
                    for p, wt in layer.atoms:
                        if p == pt:
                            total += wt
                else:
                    key = tuple(c % m for c, m in zip(pt, layer.period))
                    for res, wt in layer.atoms:
                        if res == key:
                            total += wt
        return total

    return mass_at


# ---------------------------------------------------------------------------
# shared dispatch helpers


def window_mass(nu, group: GroupSpec, x, window):
    """Exact nu(x + window).

    On the real line `window` is an IntervalUnion (or a rational radius r,
    meaning [x-r, x+r]); on Z^d it is an integer radius r, meaning the cube of
    side 2r+1 around x.
    """
    if isinstance(group, RealLine):
        if not isinstance(window, IntervalUnion):
            radius = rat(window)
            if radius < 0:
                raise PreconditionError("window radius must be nonnegative")
            window = IntervalUnion.closed(-radius, radius)
        return real_mass(nu, window.translate(rat(x)))
    if isinstance(group, ZLattice):
        if isinstance(window, int):
            return zd_mass(nu, group, x, window)
        raise PreconditionError("lattice windows are integer cube radii")
    raise PreconditionError(f"window_mass unsupported on {type(group).__name__}")
