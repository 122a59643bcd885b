"""Difference-set structure: gap analysis on Z, syndetic verification over a
fundamental domain, and exact minimum translate covers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .config import DEFAULT_CAPS
from .errors import PreconditionError, VerificationError
from .groups import FiniteAbelian, GroupSpec, RealLine, ZLattice
from .intervals import IntervalUnion, PeriodicPattern
from .sets import (
    ExplicitFinite,
    FinitePoints,
    PeriodicDiscrete,
    PeriodicPoints,
    minkowski_sum,
)


# ---------------------------------------------------------------------------
# gap analysis


@dataclass(frozen=True)
class GapReport:
    gaps: tuple[int, ...]
    max_gap: int
    bounded: bool
    period: Optional[int]  # certifying period for periodic inputs
    positive_elements: tuple[int, ...]  # scanned evidence prefix


def gap_analysis(D, group: ZLattice = ZLattice(1), scan_limit: int = 200) -> GapReport:
    """Consecutive gaps d_{n+1} - d_n of the positive elements of D.

    For periodic D the maximal gap is exact (the largest circular gap of the
    residues), certified by the period; a two-period prefix is attached as
    evidence. Explicit sets are scanned as given, with no boundedness claim.
    """
    if isinstance(D, PeriodicDiscrete):
        if D.dimension != 1:
            raise PreconditionError("gap analysis runs on Z")
        m = D.period[0]
        residues = sorted(D.line_residues())
        if not residues:
            raise PreconditionError("empty positive part")
        circular = [b - a for a, b in zip(residues, residues[1:])]
        circular.append(residues[0] + m - residues[-1])
        positives = [r + k * m for k in range(0, 3) for r in residues]
        positives = sorted(p for p in positives if p > 0)[: scan_limit]
        gaps = tuple(b - a for a, b in zip(positives, positives[1:]))
        return GapReport(
            gaps=gaps,
            max_gap=max(circular),
            bounded=True,
            period=m,
            positive_elements=tuple(positives),
        )
    if isinstance(D, ExplicitFinite):
        positives = sorted(e[0] for e in D.elements if e[0] > 0)
        if not positives:
            raise PreconditionError("empty positive part")
        gaps = tuple(b - a for a, b in zip(positives, positives[1:]))
        return GapReport(
            gaps=gaps,
            max_gap=max(gaps) if gaps else 0,
            bounded=False,
            period=None,
            positive_elements=tuple(positives),
        )
    raise PreconditionError(f"unsupported gap-analysis input: {type(D).__name__}")


# ---------------------------------------------------------------------------
# syndetic verification


@dataclass(frozen=True)
class SyndeticCertificate:
    translate_set: object
    verified: bool
    covering_witness: object  # per-cell translate map, or the least uncovered point


def syndetic_check(S, K, group: GroupSpec) -> SyndeticCertificate:
    """Exact test that S + K covers the group, reduced to one fundamental domain.

    Periodic and finite-group instances check every cell and record a covering
    translate per cell; on failure the least uncovered cell is the witness. On
    the line, S + K must be periodic and is checked by interval covering.
    """
    if isinstance(group, FiniteAbelian):
        if not isinstance(S, ExplicitFinite) or not isinstance(K, ExplicitFinite):
            raise PreconditionError("finite-group syndetic checks need explicit sets")
        sset = set(S.elements)
        witness = {}
        for g in group.elements():
            hit = next((k for k in K.elements if group.add(g, group.negate(k)) in sset), None)
            if hit is None:
                return SyndeticCertificate(K, False, g)
            witness[g] = hit
        return SyndeticCertificate(K, True, witness)
    if isinstance(group, ZLattice):
        if not isinstance(S, PeriodicDiscrete) or not isinstance(K, ExplicitFinite):
            raise PreconditionError("lattice syndetic checks need periodic S and finite K")
        box = S.period
        witness = {}
        for g in itertools.product(*(range(m) for m in box)):
            hit = None
            for k in K.elements:
                shifted = tuple((c - kc) % m for c, kc, m in zip(g, k, box))
                if shifted in set(S.residues):
                    hit = k
                    break
            if hit is None:
                return SyndeticCertificate(K, False, g)
            witness[g] = hit
        return SyndeticCertificate(K, True, witness)
    if isinstance(group, RealLine):
        if isinstance(S, (PeriodicPoints, PeriodicPattern)):
            if isinstance(K, FinitePoints):
                K_obj = K
            elif isinstance(K, IntervalUnion):
                K_obj = K
            else:
                raise PreconditionError("line translate sets are points or interval unions")
            summed = minkowski_sum(S, K_obj, group)
            if isinstance(summed, PeriodicPattern):
                gaps = summed.pattern.complement_within(0, summed.period)
                if gaps.is_empty:
                    return SyndeticCertificate(K, True, summed)
                a, b = gaps.intervals[0]
                return SyndeticCertificate(K, False, (a + b) / 2)
            raise PreconditionError("S + K must have positive measure to cover the line")
        raise PreconditionError("line syndetic checks need a periodic S")
    raise PreconditionError(f"syndetic check unsupported on {type(group).__name__}")


# ---------------------------------------------------------------------------
# exact minimum translate covers


@dataclass(frozen=True)
class TranslateCover:
    translates: tuple
    size: int
    exact: bool  # exhaustive optimum vs greedy upper bound
    verified: bool


def minimal_translates(
    S, group: GroupSpec, cap: int = DEFAULT_CAPS.exact_cover_cells
) -> TranslateCover:
    """Smallest K with S + K = G, exact for fundamental domains of at most
    `cap` cells (first cover in size-then-lexicographic order, so the result
    is canonical); larger instances fall back to flagged greedy set cover."""
    cells, covers, lift = _cover_instance(S, group)
    n = len(cells)
    full = (1 << n) - 1
    if not any(covers):
        raise PreconditionError("S is empty")
    if n <= cap:
        for size in range(1, n + 1):
            for combo in itertools.combinations(range(n), size):
                mask = 0
                for i in combo:
                    mask |= covers[i]
                if mask == full:
                    return TranslateCover(
                        translates=tuple(lift(cells[i]) for i in combo),
                        size=size,
                        exact=True,
                        verified=True,
                    )
        raise VerificationError("no cover exists", counterexample=S)
    chosen = []
    mask = 0
    while mask != full:
        best = max(range(n), key=lambda i: (covers[i] | mask).bit_count())
        if covers[best] | mask == mask:
            raise VerificationError("greedy cover stalled", counterexample=S)
        chosen.append(best)
        mask |= covers[best]
    return TranslateCover(
        translates=tuple(lift(cells[i]) for i in chosen),
        size=len(chosen),
        exact=False,
        verified=True,
    )


def _cover_instance(S, group):
    """Cells of the fundamental domain, the coverage bitmask of each candidate
    translate, and a lift back to group elements."""
    if isinstance(group, FiniteAbelian) and isinstance(S, ExplicitFinite):
        cells = group.elements()
        index = {c: i for i, c in enumerate(cells)}
        sset = set(S.elements)
        covers = []
        for k in cells:
            mask = 0
            for s in sset:
                mask |= 1 << index[group.add(s, k)]
            covers.append(mask)
        return cells, covers, lambda c: c
    if isinstance(group, ZLattice) and isinstance(S, PeriodicDiscrete):
        box = S.period
        cells = list(itertools.product(*(range(m) for m in box)))
        index = {c: i for i, c in enumerate(cells)}
        covers = []
        for k in cells:
            mask = 0
            for r in S.residues:
                cell = tuple((a + b) % m for a, b, m in zip(r, k, box))
                mask |= 1 << index[cell]
            covers.append(mask)
        return cells, covers, lambda c: c
    raise PreconditionError(
        f"minimum covers need a finite group or a periodic subset of Z^d, got {type(S).__name__}"
    )
