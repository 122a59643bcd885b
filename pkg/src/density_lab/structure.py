"""Constructive cover and partition machinery.

greedy_translates builds a maximal packing-compatible translate set B with
A - A + B = G and #B bounded by the reciprocal density; packing_bound_check
verifies the measure bound forced by the packing condition; fatten converts a
point configuration into a positive-measure set S + H with a certified density
lower bound; partition_by_coloring splits a configuration into classes whose
difference sets avoid H - H; auto_H constructs an H making the class count
certified; syndetic_pipeline chains all stages and re-verifies each one.

Every emitted result is re-verified from scratch in exact arithmetic; a failed
re-verification raises VerificationError with a counterexample.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Optional

from .density import RudinWindow, rudin_window
from .errors import PreconditionError, VerificationError
from .groups import FiniteAbelian, GroupSpec, RealLine, SigmaFiniteChain, ZLattice
from .intervals import IntervalUnion, PeriodicPattern
from .rational import INFINITE, Infinite, is_infinite, rat, rat_str
from .sets import (
    Counting,
    CylinderSet,
    ExplicitFinite,
    FinitePoints,
    MeasureSum,
    PeriodicDiscrete,
    PeriodicPoints,
    PerturbedLattice,
    difference_set,
    minkowski_sum,
)
from .windows import real_mass, real_shift_sup

# ---------------------------------------------------------------------------
# counting density of a point configuration


def counting_density(S, group: GroupSpec):
    """Exact counting density of a configuration; Infinite for accumulating ones."""
    if isinstance(group, RealLine):
        if isinstance(S, PeriodicPoints):
            return S.counting_density
        if isinstance(S, FinitePoints):
            if S.accumulation:
                return Infinite(("accumulation", S.accumulation[0]))
            return Fraction(0)
        if isinstance(S, PerturbedLattice):
            if S.accumulation:
                return Infinite(("accumulation", S.accumulation[0]))
            raise PreconditionError(
                "a perturbed lattice has no exact counting density; use the window scan"
            )
        raise PreconditionError(f"unsupported configuration: {type(S).__name__}")
    if isinstance(group, ZLattice):
        if isinstance(S, PeriodicDiscrete):
            return Fraction(len(S.residues), S.cell_count())
        if isinstance(S, ExplicitFinite):
            return Fraction(0)
    raise PreconditionError(f"unsupported configuration: {type(S).__name__}")


# ---------------------------------------------------------------------------
# greedy translate sets


@dataclass(frozen=True)
class CoverResult:
    translates: tuple
    size_bound: int
    density: Fraction
    verified_cover: bool
    verified_packing: bool
    blocked: tuple  # (candidate, blocking difference) per rejected candidate
    search_domain: str
    base_set: object
    group: object

    @property
    def size(self) -> int:
        return len(self.translates)


def greedy_translates(A, group: GroupSpec) -> CoverResult:
    """Maximal translate set in canonical order.

    Candidates are scanned in the canonical order of the finite search domain
    (one fundamental domain of the combined period); a candidate joins B when
    the packing condition (A-A) cap (B'-B') = {0} survives, and the recorded
    blocker is the offending difference otherwise. Termination gives
    A - A + B = G over the fundamental domain and #B <= floor(1/density).
    """
    if isinstance(group, FiniteAbelian):
        if not isinstance(A, ExplicitFinite):
            raise PreconditionError("finite-group cover needs an explicit subset")
        return _greedy_finite(A.elements, group, A, group, "all group elements, lexicographic")
    if isinstance(group, ZLattice):
        if not isinstance(A, PeriodicDiscrete):
            raise PreconditionError("lattice covers need a periodic subset (finite sets have density 0)")
        quotient = FiniteAbelian(A.period)
        return _greedy_finite(
            A.residues,
            quotient,
            A,
            group,
            "fundamental domain of the period lattice, lexicographic",
        )
    if isinstance(group, SigmaFiniteChain):
        if isinstance(A, CylinderSet):
            A.validate_for(group)
            n = group.depth
            quotient = group.subgroup(n)
            elems = [e for e in quotient.elements() if A.contains(_strip(e), group)]
            result = _greedy_finite(
                tuple(elems),
                quotient,
                A,
                group,
                f"chain subgroup H_{n}, lexicographic",
            )
            return dataclasses.replace(
                result,
                translates=tuple(_strip(b) for b in result.translates),
                blocked=tuple((_strip(c), _strip(d)) for c, d in result.blocked),
            )
        raise PreconditionError("chain covers need a cylinder set")
    if isinstance(group, RealLine):
        if isinstance(A, PeriodicPattern):
            return _greedy_pattern(A, group)
        if isinstance(A, PeriodicPoints):
            raise PreconditionError(
                "a countable configuration has Haar-trace density 0; fatten it first"
            )
        raise PreconditionError("line covers need a periodic pattern")
    raise PreconditionError(f"unsupported group: {type(group).__name__}")


def _strip(e):
    end = len(e)
    while end > 0 and e[end - 1] == 0:
        end -= 1
    return e[:end]


def _greedy_finite(a_elements, quotient: FiniteAbelian, base_set, group, domain: str):
    a_set = {quotient.reduce(e) for e in a_elements}
    if not a_set:
        raise PreconditionError("zero density: the set is empty")
    order = quotient.order
    density = Fraction(len(a_set), order)
    bound = floor(1 / density)
    diff = {quotient.add(x, quotient.negate(y)) for x in a_set for y in a_set}
    zero = quotient.zero()
    B: list = []
    blocked: list = []
    for cand in quotient.elements():
        blocker = None
        for b in B:
            d = quotient.add(cand, quotient.negate(b))
            if d != zero and d in diff:
                blocker = d
                break
        if blocker is None:
            B.append(cand)
        else:
            blocked.append((cand, blocker))
    # re-verify from scratch
    cover_ok = all(
        any(quotient.add(g, quotient.negate(b)) in diff for b in B)
        for g in quotient.elements()
    )
    packing_ok = all(
        quotient.add(b1, quotient.negate(b2)) == zero
        or quotient.add(b1, quotient.negate(b2)) not in diff
        for b1 in B
        for b2 in B
    )
    if not cover_ok:
        raise VerificationError("cover verification failed", counterexample=(base_set, B))
    if not packing_ok:
        raise VerificationError("packing verification failed", counterexample=(base_set, B))
    if len(B) > bound:
        raise VerificationError(
            f"translate count {len(B)} exceeds the bound {bound}",
            counterexample=(base_set, B),
        )
    return CoverResult(
        translates=tuple(B),
        size_bound=bound,
        density=density,
        verified_cover=True,
        verified_packing=True,
        blocked=tuple(blocked),
        search_domain=domain,
        base_set=base_set,
        group=group,
    )


def _greedy_pattern(A: PeriodicPattern, group: RealLine) -> CoverResult:
    density = A.density
    if density <= 0:
        raise PreconditionError("zero density: the pattern has no mass")
    p = A.period
    D = A.difference_set()
    bound = floor(1 / density)
    B: list[Fraction] = []
    covered = IntervalUnion.empty()

    def covered_mod(q: Fraction) -> bool:
        r = q % p
        return covered.contains(r) or (r == 0 and covered.contains(p))

    while True:
        gaps = covered.complement_within(0, p)
        if gaps.is_empty:
            break
        a, b = gaps.intervals[0]
        cand = a if not covered_mod(a) else (a + b) / 2
        if covered_mod(cand):
            raise VerificationError("greedy stalled", counterexample=(A, B, cand))
        B.append(cand)
        covered = covered.union(D.translate(cand).pattern)
        if len(B) > bound:
            raise VerificationError(
                f"translate count {len(B)} exceeds the bound {bound}",
                counterexample=(A, B),
            )
    # re-verify from scratch
    union = IntervalUnion.empty()
    for b in B:
        union = union.union(D.translate(b).pattern)
    if not union.covers(0, p):
        raise VerificationError("cover verification failed", counterexample=(A, B))
    for b1 in B:
        for b2 in B:
            if b1 != b2 and D.contains_mod(b1 - b2):
                raise VerificationError(
                    "packing verification failed", counterexample=(A, b1, b2)
                )
    return CoverResult(
        translates=tuple(B),
        size_bound=bound,
        density=density,
        verified_cover=True,
        verified_packing=True,
        blocked=(),
        search_domain="one period of the line; maximality = empty admissible set",
        base_set=A,
        group=group,
    )


# ---------------------------------------------------------------------------
# packing bound


@dataclass(frozen=True)
class PackingCheck:
    mu_H: Fraction
    density: Fraction
    bound: Fraction  # 1 / density
    slack: Fraction
    checked_radius: Fraction


def _difference_points_within(S, radius: Fraction, group) -> list[Fraction]:
    """All elements of S - S in [-radius, radius], exact."""
    if isinstance(S, PeriodicPoints):
        out = set()
        for a in S.residues:
            for b in S.residues:
                base = a - b
                k = ceil((-radius - base) / S.period)
                while base + k * S.period <= radius:
                    out.add(base + k * S.period)
                    k += 1
        return sorted(out)
    if isinstance(S, FinitePoints):
        return sorted(
            {x - y for x in S.points for y in S.points if abs(x - y) <= radius}
        )
    if isinstance(S, PerturbedLattice):
        wd = difference_set(S, RealLine(), window=(-radius, radius))
        return list(wd.points.points)
    raise PreconditionError(f"unsupported configuration: {type(S).__name__}")


def packing_bound_check(S, H, group: GroupSpec = RealLine()) -> PackingCheck:
    """Verify (H-H) cap (S-S) = {0}, then certify mu(H) <= 1/density.

    The difference set is truncated at the sufficiency radius diam(H-H); a
    packing violation raises PreconditionError carrying the common difference.
    """
    if isinstance(group, RealLine):
        if not isinstance(H, IntervalUnion):
            raise PreconditionError("H must be an interval union on the line")
        rho = counting_density(S, group)
        if is_infinite(rho):
            raise PreconditionError("infinite counting density: the bound is void")
        if rho <= 0:
            raise PreconditionError("positive counting density required")
        Q = H.difference_set()
        if Q.is_empty:
            raise PreconditionError("H is empty")
        radius = max(abs(Q.inf), abs(Q.sup))
        violations = sorted(
            d for d in _difference_points_within(S, radius, group) if d > 0 and Q.contains(d)
        )
        if violations:
            raise PreconditionError(
                f"packing condition fails: common difference {rat_str(violations[0])}"
            )
        mu_h = H.length
        bound = 1 / rho
        if mu_h > bound:
            raise VerificationError(
                "packing bound violated", counterexample=(S, H, mu_h, bound)
            )
        return PackingCheck(
            mu_H=mu_h, density=rho, bound=bound, slack=bound - mu_h, checked_radius=radius
        )
    if isinstance(group, ZLattice) and group.dimension == 1:
        if not isinstance(H, ExplicitFinite):
            raise PreconditionError("H must be a finite set on Z")
        rho = counting_density(S, group)
        if is_infinite(rho) or rho <= 0:
            raise PreconditionError("positive finite counting density required")
        pts = [e[0] for e in H.elements]
        if not pts:
            raise PreconditionError("H is empty")
        q_diffs = {a - b for a in pts for b in pts}
        radius = Fraction(max(abs(d) for d in q_diffs))
        if isinstance(S, PeriodicDiscrete):
            m = S.period[0]
            res = S.line_residues()
            s_diffs = set()
            for a in res:
                for b in res:
                    base = a - b
                    k = ceil((-radius - base) / m)
                    while base + k * m <= radius:
                        s_diffs.add(base + k * m)
                        k += 1
        else:
            raise PreconditionError("Z packing checks need a periodic subset")
        violations = sorted(d for d in (q_diffs & s_diffs) if d > 0)
        if violations:
            raise PreconditionError(
                f"packing condition fails: common difference {violations[0]}"
            )
        mu_h = Fraction(len(pts))
        bound = 1 / rho
        if mu_h > bound:
            raise VerificationError(
                "packing bound violated", counterexample=(S, H, mu_h, bound)
            )
        return PackingCheck(
            mu_H=mu_h, density=rho, bound=bound, slack=bound - mu_h, checked_radius=radius
        )
    raise PreconditionError("packing checks run on R or Z")


# ---------------------------------------------------------------------------
# fattening


@dataclass(frozen=True)
class FattenResult:
    fattened: object  # PeriodicPattern (periodic S) or IntervalUnion (finite S)
    claimed_bound: Fraction
    measured: Fraction
    equality: bool


def fatten(S, H: IntervalUnion, group: RealLine = RealLine()) -> FattenResult:
    """S + H with the certified density lower bound density(S) * mu(H).

    The packing condition (S-S) cap (H-H) = {0} makes the translates s + H
    pairwise disjoint, so for periodic S the measured density is exactly the
    bound.
    """
    if H.is_empty:
        raise PreconditionError("H is empty")
    if isinstance(S, PeriodicPoints):
        if not S.residues:
            raise PreconditionError("S is empty")
        if H.length > 0:
            packing_bound_check(S, H, group)  # raises with the violating difference
        rho = S.counting_density
        fat = minkowski_sum(S, H, group)
        measured = fat.density
        bound = rho * H.length
        if measured < bound:
            raise VerificationError(
                "fattened density below the certified bound",
                counterexample=(S, H, measured, bound),
            )
        return FattenResult(
            fattened=fat, claimed_bound=bound, measured=measured, equality=measured == bound
        )
    if isinstance(S, FinitePoints):
        if S.accumulation:
            raise PreconditionError("accumulating configuration")
        fat = minkowski_sum(H, S, group)
        return FattenResult(
            fattened=fat, claimed_bound=Fraction(0), measured=Fraction(0), equality=True
        )
    raise PreconditionError(f"unsupported configuration: {type(S).__name__}")


# ---------------------------------------------------------------------------
# partition by bounded-degree coloring


@dataclass(frozen=True)
class PartitionResult:
    classes: tuple
    H: IntervalUnion
    Q: IntervalUnion  # H - H
    n: int
    k_bound: Fraction  # max points of S in any window s + Q
    class_densities: tuple
    period: Optional[Fraction]  # common period of the classes, when periodic
    base: object
    group: object


def partition_by_coloring(
    S,
    H: IntervalUnion,
    group: RealLine = RealLine(),
    materialize_range: Optional[tuple] = None,
) -> PartitionResult:
    """First-fit coloring of the conflict graph s ~ t iff t in s + (H-H).

    Classes satisfy (S_j - S_j) cap (H-H) = {0} exactly; their number is at
    most the maximal window count k. Periodic configurations are recolored over
    an enlarged period exceeding the diameter of H-H, so classes stay periodic.
    """
    Q = H.difference_set()
    if Q.is_empty:
        raise PreconditionError("H is empty")
    if isinstance(S, PeriodicPoints):
        if not S.residues:
            raise PreconditionError("S is empty")
        span = Q.sup - Q.inf
        L = max(1, floor(span / S.period) + 1)
        while L * S.period <= span:
            L += 1
        P = L * S.period
        expanded = sorted(r + j * S.period for r in S.residues for j in range(L))

        def conflict(u: Fraction, v: Fraction) -> bool:
            d = (v - u) % P
            if d == 0:
                return False
            return Q.contains(d) or Q.contains(d - P)

        colors = _first_fit(expanded, conflict)
        n = max(colors.values()) + 1
        raw_classes = tuple(
            PeriodicPoints(P, tuple(r for r in expanded if colors[r] == c))
            for c in range(n)
        )
        k_bound = max(
            real_mass(Counting(S), Q.translate(s)) for s in S.residues
        )
        _verify_partition_periodic(S, raw_classes, Q, P, expanded)
        if n > k_bound:
            raise VerificationError(
                f"class count {n} exceeds the window bound {k_bound}",
                counterexample=(S, H),
            )
        densities = tuple(Fraction(len(c.residues), 1) / P for c in raw_classes)
        return PartitionResult(
            classes=tuple(c.reduced() for c in raw_classes),
            H=H,
            Q=Q,
            n=n,
            k_bound=k_bound,
            class_densities=densities,
            period=P,
            base=S,
            group=group,
        )
    points = _materialize_config(S, materialize_range)
    radius = max(abs(Q.inf), abs(Q.sup))

    def conflict_pts(u: Fraction, v: Fraction) -> bool:
        return u != v and Q.contains(v - u)

    colors = _first_fit(points, conflict_pts)
    n = max(colors.values()) + 1 if points else 0
    classes = tuple(
        FinitePoints(tuple(q for q in points if colors[q] == c)) for c in range(n)
    )
    k_bound = (
        max(
            sum(1 for t in points if Q.contains(t - s))
            for s in points
        )
        if points
        else Fraction(0)
    )
    for j, cl in enumerate(classes):
        for a in cl.points:
            for b in cl.points:
                if a != b and Q.contains(a - b):
                    raise VerificationError(
                        "class packing verification failed", counterexample=(j, a, b)
                    )
    if sorted(q for cl in classes for q in cl.points) != list(points):
        raise VerificationError("partition does not reproduce S", counterexample=S)
    if n > k_bound:
        raise VerificationError(
            f"class count {n} exceeds the window bound {k_bound}", counterexample=(S, H)
        )
    densities = tuple(Fraction(0) for _ in classes)
    return PartitionResult(
        classes=classes,
        H=H,
        Q=Q,
        n=n,
        k_bound=Fraction(k_bound),
        class_densities=densities,
        period=None,
        base=S,
        group=group,
    )


def _first_fit(points, conflict):
    colors = {}
    for i, q in enumerate(points):
        taken = {colors[t] for t in points[:i] if conflict(t, q)}
        c = 0
        while c in taken:
            c += 1
        colors[q] = c
    return colors


def _materialize_config(S, materialize_range):
    if isinstance(S, FinitePoints):
        if S.accumulation:
            raise PreconditionError(
                "accumulating configuration: window counts around the marker are infinite"
            )
        return list(S.points)
    if isinstance(S, PerturbedLattice):
        if S.accumulation:
            raise PreconditionError(
                "accumulating configuration: window counts around the marker are infinite"
            )
        if materialize_range is None:
            span = S.perturbation_span()
            if span is None:
                raise PreconditionError("materialize_range required for a bare lattice")
            lo, hi = span[0] - 2 * S.step, span[1] + 2 * S.step
        else:
            lo, hi = rat(materialize_range[0]), rat(materialize_range[1])
        return list(S.materialize(lo, hi))
    raise PreconditionError(f"unsupported configuration: {type(S).__name__}")


def _verify_partition_periodic(S, classes, Q, P, expanded):
    seen = sorted(r for c in classes for r in c.residues)
    if seen != sorted(expanded):
        raise VerificationError("partition does not reproduce S", counterexample=S)
    for j, cl in enumerate(classes):
        for a in cl.residues:
            for b in cl.residues:
                d = (a - b) % P
                if d == 0:
                    continue
                if Q.contains(d) or Q.contains(d - P):
                    raise VerificationError(
                        "class packing verification failed", counterexample=(j, a, b)
                    )


# ---------------------------------------------------------------------------
# automatic H construction


@dataclass(frozen=True)
class AutoHResult:
    H: IntervalUnion
    Q: IntervalUnion
    c: Fraction  # length of the absorbed test interval C = [0, c]
    window_count: Fraction  # K_c: max mass of S in closed length-c windows
    eta: Fraction
    L: int
    k: Fraction  # exact max window count over s + (H-H)
    target: Fraction  # (1 + eps) * density * mu(H-H)
    rudin: RudinWindow


def auto_H(
    S: PeriodicPoints, epsilon=Fraction(1, 2), group: RealLine = RealLine()
) -> AutoHResult:
    """Construct H with a certified per-window count bound.

    For C = [0, c], every bounded V satisfies #(S cap V)/mu(C + V) <= K_c/c
    (integrate the count of S over sliding length-c windows across
    (S cap V) + C). Growing c in whole periods until K_c/c <= rho (1 + eps/2),
    then taking H = [0, L] from the window construction with
    eta = eps/(2+eps), gives max_s #(S cap (s + H - H)) <= (1+eps) rho mu(H-H),
    re-verified exactly.
    """
    if not isinstance(S, PeriodicPoints) or not S.residues:
        raise PreconditionError("auto_H needs a nonempty exactly periodic configuration")
    epsilon = rat(epsilon)
    if epsilon <= 0:
        raise PreconditionError("epsilon must be positive")
    rho = S.counting_density
    nu = Counting(S)
    M = max(1, ceil(2 / epsilon))
    for _ in range(64):
        c = M * S.period
        k_c = real_shift_sup(nu, IntervalUnion.closed(0, c)).value
        if k_c <= rho * (1 + epsilon / 2) * c:
            break
        M += 1
    else:
        raise VerificationError("window certificate did not converge", counterexample=S)
    eta = epsilon / (2 + epsilon)
    rw = rudin_window(IntervalUnion.closed(0, c), eta, group)
    H = IntervalUnion.closed(0, rw.L)
    Q = H.difference_set()
    k = max(real_mass(nu, Q.translate(s)) for s in S.residues)
    target = (1 + epsilon) * rho * Q.length
    if k > target:
        raise VerificationError(
            "window count exceeds the certified target", counterexample=(S, H, k, target)
        )
    return AutoHResult(
        H=H, Q=Q, c=c, window_count=k_c, eta=eta, L=rw.L, k=k, target=target, rudin=rw
    )


# ---------------------------------------------------------------------------
# subadditivity


@dataclass(frozen=True)
class SubadditivityCheck:
    total_density: object
    part_densities: tuple
    part_sum: object
    slack: object
    holds: bool


def _exact_density(nu, group: GroupSpec):
    from .density import measure_total_finite, periodic_mean_density

    if isinstance(group, FiniteAbelian):
        return measure_total_finite(nu, group) / group.order
    value = periodic_mean_density(nu, group)
    if value is None:
        raise PreconditionError(
            "exact subadditivity checks need periodic or finite-support measures"
        )
    return value


def subadditivity_check(nu_list, group: GroupSpec) -> SubadditivityCheck:
    """Verify density(sum nu_j) <= sum density(nu_j) in exact arithmetic."""
    if not nu_list:
        raise PreconditionError("empty measure list")
    parts = tuple(_exact_density(nu, group) for nu in nu_list)
    total = _exact_density(MeasureSum(tuple(nu_list)), group)
    if any(is_infinite(p) for p in parts):
        return SubadditivityCheck(total, parts, INFINITE, INFINITE, True)
    part_sum = sum(parts, Fraction(0))
    if is_infinite(total):
        raise VerificationError(
            "total density infinite while parts are finite", counterexample=nu_list
        )
    slack = part_sum - total
    if slack < 0:
        raise VerificationError("subadditivity violated", counterexample=(nu_list, slack))
    return SubadditivityCheck(total, parts, part_sum, slack, True)


# ---------------------------------------------------------------------------
# the full pipeline


@dataclass(frozen=True)
class PipelineResult:
    S: PeriodicPoints
    rho: Fraction
    epsilon: Fraction
    H: IntervalUnion
    auto: Optional[AutoHResult]
    partition: PartitionResult
    selected_class: int
    rho_j: Fraction
    fatten: FattenResult
    cover: CoverResult
    T: IntervalUnion
    mu_T: Fraction
    covering_verified: bool
    remark_bound: Fraction        # (1+eps) mu(H-H) / mu(H)
    remark_bound_holds: bool
    derived_bound: Fraction       # (1+eps) mu(H-H)^2 / mu(H)
    derived_bound_holds: bool
    class_count_target: Fraction  # (1+eps) rho mu(H-H)
    class_count_holds: bool


def syndetic_pipeline(
    S,
    group: RealLine = RealLine(),
    epsilon=Fraction(1, 2),
    H: Optional[IntervalUnion] = None,
) -> PipelineResult:
    """Partition, select the densest class, fatten, cover, and assemble the
    compact translate set T = B + (H - H) with (S - S) + T covering the line.

    Requires 0 < counting density < Infinite and an exactly periodic S; every
    stage is re-verified. With an auto-constructed H the class count and the
    derived measure bound are certified and enforced; with a supplied H they
    are reported as booleans.
    """
    epsilon = rat(epsilon)
    rho = counting_density(S, group)
    if is_infinite(rho):
        raise PreconditionError(
            "counting density is infinite (accumulation certificate): no compact "
            "translate set can make the difference set cover the line"
        )
    if not isinstance(S, PeriodicPoints):
        raise PreconditionError("the pipeline needs an exactly periodic configuration")
    if rho <= 0:
        raise PreconditionError("positive counting density required")
    auto = None
    if H is None:
        auto = auto_H(S, epsilon, group)
        H = auto.H
    if H.length <= 0:
        raise PreconditionError("H must have positive measure")
    part = partition_by_coloring(S, H, group)
    densities = part.class_densities
    best = max(densities)
    j = densities.index(best)
    rho_j = densities[j]
    if rho_j * part.n < rho:
        raise VerificationError(
            "no class reaches density rho/n", counterexample=(S, H, part.n)
        )
    fat = fatten(part.classes[j], H, group)
    cover = greedy_translates(fat.fattened, group)
    Q = part.Q
    T = IntervalUnion(
        tuple((b + lo, b + hi) for b in cover.translates for lo, hi in Q.intervals)
    )
    mu_t = T.length
    # (S_j - S_j) + T covers the line, hence so does (S - S) + T
    d_j = difference_set(part.classes[j], group)
    summed = minkowski_sum(d_j, T, group)
    if not summed.covers_circle():
        raise VerificationError(
            "difference set plus T does not cover", counterexample=(S, H, T)
        )
    d_s = difference_set(S, group)
    summed_s = minkowski_sum(d_s, T, group)
    if not summed_s.covers_circle():
        raise VerificationError(
            "difference set plus T does not cover", counterexample=(S, H, T)
        )
    remark_bound = (1 + epsilon) * Q.length / H.length
    derived_bound = (1 + epsilon) * Q.length * Q.length / H.length
    class_target = (1 + epsilon) * rho * Q.length
    remark_ok = mu_t <= remark_bound
    derived_ok = mu_t <= derived_bound
    class_ok = part.n <= class_target
    if auto is not None and not (class_ok and derived_ok):
        raise VerificationError(
            "certified bounds failed on an auto-constructed H",
            counterexample=(S, H, mu_t, derived_bound, part.n, class_target),
        )
    return PipelineResult(
        S=S,
        rho=rho,
        epsilon=epsilon,
        H=H,
        auto=auto,
        partition=part,
        selected_class=j,
        rho_j=rho_j,
        fatten=fat,
        cover=cover,
        T=T,
        mu_T=mu_t,
        covering_verified=True,
        remark_bound=remark_bound,
        remark_bound_holds=remark_ok,
        derived_bound=derived_bound,
        derived_bound_holds=derived_ok,
        class_count_target=class_target,
        class_count_holds=class_ok,
    )
