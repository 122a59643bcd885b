import random
from fractions import Fraction

from density_lab import (
    AccumulationPoint,
    CenteredCube,
    Counting,
    CustomK,
    CylinderSet,
    DiracAtZero,
    Estimated,
    ExplicitFinite,
    FiniteAbelian,
    FinitePoints,
    HaarTrace,
    IntervalUnion,
    IntervalWindow,
    NotFound,
    PeriodicDiscrete,
    PeriodicPattern,
    PeriodicPoints,
    PerturbedLattice,
    RealLine,
    SigmaFiniteChain,
    WeightedDiracs,
    ZLattice,
    all_finite_abelian_up_to,
    auud_window,
    classical_upper_density,
    delta_density,
    hegyvari_density,
    is_infinite,
    kahane_density,
    kahane_density_finite_group,
    kahane_oracle_finite,
    rudin_window,
    translate_measure,
    translation_witness,
    window_density_profile,
)
from density_lab.density import delta_lower_bound_check, measure_total_finite

rng = random.Random(2024)
R = RealLine()
Z = ZLattice(1)


# ---------------------------------------------------------------------------
# classical density


def test_classical_examples():
    assert classical_upper_density(PeriodicDiscrete.line(3, [0]), Z).value == Fraction(1, 3)
    empty = classical_upper_density(PeriodicDiscrete.line(5, []), Z)
    assert empty.value == 0


def test_classical_residue_count_vs_direct_scan():
    a = PeriodicDiscrete.line(10, [0, 1, 4])
    report = classical_upper_density(a, Z)
    assert report.value == Fraction(3, 10)
    # direct A(n)/n oracle at n = 10^4
    n = 10**4
    count = sum(1 for x in range(1, n + 1) if x % 10 in (0, 1, 4))
    assert Fraction(count, n) == Fraction(3, 10)


# ---------------------------------------------------------------------------
# window profiles


def test_profile_counting_2z():
    nu = Counting(PeriodicPoints(2, (0,)))
    rows = window_density_profile(nu, R, IntervalWindow(), [10, 100, 1000])
    assert rows[0][1] == Fraction(11, 20)
    assert rows[1][1] == Fraction(101, 200)
    assert rows[2][1] == Fraction(1001, 2000)


def test_profile_pattern_integer_radii_exact_half():
    nu = HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 2))]))
    rows = window_density_profile(nu, R, CustomK(IntervalUnion.closed(0, 1)), [1, 2, 8])
    for _, ratio, _ in rows:
        assert ratio == Fraction(1, 2)


def test_profile_half_pattern_interval_exact():
    # window [x-r, x+r] spans whole periods at integer r, so every shift sees
    # exactly half mass and the ratio is 1/2 on the nose
    nu = HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 2))]))
    rows = window_density_profile(nu, R, IntervalWindow(), [1, 3, 17])
    assert [ratio for _, ratio, _ in rows] == [Fraction(1, 2)] * 3


def test_delta_squeeze_certificate_on_integers():
    # independent confirmation that the finite-test-set density of a periodic
    # subset of Z equals |R|/m: it is at least the mean density (averaging
    # over shifts) and at most K_c/c for the interval test set {0..c-1}
    # (integrate the sliding length-c count over (A cap V) + C); K_c/c
    # approaches |R|/m from above as c grows
    rng2 = random.Random(606)
    for _ in range(40):
        m = rng2.randrange(2, 15)
        res = sorted(rng2.sample(range(m), rng2.randrange(1, m + 1)))
        a = PeriodicDiscrete.line(m, res)
        mean = Fraction(len(res), m)
        for mult in (2, 8, 32):
            c = mult * m + rng2.randrange(1, m)  # off-period length, real squeeze
            # K_c: max count of A in c consecutive integers {x, ..., x+c-1}
            k_c = max(
                sum(1 for t in range(x, x + c) if t % m in res) for x in range(m)
            )
            assert mean <= Fraction(k_c, c)
            assert Fraction(k_c, c) - mean <= Fraction(len(res), c)
        assert delta_density(Counting(a), Z).value == mean


def test_profile_dirac_decreases_to_zero():
    rows = window_density_profile(DiracAtZero(), R, IntervalWindow(), [1, 10, 10**6])
    assert [r[1] for r in rows] == [Fraction(1, 2), Fraction(1, 20), Fraction(1, 2 * 10**6)]


def test_profile_monotone_trend_periodic():
    nu = Counting(PeriodicPoints(Fraction(3, 2), (0, Fraction(1, 2))))
    exact = Fraction(2) / Fraction(3, 2)
    radii = [Fraction(3, 2) * 2**k for k in range(9)]
    rows = window_density_profile(nu, R, IntervalWindow(), radii)
    ratios = [r[1] for r in rows]
    assert all(a >= b for a, b in zip(ratios, ratios[1:]))  # sup ratios decrease here
    assert abs(ratios[-1] - exact) < Fraction(1, 100)


def test_profile_final_entry_within_tolerance_of_closed_form():
    # random periodic counting instances: the last geometric-schedule entry
    # sits within the default relative tolerance of the exact mean
    for _ in range(20):
        period = Fraction(rng.randrange(1, 5), rng.randrange(1, 3))
        k = rng.randrange(1, 4)
        residues = tuple(sorted({period * Fraction(rng.randrange(0, 16), 16) for _ in range(k)}))
        nu = Counting(PeriodicPoints(period, residues))
        exact = Fraction(len(residues)) / period
        rows = window_density_profile(nu, R, IntervalWindow(), [period * 2**12])
        assert abs(rows[0][1] - exact) / exact < Fraction(1, 1000)


# ---------------------------------------------------------------------------
# auud / kahane


def test_auud_closed_forms():
    assert auud_window(Counting(PeriodicPoints(2, (0,))), R).value == Fraction(1, 2)
    assert auud_window(
        HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 3))])), R
    ).value == Fraction(1, 3)
    assert auud_window(Counting(PeriodicDiscrete.line(3, [0])), Z).value == Fraction(1, 3)
    assert auud_window(DiracAtZero(), R).value == 0


def test_auud_perturbed_lattice_estimates_two():
    extras = tuple(Fraction(n * n + 1, n) for n in range(2, 2200))
    nu = Counting(PerturbedLattice(1, extra=extras))
    from density_lab import EstimationParams

    report = auud_window(nu, R, params=EstimationParams(tol=Fraction(1, 100), r0=Fraction(10), k_max=7))
    assert isinstance(report.value, Estimated)
    last = report.value.schedule[-1][1]
    assert abs(last - 2) < Fraction(1, 10)
    # spot-check the scan at r in {10, 100, 1000} stays within 2 +- 1/2
    rows = window_density_profile(nu, R, IntervalWindow(), [10, 100, 1000])
    for _, ratio, _ in rows:
        assert abs(ratio - 2) < Fraction(1, 2)


def test_estimated_witness_reevaluates():
    from density_lab import EstimationParams, real_mass

    extras = tuple(Fraction(n * n + 1, n) for n in range(2, 400))
    nu = Counting(PerturbedLattice(1, extra=extras))
    params = EstimationParams(tol=Fraction(1, 50), r0=Fraction(8), k_max=5)
    report = auud_window(nu, R, params=params)
    r_last, argmax, ratio = report.witness.data
    window = IntervalUnion.closed(argmax - r_last, argmax + r_last)
    assert real_mass(nu, window) / (2 * r_last) == ratio == report.value.last


def test_auud_closed_form_two_dimensional():
    from density_lab import ZLattice as ZL

    nu = Counting(PeriodicDiscrete((2, 3), ((0, 0), (1, 2))))
    rep = auud_window(nu, ZL(2))
    assert rep.value == Fraction(2, 6) == Fraction(1, 3)
    # the profile approaches the closed form from above
    rows = window_density_profile(nu, ZL(2), CenteredCube(), [1, 2, 4, 8])
    assert all(r >= Fraction(1, 3) for _, r, _ in rows)
    assert abs(rows[-1][1] - Fraction(1, 3)) < Fraction(1, 10)


def test_kahane_window_equivalence_annotation():
    rep = kahane_density(Counting(PeriodicDiscrete.line(3, [0])), Z)
    assert rep.value == Fraction(1, 3)
    assert any("window-equivalent" in a for a in rep.annotations)
    assert kahane_density(HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 2))])), R).value == Fraction(1, 2)
    assert kahane_density(DiracAtZero(), R).value == 0


def test_kahane_infinite_for_accumulation():
    s = FinitePoints(
        tuple(Fraction(1, n) for n in range(1, 30)),
        accumulation=(AccumulationPoint(Fraction(0), "above"),),
    )
    rep = kahane_density(Counting(s), R)
    assert rep.is_infinite


# ---------------------------------------------------------------------------
# finite-group oracle


def test_finite_group_examples():
    G = FiniteAbelian((6,))
    nu = Counting(ExplicitFinite(((0,), (2,))))
    rep = kahane_density_finite_group(nu, G, mode="oracle")
    assert rep.value == Fraction(1, 3)
    full = Counting(ExplicitFinite(tuple((i,) for i in range(6))))
    assert kahane_density_finite_group(full, G).value == 1
    assert kahane_density_finite_group(Counting(ExplicitFinite(())), G).value == 0


def test_oracle_witness_reevaluates():
    G = FiniteAbelian((2, 3))
    nu = Counting(ExplicitFinite(((0, 0), (1, 2))))
    rep = kahane_density_finite_group(nu, G, mode="oracle")
    C, V = rep.witness.data
    cv = {G.add(c, v) for c in C.elements for v in V.elements}
    num = sum(1 for v in V.elements if v in {(0, 0), (1, 2)})
    assert Fraction(num, len(cv)) == rep.value == Fraction(1, 3)


def test_oracle_random_groups_and_subsets():
    groups = [g for g in all_finite_abelian_up_to(8) if g.order >= 1]
    for _ in range(60):
        G = rng.choice(groups)
        elems = G.elements()
        k = rng.randrange(0, len(elems) + 1)
        subset = ExplicitFinite(tuple(rng.sample(elems, k)))
        value, _, _ = kahane_oracle_finite(Counting(subset), G)
        assert value == Fraction(len(subset.elements), G.order)


def test_oracle_weighted_measures():
    groups = all_finite_abelian_up_to(6)
    for _ in range(200):
        G = rng.choice(groups)
        elems = G.elements()
        atoms = tuple(
            (e, Fraction(rng.randrange(1, 8), rng.randrange(1, 5)))
            for e in rng.sample(elems, rng.randrange(1, len(elems) + 1))
        )
        nu = WeightedDiracs(atoms)
        value, _, _ = kahane_oracle_finite(nu, G)
        assert value == measure_total_finite(nu, G) / G.order


# ---------------------------------------------------------------------------
# delta density


def test_delta_equals_kahane_on_discrete():
    G = FiniteAbelian((6,))
    nu = Counting(ExplicitFinite(((0,), (2,))))
    assert delta_density(nu, G, mode="oracle").value == Fraction(1, 3)
    assert delta_density(Counting(PeriodicDiscrete.line(3, [0])), Z).value == Fraction(1, 3)


def test_delta_dirac_infinite_with_schedule():
    rep = delta_density(DiracAtZero(), R)
    assert rep.is_infinite
    kind, point, weight, schedule, note = rep.value.certificate
    assert kind == "diverging-schedule" and point == 0
    assert (Fraction(1, 10**6), Fraction(10**6)) in schedule
    assert schedule[-1][1] > Fraction(10**6)
    # the certificate re-evaluates: for |F| = 3 the bound is 1/(3 eta)
    assert delta_lower_bound_check(point, weight, Fraction(1, 10), 3) == Fraction(10, 3)


def test_delta_counting_on_line_infinite():
    rep = delta_density(Counting(PeriodicPoints(2, (0,))), R)
    assert rep.is_infinite  # atoms force the finite-test-set density to infinity


def test_delta_trace_reports_lower_bound():
    rep = delta_density(HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 2))])), R)
    assert rep.method == "certified-lower-bound"
    assert rep.value == Fraction(1, 2)


def test_delta_dominates_kahane_everywhere():
    cases = [
        (Counting(PeriodicDiscrete.line(4, [0, 1])), Z),
        (Counting(PeriodicPoints(2, (0,))), R),
        (HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 3))])), R),
        (DiracAtZero(), R),
    ]
    for nu, g in cases:
        dv = delta_density(nu, g).value
        kv = kahane_density(nu, g).value
        if is_infinite(dv):
            continue
        assert dv >= kv


# ---------------------------------------------------------------------------
# chain density


def test_hegyvari_examples():
    chain = SigmaFiniteChain((2,) * 6)
    half = CylinderSet(1, ((0,),))
    rep = hegyvari_density(half, chain)
    assert rep.value == Fraction(1, 2)
    sub = hegyvari_density(ExplicitFinite(((), (1,))), chain)
    assert sub.value == 0
    whole = CylinderSet(0, ((),))
    assert hegyvari_density(whole, chain).value == 1


def test_hegyvari_schedule_oracle():
    chain = SigmaFiniteChain((2, 3, 2))
    a = CylinderSet(2, ((0, 0), (1, 2)))
    # oracle: enumerate H_n and count members directly
    for n in range(1, 4):
        count = sum(
            1
            for e in chain.subgroup_elements(n)
            if a.contains(e, chain)
        )
        assert a.count_in_subgroup(chain, n) == count


# ---------------------------------------------------------------------------
# translation witness


def test_translation_witness_examples():
    nu = Counting(PeriodicPoints(2, (0,)))
    w = IntervalUnion.closed(0, 4)
    x = translation_witness(nu, R, w, Fraction(2, 5))
    assert x == 0  # mass 3 >= 0.4 * 4
    trace = HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 2))]))
    x2 = translation_witness(trace, R, IntervalUnion.closed(0, 1), Fraction(49, 100))
    assert x2 is not None and not isinstance(x2, NotFound)
    assert translation_witness(nu, R, w, 0) == 0


def test_translation_witness_succeeds_below_density():
    # any gamma below the density must produce a witness on periodic instances
    for _ in range(50):
        period = Fraction(rng.randrange(1, 6))
        k = rng.randrange(1, 4)
        residues = sorted({Fraction(rng.randrange(0, int(period * 4)), 4) % period for _ in range(k)})
        s = PeriodicPoints(period, tuple(residues))
        nu = Counting(s)
        rho = s.counting_density
        gamma = rho * Fraction(rng.randrange(0, 100), 100)
        w = IntervalUnion.closed(0, Fraction(rng.randrange(1, 10)))
        got = translation_witness(nu, R, w, gamma)
        assert not isinstance(got, NotFound)


def test_translation_witness_not_found_carries_sup():
    nu = Counting(PeriodicPoints(2, (0,)))
    got = translation_witness(nu, R, IntervalUnion.closed(0, 2), Fraction(5))
    assert isinstance(got, NotFound)
    assert got.scanned_sup == 2  # window [x, x+2] holds at most 2 lattice points


def test_translation_witness_on_integers():
    nu = Counting(PeriodicDiscrete.line(3, [0]))
    W = ExplicitFinite(((0,), (1,), (2,), (3,)))
    x = translation_witness(nu, Z, W, Fraction(1, 3))
    assert x == (0,)  # {0, 3} gives mass 2 >= 4/3
    missing = translation_witness(nu, Z, W, Fraction(3, 4))
    assert isinstance(missing, NotFound)


# ---------------------------------------------------------------------------
# neighborhood-growth window


def test_rudin_window_real_example():
    rw = rudin_window(IntervalUnion.closed(-1, 1), Fraction(1, 10), R)
    assert rw.mu_CV < (1 + Fraction(1, 10)) * rw.mu_V
    assert rw.L == 11  # minimal integer: 2L + 2 < 2.2 L forces L > 10
    # the sufficiency value diam(C)/eps = 20 also verifies: 42 < 44
    v20 = IntervalUnion.closed(-20, 20)
    assert IntervalUnion.closed(-1, 1).minkowski(v20).length == 42 < Fraction(44)


def test_rudin_window_point_set():
    rw = rudin_window(IntervalUnion.point(0), Fraction(1, 2), R)
    assert rw.L == 1 and rw.mu_CV == rw.mu_V


def test_rudin_window_integers():
    C = ExplicitFinite(tuple((i,) for i in range(6)))
    rw = rudin_window(C, Fraction(1, 2), Z)
    assert rw.mu_CV < Fraction(3, 2) * rw.mu_V
    assert rw.L == 5  # |C+V| = 2L+6 < 1.5 (2L+1) forces L >= 5
    # minimality: L = 4 fails
    assert not (2 * 4 + 6 < Fraction(3, 2) * (2 * 4 + 1))


def test_rudin_window_minimality_random():
    for _ in range(40):
        lo = Fraction(rng.randrange(-10, 10), rng.randrange(1, 4))
        width = Fraction(rng.randrange(0, 30), rng.randrange(1, 4))
        C = IntervalUnion.closed(lo, lo + width)
        eps = Fraction(rng.randrange(1, 20), 20)
        rw = rudin_window(C, eps, R)
        assert rw.mu_CV < (1 + eps) * rw.mu_V
        if rw.L > 1:
            prev = C.minkowski(IntervalUnion.closed(-(rw.L - 1), rw.L - 1)).length
            assert not (prev < (1 + eps) * Fraction(2 * (rw.L - 1)))


# ---------------------------------------------------------------------------
# invariance properties


def test_density_reports_translation_invariant():
    cases = [
        (Counting(PeriodicPoints(2, (0,))), R, Fraction(1, 3)),
        (HaarTrace(PeriodicPattern.from_pairs(1, [(0, Fraction(1, 2))])), R, Fraction(5, 7)),
        (Counting(PeriodicDiscrete.line(6, [0, 2, 3])), Z, (2,)),
    ]
    for nu, g, shift in cases:
        base = auud_window(nu, g).value
        shifted = auud_window(translate_measure(nu, shift, g), g).value
        assert base == shifted


def test_density_monotone_in_nested_sets():
    for _ in range(1000):
        m = rng.randrange(2, 16)
        small = set(rng.sample(range(m), rng.randrange(0, m + 1)))
        extra = set(rng.sample(range(m), rng.randrange(0, m + 1)))
        big = small | extra
        da = auud_window(Counting(PeriodicDiscrete.line(m, sorted(small))), Z).value
        db = auud_window(Counting(PeriodicDiscrete.line(m, sorted(big))), Z).value
        assert da <= db


def test_k_independence_on_periodic_patterns():
    pat = PeriodicPattern.from_pairs(1, [(0, Fraction(1, 3))])
    nu = HaarTrace(pat)
    shapes = [
        CustomK(IntervalUnion.closed(0, 1)),
        CustomK(IntervalUnion.closed(Fraction(-1, 2), Fraction(1, 2))),
        CustomK(IntervalUnion(((Fraction(0), Fraction(1, 2)), (Fraction(3, 4), Fraction(5, 4))))),
    ]
    radii = [Fraction(2**k) for k in range(4, 13)]
    finals = []
    for K in shapes:
        rows = window_density_profile(nu, R, K, radii)
        finals.append(rows[-1][1])
        assert abs(rows[-1][1] - Fraction(1, 3)) < Fraction(1, 100)
    for a in finals:
        for b in finals:
            assert abs(a - b) < Fraction(2, 1000)
