#include <doctest.h>

#include "test_util.hpp"

using namespace berkram;
using namespace berkram::testing;

TEST_CASE("critical sets of the worked maps") {
    // z^3 + z at p = 3: infinity plus two conjugate points of ord -1/2
    CriticalSet<QpElem> a = critical_set(example_61(3));
    CHECK(a.has_infinity);
    CHECK(a.mult_at_infinity == 3);
    REQUIRE(a.valuation_multiset.size() == 1);
    CHECK(a.valuation_multiset[0].first == ExtVal(make_rat(-1, 2)));
    CHECK(a.valuation_multiset[0].second == 2);
    CHECK(a.rational_roots.empty());
    CHECK(a.total_weight() == 2);

    // (z^4 + 3)/z at p = 3: all four finite critical points at ord 0,
    // and the base-field ones among them are the square roots of unity
    CriticalSet<QpElem> b = critical_set(example_63(3));
    CHECK(b.has_infinity);
    REQUIRE(b.valuation_multiset.size() == 1);
    CHECK(b.valuation_multiset[0].first == ExtVal(Rat(0)));
    CHECK(b.valuation_multiset[0].second == 4);
    REQUIRE(b.rational_roots.size() == 2);
    for (const auto& r : b.rational_roots) {
        CHECK((r.point == qp(3, 1) || r.point == qp(3, -1)));
        CHECK(r.weight == 1);
        CHECK(r.mult == 2);
    }
    CHECK(b.hensel_roots.size() == 2);

    // z^2: critical points 0 and infinity with weight 1
    CriticalSet<QpElem> c = critical_set(normalize_map(qpoly(5, {0, 0, 1}), qpoly(5, {1})));
    CHECK(c.has_infinity);
    CHECK(c.mult_at_infinity == 2);
    REQUIRE(c.rational_roots.size() == 1);
    CHECK(c.rational_roots[0].point.is_zero());
    CHECK(c.rational_roots[0].weight == 1);
    CHECK(c.rational_roots[0].mult == 2);
}

TEST_CASE("total weight matches the wronskian degree") {
    std::mt19937 rng(61);
    for (long p : {2L, 3L}) {
        Domain dom = make_domain(DomainTag::Qp, p);
        for (int i = 0; i < 15; ++i) {
            RationalMap<QpElem> phi = random_map<QpElem>(rng, dom, 5);
            CriticalSet<QpElem> cs = critical_set(phi);
            CHECK(cs.total_weight() == std::max<long>(phi.wronskian().degree(), 0));
            long located = 0;
            for (const auto& r : cs.rational_roots) located += r.weight;
            CHECK(located <= cs.total_weight());
        }
    }
}

TEST_CASE("hull distances on the sharp example") {
    for (long p : {2L, 3L, 5L, 7L}) {
        RationalMap<QpElem> phi = example_61(p);
        Domain dom = phi.domain();
        CHECK(dist_to_hull(phi, BerkPoint<QpElem>::gauss(dom)) == make_rat(1, p - 1));
        CHECK(dist_to_hull(phi, BerkPoint<QpElem>(qp(p, 0), make_rat(-1, p - 1))) == Rat(0));
        CHECK(dist_to_hull(phi, BerkPoint<QpElem>(qp(p, 0), Rat(-2))) == Rat(0));
    }
    // wild witness over F_3(t): distance n/2 at level n
    for (long n = 1; n <= 4; ++n) {
        RationalMap<FptElem> psi = example_62(3, n);
        BerkPoint<FptElem> x(FptElem::zero(psi.domain()), Rat(1));
        CHECK(dist_to_hull(psi, x) == Rat(1));
        BerkPoint<FptElem> y(FptElem::zero(psi.domain()), make_rat(n, 2));
        CHECK(dist_to_hull(psi, y) == make_rat(n, 2));
    }
}

TEST_CASE("tube membership") {
    RationalMap<QpElem> phi = example_61(3);
    BerkPoint<QpElem> gauss = BerkPoint<QpElem>::gauss(phi.domain());
    CHECK(in_tube(phi, gauss, make_rat(1, 2)));
    CHECK_FALSE(in_tube(phi, gauss, make_rat(1, 4)));
    CHECK(in_tube(phi, BerkPoint<QpElem>(qp(3, 0), make_rat(-1, 2)), Rat(0)));
    CHECK_THROWS_AS(in_tube(phi, gauss, Rat(-1)), error);
}

TEST_CASE("hull queries conjugate a finite critical point to infinity when needed") {
    // z^2/(z - 1) has critical points 0 and 2 only; infinity is unramified
    Domain dom = make_domain(DomainTag::Qp, 3);
    RationalMap<QpElem> phi = normalize_map(qpoly(3, {0, 0, 1}), qpoly(3, {-1, 1}));
    CHECK(phi.multiplicity_at_infinity() == 1);
    CHECK(dist_to_hull(phi, BerkPoint<QpElem>::gauss(dom)) == Rat(0));
    CHECK(dist_to_hull(phi, BerkPoint<QpElem>(qp(3, 0), Rat(-1))) == Rat(1));
    CHECK(dist_to_hull(phi, BerkPoint<QpElem>(qp(3, 1), Rat(1))) == Rat(1));
    CHECK(dist_to_hull(phi, BerkPoint<QpElem>(qp(3, 2), Rat(2))) == Rat(0));

    // no critical point reachable in the base field
    RationalMap<QpElem> bad = normalize_map(qpoly(5, {-2, 0, 1}), qpoly(5, {0, 2}));
    CHECK(bad.multiplicity_at_infinity() == 1);
    CHECK_THROWS_AS(dist_to_hull(bad, BerkPoint<QpElem>::gauss(bad.domain())), error);
}

TEST_CASE("theorem D radius") {
    CHECK(theorem_d_radius(3, 3, true) == make_rat(1, 2));
    CHECK(theorem_d_radius(5, 3, true) == Rat(0));
    CHECK(theorem_d_radius(2, 2, true) == Rat(1));
    CHECK(theorem_d_radius(0, 9, true) == Rat(0));
    CHECK_THROWS_AS(theorem_d_radius(3, 3, false), error);
}

TEST_CASE("theorem D sweeps on the worked examples") {
    RationalMap<QpElem> ex61 = example_61(3);
    std::vector<BerkPoint<QpElem>> samples;
    for (long k = -4; k <= 8; ++k)
        samples.emplace_back(qp(3, 0), make_rat(k, 4));  // along the spine
    SweepReport rep = check_theorem_d(ex61, samples);
    CHECK(rep.passed);
    CHECK(rep.skipped.empty());

    RationalMap<QpElem> ex63 = example_63(3);
    std::vector<BerkPoint<QpElem>> inside;
    for (long k = 0; k <= 8; ++k) inside.emplace_back(qp(3, 0), make_rat(k, 4));
    for (long k = 0; k <= 4; ++k) inside.emplace_back(qp(3, 1), make_rat(k, 2));
    SweepReport rep2 = check_theorem_d(ex63, inside);
    CHECK(rep2.passed);
}

TEST_CASE("tau limits at critical points") {
    RationalMap<QpElem> sq = normalize_map(qpoly(3, {0, 0, 1}), qpoly(3, {1}));
    CHECK(tau_limit_at_critical(sq, qp(3, 0)) == ExtVal(Rat(0)));

    RationalMap<QpElem> cube = normalize_map(qpoly(3, {0, 0, 0, 1}), qpoly(3, {1}));
    CHECK(tau_limit_at_critical(cube, qp(3, 0)) == ExtVal(make_rat(1, 2)));
    CHECK(tau_limit_at_critical_infinity(cube) == ExtVal(make_rat(1, 2)));

    // z^3 + z^5 over F_3(t): wild in residue characteristic
    RationalMap<FptElem> wild = normalize_map(fpoly(3, {0, 0, 0, 1, 0, 1}), fpoly(3, {1}));
    CHECK(tau_limit_at_critical(wild, FptElem::zero(wild.domain())) == ExtVal::inf());

    CHECK_THROWS_AS(tau_limit_at_critical(sq, qp(3, 1)), error);
}

TEST_CASE("tau grows without bound along the hull in the wild case") {
    RationalMap<FptElem> wild = normalize_map(fpoly(3, {0, 0, 0, 1, 0, 1}), fpoly(3, {1}));
    AuxPolynomial<FptElem> aux = aux_coeffs(wild);
    Domain dom = wild.domain();
    for (long s : {2L, 4L, 8L}) {
        BerkPoint<FptElem> x(FptElem::zero(dom), Rat(s));
        CHECK(dist_to_hull(wild, x) == Rat(0));
        CHECK(tau(aux, x) == TauValue::of(Rat(s)));
    }
}

TEST_CASE("local analysis: the worked wild instance") {
    Poly<QpElem> f = qpoly(3, {0, 0, 0, 1, 3});  // z^3 + 3z^4
    FuzzReport rep = fuzz_analyze(f, qp(3, 9));
    CHECK(rep.fuzz_case == FuzzCase::WildCharZero);
    CHECK(rep.m == 3);
    CHECK(rep.predicted_tube_radius == ExtVal(make_rat(1, 2)));
    CHECK(rep.local_radius == make_rat(5, 2));
    CHECK(rep.matches);
    CHECK(rep.roots_closed == 3);
    CHECK(rep.roots_open == 1);
    REQUIRE(rep.polygon.vertices.size() >= 2);
    CHECK(rep.polygon.vertices[0] == std::pair<long, Rat>{1, Rat(5)});
    CHECK(rep.polygon.vertices[1] == std::pair<long, Rat>{3, Rat(0)});
}

TEST_CASE("local analysis: tame and positive-characteristic instances") {
    FuzzReport tame = fuzz_analyze(qpoly(3, {0, 0, 1, 3}), qp(3, 3));  // z^2 + 3z^3
    CHECK(tame.fuzz_case == FuzzCase::TameAnyChar);
    CHECK(tame.local_radius == Rat(1));
    CHECK(tame.matches);
    CHECK(tame.roots_closed == 2);
    CHECK(tame.roots_open == 1);

    // z^3 (1 + t z) over F_3(t), delta = t^2: radius (3*2 + 1)/2
    Domain fd = make_domain(DomainTag::Fpt, 3);
    Poly<FptElem> f(fd, {FptElem::zero(fd), FptElem::zero(fd), FptElem::zero(fd),
                         FptElem::one(fd), FptElem::uniformizer(fd)});
    FuzzReport wild = fuzz_analyze(f, FptElem::uniformizer_pow(fd, 2));
    CHECK(wild.fuzz_case == FuzzCase::WildCharP);
    CHECK(wild.m == 3);
    CHECK(wild.m_prime == 4);
    CHECK(wild.predicted_tube_radius == ExtVal::inf());
    CHECK(wild.local_radius == make_rat(7, 2));
    CHECK(wild.matches);
    CHECK(wild.local_radius > Rat(2));  // strictly beyond ord(delta)
}

TEST_CASE("local analysis rejects unnormalized input") {
    CHECK_THROWS_AS(fuzz_analyze(qpoly(3, {0, 1}), qp(3, 3)), error);          // m = 1
    CHECK_THROWS_AS(fuzz_analyze(qpoly(3, {0, 0, 2, 3}), qp(3, 3)), error);    // lead != 1
    CHECK_THROWS_AS(fuzz_analyze(qpoly(3, {0, 0, 1, 1}), qp(3, 3)), error);    // |eps| = 1
    CHECK_THROWS_AS(fuzz_analyze(qpoly(3, {0, 0, 1, 3}), qp(3, 1)), error);    // |delta| = 1
    CHECK_THROWS_AS(fuzz_analyze(qpoly(3, {0, 0, 0, 1, 3}), qp(3, 3)), error); // delta >= r0
}

TEST_CASE("binomial valuation minimum") {
    CHECK(binomial_val_min(9, 3) == std::pair<Rat, long>{make_rat(-1, 2), 3});
    CHECK(binomial_val_min(4, 3) == std::pair<Rat, long>{Rat(0), 4});
    CHECK(binomial_val_min(2, 2) == std::pair<Rat, long>{Rat(-1), 2});
    // direct enumeration for a small sweep (the full range runs in acceptance)
    for (long p : {2L, 3L}) {
        for (long m = 2; m <= 40; ++m) {
            auto [value, argmin] = binomial_val_min(m, p);
            Rat best = make_rat(ord_p_binomial(m, 2, p) - ord_p_int(Int(m), p), 1);
            for (long s = 2; s <= m; ++s) {
                Rat v = make_rat(ord_p_binomial(m, s, p) - ord_p_int(Int(m), p), s - 1);
                best = std::min(best, v);
            }
            CHECK(value == best);
            CHECK(make_rat(ord_p_binomial(m, argmin, p) - ord_p_int(Int(m), p), argmin - 1) ==
                  value);
        }
    }
}

TEST_CASE("tubular radius over segments") {
    RationalMap<QpElem> ex63 = example_63(3);
    std::vector<Segment<QpElem>> segs{{qp(3, 0), Rat(-1), Rat(0)}, {qp(3, 0), Rat(0), Rat(1)}};
    CHECK(tubular_radius_on_subgraph(ex63, segs) == make_rat(1, 2));

    RationalMap<QpElem> big_p = normalize_map(qpoly(5, {0, 1, 0, 1}), qpoly(5, {1}));
    std::vector<Segment<QpElem>> segs2{{qp(5, 0), Rat(-2), Rat(2)}, {qp(5, 1), Rat(0), Rat(3)}};
    CHECK(tubular_radius_on_subgraph(big_p, segs2) == Rat(0));

    std::vector<Segment<QpElem>> degenerate{{qp(3, 0), Rat(0), Rat(0)}};
    CHECK(tubular_radius_on_subgraph(ex63, degenerate) == make_rat(1, 2));
}

TEST_CASE("tame maps over F_p(t) stay in a bounded tube") {
    // z^5 + z over F_3(t): every multiplicity is coprime to 3
    RationalMap<FptElem> psi = normalize_map(fpoly(3, {0, 1, 0, 0, 0, 1}), fpoly(3, {1}));
    Domain dom = psi.domain();
    std::vector<Segment<FptElem>> segs{{FptElem::zero(dom), Rat(-2), Rat(2)},
                                       {FptElem::one(dom), Rat(0), Rat(2)}};
    Rat r_phi = tubular_radius_on_subgraph(psi, segs);
    CHECK(r_phi == Rat(0));
    AuxPolynomial<FptElem> aux = aux_coeffs(psi);
    for (long k = -4; k <= 4; ++k) {
        BerkPoint<FptElem> x(FptElem::zero(dom), make_rat(k, 2));
        if (is_ramified(psi, aux, x)) CHECK(dist_to_hull(psi, x) <= r_phi);
    }
}

TEST_CASE("is_ramified follows the sign of t and the hull") {
    RationalMap<QpElem> phi = example_63(3);
    AuxPolynomial<QpElem> aux = aux_coeffs(phi);
    Domain dom = phi.domain();
    CHECK(is_ramified(phi, aux, BerkPoint<QpElem>(qp(3, 0), make_rat(1, 4))));  // t = 0 off hull
    CHECK_FALSE(is_ramified(phi, aux, BerkPoint<QpElem>(qp(3, 0), Rat(1))));    // t < 0
    CHECK(is_ramified(phi, aux, BerkPoint<QpElem>::gauss(dom)));                // t > 0

    RationalMap<QpElem> ex61 = example_61(3);
    CHECK(is_ramified(ex61, BerkPoint<QpElem>::gauss(ex61.domain())));

    // tame on-hull point with t = 0 decided by multiplicity
    BerkPoint<QpElem> deep(qp(3, 1), Rat(2));
    CHECK(t_frak(aux, deep) == TauValue::of(Rat(0)));
    CHECK(dist_to_hull(phi, deep) == Rat(0));
    CHECK(is_ramified(phi, aux, deep));  // multiplicity 2 at zeta_{1, q^{-2}}
}

TEST_CASE("undecidable ramification is reported, never guessed") {
    // (z^3 + 1)/z over Q_5 at zeta_{0, 5^{1/2}}: t = 0 on the hull, the
    // log-radius is not an integer, and the pole 0 blocks the zero count
    RationalMap<QpElem> phi = normalize_map(qpoly(5, {1, 0, 0, 1}), qpoly(5, {0, 1}));
    AuxPolynomial<QpElem> aux = aux_coeffs(phi);
    BerkPoint<QpElem> x(qp(5, 0), make_rat(-1, 2));
    CHECK(t_frak(aux, x) == TauValue::of(Rat(0)));
    CHECK(dist_to_hull(phi, x) == Rat(0));
    CHECK_THROWS_AS(is_ramified(phi, aux, x), error);
    try {
        is_ramified(phi, aux, x);
    } catch (const error& e) {
        CHECK(e.code() == errc::undecidable);
    }

    // the sweep lists such samples as skipped instead of failing
    SweepReport rep = check_theorem_d(phi, {x, BerkPoint<QpElem>::gauss(phi.domain())});
    CHECK(rep.passed);
    CHECK(rep.skipped.size() == 1);
    CHECK(rep.checked == 2);
}

TEST_CASE("theorem D machinery rejects positive characteristic") {
    RationalMap<FptElem> psi = example_62(3, 1);
    CHECK_THROWS_AS(check_theorem_d(psi, {BerkPoint<FptElem>::gauss(psi.domain())}), error);
}

TEST_CASE("joins of critical points lie on the hull") {
    RationalMap<QpElem> ex63 = example_63(3);
    CriticalSet<QpElem> cs = critical_set(ex63);
    REQUIRE(cs.rational_roots.size() == 2);
    BerkPoint<QpElem> c1 = BerkPoint<QpElem>::classical(cs.rational_roots[0].point);
    BerkPoint<QpElem> c2 = BerkPoint<QpElem>::classical(cs.rational_roots[1].point);
    BerkPoint<QpElem> j = join(c1, c2);
    CHECK(dist_to_hull(ex63, j) == Rat(0));

    std::mt19937 rng(103);
    Domain dom = make_domain(DomainTag::Qp, 3);
    int joins_checked = 0;
    for (int i = 0; i < 60 && joins_checked < 10; ++i) {
        RationalMap<QpElem> phi = random_map_infty_critical<QpElem>(rng, dom, 5);
        CriticalSet<QpElem> crit = critical_set(phi);
        if (crit.rational_roots.size() < 2) continue;
        for (size_t a = 0; a < crit.rational_roots.size(); ++a)
            for (size_t b = a + 1; b < crit.rational_roots.size(); ++b) {
                BerkPoint<QpElem> x = join(
                    BerkPoint<QpElem>::classical(crit.rational_roots[a].point),
                    BerkPoint<QpElem>::classical(crit.rational_roots[b].point));
                CHECK(dist_to_hull(phi, x) == Rat(0));
                // and so does every point above the join on the path to infinity
                BerkPoint<QpElem> above(x.center, x.s.finite() - 2);
                CHECK(dist_to_hull(phi, above) == Rat(0));
                ++joins_checked;
            }
    }
    CHECK(joins_checked > 0);
}

TEST_CASE("local analysis sweep in residue characteristic p") {
    // Random normalized series z^m (1 + eps) over F_p(t) with p | m.  When m
    // is a power of p every middle binomial vanishes mod p and the ramified
    // radius equals ((m'-1) ord(delta) + ord(eps_{m'-m})) / (m - 1) exactly;
    // for other multiples of p that value is a lower bound (the radius can
    // only reach deeper), and it always exceeds ord(delta).
    std::mt19937 rng(107);
    for (long p : {2L, 3L}) {
        Domain dom = make_domain(DomainTag::Fpt, p);
        auto build = [&](long m, long gap, long e, long tail) {
            std::vector<FptElem> fc(static_cast<size_t>(m + gap + tail) + 1,
                                    FptElem::zero(dom));
            fc[static_cast<size_t>(m)] = FptElem::one(dom);
            fc[static_cast<size_t>(m + gap)] = FptElem::uniformizer_pow(dom, e);
            for (long i = gap + 1; i <= gap + tail; ++i) {
                // higher terms must keep f'/z^{m'-1} invertible on the disk
                if ((m + i) % p == 0 || rng() % 2) continue;
                fc[static_cast<size_t>(m + i)] =
                    FptElem::uniformizer_pow(dom, e + 1 + rng() % 2);
            }
            return Poly<FptElem>(dom, fc);
        };
        int done = 0;
        while (done < 50) {
            long m = (rng() % 2) ? p : p * p;
            long gap = 1 + static_cast<long>(rng() % 3);  // intended m' - m
            if ((m + gap) % p == 0) continue;
            long e = 1 + static_cast<long>(rng() % 3);  // ord eps_{m'-m}
            Poly<FptElem> f = build(m, gap, e, static_cast<long>(rng() % 3));
            long k = 1 + static_cast<long>(rng() % 4);  // ord delta
            FuzzReport rep;
            try {
                rep = fuzz_analyze(f, FptElem::uniformizer_pow(dom, k));
            } catch (const error&) {
                continue;
            }
            CHECK(rep.fuzz_case == FuzzCase::WildCharP);
            CHECK(rep.m == m);
            CHECK(rep.m_prime == m + gap);
            CHECK(rep.matches);
            CHECK(rep.local_radius == Rat(Rat((m + gap - 1) * k + e) / Rat(m - 1)));
            CHECK(rep.local_radius > Rat(k));
            ++done;
        }
        // general multiples of p: the predicted value is a floor
        int general = 0;
        while (general < 25) {
            long m = p * (2 + static_cast<long>(rng() % 3));
            long gap = 1 + static_cast<long>(rng() % 3);
            if ((m + gap) % p == 0) continue;
            long e = 1 + static_cast<long>(rng() % 3);
            Poly<FptElem> f = build(m, gap, e, static_cast<long>(rng() % 3));
            long k = 1 + static_cast<long>(rng() % 4);
            FuzzReport rep;
            try {
                rep = fuzz_analyze(f, FptElem::uniformizer_pow(dom, k));
            } catch (const error&) {
                continue;
            }
            CHECK(rep.local_radius >= rep.predicted_local_radius);
            CHECK(rep.local_radius > Rat(k));
            ++general;
        }
        // tame instances in characteristic p stop at ord(delta)
        int tame_done = 0;
        while (tame_done < 50) {
            long m = 2 + static_cast<long>(rng() % 6);
            if (m % p == 0) continue;
            std::vector<FptElem> fc(static_cast<size_t>(m) + 2, FptElem::zero(dom));
            fc[static_cast<size_t>(m)] = FptElem::one(dom);
            if (rng() % 2)
                fc[static_cast<size_t>(m) + 1] =
                    FptElem::uniformizer_pow(dom, 1 + rng() % 3);
            Poly<FptElem> f(dom, fc);
            long k = 1 + static_cast<long>(rng() % 4);
            FuzzReport rep = fuzz_analyze(f, FptElem::uniformizer_pow(dom, k));
            CHECK(rep.fuzz_case == FuzzCase::TameAnyChar);
            CHECK(rep.local_radius == Rat(k));
            CHECK(rep.matches);
            ++tame_done;
        }
    }
}
