#include <doctest.h>

#include "test_util.hpp"

using namespace berkram;
using namespace berkram::testing;

namespace {
BerkPoint<QpElem> pt(long p, long num, long den, Rat s) {
    return BerkPoint<QpElem>(qp(p, num, den), std::move(s));
}
}  // namespace

TEST_CASE("rho on the worked pairs") {
    CHECK(rho(pt(3, 0, 1, Rat(0)), pt(3, 0, 1, Rat(2))) == Rat(2));
    CHECK(rho(pt(3, 0, 1, Rat(0)), pt(3, 3, 1, Rat(0))) == Rat(0));
    CHECK(same_point(pt(3, 0, 1, Rat(0)), pt(3, 3, 1, Rat(0))));
    CHECK(rho(pt(3, 1, 1, Rat(1)), pt(3, 9, 1, Rat(3))) == Rat(4));

    BerkPoint<QpElem> typeI = BerkPoint<QpElem>::classical(qp(3, 0));
    CHECK_THROWS_AS(rho(typeI, pt(3, 0, 1, Rat(0))), error);
}

TEST_CASE("joins") {
    Domain dom = make_domain(DomainTag::Qp, 3);
    BerkPoint<QpElem> zero = BerkPoint<QpElem>::classical(qp(3, 0));
    BerkPoint<QpElem> gauss = BerkPoint<QpElem>::gauss(dom);
    CHECK(same_point(join(zero, gauss), gauss));
    CHECK(same_point(join(BerkPoint<QpElem>::classical(qp(3, 1)),
                          BerkPoint<QpElem>::classical(qp(3, 2))),
                     pt(3, 1, 1, Rat(0))));
    CHECK(same_point(join(pt(3, 3, 1, Rat(2)), pt(3, 6, 1, Rat(2))), pt(3, 3, 1, Rat(1))));
}

TEST_CASE("seminorm_ord at the worked points") {
    CHECK(seminorm_ord(qpoly(3, {-3, 0, 1}), BerkPoint<QpElem>::gauss(make_domain(DomainTag::Qp, 3))) ==
          ExtVal(Rat(0)));
    CHECK(seminorm_ord(qpoly(3, {-3, 0, 0, 0, 3}),
                       BerkPoint<QpElem>::gauss(make_domain(DomainTag::Qp, 3))) == ExtVal(Rat(1)));
    CHECK(seminorm_ord(qpoly(3, {0, 1}), pt(3, 3, 1, Rat(2))) == ExtVal(Rat(1)));
}

TEST_CASE("diam and containment order") {
    CHECK(pt(5, 0, 1, Rat(3)).diam() == ExtVal(Rat(3)));
    CHECK(compare(pt(5, 0, 1, Rat(0)), pt(5, 0, 1, Rat(1))) == DiskOrder::Contains);
    CHECK(compare(pt(5, 0, 1, Rat(1)), pt(5, 0, 1, Rat(0))) == DiskOrder::Inside);
    CHECK(compare(pt(5, 1, 1, Rat(1)), pt(5, 0, 1, Rat(1))) == DiskOrder::Incomparable);
    CHECK(compare(pt(5, 5, 1, Rat(1)), pt(5, 0, 1, Rat(1))) == DiskOrder::Equal);
    CHECK(pt(5, 0, 1, Rat(2)).type() == PointType::II);
    CHECK(pt(5, 0, 1, make_rat(1, 2)).type() == PointType::III);
    CHECK(BerkPoint<QpElem>::classical(qp(5, 1)).type() == PointType::I);
}

TEST_CASE("rho is a tree metric on random points") {
    std::mt19937 rng(23);
    Domain dom = make_domain(DomainTag::Qp, 3);
    for (int i = 0; i < 200; ++i) {
        BerkPoint<QpElem> x(random_elem<QpElem>(rng, dom),
                            make_rat(static_cast<long>(rng() % 13) - 6, 1 + rng() % 3));
        BerkPoint<QpElem> y(random_elem<QpElem>(rng, dom),
                            make_rat(static_cast<long>(rng() % 13) - 6, 1 + rng() % 3));
        Rat d = rho(x, y);
        CHECK(d == rho(y, x));
        CHECK(d >= 0);
        CHECK((d == 0) == same_point(x, y));
        BerkPoint<QpElem> j = join(x, y);
        CHECK(rho(x, j) + rho(j, y) == d);
    }
}

TEST_CASE("seminorm_ord ignores the center representative and is multiplicative") {
    std::mt19937 rng(29);
    Domain dom = make_domain(DomainTag::Qp, 5);
    for (int i = 0; i < 100; ++i) {
        Poly<QpElem> P = random_poly<QpElem>(rng, dom, 6);
        Poly<QpElem> Q = random_poly<QpElem>(rng, dom, 6);
        if (P.is_zero() || Q.is_zero()) continue;
        Rat s = make_rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 2);
        QpElem a = random_elem<QpElem>(rng, dom);
        // b = a + something of ord >= s
        QpElem b = a + QpElem(dom, rat_pow(Rat(5), 3)) * QpElem::from_int(dom, Int(1 + rng() % 4));
        BerkPoint<QpElem> xa(a, s);
        BerkPoint<QpElem> xb(b, s);
        if ((a - b).ord() >= ExtVal(s)) CHECK(seminorm_ord(P, xa) == seminorm_ord(P, xb));
        CHECK(seminorm_ord(P * Q, xa) == seminorm_ord(P, xa) + seminorm_ord(Q, xa));
    }
}

TEST_CASE("inversion of points") {
    // zeta_{3, 3^-2} -> zeta_{1/3, 3^0}
    BerkPoint<QpElem> x = pt(3, 3, 1, Rat(2));
    BerkPoint<QpElem> ix = invert_point(x);
    CHECK(ix.center == qp(3, 1, 3));
    CHECK(ix.s == ExtVal(Rat(0)));
    // disks containing 0 invert through the center
    BerkPoint<QpElem> g = pt(3, 3, 1, Rat(0));
    BerkPoint<QpElem> ig = invert_point(g);
    CHECK(ig.center.is_zero());
    CHECK(ig.s == ExtVal(Rat(0)));
}

TEST_CASE("seminorm properties hold over F_p(t) as well") {
    std::mt19937 rng(89);
    Domain dom = make_domain(DomainTag::Fpt, 3);
    for (int i = 0; i < 60; ++i) {
        Poly<FptElem> P = random_poly<FptElem>(rng, dom, 5);
        Poly<FptElem> Q = random_poly<FptElem>(rng, dom, 5);
        if (P.is_zero() || Q.is_zero()) continue;
        Rat s = make_rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 2);
        FptElem a = random_elem<FptElem>(rng, dom);
        BerkPoint<FptElem> x(a, s);
        CHECK(seminorm_ord(P * Q, x) == seminorm_ord(P, x) + seminorm_ord(Q, x));
        FptElem b = a + FptElem::uniformizer_pow(dom, 4);
        if ((a - b).ord() >= ExtVal(s))
            CHECK(seminorm_ord(P, x) == seminorm_ord(P, BerkPoint<FptElem>(b, s)));
    }
}
