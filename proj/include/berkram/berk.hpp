#pragma once

#include "berkram/newton.hpp"

namespace berkram {

enum class PointType { I, II, III };

enum class DiskOrder { Equal, Inside, Contains, Incomparable };

// The point zeta_{a, q^{-s}} of the Berkovich line, given by a base-field
// center a and an exact log-radius s; s = +inf is the type I point a itself.
template <CoefficientField K>
struct BerkPoint {
    K center;
    ExtVal s;

    BerkPoint(K c, ExtVal logRadius) : center(std::move(c)), s(std::move(logRadius)) {}
    BerkPoint(K c, Rat logRadius) : center(std::move(c)), s(ExtVal(std::move(logRadius))) {}

    static BerkPoint gauss(const Domain& d) { return BerkPoint(K::zero(d), Rat(0)); }
    static BerkPoint classical(K a) { return BerkPoint(std::move(a), ExtVal::inf()); }

    const Domain& domain() const { return center.domain(); }

    PointType type() const {
        if (s.infinite) return PointType::I;
        return rat_is_integer(s.finite()) ? PointType::II : PointType::III;
    }

    // the log-radius; as a radius this is q^{-s}
    ExtVal diam() const { return s; }
};

template <CoefficientField K>
bool same_point(const BerkPoint<K>& x, const BerkPoint<K>& y) {
    require_same_domain(x.domain(), y.domain());
    if (!(x.s == y.s)) return false;
    return (x.center - y.center).ord() >= x.s;
}

// join height: least upper bound of the two disks on the path to infinity
template <CoefficientField K>
ExtVal join_height(const BerkPoint<K>& x, const BerkPoint<K>& y) {
    require_same_domain(x.domain(), y.domain());
    return min(min(x.s, y.s), (x.center - y.center).ord());
}

template <CoefficientField K>
BerkPoint<K> join(const BerkPoint<K>& x, const BerkPoint<K>& y) {
    return BerkPoint<K>(x.center, join_height(x, y));
}

// hyperbolic metric on H, normalized by rho(zeta_{0,1}, zeta_{0,|p|^alpha}) = alpha
template <CoefficientField K>
Rat rho(const BerkPoint<K>& x, const BerkPoint<K>& y) {
    if (x.s.infinite || y.s.infinite)
        throw error(errc::infinite_distance, "type I endpoint is at infinite distance");
    ExtVal j = join_height(x, y);
    return (x.s.finite() - j.finite()) + (y.s.finite() - j.finite());
}

// containment partial order on the underlying disks
template <CoefficientField K>
DiskOrder compare(const BerkPoint<K>& x, const BerkPoint<K>& y) {
    bool x_in_y = (y.s <= x.s) && ((x.center - y.center).ord() >= y.s);
    bool y_in_x = (x.s <= y.s) && ((x.center - y.center).ord() >= x.s);
    if (x_in_y && y_in_x) return DiskOrder::Equal;
    if (x_in_y) return DiskOrder::Inside;
    if (y_in_x) return DiskOrder::Contains;
    return DiskOrder::Incomparable;
}

// -log_q |P|(x) in ord units: min_i (ord(p_i) + i*s) over the a-shifted
// coefficients.  Multiplicative in P; +inf only for the zero polynomial.
template <CoefficientField K>
ExtVal seminorm_ord(const Poly<K>& P, const BerkPoint<K>& x) {
    if (x.s.infinite)
        throw error(errc::invalid_argument, "seminorm needs a finite log-radius");
    if (P.is_zero()) return ExtVal::inf();
    Poly<K> Q = P.taylor_shift(x.center);
    ExtVal m = ExtVal::inf();
    for (long i = 0; i <= Q.degree(); ++i) {
        ExtVal v = Q.coeff(i).ord();
        if (!v.is_finite()) continue;
        m = min(m, ExtVal(v.finite() + Rat(i) * x.s.finite()));
    }
    return m;
}

// image of x under z -> 1/z
template <CoefficientField K>
BerkPoint<K> invert_point(const BerkPoint<K>& x) {
    ExtVal ca = x.center.ord();
    if (ca >= x.s) {
        // disk contains 0: zeta_{0,s} -> zeta_{0,-s}
        if (x.s.infinite) throw error(errc::invalid_argument, "cannot invert the type I point 0");
        return BerkPoint<K>(K::zero(x.domain()), ExtVal(-x.s.finite()));
    }
    K inv_center = K::one(x.domain()) / x.center;
    if (x.s.infinite) return BerkPoint<K>::classical(inv_center);
    return BerkPoint<K>(inv_center, ExtVal(x.s.finite() - 2 * ca.finite()));
}

}  // namespace berkram
