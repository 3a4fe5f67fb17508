#pragma once

#include <utility>
#include <vector>

#include "berkram/poly.hpp"

namespace berkram {

// Lower convex hull of {(i, ord(c_i)) : c_i != 0}.  A face of slope mu and
// horizontal length L stands for L roots of valuation -mu; start_index counts
// roots of valuation +inf (the order of vanishing at 0).
struct NewtonPolygon {
    struct Face {
        Rat slope;
        long length = 0;
    };

    std::vector<std::pair<long, Rat>> vertices;  // strictly increasing indices
    std::vector<Face> faces;                     // slopes strictly increasing
    long start_index = 0;
    long degree = 0;

    // multiset of root valuations as (valuation, count)
    std::vector<std::pair<ExtVal, long>> root_valuations() const {
        std::vector<std::pair<ExtVal, long>> out;
        for (const auto& f : faces) out.emplace_back(ExtVal(-f.slope), f.length);
        if (start_index > 0) out.emplace_back(ExtVal::inf(), start_index);
        return out;
    }

    // largest root valuation; +inf when 0 is a root, -inf never occurs
    // (a polynomial of degree >= 1 has a root); degree-0 input has no roots
    ExtVal max_root_valuation() const {
        if (start_index > 0) return ExtVal::inf();
        if (faces.empty()) throw error(errc::invalid_argument, "constant polynomial has no roots");
        return ExtVal(-faces.front().slope);
    }

    long count_at_least(const ExtVal& s, bool strict) const {
        long n = start_index;
        for (const auto& f : faces) {
            ExtVal v(-f.slope);
            if (strict ? (v > s) : (v >= s)) n += f.length;
        }
        return n;
    }
};

// points: (index, ord of coefficient), finite ords only, any order
inline NewtonPolygon newton_polygon_from_points(std::vector<std::pair<long, Rat>> pts,
                                                long degree) {
    if (pts.empty()) throw error(errc::zero_polynomial, "no finite points");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    NewtonPolygon np;
    np.degree = degree;
    np.start_index = pts.front().first;

    // monotone chain for the lower hull over exact rationals
    std::vector<std::pair<long, Rat>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // pop b unless it turns strictly left of segment a->pt
            Rat lhs = (b.second - a.second) * Rat(pt.first - a.first);
            Rat rhs = (pt.second - a.second) * Rat(b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }

    np.vertices = hull;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        Rat slope = (hull[i + 1].second - hull[i].second) / Rat(hull[i + 1].first - hull[i].first);
        np.faces.push_back({slope, hull[i + 1].first - hull[i].first});
    }
    return np;
}

template <CoefficientField K>
NewtonPolygon newton_polygon(const Poly<K>& P) {
    if (P.is_zero()) throw error(errc::zero_polynomial, "Newton polygon of the zero polynomial");
    std::vector<std::pair<long, Rat>> pts;
    for (long i = 0; i <= P.degree(); ++i) {
        ExtVal v = P.coeff(i).ord();
        if (v.is_finite()) pts.emplace_back(i, v.finite());
    }
    return newton_polygon_from_points(std::move(pts), P.degree());
}

template <CoefficientField K>
std::vector<std::pair<ExtVal, long>> root_valuations(const Poly<K>& P) {
    return newton_polygon(P).root_valuations();
}

enum class DiskMode { Closed, Open };

// number of roots x of P (with multiplicity, in the algebraic closure)
// with ord(x - a) >= s (closed) or > s (open)
template <CoefficientField K>
long count_roots(const Poly<K>& P, const K& a, const Rat& s, DiskMode mode) {
    if (P.is_zero()) throw error(errc::zero_polynomial, "root count of the zero polynomial");
    if (P.degree() == 0) return 0;
    NewtonPolygon np = newton_polygon(P.taylor_shift(a));
    return np.count_at_least(ExtVal(s), mode == DiskMode::Open);
}

// largest ord(r - a) over roots r of P; used for hull distances
template <CoefficientField K>
ExtVal max_root_valuation_at(const Poly<K>& P, const K& a) {
    return newton_polygon(P.taylor_shift(a)).max_root_valuation();
}

}  // namespace berkram
