#pragma once

#include <optional>
#include <random>

#include "berkram/berkram.hpp"

namespace berkram::testing {

inline QpElem qp(long p, long num, long den = 1) {
    return QpElem(make_domain(DomainTag::Qp, p), make_rat(num, den));
}

inline Poly<QpElem> qpoly(long p, const std::vector<long>& ints) {
    return Poly<QpElem>::from_int_coeffs(make_domain(DomainTag::Qp, p), ints);
}

inline Poly<FptElem> fpoly(long p, const std::vector<long>& ints) {
    return Poly<FptElem>::from_int_coeffs(make_domain(DomainTag::Fpt, p), ints);
}

inline FptElem fpt(long p, std::vector<long> num, std::vector<long> den = {1}) {
    Domain dom = make_domain(DomainTag::Fpt, p);
    return FptElem(dom, FpPoly(p, std::move(num)), FpPoly(p, std::move(den)));
}

template <CoefficientField K>
K random_elem(std::mt19937& rng, const Domain& dom, bool allow_zero = true) {
    std::uniform_int_distribution<long> small(-4, 4);
    std::uniform_int_distribution<long> e(-2, 2);
    K v = K::from_int(dom, Int(small(rng)));
    if (!allow_zero && v.is_zero()) v = K::one(dom);
    if constexpr (std::is_same_v<K, FptElem>) {
        // mix in a power of t so valuations vary
        if (rng() % 2) v = v + K::from_int(dom, Int(small(rng))) * K::uniformizer_pow(dom, 1);
    }
    if (!v.is_zero() && rng() % 2) v = v * K::uniformizer_pow(dom, e(rng));
    return v;
}

template <CoefficientField K>
Poly<K> random_poly(std::mt19937& rng, const Domain& dom, long maxdeg, bool monicish = false) {
    std::uniform_int_distribution<long> du(0, maxdeg);
    long deg = du(rng);
    std::vector<K> c;
    for (long i = 0; i <= deg; ++i) c.push_back(random_elem<K>(rng, dom));
    if (c.back().is_zero() || monicish) c.back() = K::one(dom);
    return Poly<K>(dom, std::move(c));
}

// separable nonconstant map, deg <= maxdeg
template <CoefficientField K>
RationalMap<K> random_map(std::mt19937& rng, const Domain& dom, long maxdeg) {
    for (;;) {
        try {
            Poly<K> f = random_poly<K>(rng, dom, maxdeg);
            Poly<K> g = random_poly<K>(rng, dom, maxdeg);
            if (g.is_zero()) continue;
            return normalize_map(f, g);
        } catch (const error&) {
        }
    }
}

// separable map with infinity critical: deg f >= deg g + 2
template <CoefficientField K>
RationalMap<K> random_map_infty_critical(std::mt19937& rng, const Domain& dom, long maxdeg) {
    for (;;) {
        try {
            std::uniform_int_distribution<long> df(2, maxdeg);
            long degf = df(rng);
            std::uniform_int_distribution<long> dg(0, degf - 2);
            long degg = dg(rng);
            std::vector<K> fc, gc;
            for (long i = 0; i <= degf; ++i) fc.push_back(random_elem<K>(rng, dom));
            for (long i = 0; i <= degg; ++i) gc.push_back(random_elem<K>(rng, dom));
            fc.back() = K::one(dom);
            if (gc.back().is_zero()) gc.back() = K::one(dom);
            RationalMap<K> phi = normalize_map(Poly<K>(dom, fc), Poly<K>(dom, gc));
            if (phi.multiplicity_at_infinity() > 1) return phi;
        } catch (const error&) {
        }
    }
}

}  // namespace berkram::testing
