#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "berkram/hull.hpp"

namespace berkram {

// ord-units disk enlargement for the Rolle-type statements:
// 0 when p = 0 or p > d, 1/(p-1) otherwise
inline Rat gamma_shift(long p, long d) {
    if (d < 1) throw error(errc::invalid_argument, "gamma shift needs degree >= 1");
    if (p == 0 || p > d) return Rat(0);
    return make_rat(1, p - 1);
}

// ord of the injectivity radius r_p = |p|^{1/(p-1)} for maps with no pole or
// critical point in the open unit disk, characteristic zero
inline Rat robert_injectivity_radius(long p) {
    if (!is_prime(p)) throw error(errc::invalid_argument, "p must be prime");
    return make_rat(1, p - 1);
}

struct RolleReport {
    long zeros_in_disk = 0;
    Rat enlarged_disk_ord;          // s - shift: log-radius of the enlarged disk
    bool critical_exists = true;    // false for maps with no finite critical point
    ExtVal critical_found_at;       // largest valuation of a shifted Wronskian root
    bool verdict = true;            // >= 2 zeros implies a critical point in the
                                    // enlarged disk
    Rat shift_used;
};

// Counts distinct zeros of phi in D(a, q^{-s}); if there are at least two,
// verifies that a critical point lies within the gamma-enlarged disk.
// An explicit forced_shift overrides the enlargement (sharpness probes).
template <CoefficientField K>
RolleReport rolle_check(const RationalMap<K>& phi, const K& a, const Rat& s,
                        std::optional<Rat> forced_shift = std::nullopt) {
    if (phi.domain().characteristic() != 0)
        throw error(errc::characteristic_p, "the Rolle check runs in characteristic zero");

    RolleReport rep;
    rep.shift_used = forced_shift ? *forced_shift : gamma_shift(phi.domain().p, phi.degree());
    rep.enlarged_disk_ord = s - rep.shift_used;

    // distinct zeros of phi = distinct roots of f
    Poly<K> sq = phi.f().squarefree_part();
    rep.zeros_in_disk = count_roots(sq, a, s, DiskMode::Closed);

    rep.critical_exists = phi.wronskian().degree() >= 1;
    if (rep.critical_exists)
        rep.critical_found_at = max_root_valuation_at(phi.wronskian(), a);
    if (rep.zeros_in_disk >= 2)
        rep.verdict = rep.critical_exists && rep.critical_found_at >= ExtVal(rep.enlarged_disk_ord);
    return rep;
}

// ---------------------------------------------------------------------------
// Does phi map the closed disk D(a, q^{-s}) onto the whole projective line?
// ---------------------------------------------------------------------------

struct SurjectivityReport {
    bool surjective = false;
    bool pole_in_disk = false;
    // (description, root count) per explicit candidate target
    std::vector<std::pair<std::string, long>> candidates;
    // min over generic target valuations of (roots in disk); < 1 refutes
    std::optional<long> generic_min;
};

namespace detail {

// For a generic target c of valuation v, the i-th coefficient of the shifted
// f - c g has ord min(f_i, v + g_i).  A root lies in the closed disk exactly
// when some index i >= 1 ties or beats i = 0 for the seminorm, so the check
// over all target valuations v compares two exact piecewise-affine envelopes.
template <CoefficientField K>
bool generic_targets_all_hit(const Poly<K>& fs, const Poly<K>& gs, const Rat& s) {
    std::vector<PLFunc::Line> tail, head;  // tail: indices >= 1; head: index 0
    std::vector<Rat> flat, steep;          // intercepts of slope-0 / slope-1 lines
    long top = std::max(fs.degree(), gs.degree());
    for (long i = 0; i <= top; ++i) {
        ExtVal fo = fs.coeff(i).ord();
        ExtVal go = gs.coeff(i).ord();
        if (fo.is_finite()) {
            Rat c = fo.finite() + Rat(i) * s;
            (i == 0 ? head : tail).push_back({c, Rat(0)});
            flat.push_back(c);
        }
        if (go.is_finite()) {
            Rat c = go.finite() + Rat(i) * s;
            (i == 0 ? head : tail).push_back({c, Rat(1)});
            steep.push_back(c);
        }
    }
    if (tail.empty()) return false;  // f - c g constant in the disk chart
    if (head.empty()) return true;   // the constant coefficient always vanishes

    // every envelope kink is a crossing of a slope-0 and a slope-1 line
    Rat lo(0), hi(0);
    bool first = true;
    for (const Rat& a : flat)
        for (const Rat& b : steep) {
            Rat v = a - b;
            if (first) {
                lo = hi = v;
                first = false;
            } else {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    lo -= 1;
    hi += 1;
    PLFunc diff =
        PLFunc::lower_envelope(lo, hi, std::move(tail)) - PLFunc::lower_envelope(lo, hi, std::move(head));
    if (diff.max_value().first > 0) return false;
    // the end pieces carry the asymptotic slopes, so an escape to +inf on
    // either side shows up as a nonzero slope there
    if (diff.pieces().front().beta < 0) return false;
    if (diff.pieces().back().beta > 0) return false;
    return true;
}

}  // namespace detail

template <CoefficientField K>
SurjectivityReport surjectivity_analysis(const RationalMap<K>& phi, const K& a, const Rat& s) {
    SurjectivityReport rep;
    const Domain& dom = phi.domain();

    rep.pole_in_disk = count_roots(phi.g(), a, s, DiskMode::Closed) > 0;
    if (!rep.pole_in_disk) {
        rep.surjective = false;  // the image of a disk under a pole-free map is a disk
        return rep;
    }

    Poly<K> fs = phi.f().taylor_shift(a);
    Poly<K> gs = phi.g().taylor_shift(a);

    auto count_for = [&](const K& c) {
        Poly<K> P = phi.f() - Poly<K>::constant(c) * phi.g();
        if (P.is_zero()) return 0L;  // phi never equals c elsewhere
        if (P.degree() == 0) return 0L;
        return count_roots(P, a, s, DiskMode::Closed);
    };

    // explicit candidate targets: infinity, 0, phi(a), and every coefficient
    // ratio that can depress a coefficient of f - c g
    rep.candidates.emplace_back("inf", count_roots(phi.g(), a, s, DiskMode::Closed));
    rep.candidates.emplace_back("0", count_roots(phi.f(), a, s, DiskMode::Closed));
    if (auto va = phi.value_at(a)) rep.candidates.emplace_back("phi(center)", count_for(*va));
    long top = std::max(fs.degree(), gs.degree());
    for (long i = 0; i <= top; ++i) {
        if (fs.coeff(i).is_zero() || gs.coeff(i).is_zero()) continue;
        K ratio = fs.coeff(i) / gs.coeff(i);
        rep.candidates.emplace_back("ratio[" + std::to_string(i) + "]", count_for(ratio));
        // nearby residually-deeper probes
        K probe = ratio * (K::one(dom) + K::uniformizer_pow(dom, 1));
        rep.candidates.emplace_back("ratio[" + std::to_string(i) + "]+", count_for(probe));
    }

    bool all_hit = detail::generic_targets_all_hit(fs, gs, s);
    rep.generic_min = all_hit ? 1 : 0;

    rep.surjective = all_hit;
    for (const auto& [desc, n] : rep.candidates)
        if (n < 1) rep.surjective = false;
    return rep;
}

template <CoefficientField K>
bool surjectivity_check(const RationalMap<K>& phi, const K& a, const Rat& s) {
    return surjectivity_analysis(phi, a, s).surjective;
}

struct App2Report {
    bool applicable = false;  // the disk maps onto the projective line
    bool holds = true;        // a critical point lies in the enlarged disk
    Rat enlarged_disk_ord;
    bool critical_exists = true;
    ExtVal critical_found_at;
};

// If phi(D(a, q^{-s})) covers the projective line, a critical point must lie
// in the gamma-enlarged disk.
template <CoefficientField K>
App2Report app2_check(const RationalMap<K>& phi, const K& a, const Rat& s) {
    if (phi.domain().characteristic() != 0)
        throw error(errc::characteristic_p, "the covering check runs in characteristic zero");
    App2Report rep;
    rep.applicable = surjectivity_check(phi, a, s);
    rep.enlarged_disk_ord = s - gamma_shift(phi.domain().p, phi.degree());
    rep.critical_exists = phi.wronskian().degree() >= 1;
    if (rep.critical_exists)
        rep.critical_found_at = max_root_valuation_at(phi.wronskian(), a);
    if (rep.applicable)
        rep.holds = rep.critical_exists && rep.critical_found_at >= ExtVal(rep.enlarged_disk_ord);
    return rep;
}

}  // namespace berkram
