#pragma once

#include <string>
#include <utility>
#include <vector>

#include "berkram/auxram.hpp"
#include "berkram/padic_approx.hpp"

namespace berkram {

// ord_p of a binomial coefficient
inline long ord_p_binomial(long m, long s, long p) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(s));
    if (b == 0) return 0;
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), b.get_mpz_t(), Int(p).get_mpz_t()));
}

inline long ord_p_int(const Int& n, long p) {
    if (n == 0) throw error(errc::invalid_argument, "ord of 0");
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), Int(p).get_mpz_t()));
}

// min over 2 <= s <= m of ord_p(binom(m,s)/m)/(s-1): (0, m) when p does not
// divide m, (-1/(p-1), p) when it does.
inline std::pair<Rat, long> binomial_val_min(long m, long p) {
    if (m < 2) throw error(errc::invalid_argument, "binomial_val_min needs m >= 2");
    if (!is_prime(p)) throw error(errc::invalid_argument, "p must be prime");
    if (m % p != 0) return {Rat(0), m};
    return {make_rat(-1, p - 1), p};
}

// ---------------------------------------------------------------------------
// Critical points
// ---------------------------------------------------------------------------

template <CoefficientField K>
struct CriticalSet {
    struct LocatedRoot {
        K point;
        long weight;  // order of vanishing of the Wronskian
        long mult;    // local degree of the map there
    };

    bool has_infinity = false;
    long mult_at_infinity = 1;
    std::vector<std::pair<ExtVal, long>> valuation_multiset;  // all finite critical points
    std::vector<LocatedRoot> rational_roots;                  // those found in the base field
    std::vector<PAdicApprox> hensel_roots;                    // PAdic domains only

    long total_weight() const {
        long t = 0;
        for (const auto& [v, n] : valuation_multiset) t += n;
        return t;
    }
};

namespace detail {

// all divisors of n assembled from trial division; complete for |n| with no
// prime factor beyond the bound (desk-scale coefficients)
inline std::vector<Int> bounded_divisors(Int n, long bound = 1000000) {
    std::vector<Int> divs{Int(1)};
    if (n < 0) n = -n;
    if (n == 0) return divs;
    for (Int d(2); d * d <= n && d <= bound; ++d) {
        while (n % d == 0) {
            n /= d;
            size_t sz = divs.size();
            for (size_t i = 0; i < sz; ++i) {
                Int cand = divs[i] * d;
                bool seen = false;
                for (const auto& e : divs)
                    if (e == cand) seen = true;
                if (!seen) divs.push_back(cand);
            }
        }
    }
    if (n > 1 && n <= bound * static_cast<long>(bound)) {
        size_t sz = divs.size();
        for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * n);
    }
    return divs;
}

// exact rational roots of a polynomial over Q, with multiplicities
inline std::vector<std::pair<Rat, long>> rational_roots_q(const Poly<QpElem>& P) {
    // clear denominators to a primitive integer polynomial
    Int den(1);
    for (long i = 0; i <= P.degree(); ++i) den = lcm(den, P.coeff(i).rat().get_den());
    std::vector<Int> c;
    for (long i = 0; i <= P.degree(); ++i) {
        Rat v = P.coeff(i).rat() * Rat(den);
        c.push_back(v.get_num());
    }
    long t = 0;
    while (t < static_cast<long>(c.size()) && c[static_cast<size_t>(t)] == 0) ++t;

    std::vector<Rat> candidates{Rat(0)};
    if (t < static_cast<long>(c.size())) {
        for (const Int& u : bounded_divisors(c[static_cast<size_t>(t)]))
            for (const Int& v : bounded_divisors(c.back())) {
                Rat r(u, v);
                r.canonicalize();
                candidates.push_back(r);
                candidates.push_back(-r);
            }
    }

    std::vector<std::pair<Rat, long>> out;
    Poly<QpElem> rem = P;
    for (const Rat& r : candidates) {
        QpElem x(P.domain(), r);
        long mult = 0;
        while (!rem.is_zero() && rem.degree() >= 1 && rem.eval(x).is_zero()) {
            Poly<QpElem> lin(P.domain(), {(-x), QpElem::one(P.domain())});
            rem = Poly<QpElem>::divrem(rem, lin).first;
            ++mult;
        }
        if (mult > 0) out.emplace_back(r, mult);
    }
    return out;
}

// monic irreducible factors of an F_p[t] polynomial by trial division over
// monic candidates of increasing degree; capped at desk scale
inline std::vector<FpPoly> fp_factors(FpPoly f) {
    std::vector<FpPoly> out;
    long p = f.p();
    if (f.degree() < 1) return out;
    for (long deg = 1; deg <= f.degree(); ++deg) {
        double combos = 1;
        for (long i = 0; i < deg; ++i) combos *= static_cast<double>(p);
        if (combos > 200000.0) break;  // remaining cofactor stays unfactored
        std::vector<long> idx(static_cast<size_t>(deg), 0);
        bool done = false;
        while (!done && f.degree() >= deg) {
            std::vector<long> cand(idx);
            cand.push_back(1);
            FpPoly g(p, cand);
            while (f.degree() >= g.degree() && FpPoly::divrem(f, g).second.is_zero()) {
                out.push_back(g);
                f = f / g;
            }
            done = true;
            for (auto& d : idx) {
                if (++d < p) {
                    done = false;
                    break;
                }
                d = 0;
            }
        }
        if (f.degree() < 1) break;
    }
    return out;
}

inline std::vector<FpPoly> fp_divisors(const FpPoly& f) {
    std::vector<FpPoly> out{FpPoly::constant(f.p(), 1)};
    for (const FpPoly& q : fp_factors(f)) {
        size_t sz = out.size();
        for (size_t i = 0; i < sz; ++i) {
            FpPoly cand = out[i] * q;
            bool seen = false;
            for (const auto& e : out)
                if (e == cand) seen = true;
            if (!seen) out.push_back(cand);
        }
    }
    return out;
}

// exact roots in F_p(t) of a polynomial with F_p(t) coefficients
inline std::vector<std::pair<FptElem, long>> rational_roots_fpt(const Poly<FptElem>& P) {
    const Domain& dom = P.domain();
    long p = dom.p;
    FpPoly den = FpPoly::constant(p, 1);
    for (long i = 0; i <= P.degree(); ++i) {
        FpPoly g = gcd(den, P.coeff(i).den());
        den = den * (P.coeff(i).den() / g);
    }
    std::vector<FpPoly> c;
    for (long i = 0; i <= P.degree(); ++i) {
        FptElem v = P.coeff(i) * FptElem(dom, den, FpPoly::constant(p, 1));
        c.push_back(v.num());  // denominator is 1 after clearing
    }
    long t = 0;
    while (t < static_cast<long>(c.size()) && c[static_cast<size_t>(t)].is_zero()) ++t;

    std::vector<FptElem> candidates{FptElem::zero(dom)};
    if (t < static_cast<long>(c.size())) {
        for (const FpPoly& u : fp_divisors(c[static_cast<size_t>(t)]))
            for (const FpPoly& v : fp_divisors(c.back()))
                for (long unit = 1; unit < p; ++unit)
                    candidates.emplace_back(dom, u.scaled(unit), v);
    }

    std::vector<std::pair<FptElem, long>> out;
    Poly<FptElem> rem = P;
    for (const FptElem& r : candidates) {
        bool seen = false;
        for (const auto& [q, n] : out)
            if (q == r) seen = true;
        if (seen) continue;
        long mult = 0;
        while (!rem.is_zero() && rem.degree() >= 1 && rem.eval(r).is_zero()) {
            Poly<FptElem> lin(dom, {(-r), FptElem::one(dom)});
            rem = Poly<FptElem>::divrem(rem, lin).first;
            ++mult;
        }
        if (mult > 0) out.emplace_back(r, mult);
    }
    return out;
}

template <CoefficientField K>
std::vector<std::pair<K, long>> base_field_roots(const Poly<K>& P);

template <>
inline std::vector<std::pair<QpElem, long>> base_field_roots(const Poly<QpElem>& P) {
    std::vector<std::pair<QpElem, long>> out;
    for (auto& [r, m] : rational_roots_q(P)) out.emplace_back(QpElem(P.domain(), r), m);
    return out;
}

template <>
inline std::vector<std::pair<FptElem, long>> base_field_roots(const Poly<FptElem>& P) {
    return rational_roots_fpt(P);
}

}  // namespace detail

// Finite critical points from the Wronskian (valuation multiset plus exactly
// located base-field roots), the flag at infinity, and Hensel lifts of
// residue-simple Wronskian roots over Q_p.
template <CoefficientField K>
CriticalSet<K> critical_set(const RationalMap<K>& phi) {
    CriticalSet<K> out;
    out.mult_at_infinity = phi.multiplicity_at_infinity();
    out.has_infinity = out.mult_at_infinity > 1;

    const Poly<K>& wr = phi.wronskian();
    if (wr.degree() >= 1) out.valuation_multiset = newton_polygon(wr).root_valuations();

    for (auto& [root, weight] : detail::base_field_roots(wr)) {
        typename CriticalSet<K>::LocatedRoot lr;
        lr.point = root;
        lr.weight = weight;
        lr.mult = phi.multiplicity_at(root);
        out.rational_roots.push_back(std::move(lr));
    }

    if constexpr (std::is_same_v<K, QpElem>) {
        out.hensel_roots = hensel_roots_of(wr, 6);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Distance to the hull of the critical points
// ---------------------------------------------------------------------------

namespace detail {

// With infinity critical the hull is the union of the paths [c, infinity],
// and the distance is max(0, s - v_max(a)) with v_max(a) the largest root
// valuation of the a-shifted Wronskian.
template <CoefficientField K>
Rat dist_to_hull_infty_critical(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    if (x.s.infinite) throw error(errc::invalid_argument, "hull distance from a type I point");
    const Poly<K>& wr = phi.wronskian();
    if (wr.degree() < 1)
        throw error(errc::convention_unsatisfiable,
                    "no finite critical point: the hull degenerates to infinity");
    ExtVal vmax = max_root_valuation_at(wr, x.center);
    if (!vmax.is_finite()) return Rat(0);  // the center itself is critical
    Rat d = x.s.finite() - vmax.finite();
    return d > 0 ? d : Rat(0);
}

template <CoefficientField K>
struct HullQuery {
    RationalMap<K> phi;  // conjugated so that infinity is critical
    BerkPoint<K> x;      // the query point in the same chart
};

template <CoefficientField K>
HullQuery<K> normalize_hull_query(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    if (phi.multiplicity_at_infinity() > 1) return {phi, x};
    // move a base-field critical point to infinity
    auto roots = detail::base_field_roots(phi.wronskian());
    if (roots.empty())
        throw error(errc::convention_unsatisfiable,
                    "infinity is not critical and no base-field critical point is available");
    const K& c0 = roots.front().first;
    RationalMap<K> psi = conjugate_moving_to_infinity(phi, c0);
    BerkPoint<K> moved(x.center - c0, x.s);
    return {std::move(psi), invert_point(moved)};
}

}  // namespace detail

template <CoefficientField K>
Rat dist_to_hull(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    auto q = detail::normalize_hull_query(phi, x);
    return detail::dist_to_hull_infty_critical(q.phi, q.x);
}

template <CoefficientField K>
bool in_tube(const RationalMap<K>& phi, const BerkPoint<K>& x, const Rat& r) {
    if (r < 0) throw error(errc::invalid_argument, "tube radius must be nonnegative");
    return dist_to_hull(phi, x) <= r;
}

// ---------------------------------------------------------------------------
// Ramification predicate (t sign, hull membership, multiplicity)
// ---------------------------------------------------------------------------

template <CoefficientField K>
bool is_ramified(const RationalMap<K>& phi, const AuxPolynomial<K>& aux, const BerkPoint<K>& x) {
    TauValue t = t_frak(aux, x);
    if (t.neg_inf || t.value < 0) return false;
    if (t.value > 0) return true;
    // t = 0: ramified off the hull, decided by multiplicity on it
    Rat dist = dist_to_hull(phi, x);
    if (dist > 0) return true;
    if (rat_is_integer(x.s.finite())) return multiplicity_reduction(phi, x) > 1;
    try {
        return multiplicity_zero_count(phi, x.center, x.s.finite()) > 1;
    } catch (const error& e) {
        if (e.code() == errc::pole_in_disk)
            throw error(errc::undecidable,
                        "t = 0 on the hull at a non-integer radius with a pole obstruction");
        throw;
    }
}

template <CoefficientField K>
bool is_ramified(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    return is_ramified(phi, aux_coeffs(phi), x);
}

// ---------------------------------------------------------------------------
// Theorem-level checkers
// ---------------------------------------------------------------------------

// 0 when p = 0 or p > d; 1/(p-1) when 0 < p <= d.  Characteristic zero only.
inline Rat theorem_d_radius(long p, long d, bool char0) {
    if (!char0)
        throw error(errc::characteristic_p,
                    "uniform tubular radius requires characteristic zero");
    if (p == 0 || p > d) return Rat(0);
    return make_rat(1, p - 1);
}

struct SweepReport {
    long checked = 0;
    bool passed = true;
    std::vector<std::string> violations;
    std::vector<std::string> skipped;
};

template <CoefficientField K>
SweepReport check_theorem_d(const RationalMap<K>& phi, const std::vector<BerkPoint<K>>& samples) {
    if (phi.domain().characteristic() != 0)
        throw error(errc::characteristic_p, "theorem D check requires characteristic zero");
    Rat radius = theorem_d_radius(phi.domain().p, phi.degree(), true);
    AuxPolynomial<K> aux = aux_coeffs(phi);
    SweepReport rep;
    for (const auto& x : samples) {
        ++rep.checked;
        std::string where = "center " + x.center.str() + ", s = " + x.s.str();
        try {
            if (!is_ramified(phi, aux, x)) continue;
            Rat d = dist_to_hull(phi, x);
            if (d > radius)
                rep.violations.push_back(where + ": ramified at hull distance " + rat_to_string(d));
        } catch (const error& e) {
            if (e.code() == errc::undecidable || e.code() == errc::convention_unsatisfiable) {
                rep.skipped.push_back(where + ": " + e.what());
            } else {
                throw;
            }
        }
    }
    rep.passed = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// Limit of tau along the hull into a critical point
// ---------------------------------------------------------------------------

// 0 if p does not divide m; 1/(p-1) in characteristic zero when p | m;
// +inf in characteristic p when p | m.
inline ExtVal tau_limit_from_data(long char_k, long p, long m) {
    if (m % p != 0) return ExtVal(Rat(0));
    if (char_k == 0) return ExtVal(make_rat(1, p - 1));
    return ExtVal::inf();
}

template <CoefficientField K>
ExtVal tau_limit_at_critical(const RationalMap<K>& phi, const K& c) {
    long m = phi.multiplicity_at(c);
    if (m <= 1) throw error(errc::unknown_multiplicity, "point is not critical");
    return tau_limit_from_data(phi.domain().characteristic(), phi.domain().p, m);
}

template <CoefficientField K>
ExtVal tau_limit_at_critical_infinity(const RationalMap<K>& phi) {
    long m = phi.multiplicity_at_infinity();
    if (m <= 1) throw error(errc::unknown_multiplicity, "infinity is not critical");
    return tau_limit_from_data(phi.domain().characteristic(), phi.domain().p, m);
}

// ---------------------------------------------------------------------------
// Local analysis near a critical point: f = z^m (1 + eps(z))
// ---------------------------------------------------------------------------

enum class FuzzCase { TameAnyChar, WildCharZero, WildCharP };

struct FuzzReport {
    FuzzCase fuzz_case;
    long m = 0;        // multiplicity of the critical point 0
    long m_prime = 0;  // weight + 1
    Rat delta_ord;
    ExtVal predicted_tube_radius;  // 0, 1/(p-1), or +inf per the trichotomy
    Rat predicted_local_radius;    // expected largest finite root valuation of F
    Rat local_radius;              // computed from the Newton polygon of F
    bool matches = false;
    long roots_closed = 0;  // roots of F with ord >= local_radius
    long roots_open = 0;    // roots of F with ord > local_radius
    NewtonPolygon polygon;  // full polygon of F for audit
};

// F(z) = f(z + delta) - f(delta); the local ramified radius at center delta
// is the smallest s with at least two roots of F of valuation >= s, i.e. the
// largest finite root valuation of F.
template <CoefficientField K>
FuzzReport fuzz_analyze(const Poly<K>& f, const K& delta) {
    const Domain& dom = f.domain();
    long p = dom.p;
    long char_k = dom.characteristic();

    long m = f.trailing_order();
    if (m < 2) throw error(errc::normalization_violated, "needs order of vanishing m >= 2");
    if (!(f.coeff(m) == K::one(dom)))
        throw error(errc::normalization_violated, "leading local coefficient must be 1");
    for (long i = m + 1; i <= f.degree(); ++i) {
        ExtVal o = f.coeff(i).ord();
        if (o.is_finite() && o.finite() <= 0)
            throw error(errc::normalization_violated, "series coefficients need |eps_i| < 1");
    }
    ExtVal dord = delta.ord();
    if (!dord.is_finite() || dord.finite() <= 0)
        throw error(errc::normalization_violated, "needs 0 < |delta| < 1");

    FuzzReport rep;
    rep.m = m;
    rep.delta_ord = dord.finite();

    Poly<K> fp = f.derivative();
    if (fp.is_zero()) throw error(errc::inseparable_map, "derivative vanishes identically");
    rep.m_prime = fp.trailing_order() + 1;

    if (m % p != 0) {
        rep.fuzz_case = FuzzCase::TameAnyChar;
    } else {
        rep.fuzz_case = char_k == 0 ? FuzzCase::WildCharZero : FuzzCase::WildCharP;
    }
    rep.predicted_tube_radius = tau_limit_from_data(char_k, p, m);

    if (char_k == 0) {
        // |delta| < r0 = min |binom(m, l)| keeps the tail contributions small
        long r0 = 0;
        for (long l = 0; l <= m; ++l) r0 = std::max(r0, ord_p_binomial(m, l, p));
        if (!(dord.finite() > r0))
            throw error(errc::normalization_violated,
                        "delta must satisfy ord(delta) > " + std::to_string(r0));
        rep.predicted_local_radius =
            m % p == 0 ? rep.delta_ord + make_rat(1, p - 1) : rep.delta_ord;
    } else if (m % p != 0) {
        rep.predicted_local_radius = rep.delta_ord;
    } else {
        // char p, p | m: ((m'-1) ord(delta) + ord(eps_{m'-m})) / (m-1)
        long mp = rep.m_prime;
        if (mp <= m) throw error(errc::normalization_violated, "weight must exceed m - 1");
        ExtVal eo = f.coeff(mp).ord();
        // f'/z^{m'-1} must be invertible on the unit disk
        long t0 = fp.trailing_order();
        Rat lead_ord = fp.coeff(t0).ord().finite();
        for (long i = t0 + 1; i <= fp.degree(); ++i) {
            ExtVal o = fp.coeff(i).ord();
            if (o.is_finite() && !(o.finite() > lead_ord))
                throw error(errc::normalization_violated,
                            "another critical point lies in the unit disk");
        }
        rep.predicted_local_radius =
            (Rat(mp - 1) * rep.delta_ord + eo.finite()) / Rat(m - 1);
    }

    Poly<K> F = f.taylor_shift(delta) - Poly<K>::constant(f.eval(delta));
    rep.polygon = newton_polygon(F);
    if (rep.polygon.start_index < 1 || rep.polygon.faces.empty())
        throw error(errc::normalization_violated, "F should vanish at 0 with further roots");
    rep.local_radius = -rep.polygon.faces.front().slope;
    rep.roots_closed = rep.polygon.count_at_least(ExtVal(rep.local_radius), false);
    rep.roots_open = rep.polygon.count_at_least(ExtVal(rep.local_radius), true);
    rep.matches = rep.local_radius == rep.predicted_local_radius;
    return rep;
}

// ---------------------------------------------------------------------------
// Exact maximum of tau over a finite union of segments
// ---------------------------------------------------------------------------

template <CoefficientField K>
struct Segment {
    K center;
    Rat s0, s1;
};

template <CoefficientField K>
Rat tubular_radius_on_subgraph(const RationalMap<K>& phi, const std::vector<Segment<K>>& segments) {
    AuxPolynomial<K> aux = aux_coeffs(phi);
    Rat best(0);
    for (const auto& seg : segments) {
        Profile<K> pr = profile_segment(aux, seg.center, seg.s0, seg.s1, Which::Tau);
        for (const auto& piece : pr.pieces) {
            for (const Rat& s : {piece.s0, piece.s1}) {
                Rat v = piece.alpha + piece.beta * s;
                if (v > best) best = v;
            }
        }
    }
    return best;
}

}  // namespace berkram
