#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "berkram/berk.hpp"
#include "berkram/piecewise.hpp"

namespace berkram {

// The two-variable polynomial [f(z+w)g(w) - f(w)g(z+w)]/z attached to a
// rational map, stored by its z-coefficients A_0(w), ..., A_{d-1}(w).
// A_0 is the Wronskian and A_{d-1} is nonzero.
template <CoefficientField K>
struct AuxPolynomial {
    long d = 0;
    std::vector<Poly<K>> A;  // size d; A[l] is the coefficient of z^l

    const Poly<K>& operator[](long l) const { return A[static_cast<size_t>(l)]; }
};

// A_l(w) = sum over i, j of [binom(i, l+1) - binom(j, l+1)] a_i b_j w^{i+j-l-1},
// with binomials taken in Z and mapped into the domain.
template <CoefficientField K>
AuxPolynomial<K> aux_coeffs(const RationalMap<K>& phi) {
    const Domain& dom = phi.domain();
    long d = phi.degree();
    const Poly<K>& f = phi.f();
    const Poly<K>& g = phi.g();

    AuxPolynomial<K> out;
    out.d = d;
    out.A.reserve(static_cast<size_t>(d));
    for (long l = 0; l < d; ++l) {
        std::vector<K> coeffs(static_cast<size_t>(2 * d), K::zero(dom));
        long maxexp = -1;
        for (long i = 0; i <= d; ++i) {
            if (f.coeff(i).is_zero()) continue;
            for (long j = 0; j <= d; ++j) {
                if (g.coeff(j).is_zero()) continue;
                Int bi, bj;
                mpz_bin_uiui(bi.get_mpz_t(), static_cast<unsigned long>(i),
                             static_cast<unsigned long>(l + 1));
                mpz_bin_uiui(bj.get_mpz_t(), static_cast<unsigned long>(j),
                             static_cast<unsigned long>(l + 1));
                Int br = bi - bj;
                if (br == 0) continue;
                long e = i + j - l - 1;  // >= 0 whenever the bracket is nonzero
                coeffs[static_cast<size_t>(e)] =
                    coeffs[static_cast<size_t>(e)] + K::from_int(dom, br) * f.coeff(i) * g.coeff(j);
                maxexp = std::max(maxexp, e);
            }
        }
        coeffs.resize(static_cast<size_t>(maxexp + 1), K::zero(dom));
        out.A.push_back(Poly<K>(dom, std::move(coeffs)));
    }
    return out;
}

namespace detail {

// bivariate polynomial as a vector of K[w]-coefficients indexed by z-power
template <CoefficientField K>
using Bivariate = std::vector<Poly<K>>;

template <CoefficientField K>
Bivariate<K> biv_mul_z_plus_w(const Bivariate<K>& b, const Domain& dom) {
    // multiply by (z + w)
    Bivariate<K> out(b.size() + 1, Poly<K>::zero(dom));
    Poly<K> w = Poly<K>::monomial(K::one(dom), 1);
    for (size_t i = 0; i < b.size(); ++i) {
        out[i + 1] = out[i + 1] + b[i];
        out[i] = out[i] + w * b[i];
    }
    return out;
}

}  // namespace detail

// Independent oracle for aux_coeffs: expands f(z+w)g(w) - f(w)g(z+w)
// directly in the ring K[w][z] and divides by z.
template <CoefficientField K>
AuxPolynomial<K> aux_direct(const RationalMap<K>& phi) {
    const Domain& dom = phi.domain();
    long d = phi.degree();
    const Poly<K>& f = phi.f();
    const Poly<K>& g = phi.g();

    auto compose = [&](const Poly<K>& P) {
        // P(z + w) by Horner in K[w][z]
        detail::Bivariate<K> acc{Poly<K>::zero(dom)};
        for (long i = P.degree(); i >= 0; --i) {
            acc = detail::biv_mul_z_plus_w(acc, dom);
            acc[0] = acc[0] + Poly<K>::constant(P.coeff(i));
        }
        return acc;
    };

    detail::Bivariate<K> fzw = compose(f);
    detail::Bivariate<K> gzw = compose(g);
    size_t n = std::max(fzw.size(), gzw.size());
    fzw.resize(n, Poly<K>::zero(dom));
    gzw.resize(n, Poly<K>::zero(dom));

    // f(w), g(w) are the z^0 coefficients of the compositions
    detail::Bivariate<K> B(n, Poly<K>::zero(dom));
    for (size_t i = 0; i < n; ++i) B[i] = fzw[i] * gzw[0] - fzw[0] * gzw[i];

    if (!B[0].is_zero()) throw error(errc::invalid_argument, "z does not divide A");
    AuxPolynomial<K> out;
    out.d = d;
    for (long l = 0; l < d; ++l)
        out.A.push_back(static_cast<size_t>(l + 1) < n ? B[static_cast<size_t>(l + 1)]
                                                       : Poly<K>::zero(dom));
    return out;
}

// Signed visible ramification value; -inf only for degree-1 maps, where no
// index l >= 1 exists.
struct TauValue {
    bool neg_inf = false;
    Rat value{};

    static TauValue minus_inf() {
        TauValue t;
        t.neg_inf = true;
        return t;
    }
    static TauValue of(Rat v) {
        TauValue t;
        t.value = std::move(v);
        return t;
    }

    std::string str() const { return neg_inf ? "-inf" : rat_to_string(value); }

    friend bool operator==(const TauValue& a, const TauValue& b) {
        if (a.neg_inf || b.neg_inf) return a.neg_inf == b.neg_inf;
        return a.value == b.value;
    }
};

// t(x) = -s + max over 1 <= l <= d-1, A_l != 0, of
//        (seminorm_ord(A_0, x) - seminorm_ord(A_l, x)) / l
template <CoefficientField K>
TauValue t_frak(const AuxPolynomial<K>& aux, const BerkPoint<K>& x) {
    if (x.s.infinite) throw error(errc::invalid_argument, "t needs a finite log-radius");
    ExtVal v0 = seminorm_ord(aux[0], x);
    bool have = false;
    Rat best;
    for (long l = 1; l < aux.d; ++l) {
        if (aux[l].is_zero()) continue;
        ExtVal vl = seminorm_ord(aux[l], x);
        Rat branch = (v0.finite() - vl.finite()) / Rat(l);
        if (!have || branch > best) {
            best = branch;
            have = true;
        }
    }
    if (!have) return TauValue::minus_inf();
    return TauValue::of(best - x.s.finite());
}

template <CoefficientField K>
TauValue t_frak(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    return t_frak(aux_coeffs(phi), x);
}

// tau = max(t, 0)
template <CoefficientField K>
TauValue tau(const AuxPolynomial<K>& aux, const BerkPoint<K>& x) {
    TauValue t = t_frak(aux, x);
    if (t.neg_inf || t.value < 0) return TauValue::of(Rat(0));
    return t;
}

template <CoefficientField K>
TauValue tau(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    return tau(aux_coeffs(phi), x);
}

// m_phi(zeta_{a, q^{-s}}) as the number of zeros of phi - phi(a) in the
// closed disk; requires phi(a) finite and no pole in the disk.
template <CoefficientField K>
long multiplicity_zero_count(const RationalMap<K>& phi, const K& a, const Rat& s) {
    if (count_roots(phi.g(), a, s, DiskMode::Closed) > 0)
        throw error(errc::pole_in_disk, "pole inside the closed disk");
    K ga = phi.g().eval(a);
    if (ga.is_zero()) throw error(errc::pole_in_disk, "center is a pole");
    Poly<K> P = ga * phi.f() - phi.f().eval(a) * phi.g();
    return count_roots(P, a, s, DiskMode::Closed);
}

namespace detail {

template <CoefficientField K>
struct ReducedPair {
    FpPoly fr, gr;
};

// scale (F, G) to joint unit content and reduce mod the maximal ideal
template <CoefficientField K>
ReducedPair<K> reduce_pair(const Poly<K>& F, const Poly<K>& G) {
    const Domain& dom = F.domain();
    ExtVal m = min(F.content_ord(), G.content_ord());
    if (!m.is_finite() || !rat_is_integer(m.finite()))
        throw error(errc::invalid_argument, "pair content is not an integer power");
    long e = static_cast<long>(m.finite().get_num().get_si());
    auto reduce_poly = [&](const Poly<K>& P) {
        std::vector<long> c;
        c.reserve(static_cast<size_t>(P.degree()) + 1);
        for (long i = 0; i <= P.degree(); ++i) {
            K scaled = P.coeff(i) * K::uniformizer_pow(dom, -e);
            c.push_back(scaled.residue());
        }
        return FpPoly(dom.p, std::move(c));
    };
    return {reduce_poly(F), reduce_poly(G)};
}

// degree of the reduced map after cancelling common factors; 0 if constant
template <CoefficientField K>
long reduction_degree(const Poly<K>& F, const Poly<K>& G) {
    ReducedPair<K> r = reduce_pair(F, G);
    FpPoly h = gcd(r.fr, r.gr);
    FpPoly fr = r.fr.is_zero() ? r.fr : r.fr / h;
    FpPoly gr = r.gr.is_zero() ? r.gr : r.gr / h;
    return std::max(fr.degree(), gr.degree());
}

// center gamma and height s' of the image point phi(Gauss) for the pair
// (F, G) conjugated so that x is the Gauss point; greedy digit search
template <CoefficientField K>
std::pair<K, long> image_point_at_gauss(const Poly<K>& F, const Poly<K>& G) {
    const Domain& dom = F.domain();
    auto content = [](const Poly<K>& P) { return P.content_ord(); };
    ExtVal cg = content(G);

    auto level = [&](const K& gamma) -> ExtVal {
        Poly<K> num = F - Poly<K>::constant(gamma) * G;
        ExtVal cn = content(num);
        if (!cn.is_finite()) return ExtVal::inf();  // F = gamma*G exactly: constant map
        return ExtVal(cn.finite() - cg.finite());
    };

    K gamma = K::zero(dom);
    ExtVal v = level(gamma);
    while (v.is_finite()) {
        if (!rat_is_integer(v.finite()))
            throw error(errc::invalid_argument, "image height is not an integer");
        long e = static_cast<long>(v.finite().get_num().get_si());
        bool improved = false;
        for (long r = 1; r < dom.p; ++r) {
            K cand = gamma + K::lift_residue(dom, r) * K::uniformizer_pow(dom, e);
            ExtVal v2 = level(cand);
            if (v > v2) continue;
            if (v2 > v) {
                gamma = cand;
                v = v2;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (!v.is_finite()) throw error(errc::constant_map, "image of the Gauss point is classical");
    return {gamma, static_cast<long>(v.finite().get_num().get_si())};
}

}  // namespace detail

// Multiplicity at a type II point via the reduction of the conjugated map:
// z -> a + pi^s u brings x to the Gauss point, the pair is scaled to unit
// content and reduced, common factors cancel, and the degree of the reduced
// map is m_phi(x).  A constant reduction means the image of x is not the
// Gauss point; the target is then recentered on the image point first.
template <CoefficientField K>
long multiplicity_reduction(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    if (x.s.infinite || !rat_is_integer(x.s.finite()))
        throw error(errc::non_integer_radius, "reduction needs an integer log-radius");
    long e = static_cast<long>(x.s.finite().get_num().get_si());

    Poly<K> F = phi.f().taylor_shift(x.center).scaled_arg(e);
    Poly<K> G = phi.g().taylor_shift(x.center).scaled_arg(e);

    long deg = detail::reduction_degree(F, G);
    if (deg >= 1) return deg;

    auto [gamma, sp] = detail::image_point_at_gauss(F, G);
    Poly<K> F2 = (F - Poly<K>::constant(gamma) * G).scaled_by_uniformizer_pow(-sp);
    deg = detail::reduction_degree(F2, G);
    if (deg >= 1) return deg;
    throw error(errc::undecidable, "reduction stayed constant after recentering");
}

// m_phi(x) through whichever route applies
template <CoefficientField K>
long multiplicity(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    if (x.s.infinite) {
        return phi.multiplicity_at(x.center);
    }
    if (rat_is_integer(x.s.finite())) return multiplicity_reduction(phi, x);
    return multiplicity_zero_count(phi, x.center, x.s.finite());
}

// Largest root valuation of z -> A_phi(z, y), read off its Newton polygon;
// +inf when that polynomial is constant in z or vanishes at z = 0.
// In radius terms this is the smallest absolute value of a root, the
// injectivity radius bound r'_y.
template <CoefficientField K>
ExtVal min_root_radius(const AuxPolynomial<K>& aux, const K& y) {
    const Domain& dom = y.domain();
    std::vector<K> coeffs;
    for (long l = 0; l < aux.d; ++l) coeffs.push_back(aux[l].eval(y));
    Poly<K> Az(dom, std::move(coeffs));
    if (Az.degree() <= 0) return ExtVal::inf();
    return newton_polygon(Az).max_root_valuation();
}

template <CoefficientField K>
ExtVal min_root_radius(const RationalMap<K>& phi, const K& y) {
    return min_root_radius(aux_coeffs(phi), y);
}

// ---------------------------------------------------------------------------
// Piecewise-affine profiles of t and tau along a segment of constant center
// ---------------------------------------------------------------------------

enum class Which { TFrak, Tau };

struct ProfilePiece {
    Rat s0, s1, alpha, beta;
};

template <CoefficientField K>
struct Profile {
    K center;
    bool neg_infinite = false;  // degree-1 maps: t is identically -inf
    std::vector<ProfilePiece> pieces;

    Rat eval(const Rat& s) const {
        for (const auto& p : pieces)
            if (s >= p.s0 && s <= p.s1) return p.alpha + p.beta * s;
        throw error(errc::invalid_argument, "evaluation outside the profile");
    }
};

namespace detail {

// s -> seminorm_ord(P, zeta_{a, q^{-s}}) on [s0, s1]: the lower envelope of
// the lines ord(c_i) + i*s over the a-shifted coefficients
template <CoefficientField K>
PLFunc seminorm_profile(const Poly<K>& P, const K& a, const Rat& s0, const Rat& s1) {
    Poly<K> Q = P.taylor_shift(a);
    std::vector<PLFunc::Line> lines;
    for (long i = 0; i <= Q.degree(); ++i) {
        ExtVal v = Q.coeff(i).ord();
        if (!v.is_finite()) continue;
        lines.push_back({v.finite(), Rat(i)});
    }
    return PLFunc::lower_envelope(s0, s1, std::move(lines));
}

template <CoefficientField K>
std::optional<PLFunc> t_frak_profile(const AuxPolynomial<K>& aux, const K& a, const Rat& s0,
                                     const Rat& s1) {
    PLFunc env0 = seminorm_profile(aux[0], a, s0, s1);
    std::optional<PLFunc> best;
    for (long l = 1; l < aux.d; ++l) {
        if (aux[l].is_zero()) continue;
        PLFunc branch = (env0 - seminorm_profile(aux[l], a, s0, s1)).scaled(Rat(1, l));
        best = best ? pointwise_max(*best, branch) : branch;
    }
    if (!best) return std::nullopt;
    return best->plus_affine(Rat(0), Rat(-1));
}

}  // namespace detail

template <CoefficientField K>
Profile<K> profile_segment(const AuxPolynomial<K>& aux, const K& a, const Rat& s0, const Rat& s1,
                           Which which) {
    if (s0 > s1) throw error(errc::invalid_argument, "segment with s0 > s1");
    Profile<K> out{a, false, {}};
    std::optional<PLFunc> t = detail::t_frak_profile(aux, a, s0, s1);
    if (!t) {
        if (which == Which::Tau) {
            out.pieces.push_back(ProfilePiece{s0, s1, Rat(0), Rat(0)});
        } else {
            out.neg_infinite = true;
        }
        return out;
    }
    PLFunc fn = (which == Which::Tau) ? pointwise_max(*t, Rat(0)) : *t;
    for (const auto& p : fn.pieces()) out.pieces.push_back(ProfilePiece{p.s0, p.s1, p.alpha, p.beta});
    return out;
}

template <CoefficientField K>
Profile<K> profile_segment(const RationalMap<K>& phi, const K& a, const Rat& s0, const Rat& s1,
                           Which which) {
    return profile_segment(aux_coeffs(phi), a, s0, s1, which);
}

// ---------------------------------------------------------------------------
// Direction classification at a point, by probe points
// ---------------------------------------------------------------------------

enum class DirectionClass { Generic, ExceptionalAux, ExceptionalCrit };

// Classifies the open ball at x toward the classical probe point y:
// ExceptionalCrit if it meets a critical point, ExceptionalAux if it meets a
// root of some nonzero A_l, Generic otherwise.
template <CoefficientField K>
DirectionClass classify_direction(const RationalMap<K>& phi, const AuxPolynomial<K>& aux,
                                  const BerkPoint<K>& x, const K& y) {
    if (x.s.infinite) throw error(errc::invalid_argument, "direction at a type I point");
    if ((y - x.center).ord() < x.s)
        throw error(errc::probe_not_in_ball, "probe lies outside the ball of x");
    ExtVal s = x.s;

    auto ball_meets_root = [&](const Poly<K>& P) {
        if (P.is_zero() || P.degree() == 0) return false;
        return newton_polygon(P.taylor_shift(y)).max_root_valuation() > s;
    };

    if (ball_meets_root(phi.wronskian())) return DirectionClass::ExceptionalCrit;
    for (long l = 0; l < aux.d; ++l)
        if (ball_meets_root(aux[l])) return DirectionClass::ExceptionalAux;
    return DirectionClass::Generic;
}

template <CoefficientField K>
DirectionClass classify_direction(const RationalMap<K>& phi, const BerkPoint<K>& x, const K& y) {
    return classify_direction(phi, aux_coeffs(phi), x, y);
}

}  // namespace berkram
