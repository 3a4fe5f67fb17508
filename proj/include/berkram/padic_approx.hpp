#pragma once

#include <string>
#include <vector>

#include "berkram/poly.hpp"

namespace berkram {

// p^v * u with the unit u known modulo p^N; absolute error valuation >= v + N.
struct PAdicApprox {
    long p = 2;
    long v = 0;       // valuation
    Int u = 1;        // unit, reduced mod p^N, coprime to p
    long precision = 1;

    Int modulus() const {
        Int m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(precision));
        return m;
    }

    Rat representative() const { return Rat(u) * rat_pow(Rat(p), v); }

    std::string str() const {
        std::string s = u.get_str();
        if (v != 0) s += " * " + std::to_string(p) + "^" + std::to_string(v);
        return s + " mod " + std::to_string(p) + "^" + std::to_string(precision + (v > 0 ? v : 0));
    }
};

namespace detail {

inline long ord_p_rat(const Rat& x, long p) {
    Int tmp;
    long vn = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), Int(p).get_mpz_t()));
    long vd = static_cast<long>(
        mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), Int(p).get_mpz_t()));
    return vn - vd;
}

// reduce a rational with p-free denominator mod p^N
inline Int rat_mod_pk(const Rat& x, long p, long N) {
    Int m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(N));
    Int num = x.get_num() % m;
    Int den = x.get_den() % m;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw error(errc::invalid_argument, "denominator not invertible mod p^N");
    Int r = (num * inv) % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace detail

// Newton iteration from x0 up to the target precision.  Requires the
// simple-root criterion ord(P(x0)) > 2 ord(P'(x0)); convergence of the error
// valuation is quadratic per step.
inline PAdicApprox hensel_lift(const Poly<QpElem>& P, const PAdicApprox& x0, long targetN) {
    const Domain& dom = P.domain();
    if (dom.tag != DomainTag::Qp)
        throw error(errc::domain_mismatch, "Hensel lifting runs over Q_p");
    if (dom.p != x0.p) throw error(errc::domain_mismatch, "approximation over a different prime");
    if (targetN < 1) throw error(errc::invalid_argument, "target precision must be positive");

    Poly<QpElem> Pd = P.derivative();
    QpElem x(dom, x0.representative());

    ExtVal fv = P.eval(x).ord();
    ExtVal dv = Pd.eval(x).ord();
    if (!dv.is_finite() || !(fv > dv + dv))
        throw error(errc::hensel_condition_failed,
                    "ord(P(x0)) > 2 ord(P'(x0)) does not hold at the given approximation");

    long s = static_cast<long>(dv.finite().get_num().get_si());
    for (long iter = 0; iter < 64 + targetN; ++iter) {
        QpElem val = P.eval(x);
        if (val.is_zero()) break;  // exact root
        long t = detail::ord_p_rat(val.rat(), dom.p);
        if (t - s >= targetN) break;
        x = x - val / Pd.eval(x);
    }

    PAdicApprox out;
    out.p = dom.p;
    out.precision = targetN;
    if (x.is_zero()) {
        out.v = targetN;  // indistinguishable from 0 at this precision
        out.u = 1;
        return out;
    }
    out.v = detail::ord_p_rat(x.rat(), dom.p);
    Rat unit = x.rat() * rat_pow(Rat(dom.p), -out.v);
    out.u = detail::rat_mod_pk(unit, dom.p, targetN);
    return out;
}

// Hensel lifts of the residue-simple roots of P mod p, to the given precision
inline std::vector<PAdicApprox> hensel_roots_of(const Poly<QpElem>& P, long targetN) {
    std::vector<PAdicApprox> out;
    if (P.degree() < 1) return out;
    const Domain& dom = P.domain();
    long p = dom.p;

    // clear denominators and strip content so the reduction mod p is honest
    Int den(1);
    for (long i = 0; i <= P.degree(); ++i) den = lcm(den, P.coeff(i).rat().get_den());
    std::vector<Int> c;
    Int content(0);
    for (long i = 0; i <= P.degree(); ++i) {
        Rat v = P.coeff(i).rat() * Rat(den);
        c.push_back(v.get_num());
        content = gcd(content, c.back());
    }
    Int tmp;
    long k = 0;
    if (content != 0) {
        Int pc = content;
        k = static_cast<long>(mpz_remove(tmp.get_mpz_t(), pc.get_mpz_t(), Int(p).get_mpz_t()));
    }
    std::vector<QpElem> cs;
    for (auto& ci : c) cs.emplace_back(dom, Rat(ci) / rat_pow(Rat(p), k));
    Poly<QpElem> Pn(dom, std::move(cs));
    Poly<QpElem> Pd = Pn.derivative();

    for (long r = 0; r < p; ++r) {
        QpElem x(dom, Rat(r));
        ExtVal fv = Pn.eval(x).ord();
        ExtVal dv = Pd.eval(x).ord();
        if (!(fv > ExtVal(Rat(0)))) continue;              // not a root mod p
        if (!dv.is_finite() || dv.finite() != 0) continue;  // not residue-simple
        // the residue class of 0 is seeded by the representative p itself
        PAdicApprox seed = (r == 0) ? PAdicApprox{p, 1, Int(1), 1} : PAdicApprox{p, 0, Int(r), 1};
        out.push_back(hensel_lift(Pn, seed, targetN));
    }
    return out;
}

}  // namespace berkram
