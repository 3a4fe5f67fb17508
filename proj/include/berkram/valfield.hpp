#pragma once

#include <algorithm>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

#include "berkram/rational.hpp"

namespace berkram {

enum class DomainTag { Qp, Fpt };

// One of the two supported coefficient domains: Q with the p-adic valuation,
// or F_p(t) with the t-adic valuation.  Normalized so ord(p) = 1 (resp.
// ord(t) = 1); every logarithm in range is reported in these ord units.
struct Domain {
    DomainTag tag = DomainTag::Qp;
    long p = 2;

    long residue_char() const { return p; }
    long characteristic() const { return tag == DomainTag::Qp ? 0 : p; }

    friend bool operator==(const Domain&, const Domain&) = default;

    std::string str() const {
        return (tag == DomainTag::Qp ? "Q_" : "F_") + std::to_string(p) +
               (tag == DomainTag::Fpt ? "(t)" : "");
    }
};

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Domain make_domain(DomainTag tag, long p) {
    if (!is_prime(p)) throw error(errc::invalid_argument, "residue characteristic must be prime");
    return Domain{tag, p};
}

inline void require_same_domain(const Domain& a, const Domain& b) {
    if (!(a == b)) throw error(errc::domain_mismatch, a.str() + " vs " + b.str());
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, the building block for F_p(t).
// Coefficients are reduced representatives in [0, p); no trailing zeros.
// ---------------------------------------------------------------------------
class FpPoly {
  public:
    FpPoly() = default;
    explicit FpPoly(long p) : p_(p) {}
    FpPoly(long p, std::vector<long> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x = mod(x);
        trim();
    }

    static FpPoly zero(long p) { return FpPoly(p); }
    static FpPoly constant(long p, long v) { return FpPoly(p, {v}); }
    static FpPoly t_power(long p, long e) {
        std::vector<long> c(static_cast<size_t>(e) + 1, 0);
        c.back() = 1;
        return FpPoly(p, std::move(c));
    }

    long p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    long coeff(long i) const {
        return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[static_cast<size_t>(i)] : 0;
    }
    const std::vector<long>& coeffs() const { return c_; }

    // order of vanishing at t = 0; -1 for the zero polynomial
    long trailing_order() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) return static_cast<long>(i);
        return -1;
    }

    long leading() const { return c_.empty() ? 0 : c_.back(); }

    long eval_at_zero() const { return c_.empty() ? 0 : c_[0]; }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        std::vector<long> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
        return FpPoly(a.p_, std::move(r));
    }
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        std::vector<long> r(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = ((a.coeff(i) - b.coeff(i)) % a.p_ + a.p_) % a.p_;
        return FpPoly(a.p_, std::move(r));
    }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return zero(a.p_);
        std::vector<long> r(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = (r[i + j] + a.c_[i] * b.c_[j]) % a.p_;
        }
        return FpPoly(a.p_, std::move(r));
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    FpPoly scaled(long k) const {
        k = mod(k);
        std::vector<long> r(c_);
        for (auto& x : r) x = x * k % p_;
        return FpPoly(p_, std::move(r));
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        return scaled(inv_mod(leading(), p_));
    }

    // long division; denominator nonzero
    static std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
        a.check(b);
        if (b.is_zero()) throw error(errc::division_by_zero, "FpPoly division by zero");
        FpPoly r = a;
        std::vector<long> q(
            a.degree() >= b.degree() ? static_cast<size_t>(a.degree() - b.degree()) + 1 : 0, 0);
        long binv = inv_mod(b.leading(), a.p_);
        while (!r.is_zero() && r.degree() >= b.degree()) {
            long k = r.degree() - b.degree();
            long factor = r.leading() * binv % a.p_;
            q[static_cast<size_t>(k)] = factor;
            std::vector<long> sub(r.c_);
            for (long i = 0; i <= b.degree(); ++i) {
                auto idx = static_cast<size_t>(i + k);
                sub[idx] = ((sub[idx] - factor * b.coeff(i)) % a.p_ + a.p_) % a.p_;
            }
            r = FpPoly(a.p_, std::move(sub));
        }
        return {FpPoly(a.p_, std::move(q)), r};
    }

    friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divrem(a, b).first; }
    friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divrem(a, b).second; }

    friend FpPoly gcd(FpPoly a, FpPoly b) {
        while (!b.is_zero()) {
            FpPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    FpPoly shifted_up(long k) const {  // multiply by t^k
        if (is_zero()) return *this;
        std::vector<long> r(static_cast<size_t>(k), 0);
        r.insert(r.end(), c_.begin(), c_.end());
        return FpPoly(p_, std::move(r));
    }
    FpPoly shifted_down(long k) const {  // divide by t^k; requires t^k | this
        if (is_zero()) return *this;
        std::vector<long> r(c_.begin() + k, c_.end());
        return FpPoly(p_, std::move(r));
    }

    static long inv_mod(long a, long p) {
        a = ((a % p) + p) % p;
        if (a == 0) throw error(errc::division_by_zero, "inverse of 0 mod p");
        long t = 0, newt = 1, r = p, newr = a;
        while (newr != 0) {
            long q = r / newr;
            std::swap(t -= q * newt, newt);
            std::swap(r -= q * newr, newr);
        }
        return ((t % p) + p) % p;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (long i = degree(); i >= 0; --i) {
            long ci = coeff(i);
            if (ci == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || ci != 1) s += std::to_string(ci);
            if (i > 0) {
                if (ci != 1) s += "*";
                s += "t";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    long p_ = 2;
    std::vector<long> c_;

    long mod(long x) const { return ((x % p_) + p_) % p_; }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check(const FpPoly& o) const {
        if (p_ != o.p_) throw error(errc::domain_mismatch, "FpPoly over different primes");
    }
};

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

// Exact rational with the p-adic valuation.
class QpElem {
  public:
    QpElem() = default;
    QpElem(Domain dom, Rat v) : dom_(dom), v_(std::move(v)) {
        if (dom.tag != DomainTag::Qp) throw error(errc::domain_mismatch, "QpElem needs a Qp domain");
    }

    static QpElem zero(const Domain& d) { return QpElem(d, Rat(0)); }
    static QpElem one(const Domain& d) { return QpElem(d, Rat(1)); }
    static QpElem from_int(const Domain& d, const Int& n) { return QpElem(d, Rat(n)); }
    static QpElem uniformizer(const Domain& d) { return QpElem(d, Rat(d.p)); }
    static QpElem uniformizer_pow(const Domain& d, long e) {
        return QpElem(d, rat_pow(Rat(d.p), e));
    }
    static QpElem lift_residue(const Domain& d, long r) { return QpElem(d, Rat(r)); }

    const Domain& domain() const { return dom_; }
    const Rat& rat() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    ExtVal ord() const {
        if (v_ == 0) return ExtVal::inf();
        Int tmp;
        long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), v_.get_num().get_mpz_t(),
                                               Int(dom_.p).get_mpz_t()));
        long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), v_.get_den().get_mpz_t(),
                                               Int(dom_.p).get_mpz_t()));
        return ExtVal(Rat(vn - vd));
    }

    // representative of the residue class in [0, p); requires ord >= 0
    long residue() const {
        ExtVal o = ord();
        if (o.infinite) return 0;
        if (o.finite() < 0) throw error(errc::invalid_argument, "residue of element with ord < 0");
        if (o.finite() > 0) return 0;
        Int p(dom_.p);
        Int n = v_.get_num() % p;
        Int d = v_.get_den() % p;
        long dn = FpPoly::inv_mod(d.get_si(), dom_.p);
        long r = ((n.get_si() % dom_.p) * dn % dom_.p + dom_.p) % dom_.p;
        return r;
    }

    friend QpElem operator+(const QpElem& a, const QpElem& b) {
        require_same_domain(a.dom_, b.dom_);
        return QpElem(a.dom_, a.v_ + b.v_);
    }
    friend QpElem operator-(const QpElem& a, const QpElem& b) {
        require_same_domain(a.dom_, b.dom_);
        return QpElem(a.dom_, a.v_ - b.v_);
    }
    friend QpElem operator*(const QpElem& a, const QpElem& b) {
        require_same_domain(a.dom_, b.dom_);
        return QpElem(a.dom_, a.v_ * b.v_);
    }
    friend QpElem operator/(const QpElem& a, const QpElem& b) {
        require_same_domain(a.dom_, b.dom_);
        if (b.is_zero()) throw error(errc::division_by_zero, "division by zero");
        return QpElem(a.dom_, a.v_ / b.v_);
    }
    QpElem operator-() const { return QpElem(dom_, -v_); }

    friend bool operator==(const QpElem& a, const QpElem& b) {
        return a.dom_ == b.dom_ && a.v_ == b.v_;
    }

    std::string str() const { return rat_to_string(v_); }

  private:
    Domain dom_{DomainTag::Qp, 2};
    Rat v_{0};
};

// Reduced quotient of polynomials in t over F_p, with the t-adic valuation.
// Canonical form: gcd(num, den) = 1, den monic, zero is 0/1.
class FptElem {
  public:
    FptElem() = default;
    FptElem(Domain dom, FpPoly num, FpPoly den) : dom_(dom), num_(std::move(num)), den_(std::move(den)) {
        if (dom.tag != DomainTag::Fpt)
            throw error(errc::domain_mismatch, "FptElem needs an Fpt domain");
        if (den_.is_zero()) throw error(errc::division_by_zero, "zero denominator");
        reduce();
    }

    static FptElem zero(const Domain& d) {
        return FptElem(d, FpPoly::zero(d.p), FpPoly::constant(d.p, 1));
    }
    static FptElem one(const Domain& d) {
        return FptElem(d, FpPoly::constant(d.p, 1), FpPoly::constant(d.p, 1));
    }
    static FptElem from_int(const Domain& d, const Int& n) {
        Int r = n % d.p;
        return FptElem(d, FpPoly::constant(d.p, r.get_si()), FpPoly::constant(d.p, 1));
    }
    static FptElem uniformizer(const Domain& d) {
        return FptElem(d, FpPoly::t_power(d.p, 1), FpPoly::constant(d.p, 1));
    }
    static FptElem uniformizer_pow(const Domain& d, long e) {
        if (e >= 0) return FptElem(d, FpPoly::t_power(d.p, e), FpPoly::constant(d.p, 1));
        return FptElem(d, FpPoly::constant(d.p, 1), FpPoly::t_power(d.p, -e));
    }
    static FptElem lift_residue(const Domain& d, long r) {
        return FptElem(d, FpPoly::constant(d.p, r), FpPoly::constant(d.p, 1));
    }

    const Domain& domain() const { return dom_; }
    const FpPoly& num() const { return num_; }
    const FpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    ExtVal ord() const {
        if (num_.is_zero()) return ExtVal::inf();
        return ExtVal(Rat(num_.trailing_order() - den_.trailing_order()));
    }

    long residue() const {
        ExtVal o = ord();
        if (o.infinite) return 0;
        if (o.finite() < 0) throw error(errc::invalid_argument, "residue of element with ord < 0");
        if (o.finite() > 0) return 0;
        long shift = num_.trailing_order();  // equals den_.trailing_order()
        long n0 = num_.coeff(shift);
        long d0 = den_.coeff(shift);
        return n0 * FpPoly::inv_mod(d0, dom_.p) % dom_.p;
    }

    friend FptElem operator+(const FptElem& a, const FptElem& b) {
        require_same_domain(a.dom_, b.dom_);
        return FptElem(a.dom_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FptElem operator-(const FptElem& a, const FptElem& b) {
        require_same_domain(a.dom_, b.dom_);
        return FptElem(a.dom_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend FptElem operator*(const FptElem& a, const FptElem& b) {
        require_same_domain(a.dom_, b.dom_);
        return FptElem(a.dom_, a.num_ * b.num_, a.den_ * b.den_);
    }
    friend FptElem operator/(const FptElem& a, const FptElem& b) {
        require_same_domain(a.dom_, b.dom_);
        if (b.is_zero()) throw error(errc::division_by_zero, "division by zero");
        return FptElem(a.dom_, a.num_ * b.den_, a.den_ * b.num_);
    }
    FptElem operator-() const { return FptElem(dom_, num_.scaled(dom_.p - 1), den_); }

    friend bool operator==(const FptElem& a, const FptElem& b) {
        return a.dom_ == b.dom_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const {
        if (den_ == FpPoly::constant(dom_.p, 1)) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

  private:
    Domain dom_{DomainTag::Fpt, 2};
    FpPoly num_;
    FpPoly den_{2, {1}};

    void reduce() {
        if (num_.is_zero()) {
            den_ = FpPoly::constant(dom_.p, 1);
            return;
        }
        FpPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        long lead = den_.leading();
        if (lead != 1) {
            long inv = FpPoly::inv_mod(lead, dom_.p);
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
};

template <class K>
concept CoefficientField = requires(const Domain& d, const K& x, const K& y, long r, const Int& n) {
    { K::zero(d) } -> std::same_as<K>;
    { K::one(d) } -> std::same_as<K>;
    { K::from_int(d, n) } -> std::same_as<K>;
    { K::uniformizer_pow(d, r) } -> std::same_as<K>;
    { K::lift_residue(d, r) } -> std::same_as<K>;
    { x.domain() } -> std::convertible_to<const Domain&>;
    { x.ord() } -> std::same_as<ExtVal>;
    { x.is_zero() } -> std::same_as<bool>;
    { x.residue() } -> std::same_as<long>;
    { x + y } -> std::same_as<K>;
    { x - y } -> std::same_as<K>;
    { x* y } -> std::same_as<K>;
    { x / y } -> std::same_as<K>;
    { -x } -> std::same_as<K>;
    { x == y } -> std::same_as<bool>;
    { x.str() } -> std::same_as<std::string>;
};

static_assert(CoefficientField<QpElem>);
static_assert(CoefficientField<FptElem>);

// the domain valuation; ord(0) = +inf
template <CoefficientField K>
ExtVal ord(const K& x) {
    return x.ord();
}

}  // namespace berkram
