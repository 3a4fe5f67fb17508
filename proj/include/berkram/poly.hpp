#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "berkram/valfield.hpp"

namespace berkram {

// Dense univariate polynomial over a coefficient domain.  Index = exponent;
// the highest-index coefficient is nonzero unless the polynomial is zero.
template <CoefficientField K>
class Poly {
  public:
    explicit Poly(Domain dom) : dom_(dom) {}
    Poly(Domain dom, std::vector<K> coeffs) : dom_(dom), c_(std::move(coeffs)) {
        for (const auto& x : c_) require_same_domain(dom_, x.domain());
        trim();
    }

    static Poly zero(const Domain& d) { return Poly(d); }
    static Poly constant(const K& v) { return Poly(v.domain(), {v}); }
    static Poly monomial(const K& v, long e) {
        std::vector<K> c(static_cast<size_t>(e) + 1, K::zero(v.domain()));
        c.back() = v;
        return Poly(v.domain(), std::move(c));
    }
    static Poly from_int_coeffs(const Domain& d, const std::vector<long>& ints) {
        std::vector<K> c;
        c.reserve(ints.size());
        for (long v : ints) c.push_back(K::from_int(d, Int(v)));
        return Poly(d, std::move(c));
    }

    const Domain& domain() const { return dom_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
    const std::vector<K>& coeffs() const { return c_; }

    K coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size())) return K::zero(dom_);
        return c_[static_cast<size_t>(i)];
    }
    const K& leading() const { return c_.back(); }

    // order of vanishing at z = 0; -1 for the zero polynomial
    long trailing_order() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<long>(i);
        return -1;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        require_same_domain(a.dom_, b.dom_);
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K::zero(a.dom_));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Poly(a.dom_, std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        require_same_domain(a.dom_, b.dom_);
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K::zero(a.dom_));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return Poly(a.dom_, std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same_domain(a.dom_, b.dom_);
        if (a.is_zero() || b.is_zero()) return zero(a.dom_);
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K::zero(a.dom_));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(a.dom_, std::move(r));
    }
    friend Poly operator*(const K& s, const Poly& a) {
        std::vector<K> r(a.c_);
        for (auto& x : r) x = s * x;
        return Poly(a.dom_, std::move(r));
    }
    Poly operator-() const { return K::from_int(dom_, Int(-1)) * *this; }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.dom_ == b.dom_ && a.c_ == b.c_;
    }

    K eval(const K& x) const {
        K acc = K::zero(dom_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // coefficients m*c_m reduce through the domain, so d/dz z^p = 0 in char p
    Poly derivative() const {
        if (c_.size() <= 1) return zero(dom_);
        std::vector<K> r;
        r.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            r.push_back(K::from_int(dom_, Int(static_cast<long>(i))) * c_[i]);
        return Poly(dom_, std::move(r));
    }

    // P(z + a), exact, by in-place synthetic shifting
    Poly taylor_shift(const K& a) const {
        require_same_domain(dom_, a.domain());
        if (a.is_zero() || is_zero()) return *this;
        std::vector<K> b(c_);
        for (size_t j = 0; j + 1 < b.size(); ++j)
            for (size_t i = b.size() - 1; i-- > j;) b[i] = b[i] + a * b[i + 1];
        return Poly(dom_, std::move(b));
    }

    // z^at_degree * P(1/z); requires at_degree >= degree
    Poly reversed(long at_degree) const {
        std::vector<K> r(static_cast<size_t>(at_degree) + 1, K::zero(dom_));
        for (size_t i = 0; i < c_.size(); ++i) r[static_cast<size_t>(at_degree) - i] = c_[i];
        return Poly(dom_, std::move(r));
    }

    Poly shifted_down(long k) const {  // divide by z^k; requires z^k | this
        if (is_zero()) return *this;
        std::vector<K> r(c_.begin() + k, c_.end());
        return Poly(dom_, std::move(r));
    }

    // coefficients scaled so coeff_i *= u^i where u = uniformizer^e (source z = pi^e u)
    Poly scaled_arg(long e) const {
        std::vector<K> r(c_);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = r[i] * K::uniformizer_pow(dom_, e * static_cast<long>(i));
        return Poly(dom_, std::move(r));
    }

    // min coefficient ord; +inf for the zero polynomial
    ExtVal content_ord() const {
        ExtVal m = ExtVal::inf();
        for (const auto& x : c_) m = min(m, x.ord());
        return m;
    }

    Poly scaled_by_uniformizer_pow(long e) const {
        return K::uniformizer_pow(dom_, e) * *this;
    }

    static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        require_same_domain(a.dom_, b.dom_);
        if (b.is_zero()) throw error(errc::division_by_zero, "polynomial division by zero");
        Poly q = zero(a.dom_);
        Poly r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            K factor = r.leading() / b.leading();
            long k = r.degree() - b.degree();
            Poly term = monomial(factor, k);
            q = q + term;
            r = r - term * b;
        }
        return {q, r};
    }

    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divrem(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = (K::one(a.dom_) / a.leading()) * a;  // monic
        return a;
    }

    // P / gcd(P, P'); characteristic-zero domains only
    Poly squarefree_part() const {
        if (is_zero() || degree() == 0) return *this;
        if (dom_.characteristic() != 0)
            throw error(errc::invalid_argument, "squarefree part needs characteristic 0");
        Poly g = gcd(*this, derivative());
        return divrem(*this, g).first;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (long i = degree(); i >= 0; --i) {
            if (coeff(i).is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeff(i).str() + ")";
            if (i > 0) s += "*z" + (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        return s;
    }

  private:
    Domain dom_;
    std::vector<K> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

template <CoefficientField K>
Poly<K> wronskian(const Poly<K>& f, const Poly<K>& g) {
    return f.derivative() * g - f * g.derivative();
}

// phi = f/g with gcd(f, g) = 1, d = max(deg f, deg g) >= 1, separable.
template <CoefficientField K>
class RationalMap {
  public:
    RationalMap(Poly<K> f, Poly<K> g, Poly<K> wr)
        : f_(std::move(f)), g_(std::move(g)), wr_(std::move(wr)) {}

    const Poly<K>& f() const { return f_; }
    const Poly<K>& g() const { return g_; }
    const Poly<K>& wronskian() const { return wr_; }
    const Domain& domain() const { return f_.domain(); }
    long degree() const { return std::max(f_.degree(), g_.degree()); }

    // phi(a) when finite; nullopt when a is a pole
    std::optional<K> value_at(const K& a) const {
        K gv = g_.eval(a);
        if (gv.is_zero()) return std::nullopt;
        return f_.eval(a) / gv;
    }

    // local degree at the type I point infinity
    long multiplicity_at_infinity() const {
        long d = degree();
        Poly<K> num = g_.coeff(d) * f_ - f_.coeff(d) * g_;
        // num has degree < d; roots at infinity of phi - phi(inf)
        return d - num.degree();  // num nonzero since phi is nonconstant
    }

    // local degree at a finite type I point
    long multiplicity_at(const K& a) const {
        K gv = g_.eval(a);
        if (gv.is_zero()) {
            // pole: order of vanishing of 1/phi = g/f at a
            return g_.taylor_shift(a).trailing_order();
        }
        Poly<K> num = gv * f_ - f_.eval(a) * g_;
        return num.taylor_shift(a).trailing_order();
    }

  private:
    Poly<K> f_, g_, wr_;
};

// Divides out the gcd and rejects constant or inseparable inputs.
template <CoefficientField K>
RationalMap<K> normalize_map(Poly<K> f, Poly<K> g) {
    require_same_domain(f.domain(), g.domain());
    if (g.is_zero()) throw error(errc::division_by_zero, "denominator is the zero polynomial");
    Poly<K> h = gcd(f, g);
    if (h.degree() > 0) {
        f = Poly<K>::divrem(f, h).first;
        g = Poly<K>::divrem(g, h).first;
    }
    if (std::max(f.degree(), g.degree()) < 1) throw error(errc::constant_map, "map is constant");
    Poly<K> wr = wronskian(f, g);
    if (wr.is_zero()) throw error(errc::inseparable_map, "map is inseparable");
    return RationalMap<K>(std::move(f), std::move(g), std::move(wr));
}

// phi(c0 + 1/u) as a rational map in u (conjugation moving c0 to infinity)
template <CoefficientField K>
RationalMap<K> conjugate_moving_to_infinity(const RationalMap<K>& phi, const K& c0) {
    long d = phi.degree();
    Poly<K> F = phi.f().taylor_shift(c0).reversed(d);
    Poly<K> G = phi.g().taylor_shift(c0).reversed(d);
    long k = std::min(F.trailing_order(), G.trailing_order());
    if (k > 0) {
        F = F.shifted_down(k);
        G = G.shifted_down(k);
    }
    return normalize_map(std::move(F), std::move(G));
}

// sigma o phi for sigma(z) = (alpha z + beta)/(gamma z + delta); det != 0
template <CoefficientField K>
RationalMap<K> postcompose_mobius(const RationalMap<K>& phi, const K& alpha, const K& beta,
                                  const K& gamma, const K& delta) {
    if ((alpha * delta - beta * gamma).is_zero())
        throw error(errc::invalid_argument, "singular Mobius transformation");
    return normalize_map(alpha * phi.f() + beta * phi.g(), gamma * phi.f() + delta * phi.g());
}

}  // namespace berkram
