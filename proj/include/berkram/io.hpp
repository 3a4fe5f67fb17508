#pragma once

#include <json.hpp>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "berkram/apps.hpp"

namespace berkram {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// JSON encoding.  All numerics are canonical rational strings; reports are
// emitted with sorted keys so identical jobs produce byte-identical output.
// ---------------------------------------------------------------------------

inline json to_json(const Rat& r) { return rat_to_string(r); }
inline json to_json(const ExtVal& v) { return v.str(); }

inline json to_json(const QpElem& x) { return rat_to_string(x.rat()); }
inline json to_json(const FptElem& x) {
    json num = json::array();
    for (long c : x.num().coeffs()) num.push_back(c);
    json den = json::array();
    for (long c : x.den().coeffs()) den.push_back(c);
    return json{{"num", num}, {"den", den}};
}

inline json to_json(const Domain& d) {
    return json{{"tag", d.tag == DomainTag::Qp ? "Qp" : "Fpt"}, {"p", d.p}};
}

template <CoefficientField K>
json to_json(const Poly<K>& P) {
    json a = json::array();
    for (long i = 0; i <= P.degree(); ++i) a.push_back(to_json(P.coeff(i)));
    return a;
}

template <CoefficientField K>
json to_json(const BerkPoint<K>& x) {
    return json{{"center", to_json(x.center)}, {"s", x.s.str()}};
}

inline json to_json(const NewtonPolygon& np) {
    json verts = json::array();
    for (const auto& [i, v] : np.vertices) verts.push_back(json::array({i, rat_to_string(v)}));
    json faces = json::array();
    for (const auto& f : np.faces) faces.push_back(json::array({rat_to_string(f.slope), f.length}));
    return json{{"vertices", verts}, {"faces", faces}, {"startIndex", np.start_index}};
}

template <CoefficientField K>
json to_json(const Profile<K>& pr) {
    json pieces = json::array();
    for (const auto& p : pr.pieces)
        pieces.push_back(json{{"s0", rat_to_string(p.s0)},
                              {"s1", rat_to_string(p.s1)},
                              {"alpha", rat_to_string(p.alpha)},
                              {"beta", rat_to_string(p.beta)}});
    json out{{"center", to_json(pr.center)}, {"pieces", pieces}};
    if (pr.neg_infinite) out["negInfinite"] = true;
    return out;
}

// ---------------------------------------------------------------------------
// JSON decoding
// ---------------------------------------------------------------------------

namespace detail {

inline void expect(bool cond, const std::string& msg) {
    if (!cond) throw error(errc::schema_error, msg);
}

inline Rat rat_of_json(const json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw error(errc::schema_error, "expected a rational string");
}

template <CoefficientField K>
K elem_of_json(const Domain& dom, const json& j);

template <>
inline QpElem elem_of_json(const Domain& dom, const json& j) {
    return QpElem(dom, rat_of_json(j));
}

template <>
inline FptElem elem_of_json(const Domain& dom, const json& j) {
    if (j.is_object()) {
        expect(j.contains("num"), "Fpt element needs num");
        std::vector<long> num = j.at("num").get<std::vector<long>>();
        std::vector<long> den =
            j.contains("den") ? j.at("den").get<std::vector<long>>() : std::vector<long>{1};
        return FptElem(dom, FpPoly(dom.p, num), FpPoly(dom.p, den));
    }
    if (j.is_number_integer())
        return FptElem::from_int(dom, Int(j.get<long>()));
    if (j.is_string()) {
        // plain integer constants only; richer elements use the object form
        Rat r = rat_from_string(j.get<std::string>());
        expect(rat_is_integer(r), "Fpt centers given as strings must be integers");
        return FptElem::from_int(dom, r.get_num());
    }
    throw error(errc::schema_error, "malformed Fpt element");
}

template <CoefficientField K>
Poly<K> poly_of_json(const Domain& dom, const json& j) {
    expect(j.is_array(), "polynomial must be an array of coefficients");
    std::vector<K> c;
    for (const auto& e : j) c.push_back(elem_of_json<K>(dom, e));
    return Poly<K>(dom, std::move(c));
}

inline Domain domain_of_json(const json& j) {
    expect(j.is_object() && j.contains("tag") && j.contains("p"), "domain needs tag and p");
    std::string tag = j.at("tag").get<std::string>();
    long p = j.at("p").get<long>();
    if (tag == "Qp") return make_domain(DomainTag::Qp, p);
    if (tag == "Fpt") return make_domain(DomainTag::Fpt, p);
    throw error(errc::schema_error, "domain tag must be Qp or Fpt");
}

template <CoefficientField K>
BerkPoint<K> point_of_json(const Domain& dom, const json& j) {
    if (j.is_string()) {
        // shorthand "a,s"
        std::string s = j.get<std::string>();
        auto comma = s.find(',');
        expect(comma != std::string::npos, "point shorthand is \"center,s\"");
        K center = elem_of_json<K>(dom, json(s.substr(0, comma)));
        return BerkPoint<K>(center, ExtVal::parse(s.substr(comma + 1)));
    }
    expect(j.is_object() && j.contains("center") && j.contains("s"), "point needs center and s");
    return BerkPoint<K>(elem_of_json<K>(dom, j.at("center")),
                        ExtVal::parse(j.at("s").get<std::string>()));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bundled example maps
// ---------------------------------------------------------------------------

// z^p + z over Q_p
inline RationalMap<QpElem> example_61(long p) {
    Domain dom = make_domain(DomainTag::Qp, p);
    std::vector<QpElem> f(static_cast<size_t>(p) + 1, QpElem::zero(dom));
    f[1] = QpElem::one(dom);
    f[static_cast<size_t>(p)] = QpElem::one(dom);
    return normalize_map(Poly<QpElem>(dom, std::move(f)), Poly<QpElem>::constant(QpElem::one(dom)));
}

// z^d + z + t^{-n} z^p over F_p(t); defaults p = 3, d = 5
inline RationalMap<FptElem> example_62(long p, long n, long d = 5) {
    Domain dom = make_domain(DomainTag::Fpt, p);
    if (d <= p || d % p == 0)
        throw error(errc::invalid_argument, "needs d > p with p not dividing d");
    std::vector<FptElem> f(static_cast<size_t>(d) + 1, FptElem::zero(dom));
    f[1] = FptElem::one(dom);
    f[static_cast<size_t>(d)] = FptElem::one(dom);
    f[static_cast<size_t>(p)] = FptElem::uniformizer_pow(dom, -n);
    return normalize_map(Poly<FptElem>(dom, std::move(f)),
                         Poly<FptElem>::constant(FptElem::one(dom)));
}

// (z^{p+1} + p)/z over Q_p
inline RationalMap<QpElem> example_63(long p) {
    Domain dom = make_domain(DomainTag::Qp, p);
    std::vector<QpElem> f(static_cast<size_t>(p) + 2, QpElem::zero(dom));
    f[0] = QpElem(dom, Rat(p));
    f[static_cast<size_t>(p) + 1] = QpElem::one(dom);
    return normalize_map(Poly<QpElem>(dom, std::move(f)),
                         Poly<QpElem>::monomial(QpElem::one(dom), 1));
}

// ---------------------------------------------------------------------------
// Map specs and domain dispatch
// ---------------------------------------------------------------------------

namespace detail {

struct MapSpec {
    Domain dom;
    json map_json;  // either {"f","g"} or {"builtin", ...}
};

inline MapSpec map_spec_of_json(const json& job) {
    expect(job.contains("map"), "job needs a map");
    const json& m = job.at("map");
    expect(m.is_object(), "map must be an object");
    if (m.contains("builtin")) {
        std::string name = m.at("builtin").get<std::string>();
        long p = m.value("p", 3L);
        if (name == "6.1" || name == "ex61") return {make_domain(DomainTag::Qp, p), m};
        if (name == "6.2" || name == "ex62") return {make_domain(DomainTag::Fpt, p), m};
        if (name == "6.3" || name == "ex63") return {make_domain(DomainTag::Qp, p), m};
        throw error(errc::schema_error, "unknown builtin map: " + name);
    }
    expect(m.contains("f") && m.contains("g") && m.contains("domain"),
           "map needs f, g and domain");
    return {domain_of_json(m.at("domain")), m};
}

template <CoefficientField K>
RationalMap<K> map_of_spec(const MapSpec& spec) {
    const json& m = spec.map_json;
    if (m.contains("builtin")) {
        std::string name = m.at("builtin").get<std::string>();
        long p = m.value("p", 3L);
        if constexpr (std::is_same_v<K, QpElem>) {
            if (name == "6.1" || name == "ex61") return example_61(p);
            if (name == "6.3" || name == "ex63") return example_63(p);
        } else {
            if (name == "6.2" || name == "ex62")
                return example_62(p, m.value("n", 1L), m.value("d", 5L));
        }
        throw error(errc::schema_error, "builtin map does not live in this domain");
    }
    return normalize_map(poly_of_json<K>(spec.dom, m.at("f")),
                         poly_of_json<K>(spec.dom, m.at("g")));
}

// calls fn with the parsed RationalMap<K> for the spec's domain
template <class F>
json with_map(const json& job, F&& fn) {
    MapSpec spec = map_spec_of_json(job);
    if (spec.dom.tag == DomainTag::Qp) return fn(spec.dom, map_of_spec<QpElem>(spec), job);
    return fn(spec.dom, map_of_spec<FptElem>(spec), job);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Report rendering: CSV and SVG for profiles
// ---------------------------------------------------------------------------

inline std::string profile_to_csv(const json& profile) {
    std::ostringstream out;
    out << "s,value\n";
    const json& pieces = profile.at("pieces");
    for (size_t i = 0; i < pieces.size(); ++i) {
        const json& p = pieces[i];
        Rat s0 = rat_from_string(p.at("s0").get<std::string>());
        Rat s1 = rat_from_string(p.at("s1").get<std::string>());
        Rat alpha = rat_from_string(p.at("alpha").get<std::string>());
        Rat beta = rat_from_string(p.at("beta").get<std::string>());
        if (i == 0) out << rat_to_string(s0) << "," << rat_to_string(alpha + beta * s0) << "\n";
        out << rat_to_string(s1) << "," << rat_to_string(alpha + beta * s1) << "\n";
    }
    return out.str();
}

// static plot; rationals are rasterized only here
inline std::string profile_to_svg(const json& profile) {
    const json& pieces = profile.at("pieces");
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < pieces.size(); ++i) {
        const json& p = pieces[i];
        Rat s0 = rat_from_string(p.at("s0").get<std::string>());
        Rat s1 = rat_from_string(p.at("s1").get<std::string>());
        Rat alpha = rat_from_string(p.at("alpha").get<std::string>());
        Rat beta = rat_from_string(p.at("beta").get<std::string>());
        if (i == 0) pts.emplace_back(s0.get_d(), Rat(alpha + beta * s0).get_d());
        pts.emplace_back(s1.get_d(), Rat(alpha + beta * s1).get_d());
    }
    double xmin = pts.front().first, xmax = pts.front().first;
    double ymin = pts.front().second, ymax = pts.front().second;
    for (auto& [x, y] : pts) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double W = 640, H = 400, M = 48;
    auto X = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto Y = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    if (ymin < 0 && ymax > 0)
        svg << "<line x1=\"" << M << "\" y1=\"" << Y(0) << "\" x2=\"" << W - M << "\" y2=\"" << Y(0)
            << "\" stroke=\"#cccccc\" stroke-dasharray=\"4 4\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (auto& [x, y] : pts) svg << X(x) << "," << Y(y) << " ";
    svg << "\"/>\n";
    for (auto& [x, y] : pts)
        svg << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    svg << "<text x=\"" << W - M << "\" y=\"" << H - M + 32 << "\" text-anchor=\"end\" "
        << "font-family=\"monospace\" font-size=\"12\">s</text>\n";
    svg << "<text x=\"" << M << "\" y=\"" << M - 12 << "\" font-family=\"monospace\" "
        << "font-size=\"12\">value</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace berkram
