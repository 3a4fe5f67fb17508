#pragma once

#include <functional>
#include <istream>

#include "berkram/io.hpp"

namespace berkram {

struct JobSpec {
    std::string command;
    json params;
};

inline JobSpec parse_jobspec(const json& j) {
    detail::expect(j.is_object() && j.contains("command"), "job needs a command");
    JobSpec spec;
    spec.command = j.at("command").get<std::string>();
    spec.params = j;
    return spec;
}

inline JobSpec parse_jobspec(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw error(errc::schema_error, e.what());
    }
    return parse_jobspec(j);
}

namespace detail {

inline json assertion(const std::string& name, const std::string& expected,
                      const std::string& actual) {
    return json{{"name", name}, {"expected", expected}, {"actual", actual},
                {"pass", expected == actual}};
}

inline json finish_assertions(json assertions) {
    bool ok = true;
    for (const auto& a : assertions)
        if (!a.at("pass").get<bool>()) ok = false;
    return json{{"assertions", std::move(assertions)}, {"passed", ok}};
}

// Example fixture checks: z^p + z
inline json run_example_61(long p) {
    RationalMap<QpElem> phi = example_61(p);
    const Domain& dom = phi.domain();
    json as = json::array();

    BerkPoint<QpElem> gauss = BerkPoint<QpElem>::gauss(dom);
    Rat expected = make_rat(1, p - 1);
    as.push_back(assertion("dist_to_hull(gauss) = 1/(p-1)", rat_to_string(expected),
                           rat_to_string(dist_to_hull(phi, gauss))));
    as.push_back(assertion("multiplicity(gauss) = p", std::to_string(p),
                           std::to_string(multiplicity(phi, gauss))));
    for (Rat s : {make_rat(1, 2), Rat(1), Rat(2)}) {
        BerkPoint<QpElem> x(QpElem::zero(dom), s);
        as.push_back(assertion("multiplicity at s = " + rat_to_string(s), "1",
                               std::to_string(multiplicity(phi, x))));
    }
    // Rolle sharpness on the unit disk
    RolleReport r = rolle_check(phi, QpElem::zero(dom), Rat(0));
    as.push_back(assertion("rolle zeros", std::to_string(p), std::to_string(r.zeros_in_disk)));
    as.push_back(assertion("rolle verdict", "true", r.verdict ? "true" : "false"));
    RolleReport probe = rolle_check(phi, QpElem::zero(dom), Rat(0), Rat(0));
    as.push_back(assertion("sharpness probe fails without enlargement", "false",
                           probe.verdict ? "true" : "false"));
    return finish_assertions(std::move(as));
}

// Example fixture checks: z^d + z + t^{-n} z^p over F_p(t)
inline json run_example_62(long p, long n, long d) {
    RationalMap<FptElem> phi = example_62(p, n, d);
    const Domain& dom = phi.domain();
    json as = json::array();

    // the first polygon face runs from (1, 0) to (p, -n), so the witness
    // disk has log-radius n/(p-1)
    Rat level = make_rat(n, p - 1);
    long closed = count_roots(phi.f(), FptElem::zero(dom), level, DiskMode::Closed);
    long open = count_roots(phi.f(), FptElem::zero(dom), level, DiskMode::Open);
    as.push_back(
        assertion("p zeros at ord >= n/(p-1)", std::to_string(p), std::to_string(closed)));
    as.push_back(assertion("one zero strictly inside", "1", std::to_string(open)));
    BerkPoint<FptElem> x(FptElem::zero(dom), level);
    as.push_back(assertion("dist_to_hull = n/(p-1)", rat_to_string(level),
                           rat_to_string(dist_to_hull(phi, x))));
    as.push_back(assertion("witness point is ramified", "true",
                           is_ramified(phi, x) ? "true" : "false"));
    return finish_assertions(std::move(as));
}

// Example fixture checks: (z^{p+1} + p)/z
inline json run_example_63(long p) {
    RationalMap<QpElem> phi = example_63(p);
    const Domain& dom = phi.domain();
    AuxPolynomial<QpElem> aux = aux_coeffs(phi);
    json as = json::array();

    // A_0 = p(w^{p+1} - 1) and A_l = binom(p+1, l+1) w^{p+1-l}
    std::vector<QpElem> a0(static_cast<size_t>(p) + 2, QpElem::zero(dom));
    a0[0] = QpElem(dom, Rat(-p));
    a0[static_cast<size_t>(p) + 1] = QpElem(dom, Rat(p));
    as.push_back(assertion("A_0 = p(w^{p+1} - 1)", "true",
                           aux[0] == Poly<QpElem>(dom, a0) ? "true" : "false"));
    bool higher_ok = true;
    for (long l = 1; l <= p; ++l) {
        Int b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(p + 1),
                     static_cast<unsigned long>(l + 1));
        Poly<QpElem> expect = Poly<QpElem>::monomial(QpElem(dom, Rat(b)), p + 1 - l);
        if (!(aux[l] == expect)) higher_ok = false;
    }
    as.push_back(assertion("A_l = binom(p+1, l+1) w^{p+1-l}", "true", higher_ok ? "true" : "false"));

    BerkPoint<QpElem> gauss = BerkPoint<QpElem>::gauss(dom);
    as.push_back(assertion("tau(gauss) = 1/(p-1)", rat_to_string(make_rat(1, p - 1)),
                           tau(aux, gauss).str()));

    // two-piece profile on [0, 1] with breakpoint 1/(p+1)
    Profile<QpElem> pr = profile_segment(aux, QpElem::zero(dom), Rat(0), Rat(1), Which::TFrak);
    as.push_back(assertion("profile has two pieces", "2", std::to_string(pr.pieces.size())));
    if (pr.pieces.size() == 2) {
        as.push_back(assertion("breakpoint = 1/(p+1)", rat_to_string(make_rat(1, p + 1)),
                               rat_to_string(pr.pieces[0].s1)));
        as.push_back(assertion("first piece = 1/(p-1) - s(p+1)/(p-1)",
                               rat_to_string(make_rat(1, p - 1)) + "," +
                                   rat_to_string(make_rat(-(p + 1), p - 1)),
                               rat_to_string(pr.pieces[0].alpha) + "," +
                                   rat_to_string(pr.pieces[0].beta)));
        as.push_back(assertion("second piece = 1/p - s(p+1)/p",
                               rat_to_string(make_rat(1, p)) + "," +
                                   rat_to_string(make_rat(-(p + 1), p)),
                               rat_to_string(pr.pieces[1].alpha) + "," +
                                   rat_to_string(pr.pieces[1].beta)));
    }

    // ramified locus along center 0 inside the unit ball: 0 < s <= 1/(p+1)
    Rat bp = make_rat(1, p + 1);
    bool locus_ok = pr.eval(bp) == 0;
    for (long k = 1; k <= 4; ++k) {
        Rat below = bp * Rat(k, 5);  // in (0, 1/(p+1))
        Rat above = bp + (Rat(1) - bp) * Rat(k, 5);
        if (below > 0 && !(pr.eval(below) > 0)) locus_ok = false;
        if (above <= 1 && above > bp && !(pr.eval(above) < 0)) locus_ok = false;
    }
    as.push_back(assertion("t-sign cuts the locus at s = 1/(p+1)", "true",
                           locus_ok ? "true" : "false"));
    as.push_back(
        assertion("max ramified distance 1/(p+1) < tau(gauss)", "true",
                  (bp < tau(aux, gauss).value) ? "true" : "false"));
    return finish_assertions(std::move(as));
}

template <CoefficientField K>
json multiplicity_report(const RationalMap<K>& phi, const BerkPoint<K>& x) {
    json out;
    if (x.s.infinite) {
        out["route"] = "classical";
        out["multiplicity"] = phi.multiplicity_at(x.center);
    } else if (rat_is_integer(x.s.finite())) {
        out["route"] = "reduction";
        out["multiplicity"] = multiplicity_reduction(phi, x);
    } else {
        out["route"] = "zero_count";
        out["multiplicity"] = multiplicity_zero_count(phi, x.center, x.s.finite());
    }
    return out;
}

template <CoefficientField K>
std::vector<BerkPoint<K>> sample_points(const Domain& dom, long count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> euni(-3, 3);
    std::uniform_int_distribution<long> uuni(1, 4);
    std::uniform_int_distribution<long> num(-12, 12);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<BerkPoint<K>> out;
    for (long i = 0; i < count; ++i) {
        K center = K::zero(dom);
        if (i % 3 != 0) {
            long u = uuni(rng);
            center = K::from_int(dom, Int(u)) * K::uniformizer_pow(dom, euni(rng));
        }
        Rat s = make_rat(num(rng), den(rng));
        out.emplace_back(center, s);
    }
    return out;
}

}  // namespace detail

// Dispatches one parsed job to the corresponding library operation and
// returns the machine-readable report.
inline json run_job(const JobSpec& spec) {
    const std::string& cmd = spec.command;
    const json& P = spec.params;
    json out;
    out["schemaVersion"] = 1;
    out["command"] = cmd;

    if (cmd == "binomlemma") {
        long m = P.at("m").get<long>();
        long p = P.at("p").get<long>();
        auto [value, argmin] = binomial_val_min(m, p);
        out["value"] = rat_to_string(value);
        out["argmin"] = argmin;
        return out;
    }

    if (cmd == "newton") {
        Domain dom = detail::domain_of_json(P.at("domain"));
        auto run = [&](auto tag) {
            using K = decltype(tag);
            Poly<K> poly = detail::poly_of_json<K>(dom, P.at("poly"));
            if (P.contains("shift"))
                poly = poly.taylor_shift(detail::elem_of_json<K>(dom, P.at("shift")));
            out["polygon"] = to_json(newton_polygon(poly));
            json rv = json::array();
            for (auto& [v, n] : newton_polygon(poly).root_valuations())
                rv.push_back(json::array({v.str(), n}));
            out["rootValuations"] = rv;
        };
        if (dom.tag == DomainTag::Qp)
            run(QpElem{});
        else
            run(FptElem{});
        return out;
    }

    if (cmd == "fuzz") {
        Domain dom = detail::domain_of_json(P.at("domain"));
        auto run = [&](auto tag) {
            using K = decltype(tag);
            Poly<K> f = detail::poly_of_json<K>(dom, P.at("poly"));
            K delta = detail::elem_of_json<K>(dom, P.at("delta"));
            FuzzReport rep = fuzz_analyze(f, delta);
            out["case"] = rep.fuzz_case == FuzzCase::TameAnyChar ? "TameAnyChar"
                          : rep.fuzz_case == FuzzCase::WildCharZero ? "WildCharZero"
                                                                    : "WildCharP";
            out["m"] = rep.m;
            out["mPrime"] = rep.m_prime;
            out["deltaOrd"] = rat_to_string(rep.delta_ord);
            out["predictedTubeRadius"] = rep.predicted_tube_radius.str();
            out["predictedLocalRadius"] = rat_to_string(rep.predicted_local_radius);
            out["localRadius"] = rat_to_string(rep.local_radius);
            out["matches"] = rep.matches;
            out["rootsClosed"] = rep.roots_closed;
            out["rootsOpen"] = rep.roots_open;
            out["polygon"] = to_json(rep.polygon);
        };
        if (dom.tag == DomainTag::Qp)
            run(QpElem{});
        else
            run(FptElem{});
        return out;
    }

    if (cmd == "example") {
        std::string name = P.at("name").get<std::string>();
        long p = P.value("p", 3L);
        json rep;
        if (name == "6.1")
            rep = detail::run_example_61(p);
        else if (name == "6.2")
            rep = detail::run_example_62(p, P.value("n", 1L), P.value("d", 5L));
        else if (name == "6.3")
            rep = detail::run_example_63(p);
        else
            throw error(errc::schema_error, "unknown example: " + name);
        out.update(rep);
        out["example"] = name;
        out["p"] = p;
        return out;
    }

    // everything else takes a map
    return detail::with_map(P, [&](const Domain& dom, const auto& phi, const json& job) -> json {
        using K = std::decay_t<decltype(phi.f().coeff(0))>;

        if (cmd == "aux" || cmd == "wronskian") {
            if (cmd == "wronskian") {
                out["wronskian"] = to_json(phi.wronskian());
                return out;
            }
            AuxPolynomial<K> aux = aux_coeffs(phi);
            json arr = json::array();
            for (long l = 0; l < aux.d; ++l) arr.push_back(to_json(aux[l]));
            out["A"] = arr;
            out["d"] = aux.d;
            return out;
        }
        if (cmd == "tau" || cmd == "tfrak") {
            BerkPoint<K> x = detail::point_of_json<K>(dom, job.at("point"));
            TauValue v = (cmd == "tau") ? tau(phi, x) : t_frak(phi, x);
            out[cmd] = v.str();
            return out;
        }
        if (cmd == "profile") {
            K center = detail::elem_of_json<K>(dom, job.value("center", json("0")));
            Rat s0 = detail::rat_of_json(job.at("s0"));
            Rat s1 = detail::rat_of_json(job.at("s1"));
            Which which = job.value("which", std::string("tfrak")) == "tau" ? Which::Tau
                                                                            : Which::TFrak;
            Profile<K> pr = profile_segment(phi, center, s0, s1, which);
            out["profile"] = to_json(pr);
            return out;
        }
        if (cmd == "mult") {
            BerkPoint<K> x = detail::point_of_json<K>(dom, job.at("point"));
            out.update(detail::multiplicity_report(phi, x));
            return out;
        }
        if (cmd == "ramified") {
            BerkPoint<K> x = detail::point_of_json<K>(dom, job.at("point"));
            out["ramified"] = is_ramified(phi, x);
            return out;
        }
        if (cmd == "hulldist") {
            BerkPoint<K> x = detail::point_of_json<K>(dom, job.at("point"));
            out["distance"] = rat_to_string(dist_to_hull(phi, x));
            return out;
        }
        if (cmd == "tube") {
            BerkPoint<K> x = detail::point_of_json<K>(dom, job.at("point"));
            Rat r = detail::rat_of_json(job.at("r"));
            Rat d = dist_to_hull(phi, x);
            out["distance"] = rat_to_string(d);
            out["inTube"] = d <= r;
            return out;
        }
        if (cmd == "critical") {
            CriticalSet<K> cs = critical_set(phi);
            out["hasInfinity"] = cs.has_infinity;
            out["multAtInfinity"] = cs.mult_at_infinity;
            json vm = json::array();
            for (auto& [v, n] : cs.valuation_multiset) vm.push_back(json::array({v.str(), n}));
            out["valuationMultiset"] = vm;
            json rr = json::array();
            for (auto& r : cs.rational_roots)
                rr.push_back(json{{"point", to_json(r.point)},
                                  {"weight", r.weight},
                                  {"mult", r.mult}});
            out["rationalRoots"] = rr;
            json hr = json::array();
            for (auto& h : cs.hensel_roots) hr.push_back(h.str());
            out["henselRoots"] = hr;
            return out;
        }
        if (cmd == "thmD") {
            long count = job.value("samples", 200L);
            unsigned seed = job.value("seed", 1u);
            auto samples = detail::sample_points<K>(dom, count, seed);
            SweepReport rep = check_theorem_d(phi, samples);
            out["checked"] = rep.checked;
            out["passed"] = rep.passed;
            out["violations"] = rep.violations;
            out["skipped"] = rep.skipped;
            return out;
        }
        if (cmd == "rolle") {
            K center = detail::elem_of_json<K>(dom, job.value("center", json("0")));
            Rat s = detail::rat_of_json(job.at("s"));
            std::optional<Rat> shift;
            if (job.contains("shift")) shift = detail::rat_of_json(job.at("shift"));
            RolleReport rep = rolle_check(phi, center, s, shift);
            out["zerosInDisk"] = rep.zeros_in_disk;
            out["enlargedDiskOrd"] = rat_to_string(rep.enlarged_disk_ord);
            out["criticalFoundAtOrd"] = rep.critical_found_at.str();
            out["shiftUsed"] = rat_to_string(rep.shift_used);
            out["verdict"] = rep.verdict;
            return out;
        }
        if (cmd == "surjective") {
            K center = detail::elem_of_json<K>(dom, job.value("center", json("0")));
            Rat s = detail::rat_of_json(job.at("s"));
            SurjectivityReport rep = surjectivity_analysis(phi, center, s);
            out["surjective"] = rep.surjective;
            out["poleInDisk"] = rep.pole_in_disk;
            json cands = json::array();
            for (auto& [desc, n] : rep.candidates)
                cands.push_back(json{{"target", desc}, {"roots", n}});
            out["candidates"] = cands;
            if (phi.domain().characteristic() == 0) {
                App2Report a2 = app2_check(phi, center, s);
                out["criticalPointCheck"] =
                    json{{"applicable", a2.applicable},
                         {"holds", a2.holds},
                         {"enlargedDiskOrd", rat_to_string(a2.enlarged_disk_ord)},
                         {"criticalFoundAtOrd", a2.critical_found_at.str()}};
            }
            return out;
        }
        throw error(errc::schema_error, "unknown command: " + cmd);
    });
}

inline std::string run_job_to_string(const JobSpec& spec) { return run_job(spec).dump(2) + "\n"; }

}  // namespace berkram
