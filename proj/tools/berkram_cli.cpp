// Command-line front end: parses map descriptions, dispatches computations,
// reproduces the bundled examples, and emits machine-readable reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "berkram/berkram.hpp"

namespace {

using berkram::json;

json parse_map_argument(const std::string& map_arg, const std::string& domain_tag, long p, long n) {
    if (map_arg.rfind("ex", 0) == 0 || map_arg.rfind("6.", 0) == 0) {
        std::string name = map_arg.rfind("ex", 0) == 0
                               ? (map_arg == "ex61"   ? "6.1"
                                  : map_arg == "ex62" ? "6.2"
                                  : map_arg == "ex63" ? "6.3"
                                                      : map_arg)
                               : map_arg;
        json m{{"builtin", name}, {"p", p}};
        if (name == "6.2") m["n"] = n;
        return m;
    }
    json m;
    if (!map_arg.empty() && map_arg.front() == '{') {
        m = json::parse(map_arg, nullptr, true);
    } else {
        std::ifstream in(map_arg);
        if (!in) throw berkram::error(berkram::errc::io_error, "cannot open map file: " + map_arg);
        in >> m;
    }
    if (!m.contains("domain") && !m.contains("builtin"))
        m["domain"] = json{{"tag", domain_tag == "fpt" ? "Fpt" : "Qp"}, {"p", p}};
    return m;
}

int emit(const json& report, const std::string& out_path, const std::string& csv_path,
         const std::string& svg_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw berkram::error(berkram::errc::io_error, "cannot write " + out_path);
        out << text;
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw berkram::error(berkram::errc::io_error, "cannot write " + csv_path);
        out << berkram::profile_to_csv(report.at("profile"));
    }
    if (!svg_path.empty()) {
        std::ofstream out(svg_path);
        if (!out) throw berkram::error(berkram::errc::io_error, "cannot write " + svg_path);
        out << berkram::profile_to_svg(report.at("profile"));
    }
    if (report.contains("passed") && !report.at("passed").get<bool>()) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ramification invariants of rational maps on the Berkovich projective line"};
    app.require_subcommand(1);

    std::string map_arg, domain_tag = "qp", point_arg, center_arg = "0", out_path, csv_path,
                svg_path, which = "tfrak", poly_arg, delta_arg, shift_arg, r_arg, name_arg;
    std::string s0_arg = "0", s1_arg = "1", s_arg = "0";
    long p = 3, n = 1, m_arg = 2, samples = 200;
    unsigned seed = 1;
    bool json_flag = false;

    auto add_common = [&](CLI::App* sub, bool needs_map) {
        if (needs_map) sub->add_option("--map", map_arg, "builtin name, file path, or inline JSON")
            ->required();
        sub->add_option("--p", p, "residue characteristic");
        sub->add_option("--n", n, "builtin parameter n");
        sub->add_option("--domain", domain_tag, "qp|fpt")->check(CLI::IsMember({"qp", "fpt"}));
        sub->add_flag("--json", json_flag, "emit JSON (always on)");
        sub->add_option("--out", out_path, "write the report to a file");
    };

    std::vector<std::string> point_cmds = {"tau", "tfrak", "mult", "ramified", "hulldist", "tube"};
    for (const auto& c : point_cmds) {
        auto* sub = app.add_subcommand(c);
        add_common(sub, true);
        sub->add_option("--point", point_arg, "center,s")->required();
        if (c == "tube") sub->add_option("--r", r_arg, "tube radius")->required();
    }
    for (const auto& c : {"aux", "wronskian", "critical"}) {
        auto* sub = app.add_subcommand(c);
        add_common(sub, true);
    }
    {
        auto* sub = app.add_subcommand("profile");
        add_common(sub, true);
        sub->add_option("--center", center_arg);
        sub->add_option("--s0", s0_arg);
        sub->add_option("--s1", s1_arg);
        sub->add_option("--which", which)->check(CLI::IsMember({"tau", "tfrak"}));
        sub->add_option("--csv", csv_path, "write a CSV rendering");
        sub->add_option("--plot", svg_path, "write a static SVG plot");
    }
    {
        auto* sub = app.add_subcommand("thmD");
        add_common(sub, true);
        sub->add_option("--samples", samples);
        sub->add_option("--seed", seed);
    }
    for (const auto& c : {"rolle", "surjective"}) {
        auto* sub = app.add_subcommand(c);
        add_common(sub, true);
        sub->add_option("--center", center_arg);
        sub->add_option("--s", s_arg)->required();
        if (std::string(c) == "rolle") sub->add_option("--shift", shift_arg, "forced enlargement");
    }
    {
        auto* sub = app.add_subcommand("newton");
        add_common(sub, false);
        sub->add_option("--poly", poly_arg, "JSON coefficient array")->required();
        sub->add_option("--shift", shift_arg, "recenter before the polygon");
    }
    {
        auto* sub = app.add_subcommand("fuzz");
        add_common(sub, false);
        sub->add_option("--poly", poly_arg, "normalized series z^m(1 + eps)")->required();
        sub->add_option("--delta", delta_arg)->required();
    }
    {
        auto* sub = app.add_subcommand("binomlemma");
        sub->add_option("--m", m_arg)->required();
        sub->add_option("--p", p)->required();
        sub->add_option("--out", out_path);
    }
    {
        auto* sub = app.add_subcommand("example");
        sub->add_option("name", name_arg, "6.1, 6.2, or 6.3")->required();
        sub->add_option("--p", p);
        sub->add_option("--n", n);
        sub->add_option("--out", out_path);
    }
    {
        auto* sub = app.add_subcommand("run");
        sub->add_option("spec", name_arg, "job file, inline JSON, or - for stdin")->required();
        sub->add_option("--out", out_path);
        sub->add_option("--csv", csv_path);
        sub->add_option("--plot", svg_path);
    }

    CLI11_PARSE(app, argc, argv);
    std::string cmd = app.get_subcommands().front()->get_name();

    try {
        json job;
        if (cmd == "run") {
            if (name_arg == "-") {
                job = berkram::parse_jobspec(std::cin).params;
            } else if (!name_arg.empty() && name_arg.front() == '{') {
                job = json::parse(name_arg);
            } else {
                std::ifstream in(name_arg);
                if (!in)
                    throw berkram::error(berkram::errc::io_error, "cannot open " + name_arg);
                job = berkram::parse_jobspec(in).params;
            }
            cmd = job.value("command", "");
        } else {
            job["command"] = cmd;
            if (cmd == "example") {
                job["name"] = name_arg;
                job["p"] = p;
                job["n"] = n;
            } else if (cmd == "binomlemma") {
                job["m"] = m_arg;
                job["p"] = p;
            } else if (cmd == "newton" || cmd == "fuzz") {
                job["domain"] = json{{"tag", domain_tag == "fpt" ? "Fpt" : "Qp"}, {"p", p}};
                job["poly"] = json::parse(poly_arg);
                if (!delta_arg.empty()) job["delta"] = delta_arg;
                if (!shift_arg.empty()) job["shift"] = shift_arg;
            } else {
                job["map"] = parse_map_argument(map_arg, domain_tag, p, n);
                if (!point_arg.empty()) job["point"] = point_arg;
                if (cmd == "profile") {
                    job["center"] = center_arg;
                    job["s0"] = s0_arg;
                    job["s1"] = s1_arg;
                    job["which"] = which;
                }
                if (cmd == "rolle" || cmd == "surjective") {
                    job["center"] = center_arg;
                    job["s"] = s_arg;
                    if (!shift_arg.empty()) job["shift"] = shift_arg;
                }
                if (cmd == "tube") job["r"] = r_arg;
                if (cmd == "thmD") {
                    job["samples"] = samples;
                    job["seed"] = seed;
                }
            }
        }
        json report = berkram::run_job(berkram::parse_jobspec(job));
        return emit(report, out_path, csv_path, svg_path);
    } catch (const berkram::error& e) {
        json err{{"error", {{"code", berkram::errc_name(e.code())}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return e.code() == berkram::errc::schema_error ? 2 : 1;
    } catch (const json::exception& e) {
        json err{{"error", {{"code", "SchemaError"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "InternalError"}, {"message", e.what()}}}};
        std::cout << err.dump(2) << "\n";
        return 1;
    }
}
