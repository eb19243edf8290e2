#include "slowdet/report.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>

using namespace slowdet;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 2;
constexpr int kExitInput = 3;

struct Globals {
    RunConfig cfg;
    std::string out;
};

CurveSpec load_curve(const std::string& spec) {
    if (spec.rfind("catalog:", 0) == 0) return catalog_curve(spec.substr(8));
    std::ifstream in(spec);
    if (!in) {
        for (const auto& n : catalog_names())
            if (n == spec) return catalog_curve(spec);
        throw InputError("cannot open curve spec '" + spec + "' (not a file or catalog name)");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("curve spec is not valid JSON: ") + e.what());
    }
    return curve_from_json(j);
}

void emit(const ordered_json& j, const std::string& out) {
    std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(out);
    if (!os) throw InputError("cannot write '" + out + "'");
    os << text;
}

ordered_json header(const char* schema, const CurveSpec& c, const Globals& g) {
    ordered_json j;
    j["schema"] = schema;
    j["curve"] = c.name;
    j["config"] = config_to_json(g.cfg);
    return j;
}

ordered_json verification_to_json(const VerificationReport& r, const std::string& which) {
    ordered_json j;
    j["check"] = which;
    j["ok"] = r.ok;
    j["checks"] = r.checks;
    j["worst_ratio"] = real_to_string(r.worst_ratio);
    j["worst_p"] = r.worst_p;
    j["worst_x"] = real_to_string(r.worst_x);
    if (r.first_violation) {
        const auto& v = *r.first_violation;
        j["first_violation"] = {{"p", v.p},
                                {"x", real_to_string(v.x)},
                                {"lhs", real_to_string(v.lhs)},
                                {"rhs", real_to_string(v.rhs)}};
    }
    j["errors"] = r.errors;
    return j;
}

Real parse_T(const std::string& s) {
    Real T = parse_real(s);
    if (!(T >= 1)) throw InputError("T must be >= 1");
    return T;
}

long parse_T_int(const std::string& s) {
    Real T = parse_T(s);
    if (T != floor(T)) throw InputError("this command needs an integer height T");
    if (T > Real(1e9)) throw InputError("height T too large for point enumeration");
    return T.convert_to<long>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slowdet: explicit rational-point bounds for slow transcendental curves"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI file");
    Globals g;
    app.add_option("--precision", g.cfg.precision, "working precision in bits")->check(CLI::Range(32u, 1u << 16));
    app.add_option("--seed", g.cfg.seed, "random seed");
    app.add_option("--threads", g.cfg.threads, "OpenMP threads (0 = default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "write the JSON report here instead of stdout");
    app.add_flag("--timings", g.cfg.timings, "include wall-clock timings (reports stop being byte-identical)");

    std::string spec, T_str, csv, tsv, window;
    std::vector<std::string> T_list;
    int p_max = 12, grid = 20, max_degree = 3;
    double span = 1000;
    long trials = 200;

    auto* certify = app.add_subcommand("certify", "verify the slow certificate of a curve");
    certify->add_option("spec", spec, "curve spec file or catalog name")->required();
    certify->add_option("--p-max", p_max, "highest derivative order")->check(CLI::Range(0, 200));
    certify->add_option("--grid", grid, "log-grid points")->check(CLI::Range(2, 1000000));
    certify->add_option("--span", span, "grid runs over [a, a*span]")->check(CLI::Range(1.0, 1e300));

    auto* bound = app.add_subcommand("bound", "explicit bound for rational points of height <= T");
    bound->add_option("spec", spec, "curve spec file or catalog name")->required();
    bound->add_option("--T", T_str, "height threshold")->required();

    auto* scan = app.add_subcommand("scan", "search rational points of height <= T");
    scan->add_option("spec", spec, "curve spec file or catalog name")->required();
    scan->add_option("--T", T_str, "height threshold (integer)")->required();
    scan->add_option("--window", window, "parameter window lo,hi (graph curves)");
    scan->add_option("--resolution", g.cfg.resolution, "parametric grid size")->check(CLI::Range(2, 100000000));
    scan->add_option("--csv", csv, "write the point list as CSV");

    auto* cover = app.add_subcommand("cover", "build and verify the covering plan");
    cover->add_option("spec", spec, "curve spec file or catalog name")->required();
    cover->add_option("--T", T_str, "height threshold (integer)")->required();
    cover->add_option("--resolution", g.cfg.resolution, "parametric grid size")->check(CLI::Range(2, 100000000));
    cover->add_option("--csv", csv, "write the point list as CSV");

    auto* bezout = app.add_subcommand("bezout-check", "audit the Bezout formula against sign-change counts");
    bezout->add_option("spec", spec, "curve spec file or catalog name")->required();
    bezout->add_option("--trials", trials, "random polynomial/interval pairs")->check(CLI::Range(1L, 100000000L));
    bezout->add_option("--max-degree", max_degree, "largest polynomial degree")->check(CLI::Range(1, 12));

    auto* report = app.add_subcommand("report", "bound, scan and cover for several heights");
    report->add_option("spec", spec, "curve spec file or catalog name")->required();
    report->add_option("--T", T_list, "height thresholds (integers)")->required();
    report->add_option("--resolution", g.cfg.resolution, "parametric grid size")->check(CLI::Range(2, 100000000));
    report->add_option("--bezout-trials", g.cfg.bezout_trials, "also run a Bezout audit")->check(CLI::NonNegativeNumber);
    report->add_option("--tsv", tsv, "write T / certified / bound rows as TSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    if (auto* cf = app.get_option_no_throw("--config"); cf && cf->count()) g.cfg.config_file = cf->as<std::string>();

    try {
        set_precision_bits(g.cfg.precision);
        if (g.cfg.threads > 0) omp_set_num_threads(g.cfg.threads);
        CurveSpec c = load_curve(spec);

        if (*certify) {
            CurveVerification v = verify_curve(c, p_max, grid, Real(span));
            ordered_json j = header("slowdet-certify/1", c, g);
            j["p_max"] = p_max;
            j["grid"] = grid;
            j["status"] = v.status;
            if (c.cert) j["cert"] = cert_to_json(*c.cert);
            auto arr = ordered_json::array();
            const char* names[] = {"f", "g", "decay"};
            for (size_t i = 0; i < v.reports.size(); ++i)
                arr.push_back(verification_to_json(v.reports[i], i < 3 ? names[i] : "branch"));
            j["reports"] = arr;
            emit(j, g.out);
            return v.status == "fail" ? kExitViolation : kExitOk;
        }
        if (*bound) {
            Real T = parse_T(T_str);
            ordered_json j = header("slowdet-bound/1", c, g);
            j["T"] = real_to_string(T);
            if (c.mode == CurveMode::Slow || c.mode == CurveMode::SlowPlus) {
                BoundReport r = global_bound(c, T);
                j["theorem"] = bound_report_to_json(r);
            }
            if (T == floor(T) && T <= Real(1e9)) j["curve_bound"] = curve_bound_to_json(curve_bound(c, T.convert_to<long>()));
            emit(j, g.out);
            return kExitOk;
        }
        if (*scan) {
            long T = parse_T_int(T_str);
            std::optional<std::pair<Real, Real>> win;
            if (!window.empty()) {
                auto comma = window.find(',');
                if (comma == std::string::npos) throw InputError("--window needs lo,hi");
                win = std::make_pair(parse_real(window.substr(0, comma)), parse_real(window.substr(comma + 1)));
                if (!(win->second >= win->first)) throw InputError("--window needs lo <= hi");
            }
            ScanResult r = win ? scan_graph_points(c, T, win) : scan_points(c, T, g.cfg.resolution);
            ordered_json j = header("slowdet-scan/1", c, g);
            j["T"] = T;
            j["certified"] = r.certified;
            j["candidates"] = r.candidates;
            j["label"] = "certified count is a lower bound (>=)";
            j["evaluations"] = r.evaluations;
            j["evaluation_failures"] = r.evaluation_failures;
            j["notes"] = r.notes;
            auto pts = ordered_json::array();
            for (const auto& p : r.points)
                pts.push_back({{"x", rational_to_string(p.x)},
                               {"y", rational_to_string(p.y)},
                               {"height", p.height.str()},
                               {"parameter", p.parameter ? real_to_string(*p.parameter) : std::string()},
                               {"status", status_name(p.status)}});
            j["points"] = pts;
            if (!csv.empty()) {
                std::ofstream os(csv);
                if (!os) throw InputError("cannot write '" + csv + "'");
                write_points_csv(os, r.points);
                j["csv"] = csv;
            }
            emit(j, g.out);
            return kExitOk;
        }
        if (*cover) {
            long T = parse_T_int(T_str);
            ScanResult r;
            if (c.mode != CurveMode::Composite) r = scan_points(c, T, g.cfg.resolution);
            CoveringPlan plan = build_covering_plan(c, T, c.mode == CurveMode::Composite ? nullptr : &r);
            ordered_json j = header("slowdet-cover/1", c, g);
            j["plan"] = plan_to_json(plan);
            if (!csv.empty()) {
                std::ofstream os(csv);
                if (!os) throw InputError("cannot write '" + csv + "'");
                write_points_csv(os, plan.points);
            }
            emit(j, g.out);
            return plan.verified ? kExitOk : kExitViolation;
        }
        if (*bezout) {
            BezoutAudit a = bezout_audit(c, trials, g.cfg.seed, max_degree);
            ordered_json j = header("slowdet-bezout-check/1", c, g);
            j["audit"] = bezout_audit_to_json(a);
            emit(j, g.out);
            return a.violations == 0 ? kExitOk : kExitViolation;
        }
        if (*report) {
            ordered_json j = header("slowdet-run/1", c, g);
            auto runs = ordered_json::array();
            std::string rows = tsv_header();
            bool ok = true;
            for (const auto& ts : T_list) {
                RunSummary s = run_report(c, parse_T_int(ts), g.cfg);
                if (s.plan_verified && !s.consistent) ok = false;
                runs.push_back(s.json);
                rows += tsv_row(c.name, s);
            }
            j["runs"] = runs;
            if (!tsv.empty()) {
                std::ofstream os(tsv);
                if (!os) throw InputError("cannot write '" + tsv + "'");
                os << rows;
            }
            emit(j, g.out);
            return ok ? kExitOk : kExitViolation;
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitOk;
}
