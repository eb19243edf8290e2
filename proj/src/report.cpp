#include "slowdet/report.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace slowdet {

using nlohmann::ordered_json;

ordered_json config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["precision"] = cfg.precision;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["config"] = cfg.config_file;
    j["resolution"] = cfg.resolution;
    j["bezout_trials"] = cfg.bezout_trials;
    return j;
}

namespace {

void audit_one(const CurveSpec& c, long trials, std::mt19937_64& rng, int max_degree, BezoutAudit& out) {
    if (!c.bezout) throw InputError("curve '" + c.name + "' has no Bezout formula");
    Expr X = display_x(c), Y = display_y(c);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> coef(-5, 5), deg(1, max_degree);
    const double span = 3 * M_PI;
    for (long t = 0; t < trials; ++t) {
        int d = deg(rng);
        Poly2 P;
        P.d = d;
        auto mons = monomials(d);
        bool nonconst = false;
        while (!nonconst) {
            P.coeffs.assign(mons.size(), Rational(0));
            for (size_t i = 0; i < mons.size(); ++i) {
                P.coeffs[i] = coef(rng);
                if (P.coeffs[i] != 0 && (mons[i].first || mons[i].second)) nonconst = true;
            }
        }
        double lo, hi;
        if (c.mode == CurveMode::Compact) {
            auto [a, b] = param_range(c, Real(100));
            double da = to_double(a), db = to_double(b);
            lo = da + (db - da) * unif(rng) * 0.5;
            hi = lo + (db - lo) * (0.1 + 0.9 * unif(rng));
        } else {
            double base = std::max(1.0, to_double(c.lo));
            lo = base * std::exp(span * 0.5 * unif(rng));
            hi = lo * std::exp(span * (0.05 + 0.45 * unif(rng)));
        }
        long count = empirical_zero_count(P, X, Y, lo, hi, 4000);
        BezoutFormula b = *c.bezout;
        if (b.id == BezoutId::SinC) b.span = Real(hi - lo);
        Real x = c.range == RangeKind::SpiralRadius ? exp(Real(hi)) : Real(hi);
        Real formula = b(std::max(x, Real(1)), d);
        ++out.trials;
        out.max_count = std::max(out.max_count, count);
        double ratio = to_double(Real(count) / formula);
        out.worst_ratio = std::max(out.worst_ratio, ratio);
        if (Real(count) > formula) {
            ++out.violations;
            std::ostringstream os;
            os << c.name << ": degree " << d << " on [" << lo << ", " << hi << "] has " << count
               << " sign changes, formula " << real_to_string(formula);
            out.violation_details.push_back(os.str());
        }
    }
}

}  // namespace

BezoutAudit bezout_audit(const CurveSpec& c, long trials, unsigned long seed, int max_degree) {
    if (trials < 1) throw InputError("need at least one audit trial");
    if (max_degree < 1) throw InputError("audit degree must be >= 1");
    BezoutAudit a;
    a.curve = c.name;
    std::mt19937_64 rng(seed);
    if (c.mode == CurveMode::Composite) {
        a.family = "composite";
        for (const auto& b : c.branches) audit_one(b, trials, rng, max_degree, a);
        return a;
    }
    a.family = c.bezout ? bezout_id_name(c.bezout->id) : "none";
    audit_one(c, trials, rng, max_degree, a);
    return a;
}

ordered_json bezout_audit_to_json(const BezoutAudit& a) {
    ordered_json j;
    j["curve"] = a.curve;
    j["family"] = a.family;
    j["trials"] = a.trials;
    j["violations"] = a.violations;
    j["max_count"] = a.max_count;
    j["worst_ratio"] = a.worst_ratio;
    j["violation_details"] = a.violation_details;
    return j;
}

namespace {

ordered_json plan_summary(const CoveringPlan& p) {
    ordered_json j;
    j["verified"] = p.verified;
    j["partition"] = p.partition;
    j["interval_count"] = p.interval_count.str();
    if (p.mode != CurveMode::Composite && p.mode != CurveMode::Compact)
        j["interval_count_bound"] = p.interval_count_bound.str();
    if (p.compact) j["compact_intervals"] = p.compact->intervals.str();
    size_t nonempty = p.intervals.size();
    for (const auto& b : p.branches) nonempty += b.intervals.size();
    j["nonempty_intervals"] = nonempty;
    j["failures"] = p.failures;
    return j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunSummary run_report(const CurveSpec& c, long T, const RunConfig& cfg) {
    RunSummary s;
    s.T = T;
    ordered_json timings;
    auto t0 = std::chrono::steady_clock::now();
    CurveBound cb = curve_bound(c, T);
    timings["bound"] = seconds_since(t0);
    s.bound = cb.total;

    t0 = std::chrono::steady_clock::now();
    ScanResult scan = scan_points(c, T, cfg.resolution);
    timings["scan"] = seconds_since(t0);
    s.certified = scan.certified;
    s.candidates = scan.candidates;

    t0 = std::chrono::steady_clock::now();
    CoveringPlan plan = build_covering_plan(c, T, c.mode == CurveMode::Composite ? nullptr : &scan);
    timings["cover"] = seconds_since(t0);
    s.plan_verified = plan.verified;
    s.consistent = Real(s.certified) <= s.bound;

    ordered_json j;
    j["schema"] = "slowdet-report/1";
    j["curve"] = c.name;
    j["T"] = T;
    j["config"] = config_to_json(cfg);
    j["declarations"] = c.declarations;
    j["bound"] = curve_bound_to_json(cb);
    j["empirical"] = {{"certified", s.certified},
                      {"candidates", s.candidates},
                      {"label", "certified count is a lower bound (>=)"},
                      {"evaluation_failures", scan.evaluation_failures},
                      {"notes", scan.notes}};
    j["plan"] = plan_summary(plan);
    if (cfg.bezout_trials > 0) {
        t0 = std::chrono::steady_clock::now();
        j["bezout_audit"] = bezout_audit_to_json(bezout_audit(c, cfg.bezout_trials, cfg.seed));
        timings["bezout_audit"] = seconds_since(t0);
    }
    j["consistent"] = s.consistent;
    if (cfg.timings) j["timings"] = timings;
    s.json = j;
    return s;
}

std::string tsv_header() { return "curve\tT\tcertified\tcandidates\tbound\tplan_verified\n"; }

std::string tsv_row(const std::string& curve, const RunSummary& s) {
    std::ostringstream os;
    os << curve << '\t' << s.T << '\t' << s.certified << '\t' << s.candidates << '\t' << real_to_string(s.bound) << '\t'
       << (s.plan_verified ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace slowdet
