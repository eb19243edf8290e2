#pragma once

#include "slowdet/covering.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace slowdet {

struct RunConfig {
    unsigned precision = kDefaultPrecisionBits;
    unsigned long seed = 1;
    int threads = 0;  // 0: OpenMP default
    std::string config_file;
    int resolution = 2000;
    long bezout_trials = 0;
    bool timings = false;  // off by default so reruns are byte-identical
};

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

struct BezoutAudit {
    std::string curve;
    std::string family;
    long trials = 0;
    long violations = 0;
    long max_count = 0;
    double worst_ratio = 0;  // count / formula
    std::vector<std::string> violation_details;
};

// Random integer polynomials of degree 1..max_degree against random parameter intervals;
// each sign-change count must stay below the curve's Bezout formula.
BezoutAudit bezout_audit(const CurveSpec& c, long trials, unsigned long seed, int max_degree = 3);
nlohmann::ordered_json bezout_audit_to_json(const BezoutAudit& a);

struct RunSummary {
    long T = 1;
    long certified = 0;
    long candidates = 0;
    Real bound;
    bool plan_verified = false;
    bool consistent = true;  // certified <= bound
    nlohmann::ordered_json json;
};

// Bound, scan, covering plan and (optionally) a Bezout audit for one height.
RunSummary run_report(const CurveSpec& c, long T, const RunConfig& cfg);

std::string tsv_header();
std::string tsv_row(const std::string& curve, const RunSummary& s);

}  // namespace slowdet
