#pragma once

#include "slowdet/points.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slowdet {

// T^(2 d mu) C(d,A,B) L^rho log^(C rho) N / N^rho, rounded up.
Real vanishing_lhs(int d, const SlowCertificate& cert, const Real& T, const Real& N, const Real& L);
bool vanishing_condition(int d, const SlowCertificate& cert, const Real& T, const Real& N, const Real& L);

struct CoverPoly {
    Poly2 poly;     // integer coefficients, content 1, first nonzero (lex order) positive
    long rank = 0;  // of the monomial matrix
    long nullity = 0;
};

// A nonzero polynomial of degree <= d through all points, from the exact nullspace of the
// monomial matrix.  Throws InvariantViolation when the matrix has full rank mu.
CoverPoly covering_polynomial(const std::vector<std::pair<Rational, Rational>>& pts, int d);

struct DetCheckReport {
    int d = 1;
    Real N, L;
    long trials = 0;
    long violations = 0;
    Real bound;
    Real worst_ratio = 0;
    unsigned max_bits = 0;
    long escalations = 0;
    long unresolved = 0;  // precision cap reached before the comparison was decided
};

// Samples mu parameters in [N, N+L] per trial and compares |det(gamma^alpha(x_j))| with the
// determinant bound.  Curves with D > 1 are scaled by 1/ceil(D) first.
DetCheckReport determinant_bound_check(const CurveSpec& c, int d, const Real& N, const Real& L, long trials,
                                       unsigned long seed, Parallelism par = Parallelism::OpenMP);

struct CoverInterval {
    std::string kind;  // "slow", "anchored", "compact"
    long index = 0;    // position in its partition
    Real left, right;
    std::vector<size_t> point_ids;  // into CoveringPlan::points
    std::optional<Poly2> poly;
    long rank = 0;
    bool few_points = false;  // fewer than mu certified points
    bool vanishes = true;     // exact vanishing on every certified point
    std::vector<bool> candidate_on_poly;
    bool condition_ok = true;  // vanishing condition (slow intervals)
};

struct CompactBlock {
    Real lo, hi;
    Real L;           // subinterval length
    Integer count;    // number of subintervals
    double log_sup_product = 0;
};

struct CompactCover {
    int d = 1;
    Real T;  // method height
    std::vector<CompactBlock> blocks;
    Integer intervals = 0;
    double sup_safety = 2;
    int grid_per_block = 9;
};

// Subdivision of [lo, hi] such that the compact analogue of the vanishing condition holds on
// every piece, with derivative sups measured on a grid per unit block.
CompactCover compact_cover(const CurveSpec& c, const Real& lo, const Real& hi, const Real& T, int d);

struct CoveringPlan {
    std::string curve;
    CurveMode mode = CurveMode::SlowPlus;
    long T = 1;
    Real T_method;
    int d = 1;
    long mu = 3;
    Real N;       // first covering term
    Real phiT;    // parameter end of the slow partition
    std::string partition;  // "covering_sequence", "anchored", "compact", "composite"
    Integer interval_count = 0;  // slow partition of [N, phi(T)]
    Integer interval_count_bound = 0;
    bool count_ok = true;
    std::optional<CompactCover> compact;  // compact curve or head [lo, N)
    std::vector<CoverInterval> intervals;  // nonempty ones
    std::vector<RationalPoint> points;
    std::vector<CoveringPlan> branches;
    bool verified = false;
    std::vector<std::string> failures;
};

// Runs the scan unless points are supplied.
CoveringPlan build_covering_plan(const CurveSpec& c, long T, const ScanResult* scan = nullptr);

struct BoundPart {
    std::string name;
    std::string kind;  // "theorem", "head", "compact"
    Integer intervals = 0;
    Real bezout = 0;
    Real total = 0;
};

struct CurveBound {
    Real total = 0;
    std::vector<BoundPart> parts;
    std::optional<BoundReport> theorem;
};

// Upper bound for the number of rational points of height <= T on the whole scanned range:
// theorem bound, plus compact pieces for heads and compact branches.
CurveBound curve_bound(const CurveSpec& c, long T);

nlohmann::ordered_json plan_to_json(const CoveringPlan& p);
nlohmann::ordered_json curve_bound_to_json(const CurveBound& b);
nlohmann::ordered_json det_report_to_json(const DetCheckReport& r);
nlohmann::ordered_json poly_to_json(const Poly2& p);

}  // namespace slowdet
