#pragma once

#include "slowdet/curves.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace slowdet {

enum class PointStatus { Certified, Candidate };

struct RationalPoint {
    Rational x, y;
    Integer height;
    std::optional<Real> parameter;
    PointStatus status = PointStatus::Candidate;
};

Integer point_height(const Rational& x, const Rational& y);

// Every reduced p/q with |p| <= T, 1 <= q <= T, ascending.
std::vector<Rational> enumerate_rationals(long T);
// The same as (p, q) pairs, for loops that only need doubles.
std::vector<std::pair<long, long>> enumerate_rationals_small(long T);

// The unique rational of height <= T within eps of value, if any.  Needs eps < 1/(4T^2).
std::optional<Rational> detect_rational(const Real& value, const Real& eps, long T);
// Double version used as a prefilter.
std::optional<std::pair<long, long>> detect_rational_d(double value, double tol, long T);

// Detection threshold at height T and the current precision.
Real scan_epsilon(long T);

enum class Parallelism { Serial, OpenMP };

// Indices i where fn(xs[i]) is within tol of a rational of height <= T.
std::vector<size_t> graph_prefilter(const DoubleFn& fn, const std::vector<double>& xs, long T, Parallelism par);

struct ScanResult {
    std::vector<RationalPoint> points;  // sorted by (x, y)
    long certified = 0;
    long candidates = 0;
    long evaluations = 0;
    long evaluation_failures = 0;
    std::vector<std::string> notes;
};

// Graph curves: the display coordinate graph_coord runs over rationals of height <= T in window.
ScanResult scan_graph_points(const CurveSpec& c, long T, std::optional<std::pair<Real, Real>> window = std::nullopt,
                             Parallelism par = Parallelism::OpenMP);
// Other curves: rationals crossed by the first display coordinate on a grid of `resolution`
// points over the parameter range.  A lower bound.
ScanResult scan_parametric_points(const CurveSpec& c, long T, int resolution);
// Picks the graph or parametric scan, recursing into composite branches.
ScanResult scan_points(const CurveSpec& c, long T, int resolution = 2000);

// Upper end of the parameter range scanned at height T.
Real scan_upper(const CurveSpec& c, long T);

std::string status_name(PointStatus s);
void write_points_csv(std::ostream& os, const std::vector<RationalPoint>& pts);

}  // namespace slowdet
