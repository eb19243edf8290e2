#pragma once

#include "slowdet/bezout.hpp"
#include "slowdet/bound.hpp"
#include "slowdet/slow.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace slowdet {

enum class CurveMode { Slow, SlowPlus, Compact, Composite };

std::string mode_name(CurveMode m);
CurveMode mode_from_name(const std::string& s);

// How the parameter range of a compact curve depends on T.
enum class RangeKind { Fixed, SymLog2T, SymT, SpiralRadius };

// A display coordinate in terms of a method coordinate src:
// disp = scale * src, or disp = 1 / (scale * src) when inverted.
struct CoordMap {
    int source = 0;
    bool invert = false;
    Rational scale = 1;
};

struct KnownPoint {
    Rational X, Y;
    Real param;
};

// The determinant method runs on the method coordinates (f, g); heights are measured on the
// display coordinates (X, Y), which are exact rational transforms of (f, g).
struct CurveSpec {
    std::string name;
    std::string family;  // catalog family or "custom"
    nlohmann::ordered_json family_args = nlohmann::ordered_json::object();
    CurveMode mode = CurveMode::SlowPlus;
    int graph_coord = -1;  // display coordinate equal to the parameter, or -1
    Expr f, g;
    CoordMap map_x{0, false, 1}, map_y{1, false, 1};
    Real lo = 1;  // parameter domain start
    Real hi = 0;  // compact: fixed upper end (RangeKind::Fixed)
    RangeKind range = RangeKind::Fixed;
    Real range_margin = 0;
    std::optional<SlowCertificate> cert;
    std::optional<HeightControl> phi;
    std::optional<BezoutFormula> bezout;
    bool transcendental = true;
    std::vector<std::string> declarations;
    std::vector<CurveSpec> branches;
};

Expr display_x(const CurveSpec& c);
Expr display_y(const CurveSpec& c);
// Display point -> method point, exactly.
std::pair<Rational, Rational> to_method(const CurveSpec& c, const Rational& X, const Rational& Y);
// Method heights are at most this factor times display heights.
Integer height_factor(const CurveSpec& c);
// Parameter range used at height T: [lo, hi] (hi = inf for slow curves).
std::pair<Real, Real> param_range(const CurveSpec& c, const Real& T);

CurveSpec make_spiral(const Real& F, const Real& G, int ell, int q);
enum class Outer { Sin, Cos };
CurveSpec make_sinlog_graph(const Real& a_coef, const Real& c, int ell, Outer outer = Outer::Sin);

struct ElementaryParams {
    Expr f, g;              // outer functions of a variable; ignored when the identity flag is set
    bool f_identity = false, g_identity = false;
    Real alpha_f = 1, alpha_g = 1;
    Expr s, sigma;          // inner slow functions
    SlowCertificate cert_s, cert_sigma;
    int ell = 1, q = 1;     // log powers inside s and sigma
    Real F = 1, G = 1;
    std::string u = "0", v = "0";
    LimitClass u_class = LimitClass::Rational, v_class = LimitClass::Rational;
    bool f_nonvanishing = false, g_nonvanishing = false;
    std::optional<Real> K;  // irrationality-measure constant
    bool transcendental = true;
    std::optional<BezoutFormula> bezout;
};
CurveSpec make_elementary(const ElementaryParams& p);

CurveSpec make_zeta(const Real& a_left, const Real& bezout_c = Real(1));

struct GammaConstants {
    Real delta;     // inf over y >= e of log y / f(y)
    Real y_delta;   // where it is attained
    Real D;         // min over x >= 1 of Gamma(x) e^-x
    Real x_D;
};
GammaConstants gamma_constants();
CurveSpec make_gamma(const Real& bezout_c = Real(1));

enum class TestCurve { UnboundedSpiral, Exp2Graph, Exp2Slow, SinPiGraph, SinCGraph };
CurveSpec make_test_curve(TestCurve kind, const Real& param = Real(0));

// Points known to lie on the curve exactly, of display height <= T.
std::vector<KnownPoint> known_points(const CurveSpec& c, long T);

// Catalog by name with JSON arguments, e.g. {"family":"spiral","F":"1",...}.
CurveSpec make_from_descriptor(const nlohmann::json& j);
std::vector<std::string> catalog_names();
CurveSpec catalog_curve(const std::string& name);

nlohmann::ordered_json curve_to_json(const CurveSpec& c);
CurveSpec curve_from_json(const nlohmann::json& j);

struct CurveVerification {
    bool ok = true;
    std::string status;  // "pass", "fail", "not applicable"
    std::vector<VerificationReport> reports;  // f, g, and the decay check when present
};
CurveVerification verify_curve(const CurveSpec& c, int p_max, int grid_points, const Real& grid_span = Real(1000));

// The theorem-level bound for a slow curve at display height T.
BoundReport global_bound(const CurveSpec& c, const Real& T);

}  // namespace slowdet
