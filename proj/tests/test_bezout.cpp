#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowdet/report.hpp"

#include <random>

using namespace slowdet;

namespace {

bool close(const Real& a, const Real& b) { return abs(a - b) <= Real("1e-30") * abs(b); }

Poly2 poly(int d, std::vector<Rational> coeffs) {
    Poly2 p;
    p.d = d;
    p.coeffs = std::move(coeffs);
    return p;
}

}  // namespace

TEST_CASE("spiral formula") {
    auto b = spiral_bezout(1, 1, 1, 1);
    CHECK(close(b(exp(Real(10)), 3), Real(9600)));
    CHECK(close(b(exp(Real(1)), 1), Real(288)));
    CHECK(b(exp(Real(20)), 3) >= b(exp(Real(10)), 3));
}

TEST_CASE("sin of log formula") {
    auto b = sinlog_bezout(1);
    CHECK(close(b(exp(real_pi()), 2), Real(400)));
    CHECK(close(b(Real(2), 1), Real(64)));
    // cubic growth in the degree for a fixed height
    Real r = b(Real(1e6), 40) / b(Real(1e6), 20);
    CHECK(r > 6.5);
    CHECK(r < 9);
}

TEST_CASE("zeta formula") {
    Real e = exp(Real(1));
    CHECK(close(zeta_bezout_value(1, e, e, 1), 1 + e));
    CHECK(close(zeta_bezout_value(2, Real(50), Real(9), 3), 2 * zeta_bezout_value(1, Real(50), Real(9), 3)));
}

TEST_CASE("formula json round trip") {
    for (auto b : {spiral_bezout(1, 2, 1, 3, 5), sinlog_bezout(2), zeta_bezout(3), gamma_bezout(1), exp2_bezout(),
                   sinc_bezout(2, 10)})
        CHECK(bezout_from_json(bezout_to_json(b)) == b);
    CHECK_THROWS_AS(bezout_id_from_name("nope"), InputError);
}

TEST_CASE("zeros of the sine graph") {
    CurveSpec c = catalog_curve("sin_pi_graph");
    Poly2 P = poly(1, {0, 1, 0});
    CHECK(empirical_zero_count(P, display_x(c), display_y(c), -0.25, 10.25, 4000) >= 11);
    // zeros sitting on the endpoints are not sign changes
    CHECK(empirical_zero_count(P, display_x(c), display_y(c), 0, 10, 4000) >= 9);
}

TEST_CASE("spiral zeros stay below the formula") {
    CurveSpec c = catalog_curve("spiral_1_1");
    Poly2 P = poly(1, {0, 1, 0});
    double hi = std::exp(2 * M_PI);
    long n = empirical_zero_count(P, display_x(c), display_y(c), M_E, hi, 4000);
    CHECK(n >= 2);
    CHECK(Real(n) <= (*c.bezout)(Real(hi), 1));
}

TEST_CASE("random quadrics against the sin of log graph") {
    CurveSpec c = catalog_curve("sinlog_1");
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-5, 5);
    double hi = std::exp(3 * M_PI);
    Real bound = (*c.bezout)(Real(hi), 2);
    for (int t = 0; t < 20; ++t) {
        Poly2 P = poly(2, std::vector<Rational>(6));
        for (auto& q : P.coeffs) q = coef(rng);
        P.coeffs[1] = 1;
        CHECK(Real(empirical_zero_count(P, display_x(c), display_y(c), M_E, hi, 4000)) <= bound);
    }
}

TEST_CASE("audit runs clean on the catalog families") {
    for (const char* name : {"spiral_1_1", "sinlog_1", "exp2_graph", "gamma"}) {
        CAPTURE(name);
        BezoutAudit a = bezout_audit(catalog_curve(name), 30, 11);
        CHECK(a.trials == 30);
        CHECK(a.violations == 0);
        CHECK(a.worst_ratio <= 1);
    }
    auto a1 = bezout_audit(catalog_curve("spiral_1_1"), 10, 5);
    auto a2 = bezout_audit(catalog_curve("spiral_1_1"), 10, 5);
    CHECK(bezout_audit_to_json(a1).dump() == bezout_audit_to_json(a2).dump());
}
