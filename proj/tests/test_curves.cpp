#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowdet/curves.hpp"

#include <algorithm>

using namespace slowdet;

namespace {

bool has_point(const std::vector<KnownPoint>& pts, const Rational& x, const Rational& y) {
    return std::any_of(pts.begin(), pts.end(), [&](const KnownPoint& p) { return p.X == x && p.Y == y; });
}

}  // namespace

TEST_CASE("logarithmic spiral with unit parameters") {
    CurveSpec c = make_spiral(1, 1, 1, 1);
    CHECK(c.mode == CurveMode::SlowPlus);
    REQUIRE(c.cert);
    CHECK(c.cert->A == 4);
    CHECK(c.cert->B == 2);
    CHECK(c.cert->C == 0);
    REQUIRE(c.cert->decay);
    CHECK(c.cert->decay->E == 1);
    CHECK(start_point(*c.cert) == 1);
    CHECK((*c.phi)(Real(1000)) >= 1000);
    CHECK((*c.phi)(Real(1000)) < Real(1000.000001));
    Real e = exp(Real(1));
    CHECK(abs(eval_real(display_x(c), e) - sin(Real(1)) / e) < Real("1e-35"));
    CHECK(abs(eval_real(display_y(c), e) - cos(Real(1)) / e) < Real("1e-35"));
    CHECK(verify_curve(c, 12, 20).ok);
}

TEST_CASE("spiral with unequal parameters") {
    CurveSpec c = make_spiral(1, 2, 1, 3);
    CHECK(c.cert->A == 18);
    CHECK(c.cert->B == 4);
    CHECK(c.cert->C == 2);
    CHECK(c.cert->decay->E == 2);
    CHECK(abs(start_point(*c.cert) - exp(Real(1))) < Real("1e-30"));
    CHECK(verify_curve(c, 8, 20).ok);
}

TEST_CASE("sin of log graph") {
    CurveSpec c = make_sinlog_graph(1, 1, 1);
    CHECK(c.graph_coord == 0);
    CHECK(verify_curve(c, 12, 20).ok);
    CHECK(c.bezout->id == BezoutId::SinlogGraph);

    CurveSpec s = make_sinlog_graph(1, real_pi() / real_log2(), 1, Outer::Cos);
    auto pts = known_points(s, 1024);
    CHECK(pts.size() == 11);
    for (int k = 0; k <= 10; ++k) CHECK(has_point(pts, Rational(1 << k), Rational(k % 2 ? -1 : 1)));
}

TEST_CASE("zeta graph constants") {
    CurveSpec c = make_zeta(2);
    CHECK(abs(c.cert->A - parse_real("3.844156733617876924882572569467213160734")) < Real("1e-30"));
    CHECK(c.cert->A >= parse_real("3.844156733617876924882572569467213160734"));
    CHECK(c.cert->B == 1);
    CHECK(c.cert->C == 0);
    CHECK(c.phi->lambda == Real(0.25));
    std::vector<Real> xs{Real(2), Real(3), Real(5)};
    auto r = verify_certificate(c.g, *c.cert, 8, xs);
    CHECK(r.ok);
    CHECK_THROWS_AS(make_zeta(1), InputError);
}

TEST_CASE("gamma graph constants and factorial points") {
    GammaConstants g = gamma_constants();
    CHECK(abs(g.D - parse_real("0.09880599344175535114370940037991536229013")) < Real("1e-25"));
    CHECK(g.D <= parse_real("0.09880599344175535114370940037991536229013"));
    CHECK(abs(g.x_D - parse_real("3.203171468376931069294481524911503674962")) < Real("1e-30"));
    CurveSpec c = make_gamma();
    auto pts = known_points(c, 50000);
    Integer fact = 1;
    for (int n = 1; n <= 8; ++n) {
        fact *= n;
        CHECK(has_point(pts, Rational(n + 1), Rational(fact)));
    }
    CHECK(verify_curve(c, 12, 20).ok);
}

TEST_CASE("test curves and their known points") {
    auto spiral = make_test_curve(TestCurve::UnboundedSpiral, real_pi() / real_log2());
    CHECK(spiral.mode == CurveMode::Composite);
    CHECK(spiral.branches.size() == 2);
    auto sp = known_points(spiral, 1024);
    CHECK(sp.size() == 21);
    for (int k = -10; k <= 10; ++k) {
        Rational x = k >= 0 ? Rational(1 << k) : Rational(1, 1 << -k);
        if (k % 2) x = -x;
        CHECK(has_point(sp, x, 0));
    }

    auto exp2 = make_test_curve(TestCurve::Exp2Graph);
    auto ep = known_points(exp2, 1024);
    CHECK(ep.size() == 21);
    for (int k = -10; k <= 10; ++k)
        CHECK(has_point(ep, Rational(k), k >= 0 ? Rational(1 << k) : Rational(1, 1 << -k)));

    auto sinpi = make_test_curve(TestCurve::SinPiGraph);
    auto pp = known_points(sinpi, 100);
    for (int k = -100; k <= 100; ++k) CHECK(has_point(pp, Rational(k), 0));
    CHECK(verify_curve(sinpi, 12, 20).status == "not applicable");
}

TEST_CASE("elementary curves") {
    ElementaryParams p;
    p.f = ex::sin(ex::var());
    p.g = ex::sin(ex::var());
    p.s = ex::log(ex::var());
    p.sigma = ex::log(ex::var());
    p.cert_s = compose_logpow(1, 1);
    p.cert_sigma = compose_logpow(1, 1);
    CurveSpec c = make_elementary(p);
    CHECK(verify_curve(c, 10, 20).ok);
    CurveSpec s = make_spiral(1, 1, 1, 1);
    CHECK(c.cert->B >= s.cert->B);

    ElementaryParams bad = p;
    bad.F = -1;
    CHECK_THROWS_AS(make_elementary(bad), InputError);
}

TEST_CASE("catalog json round trip") {
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        CurveSpec c = catalog_curve(name);
        auto j = curve_to_json(c);
        CurveSpec back = curve_from_json(nlohmann::json::parse(j.dump()));
        CHECK(nlohmann::json::parse(curve_to_json(back).dump()) == nlohmann::json::parse(j.dump()));
        if (c.mode == CurveMode::Slow || c.mode == CurveMode::SlowPlus) CHECK(verify_curve(c, 12, 20).ok);
    }
    CHECK_THROWS_AS(catalog_curve("no_such_curve"), InputError);
}

TEST_CASE("hand-written curve spec") {
    auto j = nlohmann::json::parse(R"({"family": "spiral", "F": "1", "G": "1", "ell": 1, "q": 2})");
    CurveSpec c = curve_from_json(j);
    CHECK(c.cert->B == 3);
    CHECK_THROWS_AS(curve_from_json(nlohmann::json::parse(R"({"family": "spiral", "F": "-1"})")),
                    InputError);
}
