#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowdet/points.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace slowdet;

namespace {

bool has(const ScanResult& r, const Rational& x, const Rational& y, PointStatus st = PointStatus::Certified) {
    return std::any_of(r.points.begin(), r.points.end(),
                       [&](const RationalPoint& p) { return p.x == x && p.y == y && p.status == st; });
}

}  // namespace

TEST_CASE("height of a point") {
    CHECK(point_height(Rational(3, 4), Rational(-7, 2)) == 7);
    CHECK(point_height(Rational(0), Rational(0)) == 1);
    CHECK(point_height(Rational(6, 4), Rational(1, 9)) == 9);
}

TEST_CASE("rationals of small height") {
    auto one = enumerate_rationals(1);
    REQUIRE(one.size() == 3);
    CHECK(one[0] == -1);
    CHECK(one[1] == 0);
    CHECK(one[2] == 1);
    auto two = enumerate_rationals(2);
    std::vector<Rational> expected{-2, -1, Rational(-1, 2), 0, Rational(1, 2), 1, 2};
    CHECK(two == expected);
}

TEST_CASE("rational count matches brute force") {
    for (long T : {1L, 7L, 30L, 100L}) {
        long brute = 0;
        for (long q = 1; q <= T; ++q)
            for (long p = -T; p <= T; ++p)
                if (std::gcd(p, q) == 1) ++brute;
        CHECK(static_cast<long>(enumerate_rationals(T).size()) == brute);
        CHECK(static_cast<long>(enumerate_rationals_small(T).size()) == brute);
    }
    CHECK(enumerate_rationals(100).size() == 12175);
    auto v = enumerate_rationals(40);
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
}

TEST_CASE("rational detection") {
    auto h = detect_rational(Real(0.5) + Real("1e-10"), Real("1e-10") * 2, 10);
    REQUIRE(h);
    CHECK(*h == Rational(1, 2));
    CHECK(!detect_rational(sin(Real(1)), Real("1e-30"), 100));
    CHECK_THROWS_AS(detect_rational(Real(0.5), Real(0.01), 10), InputError);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> den(1, 500);
    std::uniform_real_distribution<double> u(-1, 1);
    const long T = 500;
    Real eps = scan_epsilon(T);
    for (int i = 0; i < 1000; ++i) {
        long q = den(rng);
        long p = std::uniform_int_distribution<long>(-T, T)(rng);
        Rational r(p, q);
        if (point_height(r, 0) > T) continue;
        auto got = detect_rational(to_real(r) + eps * Real(u(rng)) / 2, eps, T);
        REQUIRE(got);
        CHECK(*got == r);
        auto gd = detect_rational_d(to_double(to_real(r)) + 1e-12 * u(rng), 1e-9, T);
        REQUIRE(gd);
        CHECK(Rational(gd->first, gd->second) == r);
    }
}

TEST_CASE("serial and parallel prefilters agree") {
    DoubleFn fn(ex::exp(ex::mul(ex::constant("log2"), ex::var())));
    std::vector<double> xs;
    for (auto [p, q] : enumerate_rationals_small(60)) xs.push_back(double(p) / double(q));
    auto a = graph_prefilter(fn, xs, 60, Parallelism::Serial);
    auto b = graph_prefilter(fn, xs, 60, Parallelism::OpenMP);
    CHECK(a == b);
    CHECK(a.size() >= 11);
}

TEST_CASE("exponential graph has exactly the integer points") {
    ScanResult r = scan_points(catalog_curve("exp2_graph"), 1024);
    CHECK(r.certified == 21);
    CHECK(r.candidates == 0);
    for (int k = -10; k <= 10; ++k)
        CHECK(has(r, Rational(k), k >= 0 ? Rational(1 << k) : Rational(1, 1 << -k)));
}

TEST_CASE("sine graph lattice points") {
    ScanResult r = scan_graph_points(catalog_curve("sin_pi_graph"), 20, std::make_pair(Real(-20), Real(20)));
    for (int k = -20; k <= 20; ++k) CHECK(has(r, Rational(k), 0));
    for (int k = -10; k <= 9; ++k) CHECK(has(r, Rational(2 * k + 1, 2), Rational(k % 2 == 0 ? 1 : -1)));
    CHECK(r.certified >= 41);
    CHECK(r.candidates == 0);
}

TEST_CASE("sin of log graph has only the origin of the logarithm") {
    ScanResult r = scan_points(catalog_curve("sinlog_1"), 50);
    CHECK(r.certified == 1);
    CHECK(has(r, 1, 0));
    CHECK(r.candidates == 0);
}

TEST_CASE("finer parametric scans see at least as much") {
    CurveSpec c = catalog_curve("spiral_1_1");
    ScanResult coarse = scan_parametric_points(c, 10, 200);
    ScanResult fine = scan_parametric_points(c, 10, 2000);
    for (const auto& p : coarse.points) CHECK(has(fine, p.x, p.y, p.status));
    CHECK(has(fine, 0, 1));
}

TEST_CASE("parameters stay below the height control function") {
    for (const char* name : {"exp2_slow", "spiral_1_1", "gamma", "sinlog_pi_log2"}) {
        CAPTURE(name);
        CurveSpec c = catalog_curve(name);
        ScanResult r = scan_points(c, 200);
        Real phiT = (*c.phi)(Real(200) * to_real(height_factor(c)));
        for (const auto& p : r.points) {
            REQUIRE(p.parameter);
            CHECK(*p.parameter <= phiT);
            CHECK(p.height <= 200);
        }
    }
}

TEST_CASE("known families are found") {
    ScanResult s = scan_points(catalog_curve("sinlog_pi_log2"), 1024);
    CHECK(s.certified >= 11);
    ScanResult g = scan_points(catalog_curve("gamma"), 720);
    Integer fact = 1;
    for (int n = 1; n <= 6; ++n) {
        fact *= n;
        CHECK(has(g, Rational(n + 1), Rational(fact)));
    }
}

TEST_CASE("point csv") {
    ScanResult r = scan_points(catalog_curve("exp2_graph"), 4);
    std::ostringstream os;
    write_points_csv(os, r.points);
    std::string s = os.str();
    CHECK(s.rfind("x_num,x_den,y_num,y_den,height,parameter,status\n", 0) == 0);
    CHECK(s.find("-2,1,1,4,4,") != std::string::npos);
    CHECK(std::count(s.begin(), s.end(), '\n') == 1 + r.points.size());
}
