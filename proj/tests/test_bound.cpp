#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowdet/curves.hpp"

using namespace slowdet;

namespace {

SlowCertificate cert(double A, double B, double C) {
    SlowCertificate c;
    c.A = A;
    c.B = B;
    c.C = C;
    return c;
}

bool close(const Real& a, const Real& b, const Real& rel) { return abs(a - b) <= rel * abs(b); }

}  // namespace

TEST_CASE("degree data") {
    auto d1 = degree_data(1);
    CHECK(d1.mu == 3);
    CHECK(d1.rho == 3);
    CHECK(d1.nu == Rational(2));
    auto d2 = degree_data(2);
    CHECK(d2.mu == 6);
    CHECK(d2.rho == 15);
    CHECK(d2.nu == Rational(8, 5));
    auto d3 = degree_data(3);
    CHECK(d3.mu == 10);
    CHECK(d3.rho == 45);
    CHECK(d3.nu == Rational(4, 3));
    for (int d = 1; d <= 40; ++d) CHECK(degree_data(d).nu <= Rational(8, d));
}

TEST_CASE("determinant constant") {
    Real eps("1e-30");
    CHECK(close(det_constant(1, 1, 0), 54, eps));
    CHECK(close(det_constant(1, 2, 0), 432, eps));
    CHECK(close(det_constant(1, 1, 1), 1458, eps));
    CHECK(det_constant(1, 1, 0) >= 54);
}

TEST_CASE("length constant") {
    CHECK(close(length_constant(1, 1, 0), parse_real("0.2645668419946999124586176065453847100652"), Real("1e-30")));
    CHECK(close(length_constant(2, 1, 0), parse_real("0.1953186287612678953341301205072895419076"), Real("1e-30")));
    CHECK(length_constant(1, 1, 0) <= parse_real("0.2645668419946999124586176065453847100652"));
    for (int d = 1; d <= 5; ++d) {
        for (double A : {1.0, 2.5, 8.0}) {
            for (double B : {0.0, 1.0, 3.0}) {
                auto dd = degree_data(d);
                Real prod = pow(length_constant(d, A, B), Real(dd.rho)) * det_constant(d, A, B);
                CHECK(abs(prod - 1) < Real("1e-25"));
            }
        }
    }
}

TEST_CASE("interval length") {
    auto dd = degree_data(1);
    Real c1 = parse_real("0.2645668419946999124586176065453847100652");
    CHECK(close(interval_length(dd, cert(1, 0, 0), 1, 1), c1, Real("1e-30")));
    CHECK(close(interval_length(dd, cert(1, 0, 0), 10, 1), c1 / 100, Real("1e-30")));
    Real L1 = interval_length(dd, cert(1, 0, 0), 7, 3);
    Real L2 = interval_length(dd, cert(1, 0, 0), 7, 6);
    CHECK(close(L2, 2 * L1, Real("1e-30")));
}

TEST_CASE("start point") {
    CHECK(start_point(cert(1, 0, 0)) == 1);
    CHECK(close(start_point(cert(1, 0, 2)), exp(Real(2)), Real("1e-30")));
    SlowCertificate c = cert(1, 0, 2);
    c.decay = DecayData{};
    c.decay->E = 4;
    CHECK(close(start_point(c), exp(Real(0.5)), Real("1e-30")));
    CHECK(start_point(c) >= exp(Real(0.5)));
}

TEST_CASE("covering sequence") {
    auto xs = covering_sequence(cert(1, 0, 0), 1, 1, 2);
    REQUIRE(xs.size() == 4);
    CHECK(xs[0] == 1);
    CHECK(xs[2] < 2);
    CHECK(xs[3] >= 2);
    Real r = 1 + parse_real("0.2645668419946999124586176065453847100652");
    CHECK(close(xs[3], pow(r, 3), Real("1e-30")));

    auto one = covering_sequence(cert(1, 0, 0), 1, 1, 1);
    CHECK(one.size() == 1);

    // walker and closed form agree
    CoveringWalker w(cert(1, 0, 0), 2, 5);
    for (int i = 0; i < 50; ++i) w.next();
    CHECK(close(w.current(), CoveringWalker(cert(1, 0, 0), 2, 5).term(50), Real("1e-30")));
}

TEST_CASE("interval count bound") {
    CHECK(interval_count_bound(cert(1, 0, 0), 1, 1, exp(Real(1))) == 7);
    // dominates the actual step count on a grid of certificates and heights
    for (double A : {1.0, 2.0, 4.0}) {
        for (double C : {0.0, 1.0, 2.0}) {
            for (double T : {1.0, 2.0, 5.0}) {
                SlowCertificate c = cert(A, 1, C);
                Real phiT = start_point(c) * 50;
                auto xs = covering_sequence(c, 1, T, phiT);
                Integer bound = interval_count_bound(c, 1, T, phiT);
                CHECK(Integer(xs.size()) <= bound + 1);
                CHECK(interval_count_bound(c, 1, T, phiT * 2) >= bound);
            }
        }
    }
}

TEST_CASE("degree schedule") {
    CHECK(degree_schedule(1) == 1);
    CHECK(degree_schedule(round_up(exp(Real(3)))) == 3);
    CHECK(degree_schedule(Real(1e6)) == 13);
    Real T(1e6);
    auto dd = degree_data(degree_schedule(T));
    CHECK(pow(T, to_real(dd.nu)) <= exp(Real(16)));
}

TEST_CASE("spiral bound shape") {
    BoundReport r = global_bound(make_spiral(1, 1, 1, 1), 1000);
    CHECK(r.shape.log_T == 9);
    CHECK(r.shape.loglog_T == 0);
    CHECK(r.total > 0);
    CHECK(r.beta_T == 2 * (r.cert.B + r.cert.C));
    BoundReport r2 = global_bound(make_spiral(1, 1, 1, 2), 1000);
    CHECK(r2.shape.log_T == 13);
}

TEST_CASE("missing ingredients are reported") {
    SlowCertificate c = cert(1, 0, 0);
    CHECK_THROWS_AS(bound_from_parts(&c, nullptr, nullptr, 10), InputError);
}
