#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slowdet/expr.hpp"
#include "slowdet/specfun.hpp"

using namespace slowdet;

TEST_CASE("square and reciprocal of the identity jet") {
    Jet x = Jet::variable(Real(2), 3);
    Jet sq = x * x;
    CHECK(sq[0] == 4);
    CHECK(sq[1] == 4);
    CHECK(sq[2] == 1);
    CHECK(sq[3] == 0);
    Jet r = jet_recip(x);
    CHECK(r[0] == Real(0.5));
    CHECK(r[1] == Real(-0.25));
    CHECK(r[2] == Real(0.125));
    CHECK(r[3] == Real(-0.0625));
}

TEST_CASE("zeta derivative at 3") {
    auto f = ex::zeta(ex::var());
    Real d = derivative_coefficient(f, Real(3), 1);
    CHECK(abs(d - parse_real("-0.198126242885636853330681821503")) < Real(1e-30));
}

TEST_CASE("log and sine jets") {
    Real e = exp(Real(1));
    Jet l = jet_log(Jet::variable(e, 2));
    CHECK(abs(l[0] - 1) < Real("1e-35"));
    CHECK(abs(l[1] - 1 / e) < Real("1e-35"));
    CHECK(abs(l[2] + 1 / (2 * e * e)) < Real("1e-35"));
    Jet s = jet_sin(Jet::variable(Real(0), 5));
    CHECK(s[0] == 0);
    CHECK(abs(s[1] - 1) < Real("1e-35"));
    CHECK(abs(s[2]) < Real("1e-35"));
    CHECK(abs(s[3] + Real(1) / 6) < Real("1e-35"));
    CHECK(abs(s[5] - Real(1) / 120) < Real("1e-35"));
}

TEST_CASE("sin of log at e") {
    Jet j = eval_jet(ex::sin(ex::log(ex::var())), exp(Real(1)), 2);
    CHECK(abs(j[0] - sin(Real(1))) < Real("1e-35"));
    CHECK(abs(j[1] - parse_real("0.1987661103464129406288031913435846982928")) < Real("1e-35"));
    CHECK(abs(j[2] - parse_real("-0.09350133983121386079730516440347803539317")) < Real("1e-35"));
    CHECK(abs(derivative_coefficient(ex::sin(ex::log(ex::var())), exp(Real(1)), 1) - cos(Real(1)) / exp(Real(1))) <
          Real("1e-35"));
}

TEST_CASE("sin of cubed log at e") {
    const char* expected[] = {"0.8414709848078965066525023216302989996225643", "0.5962983310392388218864095740307540948783802",
                              "-0.402780264892566952979798088570366406764524", "-0.3364750536545642938919036384680514163405754",
                              "0.01906352610727171816624872680688127499738972", "0.04919264645537061835210651038686999656274722",
                              "0.00631009527155792460028316198205184125740858"};
    auto lg = ex::log(ex::var());
    Jet j = eval_jet(ex::sin(ex::mul({lg, lg, lg})), exp(Real(1)), 6);
    for (int k = 0; k <= 6; ++k) CHECK(abs(j[k] - parse_real(expected[k])) < Real("1e-33"));
}

TEST_CASE("product of sine and log at 256 bits") {
    PrecisionScope scope(256);
    const char* expected[] = {"0.1550361750315128148828758245960147977761036", "-1.040577919767848779652745874899325222224666",
                              "-0.4153555868303419610931146662533228485663287", "0.2144914578652966087188665242588479521238155",
                              "0.05272173882657591722076173203934796371069279"};
    Jet x = Jet::variable(Real(3), 4);
    Jet p = jet_mul(jet_sin(x), jet_log(x));
    for (int k = 0; k <= 4; ++k) CHECK(abs(p[k] - parse_real(expected[k])) < Real("1e-20"));
}

TEST_CASE("composition laws") {
    Jet x = Jet::variable(Real(1), 5);
    Jet inner = jet_exp(jet_sin(x));
    Jet id = Jet::variable(inner[0], 5);
    Jet c = jet_compose(id, inner);
    for (int k = 0; k <= 5; ++k) CHECK(abs(c[k] - inner[k]) < Real("1e-35"));

    // (f o g) o h = f o (g o h) with h = x^2, g = sin, f = log
    Jet h = x * x;
    Jet g_at_h = jet_sin(Jet::variable(h[0], 5));
    Jet f_at_gh = jet_log(Jet::variable(sin(h[0]), 5));
    Jet left = jet_compose(jet_compose(f_at_gh, g_at_h), h);
    Jet right = jet_compose(f_at_gh, jet_compose(g_at_h, h));
    for (int k = 0; k <= 5; ++k) CHECK(abs(left[k] - right[k]) < Real("1e-25"));
}

TEST_CASE("reciprocal derivative and special values") {
    CHECK(abs(derivative_coefficient(ex::recip(ex::var()), Real(2), 3) + Real(1) / 16) < Real("1e-35"));
    CHECK(abs(zeta(Real(1.5)) - parse_real("2.612375348685488343348567567924071630571")) < Real("1e-33"));
    CHECK(abs(zeta(Real(2)) - parse_real("1.644934066848226436472415166646025189219")) < Real("1e-33"));
    CHECK(abs(gamma_inverse(exp(Real(1))) - parse_real("3.312440882539160370276098752380960259812")) < Real("1e-30"));
}

TEST_CASE("double evaluator agrees with the multiprecision one") {
    auto f = ex::add(ex::sin(ex::log(ex::var())), ex::mul(ex::constant("pi"), ex::recip(ex::var())));
    DoubleFn fn(f);
    for (double x : {1.5, 3.0, 70.0, 1e5}) CHECK(std::abs(fn(x) - to_double(eval_real(f, Real(x)))) < 1e-13);
}

TEST_CASE("decimal strings read back exactly") {
    for (Real x : {Real(13), Real(-4096), real_pi(), Real(1) / 3, Real("1e-40"), exp(Real(50))})
        CHECK(parse_real(real_to_string(x)) == x);
    CHECK(real_to_string(Real(13)) == "13");
    CHECK(real_to_string(Real(0.25)) == "2.5e-1");
    CHECK(rational_to_string(parse_rational("-6/4")) == "-3/2");
}
