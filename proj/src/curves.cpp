#include "slowdet/curves.hpp"

#include "slowdet/specfun.hpp"

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <map>
#include <set>

namespace slowdet {

using nlohmann::ordered_json;

std::string mode_name(CurveMode m) {
    switch (m) {
        case CurveMode::Slow: return "slow";
        case CurveMode::SlowPlus: return "slow_plus";
        case CurveMode::Compact: return "compact";
        case CurveMode::Composite: return "composite";
    }
    return "slow";
}

CurveMode mode_from_name(const std::string& s) {
    if (s == "slow") return CurveMode::Slow;
    if (s == "slow_plus") return CurveMode::SlowPlus;
    if (s == "compact") return CurveMode::Compact;
    if (s == "composite") return CurveMode::Composite;
    throw InputError("unknown curve mode '" + s + "'");
}

namespace {

const std::map<RangeKind, std::string>& range_names() {
    static const std::map<RangeKind, std::string> names = {{RangeKind::Fixed, "fixed"},
                                                           {RangeKind::SymLog2T, "sym_log2_T"},
                                                           {RangeKind::SymT, "sym_T"},
                                                           {RangeKind::SpiralRadius, "spiral_radius"}};
    return names;
}

Expr lit(const Real& v) { return ex::constant(real_to_string(v)); }
Expr lit(const Rational& v) { return ex::constant(rational_to_string(v)); }

Expr apply_map(const CurveSpec& c, const CoordMap& m) {
    Expr src = m.source == 0 ? c.f : c.g;
    Expr e = m.scale == 1 ? src : ex::mul(lit(m.scale), src);
    return m.invert ? ex::recip(e) : e;
}

Rational unmap(const CoordMap& m, const Rational& disp) {
    if (m.invert) {
        if (disp == 0) throw DomainError("display coordinate 0 has no preimage under an inverted map");
        return Rational(1) / (m.scale * disp);
    }
    return disp / m.scale;
}

Real frequency_pi_log2() { return real_pi() / real_log2(); }

bool is_pi_over_log2(const Real& c) {
    Real ref = frequency_pi_log2();
    return abs(c - ref) <= ldexp(abs(ref), -static_cast<int>(precision_bits()) + 24);
}

// Descriptor strings accept the extra literal "pi/log2".
Real descriptor_real(const nlohmann::json& j, const char* key, const char* fallback) {
    if (!j.contains(key)) return parse_real(fallback);
    const auto& v = j[key];
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s == "pi/log2") return frequency_pi_log2();
    return parse_real(s);
}

std::string real_arg(const Real& v) {
    if (is_pi_over_log2(v)) return "pi/log2";
    return real_to_string(v);
}

Expr frequency_expr(const Real& c) {
    if (is_pi_over_log2(c)) return ex::mul(ex::constant("pi"), ex::recip(ex::constant("log2")));
    return lit(c);
}

SlowCertificate with_decay(SlowCertificate c, const Real& E, int coordinate, const std::string& u = "0",
                           LimitClass cls = LimitClass::Rational) {
    c.decay = DecayData{E, u, cls, coordinate};
    return c;
}

}  // namespace

Expr display_x(const CurveSpec& c) { return apply_map(c, c.map_x); }
Expr display_y(const CurveSpec& c) { return apply_map(c, c.map_y); }

std::pair<Rational, Rational> to_method(const CurveSpec& c, const Rational& X, const Rational& Y) {
    Rational sx = unmap(c.map_x, X), sy = unmap(c.map_y, Y);
    if (c.map_x.source == 0) return {sx, sy};
    return {sy, sx};
}

Integer height_factor(const CurveSpec& c) {
    auto h = [](const Rational& q) {
        Integer n = abs(numerator(q)), d = denominator(q);
        return n > d ? n : d;
    };
    Integer a = h(c.map_x.scale), b = h(c.map_y.scale);
    return a > b ? a : b;
}

std::pair<Real, Real> param_range(const CurveSpec& c, const Real& T) {
    if (c.mode != CurveMode::Compact) return {c.lo, real_inf()};
    switch (c.range) {
        case RangeKind::Fixed: return {c.lo, c.hi};
        case RangeKind::SymLog2T: {
            Real r = log(T) / real_log2() + c.range_margin;
            return {-r, r};
        }
        case RangeKind::SymT: return {-(T + c.range_margin), T + c.range_margin};
        case RangeKind::SpiralRadius:
            // a point of height <= T has |X|, |Y| <= T, so radius e^x <= sqrt(2) T
            return {c.lo, log(T) + real_log2() / 2 + c.range_margin};
    }
    return {c.lo, c.hi};
}

CurveSpec make_spiral(const Real& F, const Real& G, int ell, int q) {
    if (!(F > 0) || !(G > 0) || ell < 1 || q < 1) throw InputError("spiral needs F, G > 0 and ell, q >= 1");
    CurveSpec c;
    c.name = "spiral";
    c.family = "spiral";
    c.family_args = {{"F", real_to_string(F)}, {"G", real_to_string(G)}, {"ell", ell}, {"q", q}};
    c.mode = CurveMode::SlowPlus;
    Expr x = ex::var();
    c.f = ex::mul(ex::pow_real(x, real_to_string(-F)), ex::sin(ex::pow_int(ex::log(x), ell)));
    c.g = ex::mul(ex::pow_real(x, real_to_string(-G)), ex::cos(ex::pow_int(ex::log(x), q)));
    int m = std::max(ell, q);
    Real Emax = std::max(F, G);
    SlowCertificate cert;
    cert.A = 2 * (Emax + 1) * m;
    cert.B = m + 1;
    cert.C = m - 1;
    cert.D = 1;
    cert = with_decay(cert, Emax, F >= G ? 0 : 1);
    cert.a = start_point(cert);
    c.cert = cert;
    c.lo = cert.a;
    HcfParams hp;
    hp.F = F;
    hp.G = G;
    hp.floor = cert.a;
    c.phi = height_control(HcfCase::Spiral, hp);
    c.bezout = spiral_bezout(F, G, ell, q);
    c.declarations = {"transcendental (declared)", "coordinates have no common zero (declared)"};
    return c;
}

CurveSpec make_sinlog_graph(const Real& a_coef, const Real& freq, int ell, Outer outer) {
    if (a_coef == 0 || freq == 0 || ell < 1) throw InputError("sinlog graph needs a, c nonzero and ell >= 1");
    CurveSpec c;
    c.name = "sinlog_graph";
    c.family = "sinlog_graph";
    c.family_args = {{"a", real_arg(a_coef)}, {"c", real_arg(freq)}, {"ell", ell},
                     {"outer", outer == Outer::Sin ? "sin" : "cos"}};
    c.mode = CurveMode::SlowPlus;
    Integer K = floor_to_integer(abs(a_coef) + 1);
    Expr x = ex::var();
    Expr arg = ex::mul(frequency_expr(freq), ex::pow_int(ex::log(x), ell));
    Expr h = ex::mul(lit(a_coef), outer == Outer::Sin ? ex::sin(arg) : ex::cos(arg));
    c.f = ex::recip(x);
    c.g = ex::mul(lit(Rational(1, 1) / Rational(K)), h);
    c.map_x = {0, true, 1};
    c.map_y = {1, false, Rational(K)};
    c.graph_coord = 0;
    c.lo = 1;
    SlowCertificate cert = compose_logpow(std::max(Real(1), abs(freq)), ell);
    c.cert = with_decay(cert, Real(1), 0);
    HcfParams hp;
    hp.floor = cert.a;
    c.phi = height_control(HcfCase::GraphDefault, hp);
    BezoutFormula b = sinlog_bezout(ell);
    b.omega = abs(freq);
    c.bezout = b;
    c.declarations = {"transcendental (declared)"};
    return c;
}

CurveSpec make_elementary(const ElementaryParams& p) {
    if (!(p.F > 0) || !(p.G > 0)) throw InputError("elementary curve needs F, G > 0");
    if ((!p.f_identity && !p.f) || (!p.g_identity && !p.g) || !p.s || !p.sigma)
        throw InputError("elementary curve needs f, g (or identity flags), s and sigma");
    auto rational_literal = [](const std::string& s) {
        try {
            parse_rational(s);
            return true;
        } catch (const InputError&) {
            return false;
        }
    };
    bool u_rat = rational_literal(p.u), v_rat = rational_literal(p.v);
    if (p.u_class == LimitClass::Rational && !u_rat) throw InputError("u declared rational but is not a rational literal");
    if (p.v_class == LimitClass::Rational && !v_rat) throw InputError("v declared rational but is not a rational literal");

    CurveSpec c;
    c.name = "elementary";
    c.family = "elementary";
    c.mode = CurveMode::SlowPlus;
    Expr x = ex::var();
    auto coordinate = [&](const std::string& shift, const Real& E, bool identity, const Expr& outer, const Expr& inner) {
        Expr damp = ex::pow_real(x, real_to_string(-E));
        Expr body = identity ? inner : ex::compose(outer, inner);
        return ex::add(ex::constant(shift), ex::mul(damp, body));
    };
    c.f = coordinate(p.u, p.F, p.f_identity, p.f, p.s);
    c.g = coordinate(p.v, p.G, p.g_identity, p.g, p.sigma);

    auto power_cert = [](const Real& E) {
        SlowCertificate pc;
        pc.A = E + 1;
        pc.B = 0;
        pc.C = 0;
        pc.D = 1;
        pc.a = 1;
        return pc;
    };
    SlowCertificate cx = p.f_identity ? combine_product(power_cert(p.F), p.cert_s) : damp_power(p.F, p.alpha_f, p.cert_s);
    SlowCertificate cy = p.g_identity ? combine_product(power_cert(p.G), p.cert_sigma)
                                      : damp_power(p.G, p.alpha_g, p.cert_sigma);
    SlowCertificate cert;
    cert.A = std::max(cx.A, cy.A);
    cert.B = std::max(cx.B, cy.B);
    cert.C = std::max(cx.C, cy.C);
    cert.D = std::max(Real(1), std::max(cx.D, cy.D));
    cert.a = std::max({cx.a, cy.a, Real(1)});

    HcfParams hp;
    HcfCase hc;
    int coord;
    Real E;
    if (p.u_class == LimitClass::Rational && p.f_nonvanishing) {
        hp.u = p.u;
        hp.E = p.F;
        hc = HcfCase::RationalLimit;
        coord = 0;
        E = p.F;
    } else if (p.v_class == LimitClass::Rational && p.g_nonvanishing) {
        hp.u = p.v;
        hp.E = p.G;
        hc = HcfCase::RationalLimit;
        coord = 1;
        E = p.G;
    } else if (p.u_class == LimitClass::Rational && p.v_class == LimitClass::Rational) {
        Rational u = parse_rational(p.u), v = parse_rational(p.v);
        Integer den = std::max(Integer(denominator(u)), Integer(denominator(v)));
        hp.u = "1/" + den.str();
        hp.E = std::min(p.F, p.G);
        hc = HcfCase::RationalLimit;
        coord = p.F >= p.G ? 0 : 1;
        E = std::max(p.F, p.G);
        c.declarations.push_back("f o s and g o sigma have no common zero (declared)");
    } else if (p.u_class == LimitClass::NonU1Irrational) {
        hp.u_class = p.u_class;
        hp.K = p.K;
        hp.E = p.F;
        hc = HcfCase::NonU1Irrational;
        coord = 0;
        E = p.F;
    } else if (p.v_class == LimitClass::NonU1Irrational) {
        hp.u_class = p.v_class;
        hp.K = p.K;
        hp.E = p.G;
        hc = HcfCase::NonU1Irrational;
        coord = 1;
        E = p.G;
    } else {
        throw InputError(
            "no admissible limit class: need one of (1) u rational and f without zeros, (2) v rational and g "
            "without zeros, (3) u and v rational, (4) u irrational and not a U-number of degree 1, (5) the same "
            "for v");
    }
    cert = with_decay(cert, E, coord, coord == 0 ? p.u : p.v, coord == 0 ? p.u_class : p.v_class);
    cert.a = std::max(cert.a, start_point(cert));
    c.cert = cert;
    c.lo = cert.a;
    hp.floor = cert.a;
    c.phi = height_control(hc, hp);
    c.bezout = p.bezout ? *p.bezout : spiral_bezout(p.F, p.G, p.ell, p.q);
    c.transcendental = p.transcendental;
    c.declarations.push_back(p.transcendental ? "transcendental (declared)" : "transcendence not declared");
    if (!p.bezout) c.declarations.push_back("Bezout bound borrowed from the spiral formula (assumed)");
    c.family_args = {{"F", real_to_string(p.F)}, {"G", real_to_string(p.G)}, {"u", p.u}, {"v", p.v}};
    return c;
}

CurveSpec make_zeta(const Real& a_left, const Real& bezout_c) {
    if (!(a_left > 1)) throw InputError("zeta curve needs a > 1");
    CurveSpec c;
    c.name = "zeta";
    c.family = "zeta";
    Real lambda = Real(0.5) - 1 / (2 * a_left);
    Real zhalf = zeta(a_left / 2 + Real(0.5));
    Integer M = ceil_to_integer(zeta(a_left));
    c.family_args = {{"a", real_to_string(a_left)}, {"c", real_to_string(bezout_c)}};
    c.mode = CurveMode::SlowPlus;
    Expr x = ex::var();
    c.f = ex::recip(x);
    c.g = ex::mul(lit(Rational(1) / Rational(M)), ex::zeta(x));
    c.map_x = {0, true, 1};
    c.map_y = {1, false, Rational(M)};
    c.graph_coord = 0;
    c.lo = a_left;
    SlowCertificate cert;
    cert.A = round_up(zhalf / (lambda * real_e()));
    cert.B = 1;
    cert.C = 0;
    cert.D = 1;
    cert.a = a_left;
    c.cert = with_decay(cert, Real(1), 0);
    HcfParams hp;
    hp.zeta_a = a_left;
    hp.floor = a_left;
    c.phi = height_control(HcfCase::Zeta, hp);
    c.bezout = zeta_bezout(bezout_c);
    c.declarations = {"transcendental (declared)", "Bezout constant c is not explicit in the source bound"};
    return c;
}

GammaConstants gamma_constants() {
    GammaConstants gc;
    // log y / f(y) grows on [e, inf); confirm on a grid, then take the endpoint value
    double best = std::log(M_E) / gamma_inverse_d(M_E), best_y = M_E;
    for (int i = 1; i <= 400; ++i) {
        double y = M_E * std::exp(i * 0.05);
        double v = std::log(y) / gamma_inverse_d(y);
        if (v < best) {
            best = v;
            best_y = y;
        }
    }
    if (best_y == M_E) {
        gc.y_delta = real_e();
        gc.delta = round_down(1 / gamma_inverse(real_e()));
    } else {
        gc.y_delta = Real(best_y);
        gc.delta = round_down(Real(best) * (1 - Real(1e-12)));
    }
    auto r = boost::math::tools::brent_find_minima([](double x) { return std::lgamma(x) - x; }, 1.0, 10.0, 50);
    // polish the stationary point psi(x) = 1, then any value of Gamma(x) e^-x bounds the minimum from above
    Real x = r.first;
    for (int i = 0; i < 8; ++i) {
        Jet lg = lgamma_jet(x, 2);
        x -= (lg[1] - 1) / (2 * lg[2]);
    }
    gc.x_D = x;
    gc.D = round_down(exp(lgamma_jet(x, 0)[0] - x));
    return gc;
}

CurveSpec make_gamma(const Real& bezout_c) {
    GammaConstants gc = gamma_constants();
    CurveSpec c;
    c.name = "gamma";
    c.family = "gamma";
    c.family_args = {{"c", real_to_string(bezout_c)},
                     {"delta", real_to_string(gc.delta)},
                     {"D", real_to_string(gc.D)},
                     {"x_D", real_to_string(gc.x_D)},
                     {"branch", "increasing branch of Gamma on [2, inf), y >= 1"}};
    c.mode = CurveMode::SlowPlus;
    Expr y = ex::var();
    c.f = ex::recip(y);
    c.g = ex::recip(ex::gamma_inverse(y));
    // display point (x, Gamma(x)) = (1/g, 1/f)
    c.map_x = {1, true, 1};
    c.map_y = {0, true, 1};
    c.graph_coord = 1;
    c.lo = 1;
    SlowCertificate cert;
    Real e2 = real_e() * real_e();
    cert.A = round_up(4 / (gc.delta * e2));
    cert.B = 4;
    cert.C = 1;
    cert.D = 1;
    cert.a = real_e();
    c.cert = with_decay(cert, Real(1), 0);
    HcfParams hp;
    hp.floor = cert.a;
    c.phi = height_control(HcfCase::GraphDefault, hp);
    c.bezout = gamma_bezout(bezout_c);
    c.declarations = {"transcendental (declared)", "Bezout constant c is not explicit in the source bound",
                      "inverse taken on the increasing branch, slow estimates from y >= e"};
    return c;
}

CurveSpec make_test_curve(TestCurve kind, const Real& param) {
    Expr x = ex::var();
    CurveSpec c;
    switch (kind) {
        case TestCurve::UnboundedSpiral: {
            Real omega = param == 0 ? frequency_pi_log2() : param;
            if (!(omega > 0)) throw InputError("spiral frequency must be positive");
            c.name = "unbounded_spiral";
            c.family = "unbounded_spiral";
            c.family_args = {{"omega", real_arg(omega)}};
            c.mode = CurveMode::Composite;
            Expr w = frequency_expr(omega);

            CurveSpec inner;
            inner.name = "unbounded_spiral/contracting";
            inner.family = "unbounded_spiral_contracting";
            inner.family_args = c.family_args;
            inner.mode = CurveMode::SlowPlus;
            Expr angle = ex::mul(w, ex::log(x));
            inner.f = ex::mul(ex::recip(x), ex::cos(angle));
            inner.g = ex::neg(ex::mul(ex::recip(x), ex::sin(angle)));
            inner.lo = 1;
            SlowCertificate cert;
            cert.A = 4 * std::max(Real(1), omega);
            cert.B = 2;
            cert.C = 0;
            cert.D = 1;
            cert.a = 1;
            inner.cert = with_decay(cert, Real(1), 0);
            HcfParams hp;
            inner.phi = height_control(HcfCase::Spiral, hp);
            inner.bezout = spiral_bezout(Real(1), Real(1), 1, 1, omega);
            inner.declarations = {"transcendental (declared)"};

            CurveSpec outer;
            outer.name = "unbounded_spiral/expanding";
            outer.family = "unbounded_spiral_expanding";
            outer.family_args = c.family_args;
            outer.mode = CurveMode::Compact;
            Expr turn = ex::mul(w, x);
            outer.f = ex::mul(ex::exp(x), ex::cos(turn));
            outer.g = ex::mul(ex::exp(x), ex::sin(turn));
            outer.lo = 0;
            outer.range = RangeKind::SpiralRadius;
            // t = e^x turns this branch into a spiral with exponents -1
            outer.bezout = spiral_bezout(Real(1), Real(1), 1, 1, omega);
            outer.declarations = {"transcendental (declared)", "Bezout bound of the log-spiral applied after t = e^x"};
            c.branches = {inner, outer};
            return c;
        }
        case TestCurve::Exp2Graph:
            c.name = "exp2_graph";
            c.family = "exp2_graph";
            c.mode = CurveMode::Compact;
            c.f = x;
            c.g = ex::exp(ex::mul(ex::constant("log2"), x));
            c.graph_coord = 0;
            c.range = RangeKind::SymLog2T;
            c.range_margin = Real(0.25);
            c.bezout = exp2_bezout();
            c.declarations = {"transcendental (declared)"};
            return c;
        case TestCurve::Exp2Slow: {
            c.name = "exp2_slow";
            c.family = "exp2_slow";
            c.mode = CurveMode::SlowPlus;
            c.f = ex::recip(x);
            c.g = ex::exp(ex::neg(ex::mul(ex::constant("log2"), x)));
            c.map_x = {0, true, 1};
            c.graph_coord = 0;
            c.lo = 1;
            SlowCertificate cert;
            cert.A = 1;
            cert.B = 0;
            cert.C = 0;
            cert.D = 1;
            cert.a = 1;
            c.cert = with_decay(cert, Real(1), 0);
            c.phi = height_control(HcfCase::GraphDefault, HcfParams{});
            c.bezout = exp2_bezout();
            c.declarations = {"transcendental (declared)"};
            return c;
        }
        case TestCurve::SinPiGraph:
        case TestCurve::SinCGraph: {
            Real freq = kind == TestCurve::SinPiGraph ? real_pi() : param;
            if (freq == 0) throw InputError("sin(cx) needs c != 0");
            c.name = kind == TestCurve::SinPiGraph ? "sin_pi_graph" : "sin_c_graph";
            c.family = c.name;
            if (kind == TestCurve::SinCGraph) c.family_args = {{"c", real_to_string(freq)}};
            c.mode = CurveMode::Compact;
            c.f = x;
            c.g = ex::sin(ex::mul(kind == TestCurve::SinPiGraph ? ex::constant("pi") : lit(freq), x));
            c.graph_coord = 0;
            c.range = RangeKind::SymT;
            c.bezout = sinc_bezout(freq, Real(0));
            c.declarations = {"transcendental (declared)", "Bezout bound for sin(cx) is an exponential-sum zero count"};
            return c;
        }
    }
    throw InputError("unknown test curve");
}

std::vector<KnownPoint> known_points(const CurveSpec& c, long T) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    std::vector<KnownPoint> pts;
    auto height = [](const Rational& a, const Rational& b) {
        Integer h = abs(numerator(a));
        for (Integer v : {Integer(denominator(a)), Integer(abs(numerator(b))), Integer(denominator(b))})
            if (v > h) h = v;
        return h;
    };
    auto push = [&](Rational X, Rational Y, Real param) {
        if (height(X, Y) <= T) pts.push_back({X, Y, param});
    };
    const std::string& fam = c.family;
    if (fam == "unbounded_spiral") {
        std::set<std::pair<Rational, Rational>> seen;
        for (const auto& b : c.branches)
            for (auto& p : known_points(b, T))
                if (seen.insert({p.X, p.Y}).second) pts.push_back(p);
        return pts;
    }
    auto log2T = [&]() {
        long k = 0;
        while ((Integer(1) << (k + 1)) <= T) ++k;
        return k;
    };
    if (fam == "unbounded_spiral_contracting" || fam == "unbounded_spiral_expanding") {
        if (!is_pi_over_log2(descriptor_real(c.family_args, "omega", "1"))) return pts;
        long K = log2T();
        for (long k = 0; k <= K; ++k) {
            Integer pw = Integer(1) << k;
            Rational sgn = (k % 2) ? -1 : 1;
            if (fam == "unbounded_spiral_contracting")
                push(sgn / Rational(pw), 0, to_real(pw));
            else
                push(sgn * Rational(pw), 0, real_log2() * k);
        }
        return pts;
    }
    if (fam == "exp2_graph") {
        long K = log2T();
        for (long k = -K; k <= K; ++k) {
            Rational y = k >= 0 ? Rational(Integer(1) << k) : Rational(1) / Rational(Integer(1) << (-k));
            push(Rational(k), y, Real(k));
        }
        return pts;
    }
    if (fam == "exp2_slow") {
        long K = log2T();
        for (long k = 1; k <= K; ++k) push(Rational(k), Rational(1) / Rational(Integer(1) << k), Real(k));
        return pts;
    }
    if (fam == "sin_pi_graph") {
        // by Niven's theorem these are all rational values of sin at rational multiples of pi
        for (long k = -T; k <= T; ++k) push(Rational(k), 0, Real(k));
        for (long n = -T; n <= T; ++n) {
            if (n % 2 == 0) continue;
            long m = ((n % 4) + 4) % 4;
            push(Rational(n, 2), m == 1 ? 1 : -1, Real(n) / 2);
        }
        for (long n = -T; n <= T; ++n) {
            if (n % 2 == 0 || n % 3 == 0) continue;
            long m = ((n % 12) + 12) % 12;
            Rational y = (m == 1 || m == 5) ? Rational(1, 2) : Rational(-1, 2);
            push(Rational(n, 6), y, Real(n) / 6);
        }
        return pts;
    }
    if (fam == "sin_c_graph") {
        push(0, 0, Real(0));
        return pts;
    }
    if (fam == "sinlog_graph") {
        Real freq = descriptor_real(c.family_args, "c", "1");
        if (c.family_args.value("ell", 1) != 1 || !is_pi_over_log2(freq)) return pts;
        std::string outer = c.family_args.value("outer", std::string("sin"));
        Rational a;
        try {
            a = parse_rational(c.family_args.value("a", std::string("1")));
        } catch (const InputError&) {
            return pts;
        }
        for (long k = 0; (Integer(1) << k) <= T; ++k) {
            Integer pw = Integer(1) << k;
            Rational y = outer == "sin" ? Rational(0) : ((k % 2) ? -a : a);
            push(Rational(pw), y, to_real(pw));
        }
        return pts;
    }
    if (fam == "gamma") {
        Integer fact = 1;
        for (long n = 1;; ++n) {
            fact *= n;
            if (fact > T) break;
            push(Rational(n + 1), Rational(fact), to_real(fact));
        }
        return pts;
    }
    if (fam == "spiral") {
        if (c.lo <= 1) push(0, 1, Real(1));
        return pts;
    }
    return pts;
}

namespace {

Outer outer_from(const nlohmann::json& j) {
    std::string o = j.value("outer", std::string("sin"));
    if (o == "sin") return Outer::Sin;
    if (o == "cos") return Outer::Cos;
    throw InputError("outer must be sin or cos");
}

int int_arg(const nlohmann::json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw InputError(std::string("'") + key + "' must be an integer");
    return j[key].get<int>();
}

}  // namespace

CurveSpec make_from_descriptor(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family")) throw InputError("curve descriptor needs a 'family'");
    std::string fam = j["family"].get<std::string>();
    CurveSpec c;
    if (fam == "spiral") {
        c = make_spiral(descriptor_real(j, "F", "1"), descriptor_real(j, "G", "1"), int_arg(j, "ell", 1),
                        int_arg(j, "q", 1));
    } else if (fam == "sinlog_graph") {
        c = make_sinlog_graph(descriptor_real(j, "a", "1"), descriptor_real(j, "c", "1"), int_arg(j, "ell", 1),
                              outer_from(j));
    } else if (fam == "zeta") {
        c = make_zeta(descriptor_real(j, "a", "2"), descriptor_real(j, "c", "1"));
    } else if (fam == "gamma") {
        c = make_gamma(descriptor_real(j, "c", "1"));
    } else if (fam == "unbounded_spiral") {
        c = make_test_curve(TestCurve::UnboundedSpiral, descriptor_real(j, "omega", "pi/log2"));
    } else if (fam == "exp2_graph") {
        c = make_test_curve(TestCurve::Exp2Graph);
    } else if (fam == "exp2_slow") {
        c = make_test_curve(TestCurve::Exp2Slow);
    } else if (fam == "sin_pi_graph") {
        c = make_test_curve(TestCurve::SinPiGraph);
    } else if (fam == "sin_c_graph") {
        c = make_test_curve(TestCurve::SinCGraph, descriptor_real(j, "c", "1"));
    } else if (fam == "elementary") {
        ElementaryParams p;
        auto expr_or_identity = [&](const char* key, Expr& e, bool& identity) {
            if (!j.contains(key)) throw InputError(std::string("elementary descriptor needs '") + key + "'");
            if (j[key].is_string() && j[key].get<std::string>() == "identity") identity = true;
            else e = expr_from_json(j[key]);
        };
        expr_or_identity("f", p.f, p.f_identity);
        expr_or_identity("g", p.g, p.g_identity);
        if (!j.contains("s") || !j.contains("sigma")) throw InputError("elementary descriptor needs 's' and 'sigma'");
        p.s = expr_from_json(j["s"]);
        p.sigma = expr_from_json(j["sigma"]);
        if (!j.contains("cert_s") || !j.contains("cert_sigma"))
            throw InputError("elementary descriptor needs 'cert_s' and 'cert_sigma'");
        p.cert_s = cert_from_json(j["cert_s"]);
        p.cert_sigma = cert_from_json(j["cert_sigma"]);
        p.alpha_f = descriptor_real(j, "alpha_f", "1");
        p.alpha_g = descriptor_real(j, "alpha_g", "1");
        p.ell = int_arg(j, "ell", 1);
        p.q = int_arg(j, "q", 1);
        p.F = descriptor_real(j, "F", "1");
        p.G = descriptor_real(j, "G", "1");
        p.u = j.value("u", std::string("0"));
        p.v = j.value("v", std::string("0"));
        p.u_class = limit_class_from_name(j.value("u_class", std::string("rational")));
        p.v_class = limit_class_from_name(j.value("v_class", std::string("rational")));
        p.f_nonvanishing = j.value("f_nonvanishing", false);
        p.g_nonvanishing = j.value("g_nonvanishing", false);
        if (j.contains("K")) p.K = descriptor_real(j, "K", "1");
        p.transcendental = j.value("transcendental", true);
        if (j.contains("bezout")) p.bezout = bezout_from_json(j["bezout"]);
        c = make_elementary(p);
    } else {
        throw InputError("unknown curve family '" + fam + "'");
    }
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    return c;
}

std::vector<std::string> catalog_names() {
    return {"spiral_1_1",    "spiral_1_2",  "sinlog_1",   "sinlog_pi_log2", "zeta",
            "gamma",         "exp2_graph",  "exp2_slow",  "sin_pi_graph",   "unbounded_spiral"};
}

CurveSpec catalog_curve(const std::string& name) {
    CurveSpec c;
    if (name == "spiral_1_1") c = make_spiral(Real(1), Real(1), 1, 1);
    else if (name == "spiral_1_2") c = make_spiral(Real(1), Real(1), 1, 2);
    else if (name == "sinlog_1") c = make_sinlog_graph(Real(1), Real(1), 1);
    else if (name == "sinlog_pi_log2") c = make_sinlog_graph(Real(1), frequency_pi_log2(), 1, Outer::Cos);
    else if (name == "zeta") c = make_zeta(Real(2));
    else if (name == "gamma") c = make_gamma();
    else if (name == "exp2_graph") c = make_test_curve(TestCurve::Exp2Graph);
    else if (name == "exp2_slow") c = make_test_curve(TestCurve::Exp2Slow);
    else if (name == "sin_pi_graph") c = make_test_curve(TestCurve::SinPiGraph);
    else if (name == "unbounded_spiral") c = make_test_curve(TestCurve::UnboundedSpiral);
    else throw InputError("unknown catalog curve '" + name + "'");
    c.name = name;
    return c;
}

namespace {

ordered_json map_to_json(const CoordMap& m) {
    return {{"source", m.source}, {"invert", m.invert}, {"scale", rational_to_string(m.scale)}};
}

CoordMap map_from_json(const nlohmann::json& j) {
    CoordMap m;
    m.source = j.value("source", 0);
    if (m.source != 0 && m.source != 1) throw InputError("coordinate map source must be 0 or 1");
    m.invert = j.value("invert", false);
    m.scale = parse_rational(j.value("scale", std::string("1")));
    if (m.scale == 0) throw InputError("coordinate map scale must be nonzero");
    return m;
}

}  // namespace

ordered_json curve_to_json(const CurveSpec& c) {
    ordered_json j;
    j["schema"] = "slowdet-curve/1";
    j["name"] = c.name;
    j["family"] = c.family;
    j["family_args"] = c.family_args;
    j["mode"] = mode_name(c.mode);
    if (c.mode != CurveMode::Composite) {
        j["graph_coord"] = c.graph_coord;
        j["f"] = expr_to_json(c.f);
        j["g"] = expr_to_json(c.g);
        j["map_x"] = map_to_json(c.map_x);
        j["map_y"] = map_to_json(c.map_y);
        j["lo"] = real_to_string(c.lo);
        j["hi"] = real_to_string(c.hi);
        j["range"] = range_names().at(c.range);
        j["range_margin"] = real_to_string(c.range_margin);
        if (c.cert) j["cert"] = cert_to_json(*c.cert);
        if (c.phi) j["phi"] = hcf_to_json(*c.phi);
        if (c.bezout) j["bezout"] = bezout_to_json(*c.bezout);
    }
    j["transcendental"] = c.transcendental;
    j["declarations"] = c.declarations;
    if (!c.branches.empty()) {
        auto arr = ordered_json::array();
        for (const auto& b : c.branches) arr.push_back(curve_to_json(b));
        j["branches"] = arr;
    }
    return j;
}

CurveSpec curve_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("curve spec must be a JSON object");
    bool full = j.contains("mode") && (j.contains("f") || j.contains("branches"));
    if (!full) return make_from_descriptor(j);
    CurveSpec c;
    c.name = j.value("name", std::string("custom"));
    c.family = j.value("family", std::string("custom"));
    if (j.contains("family_args")) c.family_args = j["family_args"];
    c.mode = mode_from_name(j["mode"].get<std::string>());
    c.transcendental = j.value("transcendental", true);
    if (j.contains("declarations")) c.declarations = j["declarations"].get<std::vector<std::string>>();
    if (c.mode == CurveMode::Composite) {
        if (!j.contains("branches") || !j["branches"].is_array() || j["branches"].empty())
            throw InputError("composite curve needs branches");
        for (const auto& b : j["branches"]) c.branches.push_back(curve_from_json(b));
        return c;
    }
    if (!j.contains("f") || !j.contains("g")) throw InputError("curve spec needs 'f' and 'g'");
    c.graph_coord = j.value("graph_coord", -1);
    c.f = expr_from_json(j["f"]);
    c.g = expr_from_json(j["g"]);
    if (j.contains("map_x")) c.map_x = map_from_json(j["map_x"]);
    if (j.contains("map_y")) c.map_y = map_from_json(j["map_y"]);
    if (c.map_x.source == c.map_y.source) throw InputError("display coordinates must use distinct sources");
    c.lo = parse_real(j.value("lo", std::string("1")));
    c.hi = parse_real(j.value("hi", std::string("0")));
    std::string range = j.value("range", std::string("fixed"));
    bool found = false;
    for (const auto& [k, v] : range_names())
        if (v == range) {
            c.range = k;
            found = true;
        }
    if (!found) throw InputError("unknown range kind '" + range + "'");
    c.range_margin = parse_real(j.value("range_margin", std::string("0")));
    if (j.contains("cert")) c.cert = cert_from_json(j["cert"]);
    if (j.contains("phi")) c.phi = hcf_from_json(j["phi"]);
    if (j.contains("bezout")) c.bezout = bezout_from_json(j["bezout"]);
    if ((c.mode == CurveMode::Slow || c.mode == CurveMode::SlowPlus) && !c.cert)
        throw InputError("slow curve spec needs a certificate");
    if (c.mode == CurveMode::SlowPlus && c.cert && !c.cert->decay)
        throw InputError("slow_plus curve spec needs decay data in its certificate");
    return c;
}

CurveVerification verify_curve(const CurveSpec& c, int p_max, int grid_points, const Real& grid_span) {
    CurveVerification v;
    if (c.mode == CurveMode::Composite) {
        bool any = false;
        for (const auto& b : c.branches) {
            auto r = verify_curve(b, p_max, grid_points, grid_span);
            if (r.status == "not applicable") continue;
            any = true;
            v.ok = v.ok && r.ok;
            v.reports.insert(v.reports.end(), r.reports.begin(), r.reports.end());
        }
        v.status = !any ? "not applicable" : (v.ok ? "pass" : "fail");
        return v;
    }
    if (c.mode == CurveMode::Compact || !c.cert) {
        v.status = "not applicable";
        return v;
    }
    auto xs = log_grid(c.cert->a, c.cert->a * grid_span, grid_points);
    v.reports.push_back(verify_certificate(c.f, *c.cert, p_max, xs));
    v.reports.push_back(verify_certificate(c.g, *c.cert, p_max, xs));
    if (c.cert->decay) {
        const Expr& dec = c.cert->decay->coordinate == 0 ? c.f : c.g;
        v.reports.push_back(verify_certificate(dec, *c.cert, p_max, xs, true));
    }
    for (const auto& r : v.reports) v.ok = v.ok && r.ok;
    v.status = v.ok ? "pass" : "fail";
    return v;
}

BoundReport global_bound(const CurveSpec& c, const Real& T) {
    if (c.mode == CurveMode::Compact || c.mode == CurveMode::Composite)
        throw InputError("the theorem bound applies to slow curves only");
    if (!c.transcendental) throw InputError("curve is not declared transcendental");
    // method heights are at most fac times display heights
    Real fac = to_real(height_factor(c));
    std::optional<HeightControl> phi = c.phi;
    if (phi) phi->scale *= pow(fac, phi->k);
    BoundReport r = bound_from_parts(c.cert ? &*c.cert : nullptr, phi ? &*phi : nullptr,
                                     c.bezout ? &*c.bezout : nullptr, T * fac);
    r.T = T;
    return r;
}

}  // namespace slowdet
