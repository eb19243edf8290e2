#include "slowdet/bezout.hpp"

#include <cmath>
#include <map>

namespace slowdet {

namespace {
const std::map<BezoutId, std::string>& id_names() {
    static const std::map<BezoutId, std::string> names = {
        {BezoutId::Spiral, "spiral"}, {BezoutId::SinlogGraph, "sinlog_graph"}, {BezoutId::Zeta, "zeta"},
        {BezoutId::Gamma, "gamma"},   {BezoutId::Exp2, "exp2"},                {BezoutId::SinC, "sin_c"},
        {BezoutId::Custom, "custom"}};
    return names;
}

Real floor_term(const Real& freq, const Real& x) {
    Real lx = x > 1 ? Real(log(x)) : Real(0);
    return floor(freq * lx / real_pi()) + 1;
}
}  // namespace

std::string bezout_id_name(BezoutId id) { return id_names().at(id); }

BezoutId bezout_id_from_name(const std::string& s) {
    for (const auto& [k, v] : id_names())
        if (v == s) return k;
    throw InputError("unknown Bezout formula '" + s + "'");
}

Real BezoutFormula::operator()(const Real& x, int d) const {
    if (d < 1) throw InputError("Bezout formula needs d >= 1");
    Real dd(d);
    switch (id) {
        case BezoutId::Spiral: {
            // a frequency omega < 1 is absorbed by rescaling log x, which inflates F and G
            Real s = std::max(Real(1), 1 / omega);
            Real FG = (F + G) * s;
            Real inner = dd * FG + ell + q + 2;
            return 4 * dd * FG * ell * q * inner * inner * floor_term(omega, x);
        }
        case BezoutId::SinlogGraph: {
            Real inner = dd + ell + 2;
            return 4 * dd * ell * inner * inner * floor_term(std::max(Real(1), omega), x);
        }
        case BezoutId::Zeta: return c * (dd + x * log_plus(x)) * dd;
        case BezoutId::Gamma: return c * dd * log_plus(x) * log_plus(log_plus(x));
        case BezoutId::Exp2: return (dd + 1) * (dd + 1) - 1;
        case BezoutId::SinC: return dd * abs(c) * span / real_pi() + 3 * (2 * dd + 1) * (dd + 1);
        case BezoutId::Custom: return k * pow(log_plus(x), Real(ea)) * pow(dd, Real(eb));
    }
    return 0;
}

std::pair<int, int> BezoutFormula::shape(std::pair<int, int> s) const {
    switch (id) {
        case BezoutId::Spiral:
        case BezoutId::SinlogGraph: return {3 + s.first, s.second};
        case BezoutId::Zeta:
            if (s != std::pair{0, 1}) throw InputError("zeta Bezout formula needs a logarithmic height control");
            return {2, 1};
        case BezoutId::Gamma: return {1 + s.first, s.second + 1};
        case BezoutId::Exp2: return {2, 0};
        case BezoutId::SinC: throw InputError("sin(cx) Bezout formula is compact-only");
        case BezoutId::Custom: return {eb + ea * s.first, ea * s.second};
    }
    return {0, 0};
}

bool operator==(const BezoutFormula& x, const BezoutFormula& y) {
    return x.id == y.id && x.F == y.F && x.G == y.G && x.ell == y.ell && x.q == y.q && x.omega == y.omega &&
           x.c == y.c && x.span == y.span && x.k == y.k && x.ea == y.ea && x.eb == y.eb;
}

BezoutFormula spiral_bezout(const Real& F, const Real& G, int ell, int q, const Real& omega) {
    if (!(F > 0) || !(G > 0) || ell < 1 || q < 1 || !(omega > 0)) throw InputError("bad spiral Bezout parameters");
    BezoutFormula b;
    b.id = BezoutId::Spiral;
    b.F = F;
    b.G = G;
    b.ell = ell;
    b.q = q;
    b.omega = omega;
    return b;
}

BezoutFormula sinlog_bezout(int ell) {
    if (ell < 1) throw InputError("bad sinlog Bezout parameter");
    BezoutFormula b;
    b.id = BezoutId::SinlogGraph;
    b.ell = ell;
    return b;
}

BezoutFormula zeta_bezout(const Real& c) {
    if (!(c > 0)) throw InputError("zeta Bezout constant must be positive");
    BezoutFormula b;
    b.id = BezoutId::Zeta;
    b.c = c;
    return b;
}

BezoutFormula gamma_bezout(const Real& c) {
    if (!(c > 0)) throw InputError("gamma Bezout constant must be positive");
    BezoutFormula b;
    b.id = BezoutId::Gamma;
    b.c = c;
    return b;
}

BezoutFormula exp2_bezout() {
    BezoutFormula b;
    b.id = BezoutId::Exp2;
    return b;
}

BezoutFormula sinc_bezout(const Real& c, const Real& span) {
    BezoutFormula b;
    b.id = BezoutId::SinC;
    b.c = c;
    b.span = span;
    return b;
}

Real zeta_bezout_value(const Real& c, const Real& T, const Real& phiT, int d) {
    (void)d;
    if (!(c > 0)) throw InputError("zeta Bezout constant must be positive");
    Real lT = log(T);
    return c * (lT + phiT * log(phiT)) * lT;
}

nlohmann::ordered_json bezout_to_json(const BezoutFormula& b) {
    nlohmann::ordered_json j;
    j["id"] = bezout_id_name(b.id);
    j["F"] = real_to_string(b.F);
    j["G"] = real_to_string(b.G);
    j["ell"] = b.ell;
    j["q"] = b.q;
    j["omega"] = real_to_string(b.omega);
    j["c"] = real_to_string(b.c);
    j["span"] = real_to_string(b.span);
    j["k"] = real_to_string(b.k);
    j["ea"] = b.ea;
    j["eb"] = b.eb;
    return j;
}

BezoutFormula bezout_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("id")) throw InputError("Bezout formula needs an 'id'");
    BezoutFormula b;
    b.id = bezout_id_from_name(j["id"].get<std::string>());
    auto rf = [&](const char* key, Real& out) {
        if (!j.contains(key)) return;
        const auto& v = j[key];
        out = v.is_string() ? parse_real(v.get<std::string>()) : parse_real(v.dump());
    };
    rf("F", b.F);
    rf("G", b.G);
    rf("omega", b.omega);
    rf("c", b.c);
    rf("span", b.span);
    rf("k", b.k);
    b.ell = j.value("ell", 1);
    b.q = j.value("q", 1);
    b.ea = j.value("ea", 1);
    b.eb = j.value("eb", 3);
    if (b.id == BezoutId::Zeta && !(b.c > 0)) throw InputError("zeta Bezout formula needs c > 0");
    return b;
}

namespace {
long count_sign_changes(const Poly2& P, const Expr& X, const Expr& Y, double lo, double hi, int n) {
    bool logspace = lo > 0;
    double a = logspace ? std::log(lo) : lo, b = logspace ? std::log(hi) : hi;
    long count = 0;
    int last_sign = 0;
    for (int i = 0; i < n; ++i) {
        double t = a + (b - a) * i / (n - 1);
        if (logspace) t = std::exp(t);
        double x = eval_double(X, t), y = eval_double(Y, t);
        double v = P.eval(x, y);
        if (!std::isfinite(v)) throw DomainError("non-finite value in zero count");
        // values below the rounding level carry no sign information
        double scale = 0;
        for (const auto& c : P.coeffs) scale += std::fabs(c.convert_to<double>());
        scale *= std::pow(std::max({1.0, std::fabs(x), std::fabs(y)}), P.d);
        if (std::fabs(v) <= 1e-12 * scale) continue;
        int s = v > 0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++count;
        last_sign = s;
    }
    return count;
}
}  // namespace

long empirical_zero_count(const Poly2& P, const Expr& X, const Expr& Y, double lo, double hi, int resolution) {
    if (P.is_zero()) throw InputError("zero polynomial has no finite zero count");
    if (!(hi > lo) || resolution < 2) throw InputError("bad zero-count interval");
    return std::max(count_sign_changes(P, X, Y, lo, hi, resolution),
                    count_sign_changes(P, X, Y, lo, hi, 2 * resolution));
}

}  // namespace slowdet
