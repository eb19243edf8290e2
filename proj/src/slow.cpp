#include "slowdet/slow.hpp"

#include "slowdet/specfun.hpp"

namespace slowdet {

std::string limit_class_name(LimitClass c) {
    switch (c) {
        case LimitClass::Rational: return "rational";
        case LimitClass::NonU1Irrational: return "non-U1-irrational";
        case LimitClass::Unknown: return "unknown";
    }
    return "unknown";
}

LimitClass limit_class_from_name(const std::string& s) {
    if (s == "rational") return LimitClass::Rational;
    if (s == "non-U1-irrational") return LimitClass::NonU1Irrational;
    if (s == "unknown") return LimitClass::Unknown;
    throw InputError("unknown limit class '" + s + "'");
}

bool operator==(const SlowCertificate& x, const SlowCertificate& y) {
    if (x.A != y.A || x.B != y.B || x.C != y.C || x.D != y.D || x.a != y.a) return false;
    if (x.decay.has_value() != y.decay.has_value()) return false;
    if (!x.decay) return true;
    const auto &d1 = *x.decay, &d2 = *y.decay;
    return d1.E == d2.E && d1.u == d2.u && d1.u_class == d2.u_class && d1.coordinate == d2.coordinate;
}

Real phi_p(const SlowCertificate& cert, int p, const Real& x) {
    if (p < 0) throw InputError("negative derivative order");
    if (x < cert.a) throw DomainError("phi_p evaluated below the left endpoint a");
    if (p == 0) return cert.D;
    Real base = cert.A * pow(Real(p), cert.B) / x;
    if (cert.C != 0) base *= pow(log(x), cert.C);
    return round_up(cert.D * pow(base, Real(p)));
}

VerificationReport verify_certificate(const Expr& f, const SlowCertificate& cert, int p_max,
                                      const std::vector<Real>& xs, bool use_decay) {
    if (p_max < 1) throw InputError("p_max must be at least 1");
    if (use_decay && !cert.decay) throw InputError("certificate has no decay data");
    VerificationReport rep;
    for (const auto& x : xs) {
        if (x < cert.a) throw InputError("sample point below the certificate's left endpoint");
        Jet j;
        try {
            j = eval_jet(f, x, p_max);
        } catch (const DomainError& e) {
            rep.errors.push_back("x=" + real_to_string(x) + ": " + e.what());
            rep.ok = false;
            continue;
        }
        Real weight = use_decay ? pow(x, -cert.decay->E) : Real(1);
        for (int p = 0; p <= p_max; ++p) {
            Real lhs = abs(j[p]);
            if (p == 0 && use_decay) lhs = abs(j[0] - parse_real(cert.decay->u));
            Real rhs = weight * phi_p(cert, p, x);
            ++rep.checks;
            Real ratio = rhs > 0 ? Real(lhs / rhs) : (lhs > 0 ? real_inf() : Real(0));
            if (ratio > rep.worst_ratio) {
                rep.worst_ratio = ratio;
                rep.worst_p = p;
                rep.worst_x = x;
            }
            if (lhs > rhs && !rep.first_violation) {
                rep.first_violation = Violation{p, x, lhs, rhs};
                rep.ok = false;
            }
        }
    }
    return rep;
}

std::vector<Real> log_grid(const Real& lo, const Real& hi, int n) {
    if (!(lo > 0) || hi < lo || n < 1) throw InputError("bad log grid");
    std::vector<Real> xs;
    if (n == 1) return {lo};
    Real step = (log(hi) - log(lo)) / (n - 1);
    for (int i = 0; i < n; ++i) xs.push_back(i == n - 1 ? hi : Real(lo * exp(step * i)));
    return xs;
}

SlowCertificate combine_sum(const SlowCertificate& c1, const SlowCertificate& c2) {
    // a zero function (D = 0) imposes nothing
    if (c1.D == 0) return c2;
    if (c2.D == 0) return c1;
    SlowCertificate r;
    r.A = std::max(c1.A, c2.A);
    r.B = std::max(c1.B, c2.B);
    r.C = std::max(c1.C, c2.C);
    r.D = c1.D + c2.D;
    r.a = std::max(c1.a, c2.a);
    return r;
}

SlowCertificate combine_product(const SlowCertificate& c1, const SlowCertificate& c2) {
    SlowCertificate r;
    r.A = 2 * std::max(c1.A, c2.A);
    r.B = std::max(c1.B, c2.B);
    r.C = std::max(c1.C, c2.C);
    r.D = c1.D * c2.D;
    r.a = std::max(c1.a, c2.a);
    return r;
}

SlowCertificate compose_bounded(const Real& alpha, const SlowCertificate& c) {
    if (alpha < 1) throw InputError("derivative bound alpha must be >= 1");
    SlowCertificate r = c;
    r.A = c.A * alpha;
    r.B = c.B + 1;
    r.decay.reset();
    return r;
}

SlowCertificate compose_logpow(const Real& alpha, int ell) {
    if (alpha < 1) throw InputError("derivative bound alpha must be >= 1");
    if (ell < 1) throw InputError("log power must be positive");
    SlowCertificate r;
    r.A = alpha * pow(Real(2), Real(ell));
    r.B = ell + 1;
    r.C = ell - 1;
    r.D = 1;
    r.a = real_e();
    return r;
}

Real logpow_coeff_bound(int ell, int p, const Real& x) {
    if (ell < 1 || p < 1) throw InputError("logpow_coeff_bound needs ell, p >= 1");
    if (x < real_e()) throw DomainError("logpow_coeff_bound needs x >= e");
    return pow(Real(2), Real(ell)) * pow(Real(p), Real(ell)) * pow(log(x), Real(ell - 1)) / pow(x, Real(p));
}

SlowCertificate damp_power(const Real& F, const Real& alpha, const SlowCertificate& c) {
    if (!(F > 0)) throw InputError("damping exponent must be positive");
    if (alpha < 1) throw InputError("derivative bound alpha must be >= 1");
    SlowCertificate r = c;
    r.A = 2 * (F + 1) * alpha * c.A;
    r.B = c.B + 1;
    r.decay = DecayData{F, "0", LimitClass::Rational, 0};
    return r;
}

Real HeightControl::operator()(const Real& T) const {
    if (T < 1) throw InputError("height threshold must be >= 1");
    Real v;
    if (kind == HcfKind::Power) {
        v = pow(scale * pow(T, k), 1 / E);
    } else {
        Real arg = scale * pow(T, k);
        v = arg > 1 ? Real(log(arg) / (lambda * real_log2())) : Real(0);
    }
    return round_up(std::max(v, floor));
}

std::pair<int, int> HeightControl::log_shape() const {
    return kind == HcfKind::Power ? std::pair{1, 0} : std::pair{0, 1};
}

bool operator==(const HeightControl& x, const HeightControl& y) {
    return x.kind == y.kind && x.scale == y.scale && x.k == y.k && x.E == y.E && x.lambda == y.lambda &&
           x.floor == y.floor;
}

namespace {
bool is_rational_literal(const std::string& s) {
    try {
        parse_rational(s);
        return true;
    } catch (const InputError&) {
        return false;
    }
}
}  // namespace

HeightControl height_control(HcfCase c, const HcfParams& prm) {
    HeightControl h;
    h.floor = prm.floor;
    switch (c) {
        case HcfCase::GraphDefault: return h;
        case HcfCase::Spiral:
            if (!(prm.F > 0) || !(prm.G > 0)) throw InputError("spiral exponents must be positive");
            h.E = std::min(prm.F, prm.G);
            return h;
        case HcfCase::RationalLimit: {
            // |x^-E| >= |f - u| >= 1/(q den) forces x <= (q T)^(1/E)
            if (!is_rational_literal(prm.u)) throw InputError("rational limit needs a rational literal u");
            Rational u = parse_rational(prm.u);
            h.scale = to_real(Integer(denominator(u)));
            h.E = prm.E;
            return h;
        }
        case HcfCase::NonU1Irrational:
            if (prm.u_class == LimitClass::Unknown)
                throw InputError("irrational limit of unknown class: no irrationality measure declared");
            if (!prm.K) throw InputError("irrational limit needs the irrationality-measure constant K");
            h.k = *prm.K;
            h.E = prm.E;
            return h;
        case HcfCase::Zeta: {
            if (!(prm.zeta_a > 1)) throw InputError("zeta height control needs a > 1");
            h.kind = HcfKind::LogOfT;
            h.lambda = Real(0.5) - 1 / (2 * prm.zeta_a);
            h.scale = zeta((prm.zeta_a + 1) / 2) - 1;
            return h;
        }
        case HcfCase::Custom:
            h.E = prm.E;
            if (prm.K) h.k = *prm.K;
            return h;
    }
    return h;
}

nlohmann::ordered_json cert_to_json(const SlowCertificate& c) {
    nlohmann::ordered_json j;
    j["A"] = real_to_string(c.A);
    j["B"] = real_to_string(c.B);
    j["C"] = real_to_string(c.C);
    j["D"] = real_to_string(c.D);
    j["a"] = real_to_string(c.a);
    if (c.decay) {
        nlohmann::ordered_json d;
        d["E"] = real_to_string(c.decay->E);
        d["u"] = c.decay->u;
        d["u_class"] = limit_class_name(c.decay->u_class);
        d["coordinate"] = c.decay->coordinate;
        j["decay"] = d;
    }
    return j;
}

namespace {
Real real_field(const nlohmann::json& j, const char* key, const char* fallback = nullptr) {
    if (!j.contains(key)) {
        if (fallback) return parse_real(fallback);
        throw InputError(std::string("missing field '") + key + "'");
    }
    const auto& v = j[key];
    if (v.is_string()) return parse_real(v.get<std::string>());
    if (v.is_number()) return parse_real(v.dump());
    throw InputError(std::string("field '") + key + "' must be a number or string");
}
}  // namespace

SlowCertificate cert_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("certificate must be an object");
    SlowCertificate c;
    c.A = real_field(j, "A");
    c.B = real_field(j, "B");
    c.C = real_field(j, "C");
    c.D = real_field(j, "D", "1");
    c.a = real_field(j, "a");
    if (c.A < 0 || c.B < 0 || c.C < 0 || c.D < 0) throw InputError("certificate constants must be nonnegative");
    if (j.contains("decay")) {
        const auto& d = j["decay"];
        DecayData dd;
        dd.E = real_field(d, "E");
        if (!(dd.E > 0)) throw InputError("decay exponent must be positive");
        dd.u = d.value("u", std::string("0"));
        parse_real(dd.u);
        dd.u_class = limit_class_from_name(d.value("u_class", std::string("rational")));
        dd.coordinate = d.value("coordinate", 0);
        if (dd.coordinate != 0 && dd.coordinate != 1) throw InputError("decay coordinate must be 0 or 1");
        c.decay = dd;
    }
    return c;
}

nlohmann::ordered_json hcf_to_json(const HeightControl& h) {
    nlohmann::ordered_json j;
    j["kind"] = h.kind == HcfKind::Power ? "power" : "log_of_T";
    j["scale"] = real_to_string(h.scale);
    j["k"] = real_to_string(h.k);
    j["E"] = real_to_string(h.E);
    j["lambda"] = real_to_string(h.lambda);
    j["floor"] = real_to_string(h.floor);
    return j;
}

HeightControl hcf_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("height control must be an object");
    HeightControl h;
    std::string kind = j.value("kind", std::string("power"));
    if (kind == "power") h.kind = HcfKind::Power;
    else if (kind == "log_of_T") h.kind = HcfKind::LogOfT;
    else throw InputError("unknown height control kind '" + kind + "'");
    h.scale = real_field(j, "scale", "1");
    h.k = real_field(j, "k", "1");
    h.E = real_field(j, "E", "1");
    h.lambda = real_field(j, "lambda", "1");
    h.floor = real_field(j, "floor", "1");
    if (!(h.scale > 0) || !(h.k > 0) || !(h.E > 0) || !(h.lambda > 0)) throw InputError("height control parameters must be positive");
    return h;
}

}  // namespace slowdet
