#pragma once

#include "slowdet/expr.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slowdet {

enum class LimitClass { Rational, NonU1Irrational, Unknown };

std::string limit_class_name(LimitClass c);
LimitClass limit_class_from_name(const std::string& s);

// Decay of one coordinate towards its limit u, |(f-u)^(p)/p!| <= x^-E phi_p(x).
struct DecayData {
    Real E = 1;
    std::string u = "0";  // literal, see parse_real
    LimitClass u_class = LimitClass::Rational;
    int coordinate = 0;   // 0 = first, 1 = second
};

struct SlowCertificate {
    Real A = 1;
    Real B = 0;
    Real C = 0;
    Real D = 1;
    Real a = 1;
    std::optional<DecayData> decay;
};

bool operator==(const SlowCertificate& x, const SlowCertificate& y);

// D (A p^B log^C x / x)^p, rounded up.
Real phi_p(const SlowCertificate& cert, int p, const Real& x);

struct Violation {
    int p = 0;
    Real x;
    Real lhs;
    Real rhs;
};

struct VerificationReport {
    bool ok = true;
    long checks = 0;
    Real worst_ratio = 0;
    int worst_p = 0;
    Real worst_x = 0;
    std::optional<Violation> first_violation;
    std::vector<std::string> errors;  // per-sample evaluation failures
};

// Checks |f^(p)(x)/p!| <= phi_p(x) for p <= p_max and x in xs.  With use_decay the
// limit u is subtracted and the bound carries the extra x^-E.
VerificationReport verify_certificate(const Expr& f, const SlowCertificate& cert, int p_max,
                                      const std::vector<Real>& xs, bool use_decay = false);

std::vector<Real> log_grid(const Real& lo, const Real& hi, int n);

SlowCertificate combine_sum(const SlowCertificate& c1, const SlowCertificate& c2);
SlowCertificate combine_product(const SlowCertificate& c1, const SlowCertificate& c2);
SlowCertificate compose_bounded(const Real& alpha, const SlowCertificate& c);
SlowCertificate compose_logpow(const Real& alpha, int ell);
Real logpow_coeff_bound(int ell, int p, const Real& x);
SlowCertificate damp_power(const Real& F, const Real& alpha, const SlowCertificate& c);

enum class HcfKind { Power, LogOfT };

// Power:   phi(T) = max(floor, (scale T^k)^(1/E))
// LogOfT:  phi(T) = max(floor, log(scale T^k) / (lambda log 2))
struct HeightControl {
    HcfKind kind = HcfKind::Power;
    Real scale = 1;
    Real k = 1;
    Real E = 1;
    Real lambda = 1;
    Real floor = 1;

    Real operator()(const Real& T) const;
    // (a, b) with log phi(T) = O(log^a T loglog^b T)
    std::pair<int, int> log_shape() const;
};

bool operator==(const HeightControl& x, const HeightControl& y);

enum class HcfCase { GraphDefault, Spiral, RationalLimit, NonU1Irrational, Zeta, Custom };

struct HcfParams {
    Real F = 1, G = 1;      // Spiral
    std::string u = "0";    // RationalLimit / NonU1Irrational
    LimitClass u_class = LimitClass::Rational;
    Real E = 1;             // decay exponent of b(x) = x^-E
    std::optional<Real> K;  // irrationality-measure constant, tau(T) = K log T
    Real zeta_a = 2;        // Zeta
    Real floor = 1;
};

HeightControl height_control(HcfCase c, const HcfParams& params);

nlohmann::ordered_json cert_to_json(const SlowCertificate& c);
SlowCertificate cert_from_json(const nlohmann::json& j);
nlohmann::ordered_json hcf_to_json(const HeightControl& h);
HeightControl hcf_from_json(const nlohmann::json& j);

}  // namespace slowdet
