#include "slowdet/numeric.hpp"

#include <cmath>
#include <limits>
#include <mpfr.h>

namespace slowdet {

namespace {
unsigned g_bits = 0;

unsigned digits10_for(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

struct InitDefault {
    InitDefault() { set_precision_bits(kDefaultPrecisionBits); }
} g_init;
}  // namespace

unsigned precision_bits() { return g_bits; }

void set_precision_bits(unsigned bits) {
    if (bits < 32) bits = 32;
    g_bits = bits;
    Real::default_precision(digits10_for(bits));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(g_bits) { set_precision_bits(bits); }
PrecisionScope::~PrecisionScope() { set_precision_bits(saved_); }

Real real_pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real real_e() { return exp(Real(1)); }

Real real_log2() {
    Real r;
    mpfr_const_log2(r.backend().data(), MPFR_RNDN);
    return r;
}

Real real_inf() {
    Real r;
    mpfr_set_inf(r.backend().data(), 1);
    return r;
}

namespace {
Real nudge() {
    Real r(1);
    mpfr_mul_2si(r.backend().data(), r.backend().data(), -static_cast<long>(g_bits) + 16, MPFR_RNDN);
    return r;
}
}  // namespace

Real round_up(const Real& x) { return x + abs(x) * nudge(); }
Real round_down(const Real& x) { return x - abs(x) * nudge(); }

Real log_plus(const Real& x) {
    if (x <= real_e()) return Real(1);
    Real l = log(x);
    return l > 1 ? l : Real(1);
}

Real to_real(const Rational& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Integer& z) {
    Real r;
    mpfr_set_z(r.backend().data(), z.backend().data(), MPFR_RNDN);
    return r;
}

Rational to_rational(const Real& x) {
    if (!isfinite(x)) throw InputError("cannot convert non-finite value to a rational");
    if (x == 0) return Rational(0);
    Integer m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.backend().data(), x.backend().data());
    Rational q(m);
    if (e >= 0) {
        Integer p = 1;
        mpz_mul_2exp(p.backend().data(), p.backend().data(), static_cast<mp_bitcnt_t>(e));
        return q * Rational(p);
    }
    Integer p = 1;
    mpz_mul_2exp(p.backend().data(), p.backend().data(), static_cast<mp_bitcnt_t>(-e));
    return q / Rational(p);
}

Rational to_rational(double x) {
    if (!std::isfinite(x)) throw InputError("cannot convert non-finite value to a rational");
    Rational q;
    mpq_set_d(q.backend().data(), x);
    return q;
}

double to_double(const Real& x) { return mpfr_get_d(x.backend().data(), MPFR_RNDN); }

Real parse_real(const std::string& s) {
    if (s == "pi") return real_pi();
    if (s == "e") return real_e();
    if (s == "log2") return real_log2();
    if (s == "inf") return real_inf();
    if (s.find('/') != std::string::npos) return to_real(parse_rational(s));
    Real r;
    if (mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0)
        throw InputError("malformed real literal '" + s + "'");
    return r;
}

Rational parse_rational(const std::string& s) {
    auto bad = [&] { return InputError("malformed rational literal '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& t) {
        Integer z;
        if (t.empty() || mpz_set_str(z.backend().data(), t.c_str(), 10) != 0) throw bad();
        return z;
    };
    if (slash == std::string::npos) {
        if (s.find_first_of(".eE") != std::string::npos) {
            // exact decimal expansion
            Real r;
            if (mpfr_set_str(r.backend().data(), s.c_str(), 10, MPFR_RNDN) != 0) throw bad();
            auto epos = s.find_first_of("eE");
            std::string mant = s.substr(0, epos);
            long ex = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
            auto dot = mant.find('.');
            if (dot != std::string::npos) {
                ex -= static_cast<long>(mant.size() - dot - 1);
                mant.erase(dot, 1);
            }
            Integer m = parse_int(mant);
            Integer ten = 10, p = 1;
            for (long i = 0; i < std::labs(ex); ++i) p *= ten;
            return ex >= 0 ? Rational(m * p) : Rational(m, p);
        }
        return Rational(parse_int(s));
    }
    Integer n = parse_int(s.substr(0, slash));
    Integer d = parse_int(s.substr(slash + 1));
    if (d == 0) throw bad();
    return Rational(n, d);
}

std::string real_to_string(const Real& x) {
    if (isinf(x)) return x > 0 ? "inf" : "-inf";
    if (isnan(x)) return "nan";
    if (x == 0) return "0";
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, 0, x.backend().data(), MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    bool neg = digits[0] == '-';
    if (neg) digits.erase(0, 1);
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    std::string out = neg ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    long ex = static_cast<long>(e) - 1;
    // plain notation for integers of moderate size
    if (ex > 0 && ex < 20 && static_cast<long>(digits.size()) <= ex + 1)
        return (neg ? "-" : "") + digits + std::string(ex + 1 - digits.size(), '0');
    if (ex != 0) out += "e" + std::to_string(ex);
    return out;
}

std::string rational_to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Integer ceil_to_integer(const Real& x) {
    Real c = ceil(x);
    Integer z;
    mpfr_get_z(z.backend().data(), c.backend().data(), MPFR_RNDN);
    return z;
}

Integer floor_to_integer(const Real& x) {
    Real c = floor(x);
    Integer z;
    mpfr_get_z(z.backend().data(), c.backend().data(), MPFR_RNDN);
    return z;
}

}  // namespace slowdet
