#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>

namespace slowdet {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Bad user input (parse errors, out-of-domain parameters).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation outside a function's domain.
struct DomainError : InputError {
    using InputError::InputError;
};

// A property the method guarantees turned out false.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr unsigned kDefaultPrecisionBits = 128;

unsigned precision_bits();
void set_precision_bits(unsigned bits);

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

Real real_pi();
Real real_e();
Real real_log2();
Real real_inf();

// Relative outward nudge by 2^-(bits-16); used for directed rounding of constants.
Real round_up(const Real& x);
Real round_down(const Real& x);

Real log_plus(const Real& x);
Real to_real(const Rational& q);
Real to_real(const Integer& z);
Rational to_rational(const Real& x);  // exact binary value
Rational to_rational(double x);
double to_double(const Real& x);

// Parses "pi", "e", "log2", "p/q", integers and decimal/scientific literals.
Real parse_real(const std::string& s);
Rational parse_rational(const std::string& s);

// Shortest decimal string that reads back to the same value at the current precision.
std::string real_to_string(const Real& x);
std::string rational_to_string(const Rational& q);

Integer ceil_to_integer(const Real& x);
Integer floor_to_integer(const Real& x);

}  // namespace slowdet
