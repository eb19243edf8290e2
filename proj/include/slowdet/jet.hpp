#pragma once

#include "slowdet/numeric.hpp"

#include <vector>

namespace slowdet {

// Truncated Taylor expansion: c[p] = f^(p)(center) / p!.
class Jet {
public:
    Jet() = default;
    Jet(Real center, std::vector<Real> coeffs);

    static Jet variable(const Real& x, int order);
    static Jet constant(const Real& x, const Real& value, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Real& center() const { return center_; }
    const Real& operator[](int p) const { return c_[static_cast<size_t>(p)]; }
    Real& operator[](int p) { return c_[static_cast<size_t>(p)]; }
    const std::vector<Real>& coeffs() const { return c_; }
    Jet truncated(int order) const;

private:
    Real center_;
    std::vector<Real> c_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Real& s, const Jet& a);
Jet operator+(const Jet& a, const Real& s);

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_recip(const Jet& a);
Jet jet_pow_int(const Jet& a, long n);
Jet jet_exp(const Jet& a);
Jet jet_log(const Jet& a);
Jet jet_sin(const Jet& a);
Jet jet_cos(const Jet& a);
void jet_sincos(const Jet& a, Jet& s, Jet& c);
Jet jet_pow_real(const Jet& a, const Real& F);

// outer is the jet of f at inner[0]; returns the jet of f o g at inner.center().
Jet jet_compose(const Jet& outer, const Jet& inner);

// Series reversion: given the jet of h at x0, the jet of h^{-1} at h(x0).
Jet jet_inverse(const Jet& h);

}  // namespace slowdet
