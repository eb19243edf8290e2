#pragma once

#include "slowdet/numeric.hpp"

#include <utility>
#include <vector>

namespace slowdet {

// Exponents (i, j) of X^i Y^j with i + j <= d in lexicographic order:
// (0,0), (0,1), ..., (0,d), (1,0), ..., (d,0).
std::vector<std::pair<int, int>> monomials(int d);

// Bivariate polynomial of total degree <= d, coefficients aligned with monomials(d).
struct Poly2 {
    int d = 1;
    std::vector<Rational> coeffs;

    bool is_zero() const;
    Rational eval(const Rational& x, const Rational& y) const;
    Real eval(const Real& x, const Real& y) const;
    double eval(double x, double y) const;
};

}  // namespace slowdet
