#pragma once

#include "slowdet/jet.hpp"

namespace slowdet {

// B_n with B_1 = -1/2.
Rational bernoulli(int n);

struct ZetaJetInfo {
    long cutoff = 0;     // Euler-Maclaurin split point N
    int em_terms = 0;    // number of Bernoulli corrections used
    Real tail_bound;     // max over coefficients of twice the first omitted correction
};

// Jet of zeta at s > 1 by Euler-Maclaurin; cutoff 0 picks one from the precision.
Jet zeta_jet(const Real& s, int order, ZetaJetInfo* info = nullptr, long cutoff = 0);
Real zeta(const Real& s);

// Stirling series with recurrence shift.
Jet lgamma_jet(const Real& x, int order);
Jet gamma_jet(const Real& x, int order);
Real gamma_fn(const Real& x);

// Inverse of Gamma on the increasing branch [2, inf), defined for y >= 1.
Real gamma_inverse(const Real& y);
Jet gamma_inverse_jet(const Real& y, int order);

double zeta_d(double s);
double gamma_inverse_d(double y);

}  // namespace slowdet
