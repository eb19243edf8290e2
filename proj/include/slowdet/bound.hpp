#pragma once

#include "slowdet/bezout.hpp"
#include "slowdet/slow.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slowdet {

struct DegreeData {
    int d = 1;
    long mu = 3;
    long rho = 3;
    Rational nu = 2;
};

DegreeData degree_data(int d);

// mu! A^rho mu^(d(mu-1)) mu^(B rho), rounded up.
Real det_constant(int d, const Real& A, const Real& B);
// A^-1 mu^-B mu^(-2d/mu) (mu!)^(-2/(mu(mu-1))), rounded down.
Real length_constant(int d, const Real& A, const Real& B);

// e^C, or e^(C/E) when the certificate carries decay data.
Real start_point(const SlowCertificate& cert);

// C' N / log^C N T^-nu, rounded down.
Real interval_length(const DegreeData& dd, const SlowCertificate& cert, const Real& T, const Real& N);

// Walks x_0 = max(N(C), a), x_{n+1} = x_n + L(x_n).
class CoveringWalker {
public:
    CoveringWalker(const SlowCertificate& cert, int d, const Real& T);
    const Real& current() const { return x_; }
    long index() const { return n_; }
    const Real& next();
    // x_n directly (closed form when C = 0, otherwise by walking from the current state).
    Real term(long n);
    // Index of the interval [x_n, x_{n+1}) containing x >= x_0.
    long locate(const Real& x);
    // Number of terms strictly below limit (the first term >= limit is x_count).
    long count_below(const Real& limit);

private:
    SlowCertificate cert_;
    DegreeData dd_;
    Real T_;
    Real x0_;
    Real x_;
    long n_ = 0;
    bool geometric_;
    Real ratio_;      // 1 + C' T^-nu when C = 0
    Real log_ratio_;
};

// x_0 < x_1 < ... up to and including the first term >= limit.
std::vector<Real> covering_sequence(const SlowCertificate& cert, int d, const Real& T, const Real& limit,
                                    long max_terms = 10'000'000);

// ceil(T^nu log^(C+1) phi(T) / (log 2 min(1, C')) + 1)
Integer interval_count_bound(const SlowCertificate& cert, int d, const Real& T, const Real& phiT);

int degree_schedule(const Real& T);

struct Shape {
    Real log_T = 0;
    Real loglog_T = 0;
    bool operator==(const Shape& o) const { return log_T == o.log_T && loglog_T == o.loglog_T; }
};

struct BoundReport {
    Real T;
    Real T_eff;   // M T after normalizing D to 1
    Integer M = 1;
    int d = 1;
    DegreeData dd;
    SlowCertificate cert;
    bool slow_plus = false;
    Real start;
    Real phiT;
    Real C_det;
    Real C_len;
    Real L;
    Integer nT;
    Real bezout;
    Real alpha;
    Real beta_T;
    Real beta_phi;
    Real total;
    Shape shape;
};

// Theorem-level bound from its three ingredients; each missing one is reported separately.
BoundReport bound_from_parts(const SlowCertificate* cert, const HeightControl* phi, const BezoutFormula* bezout,
                             const Real& T);

// 2^B (1 + 1/log 2)^(2B) e^12 e^(4/e) max(A, 1) e^16 (1/log 2) 2, rounded up.
Real assemble_alpha(const Real& A, const Real& B);

nlohmann::ordered_json bound_report_to_json(const BoundReport& r);

}  // namespace slowdet
