#include "slowdet/bound.hpp"

namespace slowdet {

DegreeData degree_data(int d) {
    if (d < 1) throw InputError("degree must be at least 1");
    DegreeData dd;
    dd.d = d;
    dd.mu = static_cast<long>(d + 1) * (d + 2) / 2;
    dd.rho = dd.mu * (dd.mu - 1) / 2;
    dd.nu = Rational(4 * d, dd.mu - 1);
    return dd;
}

namespace {
Real factorial(long n) {
    Integer f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return to_real(f);
}

Real nu_real(const DegreeData& dd) { return to_real(dd.nu); }
}  // namespace

Real det_constant(int d, const Real& A, const Real& B) {
    if (A < 0 || B < 0) throw InputError("certificate constants must be nonnegative");
    DegreeData dd = degree_data(d);
    Real mu(dd.mu), rho(dd.rho);
    Real v = factorial(dd.mu) * pow(A, rho) * pow(mu, Real(d * (dd.mu - 1))) * pow(mu, B * rho);
    if (!isfinite(v)) throw InvariantViolation("determinant constant overflows the working precision");
    return round_up(v);
}

Real length_constant(int d, const Real& A, const Real& B) {
    if (!(A > 0)) throw InputError("length constant needs A > 0");
    if (B < 0) throw InputError("certificate constants must be nonnegative");
    DegreeData dd = degree_data(d);
    Real mu(dd.mu);
    Real logv = -log(A) - B * log(mu) - Real(2 * d) / mu * log(mu) -
                Real(2) / Real(dd.mu * (dd.mu - 1)) * log(factorial(dd.mu));
    return round_down(exp(logv));
}

Real start_point(const SlowCertificate& cert) {
    if (cert.C == 0) return Real(1);
    if (cert.decay) return round_up(exp(cert.C / cert.decay->E));
    return round_up(exp(cert.C));
}

namespace {
Real first_term(const SlowCertificate& cert) { return std::max(start_point(cert), cert.a); }
}  // namespace

Real interval_length(const DegreeData& dd, const SlowCertificate& cert, const Real& T, const Real& N) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    if (N < start_point(cert)) throw DomainError("interval start below the validity threshold N(C)");
    Real L = length_constant(dd.d, cert.A, cert.B) * N * pow(T, -nu_real(dd));
    if (cert.C != 0) L /= pow(log(N), cert.C);
    return round_down(L);
}

CoveringWalker::CoveringWalker(const SlowCertificate& cert, int d, const Real& T)
    : cert_(cert), dd_(degree_data(d)), T_(T), x0_(first_term(cert)), x_(x0_), geometric_(cert.C == 0) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    if (geometric_) {
        ratio_ = 1 + round_down(length_constant(d, cert.A, cert.B) * pow(T, -nu_real(dd_)));
        log_ratio_ = log(ratio_);
    }
}

const Real& CoveringWalker::next() {
    if (geometric_) x_ = x_ * ratio_;
    else x_ = x_ + interval_length(dd_, cert_, T_, x_);
    ++n_;
    return x_;
}

Real CoveringWalker::term(long n) {
    if (n < 0) throw InputError("negative covering index");
    if (geometric_) return x0_ * pow(ratio_, Real(n));
    if (n < n_) {
        x_ = x0_;
        n_ = 0;
    }
    while (n_ < n) next();
    return x_;
}

long CoveringWalker::locate(const Real& x) {
    if (x < x0_) throw DomainError("point below the start of the covering sequence");
    if (geometric_) {
        long n = static_cast<long>(floor(log(x / x0_) / log_ratio_).convert_to<double>());
        if (n < 0) n = 0;
        while (term(n) > x && n > 0) --n;
        while (term(n + 1) <= x) ++n;
        return n;
    }
    if (x < x_) {
        x_ = x0_;
        n_ = 0;
    }
    while (true) {
        Real save = x_;
        long idx = n_;
        if (next() > x) {
            x_ = save;
            n_ = idx;
            return idx;
        }
    }
}

long CoveringWalker::count_below(const Real& limit) {
    if (limit <= x0_) return 0;
    if (geometric_) {
        long n = static_cast<long>(ceil(log(limit / x0_) / log_ratio_).convert_to<double>());
        if (n < 1) n = 1;
        while (n > 1 && term(n - 1) >= limit) --n;
        while (term(n) < limit) ++n;
        return n;
    }
    x_ = x0_;
    n_ = 0;
    while (x_ < limit) next();
    return n_;
}

std::vector<Real> covering_sequence(const SlowCertificate& cert, int d, const Real& T, const Real& limit,
                                    long max_terms) {
    CoveringWalker w(cert, d, T);
    if (limit < w.current()) throw InputError("limit below the first covering term");
    std::vector<Real> xs{w.current()};
    while (xs.back() < limit) {
        if (static_cast<long>(xs.size()) >= max_terms) throw InputError("covering sequence exceeds the term cap");
        xs.push_back(w.next());
    }
    return xs;
}

Integer interval_count_bound(const SlowCertificate& cert, int d, const Real& T, const Real& phiT) {
    if (phiT < first_term(cert)) throw InputError("phi(T) below the first covering term");
    DegreeData dd = degree_data(d);
    Real Cl = length_constant(d, cert.A, cert.B);
    Real v = pow(T, nu_real(dd)) * pow(log(phiT), cert.C + 1) / (real_log2() * std::min(Real(1), Cl)) + 1;
    return ceil_to_integer(round_up(v));
}

int degree_schedule(const Real& T) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    Real f = floor(log_plus(T));
    return std::max(1, f.convert_to<int>());
}

Real assemble_alpha(const Real& A, const Real& B) {
    Real l2 = real_log2();
    Real v = pow(Real(2), B) * pow(1 + 1 / l2, 2 * B) * exp(Real(12)) * exp(4 / real_e()) * std::max(A, Real(1)) *
             exp(Real(16)) / l2 * 2;
    return round_up(v);
}

BoundReport bound_from_parts(const SlowCertificate* cert, const HeightControl* phi, const BezoutFormula* bezout,
                             const Real& T) {
    if (!cert) throw InputError("curve has no slow certificate");
    if (!phi) throw InputError("curve has no height control function");
    if (!bezout) throw InputError("curve has no Bezout formula");
    if (T < 1) throw InputError("height threshold must be >= 1");
    BoundReport r;
    r.T = T;
    // scaling both coordinates by 1/M makes D <= 1 and multiplies heights by at most M
    r.M = ceil_to_integer(cert->D);
    if (r.M < 1) r.M = 1;
    Real M = to_real(r.M);
    r.T_eff = T * M;
    r.cert = *cert;
    r.cert.D = 1;
    r.slow_plus = cert->decay.has_value();
    r.d = degree_schedule(r.T_eff);
    r.dd = degree_data(r.d);
    r.start = first_term(r.cert);
    r.phiT = std::max((*phi)(r.T_eff * M), r.start);
    r.C_det = det_constant(r.d, r.cert.A, r.cert.B);
    r.C_len = length_constant(r.d, r.cert.A, r.cert.B);
    r.L = interval_length(r.dd, r.cert, r.T_eff, r.start);
    r.nT = interval_count_bound(r.cert, r.d, r.T_eff, r.phiT);
    r.bezout = round_up((*bezout)(r.phiT, r.d));
    r.alpha = assemble_alpha(r.cert.A, r.cert.B);
    r.beta_T = 2 * (r.cert.B + r.cert.C);
    r.beta_phi = r.slow_plus ? Real(1) : r.cert.C + 1;
    r.total = round_up(r.alpha * pow(log_plus(r.T_eff), r.beta_T) * pow(log_plus(r.phiT), r.beta_phi) * r.bezout);
    auto s = phi->log_shape();
    auto bz = bezout->shape(s);
    r.shape.log_T = r.beta_T + r.beta_phi * s.first + bz.first;
    r.shape.loglog_T = r.beta_phi * s.second + bz.second;
    return r;
}

nlohmann::ordered_json bound_report_to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["T"] = real_to_string(r.T);
    j["M"] = r.M.str();
    j["T_eff"] = real_to_string(r.T_eff);
    j["d"] = r.d;
    j["mu"] = r.dd.mu;
    j["rho"] = r.dd.rho;
    j["nu"] = rational_to_string(r.dd.nu);
    j["cert"] = cert_to_json(r.cert);
    j["mode"] = r.slow_plus ? "slow_plus" : "slow";
    j["N"] = real_to_string(r.start);
    j["phiT"] = real_to_string(r.phiT);
    j["C_det"] = real_to_string(r.C_det);
    j["C_len"] = real_to_string(r.C_len);
    j["L"] = real_to_string(r.L);
    j["nT"] = r.nT.str();
    j["bezout"] = real_to_string(r.bezout);
    j["alpha"] = real_to_string(r.alpha);
    j["beta_T"] = real_to_string(r.beta_T);
    j["beta_phi"] = real_to_string(r.beta_phi);
    j["total"] = real_to_string(r.total);
    j["shape"] = {{"log_T", real_to_string(r.shape.log_T)}, {"loglog_T", real_to_string(r.shape.loglog_T)}};
    return j;
}

}  // namespace slowdet
