#include "slowdet/specfun.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <mutex>
#include <vector>

namespace slowdet {

Rational bernoulli(int n) {
    static std::mutex mu;
    static std::vector<Rational> cache;
    if (n < 0) throw InputError("negative Bernoulli index");
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        // B_m = -1/(m+1) sum_{k<m} C(m+1,k) B_k
        int m = static_cast<int>(cache.size());
        if (m == 0) {
            cache.emplace_back(1);
            continue;
        }
        Rational s = 0;
        Integer binom = 1;  // C(m+1, 0)
        for (int k = 0; k < m; ++k) {
            s += Rational(binom) * cache[static_cast<size_t>(k)];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[static_cast<size_t>(n)];
}

namespace {

Real pow2(int e) { return ldexp(Real(1), e); }

Jet n_pow_minus_s(const Real& s, const Real& n, int P) {
    // n^{-(s+h)} = n^{-s} sum (-h log n)^p / p!
    std::vector<Real> c(static_cast<size_t>(P) + 1);
    c[0] = pow(n, -s);
    Real L = log(n);
    for (int p = 1; p <= P; ++p) c[p] = c[p - 1] * (-L) / p;
    return Jet(s, std::move(c));
}

Real max_abs(const Jet& j) {
    Real m = 0;
    for (const auto& v : j.coeffs()) m = std::max(m, Real(abs(v)));
    return m;
}

}  // namespace

Jet zeta_jet(const Real& s, int order, ZetaJetInfo* info, long cutoff) {
    if (!(s > 1)) throw DomainError("zeta evaluated at s <= 1");
    int P = order;
    unsigned bits = precision_bits();
    long N = cutoff > 0 ? cutoff : static_cast<long>(20 + bits / 4 + 2 * P);
    Jet sum = Jet::constant(s, Real(0), P);
    for (long n = 1; n < N; ++n) sum = sum + n_pow_minus_s(s, Real(n), P);
    Real Nr(N);
    Jet NmS = n_pow_minus_s(s, Nr, P);
    Jet svar = Jet::variable(s, P);
    // integral tail N^{1-s}/(s-1) and the half endpoint term
    sum = sum + Nr * NmS * jet_recip(svar + Real(-1));
    sum = sum + Real(0.5) * NmS;
    Real eps = pow2(-static_cast<int>(bits) - 8);
    Jet poch = svar;  // s (s+1) ... (s+2k-2)
    Real Npow = 1 / Nr;  // N^{-(2k-1)}
    Real fact2k = 2;     // (2k)!
    int k = 1;
    Real prev_size = real_inf();
    Real tail;
    const int kmax = 400;
    for (;; ++k) {
        Real coeff = to_real(bernoulli(2 * k)) / fact2k * Npow;
        Jet term = coeff * (poch * NmS);
        Real size = max_abs(term);
        Real scale = max_abs(sum) + 1;
        if (size < eps * scale || size > prev_size || k >= kmax) {
            tail = 2 * size;
            break;
        }
        sum = sum + term;
        prev_size = size;
        poch = poch * (svar + Real(2 * k - 1)) * (svar + Real(2 * k));
        Npow /= Nr * Nr;
        fact2k *= Real((2 * k + 1) * (2 * k + 2));
    }
    if (info) {
        info->cutoff = N;
        info->em_terms = k - 1;
        info->tail_bound = tail;
    }
    return sum;
}

Real zeta(const Real& s) { return zeta_jet(s, 0)[0]; }

Jet lgamma_jet(const Real& x, int order) {
    if (!(x > 0)) throw DomainError("log-gamma evaluated at x <= 0");
    int P = order;
    unsigned bits = precision_bits();
    Real Z0(static_cast<long>(bits * 0.35) + 2 * P + 10);
    Jet z = Jet::variable(x, P);
    Jet shift_sum = Jet::constant(x, Real(0), P);
    long n = 0;
    if (x < Z0) n = static_cast<long>(ceil(Z0 - x).convert_to<double>());
    for (long i = 0; i < n; ++i) shift_sum = shift_sum + jet_log(z + Real(i));
    Jet w = z + Real(n);
    Jet logw = jet_log(w);
    Jet res = (w + Real(-0.5)) * logw - w + Real(0.5) * log(2 * real_pi());
    Jet winv = jet_recip(w);
    Jet winv2 = winv * winv;
    Jet wpow = winv;  // w^{1-2k}
    Real eps = pow2(-static_cast<int>(bits) - 8);
    Real prev = real_inf();
    for (int k = 1; k < 400; ++k) {
        Real c = to_real(bernoulli(2 * k)) / Real((2 * k) * (2 * k - 1));
        Jet term = c * wpow;
        Real size = max_abs(term);
        if (size < eps || size > prev) break;
        res = res + term;
        prev = size;
        wpow = wpow * winv2;
    }
    return res - shift_sum;
}

Jet gamma_jet(const Real& x, int order) { return jet_exp(lgamma_jet(x, order)); }

Real gamma_fn(const Real& x) { return exp(lgamma_jet(x, 0)[0]); }

double gamma_inverse_d(double y) {
    if (!(y >= 1)) throw DomainError("inverse gamma needs y >= 1");
    double target = std::log(y);
    double lo = 2, hi = 3;
    while (std::lgamma(hi) < target) {
        lo = hi;
        hi *= 2;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double f = std::lgamma(x) - target;
        if (f > 0) hi = x; else lo = x;
        double nx = x - f / boost::math::digamma(x);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::fabs(nx - x) <= 1e-15 * x) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

Real gamma_inverse(const Real& y) {
    if (!(y >= 1)) throw DomainError("inverse gamma needs y >= 1");
    if (y == 1) return Real(2);
    Real target = log(y);
    Real x(gamma_inverse_d(to_double(y)));
    Real lo = x - Real(1e-6) * x, hi = x + Real(1e-6) * x;
    if (lo < 2) lo = 2;
    Real tol = pow2(-static_cast<int>(precision_bits()) + 4);
    for (int it = 0; it < 100; ++it) {
        Jet lg = lgamma_jet(x, 1);
        Real f = lg[0] - target;
        Real nx = x - f / lg[1];
        if (nx < lo) nx = (x + lo) / 2;
        if (abs(nx - x) <= tol * x) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

Jet gamma_inverse_jet(const Real& y, int order) {
    Real x0 = gamma_inverse(y);
    Jet G = gamma_jet(x0, order);
    Jet inv = jet_inverse(G);
    return Jet(y, inv.coeffs());
}

double zeta_d(double s) {
    if (!(s > 1)) throw DomainError("zeta evaluated at s <= 1");
    return boost::math::zeta(s);
}

}  // namespace slowdet
