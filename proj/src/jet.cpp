#include "slowdet/jet.hpp"

#include <utility>

namespace slowdet {

Jet::Jet(Real center, std::vector<Real> coeffs) : center_(std::move(center)), c_(std::move(coeffs)) {
    if (c_.empty()) throw InputError("jet needs at least one coefficient");
}

Jet Jet::variable(const Real& x, int order) {
    std::vector<Real> c(static_cast<size_t>(order) + 1, Real(0));
    c[0] = x;
    if (order >= 1) c[1] = 1;
    return Jet(x, std::move(c));
}

Jet Jet::constant(const Real& x, const Real& value, int order) {
    std::vector<Real> c(static_cast<size_t>(order) + 1, Real(0));
    c[0] = value;
    return Jet(x, std::move(c));
}

Jet Jet::truncated(int order) const {
    std::vector<Real> c(c_.begin(), c_.begin() + std::min<size_t>(c_.size(), static_cast<size_t>(order) + 1));
    return Jet(center_, std::move(c));
}

namespace {
void check_same(const Jet& a, const Jet& b) {
    if (a.order() != b.order()) throw InputError("jet orders differ");
    if (a.center() != b.center()) throw InputError("jet centers differ");
}
}  // namespace

Jet jet_add(const Jet& a, const Jet& b) {
    check_same(a, b);
    std::vector<Real> c(a.coeffs());
    for (int p = 0; p <= a.order(); ++p) c[p] += b[p];
    return Jet(a.center(), std::move(c));
}

Jet jet_mul(const Jet& a, const Jet& b) {
    check_same(a, b);
    int P = a.order();
    std::vector<Real> c(static_cast<size_t>(P) + 1, Real(0));
    for (int i = 0; i <= P; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= P; ++j) c[i + j] += a[i] * b[j];
    }
    return Jet(a.center(), std::move(c));
}

Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }

Jet operator-(const Jet& a) {
    std::vector<Real> c(a.coeffs());
    for (auto& v : c) v = -v;
    return Jet(a.center(), std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) { return jet_add(a, -b); }

Jet operator*(const Real& s, const Jet& a) {
    std::vector<Real> c(a.coeffs());
    for (auto& v : c) v *= s;
    return Jet(a.center(), std::move(c));
}

Jet operator+(const Jet& a, const Real& s) {
    std::vector<Real> c(a.coeffs());
    c[0] += s;
    return Jet(a.center(), std::move(c));
}

Jet jet_recip(const Jet& a) {
    if (a[0] == 0) throw DomainError("reciprocal of a jet with zero constant term");
    int P = a.order();
    std::vector<Real> r(static_cast<size_t>(P) + 1);
    r[0] = 1 / a[0];
    for (int n = 1; n <= P; ++n) {
        Real s = 0;
        for (int k = 1; k <= n; ++k) s += a[k] * r[n - k];
        r[n] = -s * r[0];
    }
    return Jet(a.center(), std::move(r));
}

Jet jet_pow_int(const Jet& a, long n) {
    if (n < 0) return jet_recip(jet_pow_int(a, -n));
    Jet result = Jet::constant(a.center(), Real(1), a.order());
    Jet base = a;
    while (n > 0) {
        if (n & 1) result = jet_mul(result, base);
        n >>= 1;
        if (n) base = jet_mul(base, base);
    }
    return result;
}

Jet jet_exp(const Jet& a) {
    int P = a.order();
    std::vector<Real> u(static_cast<size_t>(P) + 1);
    u[0] = exp(a[0]);
    // (n) u_n = sum_{k=1}^{n} k a_k u_{n-k}
    for (int n = 1; n <= P; ++n) {
        Real s = 0;
        for (int k = 1; k <= n; ++k) s += k * a[k] * u[n - k];
        u[n] = s / n;
    }
    return Jet(a.center(), std::move(u));
}

Jet jet_log(const Jet& a) {
    if (!(a[0] > 0)) throw DomainError("log of a jet with nonpositive constant term");
    int P = a.order();
    std::vector<Real> L(static_cast<size_t>(P) + 1);
    L[0] = log(a[0]);
    for (int n = 1; n <= P; ++n) {
        Real s = 0;
        for (int k = 1; k < n; ++k) s += k * L[k] * a[n - k];
        L[n] = (a[n] - s / n) / a[0];
    }
    return Jet(a.center(), std::move(L));
}

void jet_sincos(const Jet& a, Jet& s_out, Jet& c_out) {
    int P = a.order();
    std::vector<Real> s(static_cast<size_t>(P) + 1), c(static_cast<size_t>(P) + 1);
    s[0] = sin(a[0]);
    c[0] = cos(a[0]);
    // n s_n = sum k a_k c_{n-k},  n c_n = -sum k a_k s_{n-k}
    for (int n = 1; n <= P; ++n) {
        Real ss = 0, cc = 0;
        for (int k = 1; k <= n; ++k) {
            Real ka = k * a[k];
            ss += ka * c[n - k];
            cc -= ka * s[n - k];
        }
        s[n] = ss / n;
        c[n] = cc / n;
    }
    s_out = Jet(a.center(), std::move(s));
    c_out = Jet(a.center(), std::move(c));
}

Jet jet_sin(const Jet& a) {
    Jet s, c;
    jet_sincos(a, s, c);
    return s;
}

Jet jet_cos(const Jet& a) {
    Jet s, c;
    jet_sincos(a, s, c);
    return c;
}

Jet jet_pow_real(const Jet& a, const Real& F) {
    if (!(a[0] > 0)) throw DomainError("real power of a jet with nonpositive constant term");
    int P = a.order();
    std::vector<Real> u(static_cast<size_t>(P) + 1);
    u[0] = pow(a[0], F);
    // n a_0 u_n = sum_{k=1}^{n} (F k - (n-k)) a_k u_{n-k}
    for (int n = 1; n <= P; ++n) {
        Real s = 0;
        for (int k = 1; k <= n; ++k) s += (F * k - (n - k)) * a[k] * u[n - k];
        u[n] = s / (n * a[0]);
    }
    return Jet(a.center(), std::move(u));
}

Jet jet_compose(const Jet& outer, const Jet& inner) {
    if (outer.order() < inner.order()) throw InputError("outer jet order too small for composition");
    const Real& y0 = inner[0];
    Real tol = abs(y0) + 1;
    tol *= pow(Real(2), -static_cast<int>(precision_bits()) + 24);
    if (abs(outer.center() - y0) > tol) throw InputError("jet composition center mismatch");
    int P = inner.order();
    // h = inner - inner_0, then Horner: sum_k outer_k h^k
    std::vector<Real> hc(inner.coeffs());
    hc[0] = 0;
    Jet h(inner.center(), std::move(hc));
    Jet acc = Jet::constant(inner.center(), outer[P], P);
    for (int k = P - 1; k >= 0; --k) acc = jet_mul(acc, h) + outer[k];
    return acc;
}

Jet jet_inverse(const Jet& hj) {
    int P = hj.order();
    if (P >= 1 && hj[1] == 0) throw DomainError("inverse jet needs a nonzero first derivative");
    std::vector<Real> b(static_cast<size_t>(P) + 1, Real(0));
    b[0] = hj.center();
    if (P == 0) return Jet(hj[0], std::move(b));
    b[1] = 1 / hj[1];
    // shifted series H(t) = sum_{k>=1} h_k t^k, find B(s) = sum b_k s^k with H(B(s)) = s
    std::vector<Real> hc(hj.coeffs());
    hc[0] = 0;
    Jet H(Real(0), hc);
    for (int n = 2; n <= P; ++n) {
        std::vector<Real> bc(static_cast<size_t>(P) + 1, Real(0));
        for (int k = 1; k < n; ++k) bc[k] = b[k];
        Jet Bs(Real(0), bc);
        Jet comp = jet_compose(H, Bs);
        b[n] = -comp[n] / hj[1];
    }
    return Jet(hj[0], std::move(b));
}

}  // namespace slowdet
