#include "slowdet/poly.hpp"

#include <cmath>

namespace slowdet {

std::vector<std::pair<int, int>> monomials(int d) {
    if (d < 0) throw InputError("negative degree");
    std::vector<std::pair<int, int>> m;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j) m.emplace_back(i, j);
    return m;
}

bool Poly2::is_zero() const {
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

namespace {
template <class V>
V eval_impl(const Poly2& P, const V& x, const V& y, V (*conv)(const Rational&)) {
    auto mons = monomials(P.d);
    std::vector<V> xp(static_cast<size_t>(P.d) + 1), yp(static_cast<size_t>(P.d) + 1);
    xp[0] = V(1);
    yp[0] = V(1);
    for (int k = 1; k <= P.d; ++k) {
        xp[k] = xp[k - 1] * x;
        yp[k] = yp[k - 1] * y;
    }
    V s(0);
    for (size_t m = 0; m < mons.size(); ++m) {
        if (P.coeffs[m] == 0) continue;
        s += conv(P.coeffs[m]) * xp[mons[m].first] * yp[mons[m].second];
    }
    return s;
}

Rational id(const Rational& q) { return q; }
Real as_real(const Rational& q) { return to_real(q); }
double as_double(const Rational& q) { return q.convert_to<double>(); }
}  // namespace

Rational Poly2::eval(const Rational& x, const Rational& y) const { return eval_impl<Rational>(*this, x, y, id); }
Real Poly2::eval(const Real& x, const Real& y) const { return eval_impl<Real>(*this, x, y, as_real); }
double Poly2::eval(double x, double y) const { return eval_impl<double>(*this, x, y, as_double); }

}  // namespace slowdet
