#include "slowdet/points.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace slowdet {

Integer point_height(const Rational& x, const Rational& y) {
    Integer h = abs(numerator(x));
    for (const Integer& v : {Integer(denominator(x)), Integer(abs(numerator(y))), Integer(denominator(y))})
        if (v > h) h = v;
    return h;
}

std::vector<std::pair<long, long>> enumerate_rationals_small(long T) {
    if (T < 1) throw InputError("height bound must be >= 1");
    // Farey sequence of order T on [0, 1]
    std::vector<std::pair<long, long>> farey{{0, 1}};
    long a = 0, b = 1, c = 1, d = T;
    while (c <= d) {
        farey.emplace_back(c, d);
        long k = (T + b) / d;
        long nc = k * c - a, nd = k * d - b;
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    std::vector<std::pair<long, long>> pos(farey.begin() + 1, farey.end());
    for (size_t i = farey.size() - 1; i-- > 1;) pos.emplace_back(farey[i].second, farey[i].first);
    std::vector<std::pair<long, long>> all;
    all.reserve(2 * pos.size() + 1);
    for (size_t i = pos.size(); i-- > 0;) all.emplace_back(-pos[i].first, pos[i].second);
    all.emplace_back(0, 1);
    all.insert(all.end(), pos.begin(), pos.end());
    return all;
}

std::vector<Rational> enumerate_rationals(long T) {
    auto small = enumerate_rationals_small(T);
    std::vector<Rational> out;
    out.reserve(small.size());
    for (auto [p, q] : small) out.emplace_back(p, q);
    return out;
}

std::optional<Rational> detect_rational(const Real& value, const Real& eps, long T) {
    if (T < 1) throw InputError("height bound must be >= 1");
    Real limit = 1 / (4 * Real(T) * Real(T));
    if (!(eps < limit)) throw InputError("detection tolerance too large for uniqueness at this height");
    if (!isfinite(value)) return std::nullopt;
    Integer h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    Real x = value;
    for (int it = 0; it < 400; ++it) {
        Real fl = floor(x);
        Integer ai = floor_to_integer(fl);
        Integer h = ai * h1 + h2, k = ai * k1 + k2;
        if (k > T) break;
        if (abs(h) <= T && abs(value * to_real(k) - to_real(h)) <= eps * to_real(k)) return Rational(h, k);
        Real frac = x - fl;
        if (frac == 0) break;
        x = 1 / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    return std::nullopt;
}

std::optional<std::pair<long, long>> detect_rational_d(double value, double tol, long T) {
    if (!std::isfinite(value) || std::abs(value) > 2.0 * static_cast<double>(T)) return std::nullopt;
    long h2 = 0, h1 = 1, k2 = 1, k1 = 0;
    double x = value;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (std::abs(fl) > 4.0 * static_cast<double>(T) + 4) break;
        long ai = static_cast<long>(fl);
        long h = ai * h1 + h2, k = ai * k1 + k2;
        if (k > T) break;
        if (std::labs(h) <= T && std::abs(value - static_cast<double>(h) / static_cast<double>(k)) <= tol)
            return std::make_pair(h, k);
        double frac = x - fl;
        if (frac <= 0) break;
        x = 1 / frac;
        h2 = h1;
        h1 = h;
        k2 = k1;
        k1 = k;
    }
    return std::nullopt;
}

Real scan_epsilon(long T) {
    Real cap = 1 / (8 * Real(T) * Real(T));
    Real prec_eps = ldexp(Real(1), -static_cast<int>(precision_bits() / 2));
    return std::min(cap, prec_eps);
}

namespace {

double prefilter_tol(double y, long T) {
    double t = static_cast<double>(T);
    return std::min(1e-9 * std::max(1.0, std::abs(y)), 0.25 / (t * t));
}

using PointMap = std::map<std::pair<Rational, Rational>, RationalPoint>;

void merge_point(PointMap& m, RationalPoint p) {
    auto key = std::make_pair(p.x, p.y);
    auto it = m.find(key);
    if (it == m.end()) {
        m.emplace(key, std::move(p));
        return;
    }
    if (p.status == PointStatus::Certified) {
        it->second.status = PointStatus::Certified;
        if (!it->second.parameter) it->second.parameter = p.parameter;
    }
}

ScanResult finish(PointMap& m, ScanResult r) {
    r.points.clear();
    r.certified = r.candidates = 0;
    for (auto& [k, p] : m) {
        if (p.status == PointStatus::Certified) ++r.certified;
        else ++r.candidates;
        r.points.push_back(p);
    }
    return r;
}

void merge_known(PointMap& m, const CurveSpec& c, long T, const Real& lo, const Real& hi) {
    for (auto& kp : known_points(c, T)) {
        if (kp.param < lo || kp.param > hi) continue;
        merge_point(m, {kp.X, kp.Y, point_height(kp.X, kp.Y), kp.param, PointStatus::Certified});
    }
}

bool is_known(const std::vector<KnownPoint>& kps, const Rational& X, const Rational& Y) {
    for (const auto& k : kps)
        if (k.X == X && k.Y == Y) return true;
    return false;
}

constexpr unsigned kEscalationCap = 4096;

// A detected value stays a candidate only while it remains within the detection threshold
// as the precision doubles; otherwise the curve provably misses the rational.
template <class F>
bool survives_escalation(F recompute, const Rational& y) {
    for (unsigned bits = 2 * precision_bits(); bits <= kEscalationCap; bits *= 2) {
        PrecisionScope scope(bits);
        std::optional<Real> v;
        try {
            v = recompute();
        } catch (const InputError&) {
            return true;
        }
        if (!v) return true;
        if (abs(*v - to_real(y)) > ldexp(Real(1), -static_cast<int>(bits / 2))) return false;
    }
    return true;
}

}  // namespace

std::vector<size_t> graph_prefilter(const DoubleFn& fn, const std::vector<double>& xs, long T, Parallelism par) {
    std::vector<char> hit(xs.size(), 0);
    const long n = static_cast<long>(xs.size());
    auto body = [&](long i) {
        double y = fn(xs[static_cast<size_t>(i)]);
        if (!std::isfinite(y)) {
            hit[static_cast<size_t>(i)] = 2;
            return;
        }
        if (detect_rational_d(y, prefilter_tol(y, T), T)) hit[static_cast<size_t>(i)] = 1;
    };
    if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) body(i);
    } else {
        for (long i = 0; i < n; ++i) body(i);
    }
    std::vector<size_t> out;
    for (size_t i = 0; i < hit.size(); ++i)
        if (hit[i]) out.push_back(i);
    return out;
}

Real scan_upper(const CurveSpec& c, long T) {
    if (c.mode == CurveMode::Compact) return param_range(c, Real(T)).second;
    if (!c.phi) throw InputError("curve has no height control function; the scan range is unbounded");
    return std::max((*c.phi)(Real(T)), c.lo);
}

ScanResult scan_graph_points(const CurveSpec& c, long T, std::optional<std::pair<Real, Real>> window, Parallelism par) {
    if (c.graph_coord < 0 || c.mode == CurveMode::Composite) throw InputError("graph scan needs a graph curve");
    if (T < 1) throw InputError("height bound must be >= 1");
    Real lo, hi;
    if (c.mode == CurveMode::Compact) std::tie(lo, hi) = param_range(c, Real(T));
    else {
        lo = c.lo;
        hi = scan_upper(c, T);
    }
    if (window) {
        if (c.mode != CurveMode::Compact && window->first < c.lo) throw InputError("scan window leaves the curve domain");
        lo = window->first;
        hi = window->second;
    }
    ScanResult res;
    Expr other = c.graph_coord == 0 ? display_y(c) : display_x(c);
    DoubleFn fn(other);
    auto all = enumerate_rationals_small(T);
    std::vector<std::pair<long, long>> sel;
    std::vector<double> xs;
    double dlo = to_double(lo), dhi = to_double(hi);
    for (auto [p, q] : all) {
        double v = static_cast<double>(p) / static_cast<double>(q);
        if (v < dlo - 1e-9 * std::max(1.0, std::abs(dlo)) || v > dhi + 1e-9 * std::max(1.0, std::abs(dhi))) continue;
        Rational r(p, q);
        Real rv = to_real(r);
        if (rv < lo || rv > hi) continue;
        sel.emplace_back(p, q);
        xs.push_back(v);
    }
    res.evaluations = static_cast<long>(xs.size());
    auto hits = graph_prefilter(fn, xs, T, par);
    auto kps = known_points(c, T);
    Real eps = scan_epsilon(T);
    PointMap m;
    for (size_t i : hits) {
        Rational r(sel[i].first, sel[i].second);
        Real t = to_real(r);
        Real v;
        try {
            v = eval_real(other, t);
        } catch (const InputError&) {
            ++res.evaluation_failures;
            continue;
        }
        if (!isfinite(v)) {
            ++res.evaluation_failures;
            continue;
        }
        auto y = detect_rational(v, eps, T);
        if (!y) continue;
        Rational X = c.graph_coord == 0 ? r : *y, Y = c.graph_coord == 0 ? *y : r;
        Integer h = point_height(X, Y);
        if (h > T) continue;
        auto exact = eval_exact(other, r);
        bool cert = (exact && *exact == *y) || is_known(kps, X, Y);
        if (!cert && !survives_escalation([&]() -> std::optional<Real> { return eval_real(other, to_real(r)); }, *y))
            continue;
        merge_point(m, {X, Y, h, t, cert ? PointStatus::Certified : PointStatus::Candidate});
    }
    merge_known(m, c, T, lo, hi);
    res.notes.push_back("graph scan over " + std::to_string(xs.size()) + " rational abscissae");
    return finish(m, std::move(res));
}

namespace {

// Refines X(t) = r from a double bracket to working precision.
std::optional<Real> newton_refine(const Expr& X, const Rational& r, double t_start, const Real& lo, const Real& hi,
                                  std::optional<Real> start = std::nullopt) {
    Real t = start ? *start : Real(t_start), target = to_real(r);
    Real tol = ldexp(Real(1), -static_cast<int>(precision_bits()) + 8);
    for (int it = 0; it < 40; ++it) {
        Jet j = eval_jet(X, t, 1);
        if (j[1] == 0) return std::nullopt;
        Real step = (j[0] - target) / j[1];
        t -= step;
        if (t < lo || t > hi) return std::nullopt;
        if (abs(step) <= tol * std::max(Real(1), abs(t))) return t;
    }
    return std::nullopt;
}

}  // namespace

ScanResult scan_parametric_points(const CurveSpec& c, long T, int resolution) {
    if (c.mode == CurveMode::Composite) return scan_points(c, T, resolution);
    if (T < 1) throw InputError("height bound must be >= 1");
    if (resolution < 2) throw InputError("scan resolution must be at least 2");
    Real lo, hi;
    if (c.mode == CurveMode::Compact) std::tie(lo, hi) = param_range(c, Real(T));
    else {
        lo = c.lo;
        hi = scan_upper(c, T);
    }
    ScanResult res;
    Expr Xe = display_x(c), Ye = display_y(c);
    DoubleFn X(Xe), Y(Ye);
    auto rats = enumerate_rationals_small(T);
    std::vector<double> rd;
    rd.reserve(rats.size());
    for (auto [p, q] : rats) rd.push_back(static_cast<double>(p) / static_cast<double>(q));

    const int n = resolution;
    double dlo = to_double(lo), dhi = to_double(hi);
    bool logspace = dlo > 0;
    std::vector<double> ts(static_cast<size_t>(n)), xv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = static_cast<double>(i) / (n - 1);
        ts[static_cast<size_t>(i)] = logspace ? dlo * std::pow(dhi / dlo, s) : dlo + (dhi - dlo) * s;
    }
    ts.front() = dlo;
    ts.back() = dhi;
    for (int i = 0; i < n; ++i) xv[static_cast<size_t>(i)] = X(ts[static_cast<size_t>(i)]);
    res.evaluations = n;

    auto kps = known_points(c, T);
    Real eps = scan_epsilon(T);
    PointMap m;
    for (int i = 0; i + 1 < n; ++i) {
        double t0 = ts[static_cast<size_t>(i)], t1 = ts[static_cast<size_t>(i) + 1];
        double x0 = xv[static_cast<size_t>(i)], x1 = xv[static_cast<size_t>(i) + 1];
        if (!std::isfinite(x0) || !std::isfinite(x1)) {
            ++res.evaluation_failures;
            continue;
        }
        double a = std::min(x0, x1), b = std::max(x0, x1);
        auto first = std::lower_bound(rd.begin(), rd.end(), a);
        auto last = std::upper_bound(rd.begin(), rd.end(), b);
        for (auto it = first; it != last; ++it) {
            double r = *it;
            double s0 = x0 - r, s1 = x1 - r;
            bool cross = (s0 < 0 && s1 > 0) || (s0 > 0 && s1 < 0) || s1 == 0 || (i == 0 && s0 == 0);
            if (!cross) continue;
            double troot;
            if (s0 == 0) troot = t0;
            else if (s1 == 0) troot = t1;
            else {
                std::uintmax_t iters = 80;
                auto g = [&](double t) { return X(t) - r; };
                auto br = boost::math::tools::toms748_solve(g, t0, t1, s0, s1,
                                                            boost::math::tools::eps_tolerance<double>(50), iters);
                res.evaluations += static_cast<long>(iters);
                troot = 0.5 * (br.first + br.second);
            }
            double yd = Y(troot);
            ++res.evaluations;
            if (!std::isfinite(yd)) {
                ++res.evaluation_failures;
                continue;
            }
            // a loose prefilter: the double root only fixes Y to a few ulps times the local slope
            double tol = std::min(1e-7 * std::max(1.0, std::abs(yd)), 0.25 / (static_cast<double>(T) * T));
            if (!detect_rational_d(yd, tol, T)) continue;
            auto& pq = rats[static_cast<size_t>(it - rd.begin())];
            Rational rr(pq.first, pq.second);
            auto tr = newton_refine(Xe, rr, troot, lo, hi);
            if (!tr) {
                ++res.evaluation_failures;
                continue;
            }
            Real yv;
            try {
                yv = eval_real(Ye, *tr);
            } catch (const InputError&) {
                ++res.evaluation_failures;
                continue;
            }
            auto y = detect_rational(yv, eps, T);
            if (!y) continue;
            Integer h = point_height(rr, *y);
            if (h > T) continue;
            bool cert = is_known(kps, rr, *y);
            if (!cert) {
                std::string tstr = real_to_string(*tr);
                auto again = [&]() -> std::optional<Real> {
                    auto t2 = newton_refine(Xe, rr, 0, lo, hi, parse_real(tstr));
                    if (!t2) return std::nullopt;
                    return eval_real(Ye, *t2);
                };
                if (!survives_escalation(again, *y)) continue;
            }
            merge_point(m, {rr, *y, h, *tr, cert ? PointStatus::Certified : PointStatus::Candidate});
        }
    }
    // exact identities at a rational start of the range
    Rational qlo = to_rational(lo);
    if (to_real(qlo) == lo) {
        auto ex = eval_exact(Xe, qlo), ey = eval_exact(Ye, qlo);
        if (ex && ey && point_height(*ex, *ey) <= T)
            merge_point(m, {*ex, *ey, point_height(*ex, *ey), lo, PointStatus::Certified});
    }
    merge_known(m, c, T, lo, hi);
    res.notes.push_back("parametric scan with " + std::to_string(n) +
                        " grid points; counts are lower bounds (crossings inside one grid cell may be missed)");
    return finish(m, std::move(res));
}

ScanResult scan_points(const CurveSpec& c, long T, int resolution) {
    if (c.mode != CurveMode::Composite) {
        if (c.graph_coord >= 0) return scan_graph_points(c, T);
        return scan_parametric_points(c, T, resolution);
    }
    PointMap m;
    ScanResult total;
    for (const auto& b : c.branches) {
        ScanResult r = scan_points(b, T, resolution);
        for (auto& p : r.points) merge_point(m, p);
        total.evaluations += r.evaluations;
        total.evaluation_failures += r.evaluation_failures;
        for (auto& note : r.notes) total.notes.push_back(b.name + ": " + note);
    }
    return finish(m, std::move(total));
}

std::string status_name(PointStatus s) { return s == PointStatus::Certified ? "certified" : "candidate"; }

void write_points_csv(std::ostream& os, const std::vector<RationalPoint>& pts) {
    os << "x_num,x_den,y_num,y_den,height,parameter,status\n";
    for (const auto& p : pts) {
        os << numerator(p.x) << ',' << denominator(p.x) << ',' << numerator(p.y) << ',' << denominator(p.y) << ','
           << p.height << ',' << (p.parameter ? real_to_string(*p.parameter) : std::string()) << ','
           << status_name(p.status) << '\n';
    }
}

}  // namespace slowdet
