#include "slowdet/covering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace slowdet {

using nlohmann::ordered_json;

Real vanishing_lhs(int d, const SlowCertificate& cert, const Real& T, const Real& N, const Real& L) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    if (N < start_point(cert)) throw DomainError("N below the validity threshold N(C)");
    if (L < 0) throw InputError("interval length must be nonnegative");
    if (L == 0) return Real(0);
    DegreeData dd = degree_data(d);
    Real rho(dd.rho);
    // in logs: the powers of T and L nearly cancel
    Real lg = Real(2 * d * dd.mu) * log(T) + log(det_constant(d, cert.A, cert.B)) + rho * log(L) - rho * log(N);
    if (cert.C != 0) lg += cert.C * rho * log(log(N));
    return round_up(round_up(exp(lg)));
}

bool vanishing_condition(int d, const SlowCertificate& cert, const Real& T, const Real& N, const Real& L) {
    return vanishing_lhs(d, cert, T, N, L) < 1;
}

CoverPoly covering_polynomial(const std::vector<std::pair<Rational, Rational>>& pts, int d) {
    if (pts.empty()) throw InputError("covering polynomial needs at least one point");
    auto mons = monomials(d);
    const size_t mu = mons.size(), m = pts.size();
    // integer rows: clear denominators of each point's monomial vector
    std::vector<std::vector<Integer>> M(m, std::vector<Integer>(mu));
    for (size_t j = 0; j < m; ++j) {
        const auto& [x, y] = pts[j];
        Integer dx = denominator(x), dy = denominator(y), nx = numerator(x), ny = numerator(y);
        for (size_t i = 0; i < mu; ++i) {
            auto [a, b] = mons[i];
            Integer v = 1;
            for (int k = 0; k < a; ++k) v *= nx;
            for (int k = a; k < d; ++k) v *= dx;
            for (int k = 0; k < b; ++k) v *= ny;
            for (int k = b; k < d; ++k) v *= dy;
            M[j][i] = v;
        }
    }
    // Bareiss elimination to row echelon form
    std::vector<size_t> pivcols;
    Integer prev = 1;
    size_t r = 0;
    for (size_t col = 0; col < mu && r < m; ++col) {
        size_t piv = r;
        while (piv < m && M[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(M[piv], M[r]);
        for (size_t i = r + 1; i < m; ++i) {
            for (size_t k = col + 1; k < mu; ++k) M[i][k] = (M[r][col] * M[i][k] - M[i][col] * M[r][k]) / prev;
            M[i][col] = 0;
        }
        prev = M[r][col];
        pivcols.push_back(col);
        ++r;
    }
    if (r == mu)
        throw InvariantViolation("monomial matrix has full rank " + std::to_string(mu) +
                                 ": no curve of degree " + std::to_string(d) + " through these points");
    std::vector<bool> is_piv(mu, false);
    for (size_t c : pivcols) is_piv[c] = true;
    size_t free_col = 0;
    while (is_piv[free_col]) ++free_col;
    std::vector<Rational> v(mu, Rational(0));
    v[free_col] = 1;
    for (size_t rr = r; rr-- > 0;) {
        size_t pc = pivcols[rr];
        Rational s = 0;
        for (size_t k = pc + 1; k < mu; ++k)
            if (v[k] != 0) s += Rational(M[rr][k]) * v[k];
        v[pc] = -s / Rational(M[rr][pc]);
    }
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, Integer(denominator(q)));
    std::vector<Integer> iv(mu);
    Integer g = 0;
    for (size_t i = 0; i < mu; ++i) {
        iv[i] = numerator(v[i] * Rational(l));
        g = gcd(g, iv[i]);
    }
    size_t lead = 0;
    while (iv[lead] == 0) ++lead;
    if (iv[lead] < 0) g = -g;
    CoverPoly out;
    out.poly.d = d;
    for (auto& z : iv) out.poly.coeffs.emplace_back(z / g);
    out.rank = static_cast<long>(r);
    out.nullity = static_cast<long>(mu - r);
    return out;
}

namespace {

struct TrialOutcome {
    Real det, err, hadamard;
    bool failed = false;
    std::string error;
};

Real det_bound_value(int d, const SlowCertificate& cert, const Real& N, const Real& L) {
    DegreeData dd = degree_data(d);
    Real rho(dd.rho);
    Real v = det_constant(d, cert.A, cert.B) * pow(L, rho) / pow(N, rho);
    if (cert.C != 0) v *= pow(log(N), cert.C * rho);
    return round_up(v);
}

TrialOutcome run_trial(const CurveSpec& c, const std::vector<std::pair<int, int>>& mons, const Real& N,
                       const Real& L, const Real& scale, const std::vector<double>& us) {
    TrialOutcome out;
    const size_t mu = mons.size();
    try {
        std::vector<Real> fx(mu), gx(mu);
        for (size_t j = 0; j < mu; ++j) {
            Real x = N + L * Real(us[j]);
            fx[j] = eval_real(c.f, x) / scale;
            gx[j] = eval_real(c.g, x) / scale;
        }
        std::vector<std::vector<Real>> A(mu, std::vector<Real>(mu));
        for (size_t i = 0; i < mu; ++i)
            for (size_t j = 0; j < mu; ++j) A[i][j] = pow(fx[j], mons[i].first) * pow(gx[j], mons[i].second);
        out.hadamard = 1;
        for (size_t i = 0; i < mu; ++i) {
            Real s = 0;
            for (size_t j = 0; j < mu; ++j) s += A[i][j] * A[i][j];
            out.hadamard *= sqrt(s);
        }
        Real det = 1;
        for (size_t k = 0; k < mu; ++k) {
            size_t p = k;
            for (size_t i = k + 1; i < mu; ++i)
                if (abs(A[i][k]) > abs(A[p][k])) p = i;
            if (A[p][k] == 0) {
                det = 0;
                break;
            }
            if (p != k) {
                std::swap(A[p], A[k]);
                det = -det;
            }
            det *= A[k][k];
            for (size_t i = k + 1; i < mu; ++i) {
                Real f = A[i][k] / A[k][k];
                for (size_t j = k + 1; j < mu; ++j) A[i][j] -= f * A[k][j];
            }
        }
        out.det = det;
        Real m(static_cast<long>(mu));
        out.err = out.hadamard * m * m * m * ldexp(Real(1), static_cast<int>(mu) - static_cast<int>(precision_bits()));
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
    }
    return out;
}

}  // namespace

DetCheckReport determinant_bound_check(const CurveSpec& c, int d, const Real& N, const Real& L, long trials,
                                       unsigned long seed, Parallelism par) {
    if (c.mode != CurveMode::Slow && c.mode != CurveMode::SlowPlus) throw InputError("determinant check needs a slow curve");
    if (!c.cert) throw InputError("curve has no slow certificate");
    if (L < 0) throw InputError("interval length must be nonnegative");
    if (trials < 1) throw InputError("need at least one trial");
    SlowCertificate cert = *c.cert;
    if (N < start_point(cert) || N < cert.a) throw DomainError("N below the start of the slow range");
    Integer M = ceil_to_integer(cert.D);
    if (M < 1) M = 1;
    cert.D = 1;
    auto mons = monomials(d);
    const size_t mu = mons.size();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::vector<double>> samples(static_cast<size_t>(trials), std::vector<double>(mu));
    for (auto& s : samples)
        for (auto& u : s) u = unif(rng);

    DetCheckReport rep;
    rep.d = d;
    rep.N = N;
    rep.L = L;
    rep.trials = trials;
    if (L == 0) {
        // all sample points coincide, so the matrix has equal columns
        rep.bound = 0;
        rep.max_bits = precision_bits();
        return rep;
    }
    std::vector<long> pending(static_cast<size_t>(trials));
    for (long i = 0; i < trials; ++i) pending[static_cast<size_t>(i)] = i;
    unsigned bits = precision_bits();
    const unsigned cap = 16384;
    bool first = true;
    while (!pending.empty()) {
        PrecisionScope scope(bits);
        rep.max_bits = std::max(rep.max_bits, bits);
        Real bound = det_bound_value(d, cert, N, L);
        if (first) rep.bound = bound;
        first = false;
        Real Nr = N, Lr = L, scale = to_real(M);
        std::vector<TrialOutcome> out(pending.size());
        const long np = static_cast<long>(pending.size());
        if (par == Parallelism::OpenMP) {
#pragma omp parallel for schedule(dynamic)
            for (long k = 0; k < np; ++k)
                out[static_cast<size_t>(k)] =
                    run_trial(c, mons, Nr, Lr, scale, samples[static_cast<size_t>(pending[static_cast<size_t>(k)])]);
        } else {
            for (long k = 0; k < np; ++k)
                out[static_cast<size_t>(k)] =
                    run_trial(c, mons, Nr, Lr, scale, samples[static_cast<size_t>(pending[static_cast<size_t>(k)])]);
        }
        std::vector<long> next;
        double needed = 0;
        for (size_t k = 0; k < out.size(); ++k) {
            const auto& o = out[k];
            if (o.failed) throw InputError("determinant trial failed: " + o.error);
            Real ad = abs(o.det);
            bool decided = o.err * 1000 <= bound && (ad + o.err <= bound || ad - o.err > bound);
            if (!decided && bits * 2 > cap) {
                ++rep.unresolved;
                decided = true;
            }
            if (decided) {
                if (ad > bound) ++rep.violations;
                Real ratio = bound > 0 ? ad / bound : Real(0);
                if (ratio > rep.worst_ratio) rep.worst_ratio = ratio;
                continue;
            }
            next.push_back(pending[k]);
            if (o.hadamard > 0 && bound > 0)
                needed = std::max(needed, to_double(log(o.hadamard / bound) / real_log2()) + static_cast<double>(mu) +
                                              3 * std::log2(static_cast<double>(mu)) + 24);
        }
        if (!next.empty()) {
            rep.escalations += static_cast<long>(next.size());
            unsigned nb = bits * 2;
            while (nb < needed && nb * 2 <= cap) nb *= 2;
            bits = nb;
        }
        pending.swap(next);
    }
    return rep;
}

namespace {

using DJet = std::vector<double>;

DJet djet_mul(const DJet& a, const DJet& b) {
    DJet r(a.size(), 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

DJet to_djet(const Jet& j, int order) {
    DJet r(static_cast<size_t>(order) + 1);
    for (int p = 0; p <= order; ++p) r[static_cast<size_t>(p)] = to_double(j[p]);
    return r;
}

}  // namespace

CompactCover compact_cover(const CurveSpec& c, const Real& lo, const Real& hi, const Real& T, int d) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    CompactCover cc;
    cc.d = d;
    cc.T = T;
    if (!(hi > lo)) return cc;
    DegreeData dd = degree_data(d);
    auto mons = monomials(d);
    const int order = static_cast<int>(dd.mu) - 1;
    const double logT = to_double(log(T));
    const double rho = static_cast<double>(dd.rho);
    for (Real blo = lo; blo < hi; blo += 1) {
        Real bhi = std::min(blo + 1, hi);
        std::vector<std::vector<double>> sig(mons.size(), std::vector<double>(static_cast<size_t>(order) + 1, 0.0));
        for (int gi = 0; gi < cc.grid_per_block; ++gi) {
            Real t = blo + (bhi - blo) * gi / (cc.grid_per_block - 1);
            DJet jf, jg;
            try {
                jf = to_djet(eval_jet(c.f, t, order), order);
                jg = to_djet(eval_jet(c.g, t, order), order);
            } catch (const InputError& e) {
                throw InputError("derivative sup estimation failed at t = " + real_to_string(t) + ": " + e.what());
            }
            std::vector<DJet> fp{DJet(static_cast<size_t>(order) + 1, 0.0)}, gp{fp[0]};
            fp[0][0] = gp[0][0] = 1;
            for (int k = 1; k <= d; ++k) {
                fp.push_back(djet_mul(fp.back(), jf));
                gp.push_back(djet_mul(gp.back(), jg));
            }
            for (size_t i = 0; i < mons.size(); ++i) {
                DJet m = djet_mul(fp[static_cast<size_t>(mons[i].first)], gp[static_cast<size_t>(mons[i].second)]);
                for (int p = 0; p <= order; ++p) {
                    double v = std::abs(m[static_cast<size_t>(p)]);
                    if (!std::isfinite(v))
                        throw InputError("derivative sup estimation overflowed at t = " + real_to_string(t));
                    sig[i][static_cast<size_t>(p)] = std::max(sig[i][static_cast<size_t>(p)], v);
                }
            }
        }
        double logP = 0;
        for (const auto& row : sig) {
            double s = 0;
            for (double v : row) s += v;
            logP += std::log(cc.sup_safety * std::max(s, 1e-300));
        }
        // T^(2 d mu) L^rho prod_i sum_p sigma_{i,p} < 1
        double logL = -(2.0 * d * static_cast<double>(dd.mu) * logT + logP) / rho;
        Real len = bhi - blo;
        Real L = Real(std::exp(logL) * (1 - 1e-9));
        CompactBlock b;
        b.lo = blo;
        b.hi = bhi;
        b.log_sup_product = logP;
        if (L >= len) {
            b.L = len;
            b.count = 1;
        } else {
            b.L = L;
            b.count = ceil_to_integer(len / L);
        }
        cc.intervals += b.count;
        cc.blocks.push_back(b);
    }
    return cc;
}

namespace {

Real bezout_at_end(const CurveSpec& c, const Real& lo, const Real& hi, int d) {
    if (!c.bezout) throw InputError("curve '" + c.name + "' has no Bezout formula");
    BezoutFormula b = *c.bezout;
    if (b.id == BezoutId::SinC) b.span = hi - lo;
    // the expanding spiral is parametrized by log of the spiral parameter
    Real x = c.range == RangeKind::SpiralRadius ? exp(hi) : hi;
    return round_up(b(std::max(x, Real(1)), d));
}

struct Slot {
    std::string kind;
    long index;
    Real left, right;
};

Slot compact_slot(const CompactCover& cc, const Real& t) {
    long k = 0;
    while (k + 1 < static_cast<long>(cc.blocks.size()) && t >= cc.blocks[static_cast<size_t>(k) + 1].lo) ++k;
    const auto& b = cc.blocks[static_cast<size_t>(k)];
    Integer j = floor_to_integer((t - b.lo) / b.L);
    if (j < 0) j = 0;
    if (j >= b.count) j = b.count - 1;
    long base = 0;
    for (long i = 0; i < k; ++i) base += cc.blocks[static_cast<size_t>(i)].count.convert_to<long>();
    Real left = b.lo + to_real(j) * b.L;
    return {"compact", base + j.convert_to<long>(), left, std::min(left + b.L, b.hi)};
}

void cover_interval(CoveringPlan& plan, const CurveSpec& c, CoverInterval& iv) {
    std::vector<std::pair<Rational, Rational>> cert_pts, cand_pts;
    std::vector<size_t> cand_ids;
    for (size_t id : iv.point_ids) {
        const auto& p = plan.points[id];
        auto mp = to_method(c, p.x, p.y);
        if (p.status == PointStatus::Certified) cert_pts.push_back(mp);
        else {
            cand_pts.push_back(mp);
            cand_ids.push_back(id);
        }
    }
    const auto& basis = cert_pts.empty() ? cand_pts : cert_pts;
    iv.few_points = static_cast<long>(cert_pts.size()) < plan.mu;
    try {
        CoverPoly cp = covering_polynomial(basis, plan.d);
        iv.poly = cp.poly;
        iv.rank = cp.rank;
    } catch (const InvariantViolation& e) {
        if (!cert_pts.empty()) {
            iv.vanishes = false;
            plan.failures.push_back("interval " + std::to_string(iv.index) + " [" + real_to_string(iv.left) + ", " +
                                    real_to_string(iv.right) + "): " + e.what());
        }
        return;
    }
    for (const auto& mp : cert_pts)
        if (iv.poly->eval(mp.first, mp.second) != 0) iv.vanishes = false;
    if (!iv.vanishes)
        plan.failures.push_back("interval " + std::to_string(iv.index) + ": polynomial misses a certified point");
    for (const auto& mp : cand_pts) iv.candidate_on_poly.push_back(iv.poly->eval(mp.first, mp.second) == 0);
}

void group_points(CoveringPlan& plan, const std::vector<size_t>& ids, const std::function<Slot(const Real&)>& slot_of,
                  const std::function<bool(const Slot&, const Real&)>& inside) {
    std::optional<Slot> cur;
    for (size_t id : ids) {
        const Real& t = *plan.points[id].parameter;
        if (!cur || !inside(*cur, t)) {
            cur = slot_of(t);
            CoverInterval iv;
            iv.kind = cur->kind;
            iv.index = cur->index;
            iv.left = cur->left;
            iv.right = cur->right;
            plan.intervals.push_back(iv);
        }
        plan.intervals.back().point_ids.push_back(id);
    }
}

}  // namespace

CoveringPlan build_covering_plan(const CurveSpec& c, long T, const ScanResult* scan) {
    if (T < 1) throw InputError("height threshold must be >= 1");
    CoveringPlan plan;
    plan.curve = c.name;
    plan.mode = c.mode;
    plan.T = T;
    if (c.mode == CurveMode::Composite) {
        plan.partition = "composite";
        plan.verified = true;
        for (const auto& b : c.branches) {
            plan.branches.push_back(build_covering_plan(b, T));
            const auto& bp = plan.branches.back();
            plan.verified = plan.verified && bp.verified;
            plan.interval_count += bp.interval_count + (bp.compact ? bp.compact->intervals : Integer(0));
            for (const auto& f : bp.failures) plan.failures.push_back(b.name + ": " + f);
        }
        return plan;
    }
    ScanResult own;
    if (!scan) {
        own = scan_points(c, T);
        scan = &own;
    }
    plan.points = scan->points;
    for (const auto& p : plan.points)
        if (!p.parameter) throw InputError("covering needs the curve parameter of every point");
    std::vector<size_t> order(plan.points.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return *plan.points[a].parameter < *plan.points[b].parameter; });
    plan.T_method = Real(T) * to_real(height_factor(c));

    if (c.mode == CurveMode::Compact) {
        plan.partition = "compact";
        plan.d = degree_schedule(plan.T_method);
        plan.mu = degree_data(plan.d).mu;
        auto [lo, hi] = param_range(c, Real(T));
        plan.N = lo;
        plan.phiT = hi;
        plan.compact = compact_cover(c, lo, hi, plan.T_method, plan.d);
        const auto& cc = *plan.compact;
        group_points(plan, order, [&](const Real& t) { return compact_slot(cc, t); },
                     [](const Slot& s, const Real& t) { return t >= s.left && t < s.right; });
    } else {
        BoundReport r = global_bound(c, Real(T));
        plan.d = r.d;
        plan.mu = r.dd.mu;
        plan.N = r.start;
        plan.phiT = r.phiT;
        plan.interval_count_bound = r.nT;
        CoveringWalker w(r.cert, r.d, r.T_eff);
        std::vector<size_t> head, body;
        for (size_t id : order) {
            const Real& t = *plan.points[id].parameter;
            if (t < plan.N) head.push_back(id);
            else if (t > plan.phiT) plan.failures.push_back("point with parameter beyond phi(T): " + real_to_string(t));
            else body.push_back(id);
        }
        if (c.lo < plan.N) {
            plan.compact = compact_cover(c, c.lo, plan.N, plan.T_method, plan.d);
            const auto& cc = *plan.compact;
            group_points(plan, head, [&](const Real& t) { return compact_slot(cc, t); },
                         [](const Slot& s, const Real& t) { return t >= s.left && t < s.right; });
        }
        bool walkable = r.cert.C == 0 || r.nT <= 2'000'000;
        if (walkable) {
            plan.partition = "covering_sequence";
            plan.interval_count = plan.phiT > plan.N ? Integer(w.count_below(plan.phiT)) : Integer(0);
            CoveringWalker loc(r.cert, r.d, r.T_eff);
            group_points(plan, body,
                         [&](const Real& t) {
                             long n = loc.locate(t);
                             Real left = loc.term(n);
                             Real right = loc.term(n + 1);
                             return Slot{"slow", n, left, right};
                         },
                         [](const Slot& s, const Real& t) { return t >= s.left && t < s.right; });
        } else {
            // too many terms to walk: intervals [t, t + L(t)] anchored at the points themselves
            plan.partition = "anchored";
            long count = 0;
            group_points(plan, body,
                         [&](const Real& t) {
                             Real L = interval_length(r.dd, r.cert, r.T_eff, t);
                             return Slot{"anchored", count++, t, t + L};
                         },
                         [](const Slot& s, const Real& t) { return t >= s.left && t < s.right; });
            plan.interval_count = count;
        }
        plan.count_ok = plan.interval_count <= plan.interval_count_bound;
        if (!plan.count_ok) plan.failures.push_back("interval count exceeds interval_count_bound");
        for (auto& iv : plan.intervals) {
            if (iv.kind == "compact") continue;
            Real L = interval_length(r.dd, r.cert, r.T_eff, iv.left);
            iv.condition_ok = vanishing_condition(r.d, r.cert, r.T_eff, iv.left, L);
            if (!iv.condition_ok)
                plan.failures.push_back("vanishing condition fails on interval " + std::to_string(iv.index));
        }
    }
    for (auto& iv : plan.intervals) cover_interval(plan, c, iv);
    plan.verified = plan.failures.empty();
    return plan;
}

CurveBound curve_bound(const CurveSpec& c, long T) {
    CurveBound cb;
    if (c.mode == CurveMode::Composite) {
        for (const auto& b : c.branches) {
            CurveBound sub = curve_bound(b, T);
            for (auto& p : sub.parts) {
                p.name = b.name + "/" + p.name;
                cb.parts.push_back(p);
            }
            cb.total += sub.total;
        }
        return cb;
    }
    Real Tm = Real(T) * to_real(height_factor(c));
    if (c.mode == CurveMode::Compact) {
        int d = degree_schedule(Tm);
        auto [lo, hi] = param_range(c, Real(T));
        CompactCover cc = compact_cover(c, lo, hi, Tm, d);
        BoundPart p{"compact", "compact", cc.intervals, bezout_at_end(c, lo, hi, d), 0};
        p.total = round_up(to_real(p.intervals) * p.bezout);
        cb.total = p.total;
        cb.parts.push_back(p);
        return cb;
    }
    BoundReport r = global_bound(c, Real(T));
    cb.theorem = r;
    cb.parts.push_back({"theorem", "theorem", r.nT, r.bezout, r.total});
    cb.total = r.total;
    if (c.lo < r.start) {
        CompactCover cc = compact_cover(c, c.lo, r.start, Tm, r.d);
        BoundPart p{"head", "head", cc.intervals, bezout_at_end(c, c.lo, r.start, r.d), 0};
        p.total = round_up(to_real(p.intervals) * p.bezout);
        cb.total += p.total;
        cb.parts.push_back(p);
    }
    cb.total = round_up(cb.total);
    return cb;
}

ordered_json poly_to_json(const Poly2& p) {
    ordered_json j;
    j["d"] = p.d;
    auto mons = monomials(p.d);
    auto terms = ordered_json::array();
    for (size_t i = 0; i < mons.size(); ++i) {
        if (p.coeffs[i] == 0) continue;
        terms.push_back({{"x", mons[i].first}, {"y", mons[i].second}, {"c", numerator(p.coeffs[i]).str()}});
    }
    j["terms"] = terms;
    return j;
}

namespace {

ordered_json compact_to_json(const CompactCover& cc) {
    ordered_json j;
    j["d"] = cc.d;
    j["T_method"] = real_to_string(cc.T);
    j["intervals"] = cc.intervals.str();
    j["blocks"] = cc.blocks.size();
    j["sup_safety"] = cc.sup_safety;
    j["grid_per_block"] = cc.grid_per_block;
    if (!cc.blocks.empty()) {
        Real minL = cc.blocks.front().L;
        for (const auto& b : cc.blocks) minL = std::min(minL, b.L);
        j["min_subinterval"] = real_to_string(minL);
    }
    return j;
}

}  // namespace

ordered_json plan_to_json(const CoveringPlan& p) {
    ordered_json j;
    j["curve"] = p.curve;
    j["mode"] = mode_name(p.mode);
    j["T"] = p.T;
    j["partition"] = p.partition;
    j["verified"] = p.verified;
    if (p.mode == CurveMode::Composite) {
        j["interval_count"] = p.interval_count.str();
        auto arr = ordered_json::array();
        for (const auto& b : p.branches) arr.push_back(plan_to_json(b));
        j["branches"] = arr;
        j["failures"] = p.failures;
        return j;
    }
    j["T_method"] = real_to_string(p.T_method);
    j["d"] = p.d;
    j["mu"] = p.mu;
    j["N"] = real_to_string(p.N);
    j["phiT"] = real_to_string(p.phiT);
    if (p.mode != CurveMode::Compact) {
        j["interval_count"] = p.interval_count.str();
        j["interval_count_bound"] = p.interval_count_bound.str();
        j["count_ok"] = p.count_ok;
    }
    if (p.compact) j["compact"] = compact_to_json(*p.compact);
    auto ivs = ordered_json::array();
    for (const auto& iv : p.intervals) {
        ordered_json k;
        k["kind"] = iv.kind;
        k["index"] = iv.index;
        k["left"] = real_to_string(iv.left);
        k["right"] = real_to_string(iv.right);
        k["points"] = iv.point_ids;
        if (iv.poly) k["polynomial"] = poly_to_json(*iv.poly);
        else k["polynomial"] = nullptr;
        k["rank"] = iv.rank;
        k["fewer_than_mu"] = iv.few_points;
        k["vanishes"] = iv.vanishes;
        if (iv.kind != "compact") k["condition_ok"] = iv.condition_ok;
        if (!iv.candidate_on_poly.empty()) k["candidates_on_polynomial"] = iv.candidate_on_poly;
        ivs.push_back(k);
    }
    j["intervals"] = ivs;
    auto pts = ordered_json::array();
    for (size_t i = 0; i < p.points.size(); ++i) {
        const auto& q = p.points[i];
        pts.push_back({{"id", i},
                       {"x", rational_to_string(q.x)},
                       {"y", rational_to_string(q.y)},
                       {"status", status_name(q.status)}});
    }
    j["points"] = pts;
    j["failures"] = p.failures;
    return j;
}

ordered_json curve_bound_to_json(const CurveBound& b) {
    ordered_json j;
    j["total"] = real_to_string(b.total);
    auto parts = ordered_json::array();
    for (const auto& p : b.parts)
        parts.push_back({{"name", p.name},
                         {"kind", p.kind},
                         {"intervals", p.intervals.str()},
                         {"bezout", real_to_string(p.bezout)},
                         {"total", real_to_string(p.total)}});
    j["parts"] = parts;
    if (b.theorem) j["theorem"] = bound_report_to_json(*b.theorem);
    return j;
}

ordered_json det_report_to_json(const DetCheckReport& r) {
    ordered_json j;
    j["d"] = r.d;
    j["N"] = real_to_string(r.N);
    j["L"] = real_to_string(r.L);
    j["trials"] = r.trials;
    j["violations"] = r.violations;
    j["bound"] = real_to_string(r.bound);
    j["worst_ratio"] = real_to_string(r.worst_ratio);
    j["max_bits"] = r.max_bits;
    j["escalations"] = r.escalations;
    j["unresolved"] = r.unresolved;
    return j;
}

}  // namespace slowdet
