#pragma once

#include "slowdet/expr.hpp"
#include "slowdet/poly.hpp"

#include <json.hpp>

#include <string>
#include <utility>

namespace slowdet {

enum class BezoutId { Spiral, SinlogGraph, Zeta, Gamma, Exp2, SinC, Custom };

std::string bezout_id_name(BezoutId id);
BezoutId bezout_id_from_name(const std::string& s);

// B(x, d): dominates the number of curve points on the parameter range [a, x]
// lying on an algebraic curve of degree d.
struct BezoutFormula {
    BezoutId id = BezoutId::Custom;
    Real F = 1, G = 1;  // spiral
    int ell = 1, q = 1;  // spiral, sinlog
    Real omega = 1;      // angular frequency in the spiral
    Real c = 1;          // zeta/gamma constant, frequency of sin(c x)
    Real span = 0;       // parameter length for sin(c x)
    // custom: k log_+^ea(x) d^eb
    Real k = 1;
    int ea = 1, eb = 3;

    Real operator()(const Real& x, int d) const;
    // (a, b) exponents of (log T, loglog T) for B(phi(T), log T), given the shape of log phi(T)
    std::pair<int, int> shape(std::pair<int, int> log_phi_shape) const;
};

bool operator==(const BezoutFormula& x, const BezoutFormula& y);

BezoutFormula spiral_bezout(const Real& F, const Real& G, int ell, int q, const Real& omega = Real(1));
BezoutFormula sinlog_bezout(int ell);
BezoutFormula zeta_bezout(const Real& c);
BezoutFormula gamma_bezout(const Real& c);
BezoutFormula exp2_bezout();
BezoutFormula sinc_bezout(const Real& c, const Real& span);

// The zeta formula in its original two-argument form c (log T + phi log phi) log T.
Real zeta_bezout_value(const Real& c, const Real& T, const Real& phiT, int d);

nlohmann::ordered_json bezout_to_json(const BezoutFormula& b);
BezoutFormula bezout_from_json(const nlohmann::json& j);

// Sign changes of t -> P(X(t), Y(t)) over [lo, hi] (log-spaced grid when lo > 0), taking the
// larger count of the grid with `resolution` points and its doubling.  A lower bound for the
// number of zeros.
long empirical_zero_count(const Poly2& P, const Expr& X, const Expr& Y, double lo, double hi, int resolution);

}  // namespace slowdet
