#pragma once

#include "slowdet/jet.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace slowdet {

enum class Op { Const, Var, Add, Mul, Neg, Recip, PowInt, PowReal, Exp, Log, Sin, Cos, Compose, Zeta, GammaInverse };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::vector<Expr> args;  // Compose: {outer, inner}
    std::string literal;     // Const value or PowReal exponent ("pi", "1/2", "2.5", ...)
    long n = 0;              // PowInt exponent
};

namespace ex {
Expr constant(const std::string& literal);
Expr constant(long v);
Expr var();
Expr add(Expr a, Expr b);
Expr add(std::vector<Expr> terms);
Expr mul(Expr a, Expr b);
Expr mul(std::vector<Expr> factors);
Expr neg(Expr a);
Expr recip(Expr a);
Expr pow_int(Expr a, long n);
Expr pow_real(Expr a, const std::string& exponent);
Expr exp(Expr a);
Expr log(Expr a);
Expr sin(Expr a);
Expr cos(Expr a);
Expr compose(Expr outer, Expr inner);
Expr zeta(Expr a);
Expr gamma_inverse(Expr a);
}  // namespace ex

nlohmann::ordered_json expr_to_json(const Expr& e);
Expr expr_from_json(const nlohmann::json& j);
std::string expr_to_string(const Expr& e);

Jet eval_jet(const Expr& e, const Real& x, int order);
Real eval_real(const Expr& e, const Real& x);
double eval_double(const Expr& e, double x);

// eval_double with literals parsed once; used in scan loops.
class DoubleFn {
public:
    DoubleFn() = default;
    explicit DoubleFn(const Expr& e);
    double operator()(double x) const { return eval(root_, x); }

private:
    struct DNode {
        Op op;
        std::vector<int> args;
        double c = 0;
        long n = 0;
    };
    int compile(const Expr& e);
    double eval(int i, double x) const;
    std::vector<DNode> nodes_;
    int root_ = -1;
};

// Exact value at a rational argument where a symbolic identity is available.
std::optional<Rational> eval_exact(const Expr& e, const Rational& x);

// f^(p)(x)/p!
Real derivative_coefficient(const Expr& f, const Real& x, int p);

}  // namespace slowdet
