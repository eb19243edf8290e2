#include "slowdet/expr.hpp"

#include "slowdet/specfun.hpp"

#include <cmath>
#include <map>

namespace slowdet {

namespace {

const std::map<Op, std::string>& op_names() {
    static const std::map<Op, std::string> names = {
        {Op::Const, "const"}, {Op::Var, "var"},       {Op::Add, "add"},         {Op::Mul, "mul"},
        {Op::Neg, "neg"},     {Op::Recip, "recip"},   {Op::PowInt, "pow_int"},  {Op::PowReal, "pow_real"},
        {Op::Exp, "exp"},     {Op::Log, "log"},       {Op::Sin, "sin"},         {Op::Cos, "cos"},
        {Op::Compose, "compose"}, {Op::Zeta, "zeta"}, {Op::GammaInverse, "gamma_inverse"}};
    return names;
}

Expr make(Op op, std::vector<Expr> args, std::string literal = {}, long n = 0) {
    for (const auto& a : args)
        if (!a) throw InputError("null subexpression");
    auto node = std::make_shared<Node>();
    node->op = op;
    node->args = std::move(args);
    node->literal = std::move(literal);
    node->n = n;
    return node;
}

double literal_double(const std::string& s) {
    if (s == "pi") return M_PI;
    if (s == "e") return M_E;
    if (s == "log2") return M_LN2;
    auto slash = s.find('/');
    if (slash != std::string::npos) return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    return std::stod(s);
}

void validate_literal(const std::string& s) {
    if (s == "pi" || s == "e" || s == "log2") return;
    if (s.find('/') != std::string::npos) {
        parse_rational(s);
        return;
    }
    parse_real(s);
}

}  // namespace

namespace ex {
Expr constant(const std::string& literal) {
    validate_literal(literal);
    return make(Op::Const, {}, literal);
}
Expr constant(long v) { return make(Op::Const, {}, std::to_string(v)); }
Expr var() { return make(Op::Var, {}); }
Expr add(Expr a, Expr b) { return make(Op::Add, {std::move(a), std::move(b)}); }
Expr add(std::vector<Expr> terms) {
    if (terms.empty()) throw InputError("add needs at least one term");
    return make(Op::Add, std::move(terms));
}
Expr mul(Expr a, Expr b) { return make(Op::Mul, {std::move(a), std::move(b)}); }
Expr mul(std::vector<Expr> factors) {
    if (factors.empty()) throw InputError("mul needs at least one factor");
    return make(Op::Mul, std::move(factors));
}
Expr neg(Expr a) { return make(Op::Neg, {std::move(a)}); }
Expr recip(Expr a) { return make(Op::Recip, {std::move(a)}); }
Expr pow_int(Expr a, long n) { return make(Op::PowInt, {std::move(a)}, {}, n); }
Expr pow_real(Expr a, const std::string& exponent) {
    validate_literal(exponent);
    return make(Op::PowReal, {std::move(a)}, exponent);
}
Expr exp(Expr a) { return make(Op::Exp, {std::move(a)}); }
Expr log(Expr a) { return make(Op::Log, {std::move(a)}); }
Expr sin(Expr a) { return make(Op::Sin, {std::move(a)}); }
Expr cos(Expr a) { return make(Op::Cos, {std::move(a)}); }
Expr compose(Expr outer, Expr inner) { return make(Op::Compose, {std::move(outer), std::move(inner)}); }
Expr zeta(Expr a) { return make(Op::Zeta, {std::move(a)}); }
Expr gamma_inverse(Expr a) { return make(Op::GammaInverse, {std::move(a)}); }
}  // namespace ex

nlohmann::ordered_json expr_to_json(const Expr& e) {
    nlohmann::ordered_json j;
    j["op"] = op_names().at(e->op);
    switch (e->op) {
        case Op::Const: j["value"] = e->literal; break;
        case Op::Var: break;
        case Op::Add:
        case Op::Mul: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& a : e->args) arr.push_back(expr_to_json(a));
            j["args"] = arr;
            break;
        }
        case Op::PowInt:
            j["arg"] = expr_to_json(e->args[0]);
            j["n"] = e->n;
            break;
        case Op::PowReal:
            j["arg"] = expr_to_json(e->args[0]);
            j["exponent"] = e->literal;
            break;
        case Op::Compose:
            j["outer"] = expr_to_json(e->args[0]);
            j["inner"] = expr_to_json(e->args[1]);
            break;
        default: j["arg"] = expr_to_json(e->args[0]); break;
    }
    return j;
}

Expr expr_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) throw InputError("expression node needs an 'op' string");
    std::string name = j["op"].get<std::string>();
    std::optional<Op> op;
    for (const auto& [k, v] : op_names())
        if (v == name) op = k;
    if (!op) throw InputError("unknown expression op '" + name + "'");
    auto need = [&](const char* key) -> const nlohmann::json& {
        if (!j.contains(key)) throw InputError("'" + name + "' node needs field '" + key + "'");
        return j[key];
    };
    auto literal = [&](const char* key) {
        const auto& v = need(key);
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long>());
        throw InputError("'" + name + "' field '" + key + "' must be a string or integer");
    };
    switch (*op) {
        case Op::Const: return ex::constant(literal("value"));
        case Op::Var: return ex::var();
        case Op::Add:
        case Op::Mul: {
            const auto& args = need("args");
            if (!args.is_array() || args.empty()) throw InputError("'" + name + "' needs a nonempty args array");
            std::vector<Expr> v;
            for (const auto& a : args) v.push_back(expr_from_json(a));
            return *op == Op::Add ? ex::add(std::move(v)) : ex::mul(std::move(v));
        }
        case Op::PowInt: {
            const auto& n = need("n");
            if (!n.is_number_integer()) throw InputError("pow_int exponent must be an integer");
            return ex::pow_int(expr_from_json(need("arg")), n.get<long>());
        }
        case Op::PowReal: return ex::pow_real(expr_from_json(need("arg")), literal("exponent"));
        case Op::Compose: return ex::compose(expr_from_json(need("outer")), expr_from_json(need("inner")));
        default: return make(*op, {expr_from_json(need("arg"))});
    }
}

std::string expr_to_string(const Expr& e) {
    auto join = [&](const char* sep) {
        std::string s = "(";
        for (size_t i = 0; i < e->args.size(); ++i) {
            if (i) s += sep;
            s += expr_to_string(e->args[i]);
        }
        return s + ")";
    };
    switch (e->op) {
        case Op::Const: return e->literal;
        case Op::Var: return "x";
        case Op::Add: return join(" + ");
        case Op::Mul: return join("*");
        case Op::Neg: return "-" + expr_to_string(e->args[0]);
        case Op::Recip: return "1/" + expr_to_string(e->args[0]);
        case Op::PowInt: return expr_to_string(e->args[0]) + "^" + std::to_string(e->n);
        case Op::PowReal: return expr_to_string(e->args[0]) + "^(" + e->literal + ")";
        case Op::Compose: {
            std::string outer = expr_to_string(e->args[0]);
            return "[" + outer + "](" + expr_to_string(e->args[1]) + ")";
        }
        default: return op_names().at(e->op) + "(" + expr_to_string(e->args[0]) + ")";
    }
}

Jet eval_jet(const Expr& e, const Real& x, int P) {
    switch (e->op) {
        case Op::Const: return Jet::constant(x, parse_real(e->literal), P);
        case Op::Var: return Jet::variable(x, P);
        case Op::Add: {
            Jet acc = eval_jet(e->args[0], x, P);
            for (size_t i = 1; i < e->args.size(); ++i) acc = acc + eval_jet(e->args[i], x, P);
            return acc;
        }
        case Op::Mul: {
            Jet acc = eval_jet(e->args[0], x, P);
            for (size_t i = 1; i < e->args.size(); ++i) acc = acc * eval_jet(e->args[i], x, P);
            return acc;
        }
        case Op::Neg: return -eval_jet(e->args[0], x, P);
        case Op::Recip: return jet_recip(eval_jet(e->args[0], x, P));
        case Op::PowInt: return jet_pow_int(eval_jet(e->args[0], x, P), e->n);
        case Op::PowReal: return jet_pow_real(eval_jet(e->args[0], x, P), parse_real(e->literal));
        case Op::Exp: return jet_exp(eval_jet(e->args[0], x, P));
        case Op::Log: return jet_log(eval_jet(e->args[0], x, P));
        case Op::Sin: return jet_sin(eval_jet(e->args[0], x, P));
        case Op::Cos: return jet_cos(eval_jet(e->args[0], x, P));
        case Op::Compose: {
            Jet inner = eval_jet(e->args[1], x, P);
            Jet outer = eval_jet(e->args[0], inner[0], P);
            return jet_compose(outer, inner);
        }
        case Op::Zeta: {
            Jet inner = eval_jet(e->args[0], x, P);
            return jet_compose(zeta_jet(inner[0], P), inner);
        }
        case Op::GammaInverse: {
            Jet inner = eval_jet(e->args[0], x, P);
            return jet_compose(gamma_inverse_jet(inner[0], P), inner);
        }
    }
    throw InputError("unhandled op");
}

Real eval_real(const Expr& e, const Real& x) {
    switch (e->op) {
        case Op::Const: return parse_real(e->literal);
        case Op::Var: return x;
        case Op::Add: {
            Real s = 0;
            for (const auto& a : e->args) s += eval_real(a, x);
            return s;
        }
        case Op::Mul: {
            Real s = 1;
            for (const auto& a : e->args) s *= eval_real(a, x);
            return s;
        }
        case Op::Neg: return -eval_real(e->args[0], x);
        case Op::Recip: {
            Real v = eval_real(e->args[0], x);
            if (v == 0) throw DomainError("division by zero");
            return 1 / v;
        }
        case Op::PowInt: {
            Real v = eval_real(e->args[0], x);
            if (v == 0 && e->n < 0) throw DomainError("negative power of zero");
            return pow(v, Real(e->n));
        }
        case Op::PowReal: {
            Real v = eval_real(e->args[0], x);
            if (!(v > 0)) throw DomainError("real power of a nonpositive value");
            return pow(v, parse_real(e->literal));
        }
        case Op::Exp: return exp(eval_real(e->args[0], x));
        case Op::Log: {
            Real v = eval_real(e->args[0], x);
            if (!(v > 0)) throw DomainError("log of a nonpositive value");
            return log(v);
        }
        case Op::Sin: return sin(eval_real(e->args[0], x));
        case Op::Cos: return cos(eval_real(e->args[0], x));
        case Op::Compose: return eval_real(e->args[0], eval_real(e->args[1], x));
        case Op::Zeta: return zeta(eval_real(e->args[0], x));
        case Op::GammaInverse: return gamma_inverse(eval_real(e->args[0], x));
    }
    throw InputError("unhandled op");
}

double eval_double(const Expr& e, double x) {
    switch (e->op) {
        case Op::Const: return literal_double(e->literal);
        case Op::Var: return x;
        case Op::Add: {
            double s = 0;
            for (const auto& a : e->args) s += eval_double(a, x);
            return s;
        }
        case Op::Mul: {
            double s = 1;
            for (const auto& a : e->args) s *= eval_double(a, x);
            return s;
        }
        case Op::Neg: return -eval_double(e->args[0], x);
        case Op::Recip: return 1 / eval_double(e->args[0], x);
        case Op::PowInt: return std::pow(eval_double(e->args[0], x), static_cast<double>(e->n));
        case Op::PowReal: return std::pow(eval_double(e->args[0], x), literal_double(e->literal));
        case Op::Exp: return std::exp(eval_double(e->args[0], x));
        case Op::Log: return std::log(eval_double(e->args[0], x));
        case Op::Sin: return std::sin(eval_double(e->args[0], x));
        case Op::Cos: return std::cos(eval_double(e->args[0], x));
        case Op::Compose: return eval_double(e->args[0], eval_double(e->args[1], x));
        case Op::Zeta: {
            double s = eval_double(e->args[0], x);
            return s > 1 ? zeta_d(s) : std::nan("");
        }
        case Op::GammaInverse: {
            double y = eval_double(e->args[0], x);
            return y >= 1 ? gamma_inverse_d(y) : std::nan("");
        }
    }
    return std::nan("");
}

DoubleFn::DoubleFn(const Expr& e) { root_ = compile(e); }

int DoubleFn::compile(const Expr& e) {
    DNode d;
    d.op = e->op;
    d.n = e->n;
    if (e->op == Op::Const || e->op == Op::PowReal) d.c = literal_double(e->literal);
    for (const auto& a : e->args) d.args.push_back(compile(a));
    nodes_.push_back(std::move(d));
    return static_cast<int>(nodes_.size()) - 1;
}

double DoubleFn::eval(int i, double x) const {
    const DNode& d = nodes_[static_cast<size_t>(i)];
    switch (d.op) {
        case Op::Const: return d.c;
        case Op::Var: return x;
        case Op::Add: {
            double s = 0;
            for (int a : d.args) s += eval(a, x);
            return s;
        }
        case Op::Mul: {
            double s = 1;
            for (int a : d.args) s *= eval(a, x);
            return s;
        }
        case Op::Neg: return -eval(d.args[0], x);
        case Op::Recip: return 1 / eval(d.args[0], x);
        case Op::PowInt: return std::pow(eval(d.args[0], x), static_cast<double>(d.n));
        case Op::PowReal: return std::pow(eval(d.args[0], x), d.c);
        case Op::Exp: return std::exp(eval(d.args[0], x));
        case Op::Log: return std::log(eval(d.args[0], x));
        case Op::Sin: return std::sin(eval(d.args[0], x));
        case Op::Cos: return std::cos(eval(d.args[0], x));
        case Op::Compose: return eval(d.args[0], eval(d.args[1], x));
        case Op::Zeta: {
            double s = eval(d.args[0], x);
            return s > 1 ? zeta_d(s) : std::nan("");
        }
        case Op::GammaInverse: {
            double y = eval(d.args[0], x);
            return y >= 1 ? gamma_inverse_d(y) : std::nan("");
        }
    }
    return std::nan("");
}

namespace {

bool is_rational_literal(const std::string& s) { return !(s == "pi" || s == "e" || s == "log2"); }

std::optional<Rational> pow_exact(const Rational& b, long n) {
    if (b == 0 && n < 0) return std::nullopt;
    Rational base = n < 0 ? Rational(1) / b : b;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    Rational r = 1;
    while (k) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

}  // namespace

std::optional<Rational> eval_exact(const Expr& e, const Rational& x) {
    switch (e->op) {
        case Op::Const:
            if (is_rational_literal(e->literal)) return parse_rational(e->literal);
            return std::nullopt;
        case Op::Var: return x;
        case Op::Add: {
            Rational s = 0;
            for (const auto& a : e->args) {
                auto v = eval_exact(a, x);
                if (!v) return std::nullopt;
                s += *v;
            }
            return s;
        }
        case Op::Mul: {
            Rational s = 1;
            bool all = true;
            for (const auto& a : e->args) {
                auto v = eval_exact(a, x);
                if (!v) {
                    all = false;
                    continue;
                }
                if (*v == 0) return Rational(0);
                s *= *v;
            }
            if (!all) return std::nullopt;
            return s;
        }
        case Op::Neg: {
            auto v = eval_exact(e->args[0], x);
            if (!v) return std::nullopt;
            return -*v;
        }
        case Op::Recip: {
            auto v = eval_exact(e->args[0], x);
            if (!v || *v == 0) return std::nullopt;
            return Rational(1) / *v;
        }
        case Op::PowInt: {
            auto v = eval_exact(e->args[0], x);
            if (!v) return std::nullopt;
            return pow_exact(*v, e->n);
        }
        case Op::PowReal: {
            auto v = eval_exact(e->args[0], x);
            if (!v || !is_rational_literal(e->literal)) return std::nullopt;
            Rational ex = parse_rational(e->literal);
            if (*v == 1) return Rational(1);
            if (*v == 0 && ex > 0) return Rational(0);
            if (denominator(ex) == 1 && *v > 0) return pow_exact(*v, numerator(ex).convert_to<long>());
            return std::nullopt;
        }
        case Op::Exp: {
            auto v = eval_exact(e->args[0], x);
            if (v && *v == 0) return Rational(1);
            return std::nullopt;
        }
        case Op::Log: {
            auto v = eval_exact(e->args[0], x);
            if (v && *v == 1) return Rational(0);
            return std::nullopt;
        }
        case Op::Sin: {
            auto v = eval_exact(e->args[0], x);
            if (v && *v == 0) return Rational(0);
            return std::nullopt;
        }
        case Op::Cos: {
            auto v = eval_exact(e->args[0], x);
            if (v && *v == 0) return Rational(1);
            return std::nullopt;
        }
        case Op::Compose: {
            auto v = eval_exact(e->args[1], x);
            if (!v) return std::nullopt;
            return eval_exact(e->args[0], *v);
        }
        case Op::Zeta: return std::nullopt;
        case Op::GammaInverse: {
            // Gamma(k+1) = k!
            auto v = eval_exact(e->args[0], x);
            if (!v || denominator(*v) != 1 || *v < 1) return std::nullopt;
            Integer y = numerator(*v), f = 1;
            for (long k = 1;; ++k) {
                f *= k;
                if (f == y) return Rational(k + 1);
                if (f > y) return std::nullopt;
            }
        }
    }
    return std::nullopt;
}

Real derivative_coefficient(const Expr& f, const Real& x, int p) {
    if (p < 0) throw InputError("negative derivative order");
    return eval_jet(f, x, p)[p];
}

}  // namespace slowdet
