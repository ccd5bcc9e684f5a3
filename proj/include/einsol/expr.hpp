#pragma once

#include <einsol/errors.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace einsol {

/// Coordinate chart: dimension, coordinate names, and the strict inequalities
/// `expr > 0` that carve out the domain.
struct Chart;

enum class NodeKind { Literal, Coordinate, ConstantPi, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class FuncId { Exp, Log, Sin, Cos, Tan, Sinh, Cosh, Sqrt };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// One node of a parsed scalar expression. Trees are immutable after parse.
struct ExprNode {
    NodeKind kind;
    double literal = 0.0;
    bool literal_is_integer = false;
    long long integer_value = 0;
    int coord = -1;
    BinaryOp op = BinaryOp::Add;
    FuncId func = FuncId::Exp;
    ExprPtr lhs, rhs; // Binary: both; Negate/Call: lhs only
};

/// A scalar coordinate expression bound to a chart dimension.
struct ScalarExpr {
    ExprPtr root;
    int chart_dim = 0;

    bool valid() const { return root != nullptr; }
};

struct Chart {
    int dim = 0;
    std::vector<std::string> coord_names;
    std::vector<ScalarExpr> domain; // each constraint means expr > 0

    int coord_index(std::string_view name) const {
        for (int i = 0; i < dim; ++i)
            if (coord_names[static_cast<size_t>(i)] == name) return i;
        return -1;
    }
};

namespace detail {

inline const char* func_name(FuncId f) {
    switch (f) {
        case FuncId::Exp: return "exp";
        case FuncId::Log: return "log";
        case FuncId::Sin: return "sin";
        case FuncId::Cos: return "cos";
        case FuncId::Tan: return "tan";
        case FuncId::Sinh: return "sinh";
        case FuncId::Cosh: return "cosh";
        case FuncId::Sqrt: return "sqrt";
    }
    return "?";
}

inline std::optional<FuncId> func_from_name(std::string_view s) {
    if (s == "exp") return FuncId::Exp;
    if (s == "log") return FuncId::Log;
    if (s == "sin") return FuncId::Sin;
    if (s == "cos") return FuncId::Cos;
    if (s == "tan") return FuncId::Tan;
    if (s == "sinh") return FuncId::Sinh;
    if (s == "cosh") return FuncId::Cosh;
    if (s == "sqrt") return FuncId::Sqrt;
    return std::nullopt;
}

inline int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
    }
    return 0;
}

inline const char* op_symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Pow: return "^";
    }
    return "?";
}

} // namespace detail

/// Render an expression back to source form (used for error messages).
inline std::string to_string(const ExprNode& node, const Chart& chart, int parent_prec = 0) {
    using detail::precedence;
    switch (node.kind) {
        case NodeKind::Literal: {
            if (node.literal_is_integer) return std::to_string(node.integer_value);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%g", node.literal);
            return buf;
        }
        case NodeKind::Coordinate:
            return chart.coord_names[static_cast<size_t>(node.coord)];
        case NodeKind::ConstantPi:
            return "pi";
        case NodeKind::Negate: {
            std::string inner = to_string(*node.lhs, chart, 3);
            std::string s = "-" + inner;
            return parent_prec > 3 ? "(" + s + ")" : s;
        }
        case NodeKind::Call:
            return std::string(detail::func_name(node.func)) + "(" + to_string(*node.lhs, chart, 0) + ")";
        case NodeKind::Binary: {
            int prec = precedence(node.op);
            std::string l = to_string(*node.lhs, chart, prec);
            std::string r = to_string(*node.rhs, chart, prec + (node.op == BinaryOp::Pow ? 0 : 1));
            std::string s = l + detail::op_symbol(node.op) + r;
            return prec < parent_prec ? "(" + s + ")" : s;
        }
    }
    return "?";
}

namespace detail {

/// Recursive-descent parser over one expression string.
/// Precedence ^ > unary- > *,/ > +,-; `^` right-associative, rest left.
class ExprParser {
public:
    ExprParser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

    ExprPtr parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("empty expression", 0, 1);
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", 0, column());
        return e;
    }

private:
    int column() const { return static_cast<int>(pos_) + 1; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_sum() {
        ExprPtr left = parse_product();
        for (;;) {
            if (accept('+')) left = make_binary(BinaryOp::Add, left, parse_product());
            else if (accept('-')) left = make_binary(BinaryOp::Sub, left, parse_product());
            else return left;
        }
    }

    ExprPtr parse_product() {
        ExprPtr left = parse_unary();
        for (;;) {
            if (accept('*')) left = make_binary(BinaryOp::Mul, left, parse_unary());
            else if (accept('/')) left = make_binary(BinaryOp::Div, left, parse_unary());
            else return left;
        }
    }

    ExprPtr parse_unary() {
        if (accept('-')) {
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Negate;
            n->lhs = parse_unary();
            return n;
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (accept('^')) return make_binary(BinaryOp::Pow, base, parse_unary());
        return base;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", 0, column());
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            if (!accept(')')) throw ParseError("expected ')'", 0, column());
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", 0, column());
    }

    ExprPtr parse_number() {
        size_t start = pos_;
        bool is_integer = true;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            is_integer = false;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                is_integer = false;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // 'e' belongs to a following identifier, not this number
            }
        }
        std::string token(text_.substr(start, pos_ - start));
        if (token == ".") throw ParseError("malformed number", 0, static_cast<int>(start) + 1);
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Literal;
        n->literal = std::stod(token);
        if (is_integer) {
            try {
                n->integer_value = std::stoll(token);
                n->literal_is_integer = true;
            } catch (const std::out_of_range&) {
                n->literal_is_integer = false;
            }
        }
        return n;
    }

    ExprPtr parse_identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        int name_col = static_cast<int>(start) + 1;

        if (auto f = func_from_name(name)) {
            if (!accept('('))
                throw ParseError("function '" + name + "' requires parenthesized argument", 0, column());
            ExprPtr arg = parse_sum();
            if (peek() == ',')
                throw ParseError("function '" + name + "' takes exactly one argument", 0, column());
            if (!accept(')')) throw ParseError("expected ')'", 0, column());
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Call;
            n->func = *f;
            n->lhs = arg;
            return n;
        }
        if (name == "pi") {
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::ConstantPi;
            return n;
        }
        int idx = chart_.coord_index(name);
        if (idx < 0) throw ParseError("unknown identifier " + name, 0, name_col);
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Coordinate;
        n->coord = idx;
        return n;
    }

    static ExprPtr make_binary(BinaryOp op, ExprPtr l, ExprPtr r) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    std::string_view text_;
    const Chart& chart_;
    size_t pos_ = 0;
};

} // namespace detail

/// Parse a scalar expression over the chart's coordinates.
inline ScalarExpr parse_expr(std::string_view text, const Chart& chart) {
    if (text.empty()) throw ParseError("empty expression", 0, 1);
    detail::ExprParser parser(text, chart);
    return ScalarExpr{parser.parse(), chart.dim};
}

// ---------------------------------------------------------------------------
// Evaluation, generic over the scalar type (double or Jet).
// ---------------------------------------------------------------------------

inline double value_of(double x) { return x; }
inline int derivative_order_of(double) { return 0; }

namespace detail {

template <class T>
T make_constant_like(const T& like, double v);

template <>
inline double make_constant_like<double>(const double&, double v) { return v; }

template <class T>
T integer_power(const T& base, long long k, const ExprNode& node, const Chart& chart) {
    if (k == 0) return make_constant_like(base, 1.0);
    bool negative = k < 0;
    unsigned long long m = negative ? static_cast<unsigned long long>(-(k + 1)) + 1ull
                                    : static_cast<unsigned long long>(k);
    T acc = base;
    for (unsigned long long i = 1; i < m; ++i) acc = acc * base;
    if (negative) {
        if (value_of(base) == 0.0)
            throw EvalError("division by zero in '" + to_string(node, chart) + "'");
        return make_constant_like(base, 1.0) / acc;
    }
    return acc;
}

template <class T>
T eval_node(const ExprNode& node, std::span<const T> coords, const Chart& chart) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tan;

    switch (node.kind) {
        case NodeKind::Literal:
            return make_constant_like(coords[0], node.literal);
        case NodeKind::ConstantPi:
            return make_constant_like(coords[0], std::numbers::pi);
        case NodeKind::Coordinate:
            return coords[static_cast<size_t>(node.coord)];
        case NodeKind::Negate:
            return -eval_node(*node.lhs, coords, chart);
        case NodeKind::Binary: {
            T a = eval_node(*node.lhs, coords, chart);
            if (node.op == BinaryOp::Pow) {
                if (node.rhs->kind == NodeKind::Literal && node.rhs->literal_is_integer)
                    return integer_power(a, node.rhs->integer_value, node, chart);
                if (node.rhs->kind == NodeKind::Negate && node.rhs->lhs->kind == NodeKind::Literal &&
                    node.rhs->lhs->literal_is_integer)
                    return integer_power(a, -node.rhs->lhs->integer_value, node, chart);
                // general power: a^b = exp(b*log(a)), a > 0
                T b = eval_node(*node.rhs, coords, chart);
                if (!(value_of(a) > 0.0))
                    throw EvalError("power of non-positive base in '" + to_string(node, chart) + "'");
                return exp(b * log(a));
            }
            T b = eval_node(*node.rhs, coords, chart);
            switch (node.op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div:
                    if (value_of(b) == 0.0)
                        throw EvalError("division by zero in '" + to_string(node, chart) + "'");
                    return a / b;
                default: break;
            }
            return a;
        }
        case NodeKind::Call: {
            T a = eval_node(*node.lhs, coords, chart);
            double v = value_of(a);
            switch (node.func) {
                case FuncId::Exp: return exp(a);
                case FuncId::Log:
                    if (!(v > 0.0))
                        throw EvalError("log of non-positive value in '" + to_string(node, chart) + "'");
                    return log(a);
                case FuncId::Sin: return sin(a);
                case FuncId::Cos: return cos(a);
                case FuncId::Tan: return tan(a);
                case FuncId::Sinh: return sinh(a);
                case FuncId::Cosh: return cosh(a);
                case FuncId::Sqrt:
                    if (v < 0.0 || (v == 0.0 && derivative_order_of(a) > 0))
                        throw EvalError("sqrt domain violation in '" + to_string(node, chart) + "'");
                    return sqrt(a);
            }
            return a;
        }
    }
    throw EvalError("malformed expression node");
}

} // namespace detail

/// Evaluate an expression with any scalar type supporting the arithmetic and
/// elementary functions (double gives plain evaluation, Jet gives derivatives).
/// `coords` must hold one scalar per chart coordinate.
template <class T>
T evaluate(const ScalarExpr& expr, std::span<const T> coords, const Chart& chart) {
    if (!expr.valid()) throw EvalError("evaluating empty expression");
    if (static_cast<int>(coords.size()) != expr.chart_dim)
        throw EvalError("coordinate count does not match chart dimension");
    return detail::eval_node<T>(*expr.root, coords, chart);
}

/// Plain scalar evaluation at a coordinate tuple.
inline double evaluate_value(const ScalarExpr& expr, std::span<const double> coords, const Chart& chart) {
    return evaluate<double>(expr, coords, chart);
}

} // namespace einsol
