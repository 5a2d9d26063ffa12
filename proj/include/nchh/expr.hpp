#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nchh/core.hpp"

namespace nchh {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over a single named variable.
class Expr {
public:
    enum class Kind { Constant, Variable, Negate, Binary, Call };
    enum class Op : char { Add = '+', Sub = '-', Mul = '*', Div = '/', Pow = '^' };
    enum class Function { Sin, Cos, Exp, Log, Abs, Sqrt, Noise };

    static ExprPtr constant(double value);
    static ExprPtr variable(std::string name);
    static ExprPtr negate(ExprPtr operand);
    static ExprPtr binary(Op op, ExprPtr lhs, ExprPtr rhs);
    /// Throws InvalidArgument if the argument count does not match the function.
    static ExprPtr call(Function fn, std::vector<ExprPtr> args);

    Kind kind() const noexcept { return kind_; }
    double value() const noexcept { return value_; }
    const std::string& name() const noexcept { return name_; }
    Op op() const noexcept { return op_; }
    Function function() const noexcept { return fn_; }
    const std::vector<ExprPtr>& children() const noexcept { return children_; }

    /// Evaluates with the tree's variable bound to `x`. Throws EvaluationError on
    /// domain violations (log of a nonpositive number, division by zero, ...).
    double evaluate(double x) const;

private:
    Expr() = default;

    Kind kind_ = Kind::Constant;
    double value_ = 0.0;
    std::string name_;
    Op op_ = Op::Add;
    Function fn_ = Function::Sin;
    std::vector<ExprPtr> children_;
};

int arity(Expr::Function fn) noexcept;
std::string_view function_name(Expr::Function fn) noexcept;

/// Deterministic perturbation in [-amplitude, amplitude): amplitude * (2u - 1),
/// where u in [0, 1) is a 64-bit hash of x's bit pattern mixed with seed.
double noise(std::uint64_t seed, double amplitude, double x) noexcept;

struct ParseOptions {
    /// Name of the only admissible variable.
    std::string variable = "x";
    /// XOR-ed into every noise() seed; 0 leaves seeds unchanged.
    std::uint64_t noise_salt = 0;
};

/// Grammar (loosest to tightest): `+ -`, `* /`, unary minus, `^` (right-assoc).
/// Atoms are numbers, the variable, `pi`, parentheses and calls to
/// sin cos exp log abs sqrt noise(seed, amplitude). Throws ParseError.
ExprPtr parse_expression(std::string_view text, const ParseOptions& options = {});

/// Parses over "x" and wraps the tree as a FunctionSpec labelled with `text`.
FunctionSpec parse_function(std::string_view text, std::uint64_t noise_salt = 0);

/// Shortest text that parses back to a tree evaluating bit-identically.
std::string render(const Expr& expr);

}  // namespace nchh
