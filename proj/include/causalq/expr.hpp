#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "causalq/error.hpp"
#include "causalq/value.hpp"

namespace causalq {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Raised when an equation cannot be evaluated on some input (e.g. arithmetic on a symbol).
class EvalError : public Error {
public:
    using Error::Error;
};

/// Structural-equation expression tree.
///
/// Boolean operators treat any nonzero integer as true and yield 0 or 1.
/// Equality compares any two values; ordering and arithmetic need integers.
struct Expr {
    enum class Op { literal, var, neg, logical_not, add, sub, mul, eq, ne, lt, le, gt, ge, logical_and, logical_or, ite };

    Op op = Op::literal;
    Value value{};             // literal
    std::string name;          // var
    std::vector<ExprPtr> args; // operands
    int line = 0;              // source position of a var reference, 0 when synthesized
    int column = 0;

    static ExprPtr literal(Value v);
    static ExprPtr var(std::string name, int line = 0, int column = 0);
    static ExprPtr unary(Op op, ExprPtr a);
    static ExprPtr binary(Op op, ExprPtr a, ExprPtr b);
    static ExprPtr ite(ExprPtr c, ExprPtr a, ExprPtr b);
};

/// Structural equality; source positions are ignored.
bool equal(const Expr& a, const Expr& b);

/// Variable names in order of first occurrence.
std::vector<std::string> referenced_variables(const Expr& e);

using VarLookup = std::function<Value(const std::string&)>;

/// Throws EvalError on type errors.
Value evaluate(const Expr& e, const VarLookup& lookup);

/// Canonical text with minimal parentheses; parses back to an equal tree.
std::string to_string(const Expr& e);

}  // namespace causalq
