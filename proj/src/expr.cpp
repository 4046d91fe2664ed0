#include "causalq/expr.hpp"

#include <algorithm>

namespace causalq {

using Op = Expr::Op;

ExprPtr Expr::literal(Value v) {
    auto e = std::make_shared<Expr>();
    e->op = Op::literal;
    e->value = std::move(v);
    return e;
}

ExprPtr Expr::var(std::string name, int line, int column) {
    auto e = std::make_shared<Expr>();
    e->op = Op::var;
    e->name = std::move(name);
    e->line = line;
    e->column = column;
    return e;
}

ExprPtr Expr::unary(Op op, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = {std::move(a)};
    return e;
}

ExprPtr Expr::binary(Op op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->args = {std::move(a), std::move(b)};
    return e;
}

ExprPtr Expr::ite(ExprPtr c, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->op = Op::ite;
    e->args = {std::move(c), std::move(a), std::move(b)};
    return e;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.op != b.op || a.args.size() != b.args.size()) return false;
    if (a.op == Op::literal && a.value != b.value) return false;
    if (a.op == Op::var && a.name != b.name) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal(*a.args[i], *b.args[i])) return false;
    return true;
}

namespace {

void collect(const Expr& e, std::vector<std::string>& out) {
    if (e.op == Op::var && std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    for (const auto& a : e.args) collect(*a, out);
}

std::int64_t as_int(const Value& v, const char* what) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw EvalError(std::string(what) + " applied to symbol " + to_string(v));
}

bool truth(const Value& v) { return as_int(v, "boolean operator") != 0; }

Value from_bool(bool b) { return std::int64_t{b ? 1 : 0}; }

}  // namespace

std::vector<std::string> referenced_variables(const Expr& e) {
    std::vector<std::string> out;
    collect(e, out);
    return out;
}

Value evaluate(const Expr& e, const VarLookup& lookup) {
    auto arg = [&](std::size_t i) { return evaluate(*e.args[i], lookup); };
    switch (e.op) {
        case Op::literal: return e.value;
        case Op::var: return lookup(e.name);
        case Op::neg: return -as_int(arg(0), "negation");
        case Op::logical_not: return from_bool(!truth(arg(0)));
        case Op::add: return as_int(arg(0), "+") + as_int(arg(1), "+");
        case Op::sub: return as_int(arg(0), "-") - as_int(arg(1), "-");
        case Op::mul: return as_int(arg(0), "*") * as_int(arg(1), "*");
        case Op::eq: return from_bool(arg(0) == arg(1));
        case Op::ne: return from_bool(arg(0) != arg(1));
        case Op::lt: return from_bool(as_int(arg(0), "<") < as_int(arg(1), "<"));
        case Op::le: return from_bool(as_int(arg(0), "<=") <= as_int(arg(1), "<="));
        case Op::gt: return from_bool(as_int(arg(0), ">") > as_int(arg(1), ">"));
        case Op::ge: return from_bool(as_int(arg(0), ">=") >= as_int(arg(1), ">="));
        case Op::logical_and: return from_bool(truth(arg(0)) && truth(arg(1)));
        case Op::logical_or: return from_bool(truth(arg(0)) || truth(arg(1)));
        case Op::ite: return truth(arg(0)) ? arg(1) : arg(2);
    }
    return Value{};
}

namespace {

// Binding strength; higher binds tighter.
int level(Op op) {
    switch (op) {
        case Op::logical_or: return 1;
        case Op::logical_and: return 2;
        case Op::logical_not: return 3;
        case Op::eq: case Op::ne: case Op::lt: case Op::le: case Op::gt: case Op::ge: return 4;
        case Op::add: case Op::sub: return 5;
        case Op::mul: return 6;
        case Op::neg: return 7;
        default: return 8;
    }
}

const char* symbol(Op op) {
    switch (op) {
        case Op::logical_or: return " | ";
        case Op::logical_and: return " & ";
        case Op::eq: return " = ";
        case Op::ne: return " != ";
        case Op::lt: return " < ";
        case Op::le: return " <= ";
        case Op::gt: return " > ";
        case Op::ge: return " >= ";
        case Op::add: return " + ";
        case Op::sub: return " - ";
        case Op::mul: return " * ";
        default: return "";
    }
}

std::string print(const Expr& e, int min_level) {
    std::string out;
    const int lvl = level(e.op);
    switch (e.op) {
        case Op::literal: out = to_string(e.value); break;
        case Op::var: out = e.name; break;
        case Op::ite:
            out = "ite(" + print(*e.args[0], 0) + ", " + print(*e.args[1], 0) + ", " + print(*e.args[2], 0) + ")";
            break;
        case Op::neg:
            // "-5" would read back as the literal -5, so literal operands keep parentheses.
            out = e.args[0]->op == Op::literal ? "-(" + print(*e.args[0], 0) + ")" : "-" + print(*e.args[0], 7);
            break;
        case Op::logical_not: out = "!" + print(*e.args[0], 3); break;
        case Op::eq: case Op::ne: case Op::lt: case Op::le: case Op::gt: case Op::ge:
            out = print(*e.args[0], 5) + symbol(e.op) + print(*e.args[1], 5);
            break;
        default:
            out = print(*e.args[0], lvl) + symbol(e.op) + print(*e.args[1], lvl + 1);
            break;
    }
    return lvl < min_level ? "(" + out + ")" : out;
}

}  // namespace

std::string to_string(const Expr& e) { return print(e, 0); }

}  // namespace causalq
