#include "causalq/formula.hpp"

#include "causalq/error.hpp"

namespace causalq {

using Kind = FormulaNode::Kind;

FormulaPtr FormulaNode::atom(VarIndex var, int value) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = Kind::atom;
    f->var = var;
    f->value = value;
    return f;
}

FormulaPtr FormulaNode::negation(FormulaPtr a) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = Kind::negation;
    f->children = {std::move(a)};
    return f;
}

FormulaPtr FormulaNode::conjunction(FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = Kind::conjunction;
    f->children = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr FormulaNode::disjunction(FormulaPtr a, FormulaPtr b) {
    auto f = std::make_shared<FormulaNode>();
    f->kind = Kind::disjunction;
    f->children = {std::move(a), std::move(b)};
    return f;
}

bool equal(const FormulaNode& a, const FormulaNode& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == Kind::atom) return a.var == b.var && a.value == b.value;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!equal(*a.children[i], *b.children[i])) return false;
    return true;
}

bool holds(const FormulaNode& f, const Assignment& world) {
    switch (f.kind) {
        case Kind::atom: return world.get(f.var) == f.value;
        case Kind::negation: return !holds(*f.children[0], world);
        case Kind::conjunction: return holds(*f.children[0], world) && holds(*f.children[1], world);
        case Kind::disjunction: return holds(*f.children[0], world) || holds(*f.children[1], world);
    }
    return false;
}

bool satisfies(const Model& model, const Context& context, const Formula& formula) {
    for (VarIndex v : formula.interventions.variables())
        if (model.signature().is_exogenous(v))
            throw Error("formula intervenes on exogenous variable '" + model.signature().var(v).name + "'");
    return holds(*formula.body, solve(model, context, formula.interventions));
}

}  // namespace causalq
