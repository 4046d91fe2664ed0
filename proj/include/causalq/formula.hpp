#pragma once

#include <memory>
#include <vector>

#include "causalq/model.hpp"

namespace causalq {

struct FormulaNode;
using FormulaPtr = std::shared_ptr<const FormulaNode>;

/// Boolean combination of atoms `X = x` over endogenous variables.
struct FormulaNode {
    enum class Kind { atom, negation, conjunction, disjunction };
    Kind kind = Kind::atom;
    VarIndex var = 0;  // atom
    int value = 0;     // atom, value index
    std::vector<FormulaPtr> children;

    static FormulaPtr atom(VarIndex var, int value);
    static FormulaPtr negation(FormulaPtr f);
    static FormulaPtr conjunction(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disjunction(FormulaPtr a, FormulaPtr b);
};

/// `[Y1 <- y1, ..., Yk <- yk] body`.
struct Formula {
    Assignment interventions;
    FormulaPtr body;
};

bool equal(const FormulaNode& a, const FormulaNode& b);

/// Truth of `body` in a solved world.
bool holds(const FormulaNode& body, const Assignment& world);

/// (model, context) |= formula. Throws Error for invalid models or formulas
/// intervening on exogenous variables.
bool satisfies(const Model& model, const Context& context, const Formula& formula);

}  // namespace causalq
