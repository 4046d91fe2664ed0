#pragma once

#include <optional>
#include <vector>

#include "causalq/model.hpp"

namespace causalq {

// Antecedents may bind endogenous and exogenous variables. Exogenous bindings
// restrict the contexts quantified over; consequents bind endogenous variables
// only (a consequent touching an exogenous variable is never sufficed).
//
// Direct sufficiency is decided per consequent variable Y: every variable
// other than Y that the antecedent leaves open is free, whether endogenous
// (intervened to any value) or exogenous (any context). Y is forced exactly
// when its equation is constant on the sub-cube the antecedent fixes.

/// The value `antecedent` forces on `target`, if any. A bound target forces its own value.
std::optional<int> forced_value(const Model& model, VarIndex target, const Assignment& antecedent);

bool directly_sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent);

/// Every endogenous binding (V, v) with directly_sufficient(antecedent, {V=v}).
Assignment max_forced(const Model& model, const Assignment& antecedent);

struct SufficiencyResult {
    bool holds = false;
    /// w0 = antecedent, ..., wn = consequent; each element directly sufficient
    /// (together with the antecedent's exogenous part) for the next.
    std::vector<Assignment> chain;
};

/// Chained sufficiency. Intermediate chain elements bind endogenous variables
/// only and never contradict the antecedent's endogenous bindings; the
/// antecedent's exogenous part applies to every step.
SufficiencyResult sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent);

/// Everything the antecedent is sufficient for: the least fixpoint of
/// max_forced started from the antecedent's endogenous part.
Assignment sufficiency_closure(const Model& model, const Assignment& antecedent);

/// (model, context) |= [antecedent] consequent. The antecedent must bind
/// endogenous variables only; throws Error otherwise.
bool weakly_sufficient(const Model& model, const Context& context, const Assignment& antecedent,
                       const Assignment& consequent);

}  // namespace causalq
