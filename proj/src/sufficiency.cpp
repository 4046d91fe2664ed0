#include "causalq/sufficiency.hpp"

#include "causalq/error.hpp"

namespace causalq {

namespace {

Assignment exogenous_part(const Signature& sig, const Assignment& a) { return a.restricted(sig.exogenous()); }

Assignment endogenous_part(const Signature& sig, const Assignment& a) { return a.restricted(sig.endogenous()); }

bool endogenous_only(const Signature& sig, const Assignment& a) {
    for (VarIndex v : a.variables())
        if (sig.is_exogenous(v)) return false;
    return true;
}

}  // namespace

std::optional<int> forced_value(const Model& model, VarIndex target, const Assignment& antecedent) {
    const Signature& sig = model.signature();
    if (antecedent.bound(target)) return antecedent.get(target);
    if (sig.is_exogenous(target)) return std::nullopt;
    model.require_valid();

    const Equation& eq = model.equation(target);
    std::vector<VarIndex> open;
    for (VarIndex a : eq.args)
        if (!antecedent.bound(a)) open.push_back(a);

    int seen = Assignment::unbound;
    const bool varies = any_setting(sig, open, antecedent, [&](const Assignment& in) {
        const int out = eq.table[eq.row(in.slots())];
        if (seen == Assignment::unbound) seen = out;
        return out != seen;
    });
    if (varies) return std::nullopt;
    return seen;
}

bool directly_sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent) {
    const Signature& sig = model.signature();
    for (VarIndex y : consequent.variables()) {
        if (sig.is_exogenous(y)) return false;
        if (forced_value(model, y, antecedent) != consequent.get(y)) return false;
    }
    return true;
}

Assignment max_forced(const Model& model, const Assignment& antecedent) {
    const Signature& sig = model.signature();
    Assignment out(sig.size());
    for (VarIndex y : sig.endogenous())
        if (auto v = forced_value(model, y, antecedent)) out.set(y, *v);
    return out;
}

namespace {

// C0 = antecedent's endogenous part, C(k+1) = max_forced(Ck + exogenous part).
std::vector<Assignment> closure_levels(const Model& model, const Assignment& antecedent) {
    const Signature& sig = model.signature();
    const Assignment exo = exogenous_part(sig, antecedent);
    std::vector<Assignment> levels{endogenous_part(sig, antecedent)};
    while (true) {
        Assignment next = max_forced(model, levels.back().merged(exo));
        if (next == levels.back()) return levels;
        levels.push_back(std::move(next));
    }
}

}  // namespace

Assignment sufficiency_closure(const Model& model, const Assignment& antecedent) {
    return closure_levels(model, antecedent).back();
}

SufficiencyResult sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent) {
    const Signature& sig = model.signature();
    SufficiencyResult result;
    if (!endogenous_only(sig, consequent)) return result;

    const auto levels = closure_levels(model, antecedent);
    std::size_t k = 0;
    while (k < levels.size() && !consequent.subset_of(levels[k])) ++k;
    if (k == levels.size()) return result;
    result.holds = true;

    if (k == 0) {
        result.chain = {antecedent};
        if (consequent != antecedent) result.chain.push_back(consequent);
        return result;
    }

    // Walk back from the consequent, shrinking each level to the bindings the
    // next element actually needs.
    const Assignment exo = exogenous_part(sig, antecedent);
    std::vector<Assignment> chain{consequent};
    for (std::size_t i = k - 1; i >= 1; --i) {
        Assignment w = levels[i];
        for (VarIndex v : levels[i].variables()) {
            Assignment trial = w;
            trial.clear(v);
            if (directly_sufficient(model, trial.merged(exo), chain.back())) w = std::move(trial);
        }
        chain.push_back(std::move(w));
    }
    chain.push_back(antecedent);
    result.chain.assign(chain.rbegin(), chain.rend());
    return result;
}

bool weakly_sufficient(const Model& model, const Context& context, const Assignment& antecedent,
                       const Assignment& consequent) {
    const Signature& sig = model.signature();
    if (!endogenous_only(sig, antecedent)) throw Error("weak sufficiency takes an endogenous antecedent");
    if (!endogenous_only(sig, consequent)) return false;
    return consequent.subset_of(solve(model, context, antecedent));
}

}  // namespace causalq
