#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causalq/model.hpp"
#include "causalq/relations.hpp"

namespace causalq {

/// True when every variable of `inner` appears in `outer` under the same name
/// and kind. Throws Error when a shared name has different ranges or kinds.
bool signature_nested(const Signature& inner, const Signature& outer);

/// A base model M and an extension M' whose signature contains M's.
///
/// Assignments over common variables use the base signature; witnesses w
/// (settings of the exogenous variables only M' has) use the extension's.
class ModelPair {
public:
    /// Throws Error unless both models are valid and base's signature nests in extension's.
    ModelPair(Model base, Model extension);

    const Model& base() const { return base_; }
    const Model& extension() const { return extension_; }

    /// Common variables, as indices into the base signature (which is all of them).
    const std::vector<VarIndex>& common() const { return common_; }
    /// Exogenous variables of M' missing from M, as extension indices.
    const std::vector<VarIndex>& marginalized() const { return marginalized_; }
    /// Endogenous variables of M' missing from M, as extension indices.
    const std::vector<VarIndex>& hidden() const { return hidden_; }

    Assignment to_extension(const Assignment& a) const;
    /// Restricts an extension assignment to the common variables.
    Assignment to_base(const Assignment& a) const;
    ContrastPair to_extension(const ContrastPair& c) const;
    ContrastPair to_base(const ContrastPair& c) const;

    /// M' with the marginalized variables fixed to `w`.
    Model pinned(const Assignment& w) const;

private:
    Model base_;
    Model extension_;
    std::vector<VarIndex> common_;
    std::vector<VarIndex> marginalized_;
    std::vector<VarIndex> hidden_;
};

/// One fact the two models disagree on. Everything is over the base signature.
struct Counterexample {
    /// "potential-joint-ancestry", "actual-joint-ancestry", "sufficiency" or "weak-sufficiency".
    std::string relation;
    /// Whether the fact holds in M (and thus fails in M'), or the other way round.
    bool holds_in_base = false;
    std::optional<ContrastPair> source;
    std::optional<ContrastPair> target;
    Assignment antecedent;
    Assignment consequent;
    std::optional<Context> context;
};

/// Outcome for one candidate witness.
struct WitnessTrial {
    Assignment witness;
    bool passed = false;
    /// Which conjunct failed ("structural", "functional", "conservative"); empty when passed.
    std::string failed;
    std::optional<Counterexample> counterexample;
};

struct EquivReport {
    std::string kind;
    bool verdict = false;
    std::optional<Assignment> witness;
    /// The first trial's counterexample when the verdict is false.
    std::optional<Counterexample> counterexample;
    std::vector<WitnessTrial> trace;
};

struct EquivOptions {
    /// Also fix W to the witness when comparing potential joint ancestry.
    bool strict = false;
    /// Let common exogenous variables appear in ancestry sources.
    bool exogenous_sources = true;
    /// Check only this witness instead of searching.
    std::optional<Assignment> witness;
    /// Upper bound on elementary checks before BudgetExceeded is thrown.
    std::uint64_t max_evaluations = 1'000'000'000;
};

EquivReport structurally_equivalent(const ModelPair& pair, const EquivOptions& options = {});
EquivReport functionally_equivalent(const ModelPair& pair, const EquivOptions& options = {});
EquivReport conservatively_equivalent(const ModelPair& pair, const EquivOptions& options = {});
EquivReport causally_equivalent(const ModelPair& pair, const EquivOptions& options = {});

struct AncestryViolation {
    VarIndex ancestor;
    VarIndex descendant;
};

/// Ancestor pairs of M over its endogenous variables that M' (with W fixed to
/// the conservative witness) lacks. Empty when the pair is not conservatively equivalent.
std::vector<AncestryViolation> ancestry_preservation_check(const ModelPair& pair);

}  // namespace causalq
