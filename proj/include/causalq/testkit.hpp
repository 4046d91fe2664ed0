#pragma once

// Brute-force reference implementations and random models for property tests.
// Nothing here is clever on purpose: each oracle expands its definition
// literally, building intervened models and solving them context by context.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "causalq/equivalence.hpp"
#include "causalq/model.hpp"
#include "causalq/relations.hpp"

namespace causalq::testkit {

/// Counts model solutions and refuses (BudgetExceeded) past the limit.
class Guard {
public:
    explicit Guard(std::uint64_t limit = 10'000'000) : limit_(limit) {}
    void spend(std::uint64_t n = 1);
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

/// For each target Y: every context agreeing with the antecedent's exogenous
/// part and every intervention on the endogenous variables outside the
/// antecedent and Y yields the target value.
bool oracle_directly_sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent,
                                Guard& guard);

/// Breadth-first search over all endogenous partial assignments, each step
/// checked with oracle_directly_sufficient. By default every later chain
/// element, the consequent included, must agree with the antecedent's
/// endogenous bindings; `literal` drops that.
bool oracle_sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent, Guard& guard,
                       bool literal = false);

/// Solves the intervened model in `context`.
bool oracle_weakly_sufficient(const Model& model, const Context& context, const Assignment& antecedent,
                              const Assignment& consequent, Guard& guard);

/// Potential parenthood through causal formulas: some context u and setting z
/// of every endogenous variable but X and Y satisfy [z, X<-x] Y=y and [z, X<-x'] Y=y'.
/// X must be endogenous.
bool formula_potential_parent(const Model& model, const ContrastPair& source, const ContrastPair& target,
                              Guard& guard);

/// Joint parenthood by trying every witness over every variable set disjoint
/// from source and target, and every strict subset of the source for minimality.
/// With `world`, witnesses and the source's left side must hold in it.
bool oracle_joint_parents(const Model& model, const ContrastPair& source, const ContrastPair& target, Guard& guard,
                          const std::optional<Assignment>& world = std::nullopt);

/// Conservative equivalence over every context and every partial intervention
/// on common endogenous variables. Returns the first passing witness.
std::optional<Assignment> naive_conservative_witness(const ModelPair& pair, Guard& guard);

/// Whether the equations of two models over the same signature agree on every input.
bool extensionally_equal(const Model& a, const Model& b);

struct ModelProfile {
    int n_endo = 3;
    int n_exo = 1;
    int max_range = 2;
    int depth = 2;
};

/// Deterministic per seed. Exogenous variables U1.. come first, then endogenous
/// A, B, ... in a topological order. Throws Error when n_endo is 0.
Model generate_model(std::uint64_t seed, const ModelProfile& profile);

struct SpliceProfile {
    int splices = 1;
    /// Only insert copies along existing edges (E=C becomes E=D, D=C).
    bool subdivisions_only = false;
    int depth = 2;
};

/// An extension of `base`: same variables and declaration order, with new
/// variables appended. Moves are edge subdivision, a new exogenous noise
/// variable gating an equation, a new child, and rewriting an equation.
Model generate_extension(std::uint64_t seed, const Model& base, const SpliceProfile& profile);

}  // namespace causalq::testkit
