#pragma once

#include <string>
#include <vector>

#include "causalq/assignment.hpp"
#include "causalq/expr.hpp"
#include "causalq/signature.hpp"

namespace causalq {

/// A structural equation together with its tabulation over the argument ranges.
struct Equation {
    ExprPtr expr;
    std::vector<VarIndex> args;       // variables the expression reads, declaration order
    std::vector<std::size_t> strides; // mixed-radix strides for `table`, last arg fastest
    std::vector<int> table;           // output value index per input tuple; -1 when out of range

    std::size_t row(const std::vector<int>& world) const {
        std::size_t r = 0;
        for (std::size_t k = 0; k < args.size(); ++k) r += static_cast<std::size_t>(world[args[k]]) * strides[k];
        return r;
    }
};

struct RangeViolation {
    VarIndex variable;
    Assignment input;  // binds exactly the equation's arguments
    std::string output;
};

struct ValidationReport {
    std::vector<std::string> problems;
    std::vector<RangeViolation> range_violations;
    std::vector<VarIndex> cycle;  // empty when acyclic
    std::vector<VarIndex> order;  // topological order of endogenous variables when valid

    bool ok() const { return problems.empty() && range_violations.empty() && cycle.empty(); }
};

/// Immutable causal model: a signature plus one equation per endogenous variable.
///
/// Construction never throws for semantic problems; it records them in the
/// validation report and `valid()` turns false. Every evaluating operation
/// rejects invalid models.
class Model {
public:
    Model() = default;

    /// `equations[i]` is the expression for variable i; it must be null exactly
    /// for exogenous variables. Throws Error when an expression names an
    /// undeclared variable or the equation vector is malformed.
    static Model build(std::string name, Signature sig, std::vector<ExprPtr> equations);

    const std::string& name() const { return name_; }
    const Signature& signature() const { return sig_; }
    const ValidationReport& report() const { return report_; }
    bool valid() const { return report_.ok(); }

    const Equation& equation(VarIndex v) const { return equations_[v]; }
    std::vector<ExprPtr> expressions() const;
    const std::vector<VarIndex>& order() const { return report_.order; }
    const std::vector<VarIndex>& children(VarIndex v) const { return children_[v]; }

    /// Table lookup of F_v on a world binding all of v's arguments.
    int evaluate(VarIndex v, const std::vector<int>& world) const {
        const Equation& eq = equations_[v];
        return eq.table[eq.row(world)];
    }

    /// Solves along `order`, which must be a topological order of all endogenous variables.
    Assignment solve_with_order(const Context& context, const Assignment& intervention,
                                const std::vector<VarIndex>& order) const;

    /// Throws Error unless valid.
    void require_valid() const;

private:
    std::string name_;
    Signature sig_;
    std::vector<Equation> equations_;
    std::vector<std::vector<VarIndex>> children_;
    ValidationReport report_;
};

ValidationReport validate(const Model& model);

/// The unique solution in `context`; binds every variable (context included).
/// Throws Error for invalid models or non-total contexts.
Assignment solve(const Model& model, const Context& context);

/// Solution of the intervened model without materializing it.
Assignment solve(const Model& model, const Context& context, const Assignment& intervention);

/// Model with each bound variable's equation replaced by its constant.
/// Throws Error when `setting` binds an exogenous variable.
Model intervene(const Model& model, const Assignment& setting);

/// Copy of `model` whose listed exogenous variables keep only their bound value
/// in range. Contexts disagreeing with `pin` are thereby dropped.
Model pin_exogenous(const Model& model, const Assignment& pin);

/// Human-readable rendering of a validation report.
std::string to_string(const Model& model, const ValidationReport& report);

}  // namespace causalq
