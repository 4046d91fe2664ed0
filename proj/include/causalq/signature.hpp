#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "causalq/value.hpp"

namespace causalq {

/// Index of a variable inside one Signature.
using VarIndex = std::size_t;

enum class VarKind { exogenous, endogenous };

struct Variable {
    std::string name;
    VarKind kind = VarKind::endogenous;
    Range range;
};

/// Exogenous and endogenous variables with their ranges, in declaration order.
///
/// Variables keep the order in which they were added; every enumeration in
/// the engine walks them in that order so results are reproducible.
class Signature {
public:
    Signature() = default;

    /// Throws Error on duplicate names, empty ranges or duplicate values.
    VarIndex add(std::string name, VarKind kind, Range range);

    std::size_t size() const { return vars_.size(); }
    const Variable& var(VarIndex i) const { return vars_[i]; }
    const std::vector<Variable>& vars() const { return vars_; }

    std::optional<VarIndex> find(std::string_view name) const;
    /// Throws Error for unknown names.
    VarIndex index(std::string_view name) const;

    bool is_exogenous(VarIndex i) const { return vars_[i].kind == VarKind::exogenous; }
    bool is_endogenous(VarIndex i) const { return vars_[i].kind == VarKind::endogenous; }

    const std::vector<VarIndex>& exogenous() const { return exo_; }
    const std::vector<VarIndex>& endogenous() const { return endo_; }

    std::size_t range_size(VarIndex i) const { return vars_[i].range.size(); }
    const Value& value(VarIndex i, int value_index) const { return vars_[i].range[static_cast<std::size_t>(value_index)]; }
    std::optional<int> value_index(VarIndex i, const Value& v) const;

private:
    std::vector<Variable> vars_;
    std::vector<VarIndex> exo_;
    std::vector<VarIndex> endo_;
    std::unordered_map<std::string, VarIndex> by_name_;
};

}  // namespace causalq
