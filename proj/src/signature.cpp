#include "causalq/signature.hpp"

#include <algorithm>

#include "causalq/error.hpp"

namespace causalq {

VarIndex Signature::add(std::string name, VarKind kind, Range range) {
    if (by_name_.count(name)) throw Error("duplicate variable '" + name + "'");
    if (range.empty()) throw Error("variable '" + name + "' has an empty range");
    for (std::size_t i = 0; i < range.size(); ++i) {
        if (std::find(range.begin(), range.begin() + static_cast<std::ptrdiff_t>(i), range[i]) != range.begin() + static_cast<std::ptrdiff_t>(i))
            throw Error("duplicate value " + to_string(range[i]) + " in range of '" + name + "'");
    }
    const VarIndex idx = vars_.size();
    by_name_.emplace(name, idx);
    (kind == VarKind::exogenous ? exo_ : endo_).push_back(idx);
    vars_.push_back(Variable{std::move(name), kind, std::move(range)});
    return idx;
}

std::optional<VarIndex> Signature::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

VarIndex Signature::index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error("unknown variable '" + std::string(name) + "'");
}

std::optional<int> Signature::value_index(VarIndex i, const Value& v) const {
    const auto& r = vars_[i].range;
    auto it = std::find(r.begin(), r.end(), v);
    if (it == r.end()) return std::nullopt;
    return static_cast<int>(it - r.begin());
}

}  // namespace causalq
