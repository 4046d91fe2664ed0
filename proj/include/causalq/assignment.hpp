#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "causalq/signature.hpp"

namespace causalq {

/// Partial map from variables to value indices, stored densely per Signature.
///
/// Slot i holds the index of the value bound to variable i in its range, or
/// `unbound`. Interventions, contexts, witnesses and sufficiency antecedents
/// all use this one type.
class Assignment {
public:
    static constexpr int unbound = -1;

    Assignment() = default;
    explicit Assignment(std::size_t n) : slots_(n, unbound) {}

    std::size_t size() const { return slots_.size(); }
    bool bound(VarIndex i) const { return slots_[i] != unbound; }
    int get(VarIndex i) const { return slots_[i]; }
    void set(VarIndex i, int value_index) { slots_[i] = value_index; }
    void clear(VarIndex i) { slots_[i] = unbound; }

    std::size_t count() const;
    bool empty() const { return count() == 0; }
    std::vector<VarIndex> variables() const;

    /// True when every binding here is also present, with the same value, in `other`.
    bool subset_of(const Assignment& other) const;
    /// True when no variable is bound to different values in the two assignments.
    bool compatible(const Assignment& other) const;
    /// Union; bindings of `other` win on conflict.
    Assignment merged(const Assignment& other) const;
    Assignment restricted(const std::vector<VarIndex>& vars) const;

    const std::vector<int>& slots() const { return slots_; }

    friend bool operator==(const Assignment&, const Assignment&) = default;
    friend auto operator<=>(const Assignment&, const Assignment&) = default;

private:
    std::vector<int> slots_;
};

/// A total assignment to the exogenous variables.
using Context = Assignment;

/// "A=1,B=0" in declaration order; "{}" when empty.
std::string format(const Signature& sig, const Assignment& a);

/// Parses "A=1,B='x'" against `sig`. Throws Error on unknown names, out-of-range
/// values or repeated variables.
Assignment parse_assignment(const Signature& sig, std::string_view text);

/// Builds an assignment from name/value pairs. Throws Error like parse_assignment.
Assignment make_assignment(const Signature& sig, const std::vector<std::pair<std::string, Value>>& bindings);

/// Re-expresses `a` over `to` by variable name; every bound variable must exist in `to`.
Assignment translate(const Signature& from, const Signature& to, const Assignment& a);

/// Calls `fn(assignment)` for every total setting of `vars`, bindings layered on
/// `base`, in lexicographic order of declared values (last variable varies fastest).
template <typename Fn>
void for_each_setting(const Signature& sig, const std::vector<VarIndex>& vars, Assignment base, Fn&& fn) {
    for (VarIndex v : vars) base.set(v, 0);
    while (true) {
        fn(static_cast<const Assignment&>(base));
        std::size_t k = vars.size();
        while (k > 0) {
            VarIndex v = vars[k - 1];
            if (base.get(v) + 1 < static_cast<int>(sig.range_size(v))) {
                base.set(v, base.get(v) + 1);
                break;
            }
            base.set(v, 0);
            --k;
        }
        if (k == 0) return;
    }
}

/// Like for_each_setting, but stops as soon as `fn` returns true. Returns whether it stopped.
template <typename Fn>
bool any_setting(const Signature& sig, const std::vector<VarIndex>& vars, Assignment base, Fn&& fn) {
    for (VarIndex v : vars) base.set(v, 0);
    while (true) {
        if (fn(static_cast<const Assignment&>(base))) return true;
        std::size_t k = vars.size();
        while (k > 0) {
            VarIndex v = vars[k - 1];
            if (base.get(v) + 1 < static_cast<int>(sig.range_size(v))) {
                base.set(v, base.get(v) + 1);
                break;
            }
            base.set(v, 0);
            --k;
        }
        if (k == 0) return false;
    }
}

/// Enumerates partial assignments over `vars` by increasing number of bound
/// variables, then lexicographically by variable subset and values. Stops when
/// `fn` returns true; returns whether it stopped.
template <typename Fn>
bool any_partial_setting(const Signature& sig, const std::vector<VarIndex>& vars, const Assignment& base, Fn&& fn) {
    const std::size_t n = vars.size();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            std::vector<VarIndex> subset;
            subset.reserve(k);
            for (std::size_t i : pick) subset.push_back(vars[i]);
            if (any_setting(sig, subset, base, fn)) return true;
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return false;
}

}  // namespace causalq
