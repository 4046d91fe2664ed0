#include "causalq/assignment.hpp"

#include <charconv>

#include "causalq/error.hpp"

namespace causalq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

Value parse_value(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        return std::string(s.substr(1, s.size() - 2));
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error("malformed value '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::size_t Assignment::count() const {
    std::size_t n = 0;
    for (int s : slots_) n += s != unbound;
    return n;
}

std::vector<VarIndex> Assignment::variables() const {
    std::vector<VarIndex> out;
    for (VarIndex i = 0; i < slots_.size(); ++i)
        if (slots_[i] != unbound) out.push_back(i);
    return out;
}

bool Assignment::subset_of(const Assignment& other) const {
    for (VarIndex i = 0; i < slots_.size(); ++i)
        if (slots_[i] != unbound && other.slots_[i] != slots_[i]) return false;
    return true;
}

bool Assignment::compatible(const Assignment& other) const {
    for (VarIndex i = 0; i < slots_.size(); ++i)
        if (slots_[i] != unbound && other.slots_[i] != unbound && other.slots_[i] != slots_[i]) return false;
    return true;
}

Assignment Assignment::merged(const Assignment& other) const {
    Assignment out = *this;
    for (VarIndex i = 0; i < slots_.size(); ++i)
        if (other.slots_[i] != unbound) out.slots_[i] = other.slots_[i];
    return out;
}

Assignment Assignment::restricted(const std::vector<VarIndex>& vars) const {
    Assignment out(slots_.size());
    for (VarIndex v : vars) out.slots_[v] = slots_[v];
    return out;
}

std::string format(const Signature& sig, const Assignment& a) {
    std::string out;
    for (VarIndex i = 0; i < a.size(); ++i) {
        if (!a.bound(i)) continue;
        if (!out.empty()) out += ",";
        out += sig.var(i).name + "=" + to_string(sig.value(i, a.get(i)));
    }
    return out.empty() ? "{}" : out;
}

Assignment parse_assignment(const Signature& sig, std::string_view text) {
    std::vector<std::pair<std::string, Value>> bindings;
    text = trim(text);
    if (text.empty() || text == "{}") return Assignment(sig.size());
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = trim(text.substr(start, comma - start));
        std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) throw Error("expected NAME=VALUE, got '" + std::string(item) + "'");
        bindings.emplace_back(std::string(trim(item.substr(0, eq))), parse_value(item.substr(eq + 1)));
        start = comma + 1;
    }
    return make_assignment(sig, bindings);
}

Assignment make_assignment(const Signature& sig, const std::vector<std::pair<std::string, Value>>& bindings) {
    Assignment a(sig.size());
    for (const auto& [name, value] : bindings) {
        VarIndex i = sig.index(name);
        if (a.bound(i)) throw Error("variable '" + name + "' bound twice");
        auto vi = sig.value_index(i, value);
        if (!vi) throw Error("value " + to_string(value) + " is not in the range of '" + name + "'");
        a.set(i, *vi);
    }
    return a;
}

Assignment translate(const Signature& from, const Signature& to, const Assignment& a) {
    Assignment out(to.size());
    for (VarIndex i : a.variables()) {
        VarIndex j = to.index(from.var(i).name);
        auto vi = to.value_index(j, from.value(i, a.get(i)));
        if (!vi) throw Error("value of '" + from.var(i).name + "' has no counterpart");
        out.set(j, *vi);
    }
    return out;
}

}  // namespace causalq
