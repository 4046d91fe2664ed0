#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace causalq {

/// A value in a variable's range: a signed integer or a named symbol.
using Value = std::variant<std::int64_t, std::string>;

/// Finite, nonempty, ordered list of values.
using Range = std::vector<Value>;

inline bool is_integer(const Value& v) { return std::holds_alternative<std::int64_t>(v); }

/// Integers print bare, symbols print double-quoted.
std::string to_string(const Value& v);

std::string to_string(const Range& r);

}  // namespace causalq
