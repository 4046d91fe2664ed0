#include "causalq/value.hpp"

namespace causalq {

std::string to_string(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    return "\"" + std::get<std::string>(v) + "\"";
}

std::string to_string(const Range& r) {
    std::string out = "{";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) out += ", ";
        out += to_string(r[i]);
    }
    return out + "}";
}

}  // namespace causalq
