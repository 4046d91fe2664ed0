#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "causalq/dsl.hpp"
#include "causalq/equivalence.hpp"
#include "causalq/report.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) { return std::string(CAUSALQ_FIXTURES) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

inline causalq::Model fixture_model(const std::string& file, const std::string& model) {
    for (const auto& source : causalq::parse_models(read_file(fixture_path(file + ".scm.txt"))))
        if (source.name == model) return causalq::to_model(source);
    throw std::runtime_error("no model " + model + " in " + file);
}

inline causalq::Model from_text(const std::string& text) { return causalq::to_model(causalq::parse_model(text)); }

inline causalq::Json sidecar(const std::string& file) {
    return causalq::Json::parse(read_file(fixture_path(file + ".expected.json")));
}

inline causalq::ModelPair fixture_pair(const std::string& file) {
    const auto j = sidecar(file);
    return causalq::ModelPair(fixture_model(file, j["base"]), fixture_model(file, j["extension"]));
}

inline causalq::Assignment at(const causalq::Model& m, const std::string& text) {
    return causalq::parse_assignment(m.signature(), text);
}

inline causalq::ContrastPair contrast(const causalq::Model& m, const std::string& text) {
    return causalq::parse_contrast(m.signature(), text);
}

inline causalq::VarIndex var(const causalq::Model& m, const std::string& name) { return m.signature().index(name); }

}  // namespace support
