#include "causalq/report.hpp"

namespace causalq {

Json to_json(const Signature& sig, const Assignment& a) {
    Json out = Json::object();
    for (VarIndex v : a.variables()) {
        const Value& value = sig.value(v, a.get(v));
        if (is_integer(value))
            out[sig.var(v).name] = std::get<std::int64_t>(value);
        else
            out[sig.var(v).name] = std::get<std::string>(value);
    }
    return out;
}

Json to_json(const Signature& sig, const ContrastPair& c) {
    return Json{{"left", to_json(sig, c.left)}, {"right", to_json(sig, c.right)}};
}

Json to_json(const Signature& sig, const Network& n) {
    Json steps = Json::array();
    for (const auto& s : n.steps)
        steps.push_back(Json{{"source", to_json(sig, s.source)},
                             {"target", to_json(sig, s.target)},
                             {"witness", to_json(sig, s.witness)}});
    return steps;
}

namespace {

Json counterexample_json(const ModelPair& pair, const Counterexample& c) {
    const Signature& sig = pair.base().signature();
    Json out{{"relation", c.relation},
             {"holds_in", c.holds_in_base ? pair.base().name() : pair.extension().name()},
             {"fails_in", c.holds_in_base ? pair.extension().name() : pair.base().name()}};
    if (c.source) {
        out["source"] = to_json(sig, *c.source);
        out["target"] = to_json(sig, *c.target);
    } else {
        out["antecedent"] = to_json(sig, c.antecedent);
        out["consequent"] = to_json(sig, c.consequent);
    }
    out["context"] = c.context ? to_json(sig, *c.context) : Json(nullptr);
    return out;
}

}  // namespace

Json to_json(const ModelPair& pair, const EquivReport& report) {
    const Signature& ext = pair.extension().signature();
    Json trace = Json::array();
    for (const auto& t : report.trace) {
        trace.push_back(Json{{"witness", to_json(ext, t.witness)},
                             {"passed", t.passed},
                             {"failed", t.passed ? Json(nullptr) : Json(t.failed)}});
    }
    return Json{{"kind", report.kind},
                {"base", pair.base().name()},
                {"extension", pair.extension().name()},
                {"verdict", report.verdict},
                {"witness", report.witness ? to_json(ext, *report.witness) : Json(nullptr)},
                {"counterexample",
                 report.counterexample ? counterexample_json(pair, *report.counterexample) : Json(nullptr)},
                {"trace", trace}};
}

std::string describe(const Signature& sig, const Counterexample& c, const std::string& base,
                     const std::string& extension) {
    const std::string& yes = c.holds_in_base ? base : extension;
    const std::string& no = c.holds_in_base ? extension : base;
    std::string fact;
    if (c.source)
        fact = format(sig, *c.source) + " ~> " + format(sig, *c.target);
    else
        fact = format(sig, c.antecedent) + " => " + format(sig, c.consequent);
    std::string out = c.relation + " " + fact + " holds in " + yes + " but not in " + no;
    if (c.context) out += " (context " + format(sig, *c.context) + ")";
    return out;
}

std::string to_text(const ModelPair& pair, const EquivReport& report) {
    const Signature& ext = pair.extension().signature();
    std::string out = report.kind + " equivalence of " + pair.base().name() + " and " + pair.extension().name() +
                      ": " + (report.verdict ? "true" : "false") + "\n";
    if (report.witness) out += "witness: " + format(ext, *report.witness) + "\n";
    if (report.counterexample)
        out += "counterexample: " +
               describe(pair.base().signature(), *report.counterexample, pair.base().name(),
                        pair.extension().name()) +
               "\n";
    for (const auto& t : report.trace) {
        if (t.passed) continue;
        out += "  w = " + format(ext, t.witness) + " fails " + t.failed;
        if (t.counterexample)
            out += ": " + describe(pair.base().signature(), *t.counterexample, pair.base().name(),
                                   pair.extension().name());
        out += "\n";
    }
    return out;
}

}  // namespace causalq
