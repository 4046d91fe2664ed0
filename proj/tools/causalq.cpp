// causalq: validate models, evaluate formulas, query causal relations and
// compare models from the command line.
//
// Exit status: 0 when the verdict is true, 1 when it is false, 2 on any error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "causalq/dsl.hpp"
#include "causalq/equivalence.hpp"
#include "causalq/error.hpp"
#include "causalq/relations.hpp"
#include "causalq/report.hpp"
#include "causalq/sufficiency.hpp"

using namespace causalq;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

// Thrown for bad arguments that only show up once the model is known.
struct UsageError : Error {
    using Error::Error;
};

std::vector<Model> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::stringstream text;
    text << in.rdbuf();
    std::vector<Model> models;
    for (const auto& source : parse_models(text.str())) models.push_back(to_model(source));
    return models;
}

Model find_model(const std::vector<Model>& models, const std::string& name) {
    for (const auto& m : models)
        if (m.name() == name) return m;
    std::string known;
    for (const auto& m : models) known += (known.empty() ? "" : ", ") + m.name();
    throw UsageError("no model named '" + name + "' (have: " + known + ")");
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
    return out;
}

Context parse_context(const Model& model, const std::vector<std::string>& items) {
    const Signature& sig = model.signature();
    Context ctx = parse_assignment(sig, join(items));
    for (VarIndex v : ctx.variables())
        if (!sig.is_exogenous(v)) throw UsageError("context binds endogenous variable '" + sig.var(v).name + "'");
    for (VarIndex u : sig.exogenous())
        if (!ctx.bound(u)) throw UsageError("context does not bind exogenous variable '" + sig.var(u).name + "'");
    return ctx;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int verdict(bool holds) { return holds ? kTrue : kFalse; }

std::string spaced(const Signature& sig, const Assignment& a) {
    std::string out;
    for (VarIndex v : a.variables()) out += (out.empty() ? "" : " ") + sig.var(v).name + "=" + to_string(sig.value(v, a.get(v)));
    return out;
}

Json names(const Signature& sig, const std::vector<VarIndex>& vars) {
    Json out = Json::array();
    for (VarIndex v : vars) out.push_back(sig.var(v).name);
    return out;
}

// -- commands ---------------------------------------------------------------

struct Common {
    std::string file;
    std::string model;
    std::vector<std::string> context;
    bool json = false;
};

int cmd_validate(const Common& c) {
    const auto models = load(c.file);
    bool all = true;
    Json out = Json::array();
    for (const auto& m : models) {
        const ValidationReport& r = m.report();
        all = all && r.ok();
        if (c.json) {
            Json violations = Json::array();
            for (const auto& v : r.range_violations)
                violations.push_back(Json{{"variable", m.signature().var(v.variable).name},
                                          {"input", to_json(m.signature(), v.input)},
                                          {"output", v.output}});
            out.push_back(Json{{"model", m.name()},
                               {"valid", r.ok()},
                               {"problems", r.problems},
                               {"range_violations", violations},
                               {"cycle", names(m.signature(), r.cycle)},
                               {"order", names(m.signature(), r.order)}});
        } else {
            std::cout << m.name() << ": " << to_string(m, r);
        }
    }
    if (c.json) print(Json{{"file", c.file}, {"models", out}});
    return verdict(all);
}

int cmd_solve(const Common& c) {
    const Model m = find_model(load(c.file), c.model);
    const Signature& sig = m.signature();
    const Assignment world = solve(m, parse_context(m, c.context)).restricted(sig.endogenous());
    if (c.json)
        print(Json{{"model", m.name()}, {"context", to_json(sig, parse_context(m, c.context))}, {"solution", to_json(sig, world)}});
    else
        std::cout << spaced(sig, world) << "\n";
    return kTrue;
}

int cmd_query(const Common& c, const std::string& text) {
    const Model m = find_model(load(c.file), c.model);
    const Formula f = parse_formula(text, m.signature());
    const Context ctx = parse_context(m, c.context);
    const bool holds = satisfies(m, ctx, f);
    if (c.json)
        print(Json{{"model", m.name()},
                   {"formula", print_formula(f, m.signature())},
                   {"context", to_json(m.signature(), ctx)},
                   {"holds", holds}});
    else
        std::cout << (holds ? "true" : "false") << "\n";
    return verdict(holds);
}

struct RelationArgs {
    std::string kind;
    std::vector<std::string> operands;
    bool witness = false;
};

const std::vector<std::string> kRelationKinds = {
    "parent", "ancestor", "potential-joint-parents", "potential-joint-ancestors", "actual-parent",
    "actual-joint-ancestors", "direct-sufficient", "sufficient", "weak-sufficient"};

int cmd_relation(const Common& c, const RelationArgs& r) {
    const Model m = find_model(load(c.file), c.model);
    m.require_valid();
    const Signature& sig = m.signature();
    if (r.operands.size() != 2) throw UsageError("relation " + r.kind + " takes two operands");
    const std::string& a = r.operands[0];
    const std::string& b = r.operands[1];
    const bool contextual = r.kind == "actual-parent" || r.kind == "actual-joint-ancestors" || r.kind == "weak-sufficient";
    if (contextual && c.context.empty()) throw UsageError("relation " + r.kind + " needs --context");
    if (!contextual && !c.context.empty()) throw UsageError("relation " + r.kind + " takes no context");

    auto variable = [&](const std::string& name) {
        auto v = sig.find(name);
        if (!v) throw UsageError("unknown variable '" + name + "'");
        return *v;
    };

    bool holds = false;
    Json cert;
    std::string text;

    if (r.kind == "parent") {
        const auto p = is_parent(m, variable(a), variable(b));
        holds = p.holds;
        if (holds) {
            cert = Json{{"source", to_json(sig, *p.source)}, {"target", to_json(sig, *p.target)}, {"witness", to_json(sig, p.witness)}};
            text = format(sig, *p.source) + " ~> " + format(sig, *p.target) + " [witness " + format(sig, p.witness) + "]\n";
        }
    } else if (r.kind == "ancestor") {
        const auto p = is_ancestor(m, variable(a), variable(b));
        holds = p.holds;
        cert = Json{{"path", names(sig, p.path)}};
        for (std::size_t i = 0; i < p.path.size(); ++i) text += (i ? " -> " : "") + sig.var(p.path[i]).name;
        if (holds) text += "\n";
    } else if (r.kind == "potential-joint-parents" || r.kind == "actual-parent") {
        const ContrastPair s = parse_contrast(sig, a), t = parse_contrast(sig, b);
        const auto p = r.kind == "actual-parent" ? actual_parent(m, parse_context(m, c.context), s, t)
                                                 : potential_joint_parents(m, s, t);
        holds = p.holds;
        cert = Json{{"witness", to_json(sig, p.witness)}};
        if (holds) text = "witness " + format(sig, p.witness) + "\n";
    } else if (r.kind == "potential-joint-ancestors" || r.kind == "actual-joint-ancestors") {
        const ContrastPair s = parse_contrast(sig, a), t = parse_contrast(sig, b);
        const auto n = r.kind == "actual-joint-ancestors" ? actual_joint_ancestors(m, parse_context(m, c.context), s, t)
                                                          : potential_joint_ancestors(m, s, t);
        holds = n.holds;
        cert = Json{{"network", to_json(sig, n.network)}};
        text = format(sig, n.network);
    } else if (r.kind == "direct-sufficient" || r.kind == "sufficient" || r.kind == "weak-sufficient") {
        const Assignment x = parse_assignment(sig, a), y = parse_assignment(sig, b);
        if (r.kind == "direct-sufficient") {
            holds = directly_sufficient(m, x, y);
        } else if (r.kind == "weak-sufficient") {
            const Context ctx = parse_context(m, c.context);
            holds = weakly_sufficient(m, ctx, x, y);
            cert = Json{{"solution", to_json(sig, solve(m, ctx, x).restricted(sig.endogenous()))}};
            text = "solution " + format(sig, solve(m, ctx, x).restricted(sig.endogenous())) + "\n";
        } else {
            const auto s = sufficient(m, x, y);
            holds = s.holds;
            Json chain = Json::array();
            for (const auto& w : s.chain) {
                chain.push_back(to_json(sig, w));
                text += format(sig, w) + "\n";
            }
            cert = Json{{"chain", chain}};
        }
    } else {
        throw UsageError("unknown relation kind '" + r.kind + "'");
    }

    if (c.json) {
        Json out{{"relation", r.kind}, {"model", m.name()}, {"holds", holds}, {"operands", r.operands}};
        if (!c.context.empty()) out["context"] = to_json(sig, parse_context(m, c.context));
        if (r.witness) out["certificate"] = cert.is_null() ? Json::object() : cert;
        print(out);
    } else {
        std::cout << (holds ? "true" : "false") << "\n";
        if (r.witness) std::cout << text;
    }
    return verdict(holds);
}

struct EquivArgs {
    std::string kind;
    std::string other;
    std::vector<std::string> witness;
    bool strict = false;
    bool endogenous_sources = false;
};

int cmd_equiv(const Common& c, const EquivArgs& e) {
    const auto models = load(c.file);
    Model a = find_model(models, c.model);
    Model b = find_model(models, e.other);
    if (!signature_nested(a.signature(), b.signature())) {
        if (!signature_nested(b.signature(), a.signature()))
            throw UsageError("neither signature of '" + a.name() + "' and '" + b.name() + "' contains the other");
        std::cerr << "note: signature of '" << b.name() << "' is contained in that of '" << a.name()
                  << "'; comparing with '" << b.name() << "' as the base model\n";
        std::swap(a, b);
    }
    const ModelPair pair(a, b);

    std::size_t values = 0;
    for (VarIndex v : pair.common()) values += pair.base().signature().range_size(v);
    if (values > 12)
        std::cerr << "warning: " << values << " values over common variables; the search may take a while\n";

    EquivOptions options;
    options.strict = e.strict;
    options.exogenous_sources = !e.endogenous_sources;
    if (const char* env = std::getenv("CAUSALQ_MAX_EVALS")) {
        try {
            options.max_evaluations = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("CAUSALQ_MAX_EVALS is not a number: '") + env + "'");
        }
    }
    if (!e.witness.empty()) options.witness = parse_assignment(pair.extension().signature(), join(e.witness));

    EquivReport report;
    if (e.kind == "structural")
        report = structurally_equivalent(pair, options);
    else if (e.kind == "functional")
        report = functionally_equivalent(pair, options);
    else if (e.kind == "conservative")
        report = conservatively_equivalent(pair, options);
    else if (e.kind == "causal")
        report = causally_equivalent(pair, options);
    else
        throw UsageError("unknown equivalence kind '" + e.kind + "'");

    if (c.json)
        print(to_json(pair, report));
    else
        std::cout << to_text(pair, report);
    return verdict(report.verdict);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-domain structural causal models: solve, query and compare."};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");
    app.footer(
        "Exit status: 0 true, 1 false, 2 error.\n"
        "Assignments are written A=1,B=0 (symbols in double quotes); contrasts as\n"
        "\"A=1,C=1 vs A=0,C=0\". CAUSALQ_MAX_EVALS caps the checks an equivalence search may run.");

    Common common;
    auto add_file = [&](CLI::App* cmd) { cmd->add_option("file", common.file, "Model file")->required(); };
    auto add_model = [&](CLI::App* cmd) { cmd->add_option("model", common.model, "Model name")->required(); };
    auto add_context = [&](CLI::App* cmd) {
        cmd->add_option("--context", common.context, "Exogenous values, e.g. U=1 (repeatable)")->expected(1);
    };
    auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", common.json, "Print JSON"); };

    auto* validate = app.add_subcommand("validate", "Check every model in a file");
    add_file(validate);
    add_json(validate);

    auto* solve_cmd = app.add_subcommand("solve", "Print the endogenous values in a context");
    add_file(solve_cmd);
    add_model(solve_cmd);
    add_context(solve_cmd);
    add_json(solve_cmd);

    std::string formula;
    auto* query = app.add_subcommand("query", "Evaluate a causal formula such as \"[C<-0] E=0\"");
    add_file(query);
    add_model(query);
    query->add_option("formula", formula, "Formula")->required();
    add_context(query);
    add_json(query);

    RelationArgs rel;
    auto* relation = app.add_subcommand("relation", "Query a causal relation");
    relation->add_option("kind", rel.kind, "Relation kind")->required()->check(CLI::IsMember(kRelationKinds));
    add_file(relation);
    add_model(relation);
    relation->add_option("operands", rel.operands,
                         "parent/ancestor: two variable names; *-parents/ancestors: two contrasts; "
                         "*-sufficient: antecedent and consequent assignments")
        ->expected(2);
    add_context(relation);
    relation->add_flag("--witness", rel.witness, "Print the certificate");
    add_json(relation);

    EquivArgs eq;
    auto* equiv = app.add_subcommand("equiv", "Compare a model with an extension of it");
    equiv->add_option("kind", eq.kind, "structural, functional, conservative or causal")
        ->required()
        ->check(CLI::IsMember({"structural", "functional", "conservative", "causal"}));
    add_file(equiv);
    add_model(equiv);
    equiv->add_option("other", eq.other, "Second model name")->required();
    equiv->add_option("--witness", eq.witness, "Fix the extension's extra exogenous values instead of searching")
        ->expected(1);
    equiv->add_flag("--strict", eq.strict, "Also fix the witness when comparing potential ancestry");
    equiv->add_flag("--endogenous-sources", eq.endogenous_sources,
                    "Leave exogenous variables out of ancestry sources");
    add_json(equiv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*validate) return cmd_validate(common);
        if (*solve_cmd) return cmd_solve(common);
        if (*query) return cmd_query(common, formula);
        if (*relation) return cmd_relation(common, rel);
        if (*equiv) return cmd_equiv(common, eq);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
