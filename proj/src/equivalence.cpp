#include "causalq/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "causalq/error.hpp"
#include "causalq/sufficiency.hpp"

namespace causalq {

bool signature_nested(const Signature& inner, const Signature& outer) {
    bool nested = true;
    for (const auto& v : inner.vars()) {
        auto j = outer.find(v.name);
        if (!j) {
            nested = false;
            continue;
        }
        const Variable& w = outer.var(*j);
        if (w.kind != v.kind) throw Error("variable '" + v.name + "' is exogenous in one model only");
        if (w.range != v.range)
            throw Error("variable '" + v.name + "' has range " + to_string(v.range) + " in one model and " +
                        to_string(w.range) + " in the other");
    }
    return nested;
}

ModelPair::ModelPair(Model base, Model extension) : base_(std::move(base)), extension_(std::move(extension)) {
    base_.require_valid();
    extension_.require_valid();
    const Signature& b = base_.signature();
    const Signature& e = extension_.signature();
    if (!signature_nested(b, e))
        throw Error("signature of '" + base_.name() + "' is not contained in that of '" + extension_.name() + "'");
    for (VarIndex i = 0; i < b.size(); ++i) common_.push_back(i);
    for (VarIndex j = 0; j < e.size(); ++j) {
        if (b.find(e.var(j).name)) continue;
        (e.is_exogenous(j) ? marginalized_ : hidden_).push_back(j);
    }
}

Assignment ModelPair::to_extension(const Assignment& a) const {
    return translate(base_.signature(), extension_.signature(), a);
}

Assignment ModelPair::to_base(const Assignment& a) const {
    const Signature& e = extension_.signature();
    const Signature& b = base_.signature();
    Assignment out(b.size());
    for (VarIndex j : a.variables())
        if (auto i = b.find(e.var(j).name)) out.set(*i, *b.value_index(*i, e.value(j, a.get(j))));
    return out;
}

ContrastPair ModelPair::to_extension(const ContrastPair& c) const {
    return ContrastPair{to_extension(c.left), to_extension(c.right)};
}

ContrastPair ModelPair::to_base(const ContrastPair& c) const { return ContrastPair{to_base(c.left), to_base(c.right)}; }

Model ModelPair::pinned(const Assignment& w) const { return pin_exogenous(extension_, w); }

namespace {

class Budget {
public:
    explicit Budget(std::uint64_t limit) : limit_(limit) {}
    void spend(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_)
            throw BudgetExceeded("enumeration exceeded " + std::to_string(limit_) +
                                 " checks; raise CAUSALQ_MAX_EVALS to continue");
    }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

std::vector<Assignment> witnesses(const ModelPair& pair, const EquivOptions& options) {
    const Signature& e = pair.extension().signature();
    if (options.witness) {
        const Assignment& w = *options.witness;
        if (w.size() != e.size()) throw Error("witness is not over the extension's signature");
        for (VarIndex j : w.variables())
            if (std::find(pair.marginalized().begin(), pair.marginalized().end(), j) == pair.marginalized().end())
                throw Error("witness binds '" + e.var(j).name + "', which is not a marginalized variable");
        for (VarIndex j : pair.marginalized())
            if (!w.bound(j)) throw Error("witness leaves '" + e.var(j).name + "' unset");
        return {w};
    }
    std::vector<Assignment> out;
    for_each_setting(e, pair.marginalized(), Assignment(e.size()), [&](const Assignment& w) { out.push_back(w); });
    return out;
}

std::vector<Context> contexts(const Signature& sig) {
    std::vector<Context> out;
    for_each_setting(sig, sig.exogenous(), Assignment(sig.size()), [&](const Assignment& u) { out.push_back(u); });
    return out;
}

std::vector<ContrastPair> sources(const ModelPair& pair, const EquivOptions& options) {
    const Signature& b = pair.base().signature();
    std::vector<VarIndex> vars;
    for (VarIndex v : pair.common())
        if (options.exogenous_sources || b.is_endogenous(v)) vars.push_back(v);
    return all_contrasts(b, vars);
}

using Check = std::function<std::optional<Counterexample>(const Assignment& w)>;

EquivReport search(std::string kind, const ModelPair& pair, const EquivOptions& options, const std::string& label,
                   const Check& check) {
    EquivReport report;
    report.kind = std::move(kind);
    for (const Assignment& w : witnesses(pair, options)) {
        WitnessTrial trial;
        trial.witness = w;
        trial.counterexample = check(w);
        trial.passed = !trial.counterexample;
        if (!trial.passed) trial.failed = label;
        report.trace.push_back(trial);
        if (trial.passed) {
            report.verdict = true;
            report.witness = w;
            return report;
        }
    }
    if (!report.trace.empty()) report.counterexample = report.trace.front().counterexample;
    return report;
}

// Compares the joint-ancestry facts of two searches from every source. M'
// targets that mention hidden variables are not facts about common variables.
std::optional<Counterexample> compare_ancestry(const ModelPair& pair, const std::vector<ContrastPair>& srcs,
                                               JointAncestry& base, JointAncestry& ext, Budget& budget,
                                               const std::optional<Context>& context) {
    for (const ContrastPair& s : srcs) {
        budget.spend();
        const std::set<ContrastPair> in_base = base.reachable(s);
        std::set<ContrastPair> in_ext;
        for (const ContrastPair& t : ext.reachable(pair.to_extension(s))) {
            bool common = true;
            for (VarIndex j : t.variables())
                if (std::find(pair.hidden().begin(), pair.hidden().end(), j) != pair.hidden().end()) common = false;
            if (common) in_ext.insert(pair.to_base(t));
        }
        if (in_base == in_ext) continue;

        std::vector<ContrastPair> diff;
        std::set_symmetric_difference(in_base.begin(), in_base.end(), in_ext.begin(), in_ext.end(),
                                      std::back_inserter(diff));
        Counterexample c;
        c.relation = context ? "actual-joint-ancestry" : "potential-joint-ancestry";
        c.holds_in_base = in_base.count(diff.front()) > 0;
        c.source = s;
        c.target = diff.front();
        c.context = context;
        return c;
    }
    return std::nullopt;
}

std::optional<Counterexample> structural_check(const ModelPair& pair, const EquivOptions& options, Budget& budget,
                                               const Assignment& w, std::optional<Counterexample>& literal_cache,
                                               bool& literal_done) {
    const auto srcs = sources(pair, options);
    const Model& m = pair.base();

    // Literal mode compares potential ancestry in M' as is, so the outcome does
    // not depend on w and is computed once.
    if (options.strict) {
        const Model pinned = pair.pinned(w);
        JointAncestry a(m), b(pinned);
        if (auto c = compare_ancestry(pair, srcs, a, b, budget, std::nullopt)) return c;
    } else {
        if (!literal_done) {
            JointAncestry a(m), b(pair.extension());
            literal_cache = compare_ancestry(pair, srcs, a, b, budget, std::nullopt);
            literal_done = true;
        }
        if (literal_cache) return literal_cache;
    }

    for (const Context& u : contexts(m.signature())) {
        JointAncestry a(m, u), b(pair.extension(), pair.to_extension(u).merged(w));
        if (auto c = compare_ancestry(pair, srcs, a, b, budget, u)) return c;
    }
    return std::nullopt;
}

std::optional<Counterexample> functional_check(const ModelPair& pair, Budget& budget, const Assignment& w) {
    const Model& m = pair.base();
    const Model& ext = pair.extension();
    const Signature& b = m.signature();
    std::optional<Counterexample> found;
    any_partial_setting(b, pair.common(), Assignment(b.size()), [&](const Assignment& x) {
        budget.spend();
        const Assignment in_base = sufficiency_closure(m, x);
        const Assignment in_ext = pair.to_base(sufficiency_closure(ext, pair.to_extension(x).merged(w)));
        if (in_base == in_ext) return false;
        for (VarIndex v : b.endogenous()) {
            if (in_base.get(v) == in_ext.get(v)) continue;
            // The first variable the closures disagree on; report the binding
            // from whichever side has one (the base side when both do).
            Counterexample c;
            c.relation = "sufficiency";
            c.holds_in_base = in_base.bound(v);
            c.antecedent = x;
            c.consequent = Assignment(b.size());
            c.consequent.set(v, c.holds_in_base ? in_base.get(v) : in_ext.get(v));
            found = c;
            return true;
        }
        return false;
    });
    return found;
}

// Full settings of all common endogenous variables but one decide weak
// sufficiency everywhere, so only those interventions are compared.
std::optional<Counterexample> conservative_check(const ModelPair& pair, Budget& budget, const Assignment& w) {
    const Model& m = pair.base();
    const Model& ext = pair.extension();
    const Signature& b = m.signature();
    const auto endo = b.endogenous();
    for (const Context& u : contexts(b)) {
        const Context ue = pair.to_extension(u).merged(w);
        for (VarIndex x : endo) {
            std::vector<VarIndex> rest;
            for (VarIndex v : endo)
                if (v != x) rest.push_back(v);
            std::optional<Counterexample> found;
            any_setting(b, rest, Assignment(b.size()), [&](const Assignment& z) {
                budget.spend();
                const int in_base = solve(m, u, z).get(x);
                const Assignment ext_world = solve(ext, ue, pair.to_extension(z));
                const int in_ext = pair.to_base(ext_world).get(x);
                if (in_base == in_ext) return false;
                Counterexample c;
                c.relation = "weak-sufficiency";
                c.holds_in_base = true;
                c.antecedent = z;
                c.consequent = Assignment(b.size());
                c.consequent.set(x, in_base);
                c.context = u;
                found = c;
                return true;
            });
            if (found) return found;
        }
    }
    return std::nullopt;
}

}  // namespace

EquivReport structurally_equivalent(const ModelPair& pair, const EquivOptions& options) {
    Budget budget(options.max_evaluations);
    std::optional<Counterexample> cache;
    bool done = false;
    return search("structural", pair, options, "structural",
                  [&](const Assignment& w) { return structural_check(pair, options, budget, w, cache, done); });
}

EquivReport functionally_equivalent(const ModelPair& pair, const EquivOptions& options) {
    Budget budget(options.max_evaluations);
    return search("functional", pair, options, "functional",
                  [&](const Assignment& w) { return functional_check(pair, budget, w); });
}

EquivReport conservatively_equivalent(const ModelPair& pair, const EquivOptions& options) {
    Budget budget(options.max_evaluations);
    return search("conservative", pair, options, "conservative",
                  [&](const Assignment& w) { return conservative_check(pair, budget, w); });
}

EquivReport causally_equivalent(const ModelPair& pair, const EquivOptions& options) {
    Budget budget(options.max_evaluations);
    std::optional<Counterexample> cache;
    bool done = false;
    EquivReport report;
    report.kind = "causal";
    for (const Assignment& w : witnesses(pair, options)) {
        WitnessTrial trial;
        trial.witness = w;
        if ((trial.counterexample = structural_check(pair, options, budget, w, cache, done)))
            trial.failed = "structural";
        else if ((trial.counterexample = functional_check(pair, budget, w)))
            trial.failed = "functional";
        trial.passed = !trial.counterexample;
        report.trace.push_back(trial);
        if (trial.passed) {
            report.verdict = true;
            report.witness = w;
            return report;
        }
    }
    if (!report.trace.empty()) report.counterexample = report.trace.front().counterexample;
    return report;
}

std::vector<AncestryViolation> ancestry_preservation_check(const ModelPair& pair) {
    const EquivReport cons = conservatively_equivalent(pair);
    if (!cons.verdict) return {};
    const Model pinned = pair.pinned(*cons.witness);
    const Signature& b = pair.base().signature();
    const Signature& e = pinned.signature();
    std::vector<AncestryViolation> out;
    for (VarIndex x : b.endogenous())
        for (VarIndex y : b.endogenous()) {
            if (x == y || !is_ancestor(pair.base(), x, y).holds) continue;
            if (!is_ancestor(pinned, e.index(b.var(x).name), e.index(b.var(y).name)).holds)
                out.push_back(AncestryViolation{x, y});
        }
    return out;
}

}  // namespace causalq
