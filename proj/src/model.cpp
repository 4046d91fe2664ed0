#include "causalq/model.hpp"

#include <algorithm>
#include <unordered_map>

#include "causalq/error.hpp"

namespace causalq {

namespace {

constexpr std::size_t kMaxTableSize = 10'000'000;

// Returns a cycle among endogenous variables (in dependence order) or empty.
std::vector<VarIndex> find_cycle(const Signature& sig, const std::vector<Equation>& eqs) {
    const std::size_t n = sig.size();
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<VarIndex> stack;
    std::vector<VarIndex> cycle;

    std::function<bool(VarIndex)> visit = [&](VarIndex v) {
        state[v] = 1;
        stack.push_back(v);
        for (VarIndex a : eqs[v].args) {
            if (!sig.is_endogenous(a)) continue;
            if (state[a] == 1) {
                auto it = std::find(stack.begin(), stack.end(), a);
                cycle.assign(it, stack.end());
                std::reverse(cycle.begin(), cycle.end());
                // rotate so the smallest index leads, for a stable rendering
                auto lo = std::min_element(cycle.begin(), cycle.end());
                std::rotate(cycle.begin(), lo, cycle.end());
                return true;
            }
            if (state[a] == 0 && visit(a)) return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (VarIndex v : sig.endogenous())
        if (state[v] == 0 && visit(v)) return cycle;
    return {};
}

std::vector<VarIndex> topological_order(const Signature& sig, const std::vector<Equation>& eqs) {
    std::vector<std::size_t> pending(sig.size(), 0);
    std::vector<std::vector<VarIndex>> out(sig.size());
    for (VarIndex v : sig.endogenous())
        for (VarIndex a : eqs[v].args)
            if (sig.is_endogenous(a)) {
                ++pending[v];
                out[a].push_back(v);
            }
    std::vector<VarIndex> order;
    std::vector<bool> done(sig.size(), false);
    while (order.size() < sig.endogenous().size()) {
        bool progressed = false;
        for (VarIndex v : sig.endogenous()) {
            if (done[v] || pending[v] != 0) continue;
            done[v] = true;
            order.push_back(v);
            for (VarIndex c : out[v]) --pending[c];
            progressed = true;
            break;  // restart so the smallest ready index always goes next
        }
        if (!progressed) return {};
    }
    return order;
}

}  // namespace

Model Model::build(std::string name, Signature sig, std::vector<ExprPtr> equations) {
    if (equations.size() != sig.size()) throw Error("equation count does not match signature");
    Model m;
    m.name_ = std::move(name);
    m.equations_.resize(sig.size());
    m.children_.resize(sig.size());

    for (VarIndex v = 0; v < sig.size(); ++v) {
        if (sig.is_exogenous(v)) {
            if (equations[v]) throw Error("exogenous variable '" + sig.var(v).name + "' cannot have an equation");
            continue;
        }
        if (!equations[v]) throw Error("endogenous variable '" + sig.var(v).name + "' has no equation");
        Equation& eq = m.equations_[v];
        eq.expr = equations[v];
        for (const auto& ref : referenced_variables(*eq.expr)) {
            auto idx = sig.find(ref);
            if (!idx) throw Error("equation for '" + sig.var(v).name + "' references unknown variable '" + ref + "'");
            eq.args.push_back(*idx);
        }
        std::sort(eq.args.begin(), eq.args.end());
        for (VarIndex a : eq.args) m.children_[a].push_back(v);
    }

    ValidationReport& rep = m.report_;
    if (sig.endogenous().empty()) rep.problems.push_back("model has no endogenous variables");

    for (VarIndex v : sig.endogenous()) {
        Equation& eq = m.equations_[v];
        if (std::find(eq.args.begin(), eq.args.end(), v) != eq.args.end()) {
            rep.cycle = {v};
        }
        std::size_t size = 1;
        eq.strides.assign(eq.args.size(), 1);
        for (std::size_t k = eq.args.size(); k-- > 0;) {
            eq.strides[k] = size;
            size *= sig.range_size(eq.args[k]);
            if (size > kMaxTableSize) break;
        }
        if (size > kMaxTableSize) {
            rep.problems.push_back("equation for '" + sig.var(v).name + "' has too many input combinations");
            continue;
        }
        eq.table.assign(size, -1);
        std::unordered_map<std::string, std::size_t> position;
        for (std::size_t k = 0; k < eq.args.size(); ++k) position.emplace(sig.var(eq.args[k]).name, k);

        Assignment base(sig.size());
        for_each_setting(sig, eq.args, base, [&](const Assignment& in) {
            const std::size_t r = eq.row(in.slots());
            std::string failure;
            try {
                Value out = causalq::evaluate(*eq.expr, [&](const std::string& n) {
                    VarIndex a = eq.args[position.at(n)];
                    return sig.value(a, in.get(a));
                });
                if (auto vi = sig.value_index(v, out)) {
                    eq.table[r] = *vi;
                    return;
                }
                failure = to_string(out);
            } catch (const EvalError& e) {
                failure = std::string("error: ") + e.what();
            }
            rep.range_violations.push_back(RangeViolation{v, in, failure});
        });
    }

    if (rep.cycle.empty()) rep.cycle = find_cycle(sig, m.equations_);
    if (rep.cycle.empty()) rep.order = topological_order(sig, m.equations_);
    m.sig_ = std::move(sig);
    if (!rep.ok()) rep.order.clear();
    return m;
}

std::vector<ExprPtr> Model::expressions() const {
    std::vector<ExprPtr> out;
    out.reserve(equations_.size());
    for (const auto& eq : equations_) out.push_back(eq.expr);
    return out;
}

void Model::require_valid() const {
    if (!valid()) throw Error("model '" + name_ + "' is invalid:\n" + to_string(*this, report_));
}

Assignment Model::solve_with_order(const Context& context, const Assignment& intervention,
                                   const std::vector<VarIndex>& order) const {
    Assignment world(sig_.size());
    for (VarIndex u : sig_.exogenous()) {
        if (!context.bound(u)) throw Error("context does not bind exogenous variable '" + sig_.var(u).name + "'");
        world.set(u, context.get(u));
    }
    // Direct slot access keeps the hot loop free of bound checks.
    std::vector<int> slots = world.slots();
    for (VarIndex v : order) slots[v] = intervention.bound(v) ? intervention.get(v) : evaluate(v, slots);
    for (VarIndex v : order) world.set(v, slots[v]);
    return world;
}

ValidationReport validate(const Model& model) { return model.report(); }

Assignment solve(const Model& model, const Context& context) {
    return solve(model, context, Assignment(model.signature().size()));
}

Assignment solve(const Model& model, const Context& context, const Assignment& intervention) {
    model.require_valid();
    return model.solve_with_order(context, intervention, model.order());
}

Model intervene(const Model& model, const Assignment& setting) {
    const Signature& sig = model.signature();
    auto eqs = model.expressions();
    for (VarIndex v : setting.variables()) {
        if (sig.is_exogenous(v)) throw Error("cannot intervene on exogenous variable '" + sig.var(v).name + "'");
        eqs[v] = Expr::literal(sig.value(v, setting.get(v)));
    }
    return Model::build(model.name(), sig, std::move(eqs));
}

Model pin_exogenous(const Model& model, const Assignment& pin) {
    const Signature& sig = model.signature();
    Signature pinned;
    for (VarIndex v = 0; v < sig.size(); ++v) {
        const Variable& var = sig.var(v);
        if (pin.bound(v)) {
            if (!sig.is_exogenous(v)) throw Error("can only pin exogenous variables, not '" + var.name + "'");
            pinned.add(var.name, var.kind, Range{sig.value(v, pin.get(v))});
        } else {
            pinned.add(var.name, var.kind, var.range);
        }
    }
    return Model::build(model.name(), std::move(pinned), model.expressions());
}

std::string to_string(const Model& model, const ValidationReport& report) {
    const Signature& sig = model.signature();
    std::string out;
    for (const auto& p : report.problems) out += "problem: " + p + "\n";
    for (const auto& rv : report.range_violations)
        out += "range violation: " + sig.var(rv.variable).name + " at " + format(sig, rv.input) + " yields " +
               rv.output + " outside " + to_string(sig.var(rv.variable).range) + "\n";
    if (!report.cycle.empty()) {
        out += "cycle: (";
        for (std::size_t i = 0; i < report.cycle.size(); ++i) out += (i ? ", " : "") + sig.var(report.cycle[i]).name;
        out += ")\n";
    }
    if (report.ok()) {
        out += "valid; order: (";
        for (std::size_t i = 0; i < report.order.size(); ++i) out += (i ? ", " : "") + sig.var(report.order[i]).name;
        out += ")\n";
    }
    return out;
}

}  // namespace causalq
