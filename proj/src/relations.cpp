#include "causalq/relations.hpp"

#include <algorithm>
#include <deque>

#include "causalq/error.hpp"
#include "causalq/sufficiency.hpp"

namespace causalq {

ContrastPair make_contrast(Assignment left, Assignment right) {
    if (left.size() != right.size()) throw Error("contrast sides come from different signatures");
    if (left.empty()) throw Error("contrast binds no variables");
    for (VarIndex i = 0; i < left.size(); ++i) {
        if (left.bound(i) != right.bound(i)) throw Error("contrast sides bind different variables");
        if (left.bound(i) && left.get(i) == right.get(i)) throw Error("contrast sides agree at a variable");
    }
    return ContrastPair{std::move(left), std::move(right)};
}

ContrastPair parse_contrast(const Signature& sig, std::string_view text) {
    const std::string_view sep = " vs ";
    auto at = text.find(sep);
    if (at == std::string_view::npos) throw Error("expected 'LEFT vs RIGHT', got '" + std::string(text) + "'");
    Assignment left = parse_assignment(sig, text.substr(0, at));
    Assignment right = parse_assignment(sig, text.substr(at + sep.size()));
    return make_contrast(std::move(left), std::move(right));
}

std::string format(const Signature& sig, const ContrastPair& c) {
    return format(sig, c.left) + " vs " + format(sig, c.right);
}

std::vector<ContrastPair> all_contrasts(const Signature& sig, const std::vector<VarIndex>& vars) {
    std::vector<ContrastPair> out;
    const Assignment empty(sig.size());
    // Left values run from the top of each range down, so (1, 0) precedes (0, 1).
    any_partial_setting(sig, vars, empty, [&](const Assignment& ascending) {
        const auto bound = ascending.variables();
        if (bound.empty()) return false;
        Assignment left(sig.size());
        for (VarIndex v : bound) left.set(v, static_cast<int>(sig.range_size(v)) - 1 - ascending.get(v));
        for_each_setting(sig, bound, empty, [&](const Assignment& right) {
            for (VarIndex v : bound)
                if (left.get(v) == right.get(v)) return;
            out.push_back(ContrastPair{left, right});
        });
        return false;
    });
    return out;
}

ContrastPair translate(const Signature& from, const Signature& to, const ContrastPair& c) {
    return ContrastPair{translate(from, to, c.left), translate(from, to, c.right)};
}

std::string format(const Signature& sig, const Network& n) {
    std::string out;
    for (const auto& s : n.steps)
        out += format(sig, s.source) + " -> " + format(sig, s.target) + " [witness " + format(sig, s.witness) + "]\n";
    return out;
}

namespace {

std::vector<VarIndex> sorted_union(std::vector<VarIndex> a) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool contains(const std::vector<VarIndex>& v, VarIndex x) { return std::binary_search(v.begin(), v.end(), x); }

// Subsets of `vars` by size, then lexicographically. Stops when fn returns true.
template <typename Fn>
bool any_subset(const std::vector<VarIndex>& vars, Fn&& fn) {
    const std::size_t n = vars.size();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> pick(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            std::vector<VarIndex> subset;
            for (std::size_t i : pick) subset.push_back(vars[i]);
            if (fn(subset)) return true;
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return false;
}

// Candidate witnesses over `vars`: every partial setting, or only those agreeing
// with `world` when searching in a context.
template <typename Fn>
bool any_witness(const Signature& sig, const std::vector<VarIndex>& vars, const std::optional<Assignment>& world,
                 Fn&& fn) {
    const Assignment empty(sig.size());
    if (!world) return any_partial_setting(sig, vars, empty, fn);
    return any_subset(vars, [&](const std::vector<VarIndex>& subset) { return fn(world->restricted(subset)); });
}

bool step_sufficient(const Model& model, const Assignment& witness, const ContrastPair& source,
                     const ContrastPair& target) {
    return directly_sufficient(model, witness.merged(source.left), target.left) &&
           directly_sufficient(model, witness.merged(source.right), target.right);
}

bool minimal(const Model& model, const Assignment& witness, const ContrastPair& source, const ContrastPair& target) {
    // Direct sufficiency is monotone in the antecedent, so dropping one source
    // variable at a time covers every strict subset.
    for (VarIndex x : source.left.variables()) {
        ContrastPair reduced = source;
        reduced.left.clear(x);
        reduced.right.clear(x);
        if (step_sufficient(model, witness, reduced, target)) return false;
    }
    return true;
}

std::vector<VarIndex> witness_candidates(const Model& model, const std::vector<VarIndex>& src_vars,
                                         const std::vector<VarIndex>& tgt_vars) {
    std::vector<VarIndex> out;
    for (VarIndex y : tgt_vars) {
        if (contains(src_vars, y)) continue;
        for (VarIndex a : model.equation(y).args)
            if (!contains(src_vars, a) && !contains(tgt_vars, a)) out.push_back(a);
    }
    return sorted_union(std::move(out));
}

// Every source variable must reach a target: either it is one, or it feeds a
// target outside the source. Otherwise dropping it changes nothing.
bool every_source_used(const Model& model, const std::vector<VarIndex>& src_vars,
                       const std::vector<VarIndex>& tgt_vars) {
    for (VarIndex x : src_vars) {
        if (contains(tgt_vars, x)) continue;
        bool feeds = false;
        for (VarIndex y : tgt_vars)
            if (!contains(src_vars, y) && contains(model.equation(y).args, x)) feeds = true;
        if (!feeds) return false;
    }
    return true;
}

std::optional<Assignment> joint_step(const Model& model, const std::optional<Assignment>& world,
                                     const ContrastPair& source, const ContrastPair& target) {
    model.require_valid();
    const Signature& sig = model.signature();
    const auto xs = source.variables();
    const auto ys = target.variables();
    if (xs.empty() || ys.empty() || xs == ys) return std::nullopt;
    for (VarIndex y : ys)
        if (sig.is_exogenous(y)) return std::nullopt;
    for (VarIndex y : ys)
        if (contains(xs, y) && (source.left.get(y) != target.left.get(y) || source.right.get(y) != target.right.get(y)))
            return std::nullopt;
    if (world && !source.left.subset_of(*world)) return std::nullopt;
    if (!every_source_used(model, xs, ys)) return std::nullopt;

    std::optional<Assignment> found;
    any_witness(sig, witness_candidates(model, xs, ys), world, [&](const Assignment& z) {
        if (step_sufficient(model, z, source, target) && minimal(model, z, source, target)) {
            found = z;
            return true;
        }
        return false;
    });
    return found;
}

void require_singletons(const ContrastPair& source, const ContrastPair& target) {
    if (source.left.count() != 1 || target.left.count() != 1) throw Error("expected single-variable contrasts");
    if (source.variables() == target.variables()) throw Error("source and target must be different variables");
}

}  // namespace

ParentResult is_parent(const Model& model, VarIndex parent, VarIndex child) {
    model.require_valid();
    const Signature& sig = model.signature();
    ParentResult result;
    result.witness = Assignment(sig.size());
    if (parent == child || !sig.is_endogenous(child)) return result;
    const Equation& eq = model.equation(child);
    if (!contains(eq.args, parent)) return result;

    std::vector<VarIndex> rest;
    for (VarIndex a : eq.args)
        if (a != parent) rest.push_back(a);
    const int n = static_cast<int>(sig.range_size(parent));
    any_setting(sig, rest, Assignment(sig.size()), [&](const Assignment& w) {
        Assignment in = w;
        in.set(parent, 0);
        const int first = eq.table[eq.row(in.slots())];
        for (int x = n - 1; x > 0; --x) {
            in.set(parent, x);
            const int out = eq.table[eq.row(in.slots())];
            if (out == first) continue;
            result.holds = true;
            result.witness = w;
            Assignment sl(sig.size()), sr(sig.size()), tl(sig.size()), tr(sig.size());
            sl.set(parent, x);
            sr.set(parent, 0);
            tl.set(child, out);
            tr.set(child, first);
            result.source = ContrastPair{sl, sr};
            result.target = ContrastPair{tl, tr};
            return true;
        }
        return false;
    });
    return result;
}

AncestorResult is_ancestor(const Model& model, VarIndex x, VarIndex y) {
    model.require_valid();
    if (x == y) throw Error("ancestry is only defined between distinct variables");
    const Signature& sig = model.signature();
    std::vector<std::optional<VarIndex>> prev(sig.size());
    std::vector<bool> seen(sig.size(), false);
    std::deque<VarIndex> queue{x};
    seen[x] = true;
    while (!queue.empty()) {
        VarIndex v = queue.front();
        queue.pop_front();
        for (VarIndex c : model.children(v)) {
            if (seen[c] || !is_parent(model, v, c).holds) continue;
            seen[c] = true;
            prev[c] = v;
            if (c == y) {
                AncestorResult r{true, {y}};
                for (VarIndex p = y; prev[p]; p = *prev[p]) r.path.push_back(*prev[p]);
                std::reverse(r.path.begin(), r.path.end());
                return r;
            }
            queue.push_back(c);
        }
    }
    return {};
}

StepResult potential_parent(const Model& model, const ContrastPair& source, const ContrastPair& target) {
    model.require_valid();
    require_singletons(source, target);
    const Signature& sig = model.signature();
    const VarIndex x = source.variables().front();
    const VarIndex y = target.variables().front();
    StepResult result{false, Assignment(sig.size())};
    if (!sig.is_endogenous(y)) return result;
    const Equation& eq = model.equation(y);
    if (!contains(eq.args, x)) return result;

    std::vector<VarIndex> rest;
    for (VarIndex a : eq.args)
        if (a != x) rest.push_back(a);
    any_setting(sig, rest, Assignment(sig.size()), [&](const Assignment& w) {
        if (eq.table[eq.row(w.merged(source.left).slots())] != target.left.get(y)) return false;
        if (eq.table[eq.row(w.merged(source.right).slots())] != target.right.get(y)) return false;
        result.holds = true;
        result.witness = w;
        return true;
    });
    return result;
}

StepResult actual_parent(const Model& model, const Context& context, const ContrastPair& source,
                         const ContrastPair& target) {
    model.require_valid();
    require_singletons(source, target);
    const Signature& sig = model.signature();
    const VarIndex x = source.variables().front();
    const VarIndex y = target.variables().front();
    StepResult result{false, Assignment(sig.size())};
    const Assignment world = solve(model, context);
    if (!sig.is_endogenous(y) || !source.left.subset_of(world)) return result;
    const Equation& eq = model.equation(y);
    if (!contains(eq.args, x)) return result;

    std::vector<VarIndex> rest;
    for (VarIndex a : eq.args)
        if (a != x) rest.push_back(a);
    const Assignment w = world.restricted(rest);
    if (eq.table[eq.row(w.merged(source.left).slots())] != target.left.get(y)) return result;
    if (eq.table[eq.row(w.merged(source.right).slots())] != target.right.get(y)) return result;
    result.holds = true;
    result.witness = w;
    return result;
}

StepResult potential_joint_parents(const Model& model, const ContrastPair& source, const ContrastPair& target) {
    auto w = joint_step(model, std::nullopt, source, target);
    return StepResult{w.has_value(), w.value_or(Assignment(model.signature().size()))};
}

StepResult actual_joint_parents(const Model& model, const Context& context, const ContrastPair& source,
                                const ContrastPair& target) {
    auto w = joint_step(model, solve(model, context), source, target);
    return StepResult{w.has_value(), w.value_or(Assignment(model.signature().size()))};
}

JointAncestry::JointAncestry(const Model& model) : model_(&model) { model.require_valid(); }

JointAncestry::JointAncestry(const Model& model, const Context& context, ActualReading reading)
    : model_(&model), world_(solve(model, context)), reading_(reading) {}

bool JointAncestry::source_allowed(const ContrastPair& source) const {
    return !world_ || source.left.subset_of(*world_);
}

const std::vector<JointAncestry::Edge>& JointAncestry::successors(const ContrastPair& source) {
    if (auto it = memo_.find(source); it != memo_.end()) return it->second;
    std::vector<Edge> edges;
    const Model& model = *model_;
    const Signature& sig = model.signature();
    const auto xs = source.variables();

    if (reading_ == ActualReading::initial_source || source_allowed(source)) {
        std::vector<VarIndex> kids;
        std::vector<VarIndex> endo_xs;
        for (VarIndex x : xs) {
            if (sig.is_endogenous(x)) endo_xs.push_back(x);
            for (VarIndex c : model.children(x))
                if (!contains(xs, c)) kids.push_back(c);
        }
        kids = sorted_union(std::move(kids));
        std::set<ContrastPair> found;

        // Targets are fresh children C plus an overlap O with the source; values
        // on C are whatever the witness forces, values on O are copied.
        any_subset(kids, [&](const std::vector<VarIndex>& fresh) {
            if (fresh.empty()) return false;
            any_subset(endo_xs, [&](const std::vector<VarIndex>& overlap) {
                const auto ys = sorted_union([&] {
                    auto v = fresh;
                    v.insert(v.end(), overlap.begin(), overlap.end());
                    return v;
                }());
                if (!every_source_used(model, xs, ys)) return false;
                ContrastPair base{source.left.restricted(overlap), source.right.restricted(overlap)};
                any_witness(sig, witness_candidates(model, xs, ys), world_, [&](const Assignment& z) {
                    ContrastPair target = base;
                    const Assignment l = z.merged(source.left);
                    const Assignment r = z.merged(source.right);
                    for (VarIndex y : fresh) {
                        auto a = forced_value(model, y, l);
                        if (!a) return false;
                        auto b = forced_value(model, y, r);
                        if (!b || *a == *b) return false;
                        target.left.set(y, *a);
                        target.right.set(y, *b);
                    }
                    if (found.count(target) || !minimal(model, z, source, target)) return false;
                    found.insert(target);
                    edges.push_back(Edge{target, z});
                    return false;
                });
                return false;
            });
            return false;
        });
    }
    return memo_.emplace(source, std::move(edges)).first->second;
}

std::set<ContrastPair> JointAncestry::reachable(const ContrastPair& source) {
    std::set<ContrastPair> seen;
    if (!source_allowed(source)) return seen;
    std::deque<ContrastPair> queue{source};
    while (!queue.empty()) {
        ContrastPair node = queue.front();
        queue.pop_front();
        for (const auto& e : successors(node))
            if (seen.insert(e.target).second) queue.push_back(e.target);
    }
    return seen;
}

NetworkResult JointAncestry::network(const ContrastPair& source, const ContrastPair& target) {
    if (!source_allowed(source)) return {};
    std::map<ContrastPair, std::pair<ContrastPair, Assignment>> prev;
    std::deque<ContrastPair> queue{source};
    while (!queue.empty()) {
        ContrastPair node = queue.front();
        queue.pop_front();
        for (const auto& e : successors(node)) {
            if (prev.count(e.target)) continue;
            prev.emplace(e.target, std::make_pair(node, e.witness));
            if (e.target == target) {
                NetworkResult r;
                r.holds = true;
                ContrastPair at = target;
                while (true) {
                    const auto& [from, witness] = prev.at(at);
                    r.network.steps.push_back(NetworkStep{from, at, witness});
                    if (from == source) break;
                    at = from;
                }
                std::reverse(r.network.steps.begin(), r.network.steps.end());
                return r;
            }
            queue.push_back(e.target);
        }
    }
    return {};
}

NetworkResult potential_joint_ancestors(const Model& model, const ContrastPair& source, const ContrastPair& target) {
    JointAncestry search(model);
    return search.network(source, target);
}

NetworkResult actual_joint_ancestors(const Model& model, const Context& context, const ContrastPair& source,
                                     const ContrastPair& target, ActualReading reading) {
    JointAncestry search(model, context, reading);
    return search.network(source, target);
}

}  // namespace causalq
