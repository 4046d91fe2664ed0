#include "causalq/testkit.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "causalq/error.hpp"
#include "causalq/formula.hpp"

namespace causalq::testkit {

void Guard::spend(std::uint64_t n) {
    used_ += n;
    if (used_ > limit_) throw BudgetExceeded("oracle refused: more than " + std::to_string(limit_) + " evaluations");
}

namespace {

Assignment part(const Signature& sig, const Assignment& a, VarKind kind) {
    Assignment out(sig.size());
    for (VarIndex v : a.variables())
        if (sig.var(v).kind == kind) out.set(v, a.get(v));
    return out;
}

std::vector<VarIndex> unbound_of(const std::vector<VarIndex>& vars, const Assignment& a) {
    std::vector<VarIndex> out;
    for (VarIndex v : vars)
        if (!a.bound(v)) out.push_back(v);
    return out;
}

bool forced_everywhere(const Model& model, const Assignment& antecedent, VarIndex target, int value, Guard& guard) {
    const Signature& sig = model.signature();
    const Assignment exo = part(sig, antecedent, VarKind::exogenous);
    const Assignment endo = part(sig, antecedent, VarKind::endogenous);
    std::vector<VarIndex> others;
    for (VarIndex v : sig.endogenous())
        if (v != target && !endo.bound(v)) others.push_back(v);
    const auto free_exo = unbound_of(sig.exogenous(), exo);

    return !any_setting(sig, free_exo, exo, [&](const Assignment& u) {
        return any_setting(sig, others, endo, [&](const Assignment& intervention) {
            guard.spend();
            return solve(model, u, intervention).get(target) != value;
        });
    });
}

}  // namespace

bool oracle_directly_sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent,
                                Guard& guard) {
    const Signature& sig = model.signature();
    for (VarIndex y : consequent.variables()) {
        if (sig.is_exogenous(y)) return false;
        if (antecedent.bound(y)) {
            if (antecedent.get(y) != consequent.get(y)) return false;
            continue;
        }
        if (!forced_everywhere(model, antecedent, y, consequent.get(y), guard)) return false;
    }
    return true;
}

bool oracle_sufficient(const Model& model, const Assignment& antecedent, const Assignment& consequent, Guard& guard,
                       bool literal) {
    const Signature& sig = model.signature();
    for (VarIndex y : consequent.variables())
        if (sig.is_exogenous(y)) return false;
    const Assignment exo = part(sig, antecedent, VarKind::exogenous);
    const Assignment start = part(sig, antecedent, VarKind::endogenous);
    if (!literal && !consequent.compatible(start)) return false;

    std::vector<Assignment> states;
    any_partial_setting(sig, sig.endogenous(), Assignment(sig.size()), [&](const Assignment& s) {
        if (literal || s.compatible(start)) states.push_back(s);
        return false;
    });

    // The first element of a chain is the antecedent itself.
    std::set<Assignment> seen;
    std::deque<Assignment> queue;
    auto step = [&](const Assignment& from) {
        if (oracle_directly_sufficient(model, from, consequent, guard)) return true;
        for (const Assignment& t : states)
            if (!seen.count(t) && oracle_directly_sufficient(model, from, t, guard)) {
                seen.insert(t);
                queue.push_back(t);
            }
        return false;
    };
    if (step(antecedent)) return true;
    while (!queue.empty()) {
        Assignment s = queue.front();
        queue.pop_front();
        if (step(s.merged(exo))) return true;
    }
    return false;
}

bool oracle_weakly_sufficient(const Model& model, const Context& context, const Assignment& antecedent,
                              const Assignment& consequent, Guard& guard) {
    const Signature& sig = model.signature();
    for (VarIndex y : consequent.variables())
        if (sig.is_exogenous(y)) return false;
    guard.spend();
    const Model intervened = intervene(model, antecedent);
    return consequent.subset_of(solve(intervened, context));
}

bool formula_potential_parent(const Model& model, const ContrastPair& source, const ContrastPair& target,
                              Guard& guard) {
    const Signature& sig = model.signature();
    const VarIndex x = source.variables().at(0);
    const VarIndex y = target.variables().at(0);
    if (sig.is_exogenous(x)) throw Error("formula check needs an endogenous source");
    if (sig.is_exogenous(y) || x == y) return false;
    std::vector<VarIndex> others;
    for (VarIndex v : sig.endogenous())
        if (v != x && v != y) others.push_back(v);
    const Assignment none(sig.size());

    return any_setting(sig, sig.exogenous(), none, [&](const Context& u) {
        return any_setting(sig, others, none, [&](const Assignment& z) {
            guard.spend(2);
            Formula left{z.merged(source.left), FormulaNode::atom(y, target.left.get(y))};
            Formula right{z.merged(source.right), FormulaNode::atom(y, target.right.get(y))};
            return satisfies(model, u, left) && satisfies(model, u, right);
        });
    });
}

bool oracle_joint_parents(const Model& model, const ContrastPair& source, const ContrastPair& target, Guard& guard,
                          const std::optional<Assignment>& world) {
    const Signature& sig = model.signature();
    const auto xs = source.variables();
    const auto ys = target.variables();
    if (xs.empty() || ys.empty() || xs == ys) return false;
    for (VarIndex y : ys)
        if (sig.is_exogenous(y)) return false;
    if (world && !source.left.subset_of(*world)) return false;

    std::vector<VarIndex> rest;
    for (VarIndex v = 0; v < sig.size(); ++v)
        if (std::find(xs.begin(), xs.end(), v) == xs.end() && std::find(ys.begin(), ys.end(), v) == ys.end())
            rest.push_back(v);

    auto both = [&](const Assignment& z, const std::vector<VarIndex>& keep) {
        return oracle_directly_sufficient(model, z.merged(source.left.restricted(keep)), target.left, guard) &&
               oracle_directly_sufficient(model, z.merged(source.right.restricted(keep)), target.right, guard);
    };

    return any_partial_setting(sig, rest, Assignment(sig.size()), [&](const Assignment& z) {
        if (world && !z.subset_of(*world)) return false;
        if (!both(z, xs)) return false;
        // Every strict subset of the source, the empty one included.
        for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << xs.size()); ++mask) {
            std::vector<VarIndex> keep;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (mask & (std::uint64_t{1} << i)) keep.push_back(xs[i]);
            if (both(z, keep)) return false;
        }
        return true;
    });
}

std::optional<Assignment> naive_conservative_witness(const ModelPair& pair, Guard& guard) {
    const Model& m = pair.base();
    const Model& ext = pair.extension();
    const Signature& b = m.signature();
    const Signature& e = ext.signature();
    const auto endo = b.endogenous();
    const Assignment none_b(b.size());

    std::optional<Assignment> found;
    any_setting(e, pair.marginalized(), Assignment(e.size()), [&](const Assignment& w) {
        const bool disagree = any_setting(b, b.exogenous(), none_b, [&](const Context& u) {
            const Context ue = pair.to_extension(u).merged(w);
            return any_partial_setting(b, endo, none_b, [&](const Assignment& x) {
                guard.spend(2);
                const Assignment here = solve(m, u, x).restricted(endo);
                const Assignment there = pair.to_base(solve(ext, ue, pair.to_extension(x))).restricted(endo);
                return here != there;
            });
        });
        if (disagree) return false;
        found = w;
        return true;
    });
    return found;
}

bool extensionally_equal(const Model& a, const Model& b) {
    const Signature& sa = a.signature();
    const Signature& sb = b.signature();
    if (sa.size() != sb.size()) return false;
    for (VarIndex v = 0; v < sa.size(); ++v) {
        const Variable &x = sa.var(v), &y = sb.var(v);
        if (x.name != y.name || x.kind != y.kind || x.range != y.range) return false;
    }
    std::vector<VarIndex> all(sa.size());
    for (VarIndex v = 0; v < sa.size(); ++v) all[v] = v;
    return !any_setting(sa, all, Assignment(sa.size()), [&](const Assignment& world) {
        for (VarIndex v : sa.endogenous())
            if (a.evaluate(v, world.slots()) != b.evaluate(v, world.slots())) return true;
        return false;
    });
}

namespace {

using Op = Expr::Op;

struct Draft {
    std::vector<Variable> vars;
    std::vector<ExprPtr> exprs;

    Model build(const std::string& name) const {
        Signature sig;
        for (const auto& v : vars) sig.add(v.name, v.kind, v.range);
        return Model::build(name, std::move(sig), exprs);
    }

    std::optional<std::size_t> find(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name) return i;
        return std::nullopt;
    }

    std::string fresh(const std::string& prefix) const {
        for (int k = 1;; ++k)
            if (!find(prefix + std::to_string(k))) return prefix + std::to_string(k);
    }

    // Variables whose equations (transitively) mention vars[i], and i itself.
    std::set<std::size_t> descendants(std::size_t i) const {
        std::set<std::size_t> out{i};
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t v = 0; v < vars.size(); ++v) {
                if (!exprs[v] || out.count(v)) continue;
                for (const auto& ref : referenced_variables(*exprs[v]))
                    if (out.count(*find(ref))) {
                        out.insert(v);
                        grew = true;
                        break;
                    }
            }
        }
        return out;
    }
};

Range integer_range(int size) {
    Range r;
    for (int k = 0; k < size; ++k) r.push_back(Value{std::int64_t{k}});
    return r;
}

class Generator {
public:
    Generator(std::uint64_t seed, int depth) : rng_(seed), depth_(depth) {}

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

    // An expression over `pool` whose value always lies in {0, ..., size - 1}.
    ExprPtr value(const Draft& d, const std::vector<std::size_t>& pool, int size, int depth) {
        if (depth <= 0 || pick(3) == 0) return leaf(d, pool, size);
        if (size == 2) {
            switch (pick(5)) {
                case 0: return Expr::unary(Op::logical_not, value(d, pool, 2, depth - 1));
                case 1: return Expr::binary(Op::logical_and, value(d, pool, 2, depth - 1), value(d, pool, 2, depth - 1));
                case 2: return Expr::binary(Op::logical_or, value(d, pool, 2, depth - 1), value(d, pool, 2, depth - 1));
                case 3: return condition(d, pool, depth - 1);
                default: break;
            }
        }
        return Expr::ite(condition(d, pool, depth - 1), value(d, pool, size, depth - 1), value(d, pool, size, depth - 1));
    }

    ExprPtr value(const Draft& d, const std::vector<std::size_t>& pool, int size) {
        return value(d, pool, size, depth_);
    }

private:
    ExprPtr leaf(const Draft& d, const std::vector<std::size_t>& pool, int size) {
        std::vector<std::size_t> fits;
        for (std::size_t i : pool)
            if (static_cast<int>(d.vars[i].range.size()) <= size) fits.push_back(i);
        if (!fits.empty() && pick(4) != 0) return Expr::var(d.vars[fits[pick(static_cast<int>(fits.size()))]].name);
        return Expr::literal(Value{std::int64_t{pick(size)}});
    }

    ExprPtr condition(const Draft& d, const std::vector<std::size_t>& pool, int depth) {
        if (pool.empty() || pick(3) == 0) return value(d, pool, 2, depth);
        const std::size_t v = pool[pick(static_cast<int>(pool.size()))];
        const int n = static_cast<int>(d.vars[v].range.size());
        return Expr::binary(pick(2) ? Op::eq : Op::ne, Expr::var(d.vars[v].name),
                            Expr::literal(Value{std::int64_t{pick(n)}}));
    }

    std::mt19937_64 rng_;
    int depth_;
};

ExprPtr substitute(const ExprPtr& e, const std::string& from, const std::string& to) {
    if (e->op == Op::var) return e->name == from ? Expr::var(to) : e;
    if (e->args.empty()) return e;
    auto copy = std::make_shared<Expr>(*e);
    for (auto& a : copy->args) a = substitute(a, from, to);
    return copy;
}

std::vector<std::size_t> all_but(const Draft& d, const std::set<std::size_t>& excluded) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.vars.size(); ++i)
        if (!excluded.count(i)) out.push_back(i);
    return out;
}

}  // namespace

Model generate_model(std::uint64_t seed, const ModelProfile& profile) {
    if (profile.n_endo <= 0) throw Error("profile has no endogenous variables");
    if (profile.n_endo > 26) throw Error("profile has more than 26 endogenous variables");
    if (profile.n_exo < 0 || profile.max_range < 2) throw Error("profile needs n_exo >= 0 and max_range >= 2");

    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        Generator gen(seed * 1000003 + attempt, profile.depth);
        Draft d;
        for (int k = 0; k < profile.n_exo; ++k) {
            d.vars.push_back({"U" + std::to_string(k + 1), VarKind::exogenous,
                              integer_range(2 + gen.pick(profile.max_range - 1))});
            d.exprs.push_back(nullptr);
        }
        for (int k = 0; k < profile.n_endo; ++k) {
            const int size = 2 + gen.pick(profile.max_range - 1);
            std::vector<std::size_t> pool(d.vars.size());
            for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
            d.exprs.push_back(gen.value(d, pool, size));
            d.vars.push_back({std::string(1, static_cast<char>('A' + k)), VarKind::endogenous, integer_range(size)});
        }
        Model m = d.build("G" + std::to_string(seed));
        if (m.valid()) return m;
    }
    throw Error("could not generate a valid model for seed " + std::to_string(seed));
}

Model generate_extension(std::uint64_t seed, const Model& base, const SpliceProfile& profile) {
    base.require_valid();
    Generator gen(seed ^ 0x9e3779b97f4a7c15ULL, profile.depth);
    Draft d;
    d.vars = base.signature().vars();
    d.exprs = base.expressions();

    auto endogenous = [&] {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < d.vars.size(); ++i)
            if (d.exprs[i]) out.push_back(i);
        return out;
    };

    for (int s = 0; s < profile.splices; ++s) {
        const int move = profile.subdivisions_only ? 0 : gen.pick(4);
        const auto endo = endogenous();
        const std::size_t y = endo[gen.pick(static_cast<int>(endo.size()))];
        const auto refs = referenced_variables(*d.exprs[y]);

        if (move == 0 && !refs.empty()) {
            // Route one argument of y through a new copy.
            const std::string x = refs[gen.pick(static_cast<int>(refs.size()))];
            const std::string n = d.fresh("N");
            d.vars.push_back({n, VarKind::endogenous, d.vars[*d.find(x)].range});
            d.exprs.push_back(Expr::var(x));
            d.exprs[y] = substitute(d.exprs[y], x, n);
        } else if (move == 1) {
            // New noise variable that switches y to another equation.
            const std::string w = d.fresh("W");
            const auto pool = all_but(d, d.descendants(y));
            const int size = static_cast<int>(d.vars[y].range.size());
            d.vars.push_back({w, VarKind::exogenous, integer_range(2)});
            d.exprs.push_back(nullptr);
            d.exprs[y] = Expr::ite(Expr::var(w), d.exprs[y], gen.value(d, pool, size));
        } else if (move == 2 || move == 0) {
            // New child of existing variables.
            std::vector<std::size_t> pool(d.vars.size());
            for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
            d.exprs.push_back(gen.value(d, pool, 2));
            d.vars.push_back({d.fresh("N"), VarKind::endogenous, integer_range(2)});
        } else {
            const auto pool = all_but(d, d.descendants(y));
            d.exprs[y] = gen.value(d, pool, static_cast<int>(d.vars[y].range.size()));
        }
    }
    Model m = d.build(base.name() + "x");
    m.require_valid();
    return m;
}

}  // namespace causalq::testkit
