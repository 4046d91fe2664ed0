#include <catch2/catch_amalgamated.hpp>

#include "causalq/equivalence.hpp"
#include "causalq/sufficiency.hpp"
#include "causalq/testkit.hpp"
#include "support.hpp"

using namespace causalq;
using support::at;

namespace {

const char* const stems[] = {"example1", "example2", "example4", "example_struc", "example_final", "example_cons",
                             "sanity"};

// The extension with its marginalized variables fixed, or the base model.
Model side(const ModelPair& pair, bool base, const std::optional<Assignment>& w) {
    if (base) return pair.base();
    return w ? pair.pinned(*w) : pair.extension();
}

// Re-derives a counterexample without the equivalence code.
void confirm(const ModelPair& pair, const Counterexample& c, const std::optional<Assignment>& w) {
    testkit::Guard guard(1'000'000'000);
    INFO(describe(pair.base().signature(), c, "M", "Mprime"));
    const Model yes = side(pair, c.holds_in_base, w);
    const Model no = side(pair, !c.holds_in_base, w);
    auto in = [&](bool base, const Assignment& a) { return base ? a : pair.to_extension(a); };
    auto cin = [&](bool base, const ContrastPair& a) { return base ? a : pair.to_extension(a); };
    const bool yb = c.holds_in_base;
    if (c.relation == "sufficiency") {
        Assignment x_yes = in(yb, c.antecedent), x_no = in(!yb, c.antecedent);
        CHECK(testkit::oracle_sufficient(yes, x_yes, in(yb, c.consequent), guard));
        CHECK_FALSE(testkit::oracle_sufficient(no, x_no, in(!yb, c.consequent), guard));
    } else if (c.relation == "weak-sufficiency") {
        REQUIRE(c.context);
        CHECK(testkit::oracle_weakly_sufficient(yes, in(yb, *c.context), in(yb, c.antecedent), in(yb, c.consequent),
                                                guard));
        CHECK_FALSE(testkit::oracle_weakly_sufficient(no, in(!yb, *c.context), in(!yb, c.antecedent),
                                                      in(!yb, c.consequent), guard));
    } else {
        REQUIRE(c.source);
        REQUIRE(c.target);
        auto networks = [&](bool base, const Model& m) {
            if (c.context) return actual_joint_ancestors(m, in(base, *c.context), cin(base, *c.source),
                                                         cin(base, *c.target));
            return potential_joint_ancestors(m, cin(base, *c.source), cin(base, *c.target));
        };
        const auto found = networks(yb, yes);
        REQUIRE(found.holds);
        // Each step checked again by the brute-force oracle.
        std::optional<Assignment> world;
        if (c.context) world = solve(yes, in(yb, *c.context));
        for (const auto& s : found.network.steps)
            CHECK(testkit::oracle_joint_parents(yes, s.source, s.target, guard, world));
        CHECK_FALSE(networks(!yb, no).holds);
    }
}

}  // namespace

TEST_CASE("fixture verdicts", "[equivalence]") {
    for (const char* stem : stems) {
        const auto j = support::sidecar(stem);
        const ModelPair pair = support::fixture_pair(stem);
        INFO(stem);
        const auto& want = j["computed"];
        CHECK(structurally_equivalent(pair).verdict == want["structural"].get<bool>());
        CHECK(functionally_equivalent(pair).verdict == want["functional"].get<bool>());
        CHECK(conservatively_equivalent(pair).verdict == want["conservative"].get<bool>());
        CHECK(causally_equivalent(pair).verdict == want["causal"].get<bool>());
        CHECK(ancestry_preservation_check(pair).empty());
    }
}

TEST_CASE("counterexamples hold up", "[equivalence][oracle]") {
    for (const char* stem : stems) {
        const ModelPair pair = support::fixture_pair(stem);
        for (auto check : {structurally_equivalent, functionally_equivalent}) {
            const auto r = check(pair, {});
            for (const auto& t : r.trace)
                if (t.counterexample) confirm(pair, *t.counterexample, t.witness);
        }
    }
}

TEST_CASE("example 4 disagrees on potential ancestry only", "[equivalence]") {
    const ModelPair pair = support::fixture_pair("example4");
    const auto r = structurally_equivalent(pair);
    REQUIRE(r.counterexample);
    CHECK(r.counterexample->relation == "potential-joint-ancestry");
    CHECK_FALSE(r.counterexample->holds_in_base);
    const Signature& sig = pair.base().signature();
    CHECK(format(sig, *r.counterexample->source) == "A=1 vs A=0");
    CHECK(format(sig, *r.counterexample->target) == "E=1 vs E=0");
}

TEST_CASE("example 1 under the endogenous-source reading", "[equivalence]") {
    const ModelPair pair = support::fixture_pair("example1");
    EquivOptions o;
    o.exogenous_sources = false;
    const auto r = structurally_equivalent(pair, o);
    CHECK_FALSE(r.verdict);
    REQUIRE(r.counterexample);
    const Signature& sig = pair.base().signature();
    CHECK(format(sig, *r.counterexample->source) == "C=1 vs C=0");
    CHECK(format(sig, *r.counterexample->target) == "E=1 vs E=0");
    confirm(pair, *r.counterexample, r.trace.front().witness);
}

TEST_CASE("struc fails functional equivalence on the stated antecedent", "[equivalence]") {
    const ModelPair pair = support::fixture_pair("example_struc");
    const Model& m = pair.base();
    const Assignment x = at(m, "A=1,C=0,F=1,B=0,D=0,G=0");
    CHECK(sufficient(m, x, at(m, "E=1")).holds);
    CHECK_FALSE(sufficient(pair.extension(), pair.to_extension(x), pair.to_extension(at(m, "E=1"))).holds);
}

TEST_CASE("pairs need nested signatures", "[equivalence]") {
    const Model a = support::from_text("model A { exo U : {0, 1} var X : {0, 1} = U }");
    const Model b = support::from_text("model B { exo U : {0, 1} var X : {0, 1, 2} = U }");
    const Model c = support::from_text("model C { var X : {0, 1} = 1 }");
    CHECK_THROWS_AS(ModelPair(a, b), Error);
    CHECK_THROWS_AS(ModelPair(a, c), Error);
    CHECK(signature_nested(c.signature(), a.signature()));
    CHECK_FALSE(signature_nested(a.signature(), c.signature()));
    CHECK_THROWS_AS(signature_nested(a.signature(), b.signature()), Error);
}

TEST_CASE("the witness option restricts the search", "[equivalence]") {
    const Model m = support::from_text("model M { exo U : {0, 1} var X : {0, 1} = U }");
    const Model mp = support::from_text("model Mp { exo U : {0, 1} exo W : {0, 1} var X : {0, 1} = U & W }");
    const ModelPair pair(m, mp);
    CHECK(conservatively_equivalent(pair).verdict);
    CHECK(format(mp.signature(), *conservatively_equivalent(pair).witness) == "W=1");
    EquivOptions o;
    o.witness = at(mp, "W=0");
    const auto r = causally_equivalent(pair, o);
    CHECK_FALSE(r.verdict);
    CHECK(r.trace.size() == 1);
    o.witness = at(mp, "W=1");
    CHECK(causally_equivalent(pair, o).verdict);
}

TEST_CASE("the evaluation budget is enforced", "[equivalence]") {
    const ModelPair pair = support::fixture_pair("example_struc");
    EquivOptions o;
    o.max_evaluations = 10;
    CHECK_THROWS_AS(structurally_equivalent(pair, o), BudgetExceeded);
}

TEST_CASE("every model is equivalent to itself", "[equivalence][property]") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Model m = testkit::generate_model(seed, {4, 1, 2, 2});
        const ModelPair pair(m, m);
        CHECK(causally_equivalent(pair).verdict);
        CHECK(conservatively_equivalent(pair).verdict);
    }
}

TEST_CASE("same-signature verdicts are symmetric", "[equivalence][property]") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const Model a = testkit::generate_model(seed, {3, 1, 2, 2});
        const Model b = testkit::generate_model(seed + 10'000, {3, 1, 2, 2});
        if (!signature_nested(a.signature(), b.signature()) || !signature_nested(b.signature(), a.signature()))
            continue;
        const ModelPair ab(a, b), ba(b, a);
        CHECK(structurally_equivalent(ab).verdict == structurally_equivalent(ba).verdict);
        CHECK(functionally_equivalent(ab).verdict == functionally_equivalent(ba).verdict);
        CHECK(conservatively_equivalent(ab).verdict == conservatively_equivalent(ba).verdict);
    }
}

// Three kinds of partner: the same equations written differently, another
// random model, and a copy with one equation taken from another model.
Model partner(std::uint64_t seed, const Model& a) {
    const Model other = testkit::generate_model(seed + 50'000, {3, 1, 2, 2});
    auto exprs = a.expressions();
    const auto endo = a.signature().endogenous();
    switch (seed % 3) {
        case 0:
            for (VarIndex v : endo)
                exprs[v] = Expr::ite(Expr::binary(Expr::Op::eq, exprs[v], Expr::literal(Value{std::int64_t{0}})),
                                     Expr::literal(Value{std::int64_t{0}}), Expr::literal(Value{std::int64_t{1}}));
            break;
        case 1: return other;
        default: {
            const VarIndex v = endo[seed / 3 % endo.size()];
            exprs[v] = other.expressions()[v];
        }
    }
    return Model::build("B", a.signature(), exprs);
}

TEST_CASE("identical signatures reduce conservative equivalence to identity", "[equivalence][property]") {
    int equal = 0, different = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const Model a = testkit::generate_model(seed, {3, 1, 2, 2});
        const Model b = partner(seed, a);
        REQUIRE(signature_nested(a.signature(), b.signature()));
        REQUIRE(signature_nested(b.signature(), a.signature()));
        const bool same = testkit::extensionally_equal(a, b);
        (same ? equal : different) += 1;
        CHECK(conservatively_equivalent(ModelPair(a, b)).verdict == same);
    }
    CHECK(equal >= 40);
    CHECK(different >= 40);
}

TEST_CASE("the fast conservative check agrees with the naive one", "[equivalence][oracle]") {
    testkit::Guard guard(1'000'000'000);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Model m = testkit::generate_model(seed, {3, 1, 2, 2});
        const Model mp = testkit::generate_extension(seed, m, {1, false, 2});
        const ModelPair pair(m, mp);
        const auto fast = conservatively_equivalent(pair);
        const auto naive = testkit::naive_conservative_witness(pair, guard);
        CHECK(fast.verdict == naive.has_value());
        if (naive) CHECK(*fast.witness == *naive);
    }
}

TEST_CASE("functional implies conservative, which preserves ancestry", "[equivalence][property]") {
    int functional = 0, conservative = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Model m = testkit::generate_model(seed, {3, 1, 2, 2});
        const Model mp = testkit::generate_extension(seed, m, {1, seed % 2 == 0, 2});
        const ModelPair pair(m, mp);
        const auto f = functionally_equivalent(pair);
        if (f.verdict) {
            ++functional;
            EquivOptions o;
            o.witness = f.witness;
            CHECK(conservatively_equivalent(pair, o).verdict);
        }
        if (conservatively_equivalent(pair).verdict) {
            ++conservative;
            CHECK(ancestry_preservation_check(pair).empty());
        }
    }
    CHECK(functional > 0);
    CHECK(conservative > 0);
}

TEST_CASE("subdividing edges keeps models causally equivalent", "[equivalence][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Model m = testkit::generate_model(seed, {3, 1, 2, 2});
        const Model mp = testkit::generate_extension(seed, m, {2, true, 2});
        CHECK(functionally_equivalent(ModelPair(m, mp)).verdict);
        CHECK(conservatively_equivalent(ModelPair(m, mp)).verdict);
    }
}
