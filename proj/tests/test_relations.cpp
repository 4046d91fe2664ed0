#include <catch2/catch_amalgamated.hpp>

#include "causalq/relations.hpp"
#include "causalq/testkit.hpp"
#include "support.hpp"

using namespace causalq;
using support::at;
using support::contrast;
using support::var;

namespace {

ContrastPair flipped(const ContrastPair& c) { return ContrastPair{c.right, c.left}; }

std::vector<ContrastPair> singletons(const Signature& sig, VarIndex v) { return all_contrasts(sig, {v}); }

std::vector<Context> contexts(const Model& m) {
    std::vector<Context> out;
    const Signature& sig = m.signature();
    for_each_setting(sig, sig.exogenous(), Assignment(sig.size()), [&](const Assignment& u) { out.push_back(u); });
    return out;
}

}  // namespace

TEST_CASE("contrasts parse, format and enumerate", "[contrast]") {
    const Model m = support::fixture_model("example4", "Mprime");
    const Signature& sig = m.signature();
    const ContrastPair c = contrast(m, "A=1,C=1 vs A=0,C=0");
    CHECK(format(sig, c) == "C=1,A=1 vs C=0,A=0");
    CHECK(c.variables() == std::vector<VarIndex>{var(m, "C"), var(m, "A")});
    CHECK_THROWS_AS(contrast(m, "A=1 vs A=1"), Error);
    CHECK_THROWS_AS(contrast(m, "A=1,C=1 vs A=0"), Error);
    CHECK_THROWS_AS(contrast(m, "A=1"), Error);
    CHECK_THROWS_AS(make_contrast(Assignment(sig.size()), Assignment(sig.size())), Error);

    const auto all = all_contrasts(sig, {var(m, "A"), var(m, "E")});
    REQUIRE(all.size() == 2 + 2 + 4);
    CHECK(format(sig, all[0]) == "A=1 vs A=0");
    CHECK(format(sig, all[1]) == "A=0 vs A=1");
    CHECK(format(sig, all[4]) == "A=1,E=1 vs A=0,E=0");
}

TEST_CASE("parent and ancestor in the example 4 models", "[relations]") {
    const Model m = support::fixture_model("example4", "M");
    const Model mp = support::fixture_model("example4", "Mprime");
    CHECK_FALSE(is_parent(m, var(m, "A"), var(m, "E")).holds);
    const auto p = is_parent(mp, var(mp, "A"), var(mp, "E"));
    REQUIRE(p.holds);
    CHECK(format(mp.signature(), *p.source) == "A=1 vs A=0");
    CHECK(format(mp.signature(), *p.target) == "E=1 vs E=0");
    CHECK(format(mp.signature(), p.witness) == "C=0,B=0,D=0");

    CHECK(is_parent(m, var(m, "U_C"), var(m, "C")).holds);
    CHECK_FALSE(is_ancestor(m, var(m, "A"), var(m, "E")).holds);
    const auto a = is_ancestor(m, var(m, "U_C"), var(m, "E"));
    REQUIRE(a.holds);
    CHECK(a.path.size() == 4);
    CHECK_THROWS_AS(is_ancestor(m, var(m, "E"), var(m, "E")), Error);
}

TEST_CASE("the A to E witness in example 4", "[relations]") {
    const Model mp = support::fixture_model("example4", "Mprime");
    const ContrastPair a = contrast(mp, "A=1 vs A=0");
    const ContrastPair e = contrast(mp, "E=1 vs E=0");
    const auto single = potential_parent(mp, a, e);
    REQUIRE(single.holds);
    CHECK(format(mp.signature(), single.witness) == "C=0,B=0,D=0");
    const auto joint = potential_joint_parents(mp, a, e);
    REQUIRE(joint.holds);
    CHECK(format(mp.signature(), joint.witness) == "C=0,B=0,D=0");

    const Model m = support::fixture_model("example4", "M");
    CHECK_FALSE(potential_joint_parents(m, a, e).holds);
    CHECK_FALSE(potential_joint_ancestors(m, a, e).holds);

    // A=1 and C=0 never hold together, so the witness is never actual.
    for (const auto& u : contexts(mp)) CHECK_FALSE(actual_joint_parents(mp, u, a, e).holds);
}

TEST_CASE("example 1 networks", "[relations]") {
    const Model m = support::fixture_model("example1", "M");
    const Model mp = support::fixture_model("example1", "Mprime");
    const ContrastPair c = contrast(m, "C=1 vs C=0");
    CHECK(potential_joint_parents(m, c, contrast(m, "E=2 vs E=0")).holds);
    CHECK_FALSE(potential_joint_ancestors(m, c, contrast(m, "E=1 vs E=0")).holds);

    const auto r = potential_joint_ancestors(mp, contrast(mp, "C=1 vs C=0"), contrast(mp, "E=1 vs E=0"));
    REQUIRE(r.holds);
    CHECK(format(mp.signature(), r.network) == "C=1 vs C=0 -> A=1 vs A=0 [witness {}]\n"
                                               "A=1 vs A=0 -> E=1 vs E=0 [witness B=0]\n");
}

TEST_CASE("stated actual ancestry in the or-and and switch models", "[relations]") {
    for (const std::string stem : {"actual_or_and", "actual_switch"}) {
        const auto j = support::sidecar(stem);
        const Model m = support::fixture_model(stem, j["model"]);
        const Context u = at(m, j["context"]);
        for (const auto& pair : j["stated"]["actual_joint_ancestors"]) {
            INFO(stem << ": " << pair[0] << " ~> " << pair[1]);
            CHECK(actual_joint_ancestors(m, u, contrast(m, pair[0]), contrast(m, pair[1])).holds);
        }
    }
    // In the switch model A alone does not do it: E follows A only while C is off.
    const Model s = support::fixture_model("actual_switch", "M");
    CHECK_FALSE(actual_joint_ancestors(s, at(s, "U_A=1,U_B=1,U_C=1"), contrast(s, "A=1 vs A=0"),
                                       contrast(s, "E=1 vs E=0"))
                    .holds);
}

TEST_CASE("parents agree with the formula reading", "[relations][oracle]") {
    testkit::Guard guard(100'000'000);
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const Model m = testkit::generate_model(seed, {4, 1, 3, 2});
        const Signature& sig = m.signature();
        for (VarIndex x : sig.endogenous())
            for (VarIndex y : sig.endogenous()) {
                if (x == y) continue;
                bool any = false;
                for (const auto& cx : singletons(sig, x))
                    for (const auto& cy : singletons(sig, y)) {
                        const bool holds = potential_parent(m, cx, cy).holds;
                        CHECK(holds == testkit::formula_potential_parent(m, cx, cy, guard));
                        CHECK(holds == potential_parent(m, flipped(cx), flipped(cy)).holds);
                        CHECK(holds == potential_joint_parents(m, cx, cy).holds);
                        any = any || holds;
                    }
                // A parent in the graph is one whose contrast can be seen.
                CHECK(any == is_parent(m, x, y).holds);
            }
    }
}

TEST_CASE("joint parents agree with the brute-force oracle", "[relations][oracle]") {
    testkit::Guard guard(500'000'000);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Model m = testkit::generate_model(seed, {4, 1, 2, 2});
        const Signature& sig = m.signature();
        const auto endo = sig.endogenous();
        const auto sources = all_contrasts(sig, endo);
        const auto us = contexts(m);
        for (const auto& src : sources) {
            if (src.variables().size() > 2) continue;
            for (VarIndex y : endo) {
                if (src.left.bound(y)) continue;
                for (const auto& tgt : singletons(sig, y)) {
                    INFO(format(sig, src) << " -> " << format(sig, tgt) << " seed " << seed);
                    CHECK(potential_joint_parents(m, src, tgt).holds ==
                          testkit::oracle_joint_parents(m, src, tgt, guard));
                    for (const auto& u : us) {
                        const Assignment world = solve(m, u);
                        CHECK(actual_joint_parents(m, u, src, tgt).holds ==
                              testkit::oracle_joint_parents(m, src, tgt, guard, world));
                    }
                }
            }
        }
    }
}

TEST_CASE("actual ancestry implies potential ancestry", "[relations][property]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Model m = testkit::generate_model(seed, {4, 1, 2, 3});
        const Signature& sig = m.signature();
        JointAncestry potential(m);
        for (const auto& u : contexts(m)) {
            JointAncestry every(m, u, ActualReading::every_step);
            JointAncestry initial(m, u, ActualReading::initial_source);
            for (const auto& src : all_contrasts(sig, sig.endogenous())) {
                if (src.variables().size() > 2) continue;
                const auto actual = every.reachable(src);
                CHECK(actual == initial.reachable(src));
                const auto all = potential.reachable(src);
                for (const auto& t : actual) CHECK(all.count(t) == 1);
            }
        }
    }
}

TEST_CASE("networks are chains of valid steps", "[relations][property]") {
    for (std::uint64_t seed = 50; seed < 80; ++seed) {
        const Model m = testkit::generate_model(seed, {5, 1, 2, 3});
        const Signature& sig = m.signature();
        JointAncestry ancestry(m);
        for (const auto& src : all_contrasts(sig, sig.endogenous())) {
            if (src.variables().size() > 1) continue;
            for (const auto& tgt : ancestry.reachable(src)) {
                const auto r = ancestry.network(src, tgt);
                REQUIRE(r.holds);
                REQUIRE_FALSE(r.network.steps.empty());
                CHECK(r.network.steps.front().source == src);
                CHECK(r.network.steps.back().target == tgt);
                for (std::size_t i = 0; i < r.network.steps.size(); ++i) {
                    const auto& s = r.network.steps[i];
                    if (i > 0) CHECK(s.source == r.network.steps[i - 1].target);
                    const auto again = potential_joint_parents(m, s.source, s.target);
                    CHECK(again.holds);
                    CHECK(again.witness == s.witness);
                }
            }
        }
    }
}
