#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "causalq/dsl.hpp"
#include "causalq/testkit.hpp"
#include "support.hpp"

using namespace causalq;

namespace {

ParseError parse_failure(const std::string& text) {
    try {
        parse_models(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("parsed: " << text);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("parses the example 1 file", "[dsl]") {
    const auto models = parse_models(support::read_file(support::fixture_path("example1.scm.txt")));
    REQUIRE(models.size() == 2);
    CHECK(models[0].name == "M");
    CHECK(models[1].name == "Mprime");
    const Model m = to_model(models[1]);
    CHECK(m.valid());
    CHECK(m.signature().endogenous().size() == 4);
}

TEST_CASE("comments, strings and negative literals", "[dsl]") {
    const Model m = support::from_text(R"(# leading comment
model M {  # trailing
  exo U : {-1, 0, 1}
  var S : {"lo", "hi"} = ite(U > 0, "hi", "lo")
  var N : {-2, 0, 2} = 2 * U
})");
    CHECK(m.valid());
    CHECK(format(m.signature(), solve(m, support::at(m, "U=-1"))) == "U=-1,S=\"lo\",N=-2");
}

TEST_CASE("X<-1 inside an expression is a comparison", "[dsl]") {
    const Model m = support::from_text("model M { exo X : {-2, 0} var Y : {0, 1} = X<-1 }");
    CHECK(solve(m, support::at(m, "X=-2")).get(1) == 1);
    CHECK(solve(m, support::at(m, "X=0")).get(1) == 0);
}

TEST_CASE("parse errors carry positions", "[dsl]") {
    auto e = parse_failure("model M {\n  var X : {0, 1} = Y\n}");
    CHECK(e.line() == 2);
    CHECK(e.column() == 20);

    e = parse_failure("model M { var X : {} = 0 }");
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("empty") != std::string::npos);

    e = parse_failure("model M { var X : {0, 0} = 0 }");
    CHECK(std::string(e.what()).find("duplicate value") != std::string::npos);

    e = parse_failure("model M { exo X : {0} exo X : {0} var Y : {0} = 0 }");
    CHECK(std::string(e.what()).find("X") != std::string::npos);

    e = parse_failure("model M { var X : {0, 1} = (0 }");
    CHECK_FALSE(e.expected().empty());

    e = parse_failure("model M { var X : {0, 1} = \"open }");
    CHECK(std::string(e.what()).find("unterminated") != std::string::npos);

    parse_failure("model M { var X : {0, 1} = 0 ");
    parse_failure("model M { var X : {0, 1} = 99999999999999999999 }");
    parse_failure("model M { var X : {0, 1} = 0 } model M { var X : {0, 1} = 0 }");
}

TEST_CASE("print and parse round trip on the fixtures", "[dsl]") {
    for (const auto& entry : std::filesystem::directory_iterator(CAUSALQ_FIXTURES)) {
        const std::string path = entry.path().string();
        if (path.size() < 8 || path.substr(path.size() - 8) != ".scm.txt") continue;
        const auto models = parse_models(support::read_file(path));
        const std::string printed = print_models(models);
        const auto again = parse_models(printed);
        REQUIRE(again.size() == models.size());
        for (std::size_t i = 0; i < models.size(); ++i) CHECK(equal(models[i], again[i]));
        CHECK(print_models(again) == printed);
    }
}

TEST_CASE("print and parse round trip on random models", "[dsl][property]") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Model m = testkit::generate_model(seed, {4, 2, 3, 3});
        const SourceModel source = to_source(m);
        const SourceModel again = parse_model(print_model(source));
        CHECK(equal(source, again));
        CHECK(testkit::extensionally_equal(to_model(again), m));
    }
}

TEST_CASE("mangled text fails cleanly", "[dsl][property]") {
    // Truncations and single-character edits either parse or raise ParseError.
    const std::string text = print_model(to_source(testkit::generate_model(7, {3, 1, 2, 2})));
    const std::string junk = "{}()[],=<>!&|*+-#\"x0";
    for (std::size_t i = 0; i < text.size(); ++i) {
        for (std::string variant : {text.substr(0, i), text.substr(0, i) + junk[i % junk.size()] + text.substr(i + 1)}) {
            try {
                for (const auto& s : parse_models(variant)) to_model(s);
            } catch (const ParseError&) {
            } catch (const Error&) {
            }
        }
    }
    SUCCEED();
}

TEST_CASE("formulas parse and print", "[formula][dsl]") {
    const Model m = support::fixture_model("example4", "Mprime");
    const Signature& sig = m.signature();
    const Formula f = parse_formula("[A<-1, D<-0] E=1 & !(B=1 | C=0)", sig);
    CHECK(f.interventions.count() == 2);
    const std::string printed = print_formula(f, sig);
    const Formula g = parse_formula(printed, sig);
    CHECK(equal(*f.body, *g.body));
    CHECK(f.interventions == g.interventions);
    CHECK(print_formula(g, sig) == printed);

    CHECK_THROWS_AS(parse_formula("[U_C<-1] E=1", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("U_C=1", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("[A<-1, A<-0] E=1", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("E=3", sig), ParseError);
    CHECK_THROWS_AS(parse_formula("[A<-1,] E=1", sig), ParseError);
}
