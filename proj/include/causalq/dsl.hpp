#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "causalq/error.hpp"
#include "causalq/formula.hpp"
#include "causalq/model.hpp"

namespace causalq {

/// Diagnostic for malformed model or formula text.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::string message, std::vector<std::string> expected = {});

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    int line_;
    int column_;
    std::string message_;
    std::vector<std::string> expected_;
};

struct Declaration {
    std::string name;
    VarKind kind = VarKind::endogenous;
    Range range;
    ExprPtr expr;  // null for exogenous declarations
    int line = 0;
    int column = 0;
};

/// A model as written: declarations in source order, names unresolved.
struct SourceModel {
    std::string name;
    std::vector<Declaration> declarations;
};

/// Structural equality (positions ignored).
bool equal(const SourceModel& a, const SourceModel& b);

/// Parses every `model NAME { ... }` block in `text`. `#` starts a line comment.
/// Throws ParseError on lexical errors, duplicate declarations, malformed
/// ranges and references to undeclared variables.
std::vector<SourceModel> parse_models(std::string_view text);

/// Parses text holding exactly one model block.
SourceModel parse_model(std::string_view text);

/// Resolves names and tabulates equations. The result may still be invalid
/// (range or cycle problems); see Model::report().
Model to_model(const SourceModel& source);
SourceModel to_source(const Model& model);

/// Canonical text; parse_model(print_model(m)) is structurally equal to m.
std::string print_model(const SourceModel& model);
std::string print_models(const std::vector<SourceModel>& models);

/// Parses `[Y1<-y1, ...] body` against `sig`. Atoms and interventions must name
/// endogenous variables with in-range values; intervention targets are distinct.
Formula parse_formula(std::string_view text, const Signature& sig);
std::string print_formula(const Formula& formula, const Signature& sig);

}  // namespace causalq
