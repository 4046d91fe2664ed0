#include "causalq/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_map>

namespace causalq {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
    return out;
}

std::string describe(int line, int column, const std::string& message, const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) out += " (expected " + join(expected) + ")";
    return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::string message, std::vector<std::string> expected)
    : Error(describe(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { ident, integer, string, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1;
    int column = 1;
};

std::string show(const Token& t) {
    switch (t.kind) {
        case Tok::end: return "end of input";
        case Tok::string: return "string \"" + t.text + "\"";
        default: return "'" + t.text + "'";
    }
}

std::vector<Token> lex(std::string_view src) {
    static const std::vector<std::string> two_char = {"<-", "<=", ">=", "!="};
    static const std::string one_char = "{}()[],:=<>+-*&|!";
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalpha(uc) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            t.kind = Tok::ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(uc)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::integer;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '"' || c == '\'') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != c && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != c) throw ParseError(line, col, "unterminated string");
            t.kind = Tok::string;
            t.text = std::string(src.substr(i + 1, j - i - 1));
            advance(j - i + 1);
        } else {
            t.kind = Tok::punct;
            std::string_view rest = src.substr(i);
            for (const auto& tc : two_char)
                if (rest.substr(0, 2) == tc) t.text = tc;
            if (t.text.empty()) {
                if (one_char.find(c) == std::string::npos) {
                    std::string shown = uc < 0x20 || uc >= 0x7f ? "byte " + std::to_string(static_cast<int>(uc)) : std::string("'") + c + "'";
                    throw ParseError(line, col, "unexpected character " + shown);
                }
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

using Op = Expr::Op;

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::end; }
    bool is(const char* p) const { return peek().kind == Tok::punct && peek().text == p; }
    bool is_word(const char* w) const { return peek().kind == Tok::ident && peek().text == w; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(peek().line, peek().column, "unexpected " + show(peek()), std::move(expected));
    }

    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect(const char* p) {
        if (!is(p)) fail({std::string("'") + p + "'"});
        take();
    }

    Token expect_ident(const char* what) {
        if (peek().kind != Tok::ident) fail({what});
        return take();
    }

    Value value() {
        bool negative = false;
        if (is("-")) {
            take();
            negative = true;
            if (peek().kind != Tok::integer) fail({"integer"});
        }
        if (peek().kind == Tok::integer) return integer(take(), negative);
        if (!negative && peek().kind == Tok::string) return take().text;
        fail({"integer", "string"});
    }

    static Value integer(const Token& t, bool negative) {
        std::string digits = (negative ? "-" : "") + t.text;
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw ParseError(t.line, t.column, "integer out of range");
        return v;
    }

    Range range(const std::string& owner) {
        const Token open = peek();
        expect("{");
        Range r;
        if (is("}")) throw ParseError(peek().line, peek().column, "range of '" + owner + "' is empty", {"value"});
        while (true) {
            const Token at = peek();
            Value v = value();
            if (std::find(r.begin(), r.end(), v) != r.end())
                throw ParseError(at.line, at.column, "duplicate value " + to_string(v) + " in range of '" + owner + "'");
            r.push_back(std::move(v));
            if (is(",")) {
                take();
                continue;
            }
            if (is("}")) break;
            fail({"','", "'}'"});
        }
        take();
        (void)open;
        return r;
    }

    // Expressions, loosest first.
    ExprPtr expr() {
        ExprPtr e = conj();
        while (is("|")) {
            take();
            e = Expr::binary(Op::logical_or, e, conj());
        }
        return e;
    }

    ExprPtr conj() {
        ExprPtr e = negation();
        while (is("&")) {
            take();
            e = Expr::binary(Op::logical_and, e, negation());
        }
        return e;
    }

    ExprPtr negation() {
        if (is("!")) {
            take();
            return Expr::unary(Op::logical_not, negation());
        }
        return comparison();
    }

    ExprPtr comparison() {
        ExprPtr e = sum();
        if (peek().kind != Tok::punct) return e;
        static const std::vector<std::pair<std::string, Op>> ops = {
            {"=", Op::eq}, {"!=", Op::ne}, {"<", Op::lt}, {"<=", Op::le}, {">", Op::gt}, {">=", Op::ge}};
        if (peek().text == "<-") {
            // "X<-1" inside an expression means X < -1.
            Token lt = toks_[pos_];
            lt.text = "<";
            Token minus = lt;
            minus.text = "-";
            minus.column += 1;
            toks_[pos_] = lt;
            toks_.insert(toks_.begin() + static_cast<std::ptrdiff_t>(pos_) + 1, minus);
        }
        for (const auto& [text, op] : ops) {
            if (peek().text == text) {
                take();
                return Expr::binary(op, e, sum());
            }
        }
        return e;
    }

    ExprPtr sum() {
        ExprPtr e = product();
        while (is("+") || is("-")) {
            Op op = take().text == "+" ? Op::add : Op::sub;
            e = Expr::binary(op, e, product());
        }
        return e;
    }

    ExprPtr product() {
        ExprPtr e = unary();
        while (is("*")) {
            take();
            e = Expr::binary(Op::mul, e, unary());
        }
        return e;
    }

    ExprPtr unary() {
        if (is("-")) {
            take();
            if (peek().kind == Tok::integer) return Expr::literal(integer(take(), true));
            return Expr::unary(Op::neg, unary());
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& t = peek();
        if (t.kind == Tok::integer) return Expr::literal(integer(take(), false));
        if (t.kind == Tok::string) return Expr::literal(take().text);
        if (t.kind == Tok::ident && t.text == "ite" && peek(1).kind == Tok::punct && peek(1).text == "(") {
            take();
            take();
            ExprPtr c = expr();
            expect(",");
            ExprPtr a = expr();
            expect(",");
            ExprPtr b = expr();
            expect(")");
            return Expr::ite(c, a, b);
        }
        if (t.kind == Tok::ident) {
            Token id = take();
            return Expr::var(id.text, id.line, id.column);
        }
        if (is("(")) {
            take();
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        fail({"integer", "string", "identifier", "'('", "'-'", "'!'", "'ite'"});
    }

    SourceModel model() {
        if (!is_word("model")) fail({"'model'"});
        take();
        SourceModel m;
        m.name = expect_ident("model name").text;
        expect("{");
        std::unordered_map<std::string, std::size_t> seen;
        while (!is("}")) {
            Declaration d;
            if (is_word("exo")) {
                d.kind = VarKind::exogenous;
            } else if (is_word("var")) {
                d.kind = VarKind::endogenous;
            } else {
                fail({"'exo'", "'var'", "'}'"});
            }
            take();
            Token id = expect_ident("variable name");
            if (id.text == "ite" || id.text == "model" || id.text == "exo" || id.text == "var")
                throw ParseError(id.line, id.column, "'" + id.text + "' is reserved");
            if (seen.count(id.text)) throw ParseError(id.line, id.column, "duplicate declaration of '" + id.text + "'");
            seen.emplace(id.text, m.declarations.size());
            d.name = id.text;
            d.line = id.line;
            d.column = id.column;
            expect(":");
            d.range = range(d.name);
            if (d.kind == VarKind::endogenous) {
                expect("=");
                d.expr = expr();
            }
            m.declarations.push_back(std::move(d));
        }
        take();
        for (const auto& d : m.declarations)
            if (d.expr) check_refs(*d.expr, seen);
        return m;
    }

    static void check_refs(const Expr& e, const std::unordered_map<std::string, std::size_t>& seen) {
        if (e.op == Op::var && !seen.count(e.name))
            throw ParseError(e.line, e.column, "unknown variable '" + e.name + "'");
        for (const auto& a : e.args) check_refs(*a, seen);
    }

    // Formula bodies.
    FormulaPtr fbody(const Signature& sig) {
        FormulaPtr f = fconj(sig);
        while (is("|")) {
            take();
            f = FormulaNode::disjunction(f, fconj(sig));
        }
        return f;
    }

    FormulaPtr fconj(const Signature& sig) {
        FormulaPtr f = fneg(sig);
        while (is("&")) {
            take();
            f = FormulaNode::conjunction(f, fneg(sig));
        }
        return f;
    }

    FormulaPtr fneg(const Signature& sig) {
        if (is("!")) {
            take();
            return FormulaNode::negation(fneg(sig));
        }
        if (is("(")) {
            take();
            FormulaPtr f = fbody(sig);
            expect(")");
            return f;
        }
        if (peek().kind != Tok::ident) fail({"identifier", "'!'", "'('"});
        const Token id = take();
        const VarIndex v = endogenous(sig, id);
        bool negated = false;
        if (is("!=")) {
            negated = true;
            take();
        } else {
            expect("=");
        }
        const Token at = peek();
        const int vi = in_range(sig, v, value(), at);
        FormulaPtr f = FormulaNode::atom(v, vi);
        return negated ? FormulaNode::negation(f) : f;
    }

    static VarIndex endogenous(const Signature& sig, const Token& id) {
        auto v = sig.find(id.text);
        if (!v) throw ParseError(id.line, id.column, "unknown variable '" + id.text + "'");
        if (sig.is_exogenous(*v))
            throw ParseError(id.line, id.column, "'" + id.text + "' is exogenous; formulas range over endogenous variables");
        return *v;
    }

    static int in_range(const Signature& sig, VarIndex v, const Value& val, const Token& at) {
        auto vi = sig.value_index(v, val);
        if (!vi)
            throw ParseError(at.line, at.column,
                             "value " + to_string(val) + " is not in the range of '" + sig.var(v).name + "' " +
                                 to_string(sig.var(v).range));
        return *vi;
    }

    Formula formula(const Signature& sig) {
        Formula f;
        f.interventions = Assignment(sig.size());
        if (is("[")) {
            take();
            while (!is("]")) {
                const Token id = expect_ident("variable name");
                const VarIndex v = endogenous(sig, id);
                if (f.interventions.bound(v))
                    throw ParseError(id.line, id.column, "'" + id.text + "' is intervened on twice");
                expect("<-");
                const Token at = peek();
                f.interventions.set(v, in_range(sig, v, value(), at));
                if (is(",")) {
                    take();
                    if (is("]")) fail({"identifier"});
                } else if (!is("]")) {
                    fail({"','", "']'"});
                }
            }
            take();
        }
        f.body = fbody(sig);
        if (!at_end()) fail({"end of input"});
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

bool equal(const SourceModel& a, const SourceModel& b) {
    if (a.name != b.name || a.declarations.size() != b.declarations.size()) return false;
    for (std::size_t i = 0; i < a.declarations.size(); ++i) {
        const auto& x = a.declarations[i];
        const auto& y = b.declarations[i];
        if (x.name != y.name || x.kind != y.kind || x.range != y.range) return false;
        if (bool(x.expr) != bool(y.expr)) return false;
        if (x.expr && !equal(*x.expr, *y.expr)) return false;
    }
    return true;
}

std::vector<SourceModel> parse_models(std::string_view text) {
    Parser p(text);
    std::vector<SourceModel> out;
    std::set<std::string> names;
    while (!p.at_end()) {
        const Token at = p.peek(1);
        SourceModel m = p.model();
        if (!names.insert(m.name).second) throw ParseError(at.line, at.column, "duplicate model '" + m.name + "'");
        out.push_back(std::move(m));
    }
    return out;
}

SourceModel parse_model(std::string_view text) {
    Parser p(text);
    SourceModel m = p.model();
    if (!p.at_end()) p.fail({"end of input"});
    return m;
}

Model to_model(const SourceModel& source) {
    Signature sig;
    std::vector<ExprPtr> eqs;
    for (const auto& d : source.declarations) {
        sig.add(d.name, d.kind, d.range);
        eqs.push_back(d.expr);
    }
    return Model::build(source.name, std::move(sig), std::move(eqs));
}

SourceModel to_source(const Model& model) {
    SourceModel m;
    m.name = model.name();
    const Signature& sig = model.signature();
    for (VarIndex v = 0; v < sig.size(); ++v) {
        Declaration d;
        d.name = sig.var(v).name;
        d.kind = sig.var(v).kind;
        d.range = sig.var(v).range;
        d.expr = model.equation(v).expr;
        m.declarations.push_back(std::move(d));
    }
    return m;
}

std::string print_model(const SourceModel& model) {
    std::string out = "model " + model.name + " {\n";
    for (const auto& d : model.declarations) {
        out += d.kind == VarKind::exogenous ? "  exo " : "  var ";
        out += d.name + " : " + to_string(d.range);
        if (d.expr) out += " = " + to_string(*d.expr);
        out += "\n";
    }
    return out + "}\n";
}

std::string print_models(const std::vector<SourceModel>& models) {
    std::string out;
    for (std::size_t i = 0; i < models.size(); ++i) out += (i ? "\n" : "") + print_model(models[i]);
    return out;
}

Formula parse_formula(std::string_view text, const Signature& sig) {
    Parser p(text);
    return p.formula(sig);
}

namespace {

int flevel(FormulaNode::Kind k) {
    switch (k) {
        case FormulaNode::Kind::disjunction: return 1;
        case FormulaNode::Kind::conjunction: return 2;
        case FormulaNode::Kind::negation: return 3;
        default: return 4;
    }
}

std::string print_body(const FormulaNode& f, const Signature& sig, int min_level) {
    std::string out;
    const int lvl = flevel(f.kind);
    switch (f.kind) {
        case FormulaNode::Kind::atom: out = sig.var(f.var).name + " = " + to_string(sig.value(f.var, f.value)); break;
        case FormulaNode::Kind::negation: out = "!" + print_body(*f.children[0], sig, 3); break;
        case FormulaNode::Kind::conjunction:
            out = print_body(*f.children[0], sig, 2) + " & " + print_body(*f.children[1], sig, 3);
            break;
        case FormulaNode::Kind::disjunction:
            out = print_body(*f.children[0], sig, 1) + " | " + print_body(*f.children[1], sig, 2);
            break;
    }
    return lvl < min_level ? "(" + out + ")" : out;
}

}  // namespace

std::string print_formula(const Formula& formula, const Signature& sig) {
    std::string out;
    if (!formula.interventions.empty()) {
        out = "[";
        bool first = true;
        for (VarIndex v : formula.interventions.variables()) {
            out += (first ? "" : ", ") + sig.var(v).name + " <- " + to_string(sig.value(v, formula.interventions.get(v)));
            first = false;
        }
        out += "] ";
    }
    return out + print_body(*formula.body, sig, 0);
}

}  // namespace causalq
