#include "mcfg/io.hpp"

#include "mcfg/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace mcfg {

namespace {

struct Token {
    enum class Kind { word, lparen, rparen, comma, arrow, colon, end } kind;
    std::string text;
    std::size_t column = 0;  // 1-based
};

bool is_word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != '#' && c != ':';
}

class LineLexer {
public:
    LineLexer(std::string_view line, const std::string& file, std::size_t lineno)
        : line_(line), file_(file), lineno_(lineno) {}

    Token next() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        const std::size_t col = pos_ + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') return {Token::Kind::end, "", col};
        const char c = line_[pos_];
        switch (c) {
            case '(': ++pos_; return {Token::Kind::lparen, "(", col};
            case ')': ++pos_; return {Token::Kind::rparen, ")", col};
            case ',': ++pos_; return {Token::Kind::comma, ",", col};
            case ':': ++pos_; return {Token::Kind::colon, ":", col};
            default: break;
        }
        std::size_t start = pos_;
        while (pos_ < line_.size() && is_word_char(line_[pos_])) ++pos_;
        std::string text(line_.substr(start, pos_ - start));
        if (text == "<-") return {Token::Kind::arrow, text, col};
        return {Token::Kind::word, text, col};
    }

    Token peek() {
        auto saved = pos_;
        auto t = next();
        pos_ = saved;
        return t;
    }

    [[noreturn]] void fail(std::size_t column, const std::string& what) const {
        throw ParseError(file_, lineno_, column, what);
    }

    Token expect(Token::Kind kind, const char* what) {
        auto t = next();
        if (t.kind != kind) fail(t.column, std::string("expected ") + what + (t.text.empty() ? "" : ", found '" + t.text + "'"));
        return t;
    }

private:
    std::string_view line_;
    const std::string& file_;
    std::size_t lineno_;
    std::size_t pos_ = 0;
};

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = nl + 1;
    }
    return lines;
}

std::optional<int> parse_int(std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

// `$i.j` with positive integers.
std::optional<Variable> positional(std::string_view name) {
    auto dot = name.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto i = parse_int(name.substr(0, dot));
    auto j = parse_int(name.substr(dot + 1));
    if (!i || !j || *i < 1 || *j < 1) return std::nullopt;
    return Variable{*i, *j};
}

bool looks_like_name(const std::string& s) { return !s.empty() && s != "<-" && s != "_" && s.front() != '$'; }

struct RawPattern {
    std::vector<Token> tokens;
    std::size_t column;
};

ProductionRule parse_rule(LineLexer& lex, const Token& head) {
    if (!looks_like_name(head.text)) lex.fail(head.column, "expected a non-terminal name, found '" + head.text + "'");
    ProductionRule rule;
    rule.lhs.name = head.text;

    // Left-hand side patterns are resolved after the RHS binds variable names.
    std::vector<RawPattern> raw;
    lex.expect(Token::Kind::lparen, "'(' after non-terminal");
    if (lex.peek().kind == Token::Kind::rparen) {
        lex.next();
    } else {
        for (;;) {
            RawPattern pat{{}, lex.peek().column};
            for (;;) {
                auto t = lex.peek();
                if (t.kind != Token::Kind::word) break;
                pat.tokens.push_back(lex.next());
            }
            raw.push_back(std::move(pat));
            auto sep = lex.next();
            if (sep.kind == Token::Kind::rparen) break;
            if (sep.kind != Token::Kind::comma) lex.fail(sep.column, "expected ',' or ')' in pattern list");
        }
    }
    rule.lhs.rank = static_cast<int>(raw.size());
    lex.expect(Token::Kind::arrow, "'<-'");

    std::map<std::string, Variable> bound;
    if (lex.peek().kind != Token::Kind::end) {
        for (int child = 1;; ++child) {
            auto name = lex.expect(Token::Kind::word, "a right-hand non-terminal");
            if (!looks_like_name(name.text)) lex.fail(name.column, "invalid non-terminal name '" + name.text + "'");
            NonTerminal nt{name.text, 0};
            lex.expect(Token::Kind::lparen, "'(' after non-terminal");
            if (lex.peek().kind == Token::Kind::rparen) {
                lex.next();
            } else {
                for (int comp = 1;; ++comp) {
                    auto v = lex.expect(Token::Kind::word, "a variable");
                    if (v.text.size() < 2 || v.text.front() != '$') lex.fail(v.column, "expected a variable like $x, found '" + v.text + "'");
                    auto name_part = v.text.substr(1);
                    if (auto pos = positional(name_part)) {
                        if (pos->child != child || pos->component != comp)
                            lex.fail(v.column, "positional variable " + v.text + " does not match its place $" +
                                                   std::to_string(child) + "." + std::to_string(comp));
                    } else if (!bound.emplace(name_part, Variable{child, comp}).second) {
                        lex.fail(v.column, "variable " + v.text + " bound twice");
                    }
                    ++nt.rank;
                    auto sep = lex.next();
                    if (sep.kind == Token::Kind::rparen) break;
                    if (sep.kind != Token::Kind::comma) lex.fail(sep.column, "expected ',' or ')' in argument list");
                }
            }
            rule.rhs.push_back(std::move(nt));
            auto sep = lex.next();
            if (sep.kind == Token::Kind::end) break;
            if (sep.kind != Token::Kind::comma) lex.fail(sep.column, "expected ',' between right-hand non-terminals");
        }
    }

    for (const auto& pat : raw) {
        PatternString out;
        if (pat.tokens.empty()) lex.fail(pat.column, "empty pattern; write '_' for the empty component");
        if (pat.tokens.size() == 1 && pat.tokens.front().text == "_") {
            rule.patterns.push_back(std::move(out));
            continue;
        }
        for (const auto& t : pat.tokens) {
            if (t.text == "_") lex.fail(t.column, "'_' must stand alone in a pattern");
            if (t.text.front() == '$') {
                auto name_part = t.text.substr(1);
                if (auto it = bound.find(name_part); it != bound.end())
                    out.push_back(it->second);
                else if (auto pos = positional(name_part))
                    out.push_back(*pos);
                else
                    lex.fail(t.column, "unbound variable " + t.text);
            } else {
                out.push_back(Terminal{t.text});
            }
        }
        rule.patterns.push_back(std::move(out));
    }
    return rule;
}

bool representable(const Symbol& s) {
    return !s.empty() && s != "_" && s != "<-" && s.front() != '$' && std::all_of(s.begin(), s.end(), is_word_char);
}

}  // namespace

Grammar parse_grammar(std::string_view text, const std::string& filename) {
    std::vector<ProductionRule> rules;
    std::optional<std::string> start;
    std::optional<std::vector<Symbol>> alphabet;
    std::size_t lineno = 0;
    for (auto line : split_lines(text)) {
        ++lineno;
        LineLexer lex(line, filename, lineno);
        auto first = lex.next();
        if (first.kind == Token::Kind::end) continue;
        if (first.kind != Token::Kind::word) lex.fail(first.column, "expected a rule or header, found '" + first.text + "'");
        if ((first.text == "start" || first.text == "alphabet") && lex.peek().kind == Token::Kind::colon) {
            lex.next();
            std::vector<Token> values;
            for (auto t = lex.next(); t.kind != Token::Kind::end; t = lex.next()) {
                if (t.kind != Token::Kind::word) lex.fail(t.column, "unexpected '" + t.text + "' in header");
                values.push_back(t);
            }
            if (first.text == "start") {
                if (start) lex.fail(first.column, "duplicate start header");
                if (values.size() != 1) lex.fail(first.column, "start header takes exactly one name");
                start = values.front().text;
            } else {
                if (alphabet) lex.fail(first.column, "duplicate alphabet header");
                alphabet.emplace();
                for (const auto& v : values) {
                    if (std::find(alphabet->begin(), alphabet->end(), v.text) != alphabet->end())
                        lex.fail(v.column, "duplicate letter '" + v.text + "'");
                    alphabet->push_back(v.text);
                }
            }
            continue;
        }
        rules.push_back(parse_rule(lex, first));
        auto rest = lex.next();
        if (rest.kind != Token::Kind::end) lex.fail(rest.column, "unexpected '" + rest.text + "' after rule");
    }
    if (rules.empty()) throw ParseError(filename, lineno, 1, "grammar has no rules");

    // RHS ranks come from argument counts; LHS ranks from pattern counts.
    std::string start_name = start ? *start : rules.front().lhs.name;
    std::optional<Alphabet> alpha;
    if (alphabet) alpha = Alphabet(std::move(*alphabet));
    return make_grammar(std::move(rules), start_name, std::move(alpha));
}

std::string format_grammar(const Grammar& g) {
    for (const auto& l : g.alphabet.letters())
        if (!representable(l)) throw InputError("letter '" + l + "' cannot be written in grammar-file syntax");
    std::ostringstream os;
    os << "start: " << g.start.name << '\n';
    Grammar collected = make_grammar(g.rules, g.start.name);
    if (!(collected.alphabet == g.alphabet)) {
        os << "alphabet:";
        for (const auto& l : g.alphabet.letters()) os << ' ' << l;
        os << '\n';
    }
    for (const auto& r : g.rules) os << to_string(r) << '\n';
    return os.str();
}

Preorder parse_preorder(std::string_view text, const std::string& filename) {
    std::optional<int> size;
    std::vector<std::pair<int, int>> pairs;
    std::size_t lineno = 0;
    for (auto line : split_lines(text)) {
        ++lineno;
        LineLexer lex(line, filename, lineno);
        auto first = lex.next();
        if (first.kind == Token::Kind::end) continue;
        if (!size) {
            if (first.text != "m") lex.fail(first.column, "expected header 'm: <size>'");
            lex.expect(Token::Kind::colon, "':' after m");
            auto v = lex.expect(Token::Kind::word, "the preorder size");
            auto n = parse_int(v.text);
            if (!n || *n < 1) lex.fail(v.column, "size must be a positive integer, found '" + v.text + "'");
            size = *n;
        } else {
            if (first.kind != Token::Kind::word) lex.fail(first.column, "expected 'i <= j'");
            auto i = parse_int(first.text);
            if (!i) lex.fail(first.column, "expected an element index, found '" + first.text + "'");
            auto op = lex.expect(Token::Kind::word, "'<='");
            if (op.text != "<=") lex.fail(op.column, "expected '<=', found '" + op.text + "'");
            auto second = lex.expect(Token::Kind::word, "an element index");
            auto j = parse_int(second.text);
            if (!j) lex.fail(second.column, "expected an element index, found '" + second.text + "'");
            if (*i < 1 || *i > *size) lex.fail(first.column, "element " + first.text + " outside [1, " + std::to_string(*size) + "]");
            if (*j < 1 || *j > *size) lex.fail(second.column, "element " + second.text + " outside [1, " + std::to_string(*size) + "]");
            pairs.emplace_back(*i, *j);
        }
        auto rest = lex.next();
        if (rest.kind != Token::Kind::end) lex.fail(rest.column, "unexpected '" + rest.text + "'");
    }
    if (!size) throw ParseError(filename, lineno, 1, "missing header 'm: <size>'");
    return Preorder::closure(*size, pairs);
}

std::string format_preorder(const Preorder& p) { return to_string(p); }

Word parse_word(std::string_view text) {
    Word w;
    std::istringstream is{std::string(text)};
    for (std::string tok; is >> tok;) w.push_back(tok);
    if (w.size() == 1 && w.front() == "_") w.clear();
    return w;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace mcfg
