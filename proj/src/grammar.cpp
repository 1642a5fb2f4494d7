#include "mcfg/grammar.hpp"

#include "mcfg/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mcfg {

Alphabet::Alphabet(std::vector<Symbol> letters) : letters_(std::move(letters)) {
    std::set<Symbol> seen;
    for (const auto& l : letters_) {
        if (!seen.insert(l).second) throw InputError("duplicate letter in alphabet: " + l);
    }
}

bool Alphabet::contains(const Symbol& letter) const { return index_of(letter).has_value(); }

std::optional<std::size_t> Alphabet::index_of(const Symbol& letter) const {
    auto it = std::find(letters_.begin(), letters_.end(), letter);
    if (it == letters_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - letters_.begin());
}

Grammar make_grammar(std::vector<ProductionRule> rules, const std::string& start,
                     std::optional<Alphabet> alphabet) {
    Grammar g;
    std::vector<Symbol> letters;
    auto note_nt = [&](const NonTerminal& nt) {
        if (std::find(g.nonterminals.begin(), g.nonterminals.end(), nt) == g.nonterminals.end())
            g.nonterminals.push_back(nt);
    };
    for (const auto& r : rules) {
        note_nt(r.lhs);
        for (const auto& nt : r.rhs) note_nt(nt);
        for (const auto& p : r.patterns)
            for (const auto& item : p)
                if (const auto* t = std::get_if<Terminal>(&item))
                    if (std::find(letters.begin(), letters.end(), t->letter) == letters.end())
                        letters.push_back(t->letter);
    }
    g.start = NonTerminal{start, 1};
    auto it = std::find_if(g.nonterminals.begin(), g.nonterminals.end(),
                           [&](const NonTerminal& nt) { return nt.name == start; });
    if (it != g.nonterminals.end()) g.start = *it;
    g.alphabet = alphabet ? std::move(*alphabet) : Alphabet(std::move(letters));
    g.rules = std::move(rules);
    return g;
}

std::size_t Term::total_length() const noexcept {
    std::size_t n = 0;
    for (const auto& c : components) n += c.size();
    return n;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::zero_rank: return "zero-rank";
        case ViolationKind::inconsistent_rank: return "inconsistent-rank";
        case ViolationKind::duplicate_nonterminal: return "duplicate-nonterminal";
        case ViolationKind::start_rank: return "start-rank";
        case ViolationKind::start_undeclared: return "start-undeclared";
        case ViolationKind::unknown_nonterminal: return "unknown-nonterminal";
        case ViolationKind::pattern_count: return "pattern-count";
        case ViolationKind::foreign_terminal: return "foreign-terminal";
        case ViolationKind::variable_child_out_of_range: return "variable-child-out-of-range";
        case ViolationKind::variable_component_out_of_range: return "variable-component-out-of-range";
        case ViolationKind::variable_used_twice: return "variable-used-twice";
        case ViolationKind::duplicate_rule: return "duplicate-rule";
        case ViolationKind::terminal_in_nonterminating_rule: return "terminal-in-nonterminating-rule";
        case ViolationKind::variable_unused: return "variable-unused";
        case ViolationKind::terminating_letter_count: return "terminating-letter-count";
    }
    return "unknown";
}

bool ValidationReport::valid() const noexcept { return error_count() == 0; }

std::size_t ValidationReport::error_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(), [](const Violation& v) {
        return v.severity == Severity::error;
    }));
}

namespace {

std::string var_name(const Variable& v) {
    return "$" + std::to_string(v.child) + "." + std::to_string(v.component);
}

std::string rule_ref(std::size_t i) { return "rule " + std::to_string(i + 1); }

void check_nonterminal_use(const NonTerminal& nt, const std::map<std::string, std::set<int>>& declared,
                           std::size_t rule_index, const char* where, std::vector<Violation>& out) {
    auto it = declared.find(nt.name);
    if (it == declared.end()) {
        out.push_back({ViolationKind::unknown_nonterminal, Severity::error, rule_index,
                       rule_ref(rule_index) + ": " + where + " non-terminal " + nt.name + " is not declared"});
    } else if (!it->second.count(nt.rank)) {
        out.push_back({ViolationKind::inconsistent_rank, Severity::error, rule_index,
                       rule_ref(rule_index) + ": " + where + " non-terminal " + nt.name + " used with rank " +
                           std::to_string(nt.rank) + " but declared with another rank"});
    }
}

}  // namespace

ValidationReport validate_grammar(const Grammar& g) {
    ValidationReport report;
    auto& out = report.violations;

    std::map<std::string, std::set<int>> declared;
    std::set<NonTerminal> seen;
    for (const auto& nt : g.nonterminals) {
        if (nt.rank < 1)
            out.push_back({ViolationKind::zero_rank, Severity::error, std::nullopt,
                           "non-terminal " + nt.name + " has rank " + std::to_string(nt.rank) + " (ranks start at 1)"});
        if (!seen.insert(nt).second) {
            out.push_back({ViolationKind::duplicate_nonterminal, Severity::warning, std::nullopt,
                           "non-terminal " + nt.name + " declared twice"});
            continue;
        }
        auto& ranks = declared[nt.name];
        ranks.insert(nt.rank);
        if (ranks.size() == 2)
            out.push_back({ViolationKind::inconsistent_rank, Severity::error, std::nullopt,
                           "non-terminal " + nt.name + " declared with more than one rank"});
    }

    if (g.start.rank != 1)
        out.push_back({ViolationKind::start_rank, Severity::error, std::nullopt,
                       "start symbol " + g.start.name + " has rank " + std::to_string(g.start.rank) + ", expected 1"});
    if (!seen.count(g.start))
        out.push_back({ViolationKind::start_undeclared, Severity::error, std::nullopt,
                       "start symbol " + g.start.name + " is not among the non-terminals"});

    for (std::size_t ri = 0; ri < g.rules.size(); ++ri) {
        const auto& rule = g.rules[ri];
        check_nonterminal_use(rule.lhs, declared, ri, "left-hand", out);
        for (const auto& nt : rule.rhs) check_nonterminal_use(nt, declared, ri, "right-hand", out);

        if (static_cast<int>(rule.patterns.size()) != rule.lhs.rank)
            out.push_back({ViolationKind::pattern_count, Severity::error, ri,
                           rule_ref(ri) + ": " + std::to_string(rule.patterns.size()) + " patterns for rank-" +
                               std::to_string(rule.lhs.rank) + " non-terminal " + rule.lhs.name});

        std::set<Variable> used;
        for (const auto& pattern : rule.patterns) {
            for (const auto& item : pattern) {
                if (const auto* t = std::get_if<Terminal>(&item)) {
                    if (!g.alphabet.contains(t->letter))
                        out.push_back({ViolationKind::foreign_terminal, Severity::error, ri,
                                       rule_ref(ri) + ": terminal " + t->letter + " is not in the alphabet"});
                    continue;
                }
                const auto& v = std::get<Variable>(item);
                if (v.child < 1 || v.child > static_cast<int>(rule.rhs.size())) {
                    out.push_back({ViolationKind::variable_child_out_of_range, Severity::error, ri,
                                   rule_ref(ri) + ": variable " + var_name(v) + ": variable child index out of range"});
                } else if (v.component < 1 || v.component > rule.rhs[v.child - 1].rank) {
                    out.push_back({ViolationKind::variable_component_out_of_range, Severity::error, ri,
                                   rule_ref(ri) + ": variable " + var_name(v) +
                                       ": variable component index out of range"});
                }
                if (!used.insert(v).second)
                    out.push_back({ViolationKind::variable_used_twice, Severity::error, ri,
                                   rule_ref(ri) + ": variable " + var_name(v) + ": variable used twice"});
            }
        }

        for (std::size_t earlier = 0; earlier < ri; ++earlier) {
            if (g.rules[earlier] == rule) {
                out.push_back({ViolationKind::duplicate_rule, Severity::warning, ri,
                               rule_ref(ri) + " duplicates " + rule_ref(earlier)});
                break;
            }
        }
    }
    return report;
}

Term apply_rule(const ProductionRule& rule, std::span<const Term> children) {
    if (children.size() != rule.rhs.size()) throw ArityError(rule.rhs.size(), children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (children[i].head != rule.rhs[i])
            throw HeadMismatch(i + 1, to_string(rule.rhs[i]) + "/" + std::to_string(rule.rhs[i].rank),
                               to_string(children[i].head) + "/" + std::to_string(children[i].head.rank));
        if (static_cast<int>(children[i].components.size()) != children[i].head.rank)
            throw HeadMismatch(i + 1, std::to_string(rule.rhs[i].rank) + " components",
                               std::to_string(children[i].components.size()) + " components");
    }

    Term out{rule.lhs, {}};
    out.components.reserve(rule.patterns.size());
    for (const auto& pattern : rule.patterns) {
        Word w;
        for (const auto& item : pattern) {
            if (const auto* t = std::get_if<Terminal>(&item)) {
                w.push_back(t->letter);
                continue;
            }
            const auto& v = std::get<Variable>(item);
            if (v.child < 1 || v.child > static_cast<int>(children.size()) || v.component < 1 ||
                v.component > static_cast<int>(children[v.child - 1].components.size()))
                throw InputError("variable " + var_name(v) + " out of range in rule " + to_string(rule));
            const auto& part = children[v.child - 1].components[v.component - 1];
            w.insert(w.end(), part.begin(), part.end());
        }
        out.components.push_back(std::move(w));
    }
    return out;
}

int dimension(const Grammar& g) {
    int d = 0;
    for (const auto& nt : g.nonterminals) d = std::max(d, nt.rank);
    return d;
}

CheckResult is_normal_form(const Grammar& g) {
    CheckResult res;
    for (std::size_t ri = 0; ri < g.rules.size(); ++ri) {
        const auto& rule = g.rules[ri];
        if (rule.terminating()) {
            std::size_t letters = pattern_letter_count(rule);
            if (letters != 1)
                res.violations.push_back({ViolationKind::terminating_letter_count, Severity::error, ri,
                                          rule_ref(ri) + ": terminating rule carries " + std::to_string(letters) +
                                              " letters, expected exactly one"});
            continue;
        }
        if (pattern_letter_count(rule) != 0)
            res.violations.push_back({ViolationKind::terminal_in_nonterminating_rule, Severity::error, ri,
                                      rule_ref(ri) + ": non-terminating rule contains terminals"});
        std::map<Variable, int> uses;
        for (const auto& p : rule.patterns)
            for (const auto& item : p)
                if (const auto* v = std::get_if<Variable>(&item)) ++uses[*v];
        for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
            for (int j = 1; j <= rule.rhs[i].rank; ++j) {
                Variable v{static_cast<int>(i) + 1, j};
                auto it = uses.find(v);
                int n = it == uses.end() ? 0 : it->second;
                if (n == 0)
                    res.violations.push_back({ViolationKind::variable_unused, Severity::error, ri,
                                              rule_ref(ri) + ": variable " + var_name(v) + " is unused"});
                else if (n > 1)
                    res.violations.push_back({ViolationKind::variable_used_twice, Severity::error, ri,
                                              rule_ref(ri) + ": variable " + var_name(v) + ": variable used twice"});
            }
        }
    }
    res.holds = res.violations.empty();
    return res;
}

bool is_non_deleting(const ProductionRule& rule) {
    std::set<Variable> used;
    for (const auto& p : rule.patterns)
        for (const auto& item : p)
            if (const auto* v = std::get_if<Variable>(&item)) used.insert(*v);
    for (std::size_t i = 0; i < rule.rhs.size(); ++i)
        for (int j = 1; j <= rule.rhs[i].rank; ++j)
            if (!used.count(Variable{static_cast<int>(i) + 1, j})) return false;
    return true;
}

bool is_non_deleting(const Grammar& g) {
    return std::all_of(g.rules.begin(), g.rules.end(), [](const ProductionRule& r) { return is_non_deleting(r); });
}

std::size_t pattern_letter_count(const ProductionRule& rule) {
    std::size_t n = 0;
    for (const auto& p : rule.patterns)
        for (const auto& item : p)
            if (std::holds_alternative<Terminal>(item)) ++n;
    return n;
}

std::string to_string(const NonTerminal& nt) { return nt.name; }

std::string to_string(const PatternString& pattern) {
    if (pattern.empty()) return "_";
    std::string s;
    for (const auto& item : pattern) {
        if (!s.empty()) s += ' ';
        if (const auto* t = std::get_if<Terminal>(&item))
            s += t->letter;
        else
            s += var_name(std::get<Variable>(item));
    }
    return s;
}

std::string to_string(const ProductionRule& rule) {
    std::ostringstream os;
    os << rule.lhs.name << '(';
    for (std::size_t i = 0; i < rule.patterns.size(); ++i) {
        if (i) os << ", ";
        os << to_string(rule.patterns[i]);
    }
    os << ") <-";
    for (std::size_t i = 0; i < rule.rhs.size(); ++i) {
        os << (i ? ", " : " ") << rule.rhs[i].name << '(';
        for (int j = 1; j <= rule.rhs[i].rank; ++j) {
            if (j > 1) os << ", ";
            os << var_name(Variable{static_cast<int>(i) + 1, j});
        }
        os << ')';
    }
    return os.str();
}

std::string to_string(const Word& word) {
    if (word.empty()) return "_";
    std::string s;
    for (const auto& l : word) {
        if (!s.empty()) s += ' ';
        s += l;
    }
    return s;
}

std::string to_string(const Term& term) {
    std::string s = term.head.name + "(";
    for (std::size_t i = 0; i < term.components.size(); ++i) {
        if (i) s += ", ";
        s += to_string(term.components[i]);
    }
    return s + ")";
}

}  // namespace mcfg
