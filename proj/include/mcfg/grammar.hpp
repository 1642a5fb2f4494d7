#pragma once

// Core data model for multiple context-free grammars: ranked non-terminals,
// production rules whose patterns mix terminals and variables x(i,j), terms,
// and the rule-application semantics that everything else builds on.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace mcfg {

/// Letters are opaque tokens; multi-character names such as "a1" are normal.
using Symbol = std::string;
using Word = std::vector<Symbol>;

class Alphabet {
public:
    Alphabet() = default;
    /// Throws InputError on duplicate letters.
    explicit Alphabet(std::vector<Symbol> letters);

    bool contains(const Symbol& letter) const;
    std::optional<std::size_t> index_of(const Symbol& letter) const;
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const std::vector<Symbol>& letters() const noexcept { return letters_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<Symbol> letters_;
};

struct NonTerminal {
    std::string name;
    int rank = 1;

    auto operator<=>(const NonTerminal&) const = default;
};

/// The variable x(child, component); both indices start at 1.
struct Variable {
    int child = 1;
    int component = 1;

    auto operator<=>(const Variable&) const = default;
};

struct Terminal {
    Symbol letter;

    auto operator<=>(const Terminal&) const = default;
};

using PatternItem = std::variant<Terminal, Variable>;
using PatternString = std::vector<PatternItem>;

/// A(p1, ..., pr) <- A1(...), ..., An(...). Terminating when rhs is empty.
struct ProductionRule {
    NonTerminal lhs;
    std::vector<PatternString> patterns;
    std::vector<NonTerminal> rhs;

    bool terminating() const noexcept { return rhs.empty(); }

    auto operator<=>(const ProductionRule&) const = default;
};

/// The quadruple (N, Sigma, P, S). Plain data: any combination of fields can be
/// represented, and validate_grammar() reports what is wrong with it.
struct Grammar {
    std::vector<NonTerminal> nonterminals;
    Alphabet alphabet;
    std::vector<ProductionRule> rules;
    NonTerminal start;

    bool operator==(const Grammar&) const = default;
};

/// Builds a grammar whose non-terminal set and alphabet are collected from the rules
/// in order of first appearance. The start symbol takes its rank from the rules if it
/// occurs there, else rank 1. An explicit alphabet overrides the collected one.
Grammar make_grammar(std::vector<ProductionRule> rules, const std::string& start,
                     std::optional<Alphabet> alphabet = std::nullopt);

/// A(w1, ..., wr) for concrete words.
struct Term {
    NonTerminal head;
    std::vector<Word> components;

    std::size_t total_length() const noexcept;

    auto operator<=>(const Term&) const = default;
};

enum class Severity { error, warning };

enum class ViolationKind {
    zero_rank,
    inconsistent_rank,
    duplicate_nonterminal,
    start_rank,
    start_undeclared,
    unknown_nonterminal,
    pattern_count,
    foreign_terminal,
    variable_child_out_of_range,
    variable_component_out_of_range,
    variable_used_twice,
    duplicate_rule,
    // normal-form and non-deletion checks
    terminal_in_nonterminating_rule,
    variable_unused,
    terminating_letter_count,
};

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    Severity severity = Severity::error;
    /// 0-based index into Grammar::rules, absent for grammar-level findings.
    std::optional<std::size_t> rule;
    std::string message;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    /// True when no error-severity violation exists; warnings do not invalidate.
    bool valid() const noexcept;
    std::size_t error_count() const noexcept;
};

struct CheckResult {
    bool holds = true;
    std::vector<Violation> violations;
};

/// Lists every violated well-formedness condition. Invalidity is data, not an exception.
ValidationReport validate_grammar(const Grammar& g);

/// Substitutes the children's components for the variables of the rule's patterns.
/// Throws ArityError or HeadMismatch when the children do not fit the rule's RHS.
Term apply_rule(const ProductionRule& rule, std::span<const Term> children);

/// Maximal rank over the grammar's non-terminals (0 for an empty set).
int dimension(const Grammar& g);

/// Two conditions: non-terminating rules use every variable exactly once and no
/// terminals; terminating rules carry exactly one letter across their components.
CheckResult is_normal_form(const Grammar& g);

/// Every variable available from a rule's RHS occurs in its patterns.
bool is_non_deleting(const Grammar& g);
bool is_non_deleting(const ProductionRule& rule);

/// Number of letters written directly into the rule's patterns.
std::size_t pattern_letter_count(const ProductionRule& rule);

std::string to_string(const NonTerminal& nt);
std::string to_string(const PatternString& pattern);
/// Rule in grammar-file syntax, e.g. `S($1.1 $2.1) <- S($1.1), T($2.1)`.
std::string to_string(const ProductionRule& rule);
/// `A(a1 a2, _)`; `_` marks an empty component.
std::string to_string(const Term& term);
/// Space-separated tokens, `_` for the empty word.
std::string to_string(const Word& word);

}  // namespace mcfg
