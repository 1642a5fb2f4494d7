#pragma once

// Brute-force oracles. enumerate_terms saturates the set of derivable terms whose
// combined component length stays within a budget; the other functions derive
// word sets from it or straight from the definition of L(p).

#include "mcfg/derivation.hpp"
#include "mcfg/grammar.hpp"
#include "mcfg/preorder.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace mcfg {

struct EnumerationOptions {
    /// Hard cap on the number of stored terms; exceeding it throws LimitExceeded.
    std::size_t max_terms = 2'000'000;
};

/// One rule application that produced a term: rule index into Grammar::rules and
/// indices of the child terms in TermSet::terms.
struct TermWitness {
    std::size_t rule = 0;
    std::vector<std::size_t> children;
};

struct TermSet {
    /// In discovery order: generation by generation, rules round-robin within one.
    std::vector<Term> terms;
    std::vector<TermWitness> witnesses;
    /// Derivation depth at which each term first appeared (0 for terminating rules).
    std::vector<std::size_t> generations;
    /// False for deleting grammars: terms reached only through over-budget
    /// intermediates are missing, so the set is a lower bound.
    bool complete = true;

    bool contains(const Term& t) const { return find(t).has_value(); }
    std::optional<std::size_t> find(const Term& t) const;

    /// Rebuilds the derivation recorded for terms[index] from the witnesses.
    DerivationTree witness_tree(std::size_t index, const Grammar& g) const;

    std::map<Term, std::size_t> index;
};

TermSet enumerate_terms(const Grammar& g, std::size_t max_total_len, const EnumerationOptions& opts = {});

/// Words w with S(w) derivable and |w| <= max_len.
std::set<Word> enumerate_language(const Grammar& g, std::size_t max_len, const EnumerationOptions& opts = {});

/// Words a1^n1 ... am^nm of L(p) with n1 + ... + nm <= max_len, by iterating exponent vectors.
std::set<Word> direct_language(const Preorder& p, std::size_t max_len, std::span<const Symbol> letters = {});

struct DiffReport {
    std::set<Word> only_in_grammar;
    std::set<Word> only_in_preorder;

    bool agree() const noexcept { return only_in_grammar.empty() && only_in_preorder.empty(); }
};

/// Compares L(g) and L(p) up to max_len. Grammar letters are matched to a1..am via letters_for().
DiffReport compare_languages(const Grammar& g, const Preorder& p, std::size_t max_len,
                             const EnumerationOptions& opts = {});

}  // namespace mcfg
