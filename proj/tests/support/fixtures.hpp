#pragma once

// Shared grammars, generators and independent oracles for the unit and
// acceptance suites. Oracles here never call the code paths they check.

#include "mcfg/derivation.hpp"
#include "mcfg/enumeration.hpp"
#include "mcfg/grammar.hpp"
#include "mcfg/preorder.hpp"

#include <algorithm>
#include <functional>
#include <cstddef>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mcfg::testing {

inline PatternItem t(const std::string& letter) { return Terminal{letter}; }
inline PatternItem x(int child, int comp) { return Variable{child, comp}; }
inline NonTerminal nt(const std::string& name, int rank = 1) { return NonTerminal{name, rank}; }

inline Word word(std::initializer_list<const char*> letters) {
    Word w;
    for (const auto* l : letters) w.emplace_back(l);
    return w;
}

inline Word repeat(const std::string& letter, std::size_t n) { return Word(n, letter); }

/// S(x y) <- S(x), T(y);  T(a) <-;  S(a) <-
inline Grammar g_pump() {
    return make_grammar({{nt("S"), {{x(1, 1), x(2, 1)}}, {nt("S"), nt("T")}},
                         {nt("T"), {{t("a")}}, {}},
                         {nt("S"), {{t("a")}}, {}}},
                        "S");
}

inline const ProductionRule& g_pump_combiner() {
    static const ProductionRule r = g_pump().rules[0];
    return r;
}

/// Left-spine tree for a^n in g_pump: n-1 combiners over S(a) <-, each with a T(a) <- leaf.
inline DerivationTree g_pump_spine(std::size_t n) {
    const auto g = g_pump();
    DerivationTree d{g.rules[2], {}};
    for (std::size_t i = 1; i < n; ++i) d = DerivationTree{g.rules[0], {d, DerivationTree{g.rules[1], {}}}};
    return d;
}

/// Over-generating grammar for the chain on [3] with two combiners:
/// S(x y) <- P(x), C(y);  P(x y z) <- L1(x), P(y), L2(z);  P(_) <-;
/// C(a3 x) <- C(x);  C(_) <-;  L1(a1) <-;  L2(a2) <-.
/// Generates a1^n a2^n a3^k for all n, k.
inline Grammar overgenerating_l3() {
    return make_grammar({{nt("S"), {{x(1, 1), x(2, 1)}}, {nt("P"), nt("C")}},
                         {nt("P"), {{x(1, 1), x(2, 1), x(3, 1)}}, {nt("L1"), nt("P"), nt("L2")}},
                         {nt("P"), {{}}, {}},
                         {nt("C"), {{t("a3"), x(1, 1)}}, {nt("C")}},
                         {nt("C"), {{}}, {}},
                         {nt("L1"), {{t("a1")}}, {}},
                         {nt("L2"), {{t("a2")}}, {}}},
                        "S", Alphabet({"a1", "a2", "a3"}));
}

/// Membership in L(p) straight from the definition, on raw tokens "a<i>".
inline bool oracle_member(const Preorder& p, const Word& w) {
    const int m = p.size();
    std::vector<std::size_t> n(static_cast<std::size_t>(m) + 1, 0);
    int last = 0;
    for (const auto& tok : w) {
        if (tok.size() < 2 || tok[0] != 'a') return false;
        int i = std::stoi(tok.substr(1));
        if (i < 1 || i > m || i < last) return false;
        last = i;
        ++n[static_cast<std::size_t>(i)];
    }
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (p.leq(i, j) && n[static_cast<std::size_t>(i)] > n[static_cast<std::size_t>(j)]) return false;
    return true;
}

/// Every total preorder extending p with p's strict pairs kept strict, by filtering
/// all m*m boolean matrices.
inline std::set<std::vector<bool>> brute_force_totalisations(const Preorder& p) {
    const int m = p.size();
    const std::size_t cells = static_cast<std::size_t>(m * m);
    std::set<std::vector<bool>> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
        std::vector<bool> rel(cells);
        for (std::size_t c = 0; c < cells; ++c) rel[c] = (bits >> c) & 1u;
        auto at = [&](int i, int j) { return rel[static_cast<std::size_t>((i - 1) * m + (j - 1))]; };
        bool ok = true;
        for (int i = 1; i <= m && ok; ++i) ok = at(i, i);
        for (int i = 1; i <= m && ok; ++i)
            for (int j = 1; j <= m && ok; ++j) {
                if (!at(i, j) && !at(j, i)) ok = false;
                if (p.leq(i, j) && !at(i, j)) ok = false;
                if (p.leq(i, j) && !p.leq(j, i) && at(j, i)) ok = false;
                for (int k = 1; k <= m && ok; ++k)
                    if (at(i, j) && at(j, k) && !at(i, k)) ok = false;
            }
        if (ok) out.insert(rel);
    }
    return out;
}

inline std::vector<bool> matrix_of(const Preorder& p) {
    std::vector<bool> rel;
    for (int i = 1; i <= p.size(); ++i)
        for (int j = 1; j <= p.size(); ++j) rel.push_back(p.leq(i, j));
    return rel;
}

/// All words of length <= max_len over the letters.
inline std::vector<Word> all_words(const std::vector<Symbol>& letters, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t k = begin; k < end; ++k)
            for (const auto& l : letters) {
                Word w = out[k];
                w.push_back(l);
                out.push_back(std::move(w));
            }
        begin = end;
    }
    return out;
}

struct RandomGrammarOptions {
    std::size_t max_rules = 4;
    std::size_t max_letters = 3;
    bool normal_form = false;
};

/// Random valid non-deleting grammar over non-terminals S (rank 1), A and B (rank 1 or 2).
/// The first rule always has S on its left-hand side.
inline Grammar random_grammar(std::mt19937& rng, const RandomGrammarOptions& opts = {}) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::vector<Symbol> letters;
    const std::size_t nletters = pick(1, opts.max_letters);
    for (std::size_t i = 0; i < nletters; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
    const std::vector<NonTerminal> nts{nt("S", 1), nt("A", static_cast<int>(pick(1, 2))),
                                       nt("B", static_cast<int>(pick(1, 2)))};
    auto letter = [&] { return Terminal{letters[pick(0, letters.size() - 1)]}; };

    const std::size_t nrules = pick(2, opts.max_rules);
    std::vector<ProductionRule> rules;
    // At least one terminating and one non-terminating rule when room allows.
    const std::size_t terminating_slot = pick(0, nrules - 1);
    for (std::size_t r = 0; r < nrules; ++r) {
        ProductionRule rule;
        rule.lhs = r == 0 ? nts[0] : nts[pick(0, 2)];
        const bool terminating = r == terminating_slot || (r != 0 && pick(0, 2) == 0);
        rule.patterns.assign(static_cast<std::size_t>(rule.lhs.rank), {});
        if (terminating) {
            if (opts.normal_form) {
                rule.patterns[pick(0, rule.patterns.size() - 1)].push_back(letter());
            } else {
                for (auto& p : rule.patterns)
                    for (std::size_t k = pick(0, 2); k > 0; --k) p.push_back(letter());
            }
        } else {
            const std::size_t n = pick(1, 2);
            std::vector<PatternItem> vars;
            for (std::size_t i = 0; i < n; ++i) {
                rule.rhs.push_back(nts[pick(0, 2)]);
                for (int j = 1; j <= rule.rhs.back().rank; ++j) vars.push_back(Variable{static_cast<int>(i) + 1, j});
            }
            std::shuffle(vars.begin(), vars.end(), rng);
            // Distribute variables left to right; every pattern keeps an unconstrained split.
            for (auto& v : vars) rule.patterns[pick(0, rule.patterns.size() - 1)].push_back(v);
            if (!opts.normal_form)
                for (auto& p : rule.patterns)
                    if (pick(0, 2) == 0) p.insert(p.begin() + static_cast<std::ptrdiff_t>(pick(0, p.size())), letter());
        }
        rules.push_back(std::move(rule));
    }
    return make_grammar(std::move(rules), "S", Alphabet(letters));
}

/// Random grammars whose language has at least `min_words` words of length <= max_len.
inline Grammar random_productive_grammar(std::mt19937& rng, const RandomGrammarOptions& opts, std::size_t max_len,
                                         std::size_t min_words) {
    for (;;) {
        auto g = random_grammar(rng, opts);
        if (enumerate_language(g, max_len).size() >= min_words) return g;
    }
}

/// Witness trees for every derivable term within the budget.
inline std::vector<DerivationTree> witness_trees(const Grammar& g, std::size_t budget) {
    auto terms = enumerate_terms(g, budget);
    std::vector<DerivationTree> out;
    for (std::size_t i = 0; i < terms.terms.size(); ++i) out.push_back(terms.witness_tree(i, g));
    return out;
}

/// General letter bookkeeping: a node's counts equal the letters written into its
/// rule plus those of the child components it references.
inline bool letter_balance_holds(const DerivationTree& d) {
    LetterCounts expected;
    for (const auto& p : d.label.patterns)
        for (const auto& item : p)
            if (const auto* tm = std::get_if<Terminal>(&item)) expected.add(tm->letter);
    std::vector<Term> kids;
    for (const auto& c : d.children) kids.push_back(term_of(c));
    for (const auto& p : d.label.patterns)
        for (const auto& item : p)
            if (const auto* v = std::get_if<Variable>(&item))
                for (const auto& l : kids[static_cast<std::size_t>(v->child - 1)].components[static_cast<std::size_t>(v->component - 1)])
                    expected.add(l);
    if (!(expected == letter_counts(d))) return false;
    return std::all_of(d.children.begin(), d.children.end(), letter_balance_holds);
}

}  // namespace mcfg::testing

namespace mcfg::testing {

/// Naive saturation: apply every rule to every tuple of known terms until nothing
/// new appears within the budget. Exponential; only for tiny grammars.
inline std::set<Term> naive_saturation(const Grammar& g, std::size_t budget) {
    std::set<Term> known;
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<Term> snapshot(known.begin(), known.end());
        for (const auto& rule : g.rules) {
            std::vector<Term> kids;
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == rule.rhs.size()) {
                    Term out = apply_rule(rule, kids);
                    if (out.total_length() <= budget && known.insert(out).second) grew = true;
                    return;
                }
                for (const auto& tm : snapshot) {
                    if (tm.head != rule.rhs[i]) continue;
                    kids.push_back(tm);
                    rec(i + 1);
                    kids.pop_back();
                }
            };
            rec(0);
        }
    }
    return known;
}

}  // namespace mcfg::testing
