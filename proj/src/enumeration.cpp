#include "mcfg/enumeration.hpp"

#include "mcfg/error.hpp"

#include <algorithm>
#include <functional>

namespace mcfg {

std::optional<std::size_t> TermSet::find(const Term& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

DerivationTree TermSet::witness_tree(std::size_t i, const Grammar& g) const {
    const auto& w = witnesses.at(i);
    DerivationTree d{g.rules.at(w.rule), {}};
    for (auto c : w.children) d.children.push_back(witness_tree(c, g));
    return d;
}

namespace {

// Letters a child term contributes to the rule's output: lengths of the
// components its variables actually reference.
std::vector<std::vector<int>> used_components(const ProductionRule& rule) {
    std::vector<std::vector<int>> used(rule.rhs.size());
    for (const auto& p : rule.patterns)
        for (const auto& item : p)
            if (const auto* v = std::get_if<Variable>(&item))
                if (v->child >= 1 && v->child <= static_cast<int>(rule.rhs.size()))
                    used[static_cast<std::size_t>(v->child - 1)].push_back(v->component - 1);
    return used;
}

std::size_t contribution(const Term& t, const std::vector<int>& comps) {
    std::size_t n = 0;
    for (int c : comps)
        if (c >= 0 && c < static_cast<int>(t.components.size())) n += t.components[static_cast<std::size_t>(c)].size();
    return n;
}

}  // namespace

TermSet enumerate_terms(const Grammar& g, std::size_t budget, const EnumerationOptions& opts) {
    TermSet out;
    out.complete = is_non_deleting(g);
    std::map<NonTerminal, std::vector<std::size_t>> by_head;

    auto add = [&](Term t, TermWitness w, std::size_t gen) {
        if (t.total_length() > budget) return;
        auto [it, inserted] = out.index.try_emplace(t, out.terms.size());
        if (!inserted) return;
        if (out.terms.size() >= opts.max_terms)
            throw LimitExceeded("enumeration exceeded " + std::to_string(opts.max_terms) + " terms");
        by_head[t.head].push_back(out.terms.size());
        out.terms.push_back(std::move(t));
        out.witnesses.push_back(std::move(w));
        out.generations.push_back(gen);
    };

    for (std::size_t ri = 0; ri < g.rules.size(); ++ri)
        if (g.rules[ri].terminating()) add(apply_rule(g.rules[ri], {}), {ri, {}}, 0);

    std::vector<std::vector<std::vector<int>>> used;
    std::vector<std::size_t> fixed_letters;
    for (const auto& r : g.rules) {
        used.push_back(used_components(r));
        fixed_letters.push_back(pattern_letter_count(r));
    }

    std::size_t prev_begin = 0;
    std::size_t prev_end = out.terms.size();
    for (std::size_t gen = 1; prev_begin < prev_end; ++gen) {
        for (std::size_t ri = 0; ri < g.rules.size(); ++ri) {
            const auto& rule = g.rules[ri];
            if (rule.terminating() || fixed_letters[ri] > budget) continue;
            const std::size_t n = rule.rhs.size();
            const std::size_t room = budget - fixed_letters[ri];
            std::vector<std::size_t> chosen(n);

            // Semi-naive: the first child drawn from the previous generation sits at
            // `pivot`; earlier children are older, later ones anything before prev_end.
            for (std::size_t pivot = 0; pivot < n; ++pivot) {
                std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t c, std::size_t acc) {
                    if (c == n) {
                        std::vector<Term> kids;
                        kids.reserve(n);
                        for (auto idx : chosen) kids.push_back(out.terms[idx]);
                        add(apply_rule(rule, kids), {ri, chosen}, gen);
                        return;
                    }
                    auto it = by_head.find(rule.rhs[c]);
                    if (it == by_head.end()) return;
                    std::size_t lo_idx = c == pivot ? prev_begin : 0;
                    std::size_t hi_idx = c < pivot ? prev_begin : prev_end;
                    const auto& list = it->second;
                    auto lo = static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), lo_idx) - list.begin());
                    auto hi = static_cast<std::size_t>(std::lower_bound(list.begin(), list.end(), hi_idx) - list.begin());
                    for (std::size_t k = lo; k < hi; ++k) {
                        // `list` may grow while we recurse; positions below hi stay valid.
                        const std::size_t idx = by_head[rule.rhs[c]][k];
                        std::size_t cost = contribution(out.terms[idx], used[ri][c]);
                        if (acc + cost > room) continue;
                        chosen[c] = idx;
                        pick(c + 1, acc + cost);
                    }
                };
                pick(0, 0);
            }
        }
        prev_begin = prev_end;
        prev_end = out.terms.size();
    }
    return out;
}

std::set<Word> enumerate_language(const Grammar& g, std::size_t max_len, const EnumerationOptions& opts) {
    auto terms = enumerate_terms(g, max_len, opts);
    std::set<Word> words;
    for (const auto& t : terms.terms)
        if (t.head == g.start && t.components.size() == 1) words.insert(t.components.front());
    return words;
}

std::set<Word> direct_language(const Preorder& p, std::size_t max_len, std::span<const Symbol> letters) {
    const int m = p.size();
    std::vector<std::size_t> n(static_cast<std::size_t>(m), 0);
    std::set<Word> out;
    std::function<void(int, std::size_t)> fill = [&](int i, std::size_t left) {
        if (i > m) {
            for (int a = 1; a <= m; ++a)
                for (int b = 1; b <= m; ++b)
                    if (p.leq(a, b) && n[static_cast<std::size_t>(a - 1)] > n[static_cast<std::size_t>(b - 1)]) return;
            out.insert(block_word(n, letters));
            return;
        }
        for (std::size_t e = 0; e <= left; ++e) {
            n[static_cast<std::size_t>(i - 1)] = e;
            fill(i + 1, left - e);
        }
        n[static_cast<std::size_t>(i - 1)] = 0;
    };
    fill(1, max_len);
    return out;
}

DiffReport compare_languages(const Grammar& g, const Preorder& p, std::size_t max_len,
                             const EnumerationOptions& opts) {
    auto letters = letters_for(g.alphabet, p.size());
    auto generated = enumerate_language(g, max_len, opts);
    auto expected = direct_language(p, max_len, letters);
    DiffReport diff;
    std::set_difference(generated.begin(), generated.end(), expected.begin(), expected.end(),
                        std::inserter(diff.only_in_grammar, diff.only_in_grammar.end()));
    std::set_difference(expected.begin(), expected.end(), generated.begin(), generated.end(),
                        std::inserter(diff.only_in_preorder, diff.only_in_preorder.end()));
    return diff;
}

}  // namespace mcfg
