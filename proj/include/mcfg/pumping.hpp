#pragma once

// Subtree-swap experiments on derivation trees. A pump site is a pair of nested
// nodes carrying the same combiner rule (a rule with at least two RHS
// non-terminals). Replacing the outer subtree by the inner one pumps down;
// replacing the inner subtree by a copy of the outer one pumps up. Letter counts
// move by exactly the outer-minus-inner delta in both directions.

#include "mcfg/derivation.hpp"
#include "mcfg/grammar.hpp"
#include "mcfg/preorder.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace mcfg {

bool is_combiner(const ProductionRule& rule);
std::vector<ProductionRule> combiners(const Grammar& g);
/// Largest RHS length over all rules; 0 when every rule is terminating.
std::size_t branching_bound(const Grammar& g);
std::size_t combiner_count(const Grammar& g);

struct PumpSite {
    NodePath outer;
    NodePath inner;  // strictly extends outer
    ProductionRule rule;

    bool operator==(const PumpSite&) const = default;
};

/// All nested same-combiner pairs on a common root-to-leaf path. Outer nodes in
/// pre-order, and for each outer node its inner partners in pre-order.
std::vector<PumpSite> find_pump_sites(const DerivationTree& d);

/// Throws InputError unless both paths exist, inner strictly extends outer, and
/// both nodes carry the site's rule, which must be a combiner.
void check_site(const DerivationTree& d, const PumpSite& site);

/// Outer subtree replaced by the inner one.
DerivationTree pump_down(const DerivationTree& d, const PumpSite& site);
/// Inner subtree replaced by a copy of the outer one.
DerivationTree pump_up(const DerivationTree& d, const PumpSite& site);

struct PairDelta {
    int lower = 0;  // i with i <= j
    int upper = 0;  // j
    std::int64_t lower_delta = 0;
    std::int64_t upper_delta = 0;

    bool equal() const noexcept { return lower_delta == upper_delta; }
};

struct DeltaReport {
    /// |outer|_a - |inner|_a per letter of either subtree.
    std::map<Symbol, std::int64_t> deltas;
    LetterCounts original;
    LetterCounts pumped_down;
    LetterCounts pumped_up;
    /// pumped_down = original - delta and pumped_up = original + delta, letter by letter.
    bool down_arithmetic_holds = false;
    bool up_arithmetic_holds = false;
    /// One entry per comparable pair i <= j (i != j) when a preorder was given.
    std::vector<PairDelta> pairs;

    std::int64_t delta(const Symbol& letter) const;
};

/// `letters` names a1..am for the preorder's elements (canonical names by default).
DeltaReport delta_report(const DerivationTree& d, const PumpSite& site, const std::optional<Preorder>& p = std::nullopt,
                         std::span<const Symbol> letters = {});

struct SiteOutcome {
    PumpSite site;
    Word down_yield;
    Word up_yield;
    bool down_valid = false;
    bool up_valid = false;
    bool down_in_grammar = false;
    bool up_in_grammar = false;
    bool down_in_preorder_language = false;
    bool up_in_preorder_language = false;
    /// Components of the terms derived by the outer and inner subtrees.
    Term outer_term;
    Term inner_term;
    DeltaReport delta;
};

struct ExperimentReport {
    Word word;
    DerivationTree tree;
    std::size_t combiner_count = 0;
    std::size_t branching_bound = 0;
    std::vector<SiteOutcome> sites;

    /// Some pumped yield stays in L(g) but leaves L(p).
    bool leaves_preorder_language() const;
};

/// Parses w, finds every pump site, swaps both ways, and re-tests the pumped
/// yields against the grammar and the preorder language. Throws InputError when w
/// is rejected by g.
ExperimentReport pump_experiment(const Grammar& g, const Preorder& p, const Word& w);

}  // namespace mcfg
