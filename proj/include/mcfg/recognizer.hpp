#pragma once

// Membership for non-deleting MCFGs by bottom-up deduction over span tuples.
//
// An item pairs a non-terminal of rank r with r spans [start, end) of the input
// word; it stands for the derivable term whose components are those substrings.
// Empty components are zero-length spans, anchored at every position. Because
// every variable of a non-deleting rule reaches the final word exactly once,
// each component of each node of a derivation of S(w) is a substring of w, which
// makes the item calculus complete; soundness holds for any grammar.

#include "mcfg/derivation.hpp"
#include "mcfg/grammar.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>

namespace mcfg {

struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    auto operator<=>(const Span&) const = default;
};

struct RecognitionResult {
    bool accepted = false;
    /// Number of distinct items in the saturated chart.
    std::size_t item_count = 0;
    /// First derivation found under the FIFO agenda order, present iff accepted.
    std::optional<DerivationTree> tree;
};

class Recognizer {
public:
    /// Throws InputError for an invalid grammar and UnsupportedGrammar for a deleting one.
    explicit Recognizer(Grammar g);
    ~Recognizer();
    Recognizer(Recognizer&&) noexcept;
    Recognizer& operator=(Recognizer&&) noexcept;

    /// Saturates a private chart for w. Throws InputError on letters outside the alphabet.
    RecognitionResult run(const Word& w) const;

    const Grammar& grammar() const noexcept { return grammar_; }

private:
    struct Compiled;
    Grammar grammar_;
    std::unique_ptr<Compiled> compiled_;
};

bool recognize(const Grammar& g, const Word& w);

/// One derivation tree of S(w), or nullopt when w is rejected.
std::optional<DerivationTree> parse(const Grammar& g, const Word& w);

}  // namespace mcfg
