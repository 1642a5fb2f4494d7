#pragma once

// Preorders on [m] = {1, ..., m}, the languages
//   L(p) = { a1^n1 a2^n2 ... am^nm : i <= j in p implies n_i <= n_j },
// and the grammar construction that generates L(p) with rank ceil(m/2).
// Elements of [m] are 1-based throughout.

#include "mcfg/grammar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mcfg {

class Preorder {
public:
    /// Row-major m*m matrix, entry (i-1)*m + (j-1) means i <= j.
    /// Throws InputError unless the relation is reflexive and transitive.
    Preorder(int size, std::vector<bool> relation);

    /// Reflexive-transitive closure of the given pairs (i, j) meaning i <= j.
    static Preorder closure(int size, std::span<const std::pair<int, int>> pairs);
    /// Only the diagonal.
    static Preorder discrete(int size);
    /// m <= m-1 <= ... <= 1, whose language is a1^n1 ... am^nm with n1 >= ... >= nm.
    static Preorder chain(int size);

    int size() const noexcept { return size_; }
    bool leq(int i, int j) const;
    /// i <= j and j <= i.
    bool equivalent(int i, int j) const { return leq(i, j) && leq(j, i); }

    bool is_total() const;
    bool is_connected() const;
    /// Every pair of p also holds here.
    bool extends(const Preorder& p) const;

    /// All pairs (i, j) with i != j and i <= j, in row order.
    std::vector<std::pair<int, int>> strict_pairs() const;

    auto operator<=>(const Preorder&) const = default;

private:
    int size_;
    std::vector<bool> relation_;
};

struct ComparabilityGraph {
    int vertices = 0;
    /// Undirected edges {i, j} with i < j, sorted.
    std::vector<std::pair<int, int>> edges;
};

ComparabilityGraph comparability_graph(const Preorder& p);

/// All total preorders extending p that keep its strict pairs strict, sorted.
/// A total p has only itself. Generated from weak orders (ordered set partitions)
/// of [m], filtered by extension.
std::vector<Preorder> totalisations(const Preorder& p);

/// "a1", ..., "am".
Symbol canonical_letter(int i);
std::vector<Symbol> canonical_letters(int m);

/// Letters that play a1..am for a grammar over `alphabet`: the canonical names when
/// the alphabet only uses them, otherwise the alphabet in declared order if it has
/// exactly m letters. Throws InputError when neither applies.
std::vector<Symbol> letters_for(const Alphabet& alphabet, int m);

/// Exponents (n1, ..., nm) when w has block shape a1^n1 ... am^nm, else nullopt.
/// Throws InputError for letters outside `letters` (defaults to canonical names).
std::optional<std::vector<std::size_t>> block_exponents(const Word& w, int m,
                                                        std::span<const Symbol> letters = {});

/// w in L(p). Out-of-order letters fail the block shape.
bool member(const Preorder& p, const Word& w, std::span<const Symbol> letters = {});

/// Word a1^n1 ... am^nm for the given exponents.
Word block_word(std::span<const std::size_t> exponents, std::span<const Symbol> letters = {});

/// The rule rho_j of the construction for a total preorder on even [2k]:
/// A(y1 x1 y2, ..., y(2k-1) xk y(2k)) <- A(x1, ..., xk) with y_i = a_i iff j <= i.
ProductionRule rho_rule(const Preorder& p, int j, const std::string& a_name = "A");

/// Grammar generating L(p) with dimension ceil(m/2). Total preorders on even m use
/// non-terminals S and A; odd m pads with a fresh isolated letter that is then erased
/// from all patterns; non-total preorders get one disjoint copy per totalisation
/// behind a dispatching start symbol S0.
Grammar build_grammar(const Preorder& p);

/// Rule sequence, in application order on top of A(_, ..., _), that derives
/// A(a1^n1 a2^n2, ..., ) for a total preorder. Each step applies rho_j for the
/// smallest-index minimal j among the positions holding the current maximum.
/// Throws InputError if p is not total or the exponents violate p.
std::vector<ProductionRule> witness_derivation(const Preorder& p, std::span<const std::size_t> exponents);

/// The j indices of witness_derivation, in the same order.
std::vector<int> witness_indices(const Preorder& p, std::span<const std::size_t> exponents);

std::string to_string(const Preorder& p);

}  // namespace mcfg
