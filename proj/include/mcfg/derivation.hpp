#pragma once

#include "mcfg/grammar.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mcfg {

/// Ordered rooted tree labelled with production rules. Plain value: copies are deep.
struct DerivationTree {
    ProductionRule label;
    std::vector<DerivationTree> children;

    bool operator==(const DerivationTree&) const = default;
};

/// Child indices (0-based) from the root; the empty path is the root itself.
using NodePath = std::vector<std::size_t>;

std::string to_string(const NodePath& path);

/// Letter multiplicities of a term, |D|_i per letter, with |D| as total().
class LetterCounts {
public:
    LetterCounts() = default;
    explicit LetterCounts(const Term& term);

    std::uint64_t operator[](const Symbol& letter) const;
    std::uint64_t total() const noexcept;
    const std::map<Symbol, std::uint64_t>& counts() const noexcept { return counts_; }

    void add(const Symbol& letter, std::uint64_t n = 1);
    LetterCounts& operator+=(const LetterCounts& other);

    /// Zero entries are insignificant: {a:0} equals {}.
    bool operator==(const LetterCounts& other) const;

private:
    std::map<Symbol, std::uint64_t> counts_;
};

/// Replays every rule bottom-up. Throws StructuralError naming the first bad node.
Term term_of(const DerivationTree& d);

/// Concatenation of the root term's components; for a start-symbol root this is w(D).
Word yield(const DerivationTree& d);

LetterCounts letter_counts(const DerivationTree& d);

struct TreeCheck {
    bool valid = true;
    std::vector<std::string> violations;
};

/// Every label is a rule of g, child counts match, and each child's root rule
/// produces the non-terminal the parent expects at that position.
TreeCheck validate_tree(const DerivationTree& d, const Grammar& g);

/// Throws PathError when the path leaves the tree.
const DerivationTree& subtree_at(const DerivationTree& d, const NodePath& path);

/// Every node path in pre-order (root first, children left to right).
std::vector<NodePath> node_paths(const DerivationTree& d);

std::size_t node_count(const DerivationTree& d);

enum class LabelMatch {
    /// The replacement's root rule must equal the replaced node's rule.
    same_rule,
    /// Only the left-hand non-terminals need to agree.
    same_lhs,
};

/// Returns a copy of d with the subtree at `at` replaced. Inputs are untouched.
/// Throws PathError for a bad path and LabelMismatch when the labels disagree.
DerivationTree substitute_subtree(const DerivationTree& d, const NodePath& at, const DerivationTree& replacement,
                                  LabelMatch match = LabelMatch::same_rule);

/// Nodes where letter counts break the normal-form identities: a non-terminating
/// node's counts must equal the sum over its children, a terminating node must
/// carry exactly one letter. Empty result means both identities hold everywhere.
std::vector<NodePath> count_identity_failures(const DerivationTree& d);

/// Multi-line indented rendering, one node per line: `rule  =>  term`.
std::string render_tree(const DerivationTree& d);

/// Single-line bracketed form: `[rule] ( [child] ... )`.
std::string to_string(const DerivationTree& d);

}  // namespace mcfg
