#pragma once

// Text formats.
//
// Grammar files hold one rule per line:
//
//     start: S                      # optional, defaults to the first rule's LHS
//     alphabet: a b c               # optional, defaults to letters in order of use
//     S($x $y) <- A($x, $y)
//     A(a $x, b $y) <- A($x, $y)
//     A(_, _) <-
//
// Bare tokens in patterns are terminals, `_` alone is the empty component, and
// `$name` refers to the RHS argument bound under that name. `$i.j` always means
// component j of child i. `#` comments run to the end of the line.
//
// Preorder files start with `m: <size>` followed by lines `i <= j`; the stored
// relation is the reflexive-transitive closure of the listed pairs.

#include "mcfg/grammar.hpp"
#include "mcfg/preorder.hpp"

#include <string>
#include <string_view>

namespace mcfg {

/// Throws ParseError with file, line and column.
Grammar parse_grammar(std::string_view text, const std::string& filename = "<grammar>");
std::string format_grammar(const Grammar& g);

Preorder parse_preorder(std::string_view text, const std::string& filename = "<preorder>");
std::string format_preorder(const Preorder& p);

/// Whitespace-separated letter tokens; an empty string or a lone `_` is the empty word.
Word parse_word(std::string_view text);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace mcfg
