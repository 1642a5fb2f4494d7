#include "mcfg/derivation.hpp"

#include "mcfg/error.hpp"

#include <algorithm>
#include <sstream>

namespace mcfg {

std::string to_string(const NodePath& path) {
    std::string s = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(path[i]);
    }
    return s + "]";
}

LetterCounts::LetterCounts(const Term& term) {
    for (const auto& c : term.components)
        for (const auto& l : c) add(l);
}

std::uint64_t LetterCounts::operator[](const Symbol& letter) const {
    auto it = counts_.find(letter);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t LetterCounts::total() const noexcept {
    std::uint64_t t = 0;
    for (const auto& [_, n] : counts_) t += n;
    return t;
}

void LetterCounts::add(const Symbol& letter, std::uint64_t n) {
    if (n) counts_[letter] += n;
}

LetterCounts& LetterCounts::operator+=(const LetterCounts& other) {
    for (const auto& [l, n] : other.counts_) add(l, n);
    return *this;
}

bool LetterCounts::operator==(const LetterCounts& other) const { return counts_ == other.counts_; }

namespace {

Term term_at(const DerivationTree& d, NodePath& path) {
    if (d.children.size() != d.label.rhs.size())
        throw StructuralError(to_string(path), "rule " + to_string(d.label) + " needs " +
                                                   std::to_string(d.label.rhs.size()) + " children, node has " +
                                                   std::to_string(d.children.size()));
    std::vector<Term> kids;
    kids.reserve(d.children.size());
    for (std::size_t i = 0; i < d.children.size(); ++i) {
        path.push_back(i);
        if (d.children[i].label.lhs != d.label.rhs[i])
            throw StructuralError(to_string(path), "child produces " + d.children[i].label.lhs.name +
                                                       ", parent expects " + d.label.rhs[i].name);
        kids.push_back(term_at(d.children[i], path));
        path.pop_back();
    }
    try {
        return apply_rule(d.label, kids);
    } catch (const StructuralError&) {
        throw;
    } catch (const Error& e) {
        throw StructuralError(to_string(path), e.what());
    }
}

void check_node(const DerivationTree& d, const Grammar& g, NodePath& path, TreeCheck& out) {
    auto fail = [&](const std::string& why) {
        out.valid = false;
        out.violations.push_back("node " + to_string(path) + ": " + why);
    };
    if (std::find(g.rules.begin(), g.rules.end(), d.label) == g.rules.end())
        fail("rule " + to_string(d.label) + " is not a rule of the grammar");
    if (d.children.size() != d.label.rhs.size())
        fail("has " + std::to_string(d.children.size()) + " children, rule expects " +
             std::to_string(d.label.rhs.size()));
    for (std::size_t i = 0; i < d.children.size(); ++i) {
        if (i < d.label.rhs.size() && d.children[i].label.lhs != d.label.rhs[i])
            fail("child " + std::to_string(i) + " produces " + d.children[i].label.lhs.name + ", rule expects " +
                 d.label.rhs[i].name);
        path.push_back(i);
        check_node(d.children[i], g, path, out);
        path.pop_back();
    }
}

void collect_paths(const DerivationTree& d, NodePath& path, std::vector<NodePath>& out) {
    out.push_back(path);
    for (std::size_t i = 0; i < d.children.size(); ++i) {
        path.push_back(i);
        collect_paths(d.children[i], path, out);
        path.pop_back();
    }
}

LetterCounts identity_walk(const DerivationTree& d, NodePath& path, std::vector<NodePath>& failures) {
    LetterCounts here = LetterCounts(term_of(d));
    if (d.label.terminating()) {
        if (here.total() != 1) failures.push_back(path);
        return here;
    }
    LetterCounts sum;
    for (std::size_t i = 0; i < d.children.size(); ++i) {
        path.push_back(i);
        sum += identity_walk(d.children[i], path, failures);
        path.pop_back();
    }
    if (!(sum == here)) failures.push_back(path);
    return here;
}

void render(const DerivationTree& d, std::size_t depth, std::ostringstream& os) {
    os << std::string(depth * 2, ' ') << to_string(d.label) << "  =>  " << to_string(term_of(d)) << '\n';
    for (const auto& c : d.children) render(c, depth + 1, os);
}

}  // namespace

Term term_of(const DerivationTree& d) {
    NodePath path;
    return term_at(d, path);
}

Word yield(const DerivationTree& d) {
    Word w;
    for (auto& c : term_of(d).components) w.insert(w.end(), c.begin(), c.end());
    return w;
}

LetterCounts letter_counts(const DerivationTree& d) { return LetterCounts(term_of(d)); }

TreeCheck validate_tree(const DerivationTree& d, const Grammar& g) {
    TreeCheck out;
    NodePath path;
    check_node(d, g, path, out);
    return out;
}

const DerivationTree& subtree_at(const DerivationTree& d, const NodePath& path) {
    const DerivationTree* node = &d;
    for (std::size_t depth = 0; depth < path.size(); ++depth) {
        if (path[depth] >= node->children.size())
            throw PathError("path " + to_string(path) + " leaves the tree at depth " + std::to_string(depth));
        node = &node->children[path[depth]];
    }
    return *node;
}

std::vector<NodePath> node_paths(const DerivationTree& d) {
    std::vector<NodePath> out;
    NodePath path;
    collect_paths(d, path, out);
    return out;
}

std::size_t node_count(const DerivationTree& d) {
    std::size_t n = 1;
    for (const auto& c : d.children) n += node_count(c);
    return n;
}

DerivationTree substitute_subtree(const DerivationTree& d, const NodePath& at, const DerivationTree& replacement,
                                  LabelMatch match) {
    const DerivationTree& target = subtree_at(d, at);
    bool ok = match == LabelMatch::same_rule ? target.label == replacement.label
                                             : target.label.lhs == replacement.label.lhs;
    if (!ok)
        throw LabelMismatch("node " + to_string(at) + " is labelled " + to_string(target.label) +
                            ", replacement root is labelled " + to_string(replacement.label));
    // Copy the replacement first: it may alias a subtree of d.
    DerivationTree inserted = replacement;
    DerivationTree out = d;
    DerivationTree* node = &out;
    for (auto idx : at) node = &node->children[idx];
    *node = std::move(inserted);
    return out;
}

std::vector<NodePath> count_identity_failures(const DerivationTree& d) {
    std::vector<NodePath> failures;
    NodePath path;
    identity_walk(d, path, failures);
    return failures;
}

std::string render_tree(const DerivationTree& d) {
    std::ostringstream os;
    render(d, 0, os);
    return os.str();
}

std::string to_string(const DerivationTree& d) {
    std::string s = "[" + to_string(d.label) + "]";
    if (d.children.empty()) return s;
    s += " (";
    for (const auto& c : d.children) s += " " + to_string(c);
    return s + " )";
}

}  // namespace mcfg
