#include "mcfg/preorder.hpp"

#include "mcfg/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace mcfg {

namespace {

void check_index(int i, int m) {
    if (i < 1 || i > m)
        throw InputError("index " + std::to_string(i) + " is outside [1, " + std::to_string(m) + "]");
}

std::vector<Symbol> resolve_letters(std::span<const Symbol> letters, int m) {
    if (letters.empty()) return canonical_letters(m);
    if (static_cast<int>(letters.size()) != m)
        throw InputError("expected " + std::to_string(m) + " letters, got " + std::to_string(letters.size()));
    return {letters.begin(), letters.end()};
}

}  // namespace

Preorder::Preorder(int size, std::vector<bool> relation) : size_(size), relation_(std::move(relation)) {
    if (size_ < 1) throw InputError("preorder size must be at least 1");
    if (relation_.size() != static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_))
        throw InputError("relation matrix has the wrong size");
    for (int i = 1; i <= size_; ++i)
        if (!leq(i, i)) throw InputError("relation is not reflexive at " + std::to_string(i));
    for (int i = 1; i <= size_; ++i)
        for (int j = 1; j <= size_; ++j)
            for (int k = 1; k <= size_; ++k)
                if (leq(i, j) && leq(j, k) && !leq(i, k))
                    throw InputError("relation is not transitive: " + std::to_string(i) + " <= " + std::to_string(j) +
                                     " <= " + std::to_string(k));
}

Preorder Preorder::closure(int size, std::span<const std::pair<int, int>> pairs) {
    if (size < 1) throw InputError("preorder size must be at least 1");
    const auto m = static_cast<std::size_t>(size);
    std::vector<bool> rel(m * m, false);
    for (std::size_t i = 0; i < m; ++i) rel[i * m + i] = true;
    for (auto [i, j] : pairs) {
        check_index(i, size);
        check_index(j, size);
        rel[static_cast<std::size_t>(i - 1) * m + static_cast<std::size_t>(j - 1)] = true;
    }
    // Warshall
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i)
            if (rel[i * m + k])
                for (std::size_t j = 0; j < m; ++j)
                    if (rel[k * m + j]) rel[i * m + j] = true;
    return Preorder(size, std::move(rel));
}

Preorder Preorder::discrete(int size) { return closure(size, {}); }

Preorder Preorder::chain(int size) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = size; i > 1; --i) pairs.emplace_back(i, i - 1);
    return closure(size, pairs);
}

bool Preorder::leq(int i, int j) const {
    check_index(i, size_);
    check_index(j, size_);
    return relation_[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(j - 1)];
}

bool Preorder::is_total() const {
    for (int i = 1; i <= size_; ++i)
        for (int j = i + 1; j <= size_; ++j)
            if (!leq(i, j) && !leq(j, i)) return false;
    return true;
}

bool Preorder::is_connected() const {
    std::vector<bool> seen(static_cast<std::size_t>(size_) + 1, false);
    std::vector<int> stack{1};
    seen[1] = true;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v = 1; v <= size_; ++v) {
            if (seen[v] || !(leq(u, v) || leq(v, u))) continue;
            seen[v] = true;
            ++reached;
            stack.push_back(v);
        }
    }
    return reached == size_;
}

bool Preorder::extends(const Preorder& p) const {
    if (p.size_ != size_) return false;
    for (std::size_t k = 0; k < relation_.size(); ++k)
        if (p.relation_[k] && !relation_[k]) return false;
    return true;
}

std::vector<std::pair<int, int>> Preorder::strict_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= size_; ++i)
        for (int j = 1; j <= size_; ++j)
            if (i != j && leq(i, j)) out.emplace_back(i, j);
    return out;
}

ComparabilityGraph comparability_graph(const Preorder& p) {
    ComparabilityGraph g{p.size(), {}};
    for (int i = 1; i <= p.size(); ++i)
        for (int j = i + 1; j <= p.size(); ++j)
            if (p.leq(i, j) || p.leq(j, i)) g.edges.emplace_back(i, j);
    return g;
}

std::vector<Preorder> totalisations(const Preorder& p) {
    const int m = p.size();
    std::vector<int> level(static_cast<std::size_t>(m) + 1, -1);
    std::vector<Preorder> out;

    std::function<void(int)> assign = [&](int i) {
        if (i > m) {
            // Levels must form {0, ..., b-1}: an ordered partition of [m].
            std::vector<bool> used(static_cast<std::size_t>(m), false);
            for (int e = 1; e <= m; ++e) used[static_cast<std::size_t>(level[e])] = true;
            auto first_gap = std::find(used.begin(), used.end(), false);
            if (std::find(first_gap, used.end(), true) != used.end()) return;
            std::vector<bool> rel(static_cast<std::size_t>(m * m));
            for (int a = 1; a <= m; ++a)
                for (int b = 1; b <= m; ++b)
                    rel[static_cast<std::size_t>((a - 1) * m + (b - 1))] = level[a] <= level[b];
            out.emplace_back(m, std::move(rel));
            return;
        }
        for (int l = 0; l < m; ++l) {
            level[i] = l;
            bool ok = true;
            for (int e = 1; e < i && ok; ++e) {
                // Equivalent stays equivalent, strict stays strict.
                const bool ei = p.leq(e, i), ie = p.leq(i, e);
                if (ei && ie && level[e] != l) ok = false;
                if (ei && !ie && level[e] >= l) ok = false;
                if (ie && !ei && l >= level[e]) ok = false;
            }
            if (ok) assign(i + 1);
        }
        level[i] = -1;
    };
    assign(1);
    std::sort(out.begin(), out.end());
    return out;
}

Symbol canonical_letter(int i) { return "a" + std::to_string(i); }

std::vector<Symbol> canonical_letters(int m) {
    std::vector<Symbol> out;
    for (int i = 1; i <= m; ++i) out.push_back(canonical_letter(i));
    return out;
}

std::vector<Symbol> letters_for(const Alphabet& alphabet, int m) {
    auto canon = canonical_letters(m);
    bool all_canonical = std::all_of(alphabet.letters().begin(), alphabet.letters().end(), [&](const Symbol& l) {
        return std::find(canon.begin(), canon.end(), l) != canon.end();
    });
    if (all_canonical) return canon;
    if (static_cast<int>(alphabet.size()) == m) return alphabet.letters();
    throw InputError("cannot map an alphabet of " + std::to_string(alphabet.size()) + " letters onto a1..a" +
                     std::to_string(m));
}

std::optional<std::vector<std::size_t>> block_exponents(const Word& w, int m, std::span<const Symbol> letters) {
    auto names = resolve_letters(letters, m);
    std::vector<std::size_t> n(static_cast<std::size_t>(m), 0);
    std::size_t current = 0;
    bool shaped = true;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        auto it = std::find(names.begin(), names.end(), w[pos]);
        if (it == names.end())
            throw InputError("letter '" + w[pos] + "' at position " + std::to_string(pos) + " is not one of a1..a" +
                             std::to_string(m));
        auto idx = static_cast<std::size_t>(it - names.begin());
        if (idx < current) shaped = false;
        current = std::max(current, idx);
        ++n[idx];
    }
    if (!shaped) return std::nullopt;
    return n;
}

bool member(const Preorder& p, const Word& w, std::span<const Symbol> letters) {
    auto n = block_exponents(w, p.size(), letters);
    if (!n) return false;
    for (int i = 1; i <= p.size(); ++i)
        for (int j = 1; j <= p.size(); ++j)
            if (p.leq(i, j) && (*n)[static_cast<std::size_t>(i - 1)] > (*n)[static_cast<std::size_t>(j - 1)])
                return false;
    return true;
}

Word block_word(std::span<const std::size_t> exponents, std::span<const Symbol> letters) {
    auto names = resolve_letters(letters, static_cast<int>(exponents.size()));
    Word w;
    for (std::size_t i = 0; i < exponents.size(); ++i) w.insert(w.end(), exponents[i], names[i]);
    return w;
}

ProductionRule rho_rule(const Preorder& p, int j, const std::string& a_name) {
    const int m = p.size();
    check_index(j, m);
    const int k = (m + 1) / 2;
    NonTerminal a{a_name, k};
    ProductionRule r{a, {}, {a}};
    auto y = [&](int i, PatternString& out) {
        // i = m + 1 only for odd m: the padded letter, isolated and erased.
        if (i <= m && p.leq(j, i)) out.push_back(Terminal{canonical_letter(i)});
    };
    for (int l = 1; l <= k; ++l) {
        PatternString pat;
        y(2 * l - 1, pat);
        pat.push_back(Variable{1, l});
        y(2 * l, pat);
        r.patterns.push_back(std::move(pat));
    }
    return r;
}

namespace {

std::vector<ProductionRule> total_rules(const Preorder& p, const std::string& s_name, const std::string& a_name) {
    const int m = p.size();
    const int k = (m + 1) / 2;
    NonTerminal s{s_name, 1};
    NonTerminal a{a_name, k};
    std::vector<ProductionRule> rules;

    PatternString concat;
    for (int l = 1; l <= k; ++l) concat.push_back(Variable{1, l});
    rules.push_back({s, {concat}, {a}});
    rules.push_back({a, std::vector<PatternString>(static_cast<std::size_t>(k)), {}});
    for (int j = 1; j <= m; ++j) rules.push_back(rho_rule(p, j, a_name));
    return rules;
}

}  // namespace

Grammar build_grammar(const Preorder& p) {
    const int m = p.size();
    Alphabet alphabet(canonical_letters(m));
    if (p.is_total()) return make_grammar(total_rules(p, "S", "A"), "S", alphabet);

    auto totals = totalisations(p);
    NonTerminal s0{"S0", 1};
    std::vector<ProductionRule> rules;
    for (std::size_t t = 0; t < totals.size(); ++t) {
        NonTerminal st{"S" + std::to_string(t + 1), 1};
        rules.push_back({s0, {{Variable{1, 1}}}, {st}});
    }
    for (std::size_t t = 0; t < totals.size(); ++t) {
        auto copy = total_rules(totals[t], "S" + std::to_string(t + 1), "A" + std::to_string(t + 1));
        rules.insert(rules.end(), copy.begin(), copy.end());
    }
    return make_grammar(std::move(rules), "S0", alphabet);
}

std::vector<int> witness_indices(const Preorder& p, std::span<const std::size_t> exponents) {
    const int m = p.size();
    if (!p.is_total()) throw InputError("witness derivations need a total preorder");
    if (static_cast<int>(exponents.size()) != m)
        throw InputError("expected " + std::to_string(m) + " exponents, got " + std::to_string(exponents.size()));
    std::vector<std::size_t> n(exponents.begin(), exponents.end());
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            if (p.leq(i, j) && n[static_cast<std::size_t>(i - 1)] > n[static_cast<std::size_t>(j - 1)])
                throw InputError("exponents violate " + std::to_string(i) + " <= " + std::to_string(j));

    std::vector<int> steps;
    for (;;) {
        std::size_t top = *std::max_element(n.begin(), n.end());
        if (top == 0) break;
        std::vector<int> at_top;
        for (int l = 1; l <= m; ++l)
            if (n[static_cast<std::size_t>(l - 1)] == top) at_top.push_back(l);
        int chosen = at_top.front();
        for (int cand : at_top) {
            bool minimal = std::all_of(at_top.begin(), at_top.end(),
                                       [&](int other) { return !p.leq(other, cand) || p.leq(cand, other); });
            if (minimal) {
                chosen = cand;
                break;
            }
        }
        steps.push_back(chosen);
        for (int l : at_top) n[static_cast<std::size_t>(l - 1)] = top - 1;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

std::vector<ProductionRule> witness_derivation(const Preorder& p, std::span<const std::size_t> exponents) {
    std::vector<ProductionRule> out;
    for (int j : witness_indices(p, exponents)) out.push_back(rho_rule(p, j));
    return out;
}

std::string to_string(const Preorder& p) {
    std::ostringstream os;
    os << "m: " << p.size() << '\n';
    for (auto [i, j] : p.strict_pairs()) os << i << " <= " << j << '\n';
    return os.str();
}

}  // namespace mcfg
