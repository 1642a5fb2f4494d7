#include "mcfg/pumping.hpp"

#include "mcfg/error.hpp"
#include "mcfg/recognizer.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace mcfg {

bool is_combiner(const ProductionRule& rule) { return rule.rhs.size() >= 2; }

std::vector<ProductionRule> combiners(const Grammar& g) {
    std::vector<ProductionRule> out;
    std::copy_if(g.rules.begin(), g.rules.end(), std::back_inserter(out), is_combiner);
    return out;
}

std::size_t branching_bound(const Grammar& g) {
    std::size_t k = 0;
    for (const auto& r : g.rules) k = std::max(k, r.rhs.size());
    return k;
}

std::size_t combiner_count(const Grammar& g) {
    return static_cast<std::size_t>(std::count_if(g.rules.begin(), g.rules.end(), is_combiner));
}

namespace {

void scan_inner(const DerivationTree& node, NodePath& path, const NodePath& outer, const ProductionRule& rule,
                std::vector<PumpSite>& out) {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        if (node.children[i].label == rule) out.push_back({outer, path, rule});
        scan_inner(node.children[i], path, outer, rule, out);
        path.pop_back();
    }
}

void scan_outer(const DerivationTree& node, NodePath& path, std::vector<PumpSite>& out) {
    if (is_combiner(node.label)) {
        NodePath inner = path;
        scan_inner(node, inner, path, node.label, out);
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        scan_outer(node.children[i], path, out);
        path.pop_back();
    }
}

}  // namespace

std::vector<PumpSite> find_pump_sites(const DerivationTree& d) {
    std::vector<PumpSite> out;
    NodePath path;
    scan_outer(d, path, out);
    return out;
}

void check_site(const DerivationTree& d, const PumpSite& site) {
    if (!is_combiner(site.rule)) throw InputError("invalid site: rule " + to_string(site.rule) + " is not a combiner");
    if (site.inner.size() <= site.outer.size() ||
        !std::equal(site.outer.begin(), site.outer.end(), site.inner.begin()))
        throw InputError("invalid site: " + to_string(site.inner) + " does not strictly extend " +
                         to_string(site.outer));
    try {
        if (subtree_at(d, site.outer).label != site.rule || subtree_at(d, site.inner).label != site.rule)
            throw InputError("invalid site: nodes are not labelled with " + to_string(site.rule));
    } catch (const PathError& e) {
        throw InputError(std::string("invalid site: ") + e.what());
    }
}

DerivationTree pump_down(const DerivationTree& d, const PumpSite& site) {
    check_site(d, site);
    return substitute_subtree(d, site.outer, subtree_at(d, site.inner));
}

DerivationTree pump_up(const DerivationTree& d, const PumpSite& site) {
    check_site(d, site);
    DerivationTree outer_copy = subtree_at(d, site.outer);
    return substitute_subtree(d, site.inner, outer_copy);
}

std::int64_t DeltaReport::delta(const Symbol& letter) const {
    auto it = deltas.find(letter);
    return it == deltas.end() ? 0 : it->second;
}

DeltaReport delta_report(const DerivationTree& d, const PumpSite& site, const std::optional<Preorder>& p,
                         std::span<const Symbol> letters) {
    check_site(d, site);
    DeltaReport r;
    const auto outer = letter_counts(subtree_at(d, site.outer));
    const auto inner = letter_counts(subtree_at(d, site.inner));
    r.original = letter_counts(d);
    r.pumped_down = letter_counts(pump_down(d, site));
    r.pumped_up = letter_counts(pump_up(d, site));

    std::set<Symbol> all;
    const std::array<const LetterCounts*, 5> sources{&outer, &inner, &r.original, &r.pumped_down, &r.pumped_up};
    for (const auto* c : sources)
        for (const auto& [l, _] : c->counts()) all.insert(l);
    for (const auto& l : all) {
        auto delta = static_cast<std::int64_t>(outer[l]) - static_cast<std::int64_t>(inner[l]);
        if (outer[l] || inner[l]) r.deltas[l] = delta;
    }

    r.down_arithmetic_holds = r.up_arithmetic_holds = true;
    for (const auto& l : all) {
        const auto base = static_cast<std::int64_t>(r.original[l]);
        const auto delta = r.delta(l);
        if (static_cast<std::int64_t>(r.pumped_down[l]) != base - delta) r.down_arithmetic_holds = false;
        if (static_cast<std::int64_t>(r.pumped_up[l]) != base + delta) r.up_arithmetic_holds = false;
    }

    if (p) {
        std::vector<Symbol> names =
            letters.empty() ? canonical_letters(p->size()) : std::vector<Symbol>(letters.begin(), letters.end());
        if (static_cast<int>(names.size()) != p->size())
            throw InputError("expected " + std::to_string(p->size()) + " letter names");
        for (auto [i, j] : p->strict_pairs()) {
            r.pairs.push_back({i, j, r.delta(names[static_cast<std::size_t>(i - 1)]),
                               r.delta(names[static_cast<std::size_t>(j - 1)])});
        }
    }
    return r;
}

bool ExperimentReport::leaves_preorder_language() const {
    return std::any_of(sites.begin(), sites.end(), [](const SiteOutcome& s) {
        return !s.down_in_preorder_language || !s.up_in_preorder_language;
    });
}

ExperimentReport pump_experiment(const Grammar& g, const Preorder& p, const Word& w) {
    Recognizer recognizer(g);
    auto parsed = recognizer.run(w);
    if (!parsed.accepted) throw InputError("word '" + to_string(w) + "' is not generated by the grammar");

    const auto letters = letters_for(g.alphabet, p.size());
    auto in_preorder_language = [&](const Word& x) {
        try {
            return member(p, x, letters);
        } catch (const InputError&) {
            return false;
        }
    };

    ExperimentReport report;
    report.word = w;
    report.tree = *parsed.tree;
    report.combiner_count = combiner_count(g);
    report.branching_bound = branching_bound(g);

    for (auto& site : find_pump_sites(report.tree)) {
        SiteOutcome o;
        const auto down = pump_down(report.tree, site);
        const auto up = pump_up(report.tree, site);
        o.down_valid = validate_tree(down, g).valid;
        o.up_valid = validate_tree(up, g).valid;
        o.down_yield = yield(down);
        o.up_yield = yield(up);
        o.down_in_grammar = recognizer.run(o.down_yield).accepted;
        o.up_in_grammar = recognizer.run(o.up_yield).accepted;
        o.down_in_preorder_language = in_preorder_language(o.down_yield);
        o.up_in_preorder_language = in_preorder_language(o.up_yield);
        o.outer_term = term_of(subtree_at(report.tree, site.outer));
        o.inner_term = term_of(subtree_at(report.tree, site.inner));
        o.delta = delta_report(report.tree, site, p, letters);
        o.site = std::move(site);
        report.sites.push_back(std::move(o));
    }
    return report;
}

}  // namespace mcfg
