// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include "mcfg/derivation.hpp"
#include "mcfg/enumeration.hpp"
#include "mcfg/grammar.hpp"
#include "mcfg/preorder.hpp"
#include "mcfg/pumping.hpp"
#include "mcfg/recognizer.hpp"
#include "support/fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace mcfg;
using namespace mcfg::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

// Normal-form trees collected along the way for criterion 6.
std::vector<DerivationTree> normal_form_trees;

void collect_if_normal(const Grammar& g, const DerivationTree& d) {
    if (is_normal_form(g).holds) normal_form_trees.push_back(d);
}

Outcome construction_chain() {
    Outcome o;
    for (int k = 1; k <= 5; ++k) {
        auto p = Preorder::chain(k);
        if (!compare_languages(build_grammar(p), p, 10).agree()) o.fail("chain on [" + std::to_string(k) + "]");
    }
    o.detail = o.ok ? "chains on [1..5], length <= 10" : o.detail;
    return o;
}

Outcome dimension_claim() {
    Outcome o;
    for (int k = 1; k <= 8; ++k)
        if (dimension(build_grammar(Preorder::chain(k))) != (k + 1) / 2) o.fail("k = " + std::to_string(k));
    if (o.ok) o.detail = "k = 1..8";
    return o;
}

Outcome general_preorders() {
    Outcome o;
    const std::vector<std::pair<int, int>> all{{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}};
    std::set<Preorder> seen;
    for (unsigned mask = 0; mask < 64; ++mask) {
        std::vector<std::pair<int, int>> chosen;
        for (std::size_t k = 0; k < all.size(); ++k)
            if (mask & (1u << k)) chosen.push_back(all[k]);
        seen.insert(Preorder::closure(3, chosen));
    }
    for (const auto& p : seen)
        if (!compare_languages(build_grammar(p), p, 9).agree()) o.fail("diff for\n" + to_string(p));
    if (o.ok) o.detail = std::to_string(seen.size()) + " distinct preorders on [3], length <= 9";
    return o;
}

Outcome totalisation_union() {
    Outcome o;
    const std::map<int, std::size_t> expected{{2, 3}, {3, 13}};
    for (auto [m, count] : expected) {
        auto p = Preorder::discrete(m);
        auto totals = totalisations(p);
        if (totals.size() != count) o.fail("count for [" + std::to_string(m) + "]");
        if (brute_force_totalisations(p).size() != totals.size()) o.fail("brute force disagrees on [" + std::to_string(m) + "]");
        std::set<Word> united;
        for (const auto& q : totals) {
            auto part = direct_language(q, 8);
            united.insert(part.begin(), part.end());
        }
        if (united != direct_language(p, 8)) o.fail("union differs on [" + std::to_string(m) + "]");
    }
    if (o.ok) o.detail = "counts 3 and 13, unions exact at length 8";
    return o;
}

// Recognizer verdicts against enumeration on every word up to length 6.
bool agree_on_all_words(const Grammar& g, Outcome& o, const std::string& label) {
    const auto oracle = enumerate_language(g, 6);
    Recognizer r(g);
    for (const auto& w : all_words(g.alphabet.letters(), 6)) {
        auto res = r.run(w);
        if (res.accepted != (oracle.count(w) == 1)) {
            o.fail(label + " on '" + to_string(w) + "'");
            return false;
        }
        if (res.accepted) {
            if (!validate_tree(*res.tree, g).valid || yield(*res.tree) != w) {
                o.fail(label + ": bad tree for '" + to_string(w) + "'");
                return false;
            }
            collect_if_normal(g, *res.tree);
        }
    }
    return true;
}

Outcome recognizer_agreement() {
    Outcome o;
    std::size_t grammars = 0;
    for (int m = 2; m <= 4; ++m) {
        for (const auto& p : {Preorder::chain(m), Preorder::discrete(m),
                              Preorder::closure(m, std::vector<std::pair<int, int>>{{1, 2}})}) {
            agree_on_all_words(build_grammar(p), o, "construction on [" + std::to_string(m) + "]");
            ++grammars;
        }
    }
    std::mt19937 rng(20240);
    for (int i = 0; i < 20; ++i) {
        RandomGrammarOptions opts;
        opts.normal_form = i % 2 == 1;
        auto g = random_productive_grammar(rng, opts, 6, 2);
        if (!validate_grammar(g).valid() || !is_non_deleting(g)) o.fail("generator produced an unusable grammar");
        agree_on_all_words(g, o, "random grammar " + std::to_string(i));
        for (const auto& d : witness_trees(g, 6)) collect_if_normal(g, d);
        ++grammars;
    }
    if (o.ok) o.detail = std::to_string(grammars) + " grammars, all words up to length 6";
    return o;
}

Outcome count_identities() {
    Outcome o;
    // Extra normal-form material beyond what criterion 5 produced.
    for (const auto& d : witness_trees(g_pump(), 8)) normal_form_trees.push_back(d);
    std::size_t nodes = 0;
    for (const auto& d : normal_form_trees) {
        nodes += node_count(d);
        auto failures = count_identity_failures(d);
        if (!failures.empty()) o.fail("identity fails at " + to_string(failures.front()) + " in " + to_string(d));
    }
    if (normal_form_trees.empty()) o.fail("no normal-form trees collected");
    if (o.ok) o.detail = std::to_string(normal_form_trees.size()) + " trees, " + std::to_string(nodes) + " nodes";
    return o;
}

Outcome substitutions() {
    Outcome o;
    std::mt19937 rng(1000);
    std::vector<Grammar> grammars{g_pump(), overgenerating_l3(), build_grammar(Preorder::chain(3)),
                                  build_grammar(Preorder::discrete(2))};
    for (int i = 0; i < 6; ++i) grammars.push_back(random_productive_grammar(rng, {}, 5, 3));
    std::size_t done = 0, attempts = 0;
    while (done < 1000 && attempts < 100000) {
        ++attempts;
        const auto& g = grammars[rng() % grammars.size()];
        auto pool = witness_trees(g, 6);
        if (pool.empty()) continue;
        // Every subtree of the pool, grouped by rule label.
        std::map<ProductionRule, std::vector<DerivationTree>> by_label;
        for (const auto& t : pool)
            for (const auto& p : node_paths(t)) {
                const auto& s = subtree_at(t, p);
                by_label[s.label].push_back(s);
            }
        for (int k = 0; k < 50 && done < 1000; ++k) {
            const auto& d = pool[rng() % pool.size()];
            auto paths = node_paths(d);
            const auto& at = paths[rng() % paths.size()];
            const auto& candidates = by_label[subtree_at(d, at).label];
            const auto& r = candidates[rng() % candidates.size()];
            auto out = substitute_subtree(d, at, r);
            ++done;
            if (!validate_tree(out, g).valid) o.fail("invalid result at " + to_string(at) + " in " + to_string(d));
        }
    }
    if (done < 1000) o.fail("only " + std::to_string(done) + " substitutions performed");
    if (o.ok) o.detail = std::to_string(done) + " substitutions";
    return o;
}

Outcome pump_mechanics() {
    Outcome o;
    auto check_sites = [&](const Grammar& g, const DerivationTree& d) {
        for (const auto& s : find_pump_sites(d)) {
            if (!validate_tree(pump_down(d, s), g).valid) o.fail("pump_down invalid");
            if (!validate_tree(pump_up(d, s), g).valid) o.fail("pump_up invalid");
            auto rep = delta_report(d, s);
            if (!rep.down_arithmetic_holds || !rep.up_arithmetic_holds) o.fail("delta arithmetic");
        }
    };
    const auto gp = g_pump();
    std::size_t sites = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        auto d = g_pump_spine(n);
        sites += find_pump_sites(d).size();
        check_sites(gp, d);
        if (auto parsed = parse(gp, repeat("a", n))) check_sites(gp, *parsed);
    }
    const auto og = overgenerating_l3();
    const auto p = Preorder::chain(3);
    bool escaped = false;
    for (const auto& w : direct_language(p, 9)) {
        auto d = parse(og, w);
        if (!d) continue;
        sites += find_pump_sites(*d).size();
        check_sites(og, *d);
        auto rep = pump_experiment(og, p, w);
        for (const auto& s : rep.sites) {
            if ((s.down_in_grammar && !member(p, s.down_yield)) || (s.up_in_grammar && !member(p, s.up_yield)))
                escaped = true;
        }
    }
    if (!escaped) o.fail("no pumped yield left the preorder language");
    if (o.ok) o.detail = std::to_string(sites) + " sites checked, contradiction signal observed";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"construction matches the chain languages", construction_chain},
        {"dimension is ceil(k/2)", dimension_claim},
        {"construction matches every preorder on [3]", general_preorders},
        {"union over totalisations", totalisation_union},
        {"recognizer agrees with enumeration", recognizer_agreement},
        {"count identities on normal-form trees", count_identities},
        {"same-label substitution keeps trees valid", substitutions},
        {"pump mechanics", pump_mechanics},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %zu %s (%s) [%.1fs]\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                    secs);
        std::fflush(stdout);
        if (!o.ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
