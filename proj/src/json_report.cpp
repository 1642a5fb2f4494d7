#include "mcfg/json_report.hpp"

namespace mcfg::json {

json word(const Word& w) { return to_string(w); }

json term(const Term& t) {
    json comps = json::array();
    for (const auto& c : t.components) comps.push_back(word(c));
    return {{"head", t.head.name}, {"rank", t.head.rank}, {"components", comps}, {"text", to_string(t)}};
}

json violation(const Violation& v) {
    json j{{"kind", to_string(v.kind)},
           {"severity", v.severity == Severity::error ? "error" : "warning"},
           {"message", v.message}};
    j["rule"] = v.rule ? json(*v.rule + 1) : json(nullptr);
    return j;
}

json violations(const std::vector<Violation>& vs) {
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(violation(v));
    return arr;
}

json tree(const DerivationTree& d) {
    json kids = json::array();
    for (const auto& c : d.children) kids.push_back(tree(c));
    return {{"rule", to_string(d.label)}, {"term", to_string(term_of(d))}, {"children", kids}};
}

json preorder(const Preorder& p) {
    json pairs = json::array();
    for (auto [i, j] : p.strict_pairs()) pairs.push_back({i, j});
    return {{"m", p.size()}, {"pairs", pairs}, {"total", p.is_total()}, {"connected", p.is_connected()}};
}

namespace {

json word_list(const std::set<Word>& ws) {
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(word(w));
    return arr;
}

json counts(const LetterCounts& c) {
    json j = json::object();
    for (const auto& [l, n] : c.counts()) j[l] = n;
    return j;
}

json path(const NodePath& p) {
    json arr = json::array();
    for (auto i : p) arr.push_back(i);
    return arr;
}

}  // namespace

json diff(const DiffReport& d) {
    return {{"agree", d.agree()},
            {"only_in_grammar", word_list(d.only_in_grammar)},
            {"only_in_preorder", word_list(d.only_in_preorder)}};
}

json delta(const DeltaReport& d) {
    json deltas = json::object();
    for (const auto& [l, n] : d.deltas) deltas[l] = n;
    json pairs = json::array();
    for (const auto& p : d.pairs)
        pairs.push_back({{"lower", p.lower},
                         {"upper", p.upper},
                         {"lower_delta", p.lower_delta},
                         {"upper_delta", p.upper_delta},
                         {"equal", p.equal()}});
    return {{"deltas", deltas},
            {"original", counts(d.original)},
            {"pumped_down", counts(d.pumped_down)},
            {"pumped_up", counts(d.pumped_up)},
            {"down_arithmetic_holds", d.down_arithmetic_holds},
            {"up_arithmetic_holds", d.up_arithmetic_holds},
            {"pairs", pairs}};
}

json experiment(const ExperimentReport& r) {
    json sites = json::array();
    for (const auto& s : r.sites) {
        sites.push_back({{"outer", path(s.site.outer)},
                         {"inner", path(s.site.inner)},
                         {"rule", to_string(s.site.rule)},
                         {"outer_term", term(s.outer_term)},
                         {"inner_term", term(s.inner_term)},
                         {"down_yield", word(s.down_yield)},
                         {"up_yield", word(s.up_yield)},
                         {"down_valid", s.down_valid},
                         {"up_valid", s.up_valid},
                         {"down_in_grammar", s.down_in_grammar},
                         {"up_in_grammar", s.up_in_grammar},
                         {"down_in_preorder_language", s.down_in_preorder_language},
                         {"up_in_preorder_language", s.up_in_preorder_language},
                         {"delta", delta(s.delta)}});
    }
    return {{"word", word(r.word)},
            {"tree", tree(r.tree)},
            {"combiners", r.combiner_count},
            {"branching_bound", r.branching_bound},
            {"sites", sites},
            {"leaves_preorder_language", r.leaves_preorder_language()}};
}

json envelope(const std::string& command, json inputs, json result, json vs) {
    return {{"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)}, {"violations", std::move(vs)}};
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace mcfg::json
