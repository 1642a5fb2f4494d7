// mcfg: command-line front end for the grammar toolkit.
//
// Exit codes: 0 success / accept / agree, 1 reject / disagree / invalid grammar,
// 2 any error (bad arguments, unreadable or malformed input).

#include "mcfg/derivation.hpp"
#include "mcfg/enumeration.hpp"
#include "mcfg/error.hpp"
#include "mcfg/grammar.hpp"
#include "mcfg/io.hpp"
#include "mcfg/json_report.hpp"
#include "mcfg/preorder.hpp"
#include "mcfg/pumping.hpp"
#include "mcfg/recognizer.hpp"

#include <CLI11.hpp>

#include <cstddef>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

using mcfg::json::json;

struct Options {
    bool json = false;
    long long seed = 0;  // reserved; no command samples yet
    std::string grammar_path;
    std::string preorder_path;
    std::vector<std::string> word_tokens;
    std::size_t max_len = 0;
    bool parse_tree = false;
    bool terms = false;
    bool count_only = false;
};

mcfg::Grammar load_grammar(const std::string& path) { return mcfg::parse_grammar(mcfg::read_file(path), path); }
mcfg::Preorder load_preorder(const std::string& path) { return mcfg::parse_preorder(mcfg::read_file(path), path); }

mcfg::Word joined_word(const std::vector<std::string>& tokens) {
    std::string text;
    for (const auto& t : tokens) text += t + ' ';
    return mcfg::parse_word(text);
}

void emit(const Options& o, const std::string& command, json inputs, json result, json violations,
          const std::string& text) {
    if (o.json)
        std::cout << mcfg::json::dump(mcfg::json::envelope(command, std::move(inputs), std::move(result), std::move(violations)))
                  << '\n';
    else
        std::cout << text;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string violation_line(const mcfg::Violation& v) {
    std::ostringstream os;
    os << (v.severity == mcfg::Severity::error ? "error" : "warning") << ": " << v.message << '\n';
    return os.str();
}

int cmd_validate(const Options& o) {
    const auto g = load_grammar(o.grammar_path);
    const auto report = mcfg::validate_grammar(g);
    std::ostringstream os;
    json result{{"valid", report.valid()}};
    std::vector<mcfg::Violation> all = report.violations;
    for (const auto& v : report.violations) os << violation_line(v);
    if (report.valid()) {
        const auto nf = mcfg::is_normal_form(g);
        const bool nd = mcfg::is_non_deleting(g);
        result["normal_form"] = nf.holds;
        result["normal_form_violations"] = mcfg::json::violations(nf.violations);
        result["non_deleting"] = nd;
        result["dimension"] = mcfg::dimension(g);
        os << "valid: yes\n"
           << "dimension: " << mcfg::dimension(g) << '\n'
           << "normal form: " << yes_no(nf.holds) << '\n';
        for (const auto& v : nf.violations) os << "  " << violation_line(v);
        os << "non-deleting: " << yes_no(nd) << '\n';
    } else {
        os << "valid: no\n";
    }
    emit(o, "validate", {{"grammar", o.grammar_path}}, result, mcfg::json::violations(all), os.str());
    return report.valid() ? 0 : 1;
}

int cmd_recognize(const Options& o) {
    const auto g = load_grammar(o.grammar_path);
    const auto w = joined_word(o.word_tokens);
    const auto res = mcfg::Recognizer(g).run(w);
    json result{{"accepted", res.accepted}, {"items", res.item_count}};
    std::string text = res.accepted ? "accept\n" : "reject\n";
    if (o.parse_tree && res.tree) {
        result["tree"] = mcfg::json::tree(*res.tree);
        text += mcfg::render_tree(*res.tree);
    }
    emit(o, "recognize", {{"grammar", o.grammar_path}, {"word", mcfg::json::word(w)}}, result, json::array(), text);
    return res.accepted ? 0 : 1;
}

int cmd_enumerate(const Options& o) {
    const auto g = load_grammar(o.grammar_path);
    std::ostringstream os;
    json result;
    if (o.terms) {
        const auto ts = mcfg::enumerate_terms(g, o.max_len);
        std::set<mcfg::Term> sorted(ts.terms.begin(), ts.terms.end());
        json arr = json::array();
        for (const auto& t : sorted) {
            os << mcfg::to_string(t) << '\n';
            arr.push_back(mcfg::json::term(t));
        }
        result = {{"terms", arr}, {"complete", ts.complete}};
        if (!ts.complete && !o.json) std::cerr << "note: deleting grammar, term list is a lower bound\n";
    } else {
        json arr = json::array();
        for (const auto& w : mcfg::enumerate_language(g, o.max_len)) {
            os << mcfg::to_string(w) << '\n';
            arr.push_back(mcfg::json::word(w));
        }
        result = {{"words", arr}, {"complete", mcfg::is_non_deleting(g)}};
    }
    emit(o, "enumerate", {{"grammar", o.grammar_path}, {"max_len", o.max_len}, {"terms", o.terms}}, result,
         json::array(), os.str());
    return 0;
}

int cmd_build_grammar(const Options& o) {
    const auto p = load_preorder(o.preorder_path);
    const auto g = mcfg::build_grammar(p);
    const auto text = mcfg::format_grammar(g);
    json rules = json::array();
    for (const auto& r : g.rules) rules.push_back(mcfg::to_string(r));
    emit(o, "build-grammar", {{"preorder", mcfg::json::preorder(p)}},
         {{"start", g.start.name}, {"dimension", mcfg::dimension(g)}, {"rules", rules}, {"text", text}}, json::array(),
         text);
    return 0;
}

int cmd_totalisations(const Options& o) {
    const auto p = load_preorder(o.preorder_path);
    const auto totals = mcfg::totalisations(p);
    std::ostringstream os;
    json arr = json::array();
    if (o.count_only) {
        os << totals.size() << '\n';
    } else {
        for (std::size_t i = 0; i < totals.size(); ++i) {
            if (i) os << '\n';
            os << mcfg::format_preorder(totals[i]);
        }
    }
    for (const auto& q : totals) arr.push_back(mcfg::json::preorder(q));
    json result{{"count", totals.size()}};
    if (!o.count_only) result["totalisations"] = arr;
    emit(o, "totalisations", {{"preorder", mcfg::json::preorder(p)}}, result, json::array(), os.str());
    return 0;
}

int cmd_compare(const Options& o) {
    const auto g = load_grammar(o.grammar_path);
    const auto p = load_preorder(o.preorder_path);
    const auto d = mcfg::compare_languages(g, p, o.max_len);
    std::ostringstream os;
    if (d.agree()) os << "agree up to length " << o.max_len << '\n';
    for (const auto& w : d.only_in_grammar) os << "only in grammar: " << mcfg::to_string(w) << '\n';
    for (const auto& w : d.only_in_preorder) os << "only in preorder language: " << mcfg::to_string(w) << '\n';
    emit(o, "compare",
         {{"grammar", o.grammar_path}, {"preorder", mcfg::json::preorder(p)}, {"max_len", o.max_len}},
         mcfg::json::diff(d), json::array(), os.str());
    return d.agree() ? 0 : 1;
}

int cmd_pump(const Options& o) {
    const auto g = load_grammar(o.grammar_path);
    const auto p = load_preorder(o.preorder_path);
    const auto w = joined_word(o.word_tokens);
    const auto r = mcfg::pump_experiment(g, p, w);
    std::ostringstream os;
    os << "word: " << mcfg::to_string(r.word) << '\n'
       << "combiners: " << r.combiner_count << '\n'
       << "branching bound: " << r.branching_bound << '\n'
       << "tree:\n";
    std::istringstream tree(mcfg::render_tree(r.tree));
    for (std::string line; std::getline(tree, line);) os << "  " << line << '\n';
    os << "sites: " << r.sites.size() << '\n';
    for (const auto& s : r.sites) {
        os << "site " << mcfg::to_string(s.site.outer) << " > " << mcfg::to_string(s.site.inner) << "  "
           << mcfg::to_string(s.site.rule) << '\n'
           << "  outer term: " << mcfg::to_string(s.outer_term) << '\n'
           << "  inner term: " << mcfg::to_string(s.inner_term) << '\n'
           << "  delta:";
        for (const auto& [l, n] : s.delta.deltas) os << ' ' << l << '=' << n;
        os << '\n'
           << "  down: " << mcfg::to_string(s.down_yield) << "  valid=" << yes_no(s.down_valid)
           << " in-grammar=" << yes_no(s.down_in_grammar) << " in-preorder-language=" << yes_no(s.down_in_preorder_language)
           << '\n'
           << "  up:   " << mcfg::to_string(s.up_yield) << "  valid=" << yes_no(s.up_valid)
           << " in-grammar=" << yes_no(s.up_in_grammar) << " in-preorder-language=" << yes_no(s.up_in_preorder_language)
           << '\n'
           << "  arithmetic: down=" << yes_no(s.delta.down_arithmetic_holds) << " up=" << yes_no(s.delta.up_arithmetic_holds)
           << '\n';
        for (const auto& pd : s.delta.pairs)
            if (!pd.equal())
                os << "  unequal deltas for " << pd.lower << " <= " << pd.upper << ": " << pd.lower_delta << " vs "
                   << pd.upper_delta << '\n';
    }
    os << "leaves preorder language: " << yes_no(r.leaves_preorder_language()) << '\n';
    emit(o, "pump", {{"grammar", o.grammar_path}, {"preorder", mcfg::json::preorder(p)}, {"word", mcfg::json::word(w)}},
         mcfg::json::experiment(r), json::array(), os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Multiple context-free grammar toolkit"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "Machine-readable output")->configurable(false);
    app.add_option("--seed", o.seed, "Seed for sampled experiment orderings (reserved)");
    app.fallthrough();

    auto* validate = app.add_subcommand("validate", "Check a grammar file");
    validate->add_option("grammar", o.grammar_path, "Grammar file")->required();

    auto* recognize = app.add_subcommand("recognize", "Decide membership of a word");
    recognize->add_option("grammar", o.grammar_path, "Grammar file")->required();
    recognize->add_option("word", o.word_tokens, "Letter tokens; '_' or nothing is the empty word");
    recognize->add_flag("--parse", o.parse_tree, "Print a derivation tree");

    auto* enumerate = app.add_subcommand("enumerate", "List words or terms up to a length");
    enumerate->add_option("grammar", o.grammar_path, "Grammar file")->required();
    enumerate->add_option("--max-len", o.max_len, "Length budget")->required();
    enumerate->add_flag("--terms", o.terms, "List derivable terms instead of words");

    auto* build = app.add_subcommand("build-grammar", "Emit the grammar generating a preorder language");
    build->add_option("preorder", o.preorder_path, "Preorder file")->required();

    auto* totals = app.add_subcommand("totalisations", "List the totalisations of a preorder");
    totals->add_option("preorder", o.preorder_path, "Preorder file")->required();
    totals->add_flag("--count", o.count_only, "Print only the count");

    auto* compare = app.add_subcommand("compare", "Compare a grammar with a preorder language");
    compare->add_option("grammar", o.grammar_path, "Grammar file")->required();
    compare->add_option("preorder", o.preorder_path, "Preorder file")->required();
    compare->add_option("--max-len", o.max_len, "Length budget")->required();

    auto* pump = app.add_subcommand("pump", "Run subtree-swap experiments on a parse of a word");
    pump->add_option("grammar", o.grammar_path, "Grammar file")->required();
    pump->add_option("preorder", o.preorder_path, "Preorder file")->required();
    pump->add_option("word", o.word_tokens, "Letter tokens");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*recognize) return cmd_recognize(o);
        if (*enumerate) return cmd_enumerate(o);
        if (*build) return cmd_build_grammar(o);
        if (*totals) return cmd_totalisations(o);
        if (*compare) return cmd_compare(o);
        if (*pump) return cmd_pump(o);
    } catch (const std::exception& e) {
        std::cerr << "mcfg: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
