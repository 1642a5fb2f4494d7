#include "mcfg/recognizer.hpp"

#include "mcfg/error.hpp"

#include <deque>
#include <functional>
#include <unordered_map>

namespace mcfg {

namespace {

using LetterId = int;

struct Occurrence {
    int child = 0;  // 0-based
    int comp = 0;   // 0-based
};

// Terminal run gaps[0] var[0] gaps[1] ... var[k-1] gaps[k].
struct CompiledPattern {
    std::vector<Occurrence> vars;
    std::vector<std::vector<LetterId>> gaps;
};

struct Constraint {
    enum class Kind { prefix, suffix, adjacent } kind;
    Occurrence left;   // prefix/suffix: the variable; adjacent: the left variable
    Occurrence right;  // adjacent only
    std::vector<LetterId> gap;
};

// Candidate lookup for one search step: the component of the child being chosen
// is pinned by an adjacency with an already chosen variable.
struct Hint {
    bool by_start = true;  // look up by start (true) or end (false) of `comp`
    int comp = 0;
    Occurrence anchor;
    std::size_t gap = 0;
};

struct Plan {
    std::vector<int> order;
    std::vector<std::vector<const Constraint*>> checks;
    std::vector<std::optional<Hint>> hints;
};

struct CompiledRule {
    int lhs = 0;
    std::vector<int> rhs;
    std::vector<CompiledPattern> patterns;
    std::vector<Constraint> constraints;
    std::vector<Plan> plans;  // plans[i]: child i is fixed to the newly processed item
};

std::vector<int> involved(const Constraint& c) {
    if (c.kind == Constraint::Kind::adjacent) return {c.left.child, c.right.child};
    return {c.left.child};
}

}  // namespace

struct Recognizer::Compiled {
    std::map<NonTerminal, int> nt_index;
    std::vector<int> ranks;
    int start = -1;
    std::vector<CompiledRule> rules;
    // uses[nt]: (rule, child position) pairs where nt occurs on the right-hand side
    std::vector<std::vector<std::pair<int, int>>> uses;
};

Recognizer::Recognizer(Grammar g) : grammar_(std::move(g)), compiled_(std::make_unique<Compiled>()) {
    auto report = validate_grammar(grammar_);
    if (!report.valid())
        throw InputError("grammar is invalid: " + report.violations.front().message);
    if (!is_non_deleting(grammar_))
        throw UnsupportedGrammar(
            "recognizer requires a non-deleting grammar; use the enumeration oracle for deleting grammars");

    auto& c = *compiled_;
    for (const auto& nt : grammar_.nonterminals) {
        if (c.nt_index.emplace(nt, static_cast<int>(c.ranks.size())).second) c.ranks.push_back(nt.rank);
    }
    c.start = c.nt_index.at(grammar_.start);

    for (const auto& rule : grammar_.rules) {
        CompiledRule cr;
        cr.lhs = c.nt_index.at(rule.lhs);
        for (const auto& nt : rule.rhs) cr.rhs.push_back(c.nt_index.at(nt));
        for (const auto& pattern : rule.patterns) {
            CompiledPattern cp;
            cp.gaps.emplace_back();
            for (const auto& item : pattern) {
                if (const auto* t = std::get_if<Terminal>(&item)) {
                    cp.gaps.back().push_back(static_cast<LetterId>(*grammar_.alphabet.index_of(t->letter)));
                } else {
                    const auto& v = std::get<Variable>(item);
                    cp.vars.push_back({v.child - 1, v.component - 1});
                    cp.gaps.emplace_back();
                }
            }
            if (!cp.vars.empty()) {
                if (!cp.gaps.front().empty())
                    cr.constraints.push_back({Constraint::Kind::prefix, cp.vars.front(), {}, cp.gaps.front()});
                if (!cp.gaps.back().empty())
                    cr.constraints.push_back({Constraint::Kind::suffix, cp.vars.back(), {}, cp.gaps.back()});
                for (std::size_t t = 0; t + 1 < cp.vars.size(); ++t)
                    cr.constraints.push_back(
                        {Constraint::Kind::adjacent, cp.vars[t], cp.vars[t + 1], cp.gaps[t + 1]});
            }
            cr.patterns.push_back(std::move(cp));
        }

        const int n = static_cast<int>(cr.rhs.size());
        for (int fixed = 0; fixed < n; ++fixed) {
            Plan plan;
            plan.order.push_back(fixed);
            for (int k = 0; k < n; ++k)
                if (k != fixed) plan.order.push_back(k);
            std::vector<bool> assigned(n, false);
            for (int step = 0; step < n; ++step) {
                const int child = plan.order[step];
                assigned[child] = true;
                std::vector<const Constraint*> checks;
                for (const auto& con : cr.constraints) {
                    auto kids = involved(con);
                    bool mentions = false, ready = true;
                    for (int k : kids) {
                        mentions = mentions || k == child;
                        ready = ready && assigned[k];
                    }
                    if (mentions && ready) checks.push_back(&con);
                }
                std::optional<Hint> hint;
                if (step > 0) {
                    for (const auto& con : cr.constraints) {
                        if (con.kind != Constraint::Kind::adjacent) continue;
                        if (con.right.child == child && con.left.child != child && assigned[con.left.child]) {
                            hint = Hint{true, con.right.comp, con.left, con.gap.size()};
                            break;
                        }
                        if (con.left.child == child && con.right.child != child && assigned[con.right.child]) {
                            hint = Hint{false, con.left.comp, con.right, con.gap.size()};
                            break;
                        }
                    }
                }
                plan.checks.push_back(std::move(checks));
                plan.hints.push_back(hint);
            }
            cr.plans.push_back(std::move(plan));
        }
        c.rules.push_back(std::move(cr));
    }
    c.uses.resize(c.ranks.size());
    for (std::size_t ri = 0; ri < c.rules.size(); ++ri)
        for (std::size_t k = 0; k < c.rules[ri].rhs.size(); ++k)
            c.uses[static_cast<std::size_t>(c.rules[ri].rhs[k])].emplace_back(static_cast<int>(ri), static_cast<int>(k));
}

Recognizer::~Recognizer() = default;
Recognizer::Recognizer(Recognizer&&) noexcept = default;
Recognizer& Recognizer::operator=(Recognizer&&) noexcept = default;

namespace {

struct ItemRecord {
    int nt = 0;
    std::vector<Span> spans;
    int rule = -1;
    std::vector<int> kids;
};

using ItemKey = std::pair<int, std::vector<Span>>;

struct ItemKeyHash {
    std::size_t operator()(const ItemKey& k) const noexcept {
        std::size_t h = std::hash<int>{}(k.first);
        for (const auto& s : k.second) h = h * 1000003u ^ (s.start * 131u + s.end);
        return h;
    }
};

class Chart {
public:
    Chart(const std::vector<int>& ranks, std::size_t positions) : by_nt_(ranks.size()) {
        start_idx_.resize(ranks.size());
        end_idx_.resize(ranks.size());
        for (std::size_t nt = 0; nt < ranks.size(); ++nt) {
            start_idx_[nt].assign(static_cast<std::size_t>(ranks[nt]), std::vector<std::vector<int>>(positions));
            end_idx_[nt].assign(static_cast<std::size_t>(ranks[nt]), std::vector<std::vector<int>>(positions));
        }
    }

    bool add(int nt, std::vector<Span> spans, int rule, std::vector<int> kids) {
        auto [it, inserted] = index_.try_emplace({nt, spans}, static_cast<int>(items_.size()));
        if (!inserted) return false;
        items_.push_back({nt, std::move(spans), rule, std::move(kids)});
        agenda_.push_back(it->second);
        return true;
    }

    std::optional<int> pop() {
        if (agenda_.empty()) return std::nullopt;
        int id = agenda_.front();
        agenda_.pop_front();
        const auto& it = items_[id];
        by_nt_[it.nt].push_back(id);
        for (std::size_t c = 0; c < it.spans.size(); ++c) {
            start_idx_[it.nt][c][it.spans[c].start].push_back(id);
            end_idx_[it.nt][c][it.spans[c].end].push_back(id);
        }
        return id;
    }

    const ItemRecord& item(int id) const { return items_[id]; }
    std::size_t size() const { return items_.size(); }
    const std::vector<int>& processed(int nt) const { return by_nt_[nt]; }
    const std::vector<int>& starting_at(int nt, int comp, std::size_t pos) const { return start_idx_[nt][comp][pos]; }
    const std::vector<int>& ending_at(int nt, int comp, std::size_t pos) const { return end_idx_[nt][comp][pos]; }

    std::optional<int> find(int nt, const std::vector<Span>& spans) const {
        auto it = index_.find({nt, spans});
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<ItemRecord> items_;
    std::unordered_map<ItemKey, int, ItemKeyHash> index_;
    std::deque<int> agenda_;
    std::vector<std::vector<int>> by_nt_;
    std::vector<std::vector<std::vector<std::vector<int>>>> start_idx_;
    std::vector<std::vector<std::vector<std::vector<int>>>> end_idx_;
};

std::vector<Span> occurrences(const std::vector<LetterId>& word, const std::vector<LetterId>& needle) {
    std::vector<Span> out;
    if (needle.size() > word.size()) return out;
    for (std::size_t s = 0; s + needle.size() <= word.size(); ++s) {
        if (std::equal(needle.begin(), needle.end(), word.begin() + static_cast<std::ptrdiff_t>(s)))
            out.push_back({s, s + needle.size()});
    }
    return out;
}

bool matches_at(const std::vector<LetterId>& word, std::size_t pos, const std::vector<LetterId>& gap) {
    if (pos + gap.size() > word.size()) return false;
    return std::equal(gap.begin(), gap.end(), word.begin() + static_cast<std::ptrdiff_t>(pos));
}

// Emits every LHS span tuple for a complete child assignment.
void emit(const CompiledRule& rule, int rule_index, const std::vector<int>& kids, const Chart& chart,
          const std::vector<LetterId>& word, Chart& out) {
    auto span_of = [&](const Occurrence& o) { return chart.item(kids[o.child]).spans[o.comp]; };
    std::vector<std::vector<Span>> choices;
    choices.reserve(rule.patterns.size());
    for (const auto& p : rule.patterns) {
        if (p.vars.empty()) {
            choices.push_back(occurrences(word, p.gaps.front()));
            if (choices.back().empty()) return;
        } else {
            Span first = span_of(p.vars.front());
            Span last = span_of(p.vars.back());
            choices.push_back({Span{first.start - p.gaps.front().size(), last.end + p.gaps.back().size()}});
        }
    }
    std::vector<Span> spans(choices.size());
    std::function<void(std::size_t)> product = [&](std::size_t k) {
        if (k == choices.size()) {
            out.add(rule.lhs, spans, rule_index, kids);
            return;
        }
        for (const auto& s : choices[k]) {
            spans[k] = s;
            product(k + 1);
        }
    };
    product(0);
}

bool holds(const Constraint& c, const std::vector<int>& kids, const Chart& chart, const std::vector<LetterId>& word) {
    const Span l = chart.item(kids[c.left.child]).spans[c.left.comp];
    switch (c.kind) {
        case Constraint::Kind::prefix:
            return l.start >= c.gap.size() && matches_at(word, l.start - c.gap.size(), c.gap);
        case Constraint::Kind::suffix:
            return matches_at(word, l.end, c.gap);
        case Constraint::Kind::adjacent: {
            const Span r = chart.item(kids[c.right.child]).spans[c.right.comp];
            return l.end + c.gap.size() == r.start && matches_at(word, l.end, c.gap);
        }
    }
    return false;
}

DerivationTree extract(const Grammar& g, const Chart& chart, int id) {
    const auto& it = chart.item(id);
    DerivationTree d{g.rules[static_cast<std::size_t>(it.rule)], {}};
    d.children.reserve(it.kids.size());
    for (int k : it.kids) d.children.push_back(extract(g, chart, k));
    return d;
}

}  // namespace

RecognitionResult Recognizer::run(const Word& w) const {
    const auto& c = *compiled_;
    std::vector<LetterId> word;
    word.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto idx = grammar_.alphabet.index_of(w[i]);
        if (!idx) throw InputError("letter '" + w[i] + "' at position " + std::to_string(i) + " is not in the alphabet");
        word.push_back(static_cast<LetterId>(*idx));
    }

    Chart chart(c.ranks, word.size() + 1);
    for (std::size_t ri = 0; ri < c.rules.size(); ++ri) {
        if (c.rules[ri].rhs.empty()) emit(c.rules[ri], static_cast<int>(ri), {}, chart, word, chart);
    }

    std::vector<int> kids;
    while (auto next = chart.pop()) {
        const int id = *next;
        const int nt = chart.item(id).nt;
        for (const auto& [ri, fixed] : c.uses[static_cast<std::size_t>(nt)]) {
            const auto& rule = c.rules[static_cast<std::size_t>(ri)];
            {
                const Plan& plan = rule.plans[static_cast<std::size_t>(fixed)];
                kids.assign(rule.rhs.size(), -1);

                std::function<void(std::size_t)> search = [&](std::size_t step) {
                    if (step == plan.order.size()) {
                        emit(rule, static_cast<int>(ri), kids, chart, word, chart);
                        return;
                    }
                    const int child = plan.order[step];
                    auto try_candidate = [&](int cand) {
                        kids[child] = cand;
                        for (const auto* con : plan.checks[step])
                            if (!holds(*con, kids, chart, word)) return;
                        search(step + 1);
                    };
                    if (step == 0) {
                        try_candidate(id);
                    } else if (const auto& hint = plan.hints[step]) {
                        const Span a = chart.item(kids[hint->anchor.child]).spans[hint->anchor.comp];
                        if (hint->by_start) {
                            if (a.end + hint->gap <= word.size())
                                for (int cand : chart.starting_at(rule.rhs[child], hint->comp, a.end + hint->gap))
                                    try_candidate(cand);
                        } else if (a.start >= hint->gap) {
                            for (int cand : chart.ending_at(rule.rhs[child], hint->comp, a.start - hint->gap))
                                try_candidate(cand);
                        }
                    } else {
                        // Index and processed lists only grow in pop(), never during a search.
                        for (int cand : chart.processed(rule.rhs[child])) try_candidate(cand);
                    }
                    kids[child] = -1;
                };
                search(0);
            }
        }
    }

    RecognitionResult res;
    res.item_count = chart.size();
    if (auto goal = chart.find(c.start, {Span{0, word.size()}})) {
        res.accepted = true;
        res.tree = extract(grammar_, chart, *goal);
    }
    return res;
}

bool recognize(const Grammar& g, const Word& w) { return Recognizer(g).run(w).accepted; }

std::optional<DerivationTree> parse(const Grammar& g, const Word& w) { return Recognizer(g).run(w).tree; }

}  // namespace mcfg
