#include "mcfg/derivation.hpp"
#include "mcfg/error.hpp"
#include "mcfg/preorder.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace mcfg;
using namespace mcfg::testing;

namespace {

// build_grammar(chain(2)): S($1.1) <- A, A(_) <-, rho_1 = A(a1 $1.1) <- A, rho_2 = A(a1 $1.1 a2) <- A.
struct ChainTwo {
    Grammar g = build_grammar(Preorder::chain(2));
    const ProductionRule& s_rule() const { return g.rules[0]; }
    const ProductionRule& empty() const { return g.rules[1]; }
    const ProductionRule& rho1() const { return g.rules[2]; }
    const ProductionRule& rho2() const { return g.rules[3]; }
    DerivationTree leaf() const { return {empty(), {}}; }
    DerivationTree chain3() const { return {rho1(), {{rho2(), {leaf()}}}}; }
};

}  // namespace

TEST_SUITE("derivation") {

TEST_CASE("term_of") {
    ChainTwo c;
    SUBCASE("terminating node is its own term") {
        ProductionRule r{nt("A", 2), {{}, {}}, {}};
        CHECK(term_of(DerivationTree{r, {}}) == Term{nt("A", 2), {Word{}, Word{}}});
    }
    SUBCASE("one substitution step") {
        CHECK(term_of(DerivationTree{c.rho2(), {c.leaf()}}) == Term{nt("A"), {word({"a1", "a2"})}});
    }
    SUBCASE("three-node chain") {
        // Replay by hand through apply_rule.
        std::vector<Term> base{apply_rule(c.empty(), {})};
        std::vector<Term> mid{apply_rule(c.rho2(), base)};
        const Term expected = apply_rule(c.rho1(), mid);
        CHECK(expected == Term{nt("A"), {word({"a1", "a1", "a2"})}});
        CHECK(term_of(c.chain3()) == expected);
    }
    SUBCASE("yield of a start-rooted tree") {
        CHECK(yield(DerivationTree{c.s_rule(), {c.chain3()}}) == word({"a1", "a1", "a2"}));
    }
}

TEST_CASE("term_of names the node that breaks the invariants") {
    ChainTwo c;
    DerivationTree bad{c.rho1(), {{c.rho2(), {}}}};
    try {
        term_of(bad);
        FAIL("expected StructuralError");
    } catch (const StructuralError& e) {
        CHECK(e.path() == "[0]");
    }
    DerivationTree wrong_head{c.s_rule(), {{g_pump().rules[1], {}}}};
    CHECK_THROWS_AS(term_of(wrong_head), StructuralError);
}

TEST_CASE("letter_counts") {
    ChainTwo c;
    SUBCASE("normal-form terminating node") {
        auto g = make_grammar({{nt("S"), {{t("a")}}, {}}}, "S");
        auto counts = letter_counts(DerivationTree{g.rules[0], {}});
        CHECK(counts.total() == 1);
    }
    SUBCASE("chain tree") {
        auto counts = letter_counts(c.chain3());
        CHECK(counts["a1"] == 2);
        CHECK(counts["a2"] == 1);
        CHECK(counts.total() == 3);
    }
    SUBCASE("epsilon-only rules give zero counts") {
        auto g = make_grammar({{nt("S"), {{x(1, 1), x(2, 1)}}, {nt("S"), nt("S")}}, {nt("S"), {{}}, {}}}, "S");
        DerivationTree leaf{g.rules[1], {}};
        DerivationTree d{g.rules[0], {{g.rules[0], {leaf, leaf}}, leaf}};
        CHECK(letter_counts(d).total() == 0);
        CHECK(letter_counts(d).counts().empty());
    }
}

TEST_CASE("validate_tree") {
    ChainTwo c;
    SUBCASE("trees assembled from the grammar's rules") {
        for (const auto& d : witness_trees(c.g, 6)) CHECK(validate_tree(d, c.g).valid);
    }
    SUBCASE("leaf labelled with a non-terminating rule") {
        auto check = validate_tree(DerivationTree{c.rho1(), {}}, c.g);
        CHECK_FALSE(check.valid);
        CHECK_FALSE(check.violations.empty());
    }
    SUBCASE("rule absent from the grammar") {
        ProductionRule foreign{nt("A"), {{t("a2"), x(1, 1)}}, {nt("A")}};
        CHECK_FALSE(validate_tree(DerivationTree{foreign, {c.leaf()}}, c.g).valid);
    }
    SUBCASE("child producing the wrong non-terminal") {
        auto g = g_pump();
        DerivationTree d{g.rules[0], {{g.rules[1], {}}, {g.rules[1], {}}}};
        CHECK_FALSE(validate_tree(d, g).valid);
    }
}

TEST_CASE("substitute_subtree") {
    ChainTwo c;
    SUBCASE("identity substitution") {
        auto d = c.chain3();
        for (const auto& p : node_paths(d)) CHECK(substitute_subtree(d, p, subtree_at(d, p)) == d);
    }
    SUBCASE("labels must agree exactly") {
        CHECK_THROWS_AS(substitute_subtree(c.chain3(), {0}, c.leaf()), LabelMismatch);
    }
    SUBCASE("relaxed mode only needs the same left-hand side") {
        auto out = substitute_subtree(c.chain3(), {0}, c.leaf(), LabelMatch::same_lhs);
        CHECK(term_of(out) == Term{nt("A"), {word({"a1"})}});
        CHECK(validate_tree(out, c.g).valid);
    }
    SUBCASE("bad path") {
        CHECK_THROWS_AS(substitute_subtree(c.chain3(), {0, 0, 0}, c.leaf()), PathError);
        CHECK_THROWS_AS(substitute_subtree(c.chain3(), {1}, c.leaf()), PathError);
    }
    SUBCASE("outer same-rule subtree replaced by the inner one shrinks the yield") {
        const auto g = g_pump();
        const auto d = g_pump_spine(3);
        REQUIRE(subtree_at(d, {}).label == subtree_at(d, {0}).label);
        const auto before = d;
        auto out = substitute_subtree(d, {}, subtree_at(d, {0}));
        CHECK(validate_tree(out, g).valid);
        CHECK(yield(out) == repeat("a", 2));
        CHECK(yield(out).size() < yield(d).size());
        CHECK(d == before);
    }
}

TEST_CASE("property: substitution keeps the root head and leaves inputs untouched") {
    std::mt19937 rng(5);
    const auto g = g_pump();
    auto pool = witness_trees(g, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& d = pool[rng() % pool.size()];
        auto paths = node_paths(d);
        const auto& p = paths[rng() % paths.size()];
        const auto label = subtree_at(d, p).label;
        for (const auto& r : pool) {
            if (r.label != label) continue;
            const auto d_copy = d;
            const auto r_copy = r;
            auto out = substitute_subtree(d, p, r);
            CHECK(term_of(out).head == term_of(d).head);
            CHECK(validate_tree(out, g).valid);
            CHECK(d == d_copy);
            CHECK(r == r_copy);
            break;
        }
    }
}

TEST_CASE("count identities on normal-form trees") {
    const auto g = g_pump();
    REQUIRE(is_normal_form(g).holds);
    for (const auto& d : witness_trees(g, 7)) CHECK(count_identity_failures(d).empty());
    // The construction is not in normal form: its rho nodes add letters.
    ChainTwo c;
    CHECK_FALSE(count_identity_failures(c.chain3()).empty());
}

TEST_CASE("validate_tree implies term_of succeeds") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_grammar(rng);
        for (const auto& d : witness_trees(g, 4)) {
            REQUIRE(validate_tree(d, g).valid);
            CHECK_NOTHROW(term_of(d));
            CHECK(letter_balance_holds(d));
        }
    }
}

TEST_CASE("text renderings") {
    ChainTwo c;
    const DerivationTree d{c.rho2(), {c.leaf()}};
    CHECK(to_string(d) == "[A(a1 $1.1 a2) <- A($1.1)] ( [A(_) <-] )");
    CHECK(render_tree(d) == "A(a1 $1.1 a2) <- A($1.1)  =>  A(a1 a2)\n  A(_) <-  =>  A(_)\n");
}

}  // TEST_SUITE
