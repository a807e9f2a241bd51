#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rvi/diagram.hpp"
#include "rvi/io.hpp"
#include "rvi/path.hpp"
#include "rvi/permutation.hpp"
#include "rvi/rng.hpp"

using namespace rvi;

// the running example of the d = 4 class
static const char* kFig2 = "D iB iD C iC * A iA B";

TEST_CASE("row text round trips") {
    auto p = MarkedPermutation::parse(kFig2);
    REQUIRE(p.row_text() == kFig2);
    REQUIRE(p.classes() == 4);
    REQUIRE(p.size() == 9);
    REQUIRE(p.star_position() == 5);
}

TEST_CASE("parse rejects malformed rows") {
    REQUIRE_THROWS_AS(MarkedPermutation::parse("A iA B iB"), structural_error);
    REQUIRE_THROWS_AS(MarkedPermutation::parse("A iA * B iB *"), structural_error);
    REQUIRE_THROWS_AS(MarkedPermutation::parse("A iA * B B iB iB"), structural_error);
}

TEST_CASE("validate follows the subset condition") {
    REQUIRE(MarkedPermutation::parse(kFig2).validate());
    // mirror-symmetric reducible case: i(A_l) = A_r
    REQUIRE_FALSE(MarkedPermutation::parse("A B * iB iA").validate());
    // both inclusions fail, so the row is in the admissible set even though
    // it is not irreducible (no operation is defined at it)
    auto blocked = MarkedPermutation::parse("A iA * B iB");
    REQUIRE(blocked.validate());
    REQUIRE_FALSE(blocked.apply(Side::Left).has_value());
    REQUIRE_FALSE(blocked.apply(Side::Right).has_value());
    REQUIRE_FALSE(is_irreducible(blocked));
}

TEST_CASE("left and right operations on the example") {
    auto p = MarkedPermutation::parse(kFig2);
    auto l = p.apply(Side::Left);
    REQUIRE(l);
    CHECK(l->target.row_text() == "D iB iD B C iC * A iA");
    CHECK(p.alphabet().letter_name(l->winner) == "D");
    CHECK(p.alphabet().letter_name(l->loser) == "B");

    // the right operation moves D just before iB, which leaves the row fixed
    auto r = p.apply(Side::Right);
    REQUIRE(r);
    CHECK(r->target == p);
    CHECK(p.alphabet().letter_name(r->winner) == "B");
    CHECK(p.alphabet().letter_name(r->loser) == "D");
}

TEST_CASE("operation is absent when the moved row is invalid or loser = i(winner)") {
    // rightmost = i(leftmost)
    auto p = MarkedPermutation::parse("A B iB * C iC iA");
    REQUIRE(p.validate());
    REQUIRE_FALSE(p.apply(Side::Left).has_value());
}

TEST_CASE("fig2 class enumeration matches the frozen census") {
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    // golden values from the independent BFS oracle (tests/oracle/oracle.py)
    CHECK(g.vertex_count() == 8256);
    CHECK(g.arrow_count() == 13056);
    CHECK(g.strongly_connected());
    CHECK(g.winners_cover_classes());
}

TEST_CASE("enumeration is start-vertex independent") {
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    Rng rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const int v = int(rng.below(g.vertex_count()));
        auto g2 = enumerate_class(g.vertex(v));
        REQUIRE(g2.vertex_count() == g.vertex_count());
        REQUIRE(g2.arrow_count() == g.arrow_count());
        REQUIRE(g2.content_hash() == g.content_hash());
    }
}

TEST_CASE("every arrow matrix is unimodular and nonnegative") {
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (Side s : {Side::Left, Side::Right}) {
            const auto& a = g.out(v, s);
            if (!a.defined) continue;
            IntMat b = IntMat::arrow(4, letter_class(a.winner), letter_class(a.loser));
            REQUIRE(b.determinant() == 1);
            REQUIRE(b.nonnegative());
        }
    }
}

TEST_CASE("path matrices compose in reverse order") {
    auto p = MarkedPermutation::parse(kFig2);
    Path g(p);
    REQUIRE(path_matrix(g) == IntMat::identity(4));  // empty path -> identity
    for (int i = 0; i < 12; ++i) {
        Side want = i % 3 == 0 ? Side::Left : Side::Right;
        if (!g.extend(want))
            REQUIRE(g.extend(want == Side::Left ? Side::Right : Side::Left));
    }
    // split and compare B_{g1 g2} = B_{g2} B_{g1}
    std::vector<Arrow> first(g.arrows().begin(), g.arrows().begin() + 5);
    std::vector<Arrow> second(g.arrows().begin() + 5, g.arrows().end());
    Path g1 = Path::from_arrows(first), g2 = Path::from_arrows(second);
    REQUIRE((path_matrix(g2) * path_matrix(g1)) == path_matrix(g));
    REQUIRE(path_matrix(g).determinant() == 1);
}

TEST_CASE("single arrow matrix has the unit in the loser row, winner column") {
    auto p = MarkedPermutation::parse(kFig2);
    auto a = Arrow::make(p, Side::Left);
    REQUIRE(a);
    IntMat b = a->matrix();
    // winner D (class 3), loser B (class 1): B e_D = e_D + e_B
    REQUIRE(b(1, 3) == 1);
    REQUIRE(b(3, 3) == 1);
    int ones = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (b(i, j) != 0) ++ones;
    REQUIRE(ones == 5);
}

TEST_CASE("column sums never decrease under concatenation") {
    auto p = MarkedPermutation::parse(kFig2);
    Rng rng(11);
    Path g(p);
    IntMat prev = path_matrix(g);
    for (int i = 0; i < 40; ++i) {
        Side s = rng.below(2) ? Side::Left : Side::Right;
        if (!g.extend(s)) s = (s == Side::Left ? Side::Right : Side::Left);
        if (g.length() == i) REQUIRE(g.extend(s));
        IntMat cur = path_matrix(g);
        for (int c = 0; c < 4; ++c) {
            REQUIRE(cur.column_sum(c) >= prev.column_sum(c));
            REQUIRE(cur.column_sum(c) >= 1);
        }
        prev = cur;
    }
}

TEST_CASE("completeness classification is greedy") {
    auto p = MarkedPermutation::parse(kFig2);
    // a long right run only ever lets B win at this vertex (self loop)
    Path g(p);
    for (int i = 0; i < 6; ++i) REQUIRE(g.extend(Side::Right));
    auto c = classify_completeness(g);
    CHECK_FALSE(c.complete);
    CHECK(c.k == 0);
}

TEST_CASE("diagram exports carry vertices and labeled arrows") {
    // a small class keeps the golden export readable
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    json j = diagram_json(g);
    REQUIRE(j["vertices"].size() == 8256);
    REQUIRE(j["arrows"].size() == 13056);
    const auto& a0 = j["arrows"][0];
    REQUIRE(a0.contains("from"));
    REQUIRE(a0.contains("to"));
    REQUIRE(a0.contains("side"));
    REQUIRE(a0.contains("winner"));
    REQUIRE(a0.contains("loser"));
    std::string dot = diagram_dot(g);
    REQUIRE(dot.find("digraph") != std::string::npos);
    REQUIRE(dot.find(kFig2) != std::string::npos);
}

TEST_CASE("apply_operation equivariance under involution-preserving relabeling") {
    auto p = MarkedPermutation::parse(kFig2);
    // relabel classes by a cyclic shift A->B->C->D->A, keeping the pairing
    auto alph = p.alphabet_ptr();
    std::vector<Letter> row;
    for (int q = 0; q < p.size(); ++q) {
        Letter a = p.at(q);
        if (a == kStar) row.push_back(kStar);
        else row.push_back(2 * ((letter_class(a) + 1) % 4) + (is_primary(a) ? 0 : 1));
    }
    MarkedPermutation relabeled(alph, row);
    for (Side s : {Side::Left, Side::Right}) {
        auto r1 = p.apply(s), r2 = relabeled.apply(s);
        REQUIRE(r1.has_value() == r2.has_value());
        if (r1) {
            REQUIRE(letter_class(r2->winner) == (letter_class(r1->winner) + 1) % 4);
            REQUIRE(letter_class(r2->loser) == (letter_class(r1->loser) + 1) % 4);
        }
    }
}
