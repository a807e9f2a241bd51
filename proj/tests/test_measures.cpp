#include <catch2/catch_amalgamated.hpp>

#include "rvi/diagram.hpp"
#include "rvi/experiments.hpp"
#include "rvi/polytope.hpp"

using namespace rvi;

static const char* kFig2 = "D iB iD C iC * A iA B";

static ClassVec<Rat> ones(int d) { return ClassVec<Rat>(d, Rat(1)); }

TEST_CASE("polytope vertices of the example") {
    auto p = MarkedPermutation::parse(kFig2);
    auto q = ones(4);
    auto poly = polytope_vertices(p, q);
    // B is the unique simple class; C and D are left double, A right double
    REQUIRE(poly.vertices.size() == 3);
    int simple = 0, dbl = 0;
    for (const auto& v : poly.vertices) {
        Rat dot(0);
        for (int c = 0; c < 4; ++c) dot += v.point[c] * q[c];
        REQUIRE(dot == Rat(1));  // nonzero vertices sit on <q, x> = 1
        if (v.b < 0) {
            ++simple;
            REQUIRE(v.a == 1);  // class B
            REQUIRE(v.weight == q[v.a]);
        } else {
            ++dbl;
            REQUIRE(v.b == 0);  // paired with the right-double class A
            REQUIRE((v.a == 2 || v.a == 3));
            REQUIRE(v.weight == q[v.a] + q[v.b]);
        }
    }
    REQUIRE(simple == 1);
    REQUIRE(dbl == 2);
}

TEST_CASE("exact measure agrees with Monte Carlo within 3 sigma") {
    auto p = MarkedPermutation::parse(kFig2);
    auto q = ones(4);
    const Rat exact = nu_whole(p, q);
    REQUIRE(exact > 0);
    Rng rng(2024);
    auto mc = nu_volume_mc(positive_cone(p), q, 200000, rng);
    REQUIRE(std::abs(mc.value - to_double(exact)) <= mc.radius);
}

TEST_CASE("change of variables both ways, exactly, on sampled arrows") {
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    Rng rng(55);
    for (int t = 0; t < 40; ++t) {
        const int v = int(rng.below(g.vertex_count()));
        const auto& p = g.vertex(v);
        ClassVec<Rat> q{rng.rational(16) + 1, rng.rational(16) + 1,
                        rng.rational(16) + 1, rng.rational(16) + 1};
        for (Side s : {Side::Left, Side::Right}) {
            auto a = Arrow::make(p, s);
            if (!a) continue;
            Path ga(p);
            ga.append(*a);
            // route one: cylinder volume at the start vertex
            const Rat direct = nu_cylinder(ga, q);
            // route two: whole polytope at the end with transported weights
            const Rat pushed = nu_whole(ga.end(), push_weights(ga, q));
            REQUIRE(direct == pushed);
        }
    }
}

TEST_CASE("branch probabilities sum to one") {
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    Rng rng(56);
    for (int t = 0; t < 25; ++t) {
        const int v = int(rng.below(g.vertex_count()));
        const auto& p = g.vertex(v);
        ClassVec<Rat> q{rng.rational(8) + 1, rng.rational(8) + 1, rng.rational(8) + 1,
                        rng.rational(8) + 1};
        Rat total(0);
        int arrows = 0;
        for (Side s : {Side::Left, Side::Right}) {
            auto a = Arrow::make(p, s);
            if (!a) continue;
            Path ga(p);
            ga.append(*a);
            total += transition_probability(q, ga);
            ++arrows;
        }
        REQUIRE(arrows >= 1);
        REQUIRE(total == Rat(1));
    }
}

TEST_CASE("homogeneity of degree -(d-1)") {
    auto p = MarkedPermutation::parse(kFig2);
    ClassVec<Rat> q{Rat(2), Rat(3, 2), Rat(1), Rat(5, 4)};
    const Rat base = nu_whole(p, q);
    for (long t : {2L, 3L}) {
        ClassVec<Rat> tq = q;
        for (auto& x : tq) x *= t;
        const Rat scaled = nu_whole(p, tq);
        REQUIRE(scaled * Rat(Int(t * t * t)) == base);
    }
}

TEST_CASE("simple-winner simple-loser probability is q_beta/(q_alpha+q_beta)") {
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    Rng rng(57);
    int found = 0;
    for (int v = 0; v < g.vertex_count() && found < 5; ++v) {
        const auto& p = g.vertex(v);
        for (Side s : {Side::Left, Side::Right}) {
            auto a = Arrow::make(p, s);
            if (!a) continue;
            if (!p.is_simple(a->winner) || !p.is_simple(a->loser)) continue;
            ClassVec<Rat> q{rng.rational(8) + 1, rng.rational(8) + 1,
                            rng.rational(8) + 1, rng.rational(8) + 1};
            Path ga(p);
            ga.append(*a);
            const Rat expect =
                q[a->loser_class()] / (q[a->winner_class()] + q[a->loser_class()]);
            REQUIRE(transition_probability(q, ga) == expect);
            ++found;
        }
    }
    REQUIRE(found >= 5);
}

TEST_CASE("weight floor: P(arrow) C^{d-1} stays above the frozen constant") {
    // the paper's constant is non-constructive; the floor below was measured
    // by exhaustive evaluation over sampled vertices and a weight grid, then
    // frozen with margin
    auto g = enumerate_class(MarkedPermutation::parse(kFig2));
    Rng rng(58);
    double min_ratio = 1e9;
    for (int t = 0; t < 60; ++t) {
        const int v = int(rng.below(g.vertex_count()));
        const auto& p = g.vertex(v);
        ClassVec<Rat> q{rng.rational(4) + Rat(1, 4), rng.rational(4) + Rat(1, 4),
                        rng.rational(4) + Rat(1, 4), rng.rational(4) + Rat(1, 4)};
        for (Side s : {Side::Left, Side::Right}) {
            auto a = Arrow::make(p, s);
            if (!a) continue;
            Path ga(p);
            ga.append(*a);
            const double prob = to_double(transition_probability(q, ga));
            const double c =
                to_double(max_weight(q)) / to_double(q[a->loser_class()]);
            min_ratio = std::min(min_ratio, prob * std::pow(std::max(c, 1.0), 3));
        }
    }
    INFO("observed floor " << min_ratio);
    REQUIRE(min_ratio >= 0.05);  // frozen candidate C3(4) with margin
}

TEST_CASE("markov arrow sampler uses the exact branch probabilities") {
    auto p = MarkedPermutation::parse(kFig2);
    auto q = ones(4);
    Rng rng(59);
    long lefts = 0, n = 4000;
    Rat pl(0);
    for (long i = 0; i < n; ++i) {
        auto st = markov_arrow_step(p, q, rng);
        if (st.arrow.side == Side::Left) {
            ++lefts;
            pl = st.probability;
        }
    }
    const double freq = double(lefts) / double(n);
    REQUIRE(std::abs(freq - to_double(pl)) < 0.03);
}

TEST_CASE("distortion experiment: monotone in C, gap exists") {
    auto p = MarkedPermutation::parse(kFig2);
    ExperimentConfig cfg;
    cfg.seed = 99;
    cfg.samples = 150;
    ClassVec<Rat> q{Rat(1), Rat(7, 4), Rat(5, 4), Rat(3, 2)};
    auto rows = distortion_experiment(p, q, {2, 4, 8, 16, 32}, cfg);
    REQUIRE(rows.size() == 5);
    REQUIRE(rows.front().probability > 0);  // non-vacuous with uneven weights
    for (std::size_t i = 1; i < rows.size(); ++i)
        REQUIRE(rows[i].probability <= rows[i - 1].probability + 1e-12);
    // existence of a level where the bad event is not certain
    bool gap = false;
    for (const auto& r : rows)
        if (r.probability < 1.0 - std::pow(r.c, -3.0)) gap = true;
    REQUIRE(gap);
}
