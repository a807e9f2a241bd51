#pragma once

#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "rvi/cones.hpp"
#include "rvi/diagram.hpp"
#include "rvi/path.hpp"

namespace rvi {

// push an integer tau forward along a path: tau' = (B_gamma^T)^{-1} tau,
// arrow by arrow (stays integral)
template <class S>
std::vector<S> push_tau(const Path& g, std::vector<S> tau) {
    for (const auto& a : g.arrows())
        transport_tau_forward(tau, a.winner_class(), a.loser_class());
    return tau;
}

template <class S>
std::vector<S> pull_tau(const Path& g, std::vector<S> tau) {
    for (auto it = g.arrows().rbegin(); it != g.arrows().rend(); ++it)
        transport_tau_backward(tau, it->winner_class(), it->loser_class());
    return tau;
}

// strongly positive: B_gamma strictly positive and every extreme ray of the
// closed cone at the start maps into the open cone at the end. Strictness on
// generators is sufficient: a nonzero conic combination keeps every strict
// inequality strict.
inline bool is_strongly_positive(const Path& g) {
    if (!path_matrix(g).strictly_positive()) return false;
    const ThetaCone end_cone(g.end());
    for (const auto& ray : extreme_rays_theta_closure(g.start())) {
        std::vector<Rat> tau(ray.size());
        for (std::size_t i = 0; i < ray.size(); ++i) tau[i] = Rat(ray[i]);
        const auto cls = in_theta(end_cone, push_tau(g, std::move(tau)));
        if (cls.region != ThetaRegion::Interior) return false;
    }
    return true;
}

// neat: a strongly positive loop with no proper self-overlap
inline bool is_neat(const Path& g) {
    if (!g.is_loop() || g.length() == 0) return false;
    if (has_proper_border(g)) return false;
    return is_strongly_positive(g);
}

// exact certificate data for a strongly positive path: the ray images and
// the minimum slack of each strict inequality over all rays
struct PositivityCertificate {
    bool positive = false;
    bool strongly_positive = false;
    bool neat = false;
    std::vector<std::vector<Int>> rays;       // extreme rays at the start
    std::vector<std::vector<Rat>> ray_images; // pushed to the end vertex
    std::vector<Rat> margins;                 // per end-cone inequality
};

inline PositivityCertificate certify(const Path& g) {
    PositivityCertificate cert;
    cert.positive = path_matrix(g).strictly_positive();
    cert.rays = extreme_rays_theta_closure(g.start());
    const ThetaCone end_cone(g.end());
    cert.margins.assign(end_cone.ineqs.size(), Rat(0));
    bool all_interior = true;
    bool first = true;
    for (const auto& ray : cert.rays) {
        std::vector<Rat> tau(ray.size());
        for (std::size_t i = 0; i < ray.size(); ++i) tau[i] = Rat(ray[i]);
        auto img = push_tau(g, std::move(tau));
        for (std::size_t i = 0; i < end_cone.ineqs.size(); ++i) {
            const Rat slack = end_cone.dot(end_cone.ineqs[i], img);
            if (first || slack < cert.margins[i]) cert.margins[i] = slack;
            if (!(slack > 0)) all_interior = false;
        }
        first = false;
        cert.ray_images.push_back(std::move(img));
    }
    cert.strongly_positive = cert.positive && all_interior && !cert.rays.empty();
    cert.neat = cert.strongly_positive && g.is_loop() && !has_proper_border(g);
    return cert;
}

// ---------------------------------------------------------------------------
// loop construction

// shortest path (BFS) between two diagram vertices, as (vertex, side) steps
inline std::optional<std::vector<std::pair<int, Side>>> shortest_path(
    const RauzyDiagram& g, int from, int to,
    std::optional<Side> required_last = std::nullopt) {
    // BFS over (vertex) for plain search, or small Dijkstra-like BFS over
    // (vertex, last-side) when the final arrow side is constrained
    struct Node {
        int v;
        int last;  // 0 left, 1 right, -1 none
    };
    std::vector<std::array<int, 2>> prev(g.vertex_count(), {-2, -2});
    std::vector<std::array<std::pair<int, int>, 2>> from_state(
        g.vertex_count(), {std::pair{-1, -1}, std::pair{-1, -1}});
    std::deque<Node> q;
    auto push = [&](int v, int last, int pv, int plast) {
        if (prev[v][last] != -2) return;
        prev[v][last] = 0;
        from_state[v][last] = {pv, plast};
        q.push_back({v, last});
    };
    for (Side s : {Side::Left, Side::Right}) {
        const auto& a = g.out(from, s);
        if (a.defined) push(a.to, s == Side::Left ? 0 : 1, -1, -1);
    }
    while (!q.empty()) {
        auto [v, last] = q.front();
        q.pop_front();
        const bool done = v == to && (!required_last ||
                                      (*required_last == Side::Left) == (last == 0));
        if (done) {
            std::vector<std::pair<int, Side>> rev;
            int cv = v, cl = last;
            while (cv != -1) {
                auto [pv, pl] = from_state[cv][cl];
                const int src = (pv == -1) ? from : pv;
                rev.emplace_back(src, cl == 0 ? Side::Left : Side::Right);
                cv = pv;
                cl = pl;
                if (pv == -1) break;
            }
            return std::vector<std::pair<int, Side>>(rev.rbegin(), rev.rend());
        }
        for (Side s : {Side::Left, Side::Right}) {
            const auto& a = g.out(v, s);
            if (a.defined) push(a.to, s == Side::Left ? 0 : 1, v, last);
        }
    }
    return std::nullopt;
}

// a k-complete loop at base, built greedily: repeatedly extend by the
// shortest continuation whose winners cover the remaining classes, then
// close back to base
inline std::optional<Path> find_complete_loop(const RauzyDiagram& g, int base, int k) {
    const int d = g.vertex(0).classes();
    Path loop(g.vertex(base));
    int cur = base;
    for (int block = 0; block < k; ++block) {
        std::vector<char> won(d, 0);
        int distinct = 0;
        while (distinct < d) {
            // BFS to the nearest arrow whose winner class is uncovered
            std::vector<int> prevv(g.vertex_count(), -2);
            std::vector<Side> prevs(g.vertex_count(), Side::Left);
            std::deque<int> q{cur};
            prevv[cur] = -1;
            int found_v = -1;
            Side found_s = Side::Left;
            while (!q.empty() && found_v < 0) {
                int v = q.front();
                q.pop_front();
                for (Side s : {Side::Left, Side::Right}) {
                    const auto& a = g.out(v, s);
                    if (!a.defined) continue;
                    if (!won[letter_class(a.winner)]) {
                        found_v = v;
                        found_s = s;
                        break;
                    }
                    if (prevv[a.to] == -2) {
                        prevv[a.to] = v;
                        prevs[a.to] = s;
                        q.push_back(a.to);
                    }
                }
            }
            if (found_v < 0) return std::nullopt;
            std::vector<std::pair<int, Side>> steps;
            int v = found_v;
            while (v != cur) {
                steps.emplace_back(prevv[v], prevs[v]);
                v = prevv[v];
            }
            std::reverse(steps.begin(), steps.end());
            steps.emplace_back(found_v, found_s);
            for (auto [sv, ss] : steps) {
                auto a = Arrow::make(g.vertex(sv), ss);
                const int wc = a->winner_class();
                loop.append(std::move(*a));
                if (!won[wc]) {
                    won[wc] = 1;
                    ++distinct;
                }
                cur = *g.index_of(loop.end());
            }
        }
    }
    if (cur != base) {
        auto back = shortest_path(g, cur, base);
        if (!back) return std::nullopt;
        for (auto [v, s] : *back) {
            auto a = Arrow::make(g.vertex(v), s);
            loop.append(std::move(*a));
        }
    }
    return loop;
}

// length of the pure right-arrow cycle through v, or 0 if the right orbit
// leaves v and never returns
inline int right_cycle_length(const RauzyDiagram& g, int v) {
    int cur = v;
    for (int steps = 1; steps <= g.vertex_count() + 1; ++steps) {
        const auto& a = g.out(cur, Side::Right);
        if (!a.defined) return 0;
        cur = a.to;
        if (cur == v) return steps;
    }
    return 0;
}

// Neat loop search: beam search over loops at a handful of bases, scored by
// the product of matrix column sums (a proxy for the cylinder measure, which
// controls the waiting time of the section return map), then certified
// exactly. Deterministic for fixed caps.
inline std::optional<Path> find_neat_loop(const RauzyDiagram& g, int base_hint = -1,
                                          int length_cap = 18,
                                          std::size_t beam_width = 4000) {
    const int d = g.vertex(0).classes();
    if (d > 8) throw budget_error("neat loop search is sized for small classes");
    std::vector<int> bases;
    if (base_hint >= 0) bases.push_back(base_hint);
    for (int v = 0; v < g.vertex_count() && int(bases.size()) < 12; ++v)
        if (right_cycle_length(g, v) >= 1 && v != base_hint) bases.push_back(v);

    struct Node {
        std::vector<std::pair<int, Side>> steps;
        int at;
        std::array<std::array<long, 8>, 8> b;
        double score;
    };
    std::optional<Path> best;
    double best_score = 1e300;
    for (int base : bases) {
        Node root;
        root.at = base;
        root.score = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) root.b[i][j] = (i == j);
        std::vector<Node> beam{root};
        for (int len = 1; len <= length_cap; ++len) {
            std::vector<Node> next;
            next.reserve(2 * beam.size());
            for (const auto& n : beam) {
                for (Side s : {Side::Left, Side::Right}) {
                    const auto& a = g.out(n.at, s);
                    if (!a.defined) continue;
                    Node m = n;
                    m.steps.emplace_back(n.at, s);
                    m.at = a.to;
                    const int w = letter_class(a.winner), l = letter_class(a.loser);
                    for (int j = 0; j < d; ++j) m.b[l][j] += m.b[w][j];
                    m.score = 0;
                    for (int j = 0; j < d; ++j) {
                        long col = 0;
                        for (int i = 0; i < d; ++i) col += m.b[i][j];
                        m.score += std::log(double(col));
                    }
                    next.push_back(std::move(m));
                }
            }
            std::sort(next.begin(), next.end(),
                      [](const Node& a, const Node& b) { return a.score < b.score; });
            if (next.size() > beam_width) next.resize(beam_width);
            for (const auto& n : next) {
                if (n.at != base || n.score >= best_score) continue;
                bool positive = true;
                for (int i = 0; i < d && positive; ++i)
                    for (int j = 0; j < d; ++j)
                        if (n.b[i][j] <= 0) { positive = false; break; }
                if (!positive) continue;
                Path lp = g.make_path(n.steps);
                if (has_proper_border(lp)) continue;
                if (!is_strongly_positive(lp)) continue;
                best = std::move(lp);
                best_score = n.score;
            }
            beam = std::move(next);
        }
        if (best && base_hint >= 0) break;
    }
    return best;
}

// the certified section data: a neat strongly positive loop at its base
struct SectionSpec {
    Path loop;            // gamma*, starts and ends at the base vertex
    IntMat loop_matrix;   // B_{gamma*}

    explicit SectionSpec(Path l) : loop(std::move(l)), loop_matrix(path_matrix(loop)) {
        if (!loop.is_loop()) throw domain_error("section loop must close up");
    }
    const MarkedPermutation& base() const { return loop.start(); }
};

}  // namespace rvi
