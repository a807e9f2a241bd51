#pragma once

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rvi/path.hpp"
#include "rvi/permutation.hpp"

namespace rvi {

// Rauzy diagram: the closure of a vertex under both operations, with an
// adjacency index. Vertex 0 is the start vertex.
class RauzyDiagram {
  public:
    struct VertexArrow {
        int to = -1;
        Letter winner = kStar, loser = kStar;
        bool defined = false;
    };
    struct VertexArrows {
        VertexArrow left, right;
    };

    static RauzyDiagram enumerate(const MarkedPermutation& start) {
        RauzyDiagram g;
        g.intern(start);
        for (std::size_t cur = 0; cur < g.vertices_.size(); ++cur) {
            // vertices_ grows during the sweep; index-based loop is the point
            for (Side side : {Side::Left, Side::Right}) {
                auto r = g.vertices_[cur].apply(side);
                if (!r) continue;
                const int to = g.intern(r->target);
                VertexArrow a{to, r->winner, r->loser, true};
                if (side == Side::Left) g.adj_[cur].left = a;
                else g.adj_[cur].right = a;
                ++g.arrow_count_;
            }
        }
        return g;
    }

    int vertex_count() const { return int(vertices_.size()); }
    int arrow_count() const { return arrow_count_; }
    const MarkedPermutation& vertex(int i) const { return vertices_[i]; }
    const VertexArrows& arrows_at(int i) const { return adj_[i]; }

    const VertexArrow& out(int i, Side s) const {
        return s == Side::Left ? adj_[i].left : adj_[i].right;
    }

    std::optional<int> index_of(const MarkedPermutation& p) const {
        auto it = index_.find(key(p));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool strongly_connected() const {
        auto reach = [&](bool reverse) {
            std::vector<char> seen(vertices_.size(), 0);
            std::deque<int> q{0};
            seen[0] = 1;
            int n = 1;
            std::vector<std::vector<int>> radj;
            if (reverse) {
                radj.resize(vertices_.size());
                for (std::size_t v = 0; v < vertices_.size(); ++v) {
                    if (adj_[v].left.defined) radj[adj_[v].left.to].push_back(int(v));
                    if (adj_[v].right.defined) radj[adj_[v].right.to].push_back(int(v));
                }
            }
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                auto push = [&](int w) {
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++n;
                        q.push_back(w);
                    }
                };
                if (reverse) {
                    for (int w : radj[v]) push(w);
                } else {
                    if (adj_[v].left.defined) push(adj_[v].left.to);
                    if (adj_[v].right.defined) push(adj_[v].right.to);
                }
            }
            return n == int(vertices_.size());
        };
        return reach(false) && reach(true);
    }

    // every involution class is the winner of some arrow in the closure
    bool winners_cover_classes() const {
        const int d = vertices_.front().classes();
        std::vector<char> won(d, 0);
        int distinct = 0;
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            for (const VertexArrow* a : {&adj_[v].left, &adj_[v].right})
                if (a->defined && !won[letter_class(a->winner)]) {
                    won[letter_class(a->winner)] = 1;
                    if (++distinct == d) return true;
                }
        return false;
    }

    // FNV over sorted row texts: stable content hash of the class
    std::uint64_t content_hash() const {
        std::vector<std::string> rows;
        rows.reserve(vertices_.size());
        for (const auto& v : vertices_) rows.push_back(v.row_text());
        std::sort(rows.begin(), rows.end());
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& r : rows)
            for (char c : r) {
                h ^= std::uint64_t(static_cast<unsigned char>(c));
                h *= 0x100000001b3ULL;
            }
        return h;
    }

    // BFS tree rooted at `root`, following arrows forward
    std::vector<std::pair<int, Side>> bfs_parents(int root = 0) const {
        std::vector<std::pair<int, Side>> par(vertices_.size(), {-1, Side::Left});
        std::vector<char> seen(vertices_.size(), 0);
        std::deque<int> q{root};
        seen[root] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (Side s : {Side::Left, Side::Right}) {
                const auto& a = out(v, s);
                if (a.defined && !seen[a.to]) {
                    seen[a.to] = 1;
                    par[a.to] = {v, s};
                    q.push_back(a.to);
                }
            }
        }
        return par;
    }

    // path root -> v along the BFS tree, as (vertex, side) steps
    std::vector<std::pair<int, Side>> tree_path(
        const std::vector<std::pair<int, Side>>& par, int v, int root = 0) const {
        std::vector<std::pair<int, Side>> rev;
        while (v != root) {
            auto [p, s] = par[v];
            if (p < 0) throw structural_error("vertex not reachable from tree root");
            rev.emplace_back(p, s);
            v = p;
        }
        return {rev.rbegin(), rev.rend()};
    }

    Path make_path(const std::vector<std::pair<int, Side>>& steps) const {
        if (steps.empty()) return Path(vertices_[0]);
        Path p(vertices_[steps.front().first]);
        for (auto [v, s] : steps) {
            auto a = Arrow::make(vertices_[v], s);
            if (!a) throw structural_error("tree path step not defined");
            p.append(std::move(*a));
        }
        return p;
    }

  private:
    static std::string key(const MarkedPermutation& p) { return p.row_text(); }

    int intern(const MarkedPermutation& p) {
        auto it = index_.find(key(p));
        if (it != index_.end()) return it->second;
        const int id = int(vertices_.size());
        index_.emplace(key(p), id);
        vertices_.push_back(p);
        adj_.emplace_back();
        return id;
    }

    std::vector<MarkedPermutation> vertices_;
    std::vector<VertexArrows> adj_;
    std::unordered_map<std::string, int> index_;
    int arrow_count_ = 0;
};

// Operational irreducibility: the forward closure is strongly connected and
// every class wins on some arrow inside it. Permutations whose closure is
// not strongly connected are rejected rather than silently classified.
inline bool is_irreducible(const MarkedPermutation& p) {
    if (!p.validate()) return false;
    RauzyDiagram g = RauzyDiagram::enumerate(p);
    return g.strongly_connected() && g.winners_cover_classes();
}

inline RauzyDiagram enumerate_class(const MarkedPermutation& p) {
    if (!p.validate())
        throw domain_error("permutation fails the subset condition");
    RauzyDiagram g = RauzyDiagram::enumerate(p);
    if (!g.strongly_connected())
        throw domain_error("closure is not strongly connected; not irreducible");
    if (!g.winners_cover_classes())
        throw domain_error("some involution class never wins; not irreducible");
    return g;
}

}  // namespace rvi
