#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rvi/matrix.hpp"
#include "rvi/permutation.hpp"

namespace rvi {

struct Arrow {
    MarkedPermutation start;
    MarkedPermutation end;
    Side side;
    Letter winner, loser;

    static std::optional<Arrow> make(const MarkedPermutation& from, Side side) {
        auto r = from.apply(side);
        if (!r) return std::nullopt;
        return Arrow{from, std::move(r->target), side, r->winner, r->loser};
    }

    int winner_class() const { return letter_class(winner); }
    int loser_class() const { return letter_class(loser); }

    IntMat matrix() const {
        return IntMat::arrow(start.classes(), winner_class(), loser_class());
    }
};

// A path is a start vertex plus a composable arrow sequence; length 0 is the
// vertex itself.
class Path {
  public:
    explicit Path(MarkedPermutation start) : start_(std::move(start)) {}

    static Path from_arrows(std::vector<Arrow> arrows) {
        if (arrows.empty())
            throw structural_error("from_arrows needs at least one arrow");
        Path p(arrows.front().start);
        for (auto& a : arrows) p.append(std::move(a));
        return p;
    }

    // parse a word like "LRRL" starting at a vertex
    static Path from_word(const MarkedPermutation& start, const std::string& word) {
        Path p(start);
        for (char c : word) {
            Side s;
            if (c == 'L' || c == 'l') s = Side::Left;
            else if (c == 'R' || c == 'r') s = Side::Right;
            else throw structural_error("path word must consist of L/R");
            if (!p.extend(s))
                throw structural_error("operation not defined along word");
        }
        return p;
    }

    void append(Arrow a) {
        if (a.start != end())
            throw structural_error("arrows do not compose");
        arrows_.push_back(std::move(a));
    }

    bool extend(Side side) {
        auto a = Arrow::make(end(), side);
        if (!a) return false;
        arrows_.push_back(std::move(*a));
        return true;
    }

    int length() const { return int(arrows_.size()); }
    const MarkedPermutation& start() const { return start_; }
    const MarkedPermutation& end() const {
        return arrows_.empty() ? start_ : arrows_.back().end;
    }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int i) const { return arrows_[i]; }
    bool is_loop() const { return end() == start_; }

    Path concat(const Path& o) const {
        if (o.start() != end()) throw structural_error("paths do not compose");
        Path p(*this);
        for (const auto& a : o.arrows()) p.arrows_.push_back(a);
        return p;
    }

    std::string word() const {
        std::string w;
        for (const auto& a : arrows_) w += (a.side == Side::Left ? 'L' : 'R');
        return w;
    }

  private:
    MarkedPermutation start_;
    std::vector<Arrow> arrows_;
};

// B_gamma = B_gn ... B_g1; the empty path is the identity
inline IntMat path_matrix(const Path& g) {
    IntMat b = IntMat::identity(g.start().classes());
    for (const auto& a : g.arrows())
        b.left_compose_arrow(a.winner_class(), a.loser_class());
    return b;
}

struct Completeness {
    bool complete = false;  // every involution class wins somewhere
    int k = 0;              // greedy count of consecutive complete blocks
};

// greedy shortest-prefix decomposition into complete blocks; greedy maximizes
// the number of blocks for this covering objective
inline Completeness classify_completeness(const Path& g) {
    const int d = g.start().classes();
    Completeness out;
    std::vector<char> won(d, 0);
    int distinct = 0;
    for (const auto& a : g.arrows()) {
        if (!won[a.winner_class()]) {
            won[a.winner_class()] = 1;
            ++distinct;
        }
        if (distinct == d) {
            ++out.k;
            won.assign(d, 0);
            distinct = 0;
        }
    }
    out.complete = out.k >= 1;
    return out;
}

// tokens for self-overlap detection: an arrow is determined by its start
// vertex and side
inline std::vector<std::pair<std::uint64_t, int>> path_tokens(const Path& g) {
    std::vector<std::pair<std::uint64_t, int>> toks;
    toks.reserve(g.length());
    for (const auto& a : g.arrows())
        toks.emplace_back(a.start.hash(), a.side == Side::Left ? 0 : 1);
    return toks;
}

// true iff the word has a nontrivial border (proper prefix = proper suffix),
// via the KMP failure function
inline bool has_proper_border(const Path& g) {
    auto t = path_tokens(g);
    const int n = int(t.size());
    if (n == 0) return false;
    std::vector<int> fail(n, 0);
    for (int i = 1; i < n; ++i) {
        int j = fail[i - 1];
        while (j > 0 && t[i] != t[j]) j = fail[j - 1];
        if (t[i] == t[j]) ++j;
        fail[i] = j;
    }
    return fail[n - 1] > 0;
}

}  // namespace rvi
