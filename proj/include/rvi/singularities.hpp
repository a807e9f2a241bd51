#pragma once

#include <map>
#include <numeric>
#include <vector>

#include "rvi/permutation.hpp"

namespace rvi {

// Pairs (token, side) over the row tokens (letters and the marker) carry the
// identifications that wind around the ends of the zippered rectangle
// surface:
//   adjacent tokens in the row and in the rearranged row identify
//   (left token, R) ~ (right token, L), and the two outer identifications
//   glue (rightmost, R) ~ (i(leftmost), R) and (leftmost, L) ~ (i(rightmost), L).
// Letter-letter adjacencies contribute a half-turn of cone angle each; the
// marker chains and the outer identifications pinch through marked points
// and contribute none. (The angle bookkeeping is pinned by the genus and
// dimension identities; see the stratum checks below.)
struct SingularityTable {
    struct Class {
        std::vector<std::pair<Letter, char>> members;  // (letter or kStar, 'L'/'R')
        int two_k = 0;      // number of letter-letter adjacency links inside
        bool irregular = false;  // touches a marker chain or outer identification
        int upstairs_multiplicity() const { return two_k - 2; }  // angle pi(l+2)
    };
    std::vector<Class> classes;
    // class index of each pair, addressed as pair_id below
    std::vector<int> owner;

    static int pair_id(const MarkedPermutation& p, Letter a, char side) {
        const int base = (a == kStar) ? 2 * p.alphabet().letters() : 2 * a;
        return base + (side == 'R' ? 1 : 0);
    }
    int class_of(const MarkedPermutation& p, Letter a, char side) const {
        return owner[pair_id(p, a, side)];
    }
};

namespace detail {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};
}  // namespace detail

inline SingularityTable singularities(const MarkedPermutation& p) {
    const int letters = p.alphabet().letters();
    const int n_pairs = 2 * letters + 2;
    detail::UnionFind uf(n_pairs);
    auto id = [&](Letter a, char s) { return SingularityTable::pair_id(p, a, s); };

    const auto row = p.row();
    const auto bar = p.bar_row();
    std::vector<std::pair<int, int>> ordinary_links;  // (pair_id, pair_id)
    for (const auto& rw : {row, bar}) {
        for (std::size_t k = 0; k + 1 < rw.size(); ++k) {
            const int a = id(rw[k], 'R'), b = id(rw[k + 1], 'L');
            uf.unite(a, b);
            if (rw[k] != kStar && rw[k + 1] != kStar) ordinary_links.emplace_back(a, b);
        }
    }
    const Letter al = p.leftmost(), ar = p.rightmost();
    uf.unite(id(ar, 'R'), id(partner(al), 'R'));
    uf.unite(id(al, 'L'), id(partner(ar), 'L'));

    // irregular pair slots: the two marker chains plus the outer ones
    std::vector<int> irregular = {
        id(kStar, 'L'), id(kStar, 'R'),
        id(row[p.star_position() + 1], 'L'), id(row[p.star_position() - 1], 'R'),
        id(ar, 'R'), id(partner(al), 'R'), id(al, 'L'), id(partner(ar), 'L')};
    {
        // bar-row neighbors of the marker
        int sb = -1;
        for (std::size_t k = 0; k < bar.size(); ++k)
            if (bar[k] == kStar) sb = int(k);
        irregular.push_back(id(bar[sb + 1], 'L'));
        irregular.push_back(id(bar[sb - 1], 'R'));
    }

    SingularityTable out;
    out.owner.assign(n_pairs, -1);
    std::map<int, int> root_to_class;
    auto cls_of_root = [&](int r) {
        auto it = root_to_class.find(r);
        if (it != root_to_class.end()) return it->second;
        const int c = int(out.classes.size());
        root_to_class.emplace(r, c);
        out.classes.emplace_back();
        return c;
    };
    auto add_member = [&](Letter a, char s) {
        const int pid = id(a, s);
        const int c = cls_of_root(uf.find(pid));
        out.owner[pid] = c;
        out.classes[c].members.emplace_back(a, s);
    };
    for (Letter a = 0; a < letters; ++a) {
        add_member(a, 'L');
        add_member(a, 'R');
    }
    add_member(kStar, 'L');
    add_member(kStar, 'R');
    for (const auto& [a, b] : ordinary_links)
        out.classes[cls_of_root(uf.find(a))].two_k += 1;
    for (int pid : irregular)
        out.classes[cls_of_root(uf.find(pid))].irregular = true;
    for (const auto& c : out.classes)
        if (c.two_k <= 0 || c.two_k % 2 != 0)
            throw numeric_error("singularity class with invalid angle count");
    return out;
}

// Stratum bookkeeping: upstairs multiplicities from the singularity table,
// the involution action on classes, and the quotient data of the
// half-translation surface downstairs.
struct StratumData {
    std::vector<int> upstairs;  // multiplicities ltilde, sorted
    int genus_upstairs = 0;

    struct DownPoint {
        int multiplicity;        // -1 pole, 0 removable marked, >=1 zero
        bool from_fixed_class;   // lifted to a single involution-fixed point
        int upstairs_multiplicity;  // of each lift
    };
    std::vector<DownPoint> downstairs;  // sorted by multiplicity
    int genus_downstairs = 0;
    int poles = 0;                       // k in the symbol (k, nu, eps)
    std::map<int, int> nu;               // order -> count, orders >= 1
    int epsilon = -1;
    std::map<int, int> eta;              // eta(2i) = # fixed upstairs points of mult 2i
    int fixed_classes = 0, swapped_orbits = 0;

    bool operator==(const StratumData& o) const {
        return upstairs == o.upstairs && genus_upstairs == o.genus_upstairs &&
               genus_downstairs == o.genus_downstairs && poles == o.poles &&
               nu == o.nu && eta == o.eta;
    }
    bool operator!=(const StratumData& o) const { return !(*this == o); }
};

inline StratumData stratum(const MarkedPermutation& p) {
    const SingularityTable table = singularities(p);
    StratumData out;
    int total_up = 0;
    for (const auto& c : table.classes) {
        out.upstairs.push_back(c.upstairs_multiplicity());
        total_up += c.upstairs_multiplicity();
    }
    std::sort(out.upstairs.begin(), out.upstairs.end());
    if (total_up % 4 != 0)
        throw numeric_error("upstairs multiplicities violate sum = 4g-4");
    out.genus_upstairs = total_up / 4 + 1;

    // involution on pair slots: (a, Y) -> (i(a), other Y); the marker is fixed
    auto iact = [&](Letter a, char s) {
        return std::pair<Letter, char>(a == kStar ? kStar : partner(a),
                                       s == 'L' ? 'R' : 'L');
    };
    const int ncls = int(table.classes.size());
    std::vector<int> image(ncls, -1);
    for (int c = 0; c < ncls; ++c) {
        for (const auto& [a, s] : table.classes[c].members) {
            auto [ia, is] = iact(a, s);
            const int m = table.owner[SingularityTable::pair_id(p, ia, is)];
            if (image[c] == -1) image[c] = m;
            else if (image[c] != m)
                throw numeric_error("involution does not permute singularity classes");
        }
    }
    std::vector<char> used(ncls, 0);
    int total_down = 0;
    for (int c = 0; c < ncls; ++c) {
        if (used[c]) continue;
        const int m = image[c];
        used[c] = 1;
        const int k = table.classes[c].two_k / 2;
        if (m == c) {
            if (k % 2 == 0)
                throw numeric_error("involution-fixed class with even angle");
            out.downstairs.push_back({k - 2, true, 2 * k - 2});
            out.eta[2 * k - 2] += 1;
            out.fixed_classes += 1;
            total_down += k - 2;
        } else {
            used[m] = 1;
            if (table.classes[m].two_k != table.classes[c].two_k)
                throw numeric_error("swapped classes with different angles");
            out.downstairs.push_back({2 * k - 2, false, 2 * k - 2});
            out.swapped_orbits += 1;
            total_down += 2 * k - 2;
        }
    }
    std::sort(out.downstairs.begin(), out.downstairs.end(),
              [](const auto& a, const auto& b) { return a.multiplicity < b.multiplicity; });
    if (total_down % 4 != 0)
        throw numeric_error("downstairs multiplicities violate sum = 4g-4");
    out.genus_downstairs = total_down / 4 + 1;
    for (const auto& pt : out.downstairs) {
        if (pt.multiplicity == -1) out.poles += 1;
        else if (pt.multiplicity >= 1) out.nu[pt.multiplicity] += 1;
    }

    // double cover arithmetic: g_up = 2 g_down - 1 + (1/2) #odd downstairs
    if (out.genus_upstairs !=
        2 * out.genus_downstairs - 1 + out.fixed_classes / 2)
        throw numeric_error("double cover genus identity failed");
    // dimension bookkeeping: d = 2 g_down + #downstairs - 1
    if (p.classes() !=
        2 * out.genus_downstairs + int(out.downstairs.size()) - 1)
        throw numeric_error("stratum dimension identity failed");
    return out;
}

}  // namespace rvi
