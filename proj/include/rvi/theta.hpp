#pragma once

#include <string>
#include <vector>

#include "rvi/induction.hpp"
#include "rvi/permutation.hpp"

namespace rvi {

// The suspension cone Theta_pi in the balance hyperplane S_pi: partial sums
// over the positions right of * are positive, partial sums over positions
// left of * are negative. Inequalities are stored as integer class
// coefficient vectors, oriented so that the cone is { A tau > 0 }.
struct ThetaCone {
    MarkedPermutation perm;
    std::vector<std::vector<int>> ineqs;  // strict for the open cone
    std::vector<int> balance;             // letters left of * minus right of *

    explicit ThetaCone(MarkedPermutation p) : perm(std::move(p)) {
        const int d = perm.classes();
        const int n = perm.size();
        const int s = perm.star_position();  // 0-based
        // right partial sums: star+1 .. k inclusive, for k = star+1..n-2
        for (int k = s + 1; k <= n - 2; ++k) {
            std::vector<int> v(d, 0);
            for (int q = s + 1; q <= k; ++q) v[letter_class(perm.at(q))] += 1;
            ineqs.push_back(std::move(v));
        }
        // left partial sums: k .. star-1 inclusive, for k = 1..star-1,
        // required negative, stored negated
        for (int k = 1; k <= s - 1; ++k) {
            std::vector<int> v(d, 0);
            for (int q = k; q <= s - 1; ++q) v[letter_class(perm.at(q))] -= 1;
            ineqs.push_back(std::move(v));
        }
        balance.assign(d, 0);
        for (int q = 0; q < n; ++q) {
            Letter a = perm.at(q);
            if (a == kStar) continue;
            balance[letter_class(a)] += (q < s) ? 1 : -1;
        }
    }

    template <class S>
    S dot(const std::vector<int>& row, const ClassVec<S>& tau) const {
        S s(0);
        for (std::size_t i = 0; i < row.size(); ++i)
            if (row[i]) s += S(row[i]) * tau[i];
        return s;
    }
};

enum class ThetaRegion { Interior, Boundary, Outside };

inline const char* region_name(ThetaRegion r) {
    switch (r) {
        case ThetaRegion::Interior: return "interior";
        case ThetaRegion::Boundary: return "boundary";
        default: return "outside";
    }
}

struct ThetaClassification {
    ThetaRegion region;
    int violated = -1;  // first non-strict / violated inequality, or -1
};

// three-way classification: interior of Theta, boundary (in Theta' \ {0}),
// or outside; tau must lie on the balance hyperplane
template <class S>
ThetaClassification in_theta(const ThetaCone& cone, const ClassVec<S>& tau) {
    if (int(tau.size()) != cone.perm.classes())
        throw structural_error("tau has wrong dimension");
    const S bal = cone.dot(cone.balance, tau);
    if constexpr (scalar_traits<S>::exact) {
        if (bal != S(0))
            throw domain_error("tau is off the balance hyperplane");
    } else {
        S scale(0);
        for (const auto& x : tau) scale += std::abs(x);
        if (std::abs(bal) > 1e-9 * (scale > 0 ? scale : 1.0))
            throw domain_error("tau is off the balance hyperplane");
    }
    bool zero = true;
    for (const auto& x : tau)
        if (!(x == S(0))) { zero = false; break; }
    if (zero) return {ThetaRegion::Outside, -1};
    bool interior = true;
    int first_weak = -1;
    for (std::size_t i = 0; i < cone.ineqs.size(); ++i) {
        const S v = cone.dot(cone.ineqs[i], tau);
        if (v < S(0)) return {ThetaRegion::Outside, int(i)};
        if (!(v > S(0)) && interior) {
            interior = false;
            first_weak = int(i);
        }
    }
    if (interior) return {ThetaRegion::Interior, -1};
    return {ThetaRegion::Boundary, first_weak};
}

template <class S>
ThetaClassification in_theta(const MarkedPermutation& p, const ClassVec<S>& tau) {
    return in_theta(ThetaCone(p), tau);
}

}  // namespace rvi
