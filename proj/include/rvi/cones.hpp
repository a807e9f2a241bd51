#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "rvi/errors.hpp"
#include "rvi/linalg.hpp"
#include "rvi/theta.hpp"

namespace rvi {

// Polyhedral cone {x : E x = 0, A x >= 0} in R^dim, with exact generator
// enumeration by brute-force double description: every extreme ray is the
// 1-dimensional kernel of the equalities plus a tight subset.
struct PolyhedralCone {
    int dim = 0;
    RatMat equalities;
    RatMat inequalities;  // weak; the open cone takes them strict

    static RatVec to_ratvec(const std::vector<int>& v) {
        RatVec out;
        out.reserve(v.size());
        for (int x : v) out.emplace_back(x);
        return out;
    }

    static PolyhedralCone theta_closure(const ThetaCone& tc) {
        PolyhedralCone c;
        c.dim = tc.perm.classes();
        c.equalities.push_back(to_ratvec(tc.balance));
        for (const auto& row : tc.ineqs) c.inequalities.push_back(to_ratvec(row));
        return c;
    }

    bool contains_weak(const RatVec& x) const {
        for (const auto& e : equalities)
            if (dot(e, x) != 0) return false;
        for (const auto& a : inequalities)
            if (dot(a, x) < 0) return false;
        return true;
    }

    static Rat dot(const RatVec& a, const RatVec& b) {
        Rat s(0);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) s += a[i] * b[i];
        return s;
    }
};

// exact extreme rays as primitive integer vectors; throws if the cone is not
// pointed (it would contain a line and have no ray description)
inline std::vector<std::vector<Int>> extreme_rays(const PolyhedralCone& c,
                                                  std::size_t budget = 2'000'000) {
    {
        RatMat all = c.equalities;
        for (const auto& a : c.inequalities) all.push_back(a);
        if (!kernel(all, c.dim).empty())
            throw domain_error("cone contains a line; extreme rays undefined");
    }
    const int m = int(c.inequalities.size());
    const int want = c.dim - int(rank(c.equalities)) - 1;  // tight-set rank gap
    std::vector<std::vector<Int>> rays;
    std::vector<int> subset;
    std::size_t work = 0;
    auto consider = [&](const std::vector<int>& tight) {
        RatMat rows = c.equalities;
        for (int i : tight) rows.push_back(c.inequalities[i]);
        auto ker = kernel(rows, c.dim);
        if (ker.size() != 1) return;
        for (int sign : {1, -1}) {
            RatVec v = ker[0];
            if (sign < 0)
                for (auto& x : v) x = -x;
            if (!c.contains_weak(v)) continue;
            auto prim = primitive_direction(v);
            if (std::find(rays.begin(), rays.end(), prim) == rays.end())
                rays.push_back(std::move(prim));
        }
    };
    // enumerate subsets of size exactly `want`; smaller subsets cannot cut to
    // a line once the equalities are in place
    if (want < 0) throw domain_error("cone has no positive dimension");
    if (want == 0) {
        consider({});
        return rays;
    }
    std::vector<int> idx(want);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (++work > budget)
            throw budget_error("extreme ray enumeration budget exceeded");
        if (depth == want) {
            consider(idx);
            return;
        }
        for (int i = start; i < m; ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return rays;
}

inline std::vector<std::vector<Int>> extreme_rays_theta_closure(
    const MarkedPermutation& p) {
    return extreme_rays(PolyhedralCone::theta_closure(ThetaCone(p)));
}

// ---------------------------------------------------------------------------
// Hilbert projective metric on the positive cone

// max over coordinate pairs of (x_i y_j)/(x_j y_i); exact when S = Rat
template <class S>
S hilbert_max_ratio(const std::vector<S>& x, const std::vector<S>& y) {
    if (x.size() != y.size() || x.empty())
        throw structural_error("hilbert metric needs equal nonzero dimensions");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > S(0)) || !(y[i] > S(0)))
            throw domain_error("hilbert metric needs strictly positive vectors");
    S best(0);
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            const S r = (x[i] * y[j]) / (x[j] * y[i]);
            if (first || r > best) {
                best = r;
                first = false;
            }
        }
    return best;
}

template <class S>
double hilbert_distance(const std::vector<S>& x, const std::vector<S>& y) {
    const S r = hilbert_max_ratio(x, y);
    if constexpr (scalar_traits<S>::exact) return log_rat(Rat(r));
    else return std::log(r);
}

// Birkhoff bound for a strictly positive matrix: contraction coefficient
// tanh(Delta/4) with Delta the projective diameter of the image
inline double birkhoff_contraction_bound(const IntMat& b) {
    if (!b.strictly_positive())
        throw domain_error("Birkhoff bound needs a strictly positive matrix");
    double delta = 0;
    const int d = b.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const Rat r = Rat(b(i, k)) * Rat(b(j, l)) /
                                  (Rat(b(j, k)) * Rat(b(i, l)));
                    delta = std::max(delta, log_rat(r));
                }
    return std::tanh(delta / 4.0);
}

}  // namespace rvi
