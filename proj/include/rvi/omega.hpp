#pragma once

#include <vector>

#include "rvi/matrix.hpp"
#include "rvi/permutation.hpp"

namespace rvi {

// Omega(pi): antisymmetric d x d integer matrix with entries in {-2..2},
// built from the position data M(x) = max(pos x, pos ix), m(x) = min(...).
inline IntMat omega(const MarkedPermutation& p) {
    const int d = p.classes();
    IntMat o(d);
    for (int x = 0; x < d; ++x) {
        const int mx = p.small_m(2 * x), Mx = p.big_m(2 * x);
        for (int y = 0; y < d; ++y) {
            const int my = p.small_m(2 * y), My = p.big_m(2 * y);
            int v = 0;
            if (Mx < my) v = 2;
            else if (My < mx) v = -2;
            else if (mx < my && my < Mx && Mx < My) v = 1;
            else if (my < mx && mx < My && My < Mx) v = -1;
            o(x, y) = v;
        }
    }
    return o;
}

// h = -Omega(pi) tau, entrywise positive on the open cone
template <class S>
std::vector<S> heights(const IntMat& om, const std::vector<S>& tau) {
    std::vector<S> h = om.apply(tau);
    for (auto& v : h) v = -v;
    return h;
}

// w = Omega(pi) lambda; transforms by w' = B_gamma w across arrows
template <class S>
std::vector<S> widths(const IntMat& om, const std::vector<S>& lambda) {
    return om.apply(lambda);
}

}  // namespace rvi
