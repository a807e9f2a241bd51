#pragma once

#include <vector>

#include "rvi/rational.hpp"

namespace rvi {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;  // list of rows

// reduced row echelon form in place; returns pivot columns
inline std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = int(m.size()), cols = int(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        const Rat inv = Rat(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rat f = m[i][c];
            for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RatMat m) { return int(rref(m).size()); }

// kernel basis of the row system m x = 0 in dimension cols
inline std::vector<RatVec> kernel(RatMat m, int cols) {
    if (m.empty()) {
        std::vector<RatVec> out;
        for (int c = 0; c < cols; ++c) {
            RatVec v(cols, Rat(0));
            v[c] = 1;
            out.push_back(std::move(v));
        }
        return out;
    }
    auto pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<RatVec> out;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVec v(cols, Rat(0));
        v[fc] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][fc];
        out.push_back(std::move(v));
    }
    return out;
}

// does rhs lie in the span of the rows?
inline bool in_row_span(const RatMat& rows, const RatVec& rhs) {
    RatMat m = rows;
    const int r0 = rank(m);
    m = rows;
    m.push_back(rhs);
    return rank(m) == r0;
}

// clear denominators and content; canonical integer direction with first
// nonzero entry positive when sign_normalize is set
inline std::vector<Int> primitive_direction(const RatVec& v, bool sign_normalize = false) {
    Int den = 1;
    for (const auto& x : v)
        den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
    std::vector<Int> w;
    w.reserve(v.size());
    Int g = 0;
    for (const auto& x : v) {
        Int e = boost::multiprecision::numerator(x) *
                (den / boost::multiprecision::denominator(x));
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(e));
        w.push_back(std::move(e));
    }
    if (g > 1)
        for (auto& e : w) e /= g;
    if (sign_normalize)
        for (const auto& e : w) {
            if (e == 0) continue;
            if (e < 0)
                for (auto& f : w) f = -f;
            break;
        }
    return w;
}

}  // namespace rvi
