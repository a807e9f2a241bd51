#pragma once

#include <vector>

#include "rvi/errors.hpp"
#include "rvi/rational.hpp"

namespace rvi {

// Dense square integer matrix over involution classes. Sizes stay tiny
// (d <= 8 in practice) while entries grow into big integers along paths,
// so the representation favors exactness over vectorization.
class IntMat {
  public:
    IntMat() : d_(0) {}
    explicit IntMat(int d) : d_(d), a_(std::size_t(d) * d, Int(0)) {}

    static IntMat identity(int d) {
        IntMat m(d);
        for (int i = 0; i < d; ++i) m(i, i) = 1;
        return m;
    }

    // B e_w = e_w + e_l: identity plus a unit in row l, column w
    static IntMat arrow(int d, int winner_class, int loser_class) {
        IntMat m = identity(d);
        m(loser_class, winner_class) += 1;
        return m;
    }

    int dim() const { return d_; }
    Int& operator()(int r, int c) { return a_[std::size_t(r) * d_ + c]; }
    const Int& operator()(int r, int c) const { return a_[std::size_t(r) * d_ + c]; }

    IntMat operator*(const IntMat& o) const {
        IntMat out(d_);
        for (int i = 0; i < d_; ++i)
            for (int k = 0; k < d_; ++k) {
                const Int& v = (*this)(i, k);
                if (v == 0) continue;
                for (int j = 0; j < d_; ++j) out(i, j) += v * o(k, j);
            }
        return out;
    }

    bool operator==(const IntMat& o) const { return d_ == o.d_ && a_ == o.a_; }

    // compose one more arrow on the left: B <- B_arrow * B, a single row update
    void left_compose_arrow(int winner_class, int loser_class) {
        for (int j = 0; j < d_; ++j)
            (*this)(loser_class, j) += (*this)(winner_class, j);
    }

    template <class S>
    std::vector<S> apply(const std::vector<S>& v) const {
        std::vector<S> out(d_, S(0));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                if ((*this)(i, j) != 0) out[i] += S((*this)(i, j)) * v[j];
        return out;
    }

    template <class S>
    std::vector<S> apply_transpose(const std::vector<S>& v) const {
        std::vector<S> out(d_, S(0));
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                if ((*this)(i, j) != 0) out[j] += S((*this)(i, j)) * v[i];
        return out;
    }

    // double overloads (cpp_int -> double per entry)
    std::vector<double> apply(const std::vector<double>& v) const {
        std::vector<double> out(d_, 0.0);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                if ((*this)(i, j) != 0) out[i] += to_double((*this)(i, j)) * v[j];
        return out;
    }
    std::vector<double> apply_transpose(const std::vector<double>& v) const {
        std::vector<double> out(d_, 0.0);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j)
                if ((*this)(i, j) != 0) out[j] += to_double((*this)(i, j)) * v[i];
        return out;
    }

    bool strictly_positive() const {
        for (const Int& v : a_)
            if (v <= 0) return false;
        return true;
    }

    bool nonnegative() const {
        for (const Int& v : a_)
            if (v < 0) return false;
        return true;
    }

    Int row_sum(int i) const {
        Int s = 0;
        for (int j = 0; j < d_; ++j) s += (*this)(i, j);
        return s;
    }
    Int column_sum(int j) const {
        Int s = 0;
        for (int i = 0; i < d_; ++i) s += (*this)(i, j);
        return s;
    }

    // Bareiss fraction-free elimination; exact
    Int determinant() const {
        if (d_ == 0) return 1;
        std::vector<Int> m(a_);
        auto at = [&](int r, int c) -> Int& { return m[std::size_t(r) * d_ + c]; };
        Int prev = 1;
        int sign = 1;
        for (int k = 0; k < d_ - 1; ++k) {
            if (at(k, k) == 0) {
                int p = -1;
                for (int r = k + 1; r < d_; ++r)
                    if (at(r, k) != 0) { p = r; break; }
                if (p < 0) return 0;
                for (int c = 0; c < d_; ++c) std::swap(at(k, c), at(p, c));
                sign = -sign;
            }
            for (int i = k + 1; i < d_; ++i)
                for (int j = k + 1; j < d_; ++j)
                    at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            prev = at(k, k);
        }
        return sign > 0 ? at(d_ - 1, d_ - 1) : -at(d_ - 1, d_ - 1);
    }

  private:
    int d_;
    std::vector<Int> a_;
};

// in-place single-arrow transports; these match the accumulated matrix:
//   lengths:   lambda = B_gamma^T lambda', so forward step does l[w] -= l[l]
//   heights/widths: h' = B_gamma h, forward step does h[l] += h[w]
//   tau:       tau' = (B_gamma^T)^{-1} tau, forward step does t[w] -= t[l]
template <class S>
void transport_length_forward(std::vector<S>& lambda, int w, int l) {
    lambda[w] -= lambda[l];
}
template <class S>
void transport_length_backward(std::vector<S>& lambda, int w, int l) {
    lambda[w] += lambda[l];
}
template <class S>
void transport_height_forward(std::vector<S>& h, int w, int l) {
    h[l] += h[w];
}
template <class S>
void transport_height_backward(std::vector<S>& h, int w, int l) {
    h[l] -= h[w];
}
template <class S>
void transport_tau_forward(std::vector<S>& tau, int w, int l) {
    tau[w] -= tau[l];
}
template <class S>
void transport_tau_backward(std::vector<S>& tau, int w, int l) {
    tau[w] += tau[l];
}

}  // namespace rvi
