#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "rvi/diagram.hpp"
#include "rvi/induction.hpp"
#include "rvi/omega.hpp"
#include "rvi/positivity.hpp"
#include "rvi/rng.hpp"
#include "rvi/theta.hpp"

namespace rvi {

// suspension datum (lambda, pi, tau) with the derived quantities cached
template <class S>
struct SuspensionPoint {
    ClassVec<S> lambda;
    MarkedPermutation perm;
    ClassVec<S> tau;

    SuspensionPoint(ClassVec<S> l, MarkedPermutation p, ClassVec<S> t)
        : lambda(std::move(l)), perm(std::move(p)), tau(std::move(t)) {}

    ClassVec<S> heights_vec() const { return heights(omega(perm), tau); }
    ClassVec<S> widths_vec() const { return widths(omega(perm), lambda); }

    // A = -2 <lambda, Omega tau> = 2 <lambda, h>
    S area() const {
        const auto h = heights_vec();
        S s(0);
        for (std::size_t i = 0; i < h.size(); ++i) s += lambda[i] * h[i];
        return S(2) * s;
    }

    S phi() const { return norm1(lambda); }
};

// one step of the invertible extension: lambda and tau transported along the
// induction arrow; area is preserved exactly
template <class S>
SuspensionPoint<S> extended_step(const SuspensionPoint<S>& x) {
    auto st = rauzy_step(x.lambda, x.perm);
    ClassVec<S> tau = x.tau;
    transport_tau_forward(tau, letter_class(st.winner), letter_class(st.loser));
    return SuspensionPoint<S>(std::move(st.lambda), std::move(st.perm), std::move(tau));
}

// inverse of the extension. The incoming arrow type is read off the sign of
// the sum of tau over letters, and the moved letter is recovered from the
// row; absent at the boundary (sum zero) or when no arrow of that type ends
// here.
template <class S>
std::optional<SuspensionPoint<S>> extended_step_back(const SuspensionPoint<S>& x) {
    S s(0);
    for (int q = 0; q < x.perm.size(); ++q) {
        Letter a = x.perm.at(q);
        if (a != kStar) s += x.tau[letter_class(a)];
    }
    if (s == S(0)) return std::nullopt;
    const Side came = (s > S(0)) ? Side::Left : Side::Right;

    // reverse the row move: a left arrow kept the leftmost letter a and put
    // the old rightmost just after i(a); a right arrow kept the rightmost b
    // and put the old leftmost just before i(b)
    const auto& row = x.perm.row();
    std::vector<Letter> prev_row;
    Letter winner, loser;
    if (came == Side::Left) {
        winner = x.perm.leftmost();
        const int ip = x.perm.position(partner(winner));
        if (ip + 1 >= x.perm.size()) return std::nullopt;
        loser = row[ip + 1];
        if (loser == kStar) return std::nullopt;
        for (int q = 0; q < x.perm.size(); ++q)
            if (q != ip + 1) prev_row.push_back(row[q]);
        prev_row.push_back(loser);
    } else {
        winner = x.perm.rightmost();
        const int ip = x.perm.position(partner(winner));
        if (ip == 0) return std::nullopt;
        loser = row[ip - 1];
        if (loser == kStar) return std::nullopt;
        prev_row.push_back(loser);
        for (int q = 0; q < x.perm.size(); ++q)
            if (q != ip - 1) prev_row.push_back(row[q]);
    }
    MarkedPermutation prev(x.perm.alphabet_ptr(), std::move(prev_row));
    if (!prev.validate()) return std::nullopt;
    // the reconstructed arrow must reproduce the current permutation
    auto fwd = prev.apply(came);
    if (!fwd || fwd->target != x.perm) return std::nullopt;
    ClassVec<S> lambda = x.lambda, tau = x.tau;
    transport_length_backward(lambda, letter_class(winner), letter_class(loser));
    transport_tau_backward(tau, letter_class(winner), letter_class(loser));
    return SuspensionPoint<S>(std::move(lambda), std::move(prev), std::move(tau));
}

// Teichmueller scaling
inline SuspensionPoint<double> tv_scale(const SuspensionPoint<double>& x, double t) {
    SuspensionPoint<double> out = x;
    const double e = std::exp(t);
    for (auto& v : out.lambda) v *= e;
    for (auto& v : out.tau) v /= e;
    return out;
}

// fundamental domain membership, by the three-case definition
template <class S>
bool in_fundamental_domain(const SuspensionPoint<S>& x) {
    const S one(1);
    bool fwd_defined = true;
    S phi_next(0);
    try {
        auto y = extended_step(x);
        phi_next = y.phi();
    } catch (const not_in_domain&) {
        fwd_defined = false;
    }
    if (fwd_defined) {
        if (phi_next < one && one <= x.phi()) return true;
    } else if (x.phi() >= one) {
        return true;
    }
    if (x.phi() < one && !extended_step_back(x).has_value()) return true;
    return false;
}

template <class S>
SuspensionPoint<S> to_fundamental_domain(SuspensionPoint<S> x, int budget = 100000) {
    for (int i = 0; i < budget; ++i) {
        if (in_fundamental_domain(x)) return x;
        if (x.phi() >= S(1)) {
            x = extended_step(x);  // throws not_in_domain on a tie
        } else {
            auto back = extended_step_back(x);
            if (!back)
                throw numeric_error("fundamental domain reduction stalled");
            x = std::move(*back);
        }
    }
    throw budget_error("fundamental domain reduction budget exceeded");
}

// Veech flow: scale, then the unique number of extension steps back into the
// fundamental domain
inline SuspensionPoint<double> veech_flow(const SuspensionPoint<double>& x, double t,
                                          int budget = 100000) {
    return to_fundamental_domain(tv_scale(x, t), budget);
}

// ---------------------------------------------------------------------------
// interior samples of the suspension cone

// Interior tau at an arbitrary class vertex: start from the boundary vector
// of a reachable opener/closer pattern vertex, push it through a strongly
// positive loop (landing strictly inside), then transport along the diagram
// and mix several images with positive rational weights.
class ThetaSampler {
  public:
    explicit ThetaSampler(const RauzyDiagram& g) : diagram_(g) {
        locate_seed();
        // any strongly positive loop at the seed works; a (4d-6)-complete
        // loop is guaranteed to qualify and the certificate re-checks it
        auto loop = find_complete_loop(diagram_, seed_vertex_,
                                       4 * diagram_.vertex(0).classes() - 6);
        if (!loop || !is_strongly_positive(*loop))
            throw budget_error("no strongly positive loop found for sampling");
        loop_ = std::make_unique<Path>(std::move(*loop));
        // several independent interior images: push the closed-cone seed
        // through 1..3 copies of the loop; each image is strictly interior
        std::vector<Rat> seed = seed_tau_;
        for (int k = 0; k < 3; ++k) {
            seed = push_tau(*loop_, std::move(seed));
            basis_.push_back(seed);
        }
        // forward transport tree from the seed vertex (cone invariance only
        // holds along forward arrows)
        parents_ = diagram_.bfs_parents(seed_vertex_);
    }

    // exact interior sample at any vertex of the class
    ClassVec<Rat> sample(int vertex, Rng& rng) const {
        ClassVec<Rat> out(diagram_.vertex(0).classes(), Rat(0));
        for (const auto& b : basis_) {
            const Rat w = rng.rational(1u << 12);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * b[i];
        }
        for (auto [v, s] : diagram_.tree_path(parents_, vertex, seed_vertex_)) {
            const auto& a = diagram_.out(v, s);
            transport_tau_forward(out, letter_class(a.winner), letter_class(a.loser));
        }
        return out;
    }

    const Path& loop() const { return *loop_; }
    int seed_vertex() const { return seed_vertex_; }

  private:
    // find a vertex where two same-side double classes interleave with one
    // opening first and the other closing last; +1 on the opener and -1 on
    // the closer then lies in the closed cone
    void locate_seed() {
        for (int v = 0; v < diagram_.vertex_count(); ++v) {
            const auto& p = diagram_.vertex(v);
            for (int ca = 0; ca < p.classes(); ++ca)
                for (int cb = 0; cb < p.classes(); ++cb) {
                    if (ca == cb) continue;
                    const Letter a = 2 * ca, b = 2 * cb;
                    const bool same_side =
                        (p.is_left_double(a) && p.is_left_double(b)) ||
                        (p.is_right_double(a) && p.is_right_double(b));
                    if (!same_side) continue;
                    if (!(p.small_m(a) < p.small_m(b) && p.big_m(a) < p.big_m(b)))
                        continue;
                    ClassVec<Rat> tau(p.classes(), Rat(0));
                    tau[ca] = 1;
                    tau[cb] = -1;
                    try {
                        if (in_theta(p, tau).region != ThetaRegion::Outside) {
                            seed_vertex_ = v;
                            seed_tau_ = std::move(tau);
                            return;
                        }
                    } catch (const domain_error&) {
                    }
                }
        }
        throw domain_error("no opener/closer pattern vertex found in the class");
    }

    const RauzyDiagram& diagram_;
    std::vector<std::pair<int, Side>> parents_;
    int seed_vertex_ = -1;
    ClassVec<Rat> seed_tau_;
    std::unique_ptr<Path> loop_;
    std::vector<ClassVec<Rat>> basis_;
};

// ---------------------------------------------------------------------------
// H(pi) = Omega(pi) S_pi

struct HSubspace {
    int dimension = 0;
    bool contains_v = false;           // v_pi in H(pi)?
    std::vector<RatVec> basis;         // spanning set of H(pi)
};

inline RatVec v_pi(const MarkedPermutation& p) {
    RatVec v(p.classes(), Rat(0));
    for (int q = 0; q < p.size(); ++q) {
        Letter a = p.at(q);
        if (a == kStar) continue;
        v[letter_class(a)] += (q < p.star_position()) ? 1 : -1;
    }
    return v;
}

inline HSubspace h_subspace_rank(const MarkedPermutation& p) {
    const int d = p.classes();
    const IntMat om = omega(p);
    // basis of S_pi: kernel of the balance functional
    RatMat bal(1, RatVec(d));
    {
        ThetaCone tc(p);
        for (int i = 0; i < d; ++i) bal[0][i] = tc.balance[i];
    }
    auto sbasis = kernel(bal, d);
    RatMat image;
    for (const auto& s : sbasis) {
        RatVec col(d, Rat(0));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (om(i, j) != 0) col[i] += Rat(om(i, j)) * s[j];
        image.push_back(std::move(col));
    }
    HSubspace out;
    out.basis = image;
    out.dimension = rank(image);
    out.contains_v = in_row_span(image, v_pi(p));
    return out;
}

}  // namespace rvi
