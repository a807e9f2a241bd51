#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "rvi/matrix.hpp"
#include "rvi/path.hpp"
#include "rvi/permutation.hpp"
#include "rvi/rational.hpp"

namespace rvi {

// length vector over involution classes; each letter contributes the value
// of its class
template <class S>
using ClassVec = std::vector<S>;

template <class S>
S norm1(const ClassVec<S>& v) {
    S s(0);
    for (const auto& x : v) s += x;
    return s;
}

// balance defect: sum over letters left of * minus sum right of *
template <class S>
S balance_defect(const MarkedPermutation& p, const ClassVec<S>& lambda) {
    S s(0);
    for (int q = 0; q < p.size(); ++q) {
        Letter a = p.at(q);
        if (a == kStar) continue;
        if (q < p.star_position()) s += lambda[letter_class(a)];
        else s -= lambda[letter_class(a)];
    }
    return s;
}

template <class S>
bool is_balanced(const MarkedPermutation& p, const ClassVec<S>& lambda) {
    if constexpr (scalar_traits<S>::exact) {
        return balance_defect(p, lambda) == S(0);
    } else {
        const S n = norm1(lambda);
        return std::abs(balance_defect(p, lambda)) <= 1e-9 * (n > 0 ? n : 1.0);
    }
}

template <class S>
void require_positive_balanced(const MarkedPermutation& p, const ClassVec<S>& lambda) {
    if (int(lambda.size()) != p.classes())
        throw structural_error("length vector has wrong dimension");
    for (const auto& x : lambda)
        if (!(x > S(0))) throw domain_error("length vector must be positive");
    if (!is_balanced(p, lambda)) {
        std::ostringstream msg;
        msg << "length vector violates the balance equation (defect "
            << scalar_traits<S>::dbl(balance_defect(p, lambda)) << ")";
        throw domain_error(msg.str());
    }
}

// along floating orbits the norm shrinks exponentially while the balance
// defect only carries rounding noise, so the relative defect is meaningless
// deep into an orbit; exact orbits keep the zero-defect invariant
template <class S>
void require_step_input(const MarkedPermutation& p, const ClassVec<S>& lambda) {
    if constexpr (scalar_traits<S>::exact) {
        require_positive_balanced(p, lambda);
    } else {
        if (int(lambda.size()) != p.classes())
            throw structural_error("length vector has wrong dimension");
        for (const auto& x : lambda)
            if (!(x > S(0))) throw domain_error("length vector must be positive");
    }
}

// a constructive balanced positive vector: simple classes get 1, left/right
// double classes get 1/#LD resp. 1/#RD (as in the feasibility construction)
inline ClassVec<Rat> balanced_unit_lengths(const MarkedPermutation& p) {
    const int d = p.classes();
    int ld = 0, rd = 0;
    for (int c = 0; c < d; ++c) {
        Letter a = 2 * c;
        if (p.is_left_double(a)) ++ld;
        if (p.is_right_double(a)) ++rd;
    }
    if (ld == 0 || rd == 0)
        throw domain_error("valid permutations have a double letter of each type");
    ClassVec<Rat> out(d, Rat(1));
    for (int c = 0; c < d; ++c) {
        Letter a = 2 * c;
        if (p.is_left_double(a)) out[c] = Rat(1, ld);
        else if (p.is_right_double(a)) out[c] = Rat(1, rd);
    }
    return out;
}

// ---------------------------------------------------------------------------
// interval exchange transformation with involution

template <class S>
class IetWithInvolution {
  public:
    IetWithInvolution(MarkedPermutation p, ClassVec<S> lambda)
        : perm_(std::move(p)), lambda_(std::move(lambda)) {
        require_positive_balanced(perm_, lambda_);
        build(perm_.row(), src_break_, src_order_);
        build(perm_.bar_row(), img_break_, img_order_);
    }

    const MarkedPermutation& permutation() const { return perm_; }

    // total interval length = 2 * sum of class lengths; I is centered at 0
    S interval_length() const { return S(2) * norm1(lambda_); }
    S half_length() const { return norm1(lambda_); }

    // source subinterval [left, right) of a letter, in row order
    std::pair<S, S> source_interval(Letter a) const {
        int i = src_order_[a];
        return {src_break_[i], src_break_[i + 1]};
    }
    std::pair<S, S> image_interval(Letter a) const {
        int i = img_order_[a];
        return {img_break_[i], img_break_[i + 1]};
    }

    S translation(Letter a) const {
        return img_break_[img_order_[a]] - src_break_[src_order_[a]];
    }

    // intervals are closed at the left and open at the right; evaluation at a
    // non-endpoint breakpoint is rejected since the suspension is singular
    // along those verticals
    S evaluate(const S& x) const {
        Letter a = letter_at(x);
        return x + translation(a);
    }

    Letter letter_at(const S& x) const {
        if (!(x >= src_break_.front()) || !(x < src_break_.back()))
            throw domain_error("point outside the interval");
        for (std::size_t i = 1; i + 1 < src_break_.size(); ++i)
            if (x == src_break_[i])
                throw domain_error("evaluation at a breakpoint is undefined");
        int lo = 0, hi = int(src_break_.size()) - 1;
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            if (x < src_break_[mid]) hi = mid;
            else lo = mid;
        }
        return letter_of_slot(lo);
    }

    const std::vector<S>& source_breakpoints() const { return src_break_; }
    const std::vector<S>& image_breakpoints() const { return img_break_; }

    Letter letter_of_slot(int slot) const {
        for (Letter a = 0; a < perm_.alphabet().letters(); ++a)
            if (src_order_[a] == slot) return a;
        throw structural_error("slot out of range");
    }

  private:
    void build(const std::vector<Letter>& row, std::vector<S>& brk,
               std::vector<int>& order) const {
        order.assign(perm_.alphabet().letters(), -1);
        brk.clear();
        brk.push_back(-half_length());
        int slot = 0;
        for (Letter a : row) {
            if (a == kStar) continue;
            order[a] = slot++;
            brk.push_back(brk.back() + lambda_[letter_class(a)]);
        }
    }

    MarkedPermutation perm_;
    ClassVec<S> lambda_;
    std::vector<S> src_break_, img_break_;
    std::vector<int> src_order_, img_order_;
};

template <class S>
IetWithInvolution<S> build_iet(const ClassVec<S>& lambda, const MarkedPermutation& p) {
    return IetWithInvolution<S>(p, lambda);
}

// ---------------------------------------------------------------------------
// the induction map Q

template <class S>
struct StepResult {
    ClassVec<S> lambda;
    MarkedPermutation perm;
    Side side;
    Letter winner, loser;
};

template <class S>
StepResult<S> rauzy_step(const ClassVec<S>& lambda, const MarkedPermutation& p) {
    require_step_input(p, lambda);
    const Letter a = p.leftmost(), b = p.rightmost();
    const S& la = lambda[letter_class(a)];
    const S& lb = lambda[letter_class(b)];
    if (la == lb)
        throw not_in_domain("leftmost and rightmost lengths tie; boundary of the domain");
    const Side side = (la > lb) ? Side::Left : Side::Right;
    auto op = p.apply(side);
    if (!op)
        throw not_in_domain(std::string("the ") + side_name(side) +
                            " operation is not defined at this permutation");
    ClassVec<S> out = lambda;
    transport_length_forward(out, letter_class(op->winner), letter_class(op->loser));
    return {std::move(out), std::move(op->target), side, op->winner, op->loser};
}

template <class S>
struct OrbitState {
    ClassVec<S> lambda;
    MarkedPermutation perm;
};

template <class S>
struct OrbitResult {
    std::vector<OrbitState<S>> states;  // n+1 states for n completed steps
    Path path;                          // the concatenated arrows
    std::optional<std::string> stopped; // tie diagnostic when cut short
};

template <class S>
OrbitResult<S> iterate(const ClassVec<S>& lambda, const MarkedPermutation& p, int steps) {
    OrbitResult<S> out{{}, Path(p), std::nullopt};
    out.states.push_back({lambda, p});
    for (int k = 0; k < steps; ++k) {
        const auto& cur = out.states.back();
        try {
            auto st = rauzy_step(cur.lambda, cur.perm);
            out.path.append(Arrow{cur.perm, st.perm, st.side, st.winner, st.loser});
            out.states.push_back({std::move(st.lambda), std::move(st.perm)});
        } catch (const not_in_domain& e) {
            out.stopped = std::string("step ") + std::to_string(k) + ": " + e.what();
            break;
        }
    }
    return out;
}

// renormalized map: acts on ||lambda|| = 1 and returns r = -ln||lambda'||
template <class S>
struct RenormStep {
    ClassVec<S> lambda;  // normalized
    MarkedPermutation perm;
    double r;
    Side side;
    Letter winner, loser;
};

template <class S>
RenormStep<S> renormalized_step(const ClassVec<S>& lambda, const MarkedPermutation& p) {
    ClassVec<S> unit = lambda;
    const S n0 = norm1(unit);
    if (!(n0 > S(0))) throw domain_error("length vector must be positive");
    for (auto& x : unit) x = x / n0;
    auto st = rauzy_step(unit, p);
    const S n1 = norm1(st.lambda);
    double r;
    if constexpr (scalar_traits<S>::exact) r = -log_rat(Rat(n1));
    else r = -std::log(n1);
    for (auto& x : st.lambda) x = x / n1;
    return {std::move(st.lambda), std::move(st.perm), r, st.side, st.winner, st.loser};
}

// ---------------------------------------------------------------------------
// cylinders

// dynamical route: the orbit of (lambda, pi) follows exactly the arrows of g
template <class S>
bool cylinder_contains(const Path& g, const ClassVec<S>& lambda,
                       const MarkedPermutation& p) {
    if (g.start() != p) return false;
    ClassVec<S> cur = lambda;
    MarkedPermutation at = p;
    for (const auto& a : g.arrows()) {
        StepResult<S> st = [&] {
            try {
                return rauzy_step(cur, at);
            } catch (const not_in_domain&) {
                return StepResult<S>{ClassVec<S>{}, at, Side::Left, kStar, kStar};
            }
        }();
        if (st.lambda.empty() || st.side != a.side) return false;
        cur = std::move(st.lambda);
        at = std::move(st.perm);
    }
    return true;
}

// algebraic route: lambda lies in B_gamma^T applied to the positive balanced
// cone of the end vertex, i.e. the transported vector stays positive
template <class S>
bool cylinder_contains_algebraic(const Path& g, const ClassVec<S>& lambda,
                                 const MarkedPermutation& p) {
    if (g.start() != p) return false;
    ClassVec<S> x = lambda;
    for (const auto& a : g.arrows()) {
        transport_length_forward(x, a.winner_class(), a.loser_class());
        for (const auto& v : x)
            if (!(v > S(0))) return false;
    }
    return true;
}

}  // namespace rvi
