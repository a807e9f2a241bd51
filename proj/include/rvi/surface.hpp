#pragma once

#include <optional>
#include <sstream>
#include <vector>

#include "rvi/singularities.hpp"
#include "rvi/suspension.hpp"

namespace rvi {

// Zippered rectangle surface over a suspension datum: one rectangle per
// letter with a top placement (over the interval tiling of the row) and a
// bottom placement (under the tiling of the rearranged row), glued along the
// section by the width shifts, plus the boundary segments with the
// three-way split on the sign of the outer sum L_pi.
template <class S>
class ZipperedRectangleSurface {
  public:
    struct Rect {
        S x0, x1, y0, y1;
        S width() const { return x1 - x0; }
        S height() const { return y1 - y0; }
    };
    struct Segment {
        Letter letter;
        bool top;
        S x;
        S y0, y1;  // y0 <= y1; zero length allowed
        S length() const { return y1 - y0; }
    };
    struct Identification {
        enum Kind { RectanglePair, OuterPair } kind;
        Letter letter;      // rectangle pair: the letter; outer: the top letter
        S shift_x, shift_y; // translation top placement -> bottom placement
        S side_length;      // length of the glued sides
    };
    struct PointRef {
        Letter letter;
        bool top;
        S x, y;
    };

    explicit ZipperedRectangleSurface(SuspensionPoint<S> pt)
        : point_(std::move(pt)),
          table_(singularities(point_.perm)),
          heights_(point_.heights_vec()),
          widths_(point_.widths_vec()) {
        const auto& p = point_.perm;
        const auto cls = in_theta(p, point_.tau);
        if (cls.region != ThetaRegion::Interior) {
            std::ostringstream msg;
            msg << "tau is not interior to the suspension cone";
            if (cls.violated >= 0)
                msg << " (partial-sum inequality " << cls.violated << " is "
                    << (cls.region == ThetaRegion::Outside ? "violated" : "not strict")
                    << ")";
            throw domain_error(msg.str());
        }
        for (const auto& l : point_.lambda)
            if (!(l > S(0))) throw domain_error("lengths must be positive");

        half_ = norm1(point_.lambda);
        tile(p.row(), top_left_);
        tile(p.bar_row(), bottom_left_);
        // L_pi: tau-sum over letters right of the marker
        l_pi_ = S(0);
        for (int q = p.star_position() + 1; q < p.size(); ++q)
            l_pi_ += point_.tau[letter_class(p.at(q))];
        build_segments();
        build_identifications();
    }

    const SuspensionPoint<S>& point() const { return point_; }
    const SingularityTable& singularity_table() const { return table_; }
    const ClassVec<S>& rect_heights() const { return heights_; }
    const ClassVec<S>& shifts() const { return widths_; }
    S half_length() const { return half_; }
    S outer_sum() const { return l_pi_; }

    Rect rectangle(Letter a, bool top) const {
        const S h = heights_[letter_class(a)];
        const S x0 = top ? top_left_[a] : bottom_left_[a];
        const S x1 = x0 + point_.lambda[letter_class(a)];
        return top ? Rect{x0, x1, S(0), h} : Rect{x0, x1, -h, S(0)};
    }

    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<Identification>& identifications() const { return ids_; }

    // vertex points: top ends of the upper segments, bottom ends of the
    // lower ones, written in the zeta = lambda + i tau coordinates
    std::pair<S, S> vertex_top(Letter a) const { return vertex(a, true); }
    std::pair<S, S> vertex_bottom(Letter a) const { return vertex(a, false); }

    S area() const {
        S s(0);
        for (Letter a = 0; a < point_.perm.alphabet().letters(); ++a)
            s += point_.lambda[letter_class(a)] * heights_[letter_class(a)];
        return s;
    }

    // first return of the northbound flow to the section; the input is the
    // horizontal coordinate on the section
    struct Return {
        S x;
        S time;
        Letter through;
    };
    Return vertical_first_return(const S& x) const {
        const auto& p = point_.perm;
        if (!(x > -half_) || !(x < half_))
            throw domain_error("point is outside the cross-section");
        for (int q = 0; q < p.size(); ++q) {
            Letter a = p.at(q);
            if (a == kStar) {
                if (x == S(0)) singular_stop(p.star_position());
                continue;
            }
            const S x0 = top_left_[a];
            const S x1 = x0 + point_.lambda[letter_class(a)];
            if (x == x0 && q > 0) singular_stop(q);
            if (x > x0 && x < x1)
                return {x + widths_[letter_class(a)], heights_[letter_class(a)], a};
        }
        throw domain_error("point is not in any subinterval");
    }

    PointRef involution(const PointRef& pt) const {
        return PointRef{partner(pt.letter), !pt.top, -pt.x, -pt.y};
    }

    bool contains(const PointRef& pt) const {
        const Rect r = rectangle(pt.letter, pt.top);
        return pt.x >= r.x0 && pt.x <= r.x1 && pt.y >= r.y0 && pt.y <= r.y1;
    }

  private:
    void tile(const std::vector<Letter>& row, std::vector<S>& left) const {
        left.assign(point_.perm.alphabet().letters(), S(0));
        S at = -half_;
        for (Letter a : row) {
            if (a == kStar) continue;
            left[a] = at;
            at += point_.lambda[letter_class(a)];
        }
    }

    // tau partial sum over the positions from the marker out to and
    // including `a`, in the given row
    S tau_prefix(const std::vector<Letter>& row, int star, Letter a, int pos) const {
        S s(0);
        if (pos < star)
            for (int q = pos; q < star; ++q) s += point_.tau[letter_class(row[q])];
        else
            for (int q = star + 1; q <= pos; ++q) s += point_.tau[letter_class(row[q])];
        (void)a;
        return s;
    }

    void build_segments() {
        const auto& p = point_.perm;
        const Letter al = p.leftmost(), ar = p.rightmost();
        for (const bool top : {true, false}) {
            const auto row = top ? p.row() : p.bar_row();
            int star = 0;
            for (std::size_t q = 0; q < row.size(); ++q)
                if (row[q] == kStar) star = int(q);
            for (int q = 0; q < int(row.size()); ++q) {
                Letter a = row[q];
                if (a == kStar) continue;
                Segment seg;
                seg.letter = a;
                seg.top = top;
                const bool outer_left = (top && a == al) || (!top && a == partner(ar));
                const bool outer_right = (top && a == ar) || (!top && a == partner(al));
                if (outer_left || outer_right) {
                    // boundary slits controlled by the sign of L_pi
                    seg.x = outer_right ? half_ : S(-half_);
                    S lo(0), hi(0);
                    const S pos_l = l_pi_ > S(0) ? l_pi_ : S(0);
                    const S neg_l = l_pi_ < S(0) ? S(-l_pi_) : S(0);
                    if (top && outer_right) hi = pos_l;
                    if (top && outer_left) hi = neg_l;
                    if (!top && outer_left) lo = S(-pos_l);
                    if (!top && outer_right) lo = S(-neg_l);
                    seg.y0 = lo;
                    seg.y1 = hi;
                } else {
                    const S t = tau_prefix(row, star, a, q);
                    const S lam = [&] {
                        S s(0);
                        if (q < star)
                            for (int r = q; r < star; ++r)
                                s += point_.lambda[letter_class(row[r])];
                        else
                            for (int r = star + 1; r <= q; ++r)
                                s += point_.lambda[letter_class(row[r])];
                        return s;
                    }();
                    seg.x = (q < star) ? -lam : lam;
                    // interior slits point away from the section: up on the
                    // top side, down on the bottom side
                    const S len = t < S(0) ? S(-t) : t;
                    if (top) {
                        seg.y0 = S(0);
                        seg.y1 = len;
                    } else {
                        seg.y0 = -len;
                        seg.y1 = S(0);
                    }
                }
                segments_.push_back(seg);
            }
        }
    }

    void build_identifications() {
        const auto& p = point_.perm;
        for (int c = 0; c < p.classes(); ++c) {
            // both letters of a class share the shift w_c and height h_c
            for (Letter a : {Letter(2 * c), Letter(2 * c + 1)}) {
                Identification id;
                id.kind = Identification::RectanglePair;
                id.letter = a;
                id.shift_x = bottom_left_[a] - top_left_[a];
                id.shift_y = -heights_[c];
                id.side_length = point_.lambda[c];
                ids_.push_back(id);
            }
        }
        // outer slit gluing: the nonempty top boundary slit is identified
        // with its mirror at the opposite outer edge
        const Letter ar = p.rightmost(), al = p.leftmost();
        Identification outer;
        outer.kind = Identification::OuterPair;
        if (l_pi_ > S(0)) {
            outer.letter = ar;
            outer.shift_x = -S(2) * half_;
            outer.shift_y = -l_pi_;
            outer.side_length = l_pi_;
        } else if (l_pi_ < S(0)) {
            outer.letter = al;
            outer.shift_x = S(2) * half_;
            outer.shift_y = l_pi_;
            outer.side_length = -l_pi_;
        } else {
            outer.letter = ar;
            outer.shift_x = -S(2) * half_;
            outer.shift_y = S(0);
            outer.side_length = S(0);
        }
        ids_.push_back(outer);
    }

    std::pair<S, S> vertex(Letter a, bool top) const {
        const auto& p = point_.perm;
        const auto row = top ? p.row() : p.bar_row();
        int star = 0, pos = -1;
        for (std::size_t q = 0; q < row.size(); ++q) {
            if (row[q] == kStar) star = int(q);
            if (row[q] == a) pos = int(q);
        }
        S lx(0), tx(0);
        if (pos < star) {
            for (int q = pos; q < star; ++q) {
                lx -= point_.lambda[letter_class(row[q])];
                tx -= point_.tau[letter_class(row[q])];
            }
        } else {
            for (int q = star + 1; q <= pos; ++q) {
                lx += point_.lambda[letter_class(row[q])];
                tx += point_.tau[letter_class(row[q])];
            }
        }
        return {lx, tx};
    }

    [[noreturn]] void singular_stop(int row_position) const {
        const auto& p = point_.perm;
        const Letter left = row_position > 0 ? p.at(row_position - 1) : kStar;
        const int cls = table_.class_of(p, left, 'R');
        std::ostringstream msg;
        msg << "vertical through this point meets singularity class " << cls
            << " within one return";
        throw domain_error(msg.str());
    }

    SuspensionPoint<S> point_;
    SingularityTable table_;
    ClassVec<S> heights_, widths_;
    S half_{}, l_pi_{};
    std::vector<S> top_left_, bottom_left_;
    std::vector<Segment> segments_;
    std::vector<Identification> ids_;
};

template <class S>
ZipperedRectangleSurface<S> build_surface(const SuspensionPoint<S>& x) {
    return ZipperedRectangleSurface<S>(x);
}

}  // namespace rvi
