#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rvi/errors.hpp"

namespace rvi {

// A letter is an index 0..2d-1; the involution partner is id^1 and the
// involution class is id>>1. Class k is named by a base name ("A", "B", ...),
// the partner carries an "i" prefix in text form. kStar marks the row slot
// of the separator.
using Letter = int;
constexpr Letter kStar = -1;

inline Letter partner(Letter a) { return a ^ 1; }
inline int letter_class(Letter a) { return a >> 1; }
inline bool is_primary(Letter a) { return (a & 1) == 0; }

class InvolutionAlphabet {
  public:
    explicit InvolutionAlphabet(std::vector<std::string> class_names)
        : names_(std::move(class_names)) {
        if (names_.size() < 2)
            throw structural_error("alphabet needs at least 2 classes (2d >= 4)");
    }

    static InvolutionAlphabet generic(int d) {
        std::vector<std::string> names;
        for (int k = 0; k < d; ++k) names.push_back(std::string(1, char('A' + k)));
        return InvolutionAlphabet(std::move(names));
    }

    int classes() const { return int(names_.size()); }
    int letters() const { return 2 * classes(); }
    const std::string& class_name(int c) const { return names_[c]; }

    std::string letter_name(Letter a) const {
        return is_primary(a) ? names_[letter_class(a)] : "i" + names_[letter_class(a)];
    }

    std::optional<Letter> letter_by_name(const std::string& s) const {
        bool bar = s.size() > 1 && s[0] == 'i';
        const std::string base = bar ? s.substr(1) : s;
        for (int c = 0; c < classes(); ++c)
            if (names_[c] == base) return Letter(2 * c + (bar ? 1 : 0));
        // names like "iX" where "iX" is itself a class name would be ambiguous;
        // the i-prefix convention wins, so reject such alphabets at parse time
        return std::nullopt;
    }

    bool operator==(const InvolutionAlphabet& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
};

// Combinatorial datum: a bijection row of the 2d letters plus the separator
// onto positions 1..2d+1, subject to the non-inclusion condition on the two
// sides of the separator.
class MarkedPermutation {
  public:
    MarkedPermutation(std::shared_ptr<const InvolutionAlphabet> alphabet,
                      std::vector<Letter> row)
        : alphabet_(std::move(alphabet)), row_(std::move(row)) {
        const int n = alphabet_->letters() + 1;
        if (int(row_.size()) != n)
            throw structural_error("row has wrong length");
        std::vector<char> seen(alphabet_->letters(), 0);
        star_ = -1;
        for (int p = 0; p < n; ++p) {
            Letter a = row_[p];
            if (a == kStar) {
                if (star_ >= 0) throw structural_error("duplicate * in row");
                star_ = p;
            } else {
                if (a < 0 || a >= alphabet_->letters() || seen[a])
                    throw structural_error("row is not a bijection");
                seen[a] = 1;
            }
        }
        if (star_ < 0) throw structural_error("row is missing *");
        pos_.assign(alphabet_->letters(), -1);
        for (int p = 0; p < n; ++p)
            if (row_[p] != kStar) pos_[row_[p]] = p;
    }

    static MarkedPermutation parse(const std::string& text) {
        std::istringstream in(text);
        std::vector<std::string> toks;
        std::string t;
        while (in >> t) toks.push_back(t);
        std::vector<std::string> names;
        for (const auto& tok : toks) {
            if (tok == "*") continue;
            std::string base = (tok.size() > 1 && tok[0] == 'i') ? tok.substr(1) : tok;
            if (std::find(names.begin(), names.end(), base) == names.end())
                names.push_back(base);
        }
        std::sort(names.begin(), names.end());
        auto alph = std::make_shared<InvolutionAlphabet>(names);
        std::vector<Letter> row;
        for (const auto& tok : toks) {
            if (tok == "*") {
                row.push_back(kStar);
                continue;
            }
            auto a = alph->letter_by_name(tok);
            if (!a) throw structural_error("unknown letter '" + tok + "'");
            row.push_back(*a);
        }
        return MarkedPermutation(alph, std::move(row));
    }

    const InvolutionAlphabet& alphabet() const { return *alphabet_; }
    std::shared_ptr<const InvolutionAlphabet> alphabet_ptr() const { return alphabet_; }
    int classes() const { return alphabet_->classes(); }
    int size() const { return int(row_.size()); }  // 2d+1

    const std::vector<Letter>& row() const { return row_; }
    int star_position() const { return star_; }          // 0-based
    int position(Letter a) const { return pos_[a]; }     // 0-based
    Letter at(int p) const { return row_[p]; }

    Letter leftmost() const { return row_.front(); }
    Letter rightmost() const { return row_.back(); }

    bool left_of_star(Letter a) const { return pos_[a] < star_; }

    // positions in the paper are 1-based; M and m only ever get compared
    int big_m(Letter a) const { return 1 + std::max(pos_[a], pos_[partner(a)]); }
    int small_m(Letter a) const { return 1 + std::min(pos_[a], pos_[partner(a)]); }

    bool is_simple(Letter a) const {
        return left_of_star(a) != left_of_star(partner(a));
    }
    bool is_double(Letter a) const { return !is_simple(a); }
    bool is_left_double(Letter a) const {
        return left_of_star(a) && left_of_star(partner(a));
    }
    bool is_right_double(Letter a) const {
        return !left_of_star(a) && !left_of_star(partner(a));
    }

    // neither i(A_l) subset of A_r nor i(A_r) subset of A_l
    bool validate() const {
        std::vector<char> left(alphabet_->letters(), 0);
        for (int p = 0; p < star_; ++p) left[row_[p]] = 1;
        bool il_in_r = true, ir_in_l = true;
        for (Letter a = 0; a < alphabet_->letters(); ++a) {
            if (left[a] && left[partner(a)]) il_in_r = false;
            if (!left[a] && !left[partner(a)]) ir_in_l = false;
        }
        return !il_in_r && !ir_in_l;
    }

    // row for the rearranged intervals: pbar(*) = 2d+2-p(*),
    // pbar(a) = 2d+2-p(i(a))
    std::vector<Letter> bar_row() const {
        const int n = size();
        std::vector<Letter> out(n, kStar);
        for (int p = 0; p < n; ++p) {
            Letter a = row_[p];
            out[n - 1 - p] = (a == kStar) ? kStar : partner(a);
        }
        return out;
    }

    enum class Side { Left, Right };

    struct OpResult;

    // left: rightmost letter moves just after i(leftmost); leftmost wins.
    // right: leftmost moves just before i(rightmost); rightmost wins.
    // absent when loser = i(winner) or when the moved row is not valid.
    std::optional<OpResult> apply(Side side) const;

    std::string row_text() const {
        std::string out;
        for (int p = 0; p < size(); ++p) {
            if (p) out += ' ';
            out += (row_[p] == kStar) ? "*" : alphabet_->letter_name(row_[p]);
        }
        return out;
    }

    bool operator==(const MarkedPermutation& o) const { return row_ == o.row_; }
    bool operator!=(const MarkedPermutation& o) const { return row_ != o.row_; }

    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (Letter a : row_) {
            h ^= std::uint64_t(a + 2);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

  private:
    std::shared_ptr<const InvolutionAlphabet> alphabet_;
    std::vector<Letter> row_;
    int star_;
    std::vector<int> pos_;
};

using Side = MarkedPermutation::Side;

struct MarkedPermutation::OpResult {
    MarkedPermutation target;
    Letter winner, loser;
};

inline std::optional<MarkedPermutation::OpResult> MarkedPermutation::apply(
    Side side) const {
    const Letter a = leftmost(), b = rightmost();
    if (b == partner(a)) return std::nullopt;
    std::vector<Letter> out;
    out.reserve(row_.size());
    if (side == Side::Left) {
        for (int p = 0; p + 1 < size(); ++p) {
            out.push_back(row_[p]);
            if (row_[p] == partner(a)) out.push_back(b);
        }
    } else {
        for (int p = 1; p < size(); ++p) {
            if (row_[p] == partner(b)) out.push_back(a);
            out.push_back(row_[p]);
        }
    }
    MarkedPermutation moved(alphabet_, std::move(out));
    if (!moved.validate()) return std::nullopt;
    if (side == Side::Left) return OpResult{std::move(moved), a, b};
    return OpResult{std::move(moved), b, a};
}

inline const char* side_name(Side s) { return s == Side::Left ? "L" : "R"; }

}  // namespace rvi
