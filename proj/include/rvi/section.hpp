#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rvi/cones.hpp"
#include "rvi/diagram.hpp"
#include "rvi/positivity.hpp"
#include "rvi/rng.hpp"
#include "rvi/suspension.hpp"

namespace rvi {

// First-return dynamics to the precompact section over a neat loop gamma*.
// The domain pieces are labeled by paths that begin and end with gamma*, and
// the return multiplies lengths by (B_gamma^T)^{-1} and renormalizes. The
// orbit runs on diagram indices: waiting times are governed by the cylinder
// measure of gamma*, so single steps have to be cheap.
class SectionDynamics {
  public:
    struct Point {
        ClassVec<double> lambda;  // ||lambda||_1 = 1, in the gamma* cylinder
        ClassVec<double> tau;     // in Theta_{gamma*}
    };

    struct Options {
        bool record_word;    // keep the branch word (L/R letters)
        bool record_matrix;  // accumulate the exact branch matrix
        Options() : record_word(false), record_matrix(false) {}
    };

    struct Return {
        Point point;
        double r = 0;              // return time, = -ln ||(B^T)^{-1} lambda||
        long steps = 0;            // induction steps consumed
        std::uint64_t branch = 0;  // hash of the branch token sequence
        std::string word;          // only with record_word
        IntMat matrix;             // only with record_matrix
    };

    SectionDynamics(const RauzyDiagram& g, SectionSpec spec)
        : diagram_(g), spec_(std::move(spec)) {
        auto base = g.index_of(spec_.base());
        if (!base) throw domain_error("section base is not a vertex of the diagram");
        base_ = *base;
        d_ = spec_.base().classes();
        if (d_ > 8) throw budget_error("section dynamics sized for d <= 8");
        vdata_.resize(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) {
            const auto& p = g.vertex(v);
            auto& vd = vdata_[v];
            vd.lc = std::int16_t(letter_class(p.leftmost()));
            vd.rc = std::int16_t(letter_class(p.rightmost()));
            for (Side s : {Side::Left, Side::Right}) {
                const auto& a = g.out(v, s);
                const int k = s == Side::Left ? 0 : 1;
                vd.defined[k] = a.defined;
                if (a.defined) {
                    vd.to[k] = a.to;
                    vd.winner[k] = std::int16_t(letter_class(a.winner));
                    vd.loser[k] = std::int16_t(letter_class(a.loser));
                }
            }
        }
        for (const auto& a : spec_.loop.arrows())
            loop_arrows_.emplace_back(a.winner_class(), a.loser_class());
        base_cone_ = std::make_unique<ThetaCone>(spec_.base());
    }

    const SectionSpec& spec() const { return spec_; }
    int base_vertex() const { return base_; }

    // a point of the section: lambda = B^T mu (normalized) pushes a balanced
    // positive mu at the base into the gamma* cylinder; tau is transported
    // from the cone at the base, landing in Theta_{gamma*}; area scales to 1
    Point sample(Rng& rng, const ThetaSampler& tau_sampler) const {
        const auto& base = spec_.base();
        ClassVec<double> mu(d_);
        for (auto& v : mu) v = -std::log(1.0 - rng.uniform());
        double lsum = 0, rsum = 0;
        for (int c = 0; c < d_; ++c) {
            if (base.is_left_double(2 * c)) lsum += mu[c];
            if (base.is_right_double(2 * c)) rsum += mu[c];
        }
        const double target = (lsum + rsum) / 2;
        for (int c = 0; c < d_; ++c) {
            if (base.is_left_double(2 * c)) mu[c] *= target / lsum;
            if (base.is_right_double(2 * c)) mu[c] *= target / rsum;
        }
        ClassVec<double> lambda = spec_.loop_matrix.apply_transpose(mu);
        const double n = norm1(lambda);
        for (auto& v : lambda) v /= n;

        // exact transport, and one extra push through the strongly positive
        // loop: the image is uniformly interior, so the double conversion
        // below cannot cross the cone boundary
        auto tau_exact = tau_sampler.sample(base_, rng);
        for (int rep = 0; rep < 2; ++rep)
            for (const auto& [w, l] : loop_arrows_)
                transport_tau_forward(tau_exact, w, l);
        Rat scale(0);
        for (const auto& v : tau_exact) {
            const Rat a = v < 0 ? Rat(-v) : v;
            if (a > scale) scale = a;
        }
        ClassVec<double> tau(d_);
        for (int c = 0; c < d_; ++c) tau[c] = to_double(tau_exact[c] / scale);

        Point pt{std::move(lambda), std::move(tau)};
        normalize_area(pt);
        return pt;
    }

    void normalize_area(Point& pt) const {
        SuspensionPoint<double> x(pt.lambda, spec_.base(), pt.tau);
        const double a = x.area();
        if (!(a > 0)) throw numeric_error("sampled point has nonpositive area");
        for (auto& v : pt.tau) v /= a;
    }

    Return first_return(const Point& start, long budget = 2000000000,
                        Options opt = Options()) const {
        double lambda[8], tau[8];
        for (int c = 0; c < d_; ++c) {
            lambda[c] = start.lambda[c];
            tau[c] = start.tau[c];
        }
        int at = base_;
        std::uint64_t branch_hash = 0xcbf29ce484222325ULL;
        std::string word;
        IntMat matrix = opt.record_matrix ? IntMat::identity(d_) : IntMat();
        const bool recording = opt.record_word || opt.record_matrix;
        double r_acc = 0;
        double norm = 0;
        for (int c = 0; c < d_; ++c) norm += lambda[c];
        const VertexData* vd = vdata_.data();
        for (long step = 1; step <= budget; ++step) {
            const VertexData& v = vd[at];
            const double ll = lambda[v.lc], lr = lambda[v.rc];
            if (ll == lr)
                throw not_in_domain("orbit hit the tie boundary");
            const int side = ll > lr ? 0 : 1;
            if (!v.defined[side])
                throw numeric_error("float orbit drifted to an undefined operation");
            const int w = v.winner[side], l = v.loser[side];
            const double shed = lambda[l];
            lambda[w] -= shed;
            norm -= shed;
            tau[w] -= tau[l];
            if (recording) {
                if (opt.record_word) word += side == 0 ? 'L' : 'R';
                if (opt.record_matrix) matrix.left_compose_arrow(w, l);
                branch_hash ^=
                    std::uint64_t(2 * at + side) + 0x9e3779b9u + (branch_hash << 6);
            }
            at = v.to[side];
            // paired rescaling keeps both coordinates in range on long
            // waits; it is the scaling the flow applies at the return anyway
            if (norm < 0.5) {
                r_acc -= std::log(norm);
                const double inv = 1.0 / norm;
                for (int c = 0; c < d_; ++c) {
                    lambda[c] *= inv;
                    tau[c] *= norm;
                }
                rebalance(at, lambda);
                norm = 0;
                for (int c = 0; c < d_; ++c) norm += lambda[c];
            }
            // the orbit is in the section iff it sits at the base vertex with
            // lambda inside the loop cylinder and tau inside the loop cone;
            // both are direct cone membership tests
            if (at == base_ && step > 1 && lambda_in_cylinder(lambda) &&
                tau_in_loop_cone(tau)) {
                double nn = 0;
                for (int c = 0; c < d_; ++c) nn += lambda[c];
                Return out;
                out.r = r_acc - std::log(nn);
                out.steps = step;
                out.branch = recording ? branch_hash : 0;
                out.word = std::move(word);
                out.matrix = std::move(matrix);
                out.point.lambda.resize(d_);
                out.point.tau.resize(d_);
                for (int c = 0; c < d_; ++c) {
                    out.point.lambda[c] = lambda[c] / nn;
                    out.point.tau[c] = tau[c] * nn;
                }
                return out;
            }
        }
        throw budget_error("orbit did not return to the section within budget");
    }

    // the branch matrix B_gamma of a recorded branch word
    IntMat branch_matrix(const std::string& word) const {
        Path g = Path::from_word(spec_.base(), word);
        return path_matrix(g);
    }

    // structural check: a branch is gamma* itself or gamma* g0 gamma* not
    // beginning with gamma* gamma*
    bool branch_shape_ok(const std::string& word) const {
        Path g = Path::from_word(spec_.base(), word);
        auto toks = path_tokens(g);
        Path ref_path = spec_.loop;
        auto ref = path_tokens(ref_path);
        if (toks.size() < ref.size()) return false;
        for (std::size_t i = 0; i < ref.size(); ++i)
            if (toks[i] != ref[i]) return false;  // begins with gamma*
        for (std::size_t i = 0; i < ref.size(); ++i)
            if (toks[toks.size() - ref.size() + i] != ref[i]) return false;
        if (toks.size() == ref.size()) return true;
        if (toks.size() >= 2 * ref.size()) {
            bool doubled = true;
            for (std::size_t i = 0; i < ref.size(); ++i)
                if (toks[ref.size() + i] != ref[i]) doubled = false;
            if (doubled) return false;  // would not be a first return
        }
        return g.end() == spec_.base();
    }

    // Branches of the return map, enumerated symbolically: gamma* itself and
    // the minimal words gamma* g0 gamma* with no internal return point. The
    // shortest ones carry most of the measure; their matrices are small and
    // exact, unlike the matrices of deep sampled branches whose entries have
    // about e^r digits.
    std::vector<Path> enumerate_branches(int count, int extra_length_cap = 40) const {
        std::vector<Path> out;
        const auto ref = path_tokens(spec_.loop);
        auto is_minimal_branch = [&](const Path& g) {
            auto toks = path_tokens(g);
            if (toks.size() < ref.size()) return false;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                if (toks[i] != ref[i]) return false;
                if (toks[toks.size() - ref.size() + i] != ref[i]) return false;
            }
            if (toks.size() == ref.size()) return true;
            // no internal moment with past ending and future beginning gamma*
            for (std::size_t k = ref.size(); k + ref.size() < toks.size(); ++k) {
                bool ends = k >= ref.size(), begins = true;
                for (std::size_t i = 0; i < ref.size() && ends; ++i)
                    if (toks[k - ref.size() + i] != ref[i]) ends = false;
                for (std::size_t i = 0; i < ref.size() && begins; ++i)
                    if (toks[k + i] != ref[i]) begins = false;
                if (ends && begins) return false;
            }
            return true;
        };
        if (is_minimal_branch(spec_.loop)) out.push_back(spec_.loop);
        // grow continuations of gamma* breadth-first until they close with
        // another copy of gamma*
        std::vector<Path> frontier{spec_.loop};
        for (int len = 1; len <= extra_length_cap && int(out.size()) < count; ++len) {
            std::vector<Path> next;
            for (const auto& p : frontier) {
                for (Side s : {Side::Left, Side::Right}) {
                    Path q = p;
                    if (!q.extend(s)) continue;
                    if (int(out.size()) < count && q.end() == spec_.base()) {
                        // candidate gamma* g0, closing into gamma* g0 gamma*
                        Path full = q.concat(spec_.loop);
                        if (is_minimal_branch(full)) out.push_back(std::move(full));
                    }
                    next.push_back(std::move(q));
                }
            }
            frontier = std::move(next);
            if (frontier.size() > 20000)
                frontier.erase(frontier.begin() + 20000, frontier.end());
        }
        return out;
    }

  private:
    // lambda in Delta_{gamma*}: (B^T)^{-1} lambda stays positive arrow by arrow
    bool lambda_in_cylinder(const double* lambda) const {
        double x[8];
        for (int c = 0; c < d_; ++c) x[c] = lambda[c];
        for (const auto& [w, l] : loop_arrows_) {
            x[w] -= x[l];
            if (!(x[w] > 0)) return false;
        }
        for (int c = 0; c < d_; ++c)
            if (!(x[c] > 0)) return false;
        return true;
    }

    // tau in Theta_{gamma*}: B^T tau lands in the open cone at the base
    bool tau_in_loop_cone(const double* tau) const {
        double x[8];
        for (int c = 0; c < d_; ++c) x[c] = tau[c];
        for (auto it = loop_arrows_.rbegin(); it != loop_arrows_.rend(); ++it)
            x[it->first] += x[it->second];
        for (const auto& row : base_cone_->ineqs) {
            double s = 0;
            for (int c = 0; c < d_; ++c)
                if (row[c]) s += row[c] * x[c];
            if (!(s > 0)) return false;
        }
        return true;
    }

    // pull the vector back onto the balance hyperplane; rounding noise gets
    // amplified by the rescaling, and the double-class sums absorb it
    // without touching positivity
    void rebalance(int vertex, double* lambda) const {
        const auto& p = diagram_.vertex(vertex);
        double lsum = 0, rsum = 0;
        for (int c = 0; c < d_; ++c) {
            if (p.is_left_double(2 * c)) lsum += lambda[c];
            if (p.is_right_double(2 * c)) rsum += lambda[c];
        }
        if (!(lsum > 0) || !(rsum > 0)) return;
        const double target = (lsum + rsum) / 2;
        for (int c = 0; c < d_; ++c) {
            if (p.is_left_double(2 * c)) lambda[c] *= target / lsum;
            if (p.is_right_double(2 * c)) lambda[c] *= target / rsum;
        }
    }

    struct VertexData {
        std::int16_t lc = 0, rc = 0;
        int to[2] = {-1, -1};
        std::int16_t winner[2] = {0, 0}, loser[2] = {0, 0};
        bool defined[2] = {false, false};
    };

    const RauzyDiagram& diagram_;
    SectionSpec spec_;
    int base_ = 0, d_ = 0;
    std::vector<VertexData> vdata_;
    std::vector<std::pair<int, int>> loop_arrows_;
    std::unique_ptr<ThetaCone> base_cone_;
};

// ---------------------------------------------------------------------------
// numeric certification reports for the section

struct ContractionReport {
    int branches = 0;
    int pairs_per_branch = 0;
    double sup_ratio = 0;         // strict-contraction sup over sampled pairs
    double birkhoff_bound = 0;    // max exact bound over the branches
};

// dist(h x, h y) / dist(x, y) for the inverse branch h of a branch matrix
inline double contraction_ratio(const IntMat& b, const ClassVec<double>& x,
                                const ClassVec<double>& y) {
    const double d0 = hilbert_distance(x, y);
    if (d0 <= 0) throw domain_error("collinear pair excluded from ratios");
    const auto bx = b.apply_transpose(x), by = b.apply_transpose(y);
    return hilbert_distance(bx, by) / d0;
}

inline ClassVec<double> random_positive_vector(int d, Rng& rng) {
    ClassVec<double> v(d);
    for (auto& x : v) x = 0.05 + rng.uniform();
    return v;
}

inline ContractionReport contraction_report(const std::vector<IntMat>& branches,
                                            int pairs, Rng& rng) {
    ContractionReport rep;
    rep.branches = int(branches.size());
    rep.pairs_per_branch = pairs;
    for (const auto& b : branches) {
        rep.birkhoff_bound = std::max(rep.birkhoff_bound, birkhoff_contraction_bound(b));
        for (int t = 0; t < pairs; ++t) {
            const auto x = random_positive_vector(b.dim(), rng);
            const auto y = random_positive_vector(b.dim(), rng);
            rep.sup_ratio = std::max(rep.sup_ratio, contraction_ratio(b, x, y));
        }
    }
    return rep;
}

struct RoofRegularityReport {
    double max_ratio = 0;   // |r h x - r h y| / dist(x, y), over sampled pairs
    int pairs = 0;
};

// the roof composed with an inverse branch is log ||B^T lambda||, which is
// 1-Lipschitz for the Hilbert metric; the report records the observed bound
inline RoofRegularityReport roof_regularity_check(const std::vector<IntMat>& branches,
                                                  int pairs, Rng& rng) {
    RoofRegularityReport rep;
    for (const auto& b : branches) {
        for (int t = 0; t < pairs; ++t) {
            auto x = random_positive_vector(b.dim(), rng);
            auto y = random_positive_vector(b.dim(), rng);
            const double n = norm1(x), m = norm1(y);
            for (auto& v : x) v /= n;
            for (auto& v : y) v /= m;
            const double d0 = hilbert_distance(x, y);
            if (d0 <= 1e-12) continue;
            const double rx = std::log(norm1(b.apply_transpose(x)));
            const double ry = std::log(norm1(b.apply_transpose(y)));
            rep.max_ratio = std::max(rep.max_ratio, std::abs(rx - ry) / d0);
            ++rep.pairs;
        }
    }
    return rep;
}

// Perron direction by power iteration (matrices are strictly positive)
inline ClassVec<double> perron_vector(const IntMat& b, int iters = 200) {
    ClassVec<double> v(b.dim(), 1.0);
    for (int i = 0; i < iters; ++i) {
        v = b.apply(v);
        const double n = norm1(v);
        for (auto& x : v) x /= n;
    }
    return v;
}

// numeric rank of a small set of vectors
inline int numeric_rank(std::vector<ClassVec<double>> vecs, double tol = 1e-9) {
    int rank = 0;
    const int d = vecs.empty() ? 0 : int(vecs.front().size());
    for (int c = 0; c < d && rank < int(vecs.size()); ++c) {
        int pivot = -1;
        double best = tol;
        for (int r = rank; r < int(vecs.size()); ++r)
            if (std::abs(vecs[r][c]) > best) {
                best = std::abs(vecs[r][c]);
                pivot = r;
            }
        if (pivot < 0) continue;
        std::swap(vecs[rank], vecs[pivot]);
        for (int r = 0; r < int(vecs.size()); ++r) {
            if (r == rank) continue;
            const double f = vecs[r][c] / vecs[rank][c];
            for (int j = 0; j < d; ++j) vecs[r][j] -= f * vecs[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace rvi
