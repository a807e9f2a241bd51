#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rvi/cones.hpp"
#include "rvi/path.hpp"
#include "rvi/rng.hpp"
#include "rvi/suspension.hpp"

namespace rvi {

// The length polytope {lambda in S_pi^+ : <lambda, q> < 1} and its exact
// volume with respect to the calibrated (d-1)-form on the balance
// hyperplane (omega = omega_v wedge <v_pi, .>).

struct LambdaPolytope {
    struct Vertex {
        ClassVec<Rat> point;
        Rat weight;              // q_a or q_a + q_b
        int a = -1, b = -1;      // class indices; b = -1 for a simple vertex
    };
    MarkedPermutation perm;
    ClassVec<Rat> q;
    std::vector<Vertex> vertices;  // the nonzero ones; 0 is always a vertex
};

inline LambdaPolytope polytope_vertices(const MarkedPermutation& p,
                                        const ClassVec<Rat>& q) {
    for (const auto& x : q)
        if (!(x > 0)) throw domain_error("weights must be positive");
    LambdaPolytope out{p, q, {}};
    const int d = p.classes();
    for (int c = 0; c < d; ++c) {
        if (!p.is_simple(2 * c)) continue;
        ClassVec<Rat> v(d, Rat(0));
        v[c] = Rat(1) / q[c];
        out.vertices.push_back({std::move(v), q[c], c, -1});
    }
    for (int a = 0; a < d; ++a) {
        if (!p.is_left_double(2 * a)) continue;
        for (int b = 0; b < d; ++b) {
            if (!p.is_right_double(2 * b)) continue;
            ClassVec<Rat> v(d, Rat(0));
            const Rat w = q[a] + q[b];
            v[a] = Rat(1) / w;
            v[b] = Rat(1) / w;
            out.vertices.push_back({std::move(v), w, a, b});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// exact volume of {x in C : <q, x> <= 1} for a pointed cone C in S_pi

namespace detail {

inline RatMat rays_to_ratmat(const std::vector<std::vector<Int>>& rays,
                             const std::vector<int>& pick) {
    RatMat m;
    for (int i : pick) {
        RatVec row;
        row.reserve(rays[i].size());
        for (const auto& x : rays[i]) row.emplace_back(x);
        m.push_back(std::move(row));
    }
    return m;
}

inline std::vector<std::vector<int>> triangulate(
    const std::vector<std::vector<Int>>& rays, const RatMat& ineqs,
    std::vector<int> members) {
    const int k = rank(rays_to_ratmat(rays, members));
    if (int(members.size()) == k) return {members};
    std::vector<std::vector<int>> out;
    const int pivot = members.front();
    for (const auto& a : ineqs) {
        // facet of the sub-cone: members tight on a, of rank k-1, pivot off it
        Rat pv(0);
        for (std::size_t c = 0; c < a.size(); ++c)
            if (a[c] != 0) pv += a[c] * Rat(rays[pivot][c]);
        if (pv == 0) continue;
        std::vector<int> tight;
        for (int i : members) {
            Rat s(0);
            for (std::size_t c = 0; c < a.size(); ++c)
                if (a[c] != 0) s += a[c] * Rat(rays[i][c]);
            if (s == 0) tight.push_back(i);
        }
        if (tight.empty() || rank(rays_to_ratmat(rays, tight)) != k - 1) continue;
        for (auto sub : triangulate(rays, ineqs, tight)) {
            sub.push_back(pivot);
            out.push_back(std::move(sub));
        }
    }
    return out;
}

inline Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace detail

// cone {x in S_pi : rows >= 0} described by integer inequality rows over the
// class coordinates, truncated by <q, x> <= 1
struct TruncatedCone {
    MarkedPermutation perm;
    RatMat inequalities;
};

inline TruncatedCone positive_cone(const MarkedPermutation& p) {
    TruncatedCone c{p, {}};
    const int d = p.classes();
    for (int i = 0; i < d; ++i) {
        RatVec row(d, Rat(0));
        row[i] = 1;
        c.inequalities.push_back(std::move(row));
    }
    return c;
}

// cone of the cylinder of a path from pi: (B_gamma^T)^{-1} lambda >= 0
inline TruncatedCone cylinder_cone(const Path& g) {
    const int d = g.start().classes();
    // rows of (B^T)^{-1}, built arrow by arrow: left-multiplying by
    // (B_arrow^T)^{-1} subtracts the loser row from the winner row
    RatMat m(d, RatVec(d, Rat(0)));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    for (const auto& a : g.arrows()) {
        const int w = a.winner_class(), l = a.loser_class();
        for (int c = 0; c < d; ++c) m[w][c] -= m[l][c];
    }
    return TruncatedCone{g.start(), std::move(m)};
}

inline Rat v_pi_norm2(const MarkedPermutation& p) {
    auto v = v_pi(p);
    Rat s(0);
    for (const auto& x : v) s += x * x;
    return s;
}

// exact nu measure of {x in cone : <q, x> < 1}
inline Rat nu_volume(const TruncatedCone& cone, const ClassVec<Rat>& q) {
    const int d = cone.perm.classes();
    if (d > 6)
        throw budget_error("exact mode is limited to small numbers of classes");
    PolyhedralCone c;
    c.dim = d;
    {
        ThetaCone tc(cone.perm);
        c.equalities.push_back(PolyhedralCone::to_ratvec(tc.balance));
    }
    c.inequalities = cone.inequalities;
    auto rays = extreme_rays(c);
    if (rays.empty()) return Rat(0);
    std::vector<int> all(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) all[i] = int(i);
    if (rank(detail::rays_to_ratmat(rays, all)) < d - 1) return Rat(0);
    auto tri = detail::triangulate(rays, cone.inequalities, all);

    const auto v = v_pi(cone.perm);
    const Rat v2 = v_pi_norm2(cone.perm);
    Rat total(0);
    for (const auto& simplex : tri) {
        IntMat m(d);
        for (int r = 0; r < d - 1; ++r)
            for (int ccol = 0; ccol < d; ++ccol)
                m(r, ccol) = rays[simplex[r]][ccol];
        for (int ccol = 0; ccol < d; ++ccol) {
            // v_pi has integer entries
            m(d - 1, ccol) = boost::multiprecision::numerator(v[ccol]);
        }
        Int det = m.determinant();
        if (det < 0) det = -det;
        if (det == 0) continue;
        Rat denom = v2 * Rat(detail::factorial(d - 1));
        for (int r = 0; r < d - 1; ++r) {
            Rat w(0);
            for (int cc = 0; cc < d; ++cc)
                if (rays[simplex[r]][cc] != 0) w += q[cc] * Rat(rays[simplex[r]][cc]);
            if (!(w > 0))
                throw domain_error("cone ray escapes the weight functional");
            denom *= w;
        }
        total += Rat(det) / denom;
    }
    return total;
}

// nu of the whole polytope Lambda_{pi,q}
inline Rat nu_whole(const MarkedPermutation& p, const ClassVec<Rat>& q) {
    return nu_volume(positive_cone(p), q);
}

// nu_{pi,q} of the cylinder of a path starting at pi
inline Rat nu_cylinder(const Path& g, const ClassVec<Rat>& q) {
    return nu_volume(cylinder_cone(g), q);
}

// transported weights along a path: q' = B_gamma q
inline ClassVec<Rat> push_weights(const Path& g, ClassVec<Rat> q) {
    for (const auto& a : g.arrows())
        transport_height_forward(q, a.winner_class(), a.loser_class());
    return q;
}

// Monte-Carlo estimate with a Bernoulli confidence radius (z = 3):
// rejection sampling in a bounding box of the balance hyperplane
struct McEstimate {
    double value = 0;
    double radius = 0;  // 3 sigma
    long hits = 0, samples = 0;
};

inline McEstimate nu_volume_mc(const TruncatedCone& cone, const ClassVec<Rat>& q,
                               long samples, Rng& rng) {
    const int d = cone.perm.classes();
    PolyhedralCone c;
    c.dim = d;
    {
        ThetaCone tc(cone.perm);
        c.equalities.push_back(PolyhedralCone::to_ratvec(tc.balance));
    }
    c.inequalities = cone.inequalities;
    const auto rays = extreme_rays(c);
    // basis of the balance hyperplane
    RatMat bal(1, RatVec(d));
    {
        ThetaCone tc(cone.perm);
        for (int i = 0; i < d; ++i) bal[0][i] = tc.balance[i];
    }
    std::vector<std::vector<Int>> ibasis;
    for (const auto& b : kernel(bal, d)) ibasis.push_back(primitive_direction(b));
    const int k = int(ibasis.size());  // = d-1
    // vertex coordinates in that integer basis bound the sampling box
    std::vector<double> lo(k, 0.0), hi(k, 0.0);
    for (const auto& ray : rays) {
        // scale the ray onto <q, x> = 1 and solve for coordinates
        Rat w(0);
        for (int cc = 0; cc < d; ++cc)
            if (ray[cc] != 0) w += q[cc] * Rat(ray[cc]);
        if (!(w > 0)) throw domain_error("unbounded target for MC sampling");
        RatMat aug(d, RatVec(k + 1, Rat(0)));
        for (int r = 0; r < d; ++r) {
            for (int j = 0; j < k; ++j) aug[r][j] = Rat(ibasis[j][r]);
            aug[r][k] = Rat(ray[r]) / w;
        }
        rref(aug);
        for (int j = 0; j < k; ++j) {
            const double val = to_double(aug[j][k]);
            lo[j] = std::min(lo[j], val);
            hi[j] = std::max(hi[j], val);
        }
    }
    // box volume in the calibrated form
    IntMat cal(d);
    {
        const auto v = v_pi(cone.perm);
        for (int r = 0; r < k; ++r)
            for (int cc = 0; cc < d; ++cc) cal(r, cc) = ibasis[r][cc];
        for (int cc = 0; cc < d; ++cc)
            cal(k, cc) = boost::multiprecision::numerator(v[cc]);
    }
    double box_form = std::abs(to_double(Rat(cal.determinant()) /
                                         v_pi_norm2(cone.perm)));
    for (int j = 0; j < k; ++j) box_form *= (hi[j] - lo[j]);

    long hits = 0;
    std::vector<double> x(d);
    for (long s = 0; s < samples; ++s) {
        for (int j = 0; j < k; ++j) {
            const double y = rng.uniform(lo[j], hi[j]);
            for (int cc = 0; cc < d; ++cc) {
                if (j == 0) x[cc] = 0;
                x[cc] += y * to_double(ibasis[j][cc]);
            }
        }
        bool inside = true;
        double qs = 0;
        for (int cc = 0; cc < d && inside; ++cc) qs += to_double(q[cc]) * x[cc];
        if (qs > 1) inside = false;
        for (const auto& row : cone.inequalities) {
            if (!inside) break;
            double s2 = 0;
            for (int cc = 0; cc < d; ++cc) s2 += to_double(row[cc]) * x[cc];
            if (s2 < 0) inside = false;
        }
        if (inside) ++hits;
    }
    const double pfrac = double(hits) / double(samples);
    McEstimate est;
    est.value = pfrac * box_form;
    est.radius = 3.0 * std::sqrt(pfrac * (1 - pfrac) / double(samples)) * box_form;
    est.hits = hits;
    est.samples = samples;
    return est;
}

// transition probability of an arrow or path gamma out of pi:
//   P_q(gamma | pi) = nu_{pi_e, B q}(whole) / nu_{pi, q}(whole)
inline Rat transition_probability(const ClassVec<Rat>& q, const Path& g) {
    const Rat num = nu_whole(g.end(), push_weights(g, q));
    const Rat den = nu_whole(g.start(), q);
    if (den == 0) throw numeric_error("zero-measure denominator");
    return num / den;
}

// one step of the nu-induced Markov chain on arrows
struct MarkovStep {
    Arrow arrow;
    Rat probability;
};

inline MarkovStep markov_arrow_step(const MarkedPermutation& p, const ClassVec<Rat>& q,
                                    Rng& rng) {
    std::optional<Arrow> left = Arrow::make(p, Side::Left);
    std::optional<Arrow> right = Arrow::make(p, Side::Right);
    if (!left && !right) throw domain_error("no operation defined at this vertex");
    const Rat den = nu_whole(p, q);
    auto prob = [&](const Arrow& a) {
        Path g(p);
        Path ga = g;
        ga.append(a);
        return nu_whole(a.end, push_weights(ga, q)) / den;
    };
    if (left && !right) return {*left, Rat(1)};
    if (right && !left) return {*right, Rat(1)};
    const Rat pl = prob(*left);
    const Rat u(Int(rng.bits() >> 11), Int(1) << 53);
    if (u < pl) return {*left, pl};
    return {*right, Rat(1) - pl};
}

}  // namespace rvi
