#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <atomic>
#include <thread>
#include <vector>

#include "rvi/polytope.hpp"
#include "rvi/section.hpp"

namespace rvi {

struct ExperimentConfig {
    std::uint64_t seed = 1;
    long samples = 2000;
    int threads = 1;
    long step_budget = 30000000;  // induction steps per return before giving up
};

// run `jobs` deterministic chains over `threads` workers; results land in
// chain order, so the reduction is independent of the schedule
template <class F>
void run_chains(long jobs, int threads, F&& body) {
    if (threads <= 1) {
        for (long j = 0; j < jobs; ++j) body(j);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const long j = next.fetch_add(1);
                if (j >= jobs) return;
                body(j);
            }
        });
    for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// distortion experiment: the chance that the transported weights blow up by
// a factor C while some class stays small, under the nu-induced arrow chain

struct DistortionRow {
    double c;
    double probability;
    double ci;  // 3 sigma
};

inline Rat max_weight(const ClassVec<Rat>& q) {
    Rat m = q[0];
    for (const auto& x : q)
        if (x > m) m = x;
    return m;
}
inline Rat min_weight(const ClassVec<Rat>& q) {
    Rat m = q[0];
    for (const auto& x : q)
        if (x < m) m = x;
    return m;
}

inline std::vector<DistortionRow> distortion_experiment(
    const MarkedPermutation& start, const ClassVec<Rat>& q0,
    const std::vector<double>& c_grid, const ExperimentConfig& cfg) {
    if (c_grid.empty()) throw structural_error("distortion needs a C grid");
    const double cmax = *std::max_element(c_grid.begin(), c_grid.end());
    const Rat m0 = max_weight(q0);
    std::vector<std::vector<char>> events(cfg.samples,
                                          std::vector<char>(c_grid.size(), 0));
    run_chains(cfg.samples, cfg.threads, [&](long chain) {
        Rng rng(Rng::chain_seed(cfg.seed, std::uint64_t(chain)));
        MarkedPermutation p = start;
        ClassVec<Rat> q = q0;
        std::vector<char> crossed(c_grid.size(), 0);
        for (int step = 0; step < cfg.step_budget; ++step) {
            const Rat mq = max_weight(q);
            bool all = true;
            for (std::size_t i = 0; i < c_grid.size(); ++i) {
                if (crossed[i]) continue;
                // first time the maximum exceeds C M(q0): the minimal path
                // for level C ends here
                if (mq > Rat(Int(llround(c_grid[i] * 4096)), Int(4096)) * m0) {
                    crossed[i] = 1;
                    events[chain][i] = (min_weight(q) < m0) ? 1 : 0;
                }
                if (!crossed[i]) all = false;
            }
            if (all || to_double(mq) > 4 * cmax * to_double(m0)) break;
            auto st = markov_arrow_step(p, q, rng);
            transport_height_forward(q, st.arrow.winner_class(),
                                     st.arrow.loser_class());
            p = st.arrow.end;
        }
    });
    std::vector<DistortionRow> rows;
    for (std::size_t i = 0; i < c_grid.size(); ++i) {
        long hits = 0;
        for (long chain = 0; chain < cfg.samples; ++chain)
            hits += events[chain][i];
        const double prob = double(hits) / double(cfg.samples);
        rows.push_back({c_grid[i], prob,
                        3.0 * std::sqrt(prob * (1 - prob) / double(cfg.samples))});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// roof tail experiment over the certified section

struct TailRow {
    double t;
    double tail;  // empirical P(r > t)
    double ci;
};

struct TailReport {
    std::vector<TailRow> rows;
    double slope = 0;   // fitted on log tail
    double r2 = 0;
    double min_r = 0;
    long samples = 0;
};

inline std::vector<double> collect_returns(const SectionDynamics& dyn,
                                            const ThetaSampler& tau_sampler,
                                            const ExperimentConfig& cfg) {
    std::vector<double> rs(cfg.samples, 0.0);
    run_chains(cfg.samples, cfg.threads, [&](long chain) {
        Rng rng(Rng::chain_seed(cfg.seed, std::uint64_t(chain)));
        auto pt = dyn.sample(rng, tau_sampler);
        rs[chain] = dyn.first_return(pt, cfg.step_budget).r;
    });
    return rs;
}

// quantile grid over collected return times; deterministic given the seed
inline std::vector<double> quantile_grid(std::vector<double> rs,
                                         const std::vector<double>& quantiles) {
    std::sort(rs.begin(), rs.end());
    std::vector<double> grid;
    for (double q : quantiles)
        grid.push_back(rs[std::min(rs.size() - 1, std::size_t(q * double(rs.size())))]);
    return grid;
}

inline TailReport tail_from_samples(const std::vector<double>& rs,
                                    const std::vector<double>& t_grid) {
    TailReport rep;
    rep.samples = long(rs.size());
    rep.min_r = *std::min_element(rs.begin(), rs.end());
    std::vector<double> xs, ys;
    for (double t : t_grid) {
        long n = 0;
        for (double r : rs)
            if (r > t) ++n;
        const double tail = double(n) / double(rs.size());
        rep.rows.push_back(
            {t, tail, 3.0 * std::sqrt(tail * (1 - tail) / double(rs.size()))});
        if (n > 0) {
            xs.push_back(t);
            ys.push_back(std::log(tail));
        }
    }
    const int n = int(xs.size());
    if (n >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < n; ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double denom = n * sxx - sx * sx;
        rep.slope = (n * sxy - sx * sy) / denom;
        const double intercept = (sy - rep.slope * sx) / n;
        double ss_res = 0, ss_tot = 0;
        for (int i = 0; i < n; ++i) {
            const double fit = rep.slope * xs[i] + intercept;
            ss_res += (ys[i] - fit) * (ys[i] - fit);
            ss_tot += (ys[i] - sy / n) * (ys[i] - sy / n);
        }
        rep.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    }
    return rep;
}

// roof tails on the section: empirical P(r > T) over the grid (or a seeded
// quantile grid when none is given), with a log-linear fit
inline TailReport tail_experiment(const SectionDynamics& dyn,
                                  const ThetaSampler& tau_sampler,
                                  std::vector<double> t_grid,
                                  const ExperimentConfig& cfg) {
    auto rs = collect_returns(dyn, tau_sampler, cfg);
    if (t_grid.empty()) t_grid = quantile_grid(rs, {0.2, 0.4, 0.6, 0.8});
    return tail_from_samples(rs, t_grid);
}

// ---------------------------------------------------------------------------
// correlation decay of an observable along the suspension flow

struct CorrelationRow {
    double t;
    double correlation;
    double ci;
};

// observable of the suspension point (lambda, tau at the section, s = height)
using Observable = std::function<double(const SectionDynamics::Point&, double)>;

inline Observable min_height_observable(const MarkedPermutation& base) {
    const IntMat om = omega(base);
    return [om](const SectionDynamics::Point& pt, double) {
        auto h = heights(om, pt.tau);
        double m = h[0];
        for (double v : h) m = std::min(m, v);
        return m;
    };
}

struct CorrelationReport {
    std::vector<CorrelationRow> rows;
    double mean = 0;      // weighted mean of the observable
    long samples = 0;
};

inline CorrelationReport correlation_experiment(const SectionDynamics& dyn,
                                                const ThetaSampler& tau_sampler,
                                                const Observable& u,
                                                std::vector<double> t_grid,
                                                const ExperimentConfig& cfg) {
    std::sort(t_grid.begin(), t_grid.end());
    struct ChainOut {
        double weight = 0;
        double u0 = 0;
        std::vector<double> ut;
    };
    std::vector<ChainOut> outs(cfg.samples);
    run_chains(cfg.samples, cfg.threads, [&](long chain) {
        Rng rng(Rng::chain_seed(cfg.seed, std::uint64_t(chain)));
        auto pt = dyn.sample(rng, tau_sampler);
        auto ret = dyn.first_return(pt, cfg.step_budget);
        const double r0 = ret.r;
        const double s0 = rng.uniform() * r0;
        ChainOut out;
        out.weight = r0;
        out.u0 = u(pt, s0);
        out.ut.assign(t_grid.size(), 0.0);
        // one sweep along the flow: heights s0 + t cross successive roofs
        SectionDynamics::Point cur = pt;
        double consumed = 0;       // total roof below the current segment
        double roof = r0;          // roof of the current segment
        auto nxt = ret;
        for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
            double height = s0 + t_grid[ti];
            while (height - consumed >= roof) {
                consumed += roof;
                cur = nxt.point;
                nxt = dyn.first_return(cur, cfg.step_budget);
                roof = nxt.r;
            }
            out.ut[ti] = u(cur, height - consumed);
        }
        outs[chain] = std::move(out);
    });
    // ratio estimators against the weighted suspension measure
    CorrelationReport rep;
    rep.samples = cfg.samples;
    double wsum = 0, usum = 0;
    for (const auto& o : outs) {
        wsum += o.weight;
        usum += o.weight * o.u0;
    }
    rep.mean = usum / wsum;
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
        double csum = 0;
        for (const auto& o : outs)
            csum += o.weight * (o.u0 - rep.mean) * (o.ut[ti] - rep.mean);
        const double corr = csum / wsum;
        double var = 0;
        for (const auto& o : outs) {
            const double dev =
                o.weight * (o.u0 - rep.mean) * (o.ut[ti] - rep.mean) -
                o.weight * corr;
            var += dev * dev;
        }
        const double se = std::sqrt(var / double(cfg.samples)) /
                          (wsum / double(cfg.samples)) /
                          std::sqrt(double(cfg.samples));
        rep.rows.push_back({t_grid[ti], corr, 3.0 * se});
    }
    return rep;
}

// CSV writers for the three experiment schemas
inline std::string distortion_csv(const std::vector<DistortionRow>& rows,
                                  const std::string& manifest_line) {
    std::ostringstream out;
    out << manifest_line << "\nC,probability,ci\n";
    for (const auto& r : rows)
        out << r.c << "," << r.probability << "," << r.ci << "\n";
    return out.str();
}
inline std::string tail_csv(const TailReport& rep, const std::string& manifest_line) {
    std::ostringstream out;
    out << manifest_line << "\nT,tail,ci\n";
    for (const auto& r : rep.rows) out << r.t << "," << r.tail << "," << r.ci << "\n";
    return out.str();
}
inline std::string correlation_csv(const CorrelationReport& rep,
                                   const std::string& manifest_line) {
    std::ostringstream out;
    out << manifest_line << "\nt,correlation,ci\n";
    for (const auto& r : rep.rows)
        out << r.t << "," << r.correlation << "," << r.ci << "\n";
    return out.str();
}

}  // namespace rvi
