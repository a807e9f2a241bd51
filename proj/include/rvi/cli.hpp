#pragma once

#include <cstdlib>
#include <mutex>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rvi/canonical.hpp"
#include "rvi/experiments.hpp"
#include "rvi/io.hpp"
#include "rvi/polytope.hpp"
#include "rvi/section.hpp"
#include "rvi/surface.hpp"

namespace rvi {

// exit-code contract: 0 ok, 1 negative certification, 2 input error,
// 3 budget exhausted, 4 numeric failure
namespace cli_exit {
constexpr int kOk = 0, kNegative = 1, kInput = 2, kBudget = 3, kNumeric = 4;
}

namespace detail {

inline std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    if (path.front() == '/') return path;
    if (const char* dir = std::getenv("RVI_OUT_DIR"))
        return std::string(dir) + "/" + path;
    return path;
}

inline void emit(const std::string& out_path, const std::string& content,
                 std::ostream& standard) {
    if (out_path.empty()) standard << content;
    else write_file(resolve_out(out_path), content);
}

// a positive balanced rational length vector, mildly randomized
inline ClassVec<Rat> seeded_lengths(const MarkedPermutation& p, Rng& rng) {
    ClassVec<Rat> lambda = balanced_unit_lengths(p);
    // scale double classes jointly to keep the balance while adding noise
    const Rat bump = rng.rational(64) + 1;
    for (int c = 0; c < p.classes(); ++c)
        if (p.is_simple(2 * c)) lambda[c] *= rng.rational(64) + 1;
        else lambda[c] *= bump;
    return lambda;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"combinatorial model of the Teichmueller flow on quadratic strata"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string row_text = kExampleRow;
    std::uint64_t seed = 1;
    long budget = 200000;
    int threads = 1;
    std::string format = "json";
    std::string out_path;
    app.add_option("--row", row_text, "permutation row, e.g. \"" +
                                           std::string(kExampleRow) + "\"");
    app.add_option("--seed", seed, "rng seed echoed into outputs");
    app.add_option("--budget", budget, "search/sample budget");
    app.add_option("--threads", threads, "worker threads for experiments");
    app.add_option("--format", format, "output format: dot, csv or json");
    app.add_option("--out", out_path, "output file (default: stdout)");

    auto* cmd_class = app.add_subcommand("class", "enumerate the Rauzy class");
    auto* cmd_certify =
        app.add_subcommand("certify", "certify a loop as strongly positive and neat");
    std::string loop_word;
    bool do_search = false;
    cmd_certify->add_option("--loop", loop_word, "loop word of L/R letters");
    cmd_certify->add_flag("--search", do_search, "search for a neat loop");
    auto* cmd_flow = app.add_subcommand("flow", "run the Veech flow on a sampled point");
    double flow_t = 5.0;
    int flow_steps = 50;
    cmd_flow->add_option("--t", flow_t, "total flow time");
    cmd_flow->add_option("--points", flow_steps, "trajectory checkpoints");
    auto* cmd_surface =
        app.add_subcommand("surface", "build the zippered rectangle surface");
    auto* cmd_measure =
        app.add_subcommand("measure", "length-polytope measures and distortion");
    long samples = 200;
    cmd_measure->add_option("--samples", samples, "monte carlo chains");
    auto* cmd_mixing =
        app.add_subcommand("mixing", "tail / correlation experiments on the section");
    std::string kind = "correlation";
    long msamples = 40;
    double tmax = 0;
    cmd_mixing->add_option("--kind", kind, "tail or correlation");
    cmd_mixing->add_option("--samples", msamples, "section samples");
    cmd_mixing->add_option("--tmax", tmax, "largest flow time in the grid");

    try {
        std::vector<const char*> argv;
        argv.push_back("rvi");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return e.get_exit_code() == 0 ? cli_exit::kOk : cli_exit::kInput;
    }

    try {
        MarkedPermutation row = MarkedPermutation::parse(row_text);
        if (cmd_class->parsed()) {
            auto g = enumerate_class(row);
            const json man = manifest("class", seed, hex64(g.content_hash()));
            auto st = stratum(row);
            if (format == "dot") {
                detail::emit(out_path, diagram_dot(g), out);
            } else {
                json doc = diagram_json(g);
                doc["manifest"] = man;
                detail::emit(out_path, doc.dump(2) + "\n", out);
            }
            err << "class: " << g.vertex_count() << " vertices, " << g.arrow_count()
                << " arrows; genus " << st.genus_downstairs << " with "
                << st.poles << " poles under a genus-" << st.genus_upstairs
                << " double cover\n";
            return cli_exit::kOk;
        }
        if (cmd_certify->parsed()) {
            auto g = enumerate_class(row);
            Path loop = [&] {
                if (!loop_word.empty())
                    return Path::from_word(row, loop_word);
                if (!do_search) throw domain_error("give --loop or --search");
                auto found = find_neat_loop(g, *g.index_of(row),
                                            int(std::min<long>(budget, 20)), 4000);
                if (!found) throw budget_error("no neat loop found within budget");
                return *found;
            }();
            auto cert = certify(loop);
            json doc{{"manifest", manifest("certify", seed, hex64(g.content_hash()))},
                     {"base", loop.start().row_text()},
                     {"word", loop.word()},
                     {"positive", cert.positive},
                     {"strongly_positive", cert.strongly_positive},
                     {"neat", cert.neat}};
            json margins = json::array();
            for (const auto& m : cert.margins) margins.push_back(rat_string(m));
            doc["margins"] = margins;
            json rays = json::array();
            for (const auto& ray : cert.rays) {
                json r = json::array();
                for (const auto& x : ray) r.push_back(x.str());
                rays.push_back(r);
            }
            doc["extreme_rays"] = rays;
            detail::emit(out_path, doc.dump(2) + "\n", out);
            err << (cert.neat ? "neat strongly positive loop\n"
                              : "loop is not neat strongly positive\n");
            return cert.neat ? cli_exit::kOk : cli_exit::kNegative;
        }
        if (cmd_flow->parsed()) {
            auto g = enumerate_class(row);
            ThetaSampler sampler(g);
            Rng rng(seed);
            // double-mode suspension point at the requested row
            ClassVec<Rat> lam = detail::seeded_lengths(row, rng);
            auto tau = sampler.sample(*g.index_of(row), rng);
            SuspensionPoint<double> x(ClassVec<double>(row.classes()), row,
                                      ClassVec<double>(row.classes()));
            for (int c = 0; c < row.classes(); ++c) {
                x.lambda[c] = to_double(lam[c]);
                x.tau[c] = to_double(tau[c]);
            }
            const double area0 = x.area();
            for (auto& v : x.tau) v /= area0;
            x = to_fundamental_domain(x);
            std::ostringstream csv;
            csv << manifest_csv_line(manifest("flow", seed, hex64(g.content_hash())))
                << "\nt,n_steps,norm_lambda,min_h,area\n";
            const double dt = flow_t / flow_steps;
            SuspensionPoint<double> cur = x;
            for (int i = 0; i <= flow_steps; ++i) {
                auto h = cur.heights_vec();
                double minh = h[0];
                for (double v : h) minh = std::min(minh, v);
                csv << (i * dt) << "," << i << "," << cur.phi() << "," << minh << ","
                    << cur.area() << "\n";
                if (i < flow_steps) cur = veech_flow(cur, dt);
            }
            detail::emit(out_path, csv.str(), out);
            err << "flow: " << flow_steps << " checkpoints to t = " << flow_t << "\n";
            return cli_exit::kOk;
        }
        if (cmd_surface->parsed()) {
            auto g = enumerate_class(row);
            ThetaSampler sampler(g);
            Rng rng(seed);
            ClassVec<Rat> lam = detail::seeded_lengths(row, rng);
            auto tau = sampler.sample(*g.index_of(row), rng);
            SuspensionPoint<Rat> x(lam, row, tau);
            auto s = build_surface(x);
            auto st = stratum(row);
            int lt_sum = 0;
            for (int v : st.upstairs) lt_sum += v;
            if (format == "csv") {
                std::ostringstream csv;
                csv << manifest_csv_line(
                           manifest("surface", seed, hex64(g.content_hash())))
                    << "\nname,x0,y0,x1,y1\n";
                for (Letter a = 0; a < row.alphabet().letters(); ++a)
                    for (bool top : {true, false}) {
                        auto r = s.rectangle(a, top);
                        csv << (top ? "Rt_" : "Rb_") << row.alphabet().letter_name(a)
                            << "," << to_double(r.x0) << "," << to_double(r.y0) << ","
                            << to_double(r.x1) << "," << to_double(r.y1) << "\n";
                    }
                detail::emit(out_path, csv.str(), out);
            } else {
                json doc{{"manifest", manifest("surface", seed, hex64(g.content_hash()))},
                         {"area", rat_string(s.area())},
                         {"outer_sum", rat_string(s.outer_sum())}};
                json rects = json::array();
                for (Letter a = 0; a < row.alphabet().letters(); ++a)
                    for (bool top : {true, false}) {
                        auto r = s.rectangle(a, top);
                        rects.push_back(json{{"letter", row.alphabet().letter_name(a)},
                                             {"side", top ? "top" : "bottom"},
                                             {"x0", rat_string(r.x0)},
                                             {"x1", rat_string(r.x1)},
                                             {"y0", rat_string(r.y0)},
                                             {"y1", rat_string(r.y1)}});
                    }
                doc["rectangles"] = rects;
                json ids = json::array();
                for (const auto& id : s.identifications())
                    ids.push_back(json{
                        {"kind",
                         id.kind ==
                                 ZipperedRectangleSurface<Rat>::Identification::RectanglePair
                             ? "rectangle"
                             : "outer"},
                        {"letter", row.alphabet().letter_name(id.letter)},
                        {"shift_x", rat_string(id.shift_x)},
                        {"shift_y", rat_string(id.shift_y)},
                        {"side_length", rat_string(id.side_length)}});
                doc["identifications"] = ids;
                json segs = json::array();
                for (const auto& seg : s.segments())
                    segs.push_back(json{{"letter", row.alphabet().letter_name(seg.letter)},
                                        {"side", seg.top ? "top" : "bottom"},
                                        {"x", rat_string(seg.x)},
                                        {"y0", rat_string(seg.y0)},
                                        {"y1", rat_string(seg.y1)}});
                doc["segments"] = segs;
                json sing = json::array();
                for (const auto& c : s.singularity_table().classes)
                    sing.push_back(json{{"pairs", c.members.size()},
                                        {"angle_halfturns", c.two_k},
                                        {"irregular", c.irregular}});
                doc["singularities"] = sing;
                doc["stratum"] =
                    json{{"upstairs", st.upstairs},
                         {"genus_upstairs", st.genus_upstairs},
                         {"genus_downstairs", st.genus_downstairs},
                         {"poles", st.poles}};
                detail::emit(out_path, doc.dump(2) + "\n", out);
            }
            err << "surface: sum of multiplicities " << lt_sum << " = 4g-4 with g = "
                << st.genus_upstairs << "\n";
            return cli_exit::kOk;
        }
        if (cmd_measure->parsed()) {
            auto g = enumerate_class(row);
            // a seeded non-constant weight: with constant weights the
            // distortion event m(Bq) < M(q) is empty
            Rng qrng(seed);
            ClassVec<Rat> q(row.classes(), Rat(1));
            for (auto& x : q) x += qrng.rational(8);
            ExperimentConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.threads = threads;
            auto rows = distortion_experiment(row, q, {2, 4, 8, 16, 32}, cfg);
            detail::emit(out_path,
                         distortion_csv(rows, manifest_csv_line(manifest(
                                                  "measure", seed,
                                                  hex64(g.content_hash())))),
                         out);
            err << "measure: nu of the weighted polytope = "
                << rat_string(nu_whole(row, q)) << "\n";
            return cli_exit::kOk;
        }
        if (cmd_mixing->parsed()) {
            auto g = enumerate_class(MarkedPermutation::parse(kSectionClassRow));
            SectionDynamics dyn(g, canonical_section());
            ThetaSampler sampler(g);
            ExperimentConfig cfg;
            cfg.seed = seed;
            cfg.samples = msamples;
            cfg.threads = threads;
            const json man = manifest("mixing", seed, hex64(g.content_hash()));
            if (kind == "tail") {
                auto rep = tail_experiment(dyn, sampler, {}, cfg);
                detail::emit(out_path, tail_csv(rep, manifest_csv_line(man)), out);
                err << "tail: slope " << rep.slope << ", r2 " << rep.r2
                    << ", min r " << rep.min_r << "\n";
            } else {
                auto u = min_height_observable(dyn.spec().base());
                const double top = tmax > 0 ? tmax : 1.8e7;
                std::vector<double> grid;
                for (int i = 0; i <= 5; ++i) grid.push_back(top * i / 5.0);
                auto rep = correlation_experiment(dyn, sampler, u, grid, cfg);
                detail::emit(out_path, correlation_csv(rep, manifest_csv_line(man)),
                             out);
                err << "correlation at 0: " << rep.rows.front().correlation << "\n";
            }
            return cli_exit::kOk;
        }
        err << "input error: no subcommand\n";
        return cli_exit::kInput;
    } catch (const budget_error& e) {
        err << "budget error: " << e.what() << "\n";
        return cli_exit::kBudget;
    } catch (const not_in_domain& e) {
        err << "numeric error: " << e.what() << "\n";
        return cli_exit::kNumeric;
    } catch (const numeric_error& e) {
        err << "numeric error: " << e.what() << "\n";
        return cli_exit::kNumeric;
    } catch (const structural_error& e) {
        err << "input error: " << e.what() << "\n";
        return cli_exit::kInput;
    } catch (const domain_error& e) {
        err << "input error: " << e.what() << "\n";
        return cli_exit::kInput;
    }
}

}  // namespace rvi
