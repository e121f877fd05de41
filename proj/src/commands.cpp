#include "gkdvb/commands.hpp"

#include "gkdvb/carleman.hpp"
#include "gkdvb/config.hpp"
#include "gkdvb/csv.hpp"
#include "gkdvb/diagnostics.hpp"
#include "gkdvb/manifest.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace gkdvb {

namespace {

ParamMap load_params(const CommandOptions& opts) {
    ParamMap p;
    if (!opts.preset.empty()) p = preset_params(opts.preset);
    if (!opts.config_path.empty()) {
        ParamMap file = ParamMap::from_file(opts.config_path);
        p.merge(file);
    }
    return p;
}

std::string ensure_out_dir(const CommandOptions& opts,
                           const std::string& command,
                           const std::string& config_dir = "") {
    std::string dir = opts.out_dir;
    if (dir.empty()) dir = config_dir;
    if (dir.empty()) dir = "out-" + command;
    fs::create_directories(dir);
    return dir;
}

RunManifest start_manifest(const CommandOptions& opts,
                           const std::string& command,
                           const std::string& out_dir, std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.config_path = opts.config_path;
    m.preset = opts.preset;
    m.output_dir = out_dir;
    m.seed = seed;
    m.started = iso8601_now();
    return m;
}

int config_failure(const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
}

void write_ledger_csv(const std::string& path, const Trajectory& tr) {
    const std::vector<double> residual = dissipation_residual(tr);
    std::ofstream out(path);
    out << "t,l2_norm,h1_norm,h3_norm,energy,diss_residual,tail_fraction\n";
    for (size_t i = 0; i < tr.ledger.size(); ++i) {
        const auto& e = tr.ledger[i];
        out << join_csv({fmt17(e.t), fmt17(std::sqrt(e.l2_sq)),
                         fmt17(std::sqrt(e.h1_sq)), fmt17(std::sqrt(e.h3_sq)),
                         fmt17(0.5 * e.l2_sq), fmt17(residual[i]),
                         fmt17(e.tail_fraction)})
            << "\n";
    }
}

void write_snapshots(const std::string& dir, const Trajectory& tr,
                     RunManifest& manifest) {
    fs::create_directories(dir + "/snapshots");
    std::ofstream index(dir + "/snapshots/index.csv");
    index << "index,t,file\n";
    for (size_t i = 0; i < tr.snapshots.size(); ++i) {
        char name[40];
        std::snprintf(name, sizeof name, "snapshot_%04zu.csv", i);
        index << join_csv({std::to_string(i), fmt17(tr.times[i]), name})
              << "\n";
        std::ofstream snap(dir + "/snapshots/" + name);
        snap << "x,u\n";
        const Field& f = tr.snapshots[i];
        for (int j = 0; j < f.grid->n_points; ++j)
            snap << join_csv({fmt17(f.grid->points[j]), fmt17(f.values[j])})
                 << "\n";
        snap.close();  // flush before hashing
        manifest.add_artifact(std::string("snapshots/") + name);
    }
    index.close();
    manifest.add_artifact("snapshots/index.csv");
}

} // namespace

int cmd_simulate(const CommandOptions& opts) {
    ParamMap params;
    SimConfig cfg;
    std::string cfg_out;
    try {
        params = load_params(opts);
        cfg_out = params.get_string("output.dir", "");
        cfg = sim_config_from_params(params);
        params.reject_unknown();
        if (opts.has_seed) cfg.ic.seed = opts.seed;
        validate_config(cfg);
    } catch (const ConfigError& e) {
        return config_failure(e);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const std::string dir = ensure_out_dir(opts, "simulate", cfg_out);
    RunManifest manifest = start_manifest(opts, "simulate", dir, cfg.ic.seed);

    const Trajectory tr = simulate(cfg);

    write_ledger_csv(dir + "/ledger.csv", tr);
    manifest.add_artifact("ledger.csv");
    write_snapshots(dir, tr, manifest);

    if (tr.status == RunStatus::blowup) {
        std::ofstream rep(dir + "/blowup.txt");
        rep << "blow-up guard (" << fmt17(tr.config.blowup_guard)
            << ") exceeded at t = " << fmt17(tr.blowup_time) << "\n";
        rep.close();
        manifest.add_artifact("blowup.txt");
    }

    manifest.finished = iso8601_now();
    manifest.write(dir + "/manifest.json");

    if (tr.status == RunStatus::blowup) {
        std::cerr << "simulate: blow-up guard tripped at t = "
                  << tr.blowup_time << "\n";
        return 2;
    }
    if (tr.tail_warning) {
        std::cerr << "simulate: boundary tail fraction exceeded "
                  << cfg.tail_threshold << "\n";
        return 3;
    }
    std::cout << "simulate: ok, " << tr.ledger.size() - 1 << " steps, outputs in "
              << dir << "\n";
    return 0;
}

namespace {

struct SweepCell {
    SimConfig cfg;
    double p = 0, lambda0 = 0, damp_amp = 0, ic_amplitude = 0;
    std::string status = "ok";
    double rate = std::nan("");
    double r_squared = std::nan("");
    std::string hyp_b_pass = "na", hyp_a_pass = "na";
    double hyp_b_margin = std::nan(""), hyp_a_margin = std::nan("");
    double obs_ratio = std::nan("");
    bool tail_warning = false;
};

void run_sweep_cell(SweepCell& cell) {
    try {
        const Trajectory tr = simulate(cell.cfg);
        cell.tail_warning = tr.tail_warning;
        if (tr.status == RunStatus::blowup) {
            cell.status = "blowup";
            return;
        }
        try {
            const double T = cell.cfg.horizon;
            const DecayFit fit = fit_trajectory_decay(tr, 0.2 * T, 0.9 * T);
            cell.rate = fit.rate;
            cell.r_squared = fit.r_squared;
        } catch (const std::exception&) {
            cell.status = "no_fit";
        }
        cell.obs_ratio = observability_ratio(tr);
        auto grid = make_grid(cell.cfg.half_length, cell.cfg.n_points);
        DampingProfile d =
            make_damping(cell.cfg.damping_kind, cell.cfg.damping_params, grid);
        if (cell.cfg.damping_kind == DampingKind::constant ||
            cell.cfg.damping_kind == DampingKind::indefinite) {
            const HypReport hb = check_hyp_b(d, cell.cfg.nonlinearity.p);
            cell.hyp_b_pass = hb.pass ? "pass" : "fail";
            cell.hyp_b_margin = hb.margin;
        }
        const HypReport ha = check_hyp_a(d);
        cell.hyp_a_pass = ha.pass ? "pass" : "fail";
        cell.hyp_a_margin = ha.margin;
    } catch (const std::exception&) {
        cell.status = "error";
    }
}

} // namespace

int cmd_decay_sweep(const CommandOptions& opts) {
    ParamMap params;
    SimConfig base;
    std::string cfg_out;
    std::vector<double> ps, lambda0s, amps, amplitudes;
    try {
        params = load_params(opts);
        cfg_out = params.get_string("output.dir", "");
        base = sim_config_from_params(params);
        if (opts.has_seed) base.ic.seed = opts.seed;
        ps = params.get_double_list("sweep.p", {base.nonlinearity.p});
        lambda0s = params.get_double_list("sweep.lambda0",
                                          {base.damping_params.lambda0});
        amps = params.get_double_list("sweep.amp",
                                      {base.damping_params.bump_amplitude});
        amplitudes =
            params.get_double_list("sweep.amplitude", {base.ic.amplitude});
        params.reject_unknown();
        validate_config(base);
    } catch (const ConfigError& e) {
        return config_failure(e);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    std::vector<SweepCell> cells;
    for (double p : ps)
        for (double l0 : lambda0s)
            for (double amp : amps)
                for (double a : amplitudes) {
                    SweepCell c;
                    c.cfg = base;
                    c.cfg.nonlinearity.p = p;
                    c.cfg.damping_params.lambda0 = l0;
                    c.cfg.damping_params.bump_amplitude = amp;
                    c.cfg.ic.amplitude = a;
                    c.p = p;
                    c.lambda0 = l0;
                    c.damp_amp = amp;
                    c.ic_amplitude = a;
                    cells.push_back(std::move(c));
                }

    // Cells run concurrently; each owns its slot, the CSV join is serial.
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    int workers = opts.workers > 0 ? opts.workers : std::max(1, hw);
    workers = std::min<int>(workers, static_cast<int>(cells.size()));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            run_sweep_cell(cells[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    const std::string dir = ensure_out_dir(opts, "decay-sweep", cfg_out);
    RunManifest manifest =
        start_manifest(opts, "decay-sweep", dir, base.ic.seed);

    std::ofstream out(dir + "/sweep.csv");
    out << "cell,p,damping_kind,lambda0,damp_amp,ic_amplitude,seed,status,"
           "rate,r_squared,hyp_b,hyp_b_margin,hyp_a,hyp_a_margin,"
           "observability_ratio,tail_warning\n";
    for (size_t i = 0; i < cells.size(); ++i) {
        const SweepCell& c = cells[i];
        out << join_csv({std::to_string(i), fmt17(c.p),
                         damping_kind_name(c.cfg.damping_kind),
                         fmt17(c.lambda0), fmt17(c.damp_amp),
                         fmt17(c.ic_amplitude), std::to_string(c.cfg.ic.seed),
                         c.status, fmt17(c.rate), fmt17(c.r_squared),
                         c.hyp_b_pass, fmt17(c.hyp_b_margin), c.hyp_a_pass,
                         fmt17(c.hyp_a_margin), fmt17(c.obs_ratio),
                         c.tail_warning ? "1" : "0"})
            << "\n";
    }
    out.close();
    manifest.add_artifact("sweep.csv");
    manifest.finished = iso8601_now();
    manifest.write(dir + "/manifest.json");

    std::cout << "decay-sweep: " << cells.size() << " cells, outputs in " << dir
              << "\n";
    return 0;
}

int cmd_hyp_check(const CommandOptions& opts) {
    ParamMap params;
    SimConfig cfg;
    std::string cfg_out;
    try {
        params = load_params(opts);
        cfg_out = params.get_string("output.dir", "");
        cfg = sim_config_from_params(params);
        params.reject_unknown();
    } catch (const ConfigError& e) {
        return config_failure(e);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const std::string dir = ensure_out_dir(opts, "hyp-check", cfg_out);
    RunManifest manifest = start_manifest(opts, "hyp-check", dir, cfg.ic.seed);

    auto grid = make_grid(cfg.half_length, cfg.n_points);
    const DampingProfile d =
        make_damping(cfg.damping_kind, cfg.damping_params, grid);

    std::ofstream out(dir + "/hyp_report.csv");
    out << "hypothesis,pass,c_p,lhs,rhs,margin\n";
    bool relevant_pass = false;
    const bool b_applicable = cfg.damping_kind == DampingKind::constant ||
                              cfg.damping_kind == DampingKind::indefinite;
    if (b_applicable) {
        const HypReport hb = check_hyp_b(d, cfg.nonlinearity.p);
        out << join_csv({"hyp_b", hb.pass ? "pass" : "fail", fmt17(hb.c_p),
                         fmt17(hb.lhs), fmt17(hb.rhs), fmt17(hb.margin)})
            << "\n";
        relevant_pass = hb.pass;
        std::cout << "hyp_b: " << (hb.pass ? "pass" : "fail")
                  << " margin=" << hb.margin << "\n";
    }
    const HypReport ha = check_hyp_a(d);
    out << join_csv({"hyp_a", ha.pass ? "pass" : "fail", "nan", "nan", "nan",
                     fmt17(ha.margin)})
        << "\n";
    std::cout << "hyp_a: " << (ha.pass ? "pass" : "fail")
              << " margin=" << ha.margin << "\n";
    if (!b_applicable) relevant_pass = ha.pass;
    out.close();
    manifest.add_artifact("hyp_report.csv");
    manifest.finished = iso8601_now();
    manifest.write(dir + "/manifest.json");
    return relevant_pass ? 0 : 1;
}

int cmd_carleman_verify(const CommandOptions& opts) {
    ParamMap params;
    double L, x0, eps, T;
    std::string cfg_out;
    std::vector<double> s_values, ratio_s;
    int grid_n, time_n;
    try {
        params = load_params(opts);
        cfg_out = params.get_string("output.dir", "");
        L = params.get_double("carleman.L", 1.0);
        x0 = params.get_double("carleman.x0", 2.0);
        eps = params.get_double("carleman.epsilon", 0.5);
        T = params.get_double("carleman.T", 2.0);
        s_values = params.get_double_list(
            "carleman.s_values", {1, 2, 4, 8, 16, 32, 64, 128, 256});
        ratio_s = params.get_double_list("carleman.ratio_s", {});
        grid_n = params.get_int("carleman.grid_n", 512);
        time_n = params.get_int("carleman.time_n", 512);
        params.reject_unknown();
    } catch (const ConfigError& e) {
        return config_failure(e);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const std::string dir = ensure_out_dir(opts, "carleman-verify", cfg_out);
    RunManifest manifest = start_manifest(opts, "carleman-verify", dir, 0);

    CarlemanWeight w;
    PositivityScan scan;
    try {
        w = make_weight(L, x0, eps, T);
        scan = positivity_scan(w, s_values, grid_n);
    } catch (const std::exception& e) {
        std::cerr << "carleman-verify: " << e.what() << "\n";
        return 1;
    }

    std::ofstream sc(dir + "/carleman_scan.csv");
    sc << "s,minD,minE,minF,s_star_flag\n";
    for (const auto& row : scan.rows) {
        const bool star = scan.found && row.s == scan.s_star;
        sc << join_csv({fmt17(row.s), fmt17(row.min_d_scaled),
                        fmt17(row.min_e_scaled), fmt17(row.min_f_scaled),
                        star ? "1" : "0"})
           << "\n";
    }
    sc.close();
    manifest.add_artifact("carleman_scan.csv");

    bool ratios_ok = scan.found;
    std::ofstream rc(dir + "/carleman_ratio.csv");
    rc << "q_id,s,lhs,rhs,ratio\n";
    if (scan.found) {
        if (ratio_s.empty()) ratio_s = {2.0 * scan.s_star, 4.0 * scan.s_star};
        for (const auto q : {CarlemanTestFn::constant, CarlemanTestFn::half_sine,
                             CarlemanTestFn::parabola}) {
            for (double s : ratio_s) {
                const CarlemanRatio r = carleman_ratio(q, w, s, grid_n, time_n);
                rc << join_csv({carleman_test_fn_name(q), fmt17(s),
                                fmt17(r.lhs), fmt17(r.rhs), fmt17(r.ratio)})
                   << "\n";
                if (!std::isfinite(r.ratio)) ratios_ok = false;
            }
        }
    }
    rc.close();
    manifest.add_artifact("carleman_ratio.csv");
    manifest.finished = iso8601_now();
    manifest.write(dir + "/manifest.json");

    if (scan.found)
        std::cout << "carleman-verify: s*=" << scan.s_star << " plateaus D="
                  << scan.c1_plateau << " E=" << scan.c2_plateau
                  << " F=" << scan.c3_plateau << "\n";
    else
        std::cout << "carleman-verify: no admissible s found in scan range\n";
    return ratios_ok ? 0 : 1;
}

int cmd_picard_demo(const CommandOptions& opts) {
    ParamMap params;
    SimConfig cfg;
    std::string cfg_out;
    double t_loc;
    int iterations, substeps;
    try {
        params = load_params(opts);
        cfg_out = params.get_string("output.dir", "");
        cfg = sim_config_from_params(params);
        if (opts.has_seed) cfg.ic.seed = opts.seed;
        t_loc = params.get_double("picard.t_loc", 0.2);
        iterations = params.get_int("picard.iterations", 10);
        substeps = params.get_int("picard.substeps", 64);
        params.reject_unknown();
    } catch (const ConfigError& e) {
        return config_failure(e);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    const std::string dir = ensure_out_dir(opts, "picard-demo", cfg_out);
    RunManifest manifest =
        start_manifest(opts, "picard-demo", dir, cfg.ic.seed);

    auto grid = make_grid(cfg.half_length, cfg.n_points);
    const Field u0 = make_initial_condition(cfg.ic, grid);
    PicardReport rep;
    try {
        rep = picard_solve(u0, cfg, t_loc, iterations, substeps);
    } catch (const std::exception& e) {
        std::cerr << "picard-demo: " << e.what() << "\n";
        return 1;
    }

    std::ofstream out(dir + "/picard.csv");
    out << "iteration,sup_diff,ratio,converged\n";
    for (size_t i = 0; i < rep.sup_norm_diffs.size(); ++i) {
        const double ratio =
            i == 0 ? std::nan("") : rep.contraction_ratios[i - 1];
        out << join_csv({std::to_string(i), fmt17(rep.sup_norm_diffs[i]),
                         fmt17(ratio), rep.converged ? "1" : "0"})
            << "\n";
    }
    out.close();
    manifest.add_artifact("picard.csv");
    manifest.finished = iso8601_now();
    manifest.write(dir + "/manifest.json");

    std::cout << "picard-demo: " << (rep.converged ? "converged" : "diverged")
              << " after " << rep.sup_norm_diffs.size() << " iterations\n";
    return rep.converged ? 0 : 1;
}

} // namespace gkdvb
