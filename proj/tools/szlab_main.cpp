#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <atomic>
#include <sstream>
#include <thread>

#include "szlab/io.hpp"
#include "szlab/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace szlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    unsigned long long seed = 1;
    int workers = 1;
    std::vector<std::string> overrides;
};

io::Manifest manifest_for(const std::string& command, const CommonArgs& args) {
    io::Manifest m;
    m.command = command;
    m.config_path = args.config_path;
    m.out_dir = args.out_dir;
    m.seed = args.seed;
    m.overrides = args.overrides;
    return m;
}

io::CliConfig load_or_default(const CommonArgs& args) {
    if (args.config_path.empty()) {
        io::CliConfig cfg;
        if (!args.overrides.empty()) {
            json j;
            j["schema_version"] = 1;
            std::string text = j.dump();
            // route overrides through the strict parser
            nlohmann::json base = nlohmann::json::parse(text);
            for (const auto& o : args.overrides) {
                const auto eq = o.find('=');
                if (eq == std::string::npos) throw std::runtime_error("override must be key=value");
                nlohmann::json val = nlohmann::json::parse(o.substr(eq + 1), nullptr, false);
                if (val.is_discarded()) val = o.substr(eq + 1);
                nlohmann::json* cur = &base;
                std::string path = o.substr(0, eq);
                size_t pos = 0;
                while (true) {
                    size_t dot = path.find('.', pos);
                    std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos
                                                                                : dot - pos);
                    if (dot == std::string::npos) {
                        (*cur)[key] = val;
                        break;
                    }
                    cur = &((*cur)[key]);
                    pos = dot + 1;
                }
            }
            return io::parse_config_text(base.dump());
        }
        return cfg;
    }
    return io::load_config(args.config_path, args.overrides);
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_json(const std::string& path, const io::Manifest& m, json payload) {
    payload["version"] = std::string(io::kToolVersion);
    payload["manifest_hash"] = m.hash();
    payload["seed"] = m.seed;
    io::atomic_write(path, payload.dump(2) + "\n");
}

std::string series_csv(const io::Manifest& m, const SimulationRecord& rec,
                       const std::vector<std::vector<double>>& takagi) {
    std::ostringstream out;
    out << io::file_header(m);
    out << "t,Q,M,E";
    const bool cyl = !rec.cylinder.empty();
    size_t sv_count = 0;
    for (const auto& row : takagi) sv_count = std::max(sv_count, row.size());
    if (cyl) out << ",dist_cyl";
    for (size_t i = 0; i < sv_count; ++i) out << ",sv" << (i + 1);
    out << "\n";
    // conservation rows are the master series; attach snapshot-aligned extras
    size_t snap_idx = 0;
    for (const auto& row : rec.logs) {
        out << io::format_double(row.t) << "," << io::format_double(row.mass) << ","
            << io::format_double(row.momentum) << "," << io::format_double(row.energy);
        const bool at_snap = snap_idx < rec.snapshot_times.size() &&
                             std::abs(rec.snapshot_times[snap_idx] - row.t) <= 1e-12 + 1e-9 * std::abs(row.t);
        if (cyl) {
            if (at_snap && snap_idx < rec.cylinder.size())
                out << "," << io::format_double(rec.cylinder[snap_idx].distance);
            else
                out << ",";
        }
        for (size_t i = 0; i < sv_count; ++i) {
            if (at_snap && snap_idx < takagi.size() && i < takagi[snap_idx].size())
                out << "," << io::format_double(takagi[snap_idx][i]);
            else
                out << ",";
        }
        if (at_snap) ++snap_idx;
        out << "\n";
    }
    return out.str();
}

int cmd_simulate(const CommonArgs& args) {
    io::Manifest man = manifest_for("simulate", args);
    io::CliConfig cfg = load_or_default(args);
    cfg.simulation.validate();
    CylinderSpec cyl_spec(cfg.simulation.monitors.cylinder_a, cfg.simulation.monitors.cylinder_r);
    const bool want_cyl = cfg.simulation.monitors.cylinder_distance;

    SimulationRecord rec = simulate(cfg.simulation, [&](double t, const SpectralField& u,
                                                        SimulationRecord& r) {
        if (want_cyl) {
            CylinderDistance d = cylinder_distance(u, cyl_spec);
            r.cylinder.push_back({t, d.distance, d.theta, d.x0});
        }
    });

    std::vector<std::vector<double>> takagi;
    if (cfg.simulation.monitors.hankel_top_k > 0)
        takagi = takagi_series(rec, cfg.simulation.monitors.hankel_top_k);

    io::atomic_write(join_path(args.out_dir, "series.csv"), series_csv(man, rec, takagi));
    if (!rec.snapshots.empty()) {
        io::write_field(join_path(args.out_dir, "field_initial.txt"), rec.snapshots.front());
        io::write_field(join_path(args.out_dir, "field_final.txt"), rec.snapshots.back());
    }

    json summary;
    SimulationRecord::Drift drift = rec.relative_drift();
    summary["drift"] = {{"Q", drift.mass}, {"M", drift.momentum}, {"E", drift.energy}};
    summary["blew_up"] = rec.blew_up;
    summary["diagnostic"] = rec.diagnostic;
    summary["steps_logged"] = rec.logs.size();
    summary["snapshots"] = rec.snapshot_times.size();
    // deviation against the exact reference when the initial condition is a
    // traveling wave of known (c, omega)
    const auto& ic = cfg.simulation.initial;
    if (!rec.snapshots.empty() && !rec.blew_up &&
        (ic.kind == InitialCondition::Kind::Soliton || ic.kind == InitialCondition::Kind::Circle)) {
        const SpectralField& u0 = rec.snapshots.front();
        double c = 0.0, w = 0.0;
        if (ic.kind == InitialCondition::Kind::Soliton) {
            ConservedQuantities q = conserved_quantities(u0);
            c = q.mass / kTwoPi;
            w = q.momentum / kTwoPi;
        } else {
            CircleSoliton cs = make_circle_soliton(ic.amplitude, ic.pole, cfg.simulation.grid());
            c = cs.velocity;
            w = cs.phase_rate;
        }
        double worst = 0.0;
        for (size_t i = 0; i < rec.snapshots.size(); ++i) {
            SpectralField ref = traveling_wave_reference(u0, c, w, rec.snapshot_times[i]);
            worst = std::max(worst, deviation(rec.snapshots[i], ref, NormKind::L2));
        }
        summary["max_deviation_L2"] = worst;
    }
    write_json(join_path(args.out_dir, "summary.json"), man, summary);
    if (rec.blew_up) {
        std::cerr << "numerical failure: " << rec.diagnostic << "\n";
        return kExitNumerical;
    }
    std::cout << "simulate: ok (" << rec.logs.size() << " log rows)\n";
    return kExitOk;
}

int cmd_verify(const CommonArgs& args, bool inject_wrong_omega, bool empty_corpus) {
    io::Manifest man = manifest_for("verify", args);
    VerifyOptions opt;
    opt.seed = args.seed;
    opt.inject_wrong_omega = inject_wrong_omega;
    opt.empty_corpus = empty_corpus;
    std::vector<CheckResult> checks = run_verification(opt);

    std::ostringstream csv;
    csv << io::file_header(man);
    csv << "check,value,threshold,direction,pass\n";
    size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        csv << '"' << c.name << '"' << "," << io::format_double(c.value) << ","
            << io::format_double(c.threshold) << "," << (c.larger_is_better ? ">=" : "<=") << ","
            << (c.pass ? "PASS" : "FAIL") << "\n";
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << std::string(width + 2 - c.name.size(), ' ')
                  << io::format_double(c.value) << " (" << (c.larger_is_better ? ">= " : "<= ")
                  << io::format_double(c.threshold) << ")\n";
    }
    io::atomic_write(join_path(args.out_dir, "checks.csv"), csv.str());
    json summary;
    summary["total"] = checks.size();
    int fails = 0;
    for (const auto& c : checks)
        if (!c.pass) ++fails;
    summary["failures"] = fails;
    summary["all_pass"] = all_pass(checks);
    write_json(join_path(args.out_dir, "summary.json"), man, summary);
    return all_pass(checks) ? kExitOk : kExitCheckFailure;
}

int cmd_stability(const CommonArgs& args) {
    io::Manifest man = manifest_for("stability", args);
    io::CliConfig cfg = load_or_default(args);
    if (cfg.stability_perturbation.empty())
        cfg.stability_perturbation = {PoleTerm{{0.0, -2.0}, {0.0, 1.0}}};  // 1/(x+2i)^2 profile
    RationalSymbol pert(cfg.stability_perturbation);

    std::vector<StabilityReport> reports(cfg.stability_deltas.size());
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    const int workers = std::max(1, args.workers);
    auto work = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= cfg.stability_deltas.size()) break;
            reports[i] = stability_experiment(cfg.stability_cylinder, pert, cfg.stability_deltas[i],
                                              cfg.stability_t_final, cfg.simulation);
        }
    };
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    json summary;
    summary["runs"] = json::array();
    bool numerical_failure = false;
    for (size_t i = 0; i < reports.size(); ++i) {
        const StabilityReport& rep = reports[i];
        std::ostringstream csv, dat;
        csv << io::file_header(man) << "t,dist,theta_opt,x0_opt\n";
        dat << io::file_header(man);
        for (const auto& row : rep.series) {
            csv << io::format_double(row.t) << "," << io::format_double(row.distance) << ","
                << io::format_double(row.theta) << "," << io::format_double(row.x0) << "\n";
            dat << io::format_double(row.t) << " " << io::format_double(row.distance) << "\n";
        }
        const std::string tag = "delta_" + std::to_string(i);
        io::atomic_write(join_path(args.out_dir, "stability_" + tag + ".csv"), csv.str());
        io::atomic_write(join_path(args.out_dir, "stability_" + tag + ".dat"), dat.str());
        json r;
        r["delta"] = rep.delta;
        r["sup_distance"] = rep.sup_distance;
        r["initial_distance"] = rep.initial_distance;
        r["verdict"] = rep.bounded ? "bounded" : "growing";
        r["blew_up"] = rep.blew_up;
        summary["runs"].push_back(r);
        numerical_failure = numerical_failure || rep.blew_up;
        std::cout << "delta=" << rep.delta << " sup=" << rep.sup_distance
                  << (rep.bounded ? " bounded" : " growing") << "\n";
    }
    write_json(join_path(args.out_dir, "summary.json"), man, summary);
    return numerical_failure ? kExitNumerical : kExitOk;
}

int cmd_minimize(const CommonArgs& args) {
    io::Manifest man = manifest_for("minimize", args);
    io::CliConfig cfg = load_or_default(args);
    FrequencyGrid grid = cfg.simulation.grid();
    std::mt19937_64 rng(args.seed);
    const double r_target = cfg.minimize_q * cfg.minimize_q / (kTwoPi * cfg.minimize_e);
    const double a_target = std::sqrt(cfg.minimize_q * r_target / kPi);
    CylinderSpec spec(a_target, r_target);

    json summary;
    summary["q_target"] = cfg.minimize_q;
    summary["e_target"] = cfg.minimize_e;
    summary["runs"] = json::array();
    bool failure = false;
    for (int run = 0; run < cfg.minimize_runs; ++run) {
        SpectralField init = random_smooth_field(grid, rng);
        MinimizeOptions opts;
        opts.max_iterations = cfg.minimize_max_iterations;
        MinimizeResult res;
        try {
            res = minimize_momentum(cfg.minimize_q, cfg.minimize_e, init, opts);
        } catch (const std::exception& e) {
            json r;
            r["error"] = e.what();
            summary["runs"].push_back(r);
            failure = true;
            continue;
        }
        ConservedQuantities q = conserved_quantities(res.minimizer);
        CylinderDistance d = cylinder_distance(res.minimizer, spec);
        std::ostringstream csv, dat;
        csv << io::file_header(man) << "iter,M,grad_norm,step\n";
        dat << io::file_header(man);
        for (const auto& row : res.history) {
            csv << row.iteration << "," << io::format_double(row.momentum) << ","
                << io::format_double(row.gradient_norm) << "," << io::format_double(row.step) << "\n";
            dat << row.iteration << " " << io::format_double(row.momentum) << "\n";
        }
        const std::string tag = std::to_string(run);
        io::atomic_write(join_path(args.out_dir, "minimize_history_" + tag + ".csv"), csv.str());
        io::atomic_write(join_path(args.out_dir, "minimize_history_" + tag + ".dat"), dat.str());
        io::write_field(join_path(args.out_dir, "minimizer_" + tag + ".txt"), res.minimizer);
        json r;
        r["iterations"] = res.history.size();
        r["converged"] = res.converged;
        r["stalled"] = res.stalled;
        r["final_gradient_norm"] = res.final_gradient_norm;
        r["M_final"] = q.momentum;
        r["cylinder_distance"] = d.distance;
        summary["runs"].push_back(r);
        std::cout << "minimize run " << run << ": M=" << q.momentum << " dist=" << d.distance
                  << " iters=" << res.history.size() << "\n";
    }
    write_json(join_path(args.out_dir, "summary.json"), man, summary);
    return failure ? kExitNumerical : kExitOk;
}

int cmd_spectrum(const CommonArgs& args) {
    io::Manifest man = manifest_for("spectrum", args);
    io::CliConfig cfg = load_or_default(args);
    RationalSymbol u = RationalSymbol::single_pole(cfg.spectrum_amplitude, cfg.spectrum_pole);
    SolitonParams params(cfg.spectrum_amplitude, cfg.spectrum_pole);
    AuSpectrum sp = spectrum_au(u, params.velocity, cfg.spectrum_cutoff, cfg.spectrum_kernel_points);
    HankelOperator h = build_hankel(u, cfg.spectrum_cutoff, cfg.spectrum_kernel_points);
    Eigen::VectorXd tak = takagi_values(h);

    json summary;
    summary["velocity"] = params.velocity;
    summary["phase_rate"] = params.phase_rate;
    summary["lowest_eigenvalue"] = sp.eigenvalues[0];
    summary["expected_lowest"] = -params.phase_rate / params.velocity;
    summary["negative_count"] = sp.negative_count;
    summary["ground_overlap"] = sp.ground_overlap_with_u;
    summary["takagi_top"] = json::array();
    for (int i = 0; i < std::min<int>(8, tak.size()); ++i) summary["takagi_top"].push_back(tak[i]);
    write_json(join_path(args.out_dir, "spectrum.json"), man, summary);

    std::ostringstream dat;
    dat << io::file_header(man);
    for (int i = 0; i < sp.eigenvalues.size(); ++i)
        dat << i << " " << io::format_double(sp.eigenvalues[i]) << "\n";
    io::atomic_write(join_path(args.out_dir, "spectrum.dat"), dat.str());
    std::cout << "spectrum: lowest eigenvalue " << sp.eigenvalues[0] << " (" << sp.negative_count
              << " negative)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral laboratory for the cubic Szego equation on the line"};
    app.require_subcommand(1);

    CommonArgs args;
    bool inject_wrong_omega = false, empty_corpus = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config_path, "JSON config path");
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--seed", args.seed, "rng seed for randomized corpora");
        sub->add_option("--workers", args.workers, "parallel workers for sweeps");
        sub->add_option("--override", args.overrides, "config override key=value (repeatable)");
    };
    CLI::App* simulate = app.add_subcommand("simulate", "integrate the flow and log monitors");
    CLI::App* verify = app.add_subcommand("verify", "run the identity/oracle check table");
    verify->add_flag("--inject-wrong-omega", inject_wrong_omega,
                     "fault injection: use the misprinted phase-rate formula");
    verify->add_flag("--empty-corpus", empty_corpus, "fault injection: run with no checks");
    CLI::App* stability = app.add_subcommand("stability", "perturbed-soliton stability experiment");
    CLI::App* minimize = app.add_subcommand("minimize", "constrained momentum minimization");
    CLI::App* spectrum = app.add_subcommand("spectrum", "A_u and Hankel spectra for a soliton");
    for (CLI::App* sub : {simulate, verify, stability, minimize, spectrum}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (verify->parsed()) return cmd_verify(args, inject_wrong_omega, empty_corpus);
        if (stability->parsed()) return cmd_stability(args);
        if (minimize->parsed()) return cmd_minimize(args);
        if (spectrum->parsed()) return cmd_spectrum(args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        std::cerr << "error: " << what << "\n";
        return what.rfind("config error", 0) == 0 ? kExitUsage : kExitNumerical;
    }
    return kExitUsage;
}
