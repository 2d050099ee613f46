#include "pmm/run.hpp"

#include "pmm/csv.hpp"
#include "pmm/energy.hpp"
#include "pmm/errors.hpp"
#include "pmm/kmc.hpp"
#include "pmm/manifest.hpp"
#include "pmm/oracle.hpp"
#include "pmm/profiles.hpp"
#include "pmm/solver.hpp"
#include "pmm/sweeps.hpp"
#include "pmm/weak_form.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace pmm {

namespace {

std::string path_in(const RunConfig& cfg, const char* name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

BcKind bc_kind_of(const std::string& name) {
    if (name == "robin") return BcKind::Robin;
    if (name == "neumann") return BcKind::Neumann;
    if (name == "dirichlet") return BcKind::Dirichlet;
    if (name == "periodic_slow_bond") return BcKind::PeriodicSlowBond;
    throw ValidationError("bc: unknown boundary kind '" + name + "'");
}

Bc bc_of(const RunConfig& cfg) {
    BcKind kind = bc_kind_of(cfg.bc);
    double kappa = (kind == BcKind::Neumann || kind == BcKind::Dirichlet) ? 0.0 : cfg.model.kappa;
    return {kind, kappa};
}

SolveOptions solve_options(const RunConfig& cfg) {
    return {cfg.cells, cfg.cfl, cfg.stored_steps};
}

EnergyParams energy_params(const RunConfig& cfg) {
    EnergyParams ep = EnergyParams::from(cfg.model);
    if (cfg.c > 0.0) ep.c = cfg.c;
    return ep;
}

// Every config field lands in the manifest, defaulted or not.
void echo_config(Manifest& man, const RunConfig& cfg) {
    man.set("config.command", cfg.command);
    man.set("config.m", cfg.model.m);
    man.set("config.n", cfg.model.n);
    man.set("config.kappa", cfg.model.kappa);
    man.set("config.theta", cfg.model.theta);
    man.set("config.a", cfg.model.a);
    man.set("config.alpha", cfg.model.alpha);
    man.set("config.beta", cfg.model.beta);
    man.set("config.T", cfg.model.T);
    man.set("config.cells", cfg.cells);
    man.set("config.cfl", cfg.cfl);
    man.set("config.stored_steps", cfg.stored_steps);
    man.set("config.bc", cfg.bc);
    man.set("config.trajectories", cfg.trajectories);
    man.set("config.master_seed", cfg.master_seed);
    man.set("config.sample_times", cfg.sample_times);
    man.set("config.comparison_cells", cfg.comparison_cells);
    man.set("config.topology", cfg.topology);
    man.set("config.kappa_grid", cfg.kappa_grid);
    man.set("config.n_grid", cfg.n_grid);
    man.set("config.c", cfg.c);
    man.set("config.dict_max_freq", cfg.dict_max_freq);
    man.set("config.dict_time_powers", cfg.dict_time_powers);
    man.set("config.g", cfg.g);
    man.set("config.out_dir", cfg.out_dir);
}

void write_field_csv(const SpaceTimeField& f, const std::string& path) {
    CsvWriter csv(path, {"time", "u", "rho"});
    for (int j = 0; j < f.rows(); ++j)
        for (int i = 0; i < f.cells; ++i)
            csv.row({fmt17(f.time(j)), fmt17(f.cell_center(i)), fmt17(f.at(j, i))});
}

void write_trace_csv(const SpaceTimeField& f, const std::string& path) {
    CsvWriter csv(path, {"time", "trace_left", "trace_right", "flux_int_left", "flux_int_right"});
    for (int j = 0; j < f.rows(); ++j)
        csv.row({fmt17(f.time(j)), fmt17(f.trace_left[j]), fmt17(f.trace_right[j]),
                 fmt17(f.flux_int_left[j]), fmt17(f.flux_int_right[j])});
}

int run_simulate(const RunConfig& cfg, Manifest& man) {
    EnsembleOptions opt;
    opt.trajectories = cfg.trajectories;
    opt.master_seed = cfg.master_seed;
    opt.sample_times = cfg.sample_times;
    opt.comparison_cells = 0;
    opt.topology = cfg.topology == "torus" ? Topology::TorusSlowBond : Topology::Interval;

    Ensemble ens = run_ensemble(make_profile(cfg.g), cfg.model, opt);

    CsvWriter csv(path_in(cfg, "site_density.csv"), {"time", "site", "u", "mean", "stderr"});
    for (std::size_t jt = 0; jt < ens.sample_times.size(); ++jt)
        for (std::size_t k = 0; k < ens.sites.size(); ++k)
            csv.row({fmt17(ens.sample_times[jt]), fmt_int(ens.sites[k]),
                     fmt17(static_cast<double>(ens.sites[k]) / cfg.model.n),
                     fmt17(ens.site_mean[jt][k]), fmt17(ens.site_stderr[jt][k])});

    man.set("total_events", ens.total_events);
    man.set("injected_left", ens.counters.injected_left);
    man.set("removed_left", ens.counters.removed_left);
    man.set("injected_right", ens.counters.injected_right);
    man.set("removed_right", ens.counters.removed_right);
    return 0;
}

int run_solve(const RunConfig& cfg, Manifest& man) {
    SpaceTimeField f = solve_pme(make_profile(cfg.g), cfg.model, bc_of(cfg), solve_options(cfg));
    write_field_csv(f, path_in(cfg, "field.csv"));
    write_trace_csv(f, path_in(cfg, "traces.csv"));
    man.set("stored_steps", f.stored_steps);
    man.set("mass_initial", f.mass(0));
    man.set("mass_final", f.mass(f.stored_steps));
    man.set("mass_balance_defect", mass_balance_defect(f));
    man.set("trace_defect", dirichlet_trace_defect(f));
    return 0;
}

int run_energy(const RunConfig& cfg, Manifest& man) {
    SpaceTimeField xi = solve_pme(make_profile(cfg.g), cfg.model, bc_of(cfg), solve_options(cfg));
    EnergyReport rep = energy_report(xi, energy_params(cfg), cfg.dict_max_freq,
                                     cfg.dict_time_powers);

    CsvWriter csv(path_in(cfg, "energy.csv"),
                  {"dual_value", "sup_value", "sup_over_dual", "bc_residual_left",
                   "bc_residual_right", "holder_modulus"});
    double ratio = rep.dual_value > 0.0 ? rep.sup_value / rep.dual_value : 0.0;
    csv.row({fmt17(rep.dual_value), fmt17(rep.sup_value), fmt17(ratio),
             fmt17(rep.bc_residual_left), fmt17(rep.bc_residual_right), fmt17(rep.holder)});

    man.set("penalty_c", rep.params.c);
    man.set("dual_value", rep.dual_value);
    man.set("sup_value", rep.sup_value);
    man.set("dictionary_size", rep.dictionary_size);
    man.set("argmax_index", rep.argmax_index);
    man.set("argmax_label", rep.argmax_label);
    man.set("bc_residual_left", rep.bc_residual_left);
    man.set("bc_residual_right", rep.bc_residual_right);
    man.set("holder_modulus", rep.holder);
    man.set("holder_direction", rep.holder_direction);
    return 0;
}

int run_sweep(const RunConfig& cfg, Manifest& man) {
    KappaSweep sw = kappa_sweep(make_profile(cfg.g), cfg.model, cfg.kappa_grid,
                                solve_options(cfg));
    CsvWriter csv(path_in(cfg, "sweep.csv"),
                  {"kappa", "dist_to_neumann", "dist_to_dirichlet", "trace_defect"});
    for (std::size_t i = 0; i < sw.kappa_grid.size(); ++i)
        csv.row({fmt17(sw.kappa_grid[i]), fmt17(sw.dist_to_neumann[i]),
                 fmt17(sw.dist_to_dirichlet[i]), fmt17(sw.trace_defect[i])});
    man.set("kappa_count", static_cast<int>(sw.kappa_grid.size()));
    return 0;
}

int run_hydro(const RunConfig& cfg, Manifest& man) {
    HydroOptions opt;
    opt.n_grid = cfg.n_grid;
    opt.trajectories = cfg.trajectories;
    opt.master_seed = cfg.master_seed;
    opt.sample_times = cfg.sample_times;
    opt.comparison_cells = cfg.comparison_cells;
    opt.pde_cells = cfg.cells;
    opt.cfl = cfg.cfl;

    HydroComparison hc = hydro_compare(make_profile(cfg.g), cfg.model, opt);

    CsvWriter csv(path_in(cfg, "hydro.csv"),
                  {"n", "time", "cell", "u", "kmc_mean", "kmc_stderr", "pde_mean"});
    for (std::size_t a = 0; a < opt.n_grid.size(); ++a)
        for (std::size_t jt = 0; jt < hc.sample_times.size(); ++jt)
            for (int cidx = 0; cidx < opt.comparison_cells; ++cidx)
                csv.row({fmt_int(opt.n_grid[a]), fmt17(hc.sample_times[jt]), fmt_int(cidx),
                         fmt17((cidx + 0.5) / opt.comparison_cells),
                         fmt17(hc.kmc_mean[a][jt][cidx]), fmt17(hc.kmc_stderr[a][jt][cidx]),
                         fmt17(hc.pde_mean[a][jt][cidx])});

    CsvWriter sum(path_in(cfg, "hydro_summary.csv"), {"n", "sup_error", "max_stderr"});
    for (std::size_t a = 0; a < opt.n_grid.size(); ++a)
        sum.row({fmt_int(opt.n_grid[a]), fmt17(hc.sup_error[a]), fmt17(hc.max_stderr[a])});

    man.set("regime", bc_name(hc.regime));
    man.set("sup_error", hc.sup_error);
    man.set("max_stderr", hc.max_stderr);
    return 0;
}

int run_oracle(const RunConfig& cfg, Manifest& man) {
    Topology topo = cfg.topology == "torus" ? Topology::TorusSlowBond : Topology::Interval;
    GeneratorMatrix gen = generator_matrix(cfg.model, topo);

    {
        std::ofstream out(path_in(cfg, "generator.txt"));
        if (!out) throw ValidationError("cannot open " + path_in(cfg, "generator.txt"));
        write_coordinate(gen, out);
    }

    double scale = std::max(1.0, gen.norm_inf);
    double row_defect = gen.row_sum_defect();
    man.set("states", static_cast<long long>(gen.states));
    man.set("norm_inf", gen.norm_inf);
    man.set("row_sum_defect", row_defect);
    bool breach = row_defect > 1e-12 * scale;

    // Reversibility holds only for equal reservoir densities.
    if (topo == Topology::Interval && std::abs(cfg.model.alpha - cfg.model.beta) < 1e-12) {
        auto [stationarity, balance] = invariant_measure_check(gen, cfg.model.alpha);
        man.set("stationarity_defect", stationarity);
        man.set("detailed_balance_defect", balance);
        breach = breach || stationarity > 1e-10 * scale || balance > 1e-10 * scale;
    } else {
        man.set("stationarity_defect", "skipped (needs alpha == beta on the interval)");
    }

    if (topo == Topology::Interval && cfg.model.n >= 2 * cfg.model.m + 4) {
        double lap = laplacian_identity_check(gen);
        man.set("laplacian_identity_defect", lap);
        breach = breach || lap > 1e-10;
    } else {
        man.set("laplacian_identity_defect", "skipped (needs interval with n >= 2m + 4)");
    }

    ExactEvolution ev = exact_density_evolution(gen, make_profile(cfg.g), cfg.sample_times);
    CsvWriter csv(path_in(cfg, "exact_density.csv"), {"time", "site", "mean"});
    for (std::size_t jt = 0; jt < ev.times.size(); ++jt)
        for (std::size_t k = 0; k < ev.sites.size(); ++k)
            csv.row({fmt17(ev.times[jt]), fmt_int(ev.sites[k]), fmt17(ev.site_mean[jt][k])});
    double mass_defect = 0.0;
    for (double d : ev.mass_defect) mass_defect = std::max(mass_defect, d);
    man.set("uniformization_mass_defect", mass_defect);

    if (breach)
        throw NumericalError("oracle: generator residual exceeds tolerance; see manifest");
    return 0;
}

int run_slowbond(const RunConfig& cfg, Manifest& man) {
    SlowBondOptions opt;
    opt.kappa_grid = cfg.kappa_grid;
    opt.solve = solve_options(cfg);
    opt.master_seed = cfg.master_seed;
    opt.sample_times = cfg.sample_times;
    opt.comparison_cells = cfg.comparison_cells;
    if (cfg.topology == "torus") {
        // Torus topology opts in to the particle cross-check at theta = 1.
        opt.kmc_n = cfg.model.n;
        opt.trajectories = cfg.trajectories;
        opt.kmc_kappa = cfg.model.kappa;
    }

    SlowBondComparison sb = slow_bond_compare(make_profile(cfg.g), cfg.model, opt);

    CsvWriter csv(path_in(cfg, "slowbond.csv"),
                  {"kappa", "dist_to_decoupled", "dist_to_periodic", "interface_jump",
                   "mass_drift"});
    for (std::size_t i = 0; i < sb.kappa_grid.size(); ++i)
        csv.row({fmt17(sb.kappa_grid[i]), fmt17(sb.dist_to_decoupled[i]),
                 fmt17(sb.dist_to_periodic[i]), fmt17(sb.interface_jump[i]),
                 fmt17(sb.mass_drift[i])});

    man.set("kmc_sup_error", sb.kmc_sup_error);
    man.set("kmc_max_stderr", sb.kmc_max_stderr);
    return 0;
}

} // namespace

int run(const RunConfig& cfg) {
    validate_config(cfg);

    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw ValidationError("out_dir: cannot create '" + cfg.out_dir + "': " + ec.message());
    {
        // Fail fast when the directory is not writable.
        std::string probe = path_in(cfg, "manifest.json");
        std::ofstream test(probe, std::ios::app);
        if (!test) throw ValidationError("out_dir: '" + cfg.out_dir + "' is not writable");
    }

    Manifest man;
    echo_config(man, cfg);

    auto started = std::chrono::steady_clock::now();
    auto finish = [&] {
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        man.set("wall_seconds", wall);
        man.write(path_in(cfg, "manifest.json"));
    };

    int rc = 0;
    try {
        if (cfg.command == "simulate") rc = run_simulate(cfg, man);
        else if (cfg.command == "solve") rc = run_solve(cfg, man);
        else if (cfg.command == "energy") rc = run_energy(cfg, man);
        else if (cfg.command == "sweep") rc = run_sweep(cfg, man);
        else if (cfg.command == "hydro") rc = run_hydro(cfg, man);
        else if (cfg.command == "oracle") rc = run_oracle(cfg, man);
        else if (cfg.command == "slowbond") rc = run_slowbond(cfg, man);
        else throw ValidationError("command: unknown command '" + cfg.command + "'");
    } catch (const NumericalError& e) {
        // The partial report is still worth keeping: record the failure and
        // let the exit code carry it.
        man.set("error", std::string(e.what()));
        finish();
        throw;
    }

    finish();
    return rc;
}

int run_main(const std::vector<std::string>& args) {
    try {
        ParseOutcome parsed = parse_command_line(args);
        if (!parsed.config) return parsed.exit_code;
        return run(*parsed.config);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace pmm
