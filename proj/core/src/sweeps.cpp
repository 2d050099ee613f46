#include "pmm/sweeps.hpp"

#include <algorithm>
#include <cmath>

#include "pmm/errors.hpp"
#include "pmm/numerics.hpp"

namespace pmm {

KappaSweep kappa_sweep(const Profile& g, const ModelParams& base,
                       const std::vector<double>& kappa_grid, const SolveOptions& opt) {
    if (kappa_grid.empty()) throw ValidationError("kappa_sweep: empty kappa grid");
    KappaSweep sweep;
    sweep.base = base;
    sweep.options = opt;
    sweep.kappa_grid = kappa_grid;

    // Fixed stored grid so every run is distance-comparable.
    SolveOptions ref_opt = opt;
    if (ref_opt.stored_steps == 0) ref_opt.stored_steps = 512;

    SpaceTimeField neumann = solve_pme(g, base, {BcKind::Neumann, 0.0}, ref_opt);
    SpaceTimeField dirichlet = solve_pme(g, base, {BcKind::Dirichlet, 0.0}, ref_opt);

    for (double kappa : kappa_grid) {
        ModelParams p = base;
        p.kappa = kappa;
        SpaceTimeField robin = solve_pme(g, p, {BcKind::Robin, kappa}, ref_opt);
        sweep.dist_to_neumann.push_back(l2_spacetime_distance(robin, neumann));
        sweep.dist_to_dirichlet.push_back(l2_spacetime_distance(robin, dirichlet));
        sweep.trace_defect.push_back(dirichlet_trace_defect(robin));
    }
    return sweep;
}

BcKind hydro_regime(double theta) {
    if (theta < 1.0) return BcKind::Dirichlet;
    if (theta == 1.0) return BcKind::Robin;
    return BcKind::Neumann;
}

int stored_steps_for(double horizon, const std::vector<double>& times, int cap) {
    // Smallest grid (at least 100 rows, for comparability between runs) that
    // carries every sample time exactly.
    for (int s = 100; s <= cap; ++s) {
        bool ok = true;
        for (double t : times) {
            double pos = t / (horizon / s);
            ok = ok && std::abs(pos - std::llround(pos)) < 1e-9 * s;
        }
        if (ok) return s;
    }
    throw ValidationError("stored_steps_for: sample times do not fit a uniform stored grid of at "
                          "most " + std::to_string(cap) + " rows");
}

namespace {

// Average of nested fine cells per comparison cell, one stored row.
std::vector<double> average_down(const SpaceTimeField& f, int j, int coarse) {
    int ratio = f.cells / coarse;
    std::vector<double> out(coarse, 0.0);
    for (int c = 0; c < coarse; ++c) {
        double s = 0.0;
        for (int k = 0; k < ratio; ++k) s += f.at(j, c * ratio + k);
        out[c] = s / ratio;
    }
    return out;
}

} // namespace

HydroComparison hydro_compare(const Profile& g, const ModelParams& base,
                              const HydroOptions& opt) {
    if (opt.pde_cells % opt.comparison_cells != 0)
        throw ValidationError("hydro_compare: pde_cells must be a multiple of comparison_cells");
    if (opt.n_grid.empty()) throw ValidationError("hydro_compare: empty n grid");

    HydroComparison out;
    out.base = base;
    out.options = opt;
    out.regime = hydro_regime(base.theta);

    std::vector<double> times = opt.sample_times;
    std::sort(times.begin(), times.end());
    if (times.empty() || times.front() > 0.0) times.insert(times.begin(), 0.0);
    out.sample_times = times;

    SolveOptions sopt;
    sopt.cells = opt.pde_cells;
    sopt.cfl = opt.cfl;
    sopt.stored_steps = stored_steps_for(base.T, times);
    SpaceTimeField pde = solve_pme(g, base, {out.regime, base.kappa}, sopt);

    std::vector<std::vector<double>> pde_cells_by_time;
    for (double t : times)
        pde_cells_by_time.push_back(average_down(pde, pde.row_at_time(t), opt.comparison_cells));

    for (int n : opt.n_grid) {
        ModelParams p = base;
        p.n = n;
        EnsembleOptions eopt;
        eopt.trajectories = opt.trajectories;
        // Decorrelate seeds across n while keeping the whole comparison
        // reproducible from one master seed.
        eopt.master_seed = opt.master_seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(n));
        eopt.sample_times = times;
        eopt.comparison_cells = opt.comparison_cells;
        eopt.topology = Topology::Interval;
        Ensemble ens = run_ensemble(g, p, eopt);

        double sup = 0.0, sup_se = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            for (int c = 0; c < opt.comparison_cells; ++c) {
                sup = std::max(sup, std::abs(ens.cell_mean[k][c] - pde_cells_by_time[k][c]));
                sup_se = std::max(sup_se, ens.cell_stderr[k][c]);
            }
        }
        out.kmc_mean.push_back(ens.cell_mean);
        out.kmc_stderr.push_back(ens.cell_stderr);
        out.pde_mean.push_back(pde_cells_by_time);
        out.sup_error.push_back(sup);
        out.max_stderr.push_back(sup_se);
    }
    return out;
}

SlowBondComparison slow_bond_compare(const Profile& g, const ModelParams& base,
                                     const SlowBondOptions& opt) {
    if (opt.kappa_grid.empty()) throw ValidationError("slow_bond_compare: empty kappa grid");

    SlowBondComparison out;
    out.base = base;
    out.options = opt;
    out.kappa_grid = opt.kappa_grid;

    SolveOptions sopt = opt.solve;
    if (sopt.stored_steps == 0) sopt.stored_steps = 512;

    SpaceTimeField decoupled = solve_pme(g, base, {BcKind::PeriodicSlowBond, 0.0}, sopt);
    SpaceTimeField periodic =
        solve_pme(g, base, {BcKind::PeriodicSlowBond, static_cast<double>(sopt.cells)}, sopt);

    for (double kappa : opt.kappa_grid) {
        ModelParams p = base;
        p.kappa = kappa;
        SpaceTimeField f = solve_pme(g, p, {BcKind::PeriodicSlowBond, kappa}, sopt);
        out.dist_to_decoupled.push_back(l2_spacetime_distance(f, decoupled));
        out.dist_to_periodic.push_back(l2_spacetime_distance(f, periodic));

        KahanSum jump;
        for (int j = 0; j < f.rows(); ++j) {
            double w = trapezoid_weight(j, f.stored_steps, f.params.T);
            double d = f.at(j, 0) - f.at(j, f.cells - 1);
            jump.add(w * d * d);
        }
        out.interface_jump.push_back(std::sqrt(jump.value()));

        double drift = 0.0;
        for (int j = 0; j < f.rows(); ++j)
            drift = std::max(drift, std::abs(f.mass(j) - f.mass(0)));
        out.mass_drift.push_back(drift);
    }

    if (opt.trajectories > 0 && opt.kmc_n > 0) {
        ModelParams p = base;
        p.n = opt.kmc_n;
        p.kappa = opt.kmc_kappa;
        p.theta = 1.0; // mesoscopic interface regime

        std::vector<double> times = opt.sample_times;
        SolveOptions fine = opt.solve;
        fine.stored_steps = stored_steps_for(base.T, times);
        ModelParams pp = p;
        SpaceTimeField pde = solve_pme(g, pp, {BcKind::PeriodicSlowBond, p.kappa}, fine);

        EnsembleOptions eopt;
        eopt.trajectories = opt.trajectories;
        eopt.master_seed = opt.master_seed;
        eopt.sample_times = times;
        eopt.comparison_cells = opt.comparison_cells;
        eopt.topology = Topology::TorusSlowBond;
        Ensemble ens = run_ensemble(g, p, eopt);

        double sup = 0.0, sup_se = 0.0;
        for (std::size_t k = 0; k < ens.sample_times.size(); ++k) {
            std::vector<double> ref =
                average_down(pde, pde.row_at_time(ens.sample_times[k]), opt.comparison_cells);
            for (int c = 0; c < opt.comparison_cells; ++c) {
                sup = std::max(sup, std::abs(ens.cell_mean[k][c] - ref[c]));
                sup_se = std::max(sup_se, ens.cell_stderr[k][c]);
            }
        }
        out.kmc_sup_error = sup;
        out.kmc_max_stderr = sup_se;
    }
    return out;
}

} // namespace pmm
