#pragma once

#include <cstdint>
#include <vector>

#include "pmm/field.hpp"
#include "pmm/kmc.hpp"
#include "pmm/solver.hpp"

namespace pmm {

// Robin solutions across a kappa grid against the two limiting problems on
// the same space-time grid.
struct KappaSweep {
    ModelParams base;
    SolveOptions options;
    std::vector<double> kappa_grid;
    std::vector<double> dist_to_neumann;
    std::vector<double> dist_to_dirichlet;
    std::vector<double> trace_defect; // nearest-cell distance from (alpha, beta)
};

KappaSweep kappa_sweep(const Profile& g, const ModelParams& base,
                       const std::vector<double>& kappa_grid, const SolveOptions& opt);

// Particle system against the predicted hydrodynamic limit.
//   theta < 1  ->  Dirichlet
//   theta = 1  ->  Robin(kappa)
//   theta > 1  ->  Neumann
// Ensemble means are projected onto `comparison_cells` cells; the PDE
// reference is solved on a fine nested grid and averaged onto the same cells.
struct HydroOptions {
    std::vector<int> n_grid = {50, 100, 200};
    int trajectories = 200;
    std::uint64_t master_seed = 20250817;
    std::vector<double> sample_times = {0.02, 0.06, 0.1};
    int comparison_cells = 25;
    int pde_cells = 200; // must be a multiple of comparison_cells
    double cfl = 0.4;
};

struct HydroComparison {
    ModelParams base;
    HydroOptions options;
    BcKind regime = BcKind::Robin;
    std::vector<double> sample_times;
    // Tables indexed [n][time][cell].
    std::vector<std::vector<std::vector<double>>> kmc_mean, kmc_stderr, pde_mean;
    std::vector<double> sup_error;  // per n
    std::vector<double> max_stderr; // per n
};

BcKind hydro_regime(double theta);

HydroComparison hydro_compare(const Profile& g, const ModelParams& base,
                              const HydroOptions& opt);

// Slow-interface torus problem across a kappa grid, against the decoupled
// (kappa = 0) and seamless periodic references.  The seamless reference is
// PeriodicSlowBond with kappa = cells, which reproduces the plain periodic
// scheme exactly.  Optionally cross-checks one kappa against the torus
// particle system.
struct SlowBondOptions {
    std::vector<double> kappa_grid = {0.1, 1.0, 10.0};
    SolveOptions solve;
    // KMC cross-check (skipped when trajectories == 0).
    int kmc_n = 0;
    int trajectories = 0;
    std::uint64_t master_seed = 20250817;
    std::vector<double> sample_times = {0.02, 0.06, 0.1};
    int comparison_cells = 25;
    double kmc_kappa = 1.0;
};

struct SlowBondComparison {
    ModelParams base;
    SlowBondOptions options;
    std::vector<double> kappa_grid;
    std::vector<double> dist_to_decoupled;
    std::vector<double> dist_to_periodic;
    std::vector<double> interface_jump; // time-L2 of rho(0+) - rho(1-)
    std::vector<double> mass_drift;     // max_j |mass_j - mass_0|
    // KMC cross-check results (negative when skipped).
    double kmc_sup_error = -1.0;
    double kmc_max_stderr = -1.0;
};

SlowBondComparison slow_bond_compare(const Profile& g, const ModelParams& base,
                                     const SlowBondOptions& opt);

// Stored-steps choice that puts every sample time exactly on the stored grid.
int stored_steps_for(double horizon, const std::vector<double>& times, int cap = 4000);

} // namespace pmm
