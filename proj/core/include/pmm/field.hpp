#pragma once

#include <functional>
#include <vector>

#include "pmm/params.hpp"

namespace pmm {

enum class BcKind { Robin, Neumann, Dirichlet, PeriodicSlowBond };

const char* bc_name(BcKind k);

// Boundary condition with its coupling strength.  kappa is read by Robin
// (reservoir exchange) and PeriodicSlowBond (interface permeability); the
// other kinds ignore it.  kappa = 0 turns Robin into Neumann and seals the
// slow interface.
struct Bc {
    BcKind kind = BcKind::Neumann;
    double kappa = 0.0;
};

// Cell-averaged space-time field on the uniform grid
//   cells i = 1..N with centers (i - 1/2) / N,
//   stored rows j = 0..S at times j T / S.
// trace_left/right hold the boundary values the run assigns: pinned reservoir
// densities for Dirichlet, nearest-cell values otherwise.
// flux_int_left/right hold the cumulative time integrals of the boundary
// fluxes as the scheme accumulated them step by step, so conservation
// identities can be checked to roundoff rather than to quadrature accuracy.
struct SpaceTimeField {
    ModelParams params;
    Bc bc;
    int cells = 0;
    int stored_steps = 0;
    std::vector<double> values; // (S+1) x N, row-major
    std::vector<double> trace_left, trace_right;       // S+1
    std::vector<double> flux_int_left, flux_int_right; // S+1

    int rows() const { return stored_steps + 1; }
    double du() const { return 1.0 / cells; }
    double dt_stored() const { return params.T / stored_steps; }
    double time(int j) const { return params.T * j / stored_steps; }
    double cell_center(int i) const { return (i + 0.5) / cells; }

    double at(int j, int i) const { return values[static_cast<std::size_t>(j) * cells + i]; }
    double& at(int j, int i) { return values[static_cast<std::size_t>(j) * cells + i]; }
    const double* row(int j) const { return values.data() + static_cast<std::size_t>(j) * cells; }

    // Midpoint-rule mass of row j.
    double mass(int j) const;

    // Index of the stored row at time t; throws when t is not on the grid.
    int row_at_time(double t) const;
};

// True when the two fields share cells, stored_steps and horizon.
bool same_grid(const SpaceTimeField& f, const SpaceTimeField& g);

// sqrt( int_0^T |f - g|_{L2([0,1])}^2 dt ), midpoint in space, trapezoid in
// time.  Throws unless the grids match.
double l2_spacetime_distance(const SpaceTimeField& f, const SpaceTimeField& g);

// Time-L2 distance of the nearest-cell boundary values from the reservoir
// densities: sqrt( int_0^T (rho_1 - alpha)^2 + (rho_N - beta)^2 dt ).
// Uses cell values, not the trace arrays, so it is informative for Dirichlet
// runs too.
double dirichlet_trace_defect(const SpaceTimeField& f);

// Cell-centered discrete spatial gradient of one row: centered differences at
// interior cells, one-sided at the two boundary cells.
std::vector<double> discrete_gradient(const double* row, int cells, double du);

enum class TraceRule { NearestCell, Endpoint };

// Samples an analytic function f(t,u) on the grid.  NearestCell mirrors what
// the Robin/Neumann solver records as traces; Endpoint stores f(t,0), f(t,1).
SpaceTimeField field_from_function(const std::function<double(double, double)>& f,
                                   const ModelParams& params, Bc bc, int cells,
                                   int stored_steps, TraceRule rule);

} // namespace pmm
