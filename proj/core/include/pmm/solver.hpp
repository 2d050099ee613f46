#pragma once

#include "pmm/field.hpp"
#include "pmm/profiles.hpp"

namespace pmm {

struct SolveOptions {
    int cells = 200;
    double cfl = 0.4;
    // Rows kept in the output (S+1 of them, uniform).  0 picks
    // min(total steps, 512).  The integrator always takes every step; this
    // only controls what is stored.
    int stored_steps = 0;
};

// Explicit flux-form finite volumes for rho_t = (rho^m)_uu on [0,1]:
//   rho_i' = rho_i + (dt/du) (F_{i+1/2} - F_{i-1/2}),
//   interior F = (zeta_{i+1} - zeta_i)/du with zeta = rho^m.
// Boundary faces by kind:
//   Robin              F_left = kappa (rho_1 - alpha), F_right = kappa (beta - rho_N)
//   Neumann            0
//   Dirichlet          half-cell: (zeta_1 - alpha^m)/(du/2), (beta^m - zeta_N)/(du/2)
//   PeriodicSlowBond   shared wrap face between cells N and 1:
//                      F = kappa (zeta_1 - zeta_N); kappa = N reproduces the
//                      seamless periodic scheme exactly.
//
// The time step is cfl * du^2 / (2m), tightened when a boundary stencil is
// stiffer than the interior one (Dirichlet half-cells, large kappa) so the
// update stays monotone; monotonicity keeps the state inside [0,1].  Leaving
// [0,1] by more than 1e-12 raises NumericalError.
SpaceTimeField solve_pme(const Profile& g, const ModelParams& params, Bc bc,
                         const SolveOptions& opt);

// Conservation identity residual, evaluated from the stored cumulative
// boundary-flux integrals:  max_j |mass_j - mass_0 - (flux_int_right[j] -
// flux_int_left[j])|.  The scheme satisfies this to roundoff; for Robin it is
// the G == 1 balance  d/dt mass = kappa (alpha - rho(0)) + kappa (beta - rho(1)).
double mass_balance_defect(const SpaceTimeField& f);

// Stationary Dirichlet profile at the cell centers:
// rho(u) = (alpha^m + (beta^m - alpha^m) u)^(1/m).
std::vector<double> dirichlet_steady_profile(const ModelParams& params, int cells);

} // namespace pmm
