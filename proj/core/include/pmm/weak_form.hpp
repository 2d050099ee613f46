#pragma once

#include "pmm/field.hpp"
#include "pmm/test_function.hpp"

namespace pmm {

// Left side of the integral characterization of the solution at a stored
// time t, using midpoint quadrature in space and trapezoid in time.  The
// boundary-condition kind of the field selects the formulation:
//
//  Robin (kappa >= 0; Neumann is kappa = 0):
//    <rho_t,G_t> - <rho_0,G_0>
//      - int_0^t { <rho_s, ds G> + <rho_s^m, lap G> } ds
//      + int_0^t { rho_s^m(1) du G(s,1) - rho_s^m(0) du G(s,0) } ds
//      - kappa int_0^t { G(s,0)(alpha - rho_s(0)) + G(s,1)(beta - rho_s(1)) } ds
//
//  Dirichlet (G must vanish at the boundary):
//    same bulk terms with boundary flux  beta^m du G(s,1) - alpha^m du G(s,0).
//
//  PeriodicSlowBond:
//    Robin bulk/flux terms plus
//    + kappa int_0^t ( rho_s^m(0) - rho_s^m(1) ) ( G(s,0) - G(s,1) ) ds.
//
// Boundary values rho_s(0/1) are the field's recorded traces.
double weak_form_residual(const SpaceTimeField& f, const TestFunction& G, double t);

// | int_0^T { <grad zeta_s, G_s> + <zeta_s, du G_s>
//            - ( zeta_s(1) G(s,1) - zeta_s(0) G(s,0) ) } ds |
// with the cell-centered discrete gradient and the field's traces.
double integration_by_parts_check(const SpaceTimeField& zeta, const TestFunction& G);

} // namespace pmm
