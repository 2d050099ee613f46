#pragma once

#include "pmm/configuration.hpp"

namespace pmm {

// reservoir_poly(gamma, rho, m) = sum_{i=0}^{m-1} gamma^(m-1-i) rho^i.
// Satisfies gamma^m - rho^m = (gamma - rho) * reservoir_poly(gamma, rho, m)
// and reservoir_poly >= gamma^(m-1) > 0 on [0,1]^2 for gamma > 0.  This is
// the weight the boundary terms of the energy estimates carry.
double reservoir_poly(double gamma, double rho, int m);

// Exchange rate of the porous medium dynamics across bond (x, x+1):
// the number of the m admissible neighbour windows that are fully occupied,
//   c_{x,x+1}(eta) = sum_{k=1}^{m} prod_{j=-(m-k)}^{k}, j != 0,1  eta(x+j).
// Reads outside the bulk go through the reservoir convention (interval) or
// wrap (torus).  m = 1 gives the constant 1 (simple exclusion).
double pmm_rate(const Configuration& eta, int x);

// Stirring rate eta(x)(1 - eta(y)) for a particle moving x -> y.
double ssep_rate(const Configuration& eta, int x, int y);

// Reservoir flip rate at boundary site z for reservoir density gamma:
//   gamma * (1 - eta(z)) + (1 - gamma) * eta(z).
// The generator multiplies this by kappa / n^theta.
double boundary_rate(const Configuration& eta, int z, double gamma);

// Discrete potential of the instantaneous current: the current across bond
// (x, x+1) is current_potential(x) - current_potential(x+1).  Equals
//   sum_{k=1}^{m} prod_{j=-(m-k)}^{k-1} eta(x+j)
//     - sum_{k=1}^{m-1} prod_{j=-(m-k)}^{k}, j != 0  eta(x+j),
// plus n^(a-2) eta(x) when the stirring part is included.
double current_potential(const Configuration& eta, int x, bool include_ssep);

// Instantaneous current across bond (x, x+1); satisfies
//   bond_current = (pmm_rate + n^(a-2)) * (eta(x) - eta(x+1))
// for occupation values, which the unit tests pin down.
double bond_current(const Configuration& eta, int x, bool include_ssep);

} // namespace pmm
