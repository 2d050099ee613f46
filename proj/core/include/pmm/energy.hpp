#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pmm/field.hpp"
#include "pmm/test_function.hpp"

namespace pmm {

// Parameters of the energy functional
//   E(xi) = sup_H { T(xi, H) - c <<H, H>>_{kappa, xi} }.
// c defaults to m + m^2 + 1, large enough that the quadratic dominates.
struct EnergyParams {
    int m = 2;
    double c = 7.0;
    double kappa = 1.0;
    double alpha = 0.2;
    double beta = 0.8;

    static EnergyParams from(const ModelParams& p) {
        return {p.m, static_cast<double>(p.m + p.m * p.m + 1), p.kappa, p.alpha, p.beta};
    }
    void validate() const;
};

// A direction H sampled on a field's grid: values and spatial derivative at
// the cell centers, boundary values per stored time.  Symbolic test functions
// enter with exact derivatives and endpoint traces; grid-backed directions
// (like -du xi^m) use the discrete gradient and boundary-cell traces.
struct FieldView {
    int cells = 0;
    int stored_steps = 0;
    double horizon = 0.0;
    std::vector<double> values; // (S+1) x N
    std::vector<double> du;     // (S+1) x N
    std::vector<double> left, right;
    std::string label;

    double at(int j, int i) const { return values[static_cast<std::size_t>(j) * cells + i]; }
    double du_at(int j, int i) const { return du[static_cast<std::size_t>(j) * cells + i]; }
};

FieldView sample_on_grid(const TestFunction& H, const SpaceTimeField& grid);

// The gradient direction -du(xi^m), the maximizer of the restricted sup in
// the dual identity.
FieldView gradient_direction(const SpaceTimeField& xi, int m);

// <<H, H>>_{kappa, xi} = int_0^T |H_s|^2 ds
//   + (1/kappa) int_0^T { P_alpha(xi_s(0)) H_s(0)^2 + P_beta(xi_s(1)) H_s(1)^2 } ds
// with P_gamma(r) = reservoir_poly(gamma, r, m).
double weighted_bracket(const FieldView& H, const SpaceTimeField& xi, const EnergyParams& ep);

// T(xi, H) = int_0^T <xi_s^m, du H_s> ds
//            + int_0^T { alpha^m H_s(0) - beta^m H_s(1) } ds.
double t_functional(const FieldView& H, const SpaceTimeField& xi, const EnergyParams& ep);

// Closed form of the full sup:
//   (1/4c) <<du xi^m, du xi^m>>_{kappa, xi}.
double energy_dual(const SpaceTimeField& xi, const EnergyParams& ep);

// Restricted sup over a dictionary, each direction optimized along its ray:
//   max_H T(xi,H)^2 / (4 c <<H,H>>_{kappa,xi}).
// Returns {value, index of the maximizing direction}.
std::pair<double, int> energy_sup_estimate(const SpaceTimeField& xi, const EnergyParams& ep,
                                           const std::vector<FieldView>& dictionary);

// Default dictionary: t^p cos(k pi u), t^p sin(k pi u) for p <= time_powers,
// k <= max_freq (constants included via k = 0).
std::vector<FieldView> standard_dictionary(const SpaceTimeField& grid, int max_freq,
                                           int time_powers);

// Time-L2 residuals of the boundary identities
//   du(xi^m)(0) = kappa (xi(0) - alpha),  du(xi^m)(1) = kappa (beta - xi(1)),
// with one-sided difference quotients standing in for the boundary slopes.
// Returns {left, right}.
std::pair<double, double> robin_bc_residual(const SpaceTimeField& xi, const EnergyParams& ep);

// max over stored pairs s < t of |<xi_t, H_t> - <xi_s, H_s>| / sqrt(t - s).
double holder_modulus(const SpaceTimeField& xi, const TestFunction& H);

// Boundary value against one-sided box averages: max over stored times of
//   |xi_s(0) - (1/eps) int_{j eps}^{(j+1) eps} xi_s(v) dv|  minus the bound
//   eps^(1/(2(m+1))) + eps^(1/(m+1)) (2^m / 3) m^(3/2) |du xi_s^m|_2,
// for j in 0..m-1.  Negative values mean the bound holds with margin.
double boundary_average_defect(const SpaceTimeField& xi, int j, double eps);

// Bundle the CLI exports for one field.
struct EnergyReport {
    EnergyParams params;
    double dual_value = 0.0;
    double sup_value = 0.0;
    int argmax_index = -1;
    std::string argmax_label;
    int dictionary_size = 0;
    double bc_residual_left = 0.0;
    double bc_residual_right = 0.0;
    double holder = 0.0;
    std::string holder_direction;
};

EnergyReport energy_report(const SpaceTimeField& xi, const EnergyParams& ep, int max_freq,
                           int time_powers);

} // namespace pmm
