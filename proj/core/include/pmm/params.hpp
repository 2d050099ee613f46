#pragma once

#include <string>

namespace pmm {

// Parameters shared by the particle system and the limiting PDE.
//
//   m      nonlinearity exponent, rho_t = Laplacian(rho^m)
//   n      lattice scale; the open segment has sites 1..n-1, the torus 0..n-1
//   kappa  reservoir / slow-bond strength
//   theta  boundary slowing exponent (reservoir rate carries kappa * n^-theta)
//   a      strength of the stirring perturbation, rate n^(a-2) per bond; 1 < a < 2
//   alpha  left reservoir density
//   beta   right reservoir density
//   T      macroscopic time horizon
struct ModelParams {
    int m = 2;
    int n = 100;
    double kappa = 1.0;
    double theta = 1.0;
    double a = 1.5;
    double alpha = 0.2;
    double beta = 0.8;
    double T = 0.5;

    // Throws ValidationError naming the offending field and its admissible range.
    void validate() const;

    // validate() then return *this; lets call sites build checked values inline.
    ModelParams checked() const {
        validate();
        return *this;
    }

    bool operator==(const ModelParams&) const = default;
};

std::string describe(const ModelParams& p);

} // namespace pmm
