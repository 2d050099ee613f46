#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "pmm/configuration.hpp"
#include "pmm/profiles.hpp"

namespace pmm {

// Explicit generator of the accelerated chain on the full state space,
// for lattices small enough to enumerate (sites <= 13).
//
// Off-diagonal transitions are enumerated directly from the rate formulas;
// the diagonal is taken from the event-table bookkeeping the jump simulator
// uses.  The two agree only if the incremental table logic is right, which
// is exactly what row_sum_defect measures.
struct GeneratorMatrix {
    ModelParams params;
    Topology topology = Topology::Interval;
    int sites = 0;
    std::uint32_t states = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows; // off-diagonal
    std::vector<double> exit_rate;   // sum of off-diagonal rates per row
    std::vector<double> table_total; // event-table total per state
    double norm_inf = 0.0;           // max exit rate = max |diagonal|

    double row_sum_defect() const; // max_s |exit_rate - table_total|
};

GeneratorMatrix generator_matrix(const ModelParams& params, Topology topology);

// Stationarity and reversibility of the product Bernoulli(rho) measure when
// both reservoirs sit at rho.  Returns {stationarity defect, detailed-balance
// defect}:  max_s' |sum_s nu(s) Q(s,s')|  and  max |nu q - nu' q'| over edges.
// Requires alpha == beta == rho; throws otherwise.
std::pair<double, double> invariant_measure_check(const GeneratorMatrix& gen, double rho);

// Microscopic Laplacian identity in the bulk: for every state and every site
// x with m+2 <= x <= n-m-2 (interval only),
//   (L eta(x)) / n^2 = cp(x-1) + cp(x+1) - 2 cp(x),
// cp = current_potential with the stirring part included.  Returns the max
// defect; throws when no site qualifies (n < 2m+4).
double laplacian_identity_check(const GeneratorMatrix& gen);

// Distribution evolution by uniformization, exact up to a Poisson tail below
// 1e-14 per step.  Initial law: product with marginals g(x/n).
struct ExactEvolution {
    std::vector<double> times;
    std::vector<int> sites;
    std::vector<std::vector<double>> site_mean; // [time][site]
    std::vector<double> mass_defect;            // |sum p - 1| per time
};

ExactEvolution exact_density_evolution(const GeneratorMatrix& gen, const Profile& g,
                                       std::vector<double> t_grid);

// Plain-text coordinate dump: "# header", then "row col rate" per transition,
// diagonals included.
void write_coordinate(const GeneratorMatrix& gen, std::ostream& os);

} // namespace pmm
