#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmm/errors.hpp"
#include "pmm/kmc.hpp"
#include "pmm/oracle.hpp"
#include "pmm/profiles.hpp"

#include <cmath>
#include <sstream>
#include <vector>

using namespace pmm;

namespace {

ModelParams make_params(int m, int n, double kappa = 1.0, double theta = 1.0) {
    ModelParams p;
    p.m = m;
    p.n = n;
    p.kappa = kappa;
    p.theta = theta;
    return p;
}

} // namespace

TEST_CASE("generator rows sum to zero against the event-table totals") {
    for (int m : {1, 2}) {
        for (int n : {4, 6}) {
            for (double kappa : {0.5, 2.0}) {
                ModelParams p = make_params(m, n, kappa);
                p.alpha = 0.25;
                p.beta = 0.65;
                GeneratorMatrix gen = generator_matrix(p, Topology::Interval);
                CHECK(gen.states == (1u << (n - 1)));
                CHECK(gen.row_sum_defect() <= 1e-12 * std::max(1.0, gen.norm_inf));
            }
        }
    }
    // Torus variant, slow bond included.
    ModelParams p = make_params(2, 6, 0.8, 1.0);
    GeneratorMatrix gen = generator_matrix(p, Topology::TorusSlowBond);
    CHECK(gen.states == 64);
    CHECK(gen.row_sum_defect() <= 1e-12 * std::max(1.0, gen.norm_inf));
}

TEST_CASE("equal reservoirs make the product measure stationary and reversible") {
    for (int m : {1, 2, 3}) {
        for (double rho : {0.3, 0.5}) {
            ModelParams p = make_params(m, 6, 1.3);
            p.alpha = rho;
            p.beta = rho;
            GeneratorMatrix gen = generator_matrix(p, Topology::Interval);
            auto [stationarity, balance] = invariant_measure_check(gen, rho);
            double tol = 1e-10 * std::max(1.0, gen.norm_inf);
            CHECK(stationarity <= tol);
            CHECK(balance <= tol);
        }
    }
}

TEST_CASE("torus exchange dynamics is reversible for homogeneous Bernoulli") {
    ModelParams p = make_params(2, 7, 0.9);
    p.alpha = 0.4;
    p.beta = 0.4;
    GeneratorMatrix gen = generator_matrix(p, Topology::TorusSlowBond);
    auto [stationarity, balance] = invariant_measure_check(gen, 0.4);
    double tol = 1e-10 * std::max(1.0, gen.norm_inf);
    CHECK(stationarity <= tol);
    CHECK(balance <= tol);
}

TEST_CASE("generator applied to occupation equals the discrete current divergence") {
    // L eta(x) / n^2 = tau_{x-1} h + tau_{x+1} h - 2 tau_x h at interior x.
    for (int m : {1, 2, 3}) {
        ModelParams p = make_params(m, std::max(6, 2 * m + 4), 1.0);
        p.alpha = 0.35;
        p.beta = 0.6;
        GeneratorMatrix gen = generator_matrix(p, Topology::Interval);
        CHECK(laplacian_identity_check(gen) <= 1e-10);
    }

    // Too small a box leaves no qualifying site.
    ModelParams tiny = make_params(3, 6);
    GeneratorMatrix gen_tiny = generator_matrix(tiny, Topology::Interval);
    CHECK_THROWS_AS(laplacian_identity_check(gen_tiny), ValidationError);
}

TEST_CASE("uniformization matches a direct ODE solve in the linear case") {
    // For m = 1 every exchange rate is n^2 (1 + n^(a-2)), so site means obey
    // the closed linear system
    //   d/dt r(x) = n^2 (1+s) [r(x-1) - 2 r(x) + r(x+1)]   (interior)
    // with reservoir relaxation kappa n^(2-theta) (gamma - r) at the two ends.
    ModelParams p = make_params(1, 5, 1.3, 1.0);
    p.alpha = 0.3;
    p.beta = 0.6;
    Profile g = make_profile("linear:0.2,0.8");

    GeneratorMatrix gen = generator_matrix(p, Topology::Interval);
    std::vector<double> t_grid = {0.01, 0.04};
    ExactEvolution ev = exact_density_evolution(gen, g, t_grid);
    REQUIRE(ev.times.size() == 2);
    for (double d : ev.mass_defect) CHECK(d <= 1e-12);

    int sites = p.n - 1;
    double hop = p.n * p.n * (1.0 + std::pow(p.n, p.a - 2.0));
    double bfac = p.kappa * std::pow(p.n, 2.0 - p.theta);
    std::vector<double> r(sites);
    for (int k = 0; k < sites; ++k) r[k] = g(static_cast<double>(k + 1) / p.n);

    auto deriv = [&](const std::vector<double>& v) {
        std::vector<double> d(sites, 0.0);
        for (int k = 0; k < sites; ++k) {
            double left = (k == 0) ? 0.0 : v[k - 1] - v[k];
            double right = (k == sites - 1) ? 0.0 : v[k + 1] - v[k];
            d[k] = hop * (left + right);
        }
        d[0] += bfac * (p.alpha - v[0]);
        d[sites - 1] += bfac * (p.beta - v[sites - 1]);
        return d;
    };

    double t = 0.0;
    const double dt = 2.0e-6;
    std::size_t next = 0;
    while (next < t_grid.size()) {
        double target = t_grid[next];
        while (t < target - dt / 2) {
            auto k1 = deriv(r);
            std::vector<double> v2(sites), v3(sites), v4(sites);
            for (int k = 0; k < sites; ++k) v2[k] = r[k] + 0.5 * dt * k1[k];
            auto k2 = deriv(v2);
            for (int k = 0; k < sites; ++k) v3[k] = r[k] + 0.5 * dt * k2[k];
            auto k3 = deriv(v3);
            for (int k = 0; k < sites; ++k) v4[k] = r[k] + dt * k3[k];
            auto k4 = deriv(v4);
            for (int k = 0; k < sites; ++k)
                r[k] += dt / 6.0 * (k1[k] + 2 * k2[k] + 2 * k3[k] + k4[k]);
            t += dt;
        }
        for (int k = 0; k < sites; ++k)
            CHECK(ev.site_mean[next][k] == doctest::Approx(r[k]).epsilon(5e-7));
        ++next;
    }
}

TEST_CASE("simulated ensembles agree with the exact law") {
    ModelParams p = make_params(2, 5, 0.7, 1.0);
    p.alpha = 0.25;
    p.beta = 0.65;
    Profile g = make_profile("linear:0.2,0.8");

    GeneratorMatrix gen = generator_matrix(p, Topology::Interval);
    ExactEvolution ev = exact_density_evolution(gen, g, {0.03});

    EnsembleOptions opt;
    opt.trajectories = 3000;
    opt.master_seed = 2024;
    opt.sample_times = {0.03};
    Ensemble ens = run_ensemble(g, p, opt);

    // Row 0 of the ensemble is t = 0; row 1 is t = 0.03.
    for (std::size_t k = 0; k < ens.sites.size(); ++k) {
        double err = std::abs(ens.site_mean[1][k] - ev.site_mean[0][k]);
        double band = 5.0 * std::max(ens.site_stderr[1][k], 1e-6);
        CHECK(err <= band);
    }
}

TEST_CASE("coordinate dump lists every transition with signed diagonal") {
    ModelParams p = make_params(1, 4, 1.0);
    GeneratorMatrix gen = generator_matrix(p, Topology::Interval);
    std::ostringstream os;
    write_coordinate(gen, os);
    std::string text = os.str();
    CHECK(text.find('#') != std::string::npos);
    // 8 states, each with a diagonal entry.
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines >= 8);
}

TEST_CASE("state space above 13 sites is rejected") {
    ModelParams p = make_params(1, 16, 1.0);
    CHECK_THROWS_AS(generator_matrix(p, Topology::Interval), ValidationError);
}
