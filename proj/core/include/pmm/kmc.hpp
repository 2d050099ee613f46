#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pmm/configuration.hpp"
#include "pmm/event_table.hpp"
#include "pmm/profiles.hpp"
#include "pmm/test_function.hpp"

namespace pmm {

struct BoundaryCounters {
    long long injected_left = 0;
    long long removed_left = 0;
    long long injected_right = 0;
    long long removed_right = 0;

    long long net() const {
        return injected_left + injected_right - removed_left - removed_right;
    }
    long long total() const {
        return injected_left + injected_right + removed_left + removed_right;
    }
};

// Direct-method jump chain for the accelerated dynamics.  The clock runs in
// macroscopic time; all rates already carry the n^2 speedup.
class Simulator {
public:
    explicit Simulator(Configuration initial);

    double time() const { return time_; }
    const Configuration& state() const { return eta_; }
    const EventTable& table() const { return table_; }
    long long event_count() const { return events_; }
    const BoundaryCounters& counters() const { return counters_; }

    // One jump: exponential holding time at the current total rate, then the
    // selected event.  Returns the holding time.  Precondition: total > 0.
    double step(std::mt19937_64& rng);

    // Advances the clock to t, applying every jump that fits.  When the next
    // holding time overshoots t the state is left unchanged and the clock set
    // to t; the discarded overshoot is exact by memorylessness.
    void run_until(double t, std::mt19937_64& rng);

private:
    void apply(int event);

    Configuration eta_;
    EventTable table_;
    double time_ = 0.0;
    long long events_ = 0;
    BoundaryCounters counters_;
};

// Product measure with marginals g(x/n), sampled site by site.
Configuration sample_product(const ModelParams& params, Topology topology, const Profile& g,
                             std::mt19937_64& rng);

// One realization observed at fixed macroscopic times.
struct Trajectory {
    ModelParams params;
    Topology topology = Topology::Interval;
    std::uint64_t seed = 0;
    std::vector<double> sample_times;                   // sorted, starts at 0
    std::vector<std::vector<std::uint8_t>> snapshots;   // occupancies per sample time
    BoundaryCounters counters;
    long long events = 0;

    // Rebuilds the k-th snapshot as a Configuration bound to this->params.
    Configuration config_at(int k) const;
};

// Runs one realization from a fresh product sample.  sample_times are
// normalized: sorted, deduplicated, 0 prepended when missing; they must lie
// in [0, params.T].  The same (seed, params, topology, g) reproduces the
// identical event sequence.
Trajectory simulate(const Profile& g, const ModelParams& params, Topology topology,
                    std::vector<double> sample_times, std::uint64_t seed);

// <pi^n, G(t, .)> = (1/n) sum_x G(t, x/n) eta(x) over the sites of eta.
double empirical_pairing(const Configuration& eta, const TestFunction& G, double t);

enum class Side { Left, Right };

// Box average over ell sites ending (Left) or starting (Right) at x:
// Left: {x-ell+1, .., x};  Right: {x, .., x+ell-1}.  Throws when the box
// leaves the site range on the interval; wraps on the torus.
double box_average(const Configuration& eta, int x, int ell, Side side);

struct EnsembleOptions {
    int trajectories = 100;
    std::uint64_t master_seed = 20250817;
    std::vector<double> sample_times;
    int comparison_cells = 0; // 0: no cell projection
    Topology topology = Topology::Interval;
};

// Ensemble statistics across independent trajectories.  Reduction happens in
// trajectory-index order with compensated sums, so the result is a function
// of the seed set only, not of completion order.
struct Ensemble {
    ModelParams params;
    EnsembleOptions options;
    std::vector<double> sample_times;
    std::vector<int> sites;                        // site labels, for output
    std::vector<std::vector<double>> site_mean;    // [time][site]
    std::vector<std::vector<double>> site_stderr;  // [time][site]
    std::vector<std::vector<double>> cell_mean;    // [time][cell], empty if no projection
    std::vector<std::vector<double>> cell_stderr;  // [time][cell]
    BoundaryCounters counters;                     // summed over trajectories
    long long total_events = 0;
};

Ensemble run_ensemble(const Profile& g, const ModelParams& params, const EnsembleOptions& options);

// Cell index of site x on a grid of `cells` cells: the cell containing x/n.
int cell_of_site(int x, int n, int cells);

} // namespace pmm
