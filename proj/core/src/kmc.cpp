#include "pmm/kmc.hpp"

#include <algorithm>
#include <cmath>

#include "pmm/errors.hpp"
#include "pmm/numerics.hpp"
#include "pmm/rng.hpp"

namespace pmm {

Simulator::Simulator(Configuration initial) : eta_(std::move(initial)) {
    table_.build(eta_);
}

void Simulator::apply(int event) {
    int n = eta_.params().n;
    if (eta_.topology() == Topology::Interval) {
        int bond_entries = n - 2;
        if (event < bond_entries) {
            int x = event + 1;
            eta_.exchange(x);
            table_.refresh_after_exchange(eta_, x);
            return;
        }
        int z = event == bond_entries ? 1 : n - 1;
        bool was_occupied = eta_.occupied(z);
        eta_.flip(z);
        if (z == 1) {
            (was_occupied ? counters_.removed_left : counters_.injected_left) += 1;
        } else {
            (was_occupied ? counters_.removed_right : counters_.injected_right) += 1;
        }
        table_.refresh_after_flip(eta_, z);
        return;
    }
    eta_.exchange(event);
    table_.refresh_after_exchange(eta_, event);
}

double Simulator::step(std::mt19937_64& rng) {
    double total = table_.total();
    double tau = exponential_time(rng, total);
    int event = table_.sample(uniform_pos(rng) * total);
    apply(event);
    time_ += tau;
    events_ += 1;
    if ((events_ & 0xFFFF) == 0) table_.resum();
    return tau;
}

void Simulator::run_until(double t, std::mt19937_64& rng) {
    while (true) {
        double total = table_.total();
        if (total <= 0.0) { // absorbing configuration (possible on the torus)
            time_ = t;
            return;
        }
        double tau = exponential_time(rng, total);
        if (time_ + tau > t) {
            time_ = t;
            return;
        }
        int event = table_.sample(uniform_pos(rng) * total);
        time_ += tau;
        apply(event);
        events_ += 1;
        if ((events_ & 0xFFFF) == 0) table_.resum();
    }
}

Configuration sample_product(const ModelParams& params, Topology topology, const Profile& g,
                             std::mt19937_64& rng) {
    Configuration eta(params, topology);
    for (int x = eta.first_site(); x <= eta.last_site(); ++x) {
        double p = g(static_cast<double>(x) / params.n);
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("initial profile leaves [0,1] at u=x/n");
        eta.set(x, uniform_pos(rng) <= p);
    }
    return eta;
}

Configuration Trajectory::config_at(int k) const {
    Configuration c(params, topology);
    c.load(snapshots.at(k));
    return c;
}

namespace {

std::vector<double> normalize_times(std::vector<double> times, double horizon) {
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.empty() || times.front() > 0.0) times.insert(times.begin(), 0.0);
    if (times.front() < 0.0 || times.back() > horizon + 1e-12)
        throw ValidationError("sample times must lie in [0, T]");
    return times;
}

} // namespace

Trajectory simulate(const Profile& g, const ModelParams& params, Topology topology,
                    std::vector<double> sample_times, std::uint64_t seed) {
    params.validate();
    Trajectory traj;
    traj.params = params;
    traj.topology = topology;
    traj.seed = seed;
    traj.sample_times = normalize_times(std::move(sample_times), params.T);

    std::mt19937_64 rng = make_stream_rng(seed, 0);
    Simulator sim(sample_product(params, topology, g, rng));
    for (double t : traj.sample_times) {
        sim.run_until(t, rng);
        traj.snapshots.push_back(sim.state().occupancies());
    }
    traj.counters = sim.counters();
    traj.events = sim.event_count();
    return traj;
}

double empirical_pairing(const Configuration& eta, const TestFunction& G, double t) {
    const ModelParams& p = eta.params();
    KahanSum acc;
    for (int x = eta.first_site(); x <= eta.last_site(); ++x) {
        if (!eta.occupied(x)) continue;
        acc.add(G.value(t, static_cast<double>(x) / p.n));
    }
    return acc.value() / p.n;
}

double box_average(const Configuration& eta, int x, int ell, Side side) {
    if (ell < 1) throw ValidationError("box_average: ell must be >= 1");
    int lo = side == Side::Left ? x - ell + 1 : x;
    int hi = side == Side::Left ? x : x + ell - 1;
    if (eta.topology() == Topology::Interval &&
        (lo < eta.first_site() || hi > eta.last_site()))
        throw ValidationError("box_average: box leaves the site range");
    double sum = 0.0;
    for (int y = lo; y <= hi; ++y) sum += eta.value(y);
    return sum / ell;
}

int cell_of_site(int x, int n, int cells) {
    double u = static_cast<double>(x) / n;
    int c = static_cast<int>(std::floor(u * cells));
    return std::clamp(c, 0, cells - 1);
}

namespace {

// Mean and standard error across rows, reduced in row order.
void reduce_rows(const std::vector<std::vector<double>>& rows, std::vector<double>& mean,
                 std::vector<double>& se) {
    int m = static_cast<int>(rows.size());
    int w = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    mean.assign(w, 0.0);
    se.assign(w, 0.0);
    for (int j = 0; j < w; ++j) {
        KahanSum s;
        for (int i = 0; i < m; ++i) s.add(rows[i][j]);
        mean[j] = s.value() / m;
        if (m > 1) {
            KahanSum q;
            for (int i = 0; i < m; ++i) {
                double d = rows[i][j] - mean[j];
                q.add(d * d);
            }
            se[j] = std::sqrt(q.value() / (m - 1) / m);
        }
    }
}

} // namespace

Ensemble run_ensemble(const Profile& g, const ModelParams& params,
                      const EnsembleOptions& options) {
    params.validate();
    if (options.trajectories < 1)
        throw ValidationError("run_ensemble: trajectories must be >= 1");

    Ensemble out;
    out.params = params;
    out.options = options;
    out.sample_times = normalize_times(options.sample_times, params.T);

    Configuration probe(params, options.topology);
    int sites = probe.site_count();
    int cells = options.comparison_cells;
    for (int x = probe.first_site(); x <= probe.last_site(); ++x) out.sites.push_back(x);

    if (cells > 0) {
        std::vector<int> count(cells, 0);
        for (int x : out.sites) count[cell_of_site(x, params.n, cells)] += 1;
        for (int c = 0; c < cells; ++c)
            if (count[c] == 0)
                throw ValidationError("run_ensemble: comparison grid finer than the lattice");
    }

    int times = static_cast<int>(out.sample_times.size());
    // Per-trajectory rows, kept so the reduction order is fixed by index.
    std::vector<std::vector<std::vector<double>>> site_rows(times);
    std::vector<std::vector<std::vector<double>>> cell_rows(times);

    std::uint64_t master = options.master_seed;
    for (int i = 0; i < options.trajectories; ++i) {
        std::uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(i) + 1));
        std::uint64_t seed_i = splitmix64(s);
        Trajectory traj = simulate(g, params, options.topology, out.sample_times, seed_i);
        for (int k = 0; k < times; ++k) {
            const auto& occ = traj.snapshots[k];
            std::vector<double> row(occ.begin(), occ.end());
            if (cells > 0) {
                std::vector<double> cva(cells, 0.0);
                std::vector<int> cnt(cells, 0);
                for (int j = 0; j < sites; ++j) {
                    int c = cell_of_site(out.sites[j], params.n, cells);
                    cva[c] += row[j];
                    cnt[c] += 1;
                }
                for (int c = 0; c < cells; ++c) cva[c] /= cnt[c];
                cell_rows[k].push_back(std::move(cva));
            }
            site_rows[k].push_back(std::move(row));
        }
        out.counters.injected_left += traj.counters.injected_left;
        out.counters.removed_left += traj.counters.removed_left;
        out.counters.injected_right += traj.counters.injected_right;
        out.counters.removed_right += traj.counters.removed_right;
        out.total_events += traj.events;
    }

    out.site_mean.resize(times);
    out.site_stderr.resize(times);
    out.cell_mean.resize(cells > 0 ? times : 0);
    out.cell_stderr.resize(cells > 0 ? times : 0);
    for (int k = 0; k < times; ++k) {
        reduce_rows(site_rows[k], out.site_mean[k], out.site_stderr[k]);
        if (cells > 0) reduce_rows(cell_rows[k], out.cell_mean[k], out.cell_stderr[k]);
    }
    return out;
}

} // namespace pmm
