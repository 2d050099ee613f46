#include "pmm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pmm/errors.hpp"
#include "pmm/event_table.hpp"
#include "pmm/numerics.hpp"
#include "pmm/rates.hpp"

namespace pmm {

double GeneratorMatrix::row_sum_defect() const {
    double worst = 0.0;
    for (std::uint32_t s = 0; s < states; ++s)
        worst = std::max(worst, std::abs(exit_rate[s] - table_total[s]));
    return worst;
}

GeneratorMatrix generator_matrix(const ModelParams& params, Topology topology) {
    params.validate();
    GeneratorMatrix gen;
    gen.params = params;
    gen.topology = topology;
    Configuration probe(params, topology);
    gen.sites = probe.site_count();
    if (gen.sites > 13)
        throw ValidationError("generator_matrix: state space too large (sites > 13)");
    gen.states = 1u << gen.sites;
    gen.rows.resize(gen.states);
    gen.exit_rate.assign(gen.states, 0.0);
    gen.table_total.assign(gen.states, 0.0);

    double n = static_cast<double>(params.n);
    double speed = n * n;
    double ssep = std::pow(n, params.a - 2.0);
    double boundary_factor = params.kappa * std::pow(n, 2.0 - params.theta);
    double slow_factor = params.kappa * std::pow(n, -params.theta);

    for (std::uint32_t s = 0; s < gen.states; ++s) {
        Configuration eta = Configuration::from_state_index(params, topology, s);
        auto& row = gen.rows[s];

        if (topology == Topology::Interval) {
            for (int x = 1; x <= params.n - 2; ++x) {
                if (eta.occupied(x) == eta.occupied(x + 1)) continue;
                double r = speed * (pmm_rate(eta, x) + ssep);
                // Swap of neighbouring bits x-1, x (0-based) in the state word.
                std::uint32_t target = s ^ (0x3u << (x - 1));
                row.emplace_back(target, r);
            }
            double r1 = boundary_factor * boundary_rate(eta, 1, params.alpha);
            row.emplace_back(s ^ 0x1u, r1);
            double rn = boundary_factor * boundary_rate(eta, params.n - 1, params.beta);
            row.emplace_back(s ^ (0x1u << (gen.sites - 1)), rn);
        } else {
            for (int x = 0; x <= params.n - 1; ++x) {
                int y = (x + 1) % params.n;
                if (eta.occupied(x) == eta.occupied(y)) continue;
                double r = speed * (pmm_rate(eta, x) + ssep);
                if (x == params.n - 1) r *= slow_factor;
                std::uint32_t target = s ^ (1u << x) ^ (1u << y);
                row.emplace_back(target, r);
            }
        }

        KahanSum acc;
        for (auto& [t, r] : row) acc.add(r);
        gen.exit_rate[s] = acc.value();

        EventTable table;
        table.build(eta);
        gen.table_total[s] = table.total();
    }
    gen.norm_inf = *std::max_element(gen.exit_rate.begin(), gen.exit_rate.end());
    return gen;
}

std::pair<double, double> invariant_measure_check(const GeneratorMatrix& gen, double rho) {
    const ModelParams& p = gen.params;
    if (std::abs(p.alpha - rho) > 1e-15 || std::abs(p.beta - rho) > 1e-15)
        throw ValidationError("invariant_measure_check: needs alpha == beta == rho");

    std::vector<double> nu(gen.states);
    for (std::uint32_t s = 0; s < gen.states; ++s) {
        double w = 1.0;
        for (int i = 0; i < gen.sites; ++i) w *= ((s >> i) & 1u) ? rho : (1.0 - rho);
        nu[s] = w;
    }

    std::vector<KahanSum> flow(gen.states);
    double db_defect = 0.0;
    for (std::uint32_t s = 0; s < gen.states; ++s) {
        for (auto& [t, r] : gen.rows[s]) {
            flow[t].add(nu[s] * r);
            // Detailed balance across each directed edge, scanned once per direction.
            double back = 0.0;
            for (auto& [bt, br] : gen.rows[t])
                if (bt == s) back = br;
            db_defect = std::max(db_defect, std::abs(nu[s] * r - nu[t] * back));
        }
        flow[s].add(-nu[s] * gen.exit_rate[s]);
    }
    double stat_defect = 0.0;
    for (std::uint32_t s = 0; s < gen.states; ++s)
        stat_defect = std::max(stat_defect, std::abs(flow[s].value()));
    return {stat_defect, db_defect};
}

double laplacian_identity_check(const GeneratorMatrix& gen) {
    const ModelParams& p = gen.params;
    if (gen.topology != Topology::Interval)
        throw ValidationError("laplacian_identity_check: interval topology only");
    int lo = p.m + 2;
    int hi = p.n - p.m - 2;
    if (lo > hi)
        throw ValidationError("laplacian_identity_check: no bulk site at distance > m "
                              "from the boundaries (need n >= 2m+4)");

    double n2 = static_cast<double>(p.n) * p.n;
    double worst = 0.0;
    for (std::uint32_t s = 0; s < gen.states; ++s) {
        Configuration eta = Configuration::from_state_index(p, gen.topology, s);
        for (int x = lo; x <= hi; ++x) {
            double eta_x = eta.value(x);
            KahanSum gen_action;
            for (auto& [t, r] : gen.rows[s]) {
                double tx = ((t >> (x - 1)) & 1u) ? 1.0 : 0.0;
                if (tx != eta_x) gen_action.add(r * (tx - eta_x));
            }
            double lhs = gen_action.value() / n2;
            double rhs = current_potential(eta, x - 1, true) +
                         current_potential(eta, x + 1, true) -
                         2.0 * current_potential(eta, x, true);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

ExactEvolution exact_density_evolution(const GeneratorMatrix& gen, const Profile& g,
                                       std::vector<double> t_grid) {
    const ModelParams& p = gen.params;
    std::sort(t_grid.begin(), t_grid.end());
    if (!t_grid.empty() && t_grid.front() < 0.0)
        throw ValidationError("exact_density_evolution: negative time");

    Configuration probe(p, gen.topology);
    ExactEvolution out;
    for (int x = probe.first_site(); x <= probe.last_site(); ++x) out.sites.push_back(x);

    // Initial product law.
    std::vector<double> prob(gen.states);
    for (std::uint32_t s = 0; s < gen.states; ++s) {
        double w = 1.0;
        for (int i = 0; i < gen.sites; ++i) {
            double marginal = g(static_cast<double>(out.sites[i]) / p.n);
            if (!(marginal >= 0.0 && marginal <= 1.0))
                throw ValidationError("exact_density_evolution: profile leaves [0,1]");
            w *= ((s >> i) & 1u) ? marginal : (1.0 - marginal);
        }
        prob[s] = w;
    }

    double lambda = gen.norm_inf;
    std::vector<double> work(gen.states), next(gen.states), mix(gen.states);

    // One application of the uniformized kernel P = I + Q / lambda.
    auto apply_kernel = [&](const std::vector<double>& v, std::vector<double>& dst) {
        for (std::uint32_t s = 0; s < gen.states; ++s)
            dst[s] = v[s] * (1.0 - gen.exit_rate[s] / lambda);
        for (std::uint32_t s = 0; s < gen.states; ++s) {
            if (v[s] == 0.0) continue;
            double scale = v[s] / lambda;
            for (auto& [t, r] : gen.rows[s]) dst[t] += scale * r;
        }
    };

    double t_prev = 0.0;
    for (double t : t_grid) {
        double dt = t - t_prev;
        if (dt > 0.0 && lambda > 0.0) {
            double q = lambda * dt;
            // Poisson(q) weights until the tail is below 1e-14.
            double w = std::exp(-q);
            double cum = w;
            std::fill(mix.begin(), mix.end(), 0.0);
            for (std::uint32_t s = 0; s < gen.states; ++s) mix[s] = w * prob[s];
            work = prob;
            for (int k = 1; cum < 1.0 - 1e-14; ++k) {
                apply_kernel(work, next);
                std::swap(work, next);
                w *= q / k;
                cum += w;
                for (std::uint32_t s = 0; s < gen.states; ++s) mix[s] += w * work[s];
                if (k > 1000000)
                    throw NumericalError("exact_density_evolution: series failed to converge");
            }
            // The truncated mixture is kept as is; the tail below 1e-14 shows
            // up in mass_defect rather than being hidden by renormalization.
            prob = mix;
        }
        t_prev = t;

        KahanSum mass;
        for (double v : prob) mass.add(v);
        out.mass_defect.push_back(std::abs(mass.value() - 1.0));
        out.times.push_back(t);
        std::vector<double> means(gen.sites, 0.0);
        for (std::uint32_t s = 0; s < gen.states; ++s) {
            if (prob[s] == 0.0) continue;
            for (int i = 0; i < gen.sites; ++i)
                if ((s >> i) & 1u) means[i] += prob[s];
        }
        out.site_mean.push_back(std::move(means));
    }
    return out;
}

void write_coordinate(const GeneratorMatrix& gen, std::ostream& os) {
    os << "# generator matrix, coordinate format: row col rate\n";
    os << "# " << describe(gen.params) << " topology=" << topology_name(gen.topology)
       << " states=" << gen.states << "\n";
    char buf[96];
    for (std::uint32_t s = 0; s < gen.states; ++s) {
        for (auto& [t, r] : gen.rows[s]) {
            std::snprintf(buf, sizeof buf, "%u %u %.17g\n", s, t, r);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, "%u %u %.17g\n", s, s, -gen.exit_rate[s]);
        os << buf;
    }
}

} // namespace pmm
