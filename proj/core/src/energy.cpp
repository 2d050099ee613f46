#include "pmm/energy.hpp"

#include <algorithm>
#include <cmath>

#include "pmm/errors.hpp"
#include "pmm/numerics.hpp"
#include "pmm/rates.hpp"

namespace pmm {

void EnergyParams::validate() const {
    if (m < 1) throw ValidationError("EnergyParams: m >= 1");
    if (!(c > 0.0)) throw ValidationError("EnergyParams: c > 0");
    if (!(kappa > 0.0)) throw ValidationError("EnergyParams: kappa > 0");
    if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0))
        throw ValidationError("EnergyParams: reservoir densities in (0,1)");
}

FieldView sample_on_grid(const TestFunction& H, const SpaceTimeField& grid) {
    FieldView v;
    v.cells = grid.cells;
    v.stored_steps = grid.stored_steps;
    v.horizon = grid.params.T;
    v.label = H.describe();
    int rows = grid.rows();
    v.values.resize(static_cast<std::size_t>(rows) * v.cells);
    v.du.resize(v.values.size());
    v.left.resize(rows);
    v.right.resize(rows);
    for (int j = 0; j < rows; ++j) {
        double t = grid.time(j);
        for (int i = 0; i < v.cells; ++i) {
            double u = grid.cell_center(i);
            v.values[static_cast<std::size_t>(j) * v.cells + i] = H.value(t, u);
            v.du[static_cast<std::size_t>(j) * v.cells + i] = H.du(t, u);
        }
        v.left[j] = H.value(t, 0.0);
        v.right[j] = H.value(t, 1.0);
    }
    return v;
}

FieldView gradient_direction(const SpaceTimeField& xi, int m) {
    FieldView v;
    v.cells = xi.cells;
    v.stored_steps = xi.stored_steps;
    v.horizon = xi.params.T;
    v.label = "-du(xi^m) grid direction";
    int rows = xi.rows();
    v.values.resize(static_cast<std::size_t>(rows) * v.cells);
    v.du.resize(v.values.size());
    v.left.resize(rows);
    v.right.resize(rows);
    double du = xi.du();
    std::vector<double> zeta(v.cells);
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < v.cells; ++i) zeta[i] = ipow(xi.at(j, i), m);
        std::vector<double> g = discrete_gradient(zeta.data(), v.cells, du);
        for (int i = 0; i < v.cells; ++i)
            v.values[static_cast<std::size_t>(j) * v.cells + i] = -g[i];
        std::vector<double> g2 = discrete_gradient(
            v.values.data() + static_cast<std::size_t>(j) * v.cells, v.cells, du);
        for (int i = 0; i < v.cells; ++i)
            v.du[static_cast<std::size_t>(j) * v.cells + i] = g2[i];
        // Boundary slots carry the trace of du(zeta); the ray inequality needs
        // them at second order, so extrapolate from three cell centers.
        int nc = v.cells;
        v.left[j] = -(-2.0 * zeta[0] + 3.0 * zeta[1] - zeta[2]) / du;
        v.right[j] = -(2.0 * zeta[nc - 1] - 3.0 * zeta[nc - 2] + zeta[nc - 3]) / du;
    }
    return v;
}

namespace {

void require_same_grid(const FieldView& H, const SpaceTimeField& xi, const char* who) {
    if (H.cells != xi.cells || H.stored_steps != xi.stored_steps ||
        std::abs(H.horizon - xi.params.T) > 1e-12)
        throw ValidationError(std::string(who) + ": direction sampled on a different grid");
}

// Right-endpoint weight for int_0^T: the boundary identities behind the energy
// functionals hold for a.e. s in (0,T], so the quadrature must not sample the
// (possibly incompatible) initial row.  Exact for time-constant integrands.
double right_weight(int j, int steps, double horizon) {
    return j == 0 ? 0.0 : horizon / steps;
}

// int_0^T |H_s|^2 ds, right-endpoint-in-time, midpoint-in-space.
double spacetime_sq(const FieldView& H) {
    KahanSum acc;
    double du = 1.0 / H.cells;
    for (int j = 0; j <= H.stored_steps; ++j) {
        double w = right_weight(j, H.stored_steps, H.horizon);
        KahanSum row;
        for (int i = 0; i < H.cells; ++i) {
            double v = H.at(j, i);
            row.add(v * v);
        }
        acc.add(w * du * row.value());
    }
    return acc.value();
}

} // namespace

double weighted_bracket(const FieldView& H, const SpaceTimeField& xi, const EnergyParams& ep) {
    ep.validate();
    require_same_grid(H, xi, "weighted_bracket");
    double bulk = spacetime_sq(H);
    KahanSum boundary;
    for (int j = 0; j <= H.stored_steps; ++j) {
        double w = right_weight(j, H.stored_steps, H.horizon);
        double pl = reservoir_poly(ep.alpha, xi.trace_left[j], ep.m);
        double pr = reservoir_poly(ep.beta, xi.trace_right[j], ep.m);
        boundary.add(w * (pl * H.left[j] * H.left[j] + pr * H.right[j] * H.right[j]));
    }
    return bulk + boundary.value() / ep.kappa;
}

double t_functional(const FieldView& H, const SpaceTimeField& xi, const EnergyParams& ep) {
    ep.validate();
    require_same_grid(H, xi, "t_functional");
    double am = ipow(ep.alpha, ep.m);
    double bm = ipow(ep.beta, ep.m);
    KahanSum acc;
    double du = xi.du();
    for (int j = 0; j <= H.stored_steps; ++j) {
        double w = right_weight(j, H.stored_steps, H.horizon);
        KahanSum row;
        for (int i = 0; i < H.cells; ++i)
            row.add(ipow(xi.at(j, i), ep.m) * H.du_at(j, i));
        acc.add(w * (row.value() * du + am * H.left[j] - bm * H.right[j]));
    }
    return acc.value();
}

double energy_dual(const SpaceTimeField& xi, const EnergyParams& ep) {
    ep.validate();
    FieldView g = gradient_direction(xi, ep.m);
    // <<du xi^m, du xi^m>>_{kappa,xi} of the (sign-flipped) gradient direction.
    return weighted_bracket(g, xi, ep) / (4.0 * ep.c);
}

std::pair<double, int> energy_sup_estimate(const SpaceTimeField& xi, const EnergyParams& ep,
                                           const std::vector<FieldView>& dictionary) {
    ep.validate();
    if (dictionary.empty())
        throw ValidationError("energy_sup_estimate: empty dictionary");
    double best = 0.0; // H = 0 gives 0, always admissible
    int arg = -1;
    for (int k = 0; k < static_cast<int>(dictionary.size()); ++k) {
        const FieldView& H = dictionary[k];
        double tv = t_functional(H, xi, ep);
        double wb = weighted_bracket(H, xi, ep);
        if (wb <= 0.0) continue; // H == 0 direction carries no information
        double val = tv * tv / (4.0 * ep.c * wb);
        if (val > best) {
            best = val;
            arg = k;
        }
    }
    return {best, arg};
}

std::vector<FieldView> standard_dictionary(const SpaceTimeField& grid, int max_freq,
                                           int time_powers) {
    if (max_freq < 0 || time_powers < 0)
        throw ValidationError("standard_dictionary: negative sizes");
    std::vector<FieldView> dict;
    for (int p = 0; p <= time_powers; ++p) {
        for (int k = 0; k <= max_freq; ++k) {
            dict.push_back(sample_on_grid(TestFunction::cosine(k, 1.0, p), grid));
            if (k > 0) dict.push_back(sample_on_grid(TestFunction::sine(k, 1.0, p), grid));
        }
    }
    return dict;
}

std::pair<double, double> robin_bc_residual(const SpaceTimeField& xi, const EnergyParams& ep) {
    ep.validate();
    double du = xi.du();
    KahanSum left, right;
    std::vector<double> zeta(xi.cells);
    for (int j = 0; j < xi.rows(); ++j) {
        double w = right_weight(j, xi.stored_steps, xi.params.T);
        for (int i = 0; i < xi.cells; ++i) zeta[i] = ipow(xi.at(j, i), ep.m);
        double slope_l = (zeta[1] - zeta[0]) / du;
        double slope_r = (zeta[xi.cells - 1] - zeta[xi.cells - 2]) / du;
        double rl = slope_l - ep.kappa * (xi.trace_left[j] - ep.alpha);
        double rr = slope_r - ep.kappa * (ep.beta - xi.trace_right[j]);
        left.add(w * rl * rl);
        right.add(w * rr * rr);
    }
    return {std::sqrt(left.value()), std::sqrt(right.value())};
}

double holder_modulus(const SpaceTimeField& xi, const TestFunction& H) {
    std::vector<double> paired(xi.rows());
    for (int j = 0; j < xi.rows(); ++j) {
        double t = xi.time(j);
        KahanSum acc;
        for (int i = 0; i < xi.cells; ++i) acc.add(xi.at(j, i) * H.value(t, xi.cell_center(i)));
        paired[j] = acc.value() * xi.du();
    }
    double worst = 0.0;
    for (int j = 0; j < xi.rows(); ++j)
        for (int k = j + 1; k < xi.rows(); ++k) {
            double gap = xi.time(k) - xi.time(j);
            worst = std::max(worst, std::abs(paired[k] - paired[j]) / std::sqrt(gap));
        }
    return worst;
}

double boundary_average_defect(const SpaceTimeField& xi, int j, double eps) {
    int m = xi.params.m;
    if (j < 0 || j >= m)
        throw ValidationError("boundary_average_defect: need 0 <= j < m");
    if (!(eps > 0.0) || (j + 1) * eps > 1.0 + 1e-12)
        throw ValidationError("boundary_average_defect: window [j eps, (j+1) eps] leaves [0,1]");

    double du = xi.du();
    double lo = j * eps, hi = (j + 1) * eps;
    double worst = -1e300;
    std::vector<double> zeta(xi.cells);
    for (int r = 0; r < xi.rows(); ++r) {
        // (1/eps) int_lo^hi xi, cells weighted by overlap length.
        KahanSum avg;
        for (int i = 0; i < xi.cells; ++i) {
            double a = i * du, b = (i + 1) * du;
            double ov = std::min(b, hi) - std::max(a, lo);
            if (ov > 0.0) avg.add(ov * xi.at(r, i));
        }
        double window_avg = avg.value() / eps;

        for (int i = 0; i < xi.cells; ++i) zeta[i] = ipow(xi.at(r, i), m);
        std::vector<double> g = discrete_gradient(zeta.data(), xi.cells, du);
        KahanSum norm;
        for (double v : g) norm.add(v * v);
        double grad_l2 = std::sqrt(norm.value() * du);

        double bound = std::pow(eps, 1.0 / (2.0 * (m + 1))) +
                       std::pow(eps, 1.0 / (m + 1)) * (ipow(2.0, m) / 3.0) *
                           std::pow(static_cast<double>(m), 1.5) * grad_l2;
        double defect = std::abs(xi.trace_left[r] - window_avg) - bound;
        worst = std::max(worst, defect);
    }
    return worst;
}

EnergyReport energy_report(const SpaceTimeField& xi, const EnergyParams& ep, int max_freq,
                           int time_powers) {
    EnergyReport rep;
    rep.params = ep;
    rep.dual_value = energy_dual(xi, ep);
    std::vector<FieldView> dict = standard_dictionary(xi, max_freq, time_powers);
    dict.push_back(gradient_direction(xi, ep.m));
    auto [sup, arg] = energy_sup_estimate(xi, ep, dict);
    rep.sup_value = sup;
    rep.argmax_index = arg;
    rep.argmax_label = arg >= 0 ? dict[arg].label : "none";
    rep.dictionary_size = static_cast<int>(dict.size());
    auto [bl, br] = robin_bc_residual(xi, ep);
    rep.bc_residual_left = bl;
    rep.bc_residual_right = br;
    TestFunction h = TestFunction::cosine(1); // fixed smooth direction for the modulus
    rep.holder = holder_modulus(xi, h);
    rep.holder_direction = h.describe();
    return rep;
}

} // namespace pmm
