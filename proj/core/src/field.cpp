#include "pmm/field.hpp"

#include <cmath>

#include "pmm/errors.hpp"
#include "pmm/numerics.hpp"

namespace pmm {

const char* bc_name(BcKind k) {
    switch (k) {
        case BcKind::Robin: return "robin";
        case BcKind::Neumann: return "neumann";
        case BcKind::Dirichlet: return "dirichlet";
        case BcKind::PeriodicSlowBond: return "periodic_slow_bond";
    }
    return "?";
}

double SpaceTimeField::mass(int j) const {
    KahanSum acc;
    const double* r = row(j);
    for (int i = 0; i < cells; ++i) acc.add(r[i]);
    return acc.value() * du();
}

int SpaceTimeField::row_at_time(double t) const {
    double pos = t / dt_stored();
    int j = static_cast<int>(std::llround(pos));
    if (j < 0 || j > stored_steps || std::abs(pos - j) > 1e-9 * (stored_steps + 1))
        throw ValidationError("time is not on the stored grid");
    return j;
}

bool same_grid(const SpaceTimeField& f, const SpaceTimeField& g) {
    return f.cells == g.cells && f.stored_steps == g.stored_steps &&
           std::abs(f.params.T - g.params.T) < 1e-12;
}

double l2_spacetime_distance(const SpaceTimeField& f, const SpaceTimeField& g) {
    if (!same_grid(f, g))
        throw ValidationError("l2_spacetime_distance: fields live on different grids");
    KahanSum acc;
    double du = f.du();
    for (int j = 0; j < f.rows(); ++j) {
        double w = trapezoid_weight(j, f.stored_steps, f.params.T);
        const double* a = f.row(j);
        const double* b = g.row(j);
        KahanSum rowsum;
        for (int i = 0; i < f.cells; ++i) {
            double d = a[i] - b[i];
            rowsum.add(d * d);
        }
        acc.add(w * du * rowsum.value());
    }
    return std::sqrt(acc.value());
}

double dirichlet_trace_defect(const SpaceTimeField& f) {
    KahanSum acc;
    for (int j = 0; j < f.rows(); ++j) {
        double w = trapezoid_weight(j, f.stored_steps, f.params.T);
        double dl = f.at(j, 0) - f.params.alpha;
        double dr = f.at(j, f.cells - 1) - f.params.beta;
        acc.add(w * (dl * dl + dr * dr));
    }
    return std::sqrt(acc.value());
}

std::vector<double> discrete_gradient(const double* row, int cells, double du) {
    std::vector<double> g(cells);
    if (cells == 1) {
        g[0] = 0.0;
        return g;
    }
    g[0] = (row[1] - row[0]) / du;
    for (int i = 1; i < cells - 1; ++i) g[i] = (row[i + 1] - row[i - 1]) / (2.0 * du);
    g[cells - 1] = (row[cells - 1] - row[cells - 2]) / du;
    return g;
}

SpaceTimeField field_from_function(const std::function<double(double, double)>& f,
                                   const ModelParams& params, Bc bc, int cells,
                                   int stored_steps, TraceRule rule) {
    if (cells < 2 || stored_steps < 1)
        throw ValidationError("field_from_function: need cells >= 2 and stored_steps >= 1");
    SpaceTimeField out;
    out.params = params;
    out.bc = bc;
    out.cells = cells;
    out.stored_steps = stored_steps;
    out.values.resize(static_cast<std::size_t>(out.rows()) * cells);
    out.trace_left.resize(out.rows());
    out.trace_right.resize(out.rows());
    out.flux_int_left.assign(out.rows(), 0.0);
    out.flux_int_right.assign(out.rows(), 0.0);
    for (int j = 0; j < out.rows(); ++j) {
        double t = out.time(j);
        for (int i = 0; i < cells; ++i) out.at(j, i) = f(t, out.cell_center(i));
        if (rule == TraceRule::Endpoint) {
            out.trace_left[j] = f(t, 0.0);
            out.trace_right[j] = f(t, 1.0);
        } else {
            out.trace_left[j] = out.at(j, 0);
            out.trace_right[j] = out.at(j, cells - 1);
        }
    }
    return out;
}

} // namespace pmm
