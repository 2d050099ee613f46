#include "pmm/weak_form.hpp"

#include <cmath>

#include "pmm/errors.hpp"
#include "pmm/numerics.hpp"

namespace pmm {

namespace {

// <row, h(t, .)> by the midpoint rule.
double pair_row(const SpaceTimeField& f, int j, const TestFunction& G,
                double (TestFunction::*eval)(double, double) const) {
    double t = f.time(j);
    KahanSum acc;
    for (int i = 0; i < f.cells; ++i)
        acc.add(f.at(j, i) * (G.*eval)(t, f.cell_center(i)));
    return acc.value() * f.du();
}

double pair_power_row(const SpaceTimeField& f, int j, int m, const TestFunction& G,
                      double (TestFunction::*eval)(double, double) const) {
    double t = f.time(j);
    KahanSum acc;
    for (int i = 0; i < f.cells; ++i)
        acc.add(ipow(f.at(j, i), m) * (G.*eval)(t, f.cell_center(i)));
    return acc.value() * f.du();
}

} // namespace

double weak_form_residual(const SpaceTimeField& f, const TestFunction& G, double t) {
    int jt = f.row_at_time(t);
    int m = f.params.m;
    double kappa = f.bc.kappa;
    if (f.bc.kind == BcKind::Dirichlet && !G.vanishes_at_boundary())
        throw ValidationError("weak_form_residual: Dirichlet form needs G(.,0) = G(.,1) = 0");

    double instant = pair_row(f, jt, G, &TestFunction::value) -
                     pair_row(f, 0, G, &TestFunction::value);
    if (jt == 0) return instant; // zero-length time interval

    KahanSum bulk, flux, reservoir, interface_term;
    for (int j = 0; j <= jt; ++j) {
        double w = trapezoid_weight(j, jt, f.time(jt));
        double s = f.time(j);
        bulk.add(w * (pair_row(f, j, G, &TestFunction::dt) +
                      pair_power_row(f, j, m, G, &TestFunction::laplacian)));

        double zl, zr;
        if (f.bc.kind == BcKind::Dirichlet) {
            zl = ipow(f.params.alpha, m);
            zr = ipow(f.params.beta, m);
        } else {
            zl = ipow(f.trace_left[j], m);
            zr = ipow(f.trace_right[j], m);
        }
        flux.add(w * (zr * G.du(s, 1.0) - zl * G.du(s, 0.0)));

        if (f.bc.kind == BcKind::Robin || f.bc.kind == BcKind::Neumann) {
            reservoir.add(w * (G.value(s, 0.0) * (f.params.alpha - f.trace_left[j]) +
                               G.value(s, 1.0) * (f.params.beta - f.trace_right[j])));
        } else if (f.bc.kind == BcKind::PeriodicSlowBond) {
            interface_term.add(w * (zl - zr) * (G.value(s, 0.0) - G.value(s, 1.0)));
        }
    }

    double r = instant - bulk.value() + flux.value();
    if (f.bc.kind == BcKind::Robin) r -= kappa * reservoir.value();
    if (f.bc.kind == BcKind::PeriodicSlowBond) r += kappa * interface_term.value();
    return r;
}

double integration_by_parts_check(const SpaceTimeField& zeta, const TestFunction& G) {
    KahanSum acc;
    double du = zeta.du();
    for (int j = 0; j < zeta.rows(); ++j) {
        double w = trapezoid_weight(j, zeta.stored_steps, zeta.params.T);
        double s = zeta.time(j);
        std::vector<double> grad = discrete_gradient(zeta.row(j), zeta.cells, du);
        KahanSum space;
        for (int i = 0; i < zeta.cells; ++i) {
            double u = zeta.cell_center(i);
            space.add(grad[i] * G.value(s, u) + zeta.at(j, i) * G.du(s, u));
        }
        double boundary =
            zeta.trace_right[j] * G.value(s, 1.0) - zeta.trace_left[j] * G.value(s, 0.0);
        acc.add(w * (space.value() * du - boundary));
    }
    return std::abs(acc.value());
}

} // namespace pmm
