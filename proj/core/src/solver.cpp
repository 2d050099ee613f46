#include "pmm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmm/errors.hpp"
#include "pmm/numerics.hpp"

namespace pmm {

namespace {

// Largest monotone time step for the given boundary kind; see solver.hpp.
double max_stable_dt(const ModelParams& p, Bc bc, double du) {
    double m = static_cast<double>(p.m);
    double interior = 2.0 * m / (du * du);
    double boundary = 0.0;
    switch (bc.kind) {
        case BcKind::Robin: boundary = m / (du * du) + bc.kappa / du; break;
        case BcKind::Neumann: boundary = m / (du * du); break;
        case BcKind::Dirichlet: boundary = 3.0 * m / (du * du); break;
        case BcKind::PeriodicSlowBond: boundary = m / (du * du) + bc.kappa * m / du; break;
    }
    return 1.0 / std::max(interior, boundary);
}

} // namespace

SpaceTimeField solve_pme(const Profile& g, const ModelParams& params, Bc bc,
                         const SolveOptions& opt) {
    params.validate();
    if (opt.cells < 4) throw ValidationError("solve_pme: cells must be >= 4");
    if (!(opt.cfl > 0.0)) throw ValidationError("solve_pme: cfl must be positive");
    // cfl >= 1 breaks the monotonicity bound the explicit step relies on; that
    // is a stability failure, not a malformed input.
    if (opt.cfl >= 1.0)
        throw NumericalError("solve_pme: cfl=" + std::to_string(opt.cfl) +
                             " breaches the explicit stability bound (need cfl < 1)");
    if (bc.kappa < 0.0) throw ValidationError("solve_pme: bc.kappa must be >= 0");

    int N = opt.cells;
    double du = 1.0 / N;
    int m = params.m;
    double dt_target = std::min(opt.cfl * du * du / (2.0 * m),
                                opt.cfl * max_stable_dt(params, bc, du));
    long long total_steps = static_cast<long long>(std::ceil(params.T / dt_target));
    int stored = opt.stored_steps > 0 ? opt.stored_steps
                                      : static_cast<int>(std::min<long long>(total_steps, 512));
    long long substeps = (total_steps + stored - 1) / stored;
    total_steps = substeps * stored;
    double dt = params.T / static_cast<double>(total_steps);

    SpaceTimeField out;
    out.params = params;
    out.bc = bc;
    out.cells = N;
    out.stored_steps = stored;
    out.values.resize(static_cast<std::size_t>(stored + 1) * N);
    out.trace_left.resize(stored + 1);
    out.trace_right.resize(stored + 1);
    out.flux_int_left.resize(stored + 1);
    out.flux_int_right.resize(stored + 1);

    std::vector<double> rho(N), zeta(N);
    for (int i = 0; i < N; ++i) {
        double v = g((i + 0.5) * du);
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError("solve_pme: initial profile leaves [0,1]");
        rho[i] = v;
    }

    double am = ipow(params.alpha, m);
    double bm = ipow(params.beta, m);
    KahanSum acc_left, acc_right; // cumulative boundary-flux time integrals

    auto record = [&](int row) {
        for (int i = 0; i < N; ++i) out.at(row, i) = rho[i];
        switch (bc.kind) {
            case BcKind::Dirichlet:
                out.trace_left[row] = params.alpha;
                out.trace_right[row] = params.beta;
                break;
            default:
                out.trace_left[row] = rho[0];
                out.trace_right[row] = rho[N - 1];
        }
        out.flux_int_left[row] = acc_left.value();
        out.flux_int_right[row] = acc_right.value();
    };
    record(0);

    double rate = dt / du;
    for (int row = 1; row <= stored; ++row) {
        for (long long s = 0; s < substeps; ++s) {
            for (int i = 0; i < N; ++i) zeta[i] = ipow(rho[i], m);

            double f_left = 0.0, f_right = 0.0;
            switch (bc.kind) {
                case BcKind::Robin:
                    f_left = bc.kappa * (rho[0] - params.alpha);
                    f_right = bc.kappa * (params.beta - rho[N - 1]);
                    break;
                case BcKind::Neumann:
                    f_left = 0.0;
                    f_right = 0.0;
                    break;
                case BcKind::Dirichlet:
                    f_left = (zeta[0] - am) / (0.5 * du);
                    f_right = (bm - zeta[N - 1]) / (0.5 * du);
                    break;
                case BcKind::PeriodicSlowBond: {
                    double wrap = bc.kappa * (zeta[0] - zeta[N - 1]);
                    f_left = wrap;
                    f_right = wrap;
                    break;
                }
            }
            acc_left.add(dt * f_left);
            acc_right.add(dt * f_right);

            // Neighbour coupling is entirely through the frozen zeta row, so
            // the update can run in place.
            bool in_range = true;
            double prev_flux = f_left;
            for (int i = 0; i < N; ++i) {
                double next_flux = i + 1 < N ? (zeta[i + 1] - zeta[i]) / du : f_right;
                double v = rho[i] + rate * (next_flux - prev_flux);
                prev_flux = next_flux;
                in_range = in_range && v >= -1e-12 && v <= 1.0 + 1e-12;
                rho[i] = v;
            }
            if (!in_range)
                throw NumericalError("solve_pme: state left [0,1] at t=" +
                                     std::to_string(out.time(row - 1) + (s + 1) * dt) + " (" +
                                     bc_name(bc.kind) + ", cfl too large?)");
        }
        record(row);
    }
    return out;
}

double mass_balance_defect(const SpaceTimeField& f) {
    double m0 = f.mass(0);
    double worst = 0.0;
    for (int j = 0; j < f.rows(); ++j) {
        double lhs = f.mass(j) - m0;
        // For PeriodicSlowBond the two integrals are the same wrap face and
        // cancel, leaving the pure conservation statement.
        double rhs = f.flux_int_right[j] - f.flux_int_left[j];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

std::vector<double> dirichlet_steady_profile(const ModelParams& params, int cells) {
    std::vector<double> prof(cells);
    double am = ipow(params.alpha, params.m);
    double bm = ipow(params.beta, params.m);
    for (int i = 0; i < cells; ++i) {
        double u = (i + 0.5) / cells;
        prof[i] = std::pow(am + (bm - am) * u, 1.0 / params.m);
    }
    return prof;
}

} // namespace pmm
