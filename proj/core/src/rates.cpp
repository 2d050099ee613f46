#include "pmm/rates.hpp"

#include <cmath>

#include "pmm/numerics.hpp"

namespace pmm {

double reservoir_poly(double gamma, double rho, int m) {
    // Horner in rho: sum_{i=0}^{m-1} gamma^(m-1-i) rho^i.
    double r = 0.0;
    for (int i = m - 1; i >= 0; --i) r = r * rho + ipow(gamma, m - 1 - i);
    return r;
}

double pmm_rate(const Configuration& eta, int x) {
    int m = eta.params().m;
    double total = 0.0;
    for (int k = 1; k <= m; ++k) {
        double prod = 1.0;
        for (int j = -(m - k); j <= k; ++j) {
            if (j == 0 || j == 1) continue;
            prod *= eta.value(x + j);
            if (prod == 0.0) break;
        }
        total += prod;
    }
    return total;
}

double ssep_rate(const Configuration& eta, int x, int y) {
    return eta.value(x) * (1.0 - eta.value(y));
}

double boundary_rate(const Configuration& eta, int z, double gamma) {
    double v = eta.value(z);
    return gamma * (1.0 - v) + (1.0 - gamma) * v;
}

double current_potential(const Configuration& eta, int x, bool include_ssep) {
    int m = eta.params().m;
    double total = 0.0;
    for (int k = 1; k <= m; ++k) {
        double prod = 1.0;
        for (int j = -(m - k); j <= k - 1; ++j) {
            prod *= eta.value(x + j);
            if (prod == 0.0) break;
        }
        total += prod;
    }
    for (int k = 1; k <= m - 1; ++k) {
        double prod = 1.0;
        for (int j = -(m - k); j <= k; ++j) {
            if (j == 0) continue;
            prod *= eta.value(x + j);
            if (prod == 0.0) break;
        }
        total -= prod;
    }
    if (include_ssep) {
        const ModelParams& p = eta.params();
        total += std::pow(static_cast<double>(p.n), p.a - 2.0) * eta.value(x);
    }
    return total;
}

double bond_current(const Configuration& eta, int x, bool include_ssep) {
    return current_potential(eta, x, include_ssep) - current_potential(eta, x + 1, include_ssep);
}

} // namespace pmm
