#include "pmm/event_table.hpp"

#include <algorithm>
#include <cmath>

#include "pmm/numerics.hpp"
#include "pmm/rates.hpp"

namespace pmm {

void EventTable::build(const Configuration& eta) {
    const ModelParams& p = eta.params();
    double n = static_cast<double>(p.n);
    speed_ = n * n;
    ssep_ = std::pow(n, p.a - 2.0);
    boundary_factor_ = p.kappa * std::pow(n, 2.0 - p.theta);
    slow_factor_ = p.kappa * std::pow(n, -p.theta);

    if (eta.topology() == Topology::Interval) {
        bond_entries_ = p.n - 2;
        rates_.assign(bond_entries_ + 2, 0.0);
    } else {
        bond_entries_ = p.n;
        rates_.assign(bond_entries_, 0.0);
    }
    for (int i = 0; i < size(); ++i) rates_[i] = entry_rate(eta, i);
    resum();
}

double EventTable::entry_rate(const Configuration& eta, int i) const {
    const ModelParams& p = eta.params();
    if (eta.topology() == Topology::Interval) {
        if (i < bond_entries_) {
            int x = i + 1;
            if (eta.occupied(x) == eta.occupied(x + 1)) return 0.0;
            return speed_ * (pmm_rate(eta, x) + ssep_);
        }
        if (i == bond_entries_) return boundary_factor_ * boundary_rate(eta, 1, p.alpha);
        return boundary_factor_ * boundary_rate(eta, p.n - 1, p.beta);
    }
    int x = i;
    int y = (x + 1) % p.n;
    if (eta.occupied(x) == eta.occupied(y)) return 0.0;
    double r = speed_ * (pmm_rate(eta, x) + ssep_);
    if (x == p.n - 1) r *= slow_factor_;
    return r;
}

void EventTable::refresh_range(const Configuration& eta, int lo, int hi) {
    // lo..hi are bond labels (site of the left end of the bond).
    if (eta.topology() == Topology::Interval) {
        lo = std::max(lo, 1);
        hi = std::min(hi, eta.params().n - 2);
        for (int x = lo; x <= hi; ++x) {
            int i = x - 1;
            double r = entry_rate(eta, i);
            total_ += r - rates_[i];
            rates_[i] = r;
        }
        for (int i = bond_entries_; i < size(); ++i) {
            double r = entry_rate(eta, i);
            total_ += r - rates_[i];
            rates_[i] = r;
        }
    } else {
        int n = eta.params().n;
        int span = hi - lo + 1;
        if (span >= n) {
            lo = 0;
            hi = n - 1;
        }
        for (int x = lo; x <= hi; ++x) {
            int i = ((x % n) + n) % n;
            double r = entry_rate(eta, i);
            total_ += r - rates_[i];
            rates_[i] = r;
        }
    }
    if (total_ < 0.0) total_ = 0.0;
}

void EventTable::refresh_after_exchange(const Configuration& eta, int x) {
    int m = eta.params().m;
    refresh_range(eta, x - m - 1, x + m + 1);
}

void EventTable::refresh_after_flip(const Configuration& eta, int z) {
    int m = eta.params().m;
    refresh_range(eta, z - m - 1, z + m);
}

void EventTable::resum() {
    KahanSum acc;
    for (double r : rates_) acc.add(r);
    total_ = acc.value();
}

int EventTable::sample(double r) const {
    double acc = 0.0;
    int last_positive = -1;
    for (int i = 0; i < size(); ++i) {
        if (rates_[i] <= 0.0) continue;
        acc += rates_[i];
        last_positive = i;
        if (r < acc) return i;
    }
    return last_positive;
}

} // namespace pmm
