#pragma once

#include <vector>

#include "pmm/configuration.hpp"

namespace pmm {

// Rate table for the accelerated chain.  All entries carry the n^2 time
// change; boundary entries additionally carry kappa / n^theta.
//
// Entry layout
//   Interval: 0 .. n-3   bond (x, x+1) with x = entry + 1
//             n-2        reservoir flip at site 1
//             n-1        reservoir flip at site n-1
//   Torus:    0 .. n-1   bond (x, x+1 mod n); the bond (n-1, 0) rate is
//             multiplied by kappa / n^theta, stirring part included.
class EventTable {
public:
    void build(const Configuration& eta);

    int size() const { return static_cast<int>(rates_.size()); }
    double rate(int i) const { return rates_[i]; }
    double total() const { return total_; }

    // Recompute the entries whose rate can change after the given event and
    // patch the cached total.  Windows are widened by one bond for safety;
    // each entry is recomputed exactly from the configuration.
    void refresh_after_exchange(const Configuration& eta, int x);
    void refresh_after_flip(const Configuration& eta, int z);

    // Exact resummation of the total; called periodically to cancel drift.
    void resum();

    // Linear scan selection: first index i with r < rates_[0] + ... + rates_[i].
    // Falls back to the last positive entry if r overshoots by roundoff.
    int sample(double r) const;

private:
    double entry_rate(const Configuration& eta, int i) const;
    void refresh_range(const Configuration& eta, int lo, int hi);

    std::vector<double> rates_;
    double total_ = 0.0;
    int bond_entries_ = 0;
    double speed_ = 1.0;       // n^2
    double ssep_ = 0.0;        // n^(a-2)
    double boundary_factor_ = 0.0; // kappa * n^(2-theta)
    double slow_factor_ = 1.0;     // kappa / n^theta (torus)
};

} // namespace pmm
