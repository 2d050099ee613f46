#pragma once

#include <cstdint>
#include <vector>

#include "pmm/params.hpp"

namespace pmm {

// Interval: sites 1..n-1, two reservoirs, exchange and injection dynamics.
// TorusSlowBond: sites 0..n-1, no reservoirs, bond (n-1,0) slowed by kappa/n^theta.
enum class Topology { Interval, TorusSlowBond };

const char* topology_name(Topology t);

// Occupancy configuration.  Site reads go through value(), which extends the
// interval configuration by the reservoir convention
//     value(x) = alpha for x <= 0,   value(x) = beta for x >= n,
// and wraps modulo n on the torus.  All rate formulas are written against
// value() so one expression covers bulk, boundary and torus cases.
class Configuration {
public:
    Configuration(const ModelParams& params, Topology topology);

    int site_count() const { return static_cast<int>(occ_.size()); }
    int first_site() const { return topology_ == Topology::Interval ? 1 : 0; }
    int last_site() const { return first_site() + site_count() - 1; }

    bool occupied(int x) const { return occ_[index(x)] != 0; }
    void set(int x, bool v) { occ_[index(x)] = v ? 1 : 0; }
    void flip(int x) { occ_[index(x)] ^= 1; }

    // Exchanges the contents of sites x and x+1 (x+1 taken mod n on the torus).
    void exchange(int x);

    // Occupancy as a density value, with the reservoir convention applied.
    double value(int x) const;

    int particle_count() const;

    // Packs occupancies into a state index, site first_site() at bit 0.
    // Only meaningful for site_count() <= 30; the exact oracle uses it.
    std::uint32_t state_index() const;
    static Configuration from_state_index(const ModelParams& params, Topology topology,
                                          std::uint32_t s);

    const std::vector<std::uint8_t>& occupancies() const { return occ_; }
    void load(const std::vector<std::uint8_t>& occ);

    Topology topology() const { return topology_; }
    const ModelParams& params() const { return *params_; }

    bool operator==(const Configuration& other) const { return occ_ == other.occ_; }

private:
    int index(int x) const;

    const ModelParams* params_;
    Topology topology_;
    std::vector<std::uint8_t> occ_;
};

} // namespace pmm
