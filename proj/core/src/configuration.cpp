#include "pmm/configuration.hpp"

#include <cassert>

#include "pmm/errors.hpp"

namespace pmm {

const char* topology_name(Topology t) {
    return t == Topology::Interval ? "interval" : "torus_slow_bond";
}

Configuration::Configuration(const ModelParams& params, Topology topology)
    : params_(&params), topology_(topology) {
    params.validate();
    occ_.assign(topology == Topology::Interval ? params.n - 1 : params.n, 0);
}

int Configuration::index(int x) const {
    if (topology_ == Topology::TorusSlowBond) {
        int n = params_->n;
        int r = x % n;
        if (r < 0) r += n;
        return r;
    }
    assert(x >= 1 && x <= params_->n - 1);
    return x - 1;
}

void Configuration::exchange(int x) {
    int i = index(x);
    int j = index(x + 1);
    std::uint8_t t = occ_[i];
    occ_[i] = occ_[j];
    occ_[j] = t;
}

double Configuration::value(int x) const {
    if (topology_ == Topology::Interval) {
        if (x <= 0) return params_->alpha;
        if (x >= params_->n) return params_->beta;
    }
    return static_cast<double>(occ_[index(x)]);
}

int Configuration::particle_count() const {
    int c = 0;
    for (std::uint8_t v : occ_) c += v;
    return c;
}

void Configuration::load(const std::vector<std::uint8_t>& occ) {
    if (static_cast<int>(occ.size()) != site_count())
        throw ValidationError("Configuration::load: occupancy size mismatch");
    occ_ = occ;
}

std::uint32_t Configuration::state_index() const {
    assert(site_count() <= 30);
    std::uint32_t s = 0;
    for (int i = site_count() - 1; i >= 0; --i) s = (s << 1) | occ_[i];
    return s;
}

Configuration Configuration::from_state_index(const ModelParams& params, Topology topology,
                                              std::uint32_t s) {
    Configuration c(params, topology);
    for (int i = 0; i < c.site_count(); ++i) c.occ_[i] = (s >> i) & 1u;
    return c;
}

} // namespace pmm
