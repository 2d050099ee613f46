#include "pmm/params.hpp"

#include <sstream>

#include "pmm/errors.hpp"

namespace pmm {

void ModelParams::validate() const {
    auto fail = [](const std::string& field, const std::string& bound) {
        throw ValidationError("ModelParams: " + field + " must satisfy " + bound);
    };
    if (m < 1) fail("m", "m >= 1");
    if (n < 3) fail("n", "n >= 3");
    if (!(kappa > 0.0)) fail("kappa", "kappa > 0");
    if (!(theta >= 0.0)) fail("theta", "theta >= 0");
    if (!(a > 1.0 && a < 2.0)) fail("a", "1 < a < 2");
    if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha", "0 < alpha < 1");
    if (!(beta > 0.0 && beta < 1.0)) fail("beta", "0 < beta < 1");
    if (!(T > 0.0)) fail("T", "T > 0");
}

std::string describe(const ModelParams& p) {
    std::ostringstream os;
    os << "m=" << p.m << " n=" << p.n << " kappa=" << p.kappa << " theta=" << p.theta
       << " a=" << p.a << " alpha=" << p.alpha << " beta=" << p.beta << " T=" << p.T;
    return os.str();
}

} // namespace pmm
