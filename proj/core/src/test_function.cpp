#include "pmm/test_function.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "pmm/numerics.hpp"

namespace pmm {

namespace {

double spatial_value(TestFunction::Spatial kind, int idx, double u) {
    switch (kind) {
        case TestFunction::Spatial::Cos: return std::cos(idx * std::numbers::pi * u);
        case TestFunction::Spatial::Sin: return std::sin(idx * std::numbers::pi * u);
        case TestFunction::Spatial::Poly: return ipow(u, idx);
    }
    return 0.0;
}

double spatial_du(TestFunction::Spatial kind, int idx, double u) {
    double w = idx * std::numbers::pi;
    switch (kind) {
        case TestFunction::Spatial::Cos: return -w * std::sin(w * u);
        case TestFunction::Spatial::Sin: return w * std::cos(w * u);
        case TestFunction::Spatial::Poly: return idx == 0 ? 0.0 : idx * ipow(u, idx - 1);
    }
    return 0.0;
}

double spatial_lap(TestFunction::Spatial kind, int idx, double u) {
    double w = idx * std::numbers::pi;
    switch (kind) {
        case TestFunction::Spatial::Cos: return -w * w * std::cos(w * u);
        case TestFunction::Spatial::Sin: return -w * w * std::sin(w * u);
        case TestFunction::Spatial::Poly:
            return idx < 2 ? 0.0 : static_cast<double>(idx) * (idx - 1) * ipow(u, idx - 2);
    }
    return 0.0;
}

// Value of the spatial factor at u = 0 and u = 1, exactly.
double spatial_at0(TestFunction::Spatial kind, int idx) {
    switch (kind) {
        case TestFunction::Spatial::Cos: return 1.0;
        case TestFunction::Spatial::Sin: return 0.0;
        case TestFunction::Spatial::Poly: return idx == 0 ? 1.0 : 0.0;
    }
    return 0.0;
}

double spatial_at1(TestFunction::Spatial kind, int idx) {
    switch (kind) {
        case TestFunction::Spatial::Cos: return idx % 2 == 0 ? 1.0 : -1.0;
        case TestFunction::Spatial::Sin: return 0.0;
        case TestFunction::Spatial::Poly: return 1.0;
    }
    return 0.0;
}

} // namespace

TestFunction TestFunction::constant(double c) {
    return TestFunction({Term{c, 0, Spatial::Poly, 0}});
}
TestFunction TestFunction::cosine(int k, double coeff, int time_power) {
    return TestFunction({Term{coeff, time_power, Spatial::Cos, k}});
}
TestFunction TestFunction::sine(int k, double coeff, int time_power) {
    return TestFunction({Term{coeff, time_power, Spatial::Sin, k}});
}
TestFunction TestFunction::poly(int q, double coeff, int time_power) {
    return TestFunction({Term{coeff, time_power, Spatial::Poly, q}});
}

TestFunction& TestFunction::operator+=(const TestFunction& other) {
    for (const Term& t : other.terms_) terms_.push_back(t);
    return *this;
}

double TestFunction::value(double t, double u) const {
    if (!in_support(u)) return 0.0;
    double r = 0.0;
    for (const Term& g : terms_)
        r += g.coeff * ipow(t, g.time_power) * spatial_value(g.kind, g.index, u);
    return r;
}

double TestFunction::dt(double t, double u) const {
    if (!in_support(u)) return 0.0;
    double r = 0.0;
    for (const Term& g : terms_) {
        if (g.time_power == 0) continue;
        r += g.coeff * g.time_power * ipow(t, g.time_power - 1) *
             spatial_value(g.kind, g.index, u);
    }
    return r;
}

double TestFunction::du(double t, double u) const {
    if (!in_support(u)) return 0.0;
    double r = 0.0;
    for (const Term& g : terms_)
        r += g.coeff * ipow(t, g.time_power) * spatial_du(g.kind, g.index, u);
    return r;
}

double TestFunction::laplacian(double t, double u) const {
    if (!in_support(u)) return 0.0;
    double r = 0.0;
    for (const Term& g : terms_)
        r += g.coeff * ipow(t, g.time_power) * spatial_lap(g.kind, g.index, u);
    return r;
}

bool TestFunction::vanishes_at_boundary() const {
    // Group by time power; each group's boundary value must cancel exactly.
    std::map<int, double> at0, at1, scale;
    for (const Term& g : terms_) {
        at0[g.time_power] += g.coeff * spatial_at0(g.kind, g.index);
        at1[g.time_power] += g.coeff * spatial_at1(g.kind, g.index);
        scale[g.time_power] += std::abs(g.coeff);
    }
    for (auto& [p, s] : scale) {
        double tol = 1e-12 * (s + 1.0);
        if (std::abs(at0[p]) > tol || std::abs(at1[p]) > tol) return false;
    }
    return true;
}

std::string TestFunction::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const Term& g : terms_) {
        if (!first) os << " + ";
        first = false;
        os << g.coeff;
        if (g.time_power > 0) os << "*t^" << g.time_power;
        switch (g.kind) {
            case Spatial::Cos: os << "*cos(" << g.index << "*pi*u)"; break;
            case Spatial::Sin: os << "*sin(" << g.index << "*pi*u)"; break;
            case Spatial::Poly:
                if (g.index > 0) os << "*u^" << g.index;
                break;
        }
    }
    if (first) os << "0";
    if (support_) os << " on [" << support_->first << "," << support_->second << "]";
    return os.str();
}

} // namespace pmm
