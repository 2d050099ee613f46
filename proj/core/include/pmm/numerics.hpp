#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace pmm {

// Integer power by repeated multiplication; the solver calls this in its
// inner loop where std::pow would dominate the profile.
inline double ipow(double x, int p) {
    double r = 1.0;
    double b = x;
    for (int e = p; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// Neumaier compensated accumulator.  Keeps long running sums (flux time
// integrals, ensemble reductions) accurate to a few ulp of the result,
// independent of the number of terms.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }
    void reset() {
        sum_ = 0.0;
        comp_ = 0.0;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& xs) {
    KahanSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

// Trapezoid weights for a uniform grid of s+1 points over [0, len].
inline double trapezoid_weight(int j, int s, double len) {
    double h = len / s;
    return (j == 0 || j == s) ? 0.5 * h : h;
}

} // namespace pmm
