#pragma once

#include <functional>
#include <string>

namespace pmm {

// Initial density profile on [0,1], values in [0,1].
using Profile = std::function<double(double)>;

// Parses a profile description:
//   constant:v        g(u) = v
//   step:a,b          g(u) = a for u < 1/2, b otherwise
//   linear:a,b        g(u) = a + (b-a) u
//   cosine:c,A[,k]    g(u) = c + A cos(k pi u), k a positive integer (default 1)
// Throws ValidationError when the description is malformed or the profile
// leaves [0,1].
Profile make_profile(const std::string& spec);

} // namespace pmm
