#include "pmm/profiles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "pmm/errors.hpp"

namespace pmm {

namespace {

std::vector<double> parse_args(const std::string& body, const std::string& spec) {
    std::vector<double> args;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            args.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ValidationError("profile '" + spec + "': bad numeric argument '" + tok + "'");
        }
    }
    return args;
}

void require_unit(double v, const std::string& spec) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("profile '" + spec + "' leaves [0,1]");
}

} // namespace

Profile make_profile(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
    std::vector<double> args = parse_args(body, spec);
    auto arity = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi)
            throw ValidationError("profile '" + spec + "': wrong number of arguments");
    };

    if (name == "constant") {
        arity(1, 1);
        require_unit(args[0], spec);
        double v = args[0];
        return [v](double) { return v; };
    }
    if (name == "step") {
        arity(2, 2);
        require_unit(args[0], spec);
        require_unit(args[1], spec);
        double a = args[0], b = args[1];
        return [a, b](double u) { return u < 0.5 ? a : b; };
    }
    if (name == "linear") {
        arity(2, 2);
        require_unit(args[0], spec);
        require_unit(args[1], spec);
        double a = args[0], b = args[1];
        return [a, b](double u) { return a + (b - a) * u; };
    }
    if (name == "cosine") {
        arity(2, 3);
        double c = args[0], amp = args[1];
        int k = args.size() == 3 ? static_cast<int>(args[2]) : 1;
        if (args.size() == 3 && (args[2] != k || k < 1))
            throw ValidationError("profile '" + spec + "': frequency must be a positive integer");
        require_unit(c - std::abs(amp), spec);
        require_unit(c + std::abs(amp), spec);
        return [c, amp, k](double u) { return c + amp * std::cos(k * std::numbers::pi * u); };
    }
    throw ValidationError("profile '" + spec + "': unknown profile kind '" + name + "'");
}

} // namespace pmm
