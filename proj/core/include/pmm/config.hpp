#pragma once

#include "pmm/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pmm {

// One flat bag of knobs covering every command.  Fields irrelevant to a given
// command are ignored by it but still echoed to the manifest, so a config file
// is a complete record of a run.
struct RunConfig {
    std::string command = "solve"; // simulate | solve | energy | sweep | hydro | oracle | slowbond

    ModelParams model{};

    // finite-volume solver
    int cells = 200;
    double cfl = 0.4;
    int stored_steps = 0; // 0 -> automatic (min(total steps, 512))
    std::string bc = "robin"; // robin | neumann | dirichlet | periodic_slow_bond

    // particle ensembles
    int trajectories = 200;
    std::uint64_t master_seed = 20250817;
    std::vector<double> sample_times = {0.02, 0.06, 0.1};
    int comparison_cells = 25;
    std::string topology = "interval"; // interval | torus

    // sweeps
    std::vector<double> kappa_grid = {1.0, 0.3, 0.1, 0.03, 0.01};
    std::vector<int> n_grid = {50, 100, 200};

    // energy functional
    double c = 0.0; // 0 -> default m + m^2 + 1
    int dict_max_freq = 8;
    int dict_time_powers = 2;

    // io
    std::string g = "linear:0.2,0.8"; // initial profile spec
    std::string out_dir = "out";

    bool operator==(const RunConfig&) const = default;
};

// Result of command-line parsing.  `config` is empty when the invocation was
// already fully handled (help/version or a parse error); `exit_code` then
// carries the process status.
struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = 0;
};

// Parses flags and an optional `--config <file>` of flat key=value lines.
// Flag values override file values; PMM_SEED overrides master_seed unless a
// flag gives it explicitly.  Unknown keys anywhere are a hard error.
ParseOutcome parse_command_line(const std::vector<std::string>& args);

// Canonical key=value text that parse_command_line(--config ...) maps back to
// the same RunConfig.
std::string serialize_config(const RunConfig& cfg);

// Validates cross-field constraints shared by every command (grids nonempty,
// counts positive, names known).  Throws ValidationError naming the field.
void validate_config(const RunConfig& cfg);

} // namespace pmm
