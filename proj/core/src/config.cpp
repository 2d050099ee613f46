#include "pmm/config.hpp"

#include "pmm/csv.hpp"
#include "pmm/errors.hpp"
#include "pmm/manifest.hpp"
#include "pmm/profiles.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace pmm {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) parts.push_back(item);
    return parts;
}

double parse_one_double(const std::string& tok, const std::string& key) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ValidationError(key + ": cannot parse '" + tok + "' as a number");
    }
    if (used != tok.size())
        throw ValidationError(key + ": trailing junk in '" + tok + "'");
    return v;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
    auto parts = split_commas(text);
    if (parts.empty()) throw ValidationError(key + ": empty list");
    std::vector<double> out;
    out.reserve(parts.size());
    for (const auto& p : parts) out.push_back(parse_one_double(p, key));
    return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
    auto parts = split_commas(text);
    if (parts.empty()) throw ValidationError(key + ": empty list");
    std::vector<int> out;
    out.reserve(parts.size());
    for (const auto& p : parts) {
        double v = parse_one_double(p, key);
        int k = static_cast<int>(v);
        if (static_cast<double>(k) != v)
            throw ValidationError(key + ": '" + p + "' is not an integer");
        out.push_back(k);
    }
    return out;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += fmt17(v[i]);
    }
    return s;
}

// Shortest round-trip form, for --help default display; parses back to the
// identical doubles.
std::string join_doubles_display(const std::vector<double>& v) {
    std::string s;
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v[i]);
        (void)ec;
        s.append(buf, p);
    }
    return s;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

bool one_of(const std::string& v, std::initializer_list<const char*> set) {
    for (const char* s : set)
        if (v == s) return true;
    return false;
}

} // namespace

void validate_config(const RunConfig& cfg) {
    if (!one_of(cfg.command, {"simulate", "solve", "energy", "sweep", "hydro", "oracle", "slowbond"}))
        throw ValidationError("command: unknown command '" + cfg.command + "'");
    cfg.model.validate();
    if (cfg.cells < 4) throw ValidationError("cells: must be >= 4");
    if (!(cfg.cfl > 0.0)) throw ValidationError("cfl: must be positive");
    if (cfg.stored_steps < 0) throw ValidationError("stored_steps: must be >= 0");
    if (!one_of(cfg.bc, {"robin", "neumann", "dirichlet", "periodic_slow_bond"}))
        throw ValidationError("bc: unknown boundary kind '" + cfg.bc + "'");
    if (cfg.trajectories < 1) throw ValidationError("trajectories: must be >= 1");
    if (cfg.sample_times.empty()) throw ValidationError("sample_times: empty list");
    for (double t : cfg.sample_times)
        if (!(t > 0.0)) throw ValidationError("sample_times: entries must be positive");
    if (cfg.comparison_cells < 1) throw ValidationError("comparison_cells: must be >= 1");
    if (!one_of(cfg.topology, {"interval", "torus"}))
        throw ValidationError("topology: unknown topology '" + cfg.topology + "'");
    if (cfg.kappa_grid.empty()) throw ValidationError("kappa_grid: empty list");
    for (double k : cfg.kappa_grid)
        if (!(k > 0.0)) throw ValidationError("kappa_grid: entries must be positive");
    if (cfg.n_grid.empty()) throw ValidationError("n_grid: empty list");
    for (int n : cfg.n_grid)
        if (n < 3) throw ValidationError("n_grid: entries must be >= 3");
    if (cfg.c < 0.0) throw ValidationError("c: must be >= 0 (0 selects the default)");
    if (cfg.dict_max_freq < 1) throw ValidationError("dict_max_freq: must be >= 1");
    if (cfg.dict_time_powers < 1) throw ValidationError("dict_time_powers: must be >= 1");
    make_profile(cfg.g); // throws ValidationError on a malformed spec
    if (cfg.out_dir.empty()) throw ValidationError("out_dir: must not be empty");
}

ParseOutcome parse_command_line(const std::vector<std::string>& args) {
    RunConfig cfg;
    std::string sample_times = join_doubles_display(cfg.sample_times);
    std::string kappa_grid = join_doubles_display(cfg.kappa_grid);
    std::string n_grid = join_ints(cfg.n_grid);

    CLI::App app{"porous medium lattice gas laboratory"};
    app.set_version_flag("--version", version_string());
    app.set_config("--config", "", "flat key=value config file; flags override file values");
    app.allow_config_extras(CLI::config_extras_mode::error);

    app.add_option("command,--command", cfg.command,
                   "one of: simulate solve energy sweep hydro oracle slowbond")
        ->capture_default_str();
    app.add_option("--m", cfg.model.m, "degree of the porous medium nonlinearity")
        ->capture_default_str();
    app.add_option("--n", cfg.model.n, "lattice size for particle runs")->capture_default_str();
    app.add_option("--kappa", cfg.model.kappa, "reservoir/slow-bond strength")
        ->capture_default_str();
    app.add_option("--theta", cfg.model.theta, "boundary slowdown exponent")
        ->capture_default_str();
    app.add_option("--a", cfg.model.a, "strength exponent of the added stirring dynamics (1 < a < 2)")
        ->capture_default_str();
    app.add_option("--alpha", cfg.model.alpha, "left reservoir density, in (0,1)")
        ->capture_default_str();
    app.add_option("--beta", cfg.model.beta, "right reservoir density, in (0,1)")
        ->capture_default_str();
    app.add_option("--T", cfg.model.T, "time horizon")->capture_default_str();
    app.add_option("--cells", cfg.cells, "finite-volume cells")->capture_default_str();
    app.add_option("--cfl", cfg.cfl, "fraction of the explicit stability bound")
        ->capture_default_str();
    app.add_option("--stored_steps", cfg.stored_steps, "stored time rows (0 = automatic)")
        ->capture_default_str();
    app.add_option("--bc", cfg.bc, "robin | neumann | dirichlet | periodic_slow_bond")
        ->capture_default_str();
    app.add_option("--trajectories", cfg.trajectories, "Monte Carlo trajectories")
        ->capture_default_str();
    app.add_option("--master_seed", cfg.master_seed,
                   "seed from which all per-trajectory streams derive")
        ->envname("PMM_SEED")
        ->capture_default_str();
    app.add_option("--sample_times", sample_times, "comma-separated observation times")
        ->capture_default_str();
    app.add_option("--comparison_cells", cfg.comparison_cells,
                   "coarse cells for particle/PDE comparison")
        ->capture_default_str();
    app.add_option("--topology", cfg.topology, "interval | torus")->capture_default_str();
    app.add_option("--kappa_grid", kappa_grid, "comma-separated kappa values for sweeps")
        ->capture_default_str();
    app.add_option("--n_grid", n_grid, "comma-separated lattice sizes for hydro runs")
        ->capture_default_str();
    app.add_option("--c", cfg.c, "energy-functional penalty constant (0 = m + m^2 + 1)")
        ->capture_default_str();
    app.add_option("--dict_max_freq", cfg.dict_max_freq, "largest trigonometric frequency in the test dictionary")
        ->capture_default_str();
    app.add_option("--dict_time_powers", cfg.dict_time_powers, "time powers in the test dictionary")
        ->capture_default_str();
    app.add_option("--g", cfg.g,
                   "initial profile spec: constant:v | step:a,b | linear:a,b | cosine:c,A[,k]")
        ->capture_default_str();
    app.add_option("--out_dir", cfg.out_dir, "artifact directory")->capture_default_str();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("pmm");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return {std::nullopt, 0};
    } catch (const CLI::CallForVersion&) {
        std::cout << version_string() << "\n";
        return {std::nullopt, 0};
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return {std::nullopt, 1};
    }

    cfg.sample_times = parse_double_list(sample_times, "sample_times");
    cfg.kappa_grid = parse_double_list(kappa_grid, "kappa_grid");
    cfg.n_grid = parse_int_list(n_grid, "n_grid");
    validate_config(cfg);
    return {cfg, 0};
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    auto str = [&](const char* key, const std::string& v) {
        out << key << "=\"" << v << "\"\n";
    };
    auto num = [&](const char* key, double v) { out << key << '=' << fmt17(v) << "\n"; };
    auto integer = [&](const char* key, long long v) { out << key << '=' << v << "\n"; };

    str("command", cfg.command);
    integer("m", cfg.model.m);
    integer("n", cfg.model.n);
    num("kappa", cfg.model.kappa);
    num("theta", cfg.model.theta);
    num("a", cfg.model.a);
    num("alpha", cfg.model.alpha);
    num("beta", cfg.model.beta);
    num("T", cfg.model.T);
    integer("cells", cfg.cells);
    num("cfl", cfg.cfl);
    integer("stored_steps", cfg.stored_steps);
    str("bc", cfg.bc);
    integer("trajectories", cfg.trajectories);
    out << "master_seed=" << cfg.master_seed << "\n";
    str("sample_times", join_doubles(cfg.sample_times));
    integer("comparison_cells", cfg.comparison_cells);
    str("topology", cfg.topology);
    str("kappa_grid", join_doubles(cfg.kappa_grid));
    str("n_grid", join_ints(cfg.n_grid));
    num("c", cfg.c);
    integer("dict_max_freq", cfg.dict_max_freq);
    integer("dict_time_powers", cfg.dict_time_powers);
    str("g", cfg.g);
    str("out_dir", cfg.out_dir);
    return out.str();
}

} // namespace pmm
