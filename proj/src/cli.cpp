#include "llbar/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "CLI11.hpp"
#include "json.hpp"

#include "llbar/errors.hpp"
#include "llbar/sweep.hpp"

namespace llbar::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options parsed from flags, with the JSON key each one answers to in --config.
class ConfigParser {
public:
    ConfigParser(std::string name, std::string description) : app_(std::move(description), std::move(name)) {
        app_.set_help_flag("-h,--help", "Print this help and exit");
        app_.add_option("--config", config_path_, "JSON file with any of the options below (flags win)");
    }

    template <typename T>
    void bind(const std::string& flag, const std::string& key, T& target, const std::string& help) {
        CLI::Option* opt = app_.add_option(flag, target, help);
        if constexpr (std::is_same_v<T, std::vector<double>>) opt->delimiter(',')->expected(1, -1);
        setters_[key] = {opt, [&target](const json& j) {
                             if constexpr (std::is_same_v<T, std::vector<double>>) {
                                 target = j.is_array() ? j.get<std::vector<double>>() : std::vector<double>{j.get<double>()};
                             } else if constexpr (std::is_same_v<T, std::optional<double>>) {
                                 target = j.get<typename T::value_type>();
                             } else {
                                 target = j.get<T>();
                             }
                         }};
    }

    void bind_flag(const std::string& flag, const std::string& key, bool& target, const std::string& help) {
        CLI::Option* opt = app_.add_flag(flag, target, help);
        setters_[key] = {opt, [&target](const json& j) { target = j.get<bool>(); }};
    }

    // Returns false when help was printed.
    bool parse(const std::vector<std::string>& args, std::ostream& out) {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app_.parse(reversed);
        } catch (const CLI::CallForHelp&) {
            out << app_.help();
            return false;
        } catch (const CLI::ParseError& e) {
            throw UsageError(e.what());
        }
        if (!config_path_.empty()) apply_config();
        return true;
    }

private:
    struct Setter {
        CLI::Option* option;
        std::function<void(const json&)> apply;
    };

    void apply_config() {
        std::ifstream in(config_path_);
        if (!in) throw UsageError("cannot read config file " + config_path_);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError("config file " + config_path_ + ": " + e.what());
        }
        if (!doc.is_object()) throw UsageError("config file " + config_path_ + " must hold a JSON object");
        for (const auto& [key, value] : doc.items()) {
            const auto it = setters_.find(key);
            if (it == setters_.end()) throw UsageError("config file: unknown key '" + key + "'");
            if (it->second.option->count() > 0) continue;
            try {
                it->second.apply(value);
            } catch (const json::exception& e) {
                throw UsageError("config file: key '" + key + "': " + e.what());
            }
        }
    }

    CLI::App app_;
    std::string config_path_;
    std::map<std::string, Setter> setters_;
};

std::uint64_t env_seed() {
    const char* text = std::getenv(kSeedEnv);
    if (text == nullptr || *text == '\0') return tol::kDefaultSeed;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used, 0);
        if (used != std::string(text).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(kSeedEnv) + " must be an unsigned integer (got '" + text + "')");
    }
}

void add_parameter_options(ConfigParser& p, RunConfig& c) {
    p.bind("--alpha", "alpha", c.alpha, "Decay asymmetry alpha_psi, in [-1, 1]");
    p.bind("--delta-phi", "delta_phi", c.delta_phi, "Relative form-factor phase in radians (wrapped into [-pi, pi])");
    p.bind("--beta", "beta", c.beta, "Explicit beta_psi (requires --gamma)");
    p.bind("--gamma", "gamma", c.gamma, "Explicit gamma_psi (requires --beta)");
}

void add_sweep_options(ConfigParser& p, RunConfig& c) {
    add_parameter_options(p, c);
    p.bind("--phi-points", "phi_points", c.phi_points, "Number of scattering angles on [0, pi]");
    p.bind_flag("--mass-corrected", "mass_corrected", c.mass_corrected, "Use the mass-corrected spin state");
    p.bind("--out", "out", c.out, "Output file (default: stdout)");
    p.bind("--format", "format", c.format, "Output format: csv or json");
}

DecayParameters resolve_parameters(const RunConfig& c) {
    DecayParameters p = derive_form_params(c.alpha, wrap_phase(c.delta_phi));
    if (c.beta.has_value() != c.gamma.has_value())
        throw ArgumentError("beta and gamma must be given together");
    if (c.beta) {
        const double norm = c.alpha * c.alpha + *c.beta * *c.beta + *c.gamma * *c.gamma;
        if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-6)
            throw ArgumentError("alpha^2 + beta^2 + gamma^2 must equal 1 (got " + std::to_string(norm) + ")");
        p.beta_psi = *c.beta;
        p.gamma_psi = *c.gamma;
    }
    return p;
}

void check_format(const RunConfig& c) {
    if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json (got " + c.format + ")");
}

SweepGrid make_grid(const RunConfig& c) {
    SweepGrid g;
    g.phi_points = c.phi_points;
    g.t_points = c.t_points;
    g.t_max = c.t_max;
    g.validate();
    return g;
}

// Writes to --out when given, else to out.
void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (c.out.empty()) {
        body(out);
        return;
    }
    std::ostringstream buffer;
    body(buffer);
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw ArgumentError("cannot open output file " + c.out);
    file << buffer.str();
    if (!file) throw ArgumentError("failed writing output file " + c.out);
}

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace

int cmd_angle_sweep(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig c;
        c.seed = env_seed();
        ConfigParser p("llbar angle-sweep", "Measures as functions of the scattering angle at t = 0");
        add_sweep_options(p, c);
        if (!p.parse(args, out)) return kExitOk;
        check_format(c);
        const DecayParameters params = resolve_parameters(c);
        const auto mode = c.mass_corrected ? MassMode::MassCorrected : MassMode::Massless;
        const auto records = sweep_angle(params, make_grid(c), mode);
        emit(c, out, [&](std::ostream& os) {
            if (c.format == "csv") {
                write_csv(os, records);
            } else {
                nlohmann::ordered_json doc;
                doc["records"] = records_to_json(records);
                os << doc.dump(1) << '\n';
            }
        });
        return kExitOk;
    });
}

int cmd_dynamics(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig c;
        c.seed = env_seed();
        ConfigParser p("llbar dynamics", "Measures under the correlated dephasing channel");
        add_sweep_options(p, c);
        p.bind("--tau", "tau", c.tau, "Environment correlation times (comma-separated list)");
        p.bind("--mu", "mu", c.mu, "Channel memory parameters in [0, 1] (comma-separated list)");
        p.bind("--phi", "phi", c.phi, "Fixed scattering angle in radians (default: sweep the phi grid)");
        p.bind("--t-max", "t_max", c.t_max, "Final time");
        p.bind("--t-points", "t_points", c.t_points, "Number of time points on [0, t-max]");
        p.bind("--seed", "seed", c.seed, "Seed for the discord spot checks (default: $LLBAR_SEED or 0xBE5111)");
        if (!p.parse(args, out)) return kExitOk;
        check_format(c);
        const DecayParameters params = resolve_parameters(c);
        const auto mode = c.mass_corrected ? MassMode::MassCorrected : MassMode::Massless;
        DynamicsPlan plan;
        plan.taus = c.tau;
        plan.mus = c.mu;
        plan.fixed_phi = c.phi;
        plan.seed = c.seed;
        const auto result = sweep_dynamics(params, make_grid(c), plan, mode);
        emit(c, out, [&](std::ostream& os) {
            if (c.format == "csv") {
                write_csv(os, result.records);
            } else {
                nlohmann::ordered_json doc;
                doc["records"] = records_to_json(result.records);
                doc["spot_checks"] = {{"checked", result.spot_checks.checked},
                                      {"max_gap", result.spot_checks.max_gap}};
                os << doc.dump(1) << '\n';
            }
        });
        if (c.format == "csv")
            err << "discord spot checks: " << result.spot_checks.checked
                << " points, max gap " << format_number(result.spot_checks.max_gap) << '\n';
        return kExitOk;
    });
}

int cmd_validate(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        RunConfig c;
        c.seed = env_seed();
        ConfigParser p("llbar validate", "Closed forms against brute-force oracles; JSON report");
        add_parameter_options(p, c);
        p.bind("--out", "out", c.out, "Output file (default: stdout)");
        p.bind("--seed", "seed", c.seed, "Seed for the random states and oracles (default: $LLBAR_SEED or 0xBE5111)");
        p.bind("--random-states", "random_states", c.random_states, "Number of random X-states (>= 1)");
        if (!p.parse(args, out)) return kExitOk;
        if (c.random_states < 1) throw ArgumentError("random_states must be >= 1");
        ValidationOptions options;
        options.seed = c.seed;
        options.random_states = c.random_states;
        const auto report = validation_report(resolve_parameters(c), options);
        emit(c, out, [&](std::ostream& os) { os << report.json.dump(2) << '\n'; });
        if (!report.passed) {
            err << "validation failed: a hard equivalence check exceeded its limit\n";
            return kExitCheckFailed;
        }
        return kExitOk;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    static const char* usage =
        "usage: llbar <command> [options]\n"
        "\n"
        "commands:\n"
        "  angle-sweep   measures versus scattering angle\n"
        "  dynamics      measures versus time under correlated dephasing\n"
        "  validate      oracle and channel equivalence report (JSON)\n"
        "\n"
        "Run 'llbar <command> --help' for the options of each command.\n";
    if (argc < 2) {
        err << usage;
        return kExitUsage;
    }
    const std::string command = argv[1];
    std::vector<std::string> rest(argv + 2, argv + argc);
    if (command == "angle-sweep") return cmd_angle_sweep(rest, out, err);
    if (command == "dynamics") return cmd_dynamics(rest, out, err);
    if (command == "validate") return cmd_validate(rest, out, err);
    if (command == "-h" || command == "--help") {
        out << usage;
        return kExitOk;
    }
    err << "unknown command '" << command << "'\n" << usage;
    return kExitUsage;
}

}  // namespace llbar::cli
