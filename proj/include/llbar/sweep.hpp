#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "llbar/channels.hpp"
#include "llbar/measures.hpp"
#include "llbar/spinstate.hpp"

namespace llbar {

// BESIII central values: alpha = -0.32, delta_phi = -4.26 rad (wrapped into [-pi, pi]).
DecayParameters besiii_defaults();

struct SweepGrid {
    int phi_points = 181;
    double phi_min = 0.0;
    double phi_max = 3.14159265358979323846;
    int t_points = 201;
    double t_max = 10.0;
    std::vector<double> mu_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<double> tau_list{0.2, 5.0, 20.0};

    void validate() const;
    [[nodiscard]] std::vector<double> phi_values() const;
    [[nodiscard]] std::vector<double> t_values() const;
};

struct MeasureRecord {
    double phi = 0.0;
    double t = 0.0;
    double mu = 0.0;
    double tau = 0.0;
    MassMode mass_mode = MassMode::Massless;
    MeasureSet measures;
    std::optional<double> discord_closed;  // nullopt: closed form inapplicable
};

// Measures of one closed-form-evolved state; w = 1 skips the channel.
MeasureRecord evaluate_point(const DecayParameters& params, double phi, MassMode mode, double t = 0.0,
                             double mu = 0.0, double tau = 0.0, double w = 1.0);

// One record per grid phi at t = 0. threads = 0 picks hardware concurrency;
// output order is grid order regardless.
std::vector<MeasureRecord> sweep_angle(const DecayParameters& params, const SweepGrid& grid, MassMode mode,
                                       unsigned threads = 0);

struct DynamicsPlan {
    std::vector<double> taus{0.2};
    std::vector<double> mus{0.8};
    std::optional<double> fixed_phi;       // unset: sweep the grid's phi values
    double spot_check_fraction = 0.01;     // share of points re-checked by the discord oracle
    int oracle_grid = 64;
    std::uint64_t seed = tol::kDefaultSeed;
    unsigned threads = 0;
};

struct SpotCheckSummary {
    std::size_t checked = 0;
    double max_gap = 0.0;  // max |fast-path discord - oracle discord|
};

struct DynamicsResult {
    std::vector<MeasureRecord> records;  // ordered tau, mu, phi, t
    SpotCheckSummary spot_checks;
};

DynamicsResult sweep_dynamics(const DecayParameters& params, const SweepGrid& grid, const DynamicsPlan& plan,
                              MassMode mode);

struct HierarchyViolation {
    std::size_t index = 0;
    std::string relation;  // "bell<=steering", "steering<=concurrence", "concurrence=>discord"
    double excess = 0.0;
};

struct HierarchyReport {
    std::size_t points = 0;
    std::size_t bell_support = 0;
    std::size_t steering_support = 0;
    std::size_t concurrence_support = 0;
    std::size_t discord_support = 0;
    std::vector<HierarchyViolation> violations;
    double max_bell_steering_excess = 0.0;
    double max_steering_concurrence_excess = 0.0;

    [[nodiscard]] bool holds() const { return violations.empty(); }
};

inline constexpr double kHierarchyTolerance = 1e-9;

HierarchyReport hierarchy_report(const std::vector<MeasureRecord>& records);

// Seeded random X-state: Dirichlet diagonal, coherences inside the PSD region with random phases.
DensityMatrix random_x_state(std::mt19937_64& rng);

struct ValidationOptions {
    std::uint64_t seed = tol::kDefaultSeed;
    int random_states = 200;
    int oracle_phi_points = 37;  // model states used for the oracle comparisons
    int discord_grid = 64;
};

// Hard limits on the equivalence checks.
inline constexpr double kKrausLimit = 1e-12;
inline constexpr double kChshLimit = 1e-5;
inline constexpr double kWoottersLimit = 1e-10;
inline constexpr double kSteeringSlack = 1e-9;
inline constexpr double kSteeringReach = 1e-3;
inline constexpr double kDiscordLimit = 5e-3;

struct ValidationReport {
    nlohmann::ordered_json json;
    bool passed = false;
};

ValidationReport validation_report(const DecayParameters& params, const ValidationOptions& options = {});

// CSV with the fixed column set; floating point as %.12g.
inline constexpr const char* kCsvHeader =
    "phi,t,mu,tau,mass_mode,bell_raw,bell_norm,steering_raw,steering_norm,concurrence,discord,purity,"
    "discord_closed,discord_closed_applicable";

void write_csv(std::ostream& out, const std::vector<MeasureRecord>& records);
nlohmann::ordered_json records_to_json(const std::vector<MeasureRecord>& records);
std::string format_number(double v);

}  // namespace llbar
