#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace llbar::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitCheckFailed = 4;

inline constexpr const char* kSeedEnv = "LLBAR_SEED";

struct RunConfig {
    double alpha = -0.32;
    double delta_phi = -4.26;  // radians; wrapped into [-pi, pi]
    std::optional<double> beta;  // explicit beta and gamma replace the derived pair
    std::optional<double> gamma;
    int phi_points = 181;
    bool mass_corrected = false;
    std::string out;  // empty: stdout
    std::string format = "csv";
    std::vector<double> tau{0.2};
    std::vector<double> mu{0.8};
    std::optional<double> phi;
    double t_max = 10.0;
    int t_points = 201;
    std::uint64_t seed = 0;
    int random_states = 200;
};

// Each command takes the arguments after the subcommand name and returns the
// process exit code. Diagnostics go to err; data goes to out unless --out is set.
int cmd_angle_sweep(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_dynamics(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_validate(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// argv[1] selects the subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace llbar::cli
