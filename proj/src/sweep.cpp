#include "llbar/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numbers>
#include <ostream>
#include <thread>

#include "llbar/errors.hpp"
#include "llbar/oracles.hpp"

namespace llbar {

namespace {

constexpr double kPi = std::numbers::pi;

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results are written by
// index, so output order never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += threads) fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

MeasureRecord measure_state(const DensityMatrix& rho, double phi, MassMode mode, double t, double mu, double tau) {
    MeasureRecord rec;
    rec.phi = phi;
    rec.t = t;
    rec.mu = mu;
    rec.tau = tau;
    rec.mass_mode = mode;
    rec.measures = evaluate_measures(rho);
    rec.discord_closed = discord_closed(xstate_from_density(rho));
    return rec;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 step
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

DecayParameters besiii_defaults() { return derive_form_params(-0.32, wrap_phase(-4.26)); }

void SweepGrid::validate() const {
    if (phi_points < 2) throw ArgumentError("phi grid needs at least 2 points");
    if (t_points < 2) throw ArgumentError("t grid needs at least 2 points");
    if (!(phi_min >= 0.0 && phi_max <= kPi + 1e-12 && phi_min < phi_max))
        throw ArgumentError("phi range must be ordered and inside [0, pi]");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ArgumentError("t_max must be positive");
    for (double mu : mu_list)
        if (!(mu >= 0.0 && mu <= 1.0)) throw ArgumentError("mu values must lie in [0, 1]");
    for (double tau : tau_list)
        if (!(tau > 0.0) || !std::isfinite(tau)) throw ArgumentError("tau values must be positive");
}

std::vector<double> SweepGrid::phi_values() const {
    auto v = linspace(phi_min, phi_max, phi_points);
    v.back() = std::min(v.back(), kPi);
    return v;
}

std::vector<double> SweepGrid::t_values() const { return linspace(0.0, t_max, t_points); }

MeasureRecord evaluate_point(const DecayParameters& params, double phi, MassMode mode, double t, double mu,
                             double tau, double w) {
    const DensityMatrix initial = build_state(params, phi, mode);
    if (w == 1.0) return measure_state(initial, phi, mode, t, mu, tau);
    return measure_state(evolve_closed_form(initial, w), phi, mode, t, mu, tau);
}

std::vector<MeasureRecord> sweep_angle(const DecayParameters& params, const SweepGrid& grid, MassMode mode,
                                       unsigned threads) {
    grid.validate();
    const auto phis = grid.phi_values();
    std::vector<MeasureRecord> records(phis.size());
    parallel_for(phis.size(), threads, [&](std::size_t i) { records[i] = evaluate_point(params, phis[i], mode); });
    return records;
}

DynamicsResult sweep_dynamics(const DecayParameters& params, const SweepGrid& grid, const DynamicsPlan& plan,
                              MassMode mode) {
    grid.validate();
    if (plan.taus.empty() || plan.mus.empty()) throw ArgumentError("dynamics needs at least one tau and one mu");
    for (double tau : plan.taus) ChannelConfig{tau, 0.0}.validate();
    for (double mu : plan.mus) ChannelConfig{1.0, mu}.validate();
    if (!(plan.spot_check_fraction >= 0.0 && plan.spot_check_fraction <= 1.0))
        throw ArgumentError("spot-check fraction must lie in [0, 1]");

    std::vector<double> phis = plan.fixed_phi ? std::vector<double>{*plan.fixed_phi} : grid.phi_values();
    const auto ts = grid.t_values();

    std::vector<DensityMatrix> initial;
    initial.reserve(phis.size());
    for (double phi : phis) initial.push_back(build_state(params, phi, mode));

    const std::size_t per_mu = phis.size() * ts.size();
    const std::size_t per_tau = plan.mus.size() * per_mu;
    const std::size_t total = plan.taus.size() * per_tau;

    std::vector<MeasureRecord> records(total);
    parallel_for(total, plan.threads, [&](std::size_t idx) {
        const std::size_t it = idx / per_tau;
        const std::size_t im = (idx % per_tau) / per_mu;
        const std::size_t ip = (idx % per_mu) / ts.size();
        const std::size_t itime = idx % ts.size();
        const ChannelConfig config{plan.taus[it], plan.mus[im]};
        const auto factors = decoherence_factors(config, ts[itime]);
        records[idx] = measure_state(evolve_closed_form(initial[ip], factors.w), phis[ip], mode, ts[itime],
                                     config.mu, config.tau);
    });

    std::vector<std::size_t> checks;
    std::mt19937_64 rng(plan.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < total; ++i)
        if (u(rng) < plan.spot_check_fraction) checks.push_back(i);

    std::vector<double> gaps(checks.size());
    parallel_for(checks.size(), plan.threads, [&](std::size_t k) {
        const MeasureRecord& rec = records[checks[k]];
        const std::size_t ip = (checks[k] % per_mu) / ts.size();
        const double w = decoherence_factors({rec.tau, rec.mu}, rec.t).w;
        const DensityMatrix rho = evolve_closed_form(initial[ip], w);
        gaps[k] = std::abs(oracles::discord_bruteforce(rho, plan.oracle_grid) - rec.measures.discord);
    });

    DynamicsResult result;
    result.records = std::move(records);
    result.spot_checks.checked = checks.size();
    for (double g : gaps) result.spot_checks.max_gap = std::max(result.spot_checks.max_gap, g);
    return result;
}

HierarchyReport hierarchy_report(const std::vector<MeasureRecord>& records) {
    if (records.empty()) throw ArgumentError("hierarchy_report: no records");
    HierarchyReport rep;
    rep.points = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const MeasureSet& m = records[i].measures;
        if (m.bell_norm > kHierarchyTolerance) ++rep.bell_support;
        if (m.steering_norm > kHierarchyTolerance) ++rep.steering_support;
        if (m.concurrence > kHierarchyTolerance) ++rep.concurrence_support;
        if (m.discord > kHierarchyTolerance) ++rep.discord_support;

        const double bs = m.bell_norm - m.steering_norm;
        const double sc = m.steering_norm - m.concurrence;
        rep.max_bell_steering_excess = std::max(rep.max_bell_steering_excess, bs);
        rep.max_steering_concurrence_excess = std::max(rep.max_steering_concurrence_excess, sc);
        if (bs > kHierarchyTolerance) rep.violations.push_back({i, "bell<=steering", bs});
        if (sc > kHierarchyTolerance) rep.violations.push_back({i, "steering<=concurrence", sc});
        if (m.concurrence > kHierarchyTolerance && m.discord <= kHierarchyTolerance)
            rep.violations.push_back({i, "concurrence=>discord", m.concurrence});
    }
    return rep;
}

DensityMatrix random_x_state(std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<double, 4> d{};
    double sum = 0.0;
    for (auto& x : d) sum += (x = expo(rng));
    for (auto& x : d) x /= sum;
    const double outer = unit(rng) * std::sqrt(d[0] * d[3]);
    const double inner = unit(rng) * std::sqrt(d[1] * d[2]);
    const double phase_outer = 2.0 * kPi * unit(rng);
    const double phase_inner = 2.0 * kPi * unit(rng);
    ComplexMatrix rho(4, 4);
    for (std::size_t i = 0; i < 4; ++i) rho(i, i) = d[i];
    rho(0, 3) = std::polar(outer, phase_outer);
    rho(3, 0) = std::conj(rho(0, 3));
    rho(1, 2) = std::polar(inner, phase_inner);
    rho(2, 1) = std::conj(rho(1, 2));
    return DensityMatrix::from_matrix(std::move(rho));
}

ValidationReport validation_report(const DecayParameters& params, const ValidationOptions& options) {
    using nlohmann::ordered_json;
    ordered_json report;
    report["seed"] = options.seed;
    report["parameters"] = {{"alpha_psi", params.alpha_psi},
                            {"delta_phi", params.delta_phi},
                            {"beta_psi", params.beta_psi},
                            {"gamma_psi", params.gamma_psi}};

    const MassMode modes[] = {MassMode::Massless, MassMode::MassCorrected};

    // Kraus map vs closed-form coherence factor.
    double kraus_err = 0.0;
    double weight_err = 0.0;
    {
        const auto ts = linspace(0.0, 10.0, 10);
        const auto mus = linspace(0.0, 1.0, 10);
        std::vector<double> taus(10);
        for (int k = 0; k < 10; ++k) taus[static_cast<std::size_t>(k)] = 0.05 * std::pow(400.0, k / 9.0);
        std::vector<DensityMatrix> states;
        for (MassMode mode : modes)
            for (double phi : {kPi / 6.0, kPi / 3.0, kPi / 2.0}) states.push_back(build_state(params, phi, mode));
        for (double tau : taus)
            for (double mu : mus)
                for (double t : ts) {
                    const auto f = decoherence_factors({tau, mu}, t);
                    const auto w = correlated_weights({1.0 - f.p, 0.0, 0.0, f.p}, mu);
                    double total = 0.0;
                    for (const auto& row : w)
                        for (double x : row) total += x;
                    weight_err = std::max(weight_err, std::abs(total - 1.0));
                    for (const auto& rho : states)
                        kraus_err = std::max(kraus_err, max_abs_diff(kraus_map_correlated(rho, f.p, mu).matrix(),
                                                                     evolve_closed_form(rho, f.w).matrix()));
                }
    }
    report["kraus_equiv_max_err"] = kraus_err;
    report["kraus_weight_sum_max_err"] = weight_err;

    // States for the oracle comparisons: model angle sweep plus seeded random X-states.
    std::vector<DensityMatrix> model_states;
    SweepGrid coarse;
    coarse.phi_points = options.oracle_phi_points;
    const auto coarse_phis = coarse.phi_values();
    for (MassMode mode : modes)
        for (double phi : coarse_phis) model_states.push_back(build_state(params, phi, mode));
    std::vector<DensityMatrix> all_states = model_states;
    std::mt19937_64 rng(options.seed);
    for (int k = 0; k < options.random_states; ++k) all_states.push_back(random_x_state(rng));

    std::vector<double> chsh_gap(all_states.size()), wootters_gap(all_states.size()), xbell_gap(all_states.size());
    std::vector<double> steer_excess(all_states.size()), steer_shortfall(all_states.size());
    parallel_for(all_states.size(), 0, [&](std::size_t i) {
        const auto& rho = all_states[i];
        const double horodecki = bell_chsh(rho).raw;
        chsh_gap[i] = std::abs(horodecki - oracles::chsh_bruteforce(rho, 16, derived_seed(options.seed, i)));
        xbell_gap[i] = std::abs(horodecki - bell_chsh_xstate(rho));
        wootters_gap[i] = std::abs(concurrence_wootters(rho) - concurrence_xstate(rho));
        const double f3 = steering_F3(rho).raw;
        const double brute = oracles::steering_bruteforce(rho, 2000, derived_seed(options.seed ^ 0x5EED, i));
        steer_excess[i] = brute - f3;
        steer_shortfall[i] = f3 - brute;
    });
    const auto max_of = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
    report["chsh_oracle_max_gap"] = max_of(chsh_gap);
    report["chsh_xstate_max_gap"] = max_of(xbell_gap);
    report["wootters_xstate_max_gap"] = max_of(wootters_gap);
    report["steering_oracle_max_excess"] = max_of(steer_excess);
    report["steering_oracle_max_shortfall"] = max_of(steer_shortfall);
    report["oracle_state_count"] = {{"model", model_states.size()}, {"random", options.random_states}};

    // Discord: every convention against the brute-force reference on the model states.
    const DiscordConvention conventions[] = {
        {CoherenceRadicand::Squared, ConditionalTerm::Standard},
        {CoherenceRadicand::Linear, ConditionalTerm::Standard},
        {CoherenceRadicand::Squared, ConditionalTerm::Omitted},
        {CoherenceRadicand::Linear, ConditionalTerm::Omitted},
    };
    std::vector<double> oracle_discord(model_states.size());
    parallel_for(model_states.size(), 0, [&](std::size_t i) {
        oracle_discord[i] = oracles::discord_bruteforce(model_states[i], options.discord_grid);
    });
    ordered_json points = ordered_json::array();
    std::array<double, 4> conv_gap{};
    for (std::size_t i = 0; i < model_states.size(); ++i) {
        const auto x = xstate_from_density(model_states[i]);
        ordered_json p;
        p["phi"] = coarse_phis[i % coarse_phis.size()];
        p["mass_mode"] = to_string(modes[i / coarse_phis.size()]);
        p["oracle"] = oracle_discord[i];
        for (std::size_t c = 0; c < 4; ++c) {
            const double value = discord(x, conventions[c]);
            conv_gap[c] = std::max(conv_gap[c], std::abs(value - oracle_discord[i]));
            p[std::string(to_string(conventions[c].radicand)) + "_" + std::string(to_string(conventions[c].term))] =
                value;
        }
        points.push_back(std::move(p));
    }
    const std::size_t winner =
        static_cast<std::size_t>(std::min_element(conv_gap.begin(), conv_gap.end()) - conv_gap.begin());
    ordered_json conv = ordered_json::object();
    for (std::size_t c = 0; c < 4; ++c)
        conv[std::string(to_string(conventions[c].radicand)) + "_" + std::string(to_string(conventions[c].term))] =
            conv_gap[c];
    report["discord_oracle_max_gap"] = conv_gap[winner];
    report["b_convention"] = to_string(conventions[winner].radicand);
    report["discord_conditional_term"] = to_string(conventions[winner].term);
    report["discord_convention_max_gaps"] = conv;
    report["discord_default_is_winner"] = conventions[winner] == kExactDiscord;

    {
        std::vector<DensityMatrix> probes{build_state(params, kPi / 2.0, MassMode::Massless),
                                          build_state(params, kPi / 3.0, MassMode::Massless),
                                          build_state(params, kPi / 4.0, MassMode::MassCorrected)};
        double drift = 0.0;
        for (const auto& rho : probes)
            drift = std::max(drift, std::abs(oracles::discord_bruteforce(rho, options.discord_grid) -
                                             oracles::discord_bruteforce(rho, 2 * options.discord_grid)));
        report["discord_grid_doubling_max_change"] = drift;
    }
    report["discord_points"] = std::move(points);

    // Closed form applicability census on the full default angle grid.
    {
        const SweepGrid full;
        ordered_json census = ordered_json::object();
        for (MassMode mode : modes) {
            std::size_t applicable = 0;
            ordered_json inapplicable_phi = ordered_json::array();
            for (double phi : full.phi_values()) {
                const auto x = xstate_from_density(build_state(params, phi, mode));
                if (discord_closed(x)) {
                    ++applicable;
                } else {
                    inapplicable_phi.push_back(phi);
                }
            }
            const auto half = xstate_from_density(build_state(params, kPi / 2.0, mode));
            census[std::string(to_string(mode))] = {
                {"points", full.phi_points},
                {"applicable", applicable},
                {"inapplicable", full.phi_points - static_cast<int>(applicable)},
                {"half_pi_radical", discord_closed_radical(half)},
                {"half_pi_applicable", discord_closed(half).has_value()},
                {"inapplicable_phi", std::move(inapplicable_phi)},
            };
        }
        report["eq23_applicability"] = std::move(census);
    }

    // Interior discord maxima of the massless angle sweep.
    {
        const auto rows = sweep_angle(params, SweepGrid{}, MassMode::Massless);
        ordered_json peaks = ordered_json::array();
        for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
            const double d = rows[i].measures.discord;
            if (d > rows[i - 1].measures.discord && d >= rows[i + 1].measures.discord)
                peaks.push_back({{"phi", rows[i].phi}, {"discord", d}});
        }
        report["discord_peaks_massless"] = std::move(peaks);
    }

    const bool passed = kraus_err <= kKrausLimit && max_of(chsh_gap) <= kChshLimit &&
                        max_of(wootters_gap) <= kWoottersLimit;
    report["passed"] = passed;
    return {std::move(report), passed};
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // drop negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<MeasureRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        const auto& m = r.measures;
        out << format_number(r.phi) << ',' << format_number(r.t) << ',' << format_number(r.mu) << ','
            << format_number(r.tau) << ',' << to_string(r.mass_mode) << ',' << format_number(m.bell_raw) << ','
            << format_number(m.bell_norm) << ',' << format_number(m.steering_raw) << ','
            << format_number(m.steering_norm) << ',' << format_number(m.concurrence) << ','
            << format_number(m.discord) << ',' << format_number(m.purity) << ','
            << format_number(r.discord_closed.value_or(std::nan(""))) << ',' << (r.discord_closed ? 1 : 0)
            << '\n';
    }
}

nlohmann::ordered_json records_to_json(const std::vector<MeasureRecord>& records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        const auto& m = r.measures;
        nlohmann::ordered_json row{
            {"phi", r.phi},
            {"t", r.t},
            {"mu", r.mu},
            {"tau", r.tau},
            {"mass_mode", to_string(r.mass_mode)},
            {"bell_raw", m.bell_raw},
            {"bell_norm", m.bell_norm},
            {"steering_raw", m.steering_raw},
            {"steering_norm", m.steering_norm},
            {"concurrence", m.concurrence},
            {"discord", m.discord},
            {"purity", m.purity},
        };
        row["discord_closed"] = r.discord_closed ? nlohmann::ordered_json(*r.discord_closed) : nullptr;
        row["discord_closed_applicable"] = r.discord_closed.has_value();
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace llbar
