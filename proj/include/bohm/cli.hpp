#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bohm::cli {

enum class Mode { Equivariance, NonRetarded, Retarded, Sweep, OracleCheck, PhysicalUnits };

Mode mode_from_string(const std::string& s);
std::string to_string(Mode m);

/// Raw run configuration. Optional fields record whether the user set them;
/// validation resolves defaults and rejects mixed code/physical unit sets.
struct RunConfig {
    Mode mode = Mode::NonRetarded;
    std::uint64_t seed = 12345;
    std::optional<long> n;

    // Code-unit experiment parameters.
    std::optional<double> a, p, m, dt, t_final;
    std::optional<double> T;
    std::optional<std::vector<double>> t_list;
    std::optional<double> l, c;  // geometry; T = 2 l / c

    // Physical (SI) parameters, physical-units mode only.
    std::optional<double> d, lambda, hbar;

    std::string out_path;
    bool emit_samples = false;
    bool emit_trajectories = false;
    int parallel = 0;

    /// Checks mode-specific requirements and unit-set exclusivity; fills
    /// nothing (defaults are applied by the accessors below).
    void validate() const;

    long n_or_default() const;
    double a_or_default() const { return a.value_or(1.0); }
    double p_or_default() const { return p.value_or(1.0); }
    double m_or_default() const { return m.value_or(1.0); }
    double dt_or_default() const { return dt.value_or(1e-3); }
    double t_final_or_default() const { return t_final.value_or(10.0); }

    /// Delay in code units, direct or derived from l and c.
    double resolved_delay() const;
    std::vector<double> resolved_delay_list() const;
};

/// Strict JSON ingestion: unknown keys are an error listing them.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig config_from_file(const std::string& path);

/// Resolved-config echo; feeding it back reproduces the same run.
nlohmann::json config_to_json(const RunConfig& cfg);

inline constexpr double kKsThreshold = 0.025;
inline constexpr double kOracleThreshold = 1e-6;

/// Runs the configured pipeline, writes artifacts (JSON summary to out_path
/// or stdout, optional CSVs alongside), and returns the process exit code:
/// 0 success, 2 config error, 3 numerical failure, 4 I/O failure.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace bohm::cli
