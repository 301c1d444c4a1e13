#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bohm/experiment.hpp"
#include "bohm/retarded.hpp"

namespace bohm {

enum class Outcome { Left, Right, Both, Neither, Ambiguous };

std::string to_string(Outcome o);

/// One classified run of the two-detector experiment.
struct OutcomeRecord {
    double u0;
    double v0;
    Outcome outcome;
    double final_u_dot;
    double final_v_dot;
    double T;
};

/// Aggregate outcome fractions of an ensemble. Fractions are over all n runs
/// and sum to 1; wrong_fraction = frac_both + frac_neither.
struct EnsembleStats {
    long n = 0;
    double frac_left = 0.0;
    double frac_right = 0.0;
    double frac_both = 0.0;
    double frac_neither = 0.0;
    double frac_ambiguous = 0.0;
    double wrong_fraction = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Born-rule initial coordinates: u0, v0 independent Gaussians with mean 0
/// and variance 1/(2a), one RNG stream per sample index (deterministic given
/// the seed, independent of any thread partition).
std::vector<std::pair<double, double>> sample_initial(std::uint64_t seed, long n,
                                                      double a);

/// A detector fires when its final velocity exceeds 0.99 and stays silent
/// below 0.01; anything between is Ambiguous.
Outcome classify(double final_u_dot, double final_v_dot);

/// Classification thresholds shared by all pipelines.
inline constexpr double kFiringThreshold = 0.99;
inline constexpr double kSilentThreshold = 0.01;

/// Single runs with forced initial conditions (bypassing the sampler).
OutcomeRecord run_pair_outcome(double u0, double v0, const ExperimentConfig& cfg);
OutcomeRecord run_retarded_outcome(double u0, double v0, const RetardedConfig& cfg);

/// Classification horizon for a delayed run: long enough past the delay
/// coupling that every realistic sample saturates (see the implementation
/// for the measured bound). The decoupled regime T >= 2*base keeps the base
/// horizon, as does T = 0.
double retarded_t_final(double base_t_final, double T);

/// Monte Carlo ensembles over Born-sampled initial conditions. Workers run
/// in parallel (n_threads <= 0 means all hardware threads); records are
/// reduced in sample order, so results do not depend on the thread count.
/// If records is non-null it receives the per-sample outcomes.
EnsembleStats run_nonretarded_ensemble(long n, std::uint64_t seed,
                                       const ExperimentConfig& cfg, int n_threads = 0,
                                       std::vector<OutcomeRecord>* records = nullptr);

EnsembleStats run_retarded_ensemble(long n, std::uint64_t seed, const RetardedConfig& cfg,
                                    int n_threads = 0,
                                    std::vector<OutcomeRecord>* records = nullptr);

/// Wrong-result curve over a list of delays, one ensemble per T with a
/// common seed.
std::vector<std::pair<double, EnsembleStats>> sweep_delay(
    const std::vector<double>& t_values, long n, std::uint64_t seed,
    const ExperimentConfig& base, int n_threads = 0);

}  // namespace bohm
