#pragma once

#include "shmww/isd.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace shmww {

// Relative set-bit frequency per position over N signatures of one key pair,
// labelled from the keygen trace.
// CSV: index,frequency,is_random_column
struct BiasRow {
    std::uint32_t index;
    double frequency;
    bool is_random;
};
std::vector<BiasRow> run_bias_experiment(const ParameterSet &ps, std::size_t n_sigs,
                                         std::uint64_t seed, bool raw_challenge = false);
void write_bias_csv(std::ostream &out, const std::vector<BiasRow> &rows);

// Guessing-phase confidence per signature count, theory vs simulation.
// CSV: n,delta,theoretical_alpha,empirical_alpha
struct ConfidenceRow {
    std::size_t n_sigs;
    double delta;
    long double theoretical_alpha;
    double empirical_alpha;
};
std::vector<ConfidenceRow> run_confidence_experiment(const ParameterSet &ps,
                                                     const std::vector<std::size_t> &n_list,
                                                     std::size_t trials, std::uint64_t seed,
                                                     unsigned threads = 0);
void write_confidence_csv(std::ostream &out, const std::vector<ConfidenceRow> &rows);

// Theoretical bound table: N* and cost for a range of alpha targets.
// CSV: alpha_star,delta,n_star,log2_cost
struct NStarRow {
    double alpha_star;
    double delta;
    std::size_t n_star;
    double log2_cost;
};
std::vector<NStarRow> run_nstar_experiment(const ParameterSet &ps,
                                           const std::vector<double> &alpha_list,
                                           double delta);
void write_nstar_csv(std::ostream &out, const std::vector<NStarRow> &rows);

// End-to-end attacks on fresh key pairs per signature count.
// CSV: n,trials,successes,min_seconds,avg_seconds,max_seconds
struct TimingRow {
    std::size_t n_sigs;
    std::size_t trials;
    std::size_t successes;
    double min_seconds;
    double avg_seconds;
    double max_seconds;
};
std::vector<TimingRow> run_attack_timing(const ParameterSet &ps,
                                         const std::vector<std::size_t> &n_list,
                                         std::size_t trials, std::uint64_t seed,
                                         const RecoveryOptions &recovery = {},
                                         bool raw_challenge = false);
void write_timing_csv(std::ostream &out, const std::vector<TimingRow> &rows);

// Scheme primitive timings; no fixed targets, hardware dependent.
struct BenchReport {
    std::size_t iterations;
    double keygen_mean_ms, keygen_stddev_ms;
    double sign_mean_ms, sign_stddev_ms;
    double verify_mean_ms, verify_stddev_ms;
};
BenchReport run_primitive_bench(const ParameterSet &ps, std::size_t iterations,
                                std::uint64_t seed);
void write_bench_report(std::ostream &out, const ParameterSet &ps, const BenchReport &r);

} // namespace shmww
