#pragma once

#include "shmww/distinguisher.hpp"
#include "shmww/params.hpp"
#include "shmww/scheme.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace shmww {

struct IsdEstimate {
    long double success_probability = 0;   // per-iteration support-success p
    long double expected_iterations = 0;   // 1 / (0.2887 * p)
    long double solve_cost = 0;            // k' * (n-k)^3 / (0.2887 * p)
    long double full_attack_cost = 0;      // n*(N*+1) + solve_cost
    std::size_t n_star = 0;
};

// Invertibility rate of a random square binary matrix, prod (1 - 2^-i).
inline constexpr double invertible_rate = 0.2887;

// p = C(n-k-(n'-k')*ell, ell) / C(n-(n'-k')*ell, ell)
long double isd_success_probability(const ParameterSet &ps);

IsdEstimate attack_cost_estimate(const ParameterSet &ps, double alpha_star = 0.9,
                                 double delta = 0);

struct RowRecoveryOptions {
    std::uint64_t max_iters = 100000;
    // Accept a candidate only if its total weight stays below this bound;
    // defaults to the structural row bound ell + ell*(n'-k').
    std::size_t weight_bound = 0;
    // Exact weight a candidate must carry outside the guessed set (a true row
    // has exactly ell such ones when the guess equals I_R); SIZE_MAX disables
    // the filter. Used for tiny instances where the weight bound alone cannot
    // separate true rows from spurious syndrome solutions.
    std::size_t outside_weight_limit = SIZE_MAX;
    // Number of free-set samples that must reproduce a candidate before it is
    // accepted; 1 everywhere by default.
    unsigned confirmations = 1;
};

struct RowResult {
    gf2::BitVector row;
    std::uint64_t iterations = 0;
};

// Prange iteration with the guessed random-column set forced into the free
// set: sample F containing `guessed` with |F| = n-k, solve the square system
// on the F-columns of h, accept structurally plausible candidates.
std::optional<RowResult> recover_row(const gf2::BitMatrix &h, const gf2::BitVector &syndrome,
                                     std::span<const std::uint32_t> guessed,
                                     const ParameterSet &ps, Rng &rng,
                                     const RowRecoveryOptions &opts);

struct RecoveryOptions {
    std::uint64_t max_iters_per_row = 100000;
    // Reuse each sampled free set (and its one elimination) for all rows not
    // yet recovered. Off by default so that iteration counts match the
    // per-row cost model; the recovered key is identical either way.
    bool shared_free_set = false;
    unsigned threads = 0; // 0 = SHMWW_THREADS env or hardware concurrency
};

struct KeyRecovery {
    bool success = false;
    std::size_t failed_row = 0; // first unrecoverable row when !success
    gf2::BitMatrix e;
    std::vector<std::uint64_t> row_iterations;
};

KeyRecovery recover_private_key(const PublicKey &pk, std::span<const std::uint32_t> guessed,
                                Rng &rng, const RecoveryOptions &opts = {});

struct AttackOptions {
    // Threshold: explicit tau wins, else delta, else the experimental
    // weighted-average rule.
    std::optional<long> tau;
    std::optional<double> delta;
    RecoveryOptions recovery;
};

struct AttackReport {
    std::string params;
    std::size_t signatures_used = 0;
    long tau = 0;
    std::size_t guessed_size = 0;
    bool success = false;
    std::size_t failed_row = 0;
    gf2::BitMatrix recovered_key;
    std::vector<std::uint64_t> row_iterations;
    double seconds = 0;
    bool key_verified = false; // h * e^T == s
};

AttackReport full_attack(const PublicKey &pk, std::span<const Signature> signatures,
                         Rng &rng, const AttackOptions &opts = {});

} // namespace shmww
