#pragma once

#include "shmww/params.hpp"
#include "shmww/scheme.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace shmww {

// Per-position set-bit counters over a batch of signatures.
struct BitTally {
    std::size_t n = 0;
    std::size_t count = 0;               // signatures tallied
    std::vector<std::uint32_t> ones;     // ones[i] = number of signatures with bit i set
};

BitTally tally(std::span<const Signature> signatures);
void tally_add(BitTally &t, const gf2::BitVector &z);
BitTally tally_merge(const BitTally &a, const BitTally &b);

// Per-bit set probabilities: 1/2 over random columns, the biased value over
// identity columns.
double rho_identity(const ParameterSet &ps);
std::pair<double, double> column_probabilities(const ParameterSet &ps);

// Threshold classifier: i is guessed random iff ones[i] > tau.
long threshold_from_delta(std::size_t count, double delta);
std::vector<std::uint32_t> guess_random_columns(const BitTally &t, long tau);

// Exact misclassification tails, evaluated in long-double log domain.
// epsilon_random: P[Bin(N, 1/2) <= floor(delta*N)]
// epsilon_identity: P[Bin(N, rho_i) >= ceil(delta*N)]
long double epsilon_random(std::size_t n_sigs, double delta);
long double epsilon_identity(std::size_t n_sigs, double delta, double rho_i);

// Probability that every one of the n columns is classified correctly. Both
// tails are evaluated at the cutoff ceil(delta*N); this is the reading that
// reproduces the published confidence table.
long double confidence_level(std::size_t n_sigs, double delta, const ParameterSet &ps);

// (epsilon_random_bound, epsilon_identity_bound) from the Chernoff bound.
std::pair<long double, long double> chernoff_epsilons(std::size_t n_sigs, double delta,
                                                      double rho_i);

// Smallest signature count guaranteeing confidence alpha_star at threshold
// delta, from the Chernoff-derived closed form.
std::size_t min_signatures(double alpha_star, double delta, const ParameterSet &ps);

// Weighted-average threshold delta-bar and the integer cutoff floor(N * delta-bar).
double experimental_delta(const ParameterSet &ps);
long experimental_threshold(const ParameterSet &ps, std::size_t n_sigs);

// delta in (rho_i, 1/2) maximizing confidence_level; the search runs over the
// integer cutoff values, which are the only breakpoints.
double optimal_delta(std::size_t n_sigs, const ParameterSet &ps);

struct TheoryReport {
    double rho_r = 0.5;
    double rho_i = 0;
    long double eps_random = 0;
    long double eps_identity = 0;
    long double eps_random_bound = 0;
    long double eps_identity_bound = 0;
    long double alpha = 0;
    double alpha_star = 0;
    std::size_t n_star = 0;
};

TheoryReport theory_report(const ParameterSet &ps, std::size_t n_sigs, double delta,
                           double alpha_star);

} // namespace shmww
