#include "shmww/distinguisher.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace shmww {

namespace {

// floor/ceil of delta*N with a tolerance absorbing decimal-fraction rounding.
long floor_cut(double delta, std::size_t n)
{
    return long(std::floor((long double)delta * n + 1e-6L));
}

long ceil_cut(double delta, std::size_t n)
{
    return long(std::ceil((long double)delta * n - 1e-6L));
}

long double log_binom(std::size_t n, std::size_t u)
{
    return std::lgamma((long double)n + 1) - std::lgamma((long double)u + 1) -
           std::lgamma((long double)(n - u) + 1);
}

// P[Bin(n, p) <= m]
long double binom_tail_le(std::size_t n, long m, long double p)
{
    if (m < 0)
        return 0;
    if ((std::size_t)m >= n)
        return 1;
    long double lp = std::log(p), lq = std::log1p(-p);
    long double sum = 0;
    for (long u = 0; u <= m; ++u)
        sum += std::exp(log_binom(n, (std::size_t)u) + u * lp + (long double)(n - u) * lq);
    return sum > 1 ? 1 : sum;
}

// P[Bin(n, p) >= m]
long double binom_tail_ge(std::size_t n, long m, long double p)
{
    if (m <= 0)
        return 1;
    if ((std::size_t)m > n)
        return 0;
    if (p <= 0)
        return 0;
    long double lp = std::log(p), lq = p < 1 ? std::log1p(-p) : 0;
    long double sum = 0;
    for (long u = m; u <= (long)n; ++u)
        sum += std::exp(log_binom(n, (std::size_t)u) + u * lp + (long double)(n - u) * lq);
    return sum > 1 ? 1 : sum;
}

} // namespace

BitTally tally(std::span<const Signature> signatures)
{
    if (signatures.empty())
        throw std::invalid_argument("tally: empty signature list");
    BitTally t;
    t.n = signatures.front().z.size();
    t.ones.assign(t.n, 0);
    for (const Signature &sig : signatures)
        tally_add(t, sig.z);
    return t;
}

void tally_add(BitTally &t, const gf2::BitVector &z)
{
    if (z.size() != t.n)
        throw std::invalid_argument("tally: signature length mismatch");
    for (std::size_t w = 0; w < z.word_count(); ++w) {
        gf2::Word x = z.data()[w];
        while (x) {
            t.ones[w * gf2::word_bits + std::size_t(std::countr_zero(x))]++;
            x &= x - 1;
        }
    }
    t.count++;
}

BitTally tally_merge(const BitTally &a, const BitTally &b)
{
    if (a.n != b.n)
        throw std::invalid_argument("tally_merge: length mismatch");
    BitTally t = a;
    t.count += b.count;
    for (std::size_t i = 0; i < t.n; ++i)
        t.ones[i] += b.ones[i];
    return t;
}

double rho_identity(const ParameterSet &ps)
{
    double a = double(ps.w1) / double(ps.k_prime);
    return a + double(ps.w2) / double(ps.n) * (1.0 - 2.0 * a);
}

std::pair<double, double> column_probabilities(const ParameterSet &ps)
{
    return {0.5, rho_identity(ps)};
}

long threshold_from_delta(std::size_t count, double delta)
{
    return floor_cut(delta, count);
}

std::vector<std::uint32_t> guess_random_columns(const BitTally &t, long tau)
{
    std::vector<std::uint32_t> guessed;
    for (std::size_t i = 0; i < t.n; ++i)
        if ((long)t.ones[i] > tau)
            guessed.push_back(std::uint32_t(i));
    return guessed;
}

long double epsilon_random(std::size_t n_sigs, double delta)
{
    if (n_sigs < 1 || delta <= 0 || delta >= 0.5)
        throw std::invalid_argument("epsilon_random: need N >= 1 and 0 < delta < 1/2");
    return binom_tail_le(n_sigs, floor_cut(delta, n_sigs), 0.5L);
}

long double epsilon_identity(std::size_t n_sigs, double delta, double rho_i)
{
    if (n_sigs < 1 || delta > 0.5 || delta < rho_i)
        throw std::invalid_argument("epsilon_identity: need N >= 1 and rho_i <= delta <= 1/2");
    return binom_tail_ge(n_sigs, ceil_cut(delta, n_sigs), (long double)rho_i);
}

long double confidence_level(std::size_t n_sigs, double delta, const ParameterSet &ps)
{
    long m = ceil_cut(delta, n_sigs);
    long double eps_r = binom_tail_le(n_sigs, m, 0.5L);
    long double eps_i = binom_tail_ge(n_sigs, m, (long double)rho_identity(ps));
    if (eps_r >= 1 || eps_i >= 1)
        return 0;
    long double log_alpha = (long double)ps.random_columns() * std::log1p(-eps_r) +
                            (long double)ps.identity_columns() * std::log1p(-eps_i);
    return std::exp(log_alpha);
}

std::pair<long double, long double> chernoff_epsilons(std::size_t n_sigs, double delta,
                                                      double rho_i)
{
    long double n = (long double)n_sigs, d = delta, r = rho_i;
    long double eps_r = std::exp(-(1 - 2 * d) * (1 - 2 * d) * n / 4);
    long double eps_i = std::exp(-(d - r) * (d - r) * n / (d + r));
    return {eps_r, eps_i};
}

std::size_t min_signatures(double alpha_star, double delta, const ParameterSet &ps)
{
    double rho_i = rho_identity(ps);
    if (delta <= rho_i || delta >= 0.5)
        throw std::invalid_argument("min_signatures: need rho_i < delta < 1/2");
    if (alpha_star <= 0 || alpha_star >= 1)
        throw std::invalid_argument("min_signatures: need 0 < alpha_star < 1");
    double a = 4.0 / ((1 - 2 * delta) * (1 - 2 * delta)) *
               std::log(2.0 * double(ps.random_columns()) / (1 - alpha_star));
    double b = (delta + rho_i) / ((delta - rho_i) * (delta - rho_i)) *
               std::log(2.0 * double(ps.identity_columns()) / (1 - alpha_star));
    return std::size_t(std::ceil(std::max(a, b)));
}

double experimental_delta(const ParameterSet &ps)
{
    double frac_i = double(ps.identity_columns()) / double(ps.n);
    double frac_r = double(ps.random_columns()) / double(ps.n);
    return frac_i * rho_identity(ps) + frac_r * 0.5;
}

long experimental_threshold(const ParameterSet &ps, std::size_t n_sigs)
{
    if (n_sigs < 1)
        throw std::invalid_argument("experimental_threshold: need N >= 1");
    return floor_cut(experimental_delta(ps), n_sigs);
}

double optimal_delta(std::size_t n_sigs, const ParameterSet &ps)
{
    double rho_i = rho_identity(ps);
    double best_delta = 0;
    long double best_alpha = -1;
    // The confidence level depends on delta only through the integer cutoff
    // ceil(delta*N), so one candidate per cutoff value suffices.
    for (long m = 1; 2 * m <= (long)n_sigs; ++m) {
        double lo = std::max(rho_i, double(m - 1) / double(n_sigs));
        double hi = std::min(0.5, double(m) / double(n_sigs));
        if (lo >= hi)
            continue;
        double d = (lo + hi) / 2;
        long double a = confidence_level(n_sigs, d, ps);
        if (a > best_alpha) {
            best_alpha = a;
            best_delta = d;
        }
    }
    if (best_alpha < 0)
        throw std::invalid_argument("optimal_delta: no valid threshold in (rho_i, 1/2)");
    return best_delta;
}

TheoryReport theory_report(const ParameterSet &ps, std::size_t n_sigs, double delta,
                           double alpha_star)
{
    TheoryReport r;
    r.rho_i = rho_identity(ps);
    r.eps_random = epsilon_random(n_sigs, delta);
    r.eps_identity = epsilon_identity(n_sigs, delta, r.rho_i);
    auto [er, ei] = chernoff_epsilons(n_sigs, delta, r.rho_i);
    r.eps_random_bound = er;
    r.eps_identity_bound = ei;
    r.alpha = confidence_level(n_sigs, delta, ps);
    r.alpha_star = alpha_star;
    r.n_star = min_signatures(alpha_star, delta, ps);
    return r;
}

} // namespace shmww
