#include "shmww/isd.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace shmww {

namespace {

unsigned resolve_threads(unsigned requested)
{
    if (requested > 0)
        return requested;
    if (const char *env = std::getenv("SHMWW_THREADS")) {
        long v = std::atol(env);
        if (v > 0)
            return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Samples free sets F = guessed + uniform fill from the complement,
// |F| = n-k. The complement array is shuffled in place per draw.
class FreeSetSampler {
public:
    FreeSetSampler(std::span<const std::uint32_t> guessed, std::size_t n, std::size_t set_size)
        : guessed_(guessed.begin(), guessed.end()), set_size_(set_size)
    {
        std::vector<bool> in_guessed(n, false);
        for (std::uint32_t g : guessed_)
            in_guessed[g] = true;
        for (std::uint32_t i = 0; i < n; ++i)
            if (!in_guessed[i])
                complement_.push_back(i);
        if (guessed_.size() > set_size_)
            throw std::invalid_argument(
                "guessed set larger than n-k free positions; raise the threshold");
        fill_ = set_size_ - guessed_.size();
    }

    // Returns the free set; positions are not sorted.
    const std::vector<std::uint32_t> &sample(Rng &rng)
    {
        for (std::size_t i = 0; i < fill_; ++i)
            std::swap(complement_[i], complement_[i + rng.below(complement_.size() - i)]);
        current_ = guessed_;
        current_.insert(current_.end(), complement_.begin(), complement_.begin() + fill_);
        return current_;
    }

private:
    std::vector<std::uint32_t> guessed_;
    std::vector<std::uint32_t> complement_;
    std::vector<std::uint32_t> current_;
    std::size_t set_size_;
    std::size_t fill_ = 0;
};

gf2::BitMatrix gather_columns(const gf2::BitMatrix &h, const std::vector<std::uint32_t> &cols)
{
    gf2::BitMatrix sub(h.rows(), cols.size());
    for (std::size_t r = 0; r < h.rows(); ++r) {
        const gf2::Word *hr = h.row(r);
        gf2::Word *sr = sub.row(r);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            std::uint32_t c = cols[t];
            sr[t / gf2::word_bits] |=
                ((hr[c / gf2::word_bits] >> (c % gf2::word_bits)) & 1u)
                << (t % gf2::word_bits);
        }
    }
    return sub;
}

gf2::BitVector embed(const gf2::BitVector &x, const std::vector<std::uint32_t> &positions,
                     std::size_t n)
{
    gf2::BitVector full(n);
    for (std::size_t t = 0; t < positions.size(); ++t)
        if (x.get(t))
            full.set(positions[t]);
    return full;
}

struct RowFilter {
    std::size_t weight_bound;
    std::size_t outside_weight_limit;
    const std::vector<bool> *in_guessed;

    bool accept(const gf2::BitVector &candidate) const
    {
        std::size_t total = candidate.weight();
        if (total > weight_bound)
            return false;
        if (outside_weight_limit != SIZE_MAX) {
            std::size_t outside = 0;
            for (std::size_t i = 0; i < candidate.size(); ++i)
                if (candidate.get(i) && !(*in_guessed)[i])
                    ++outside;
            if (outside != outside_weight_limit)
                return false;
        }
        return true;
    }
};

// Pending confirmation state for one row.
struct Pending {
    gf2::BitVector candidate;
    unsigned seen = 0;
};

RowRecoveryOptions fill_row_defaults(RowRecoveryOptions opts, const ParameterSet &ps)
{
    if (opts.weight_bound == 0)
        opts.weight_bound = ps.row_weight_bound();
    return opts;
}

// Tiny instances have no weight margin between true rows and spurious
// solutions; fall back to the exact structural filter (a true row carries
// exactly ell ones outside the random columns).
RowRecoveryOptions auto_row_options(const ParameterSet &ps, std::uint64_t max_iters)
{
    RowRecoveryOptions opts;
    opts.max_iters = max_iters;
    opts.weight_bound = ps.row_weight_bound();
    if (2 * opts.weight_bound >= ps.redundancy())
        opts.outside_weight_limit = ps.ell;
    return opts;
}

} // namespace

long double isd_success_probability(const ParameterSet &ps)
{
    if (ps.ell == 0)
        return 1;
    std::size_t spread = ps.random_columns();
    if (ps.redundancy() < spread + ps.ell)
        throw std::invalid_argument("isd_success_probability: n-k < (n'-k')*ell + ell");
    long double a = (long double)(ps.redundancy() - spread);
    long double b = (long double)(ps.n - spread);
    long double p = 1;
    for (std::size_t i = 0; i < ps.ell; ++i)
        p *= (a - i) / (b - i);
    return p;
}

IsdEstimate attack_cost_estimate(const ParameterSet &ps, double alpha_star, double delta)
{
    if (delta <= 0) {
        if (ps.id == 1)
            delta = 0.3005;
        else if (ps.id == 2)
            delta = 0.3015;
        else
            delta = (rho_identity(ps) + 0.5) / 2;
    }
    IsdEstimate est;
    est.success_probability = isd_success_probability(ps);
    est.expected_iterations = 1.0L / (invertible_rate * est.success_probability);
    long double nk = (long double)ps.redundancy();
    est.solve_cost = (long double)ps.k_prime * nk * nk * nk /
                     (invertible_rate * est.success_probability);
    est.n_star = min_signatures(alpha_star, delta, ps);
    est.full_attack_cost = (long double)ps.n * (long double)(est.n_star + 1) + est.solve_cost;
    return est;
}

std::optional<RowResult> recover_row(const gf2::BitMatrix &h, const gf2::BitVector &syndrome,
                                     std::span<const std::uint32_t> guessed,
                                     const ParameterSet &ps, Rng &rng,
                                     const RowRecoveryOptions &opts_in)
{
    if (syndrome.size() != h.rows())
        throw std::invalid_argument("recover_row: syndrome length mismatch");
    RowRecoveryOptions opts = fill_row_defaults(opts_in, ps);
    std::vector<bool> in_guessed(h.cols(), false);
    for (std::uint32_t g : guessed)
        in_guessed[g] = true;
    RowFilter filter{opts.weight_bound, opts.outside_weight_limit, &in_guessed};

    FreeSetSampler sampler(guessed, h.cols(), h.rows());
    Pending pending;
    for (std::uint64_t it = 1; it <= opts.max_iters; ++it) {
        const auto &free_set = sampler.sample(rng);
        gf2::BitMatrix sub = gather_columns(h, free_set);
        auto x = gf2::solve_square(sub, syndrome);
        if (!x)
            continue; // singular: resample the whole free set
        gf2::BitVector candidate = embed(*x, free_set, h.cols());
        if (!filter.accept(candidate))
            continue;
        if (pending.seen > 0 && pending.candidate == candidate)
            pending.seen++;
        else
            pending = Pending{std::move(candidate), 1};
        if (pending.seen >= opts.confirmations)
            return RowResult{std::move(pending.candidate), it};
    }
    return std::nullopt;
}

namespace {

gf2::BitVector syndrome_column(const gf2::BitMatrix &s, std::size_t j)
{
    gf2::BitVector v(s.rows());
    for (std::size_t r = 0; r < s.rows(); ++r)
        if (s.get(r, j))
            v.set(r);
    return v;
}

KeyRecovery recover_shared(const PublicKey &pk, std::span<const std::uint32_t> guessed,
                           Rng &rng, const RecoveryOptions &opts,
                           const RowRecoveryOptions &row_opts)
{
    const ParameterSet &ps = pk.ps;
    std::size_t kp = ps.k_prime;
    KeyRecovery out;
    out.e = gf2::BitMatrix(kp, ps.n);
    out.row_iterations.assign(kp, 0);

    std::vector<bool> in_guessed(ps.n, false);
    for (std::uint32_t g : guessed)
        in_guessed[g] = true;
    RowFilter filter{row_opts.weight_bound, row_opts.outside_weight_limit, &in_guessed};

    FreeSetSampler sampler(guessed, ps.n, ps.redundancy());
    std::vector<std::size_t> unresolved(kp);
    for (std::size_t j = 0; j < kp; ++j)
        unresolved[j] = j;
    std::vector<Pending> pending(kp);

    for (std::uint64_t it = 1; it <= opts.max_iters_per_row && !unresolved.empty(); ++it) {
        for (std::size_t j : unresolved)
            out.row_iterations[j]++;
        const auto &free_set = sampler.sample(rng);
        gf2::BitMatrix sub = gather_columns(pk.h, free_set);
        // One elimination serves every still-unresolved syndrome.
        gf2::BitMatrix rhs(ps.redundancy(), unresolved.size());
        for (std::size_t r = 0; r < ps.redundancy(); ++r)
            for (std::size_t t = 0; t < unresolved.size(); ++t)
                if (pk.s.get(r, unresolved[t]))
                    rhs.set(r, t);
        auto x = gf2::solve_square_multi(sub, rhs);
        if (!x)
            continue;
        std::vector<std::size_t> still;
        for (std::size_t t = 0; t < unresolved.size(); ++t) {
            std::size_t j = unresolved[t];
            gf2::BitVector xcol(ps.redundancy());
            for (std::size_t r = 0; r < ps.redundancy(); ++r)
                if (x->get(r, t))
                    xcol.set(r);
            gf2::BitVector candidate = embed(xcol, free_set, ps.n);
            bool done = false;
            if (filter.accept(candidate)) {
                if (pending[j].seen > 0 && pending[j].candidate == candidate)
                    pending[j].seen++;
                else
                    pending[j] = Pending{std::move(candidate), 1};
                if (pending[j].seen >= row_opts.confirmations) {
                    out.e.set_row(j, pending[j].candidate);
                    done = true;
                }
            }
            if (!done)
                still.push_back(j);
        }
        unresolved = std::move(still);
    }
    if (!unresolved.empty()) {
        out.failed_row = unresolved.front();
        return out;
    }
    out.success = true;
    return out;
}

KeyRecovery recover_per_row(const PublicKey &pk, std::span<const std::uint32_t> guessed,
                            Rng &rng, const RecoveryOptions &opts,
                            const RowRecoveryOptions &row_opts)
{
    const ParameterSet &ps = pk.ps;
    std::size_t kp = ps.k_prime;
    KeyRecovery out;
    out.e = gf2::BitMatrix(kp, ps.n);
    out.row_iterations.assign(kp, 0);

    unsigned threads = resolve_threads(opts.threads);
    std::vector<Rng> rngs;
    for (unsigned t = 0; t < threads; ++t)
        rngs.push_back(rng.fork());

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failed{kp};
    std::vector<gf2::BitVector> rows(kp);

    auto worker = [&](unsigned tid) {
        Rng local = std::move(rngs[tid]);
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= kp || failed.load() != kp)
                return;
            auto res = recover_row(pk.h, syndrome_column(pk.s, j), guessed, ps, local, row_opts);
            if (!res) {
                std::size_t expect = kp;
                failed.compare_exchange_strong(expect, j);
                return;
            }
            rows[j] = std::move(res->row);
            out.row_iterations[j] = res->iterations;
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker, t);
        for (auto &th : pool)
            th.join();
    }

    if (failed.load() != kp) {
        out.failed_row = failed.load();
        return out;
    }
    for (std::size_t j = 0; j < kp; ++j)
        out.e.set_row(j, rows[j]);
    out.success = true;
    return out;
}

} // namespace

KeyRecovery recover_private_key(const PublicKey &pk, std::span<const std::uint32_t> guessed,
                                Rng &rng, const RecoveryOptions &opts)
{
    RowRecoveryOptions row_opts = auto_row_options(pk.ps, opts.max_iters_per_row);
    if (opts.shared_free_set)
        return recover_shared(pk, guessed, rng, opts, row_opts);
    return recover_per_row(pk, guessed, rng, opts, row_opts);
}

AttackReport full_attack(const PublicKey &pk, std::span<const Signature> signatures,
                         Rng &rng, const AttackOptions &opts)
{
    if (signatures.empty())
        throw std::invalid_argument("full_attack: need at least one signature");
    auto start = std::chrono::steady_clock::now();

    BitTally t = tally(signatures);
    long tau;
    if (opts.tau)
        tau = *opts.tau;
    else if (opts.delta)
        tau = threshold_from_delta(t.count, *opts.delta);
    else
        tau = experimental_threshold(pk.ps, t.count);
    auto guessed = guess_random_columns(t, tau);

    AttackReport report;
    report.params = pk.ps.name;
    report.signatures_used = t.count;
    report.tau = tau;
    report.guessed_size = guessed.size();

    KeyRecovery rec = recover_private_key(pk, guessed, rng, opts.recovery);
    report.success = rec.success;
    report.failed_row = rec.failed_row;
    report.row_iterations = std::move(rec.row_iterations);
    if (rec.success) {
        report.key_verified = gf2::mat_mul(pk.h, gf2::transpose(rec.e)) == pk.s;
        report.success = report.key_verified; // never report an unverified key
        report.recovered_key = std::move(rec.e);
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace shmww
