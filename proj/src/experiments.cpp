#include "shmww/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace shmww {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0)
{
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

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

} // namespace

std::vector<BiasRow> run_bias_experiment(const ParameterSet &ps, std::size_t n_sigs,
                                         std::uint64_t seed, bool raw_challenge)
{
    if (n_sigs == 0)
        throw std::invalid_argument("run_bias_experiment: need N >= 1");
    Rng rng(seed);
    KeyPair kp = keygen(ps, rng);
    BitTally t;
    t.n = ps.n;
    t.ones.assign(ps.n, 0);
    for (std::size_t j = 0; j < n_sigs; ++j) {
        std::string msg = "bias-" + std::to_string(j);
        Signature sig = raw_challenge ? sign_raw_challenge(kp.sk, rng)
                                      : sign(kp.sk, kp.pk, as_bytes(msg), rng);
        tally_add(t, sig.z);
    }
    std::vector<bool> is_random(ps.n, false);
    for (std::uint32_t c : kp.sk.trace.random_columns)
        is_random[c] = true;
    std::vector<BiasRow> rows;
    rows.reserve(ps.n);
    for (std::uint32_t i = 0; i < ps.n; ++i)
        rows.push_back({i, double(t.ones[i]) / double(n_sigs), is_random[i]});
    return rows;
}

void write_bias_csv(std::ostream &out, const std::vector<BiasRow> &rows)
{
    out << "index,frequency,is_random_column\n";
    for (const auto &r : rows)
        out << r.index << ',' << r.frequency << ',' << (r.is_random ? 1 : 0) << '\n';
}

std::vector<ConfidenceRow> run_confidence_experiment(const ParameterSet &ps,
                                                     const std::vector<std::size_t> &n_list,
                                                     std::size_t trials, std::uint64_t seed,
                                                     unsigned threads)
{
    if (trials < 1)
        throw std::invalid_argument("run_confidence_experiment: need trials >= 1");
    std::vector<ConfidenceRow> rows;
    for (std::size_t n_sigs : n_list) {
        double delta = optimal_delta(n_sigs, ps);
        long tau = threshold_from_delta(n_sigs, delta);
        unsigned nthreads = resolve_threads(threads);
        std::atomic<std::size_t> exact{0};
        std::atomic<std::size_t> next{0};
        Rng seeder(seed ^ (0x5e5e5e5eull * n_sigs));
        std::vector<Rng> rngs;
        for (unsigned t = 0; t < nthreads; ++t)
            rngs.push_back(seeder.fork());
        auto worker = [&](unsigned tid) {
            Rng rng = std::move(rngs[tid]);
            for (;;) {
                std::size_t trial = next.fetch_add(1);
                if (trial >= trials)
                    return;
                KeyPair kp = keygen(ps, rng);
                BitTally t;
                t.n = ps.n;
                t.ones.assign(ps.n, 0);
                for (std::size_t j = 0; j < n_sigs; ++j) {
                    std::string msg = "conf-" + std::to_string(trial) + "-" + std::to_string(j);
                    tally_add(t, sign(kp.sk, kp.pk, as_bytes(msg), rng).z);
                }
                if (guess_random_columns(t, tau) == kp.sk.trace.random_columns)
                    exact.fetch_add(1);
            }
        };
        if (nthreads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nthreads; ++t)
                pool.emplace_back(worker, t);
            for (auto &th : pool)
                th.join();
        }
        rows.push_back({n_sigs, delta, confidence_level(n_sigs, delta, ps),
                        double(exact.load()) / double(trials)});
    }
    return rows;
}

void write_confidence_csv(std::ostream &out, const std::vector<ConfidenceRow> &rows)
{
    out << "n,delta,theoretical_alpha,empirical_alpha\n";
    for (const auto &r : rows)
        out << r.n_sigs << ',' << r.delta << ',' << double(r.theoretical_alpha) << ','
            << r.empirical_alpha << '\n';
}

std::vector<NStarRow> run_nstar_experiment(const ParameterSet &ps,
                                           const std::vector<double> &alpha_list, double delta)
{
    std::vector<NStarRow> rows;
    for (double alpha : alpha_list) {
        IsdEstimate est = attack_cost_estimate(ps, alpha, delta);
        double used_delta = delta > 0 ? delta : (ps.id == 2 ? 0.3015 : 0.3005);
        rows.push_back({alpha, used_delta, est.n_star,
                        double(std::log2(est.full_attack_cost))});
    }
    return rows;
}

void write_nstar_csv(std::ostream &out, const std::vector<NStarRow> &rows)
{
    out << "alpha_star,delta,n_star,log2_cost\n";
    for (const auto &r : rows)
        out << r.alpha_star << ',' << r.delta << ',' << r.n_star << ',' << r.log2_cost << '\n';
}

std::vector<TimingRow> run_attack_timing(const ParameterSet &ps,
                                         const std::vector<std::size_t> &n_list,
                                         std::size_t trials, std::uint64_t seed,
                                         const RecoveryOptions &recovery, bool raw_challenge)
{
    if (trials < 1)
        throw std::invalid_argument("run_attack_timing: need trials >= 1");
    std::vector<TimingRow> rows;
    for (std::size_t n_sigs : n_list) {
        TimingRow row{n_sigs, trials, 0, 0, 0, 0};
        double total = 0;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            Rng rng(seed ^ (n_sigs * 0x1000193ull) ^ trial);
            KeyPair kp = keygen(ps, rng);
            std::vector<Signature> sigs;
            sigs.reserve(n_sigs);
            for (std::size_t j = 0; j < n_sigs; ++j) {
                std::string msg = "timing-" + std::to_string(trial) + "-" + std::to_string(j);
                sigs.push_back(raw_challenge ? sign_raw_challenge(kp.sk, rng)
                                             : sign(kp.sk, kp.pk, as_bytes(msg), rng));
            }
            AttackOptions opts;
            opts.recovery = recovery;
            AttackReport rep = full_attack(kp.pk, sigs, rng, opts);
            if (rep.success)
                row.successes++;
            total += rep.seconds;
            row.min_seconds = trial == 0 ? rep.seconds : std::min(row.min_seconds, rep.seconds);
            row.max_seconds = std::max(row.max_seconds, rep.seconds);
        }
        row.avg_seconds = total / double(trials);
        rows.push_back(row);
    }
    return rows;
}

void write_timing_csv(std::ostream &out, const std::vector<TimingRow> &rows)
{
    out << "n,trials,successes,min_seconds,avg_seconds,max_seconds\n";
    for (const auto &r : rows)
        out << r.n_sigs << ',' << r.trials << ',' << r.successes << ',' << r.min_seconds << ','
            << r.avg_seconds << ',' << r.max_seconds << '\n';
}

BenchReport run_primitive_bench(const ParameterSet &ps, std::size_t iterations,
                                std::uint64_t seed)
{
    if (iterations < 1)
        throw std::invalid_argument("run_primitive_bench: need iterations >= 1");
    Rng rng(seed);
    std::vector<double> tk, ts, tv;
    KeyPair kp = keygen(ps, rng);
    for (std::size_t i = 0; i < iterations; ++i) {
        auto t0 = clock_type::now();
        KeyPair fresh = keygen(ps, rng);
        tk.push_back(ms_since(t0));
        std::string msg = "bench-" + std::to_string(i);
        t0 = clock_type::now();
        Signature sig = sign(fresh.sk, fresh.pk, as_bytes(msg), rng);
        ts.push_back(ms_since(t0));
        t0 = clock_type::now();
        bool ok = verify(fresh.pk, as_bytes(msg), sig);
        tv.push_back(ms_since(t0));
        if (!ok)
            throw std::runtime_error("bench: verification failed unexpectedly");
    }
    auto stats = [](const std::vector<double> &v) {
        double mean = 0;
        for (double x : v)
            mean += x;
        mean /= double(v.size());
        double var = 0;
        for (double x : v)
            var += (x - mean) * (x - mean);
        var = v.size() > 1 ? var / double(v.size() - 1) : 0;
        return std::pair{mean, std::sqrt(var)};
    };
    auto [km, ks] = stats(tk);
    auto [sm, ss] = stats(ts);
    auto [vm, vs] = stats(tv);
    return BenchReport{iterations, km, ks, sm, ss, vm, vs};
}

void write_bench_report(std::ostream &out, const ParameterSet &ps, const BenchReport &r)
{
    out << "primitive timings for " << ps.name << " over " << r.iterations << " iterations\n"
        << "keygen: " << r.keygen_mean_ms << " ms (stddev " << r.keygen_stddev_ms << ")\n"
        << "sign:   " << r.sign_mean_ms << " ms (stddev " << r.sign_stddev_ms << ")\n"
        << "verify: " << r.verify_mean_ms << " ms (stddev " << r.verify_stddev_ms << ")\n";
}

} // namespace shmww
