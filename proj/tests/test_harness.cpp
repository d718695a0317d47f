#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shmww/experiments.hpp"
#include "shmww/serialize.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace shmww;
namespace fs = std::filesystem;

namespace {

std::string cli_path()
{
#ifdef SHMWW_CLI_PATH
    return SHMWW_CLI_PATH;
#else
    return "";
#endif
}

int run_cli(const std::string &args)
{
    std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("shmww-test-" + std::to_string(std::uint64_t(::getpid())));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &leaf) const { return (path / leaf).string(); }
};

} // namespace

TEST_CASE("key and signature serialization round trips")
{
    Rng rng("serialize");
    KeyPair kp = keygen(toy(), rng);
    Signature sig = sign(kp.sk, kp.pk, as_bytes("round-trip"), rng);

    auto pkb = serialize(kp.pk);
    PublicKey pk2 = deserialize_public_key(pkb);
    CHECK(pk2.h == kp.pk.h);
    CHECK(pk2.s == kp.pk.s);
    CHECK(pk2.ps.name == "toy");

    auto skb = serialize(kp.sk);
    PrivateKey sk2 = deserialize_private_key(skb);
    CHECK(sk2.e == kp.sk.e);
    CHECK(sk2.trace.random_columns.empty()); // trace is not part of the format

    auto sgb = serialize(sig, toy());
    Signature sig2 = deserialize_signature(sgb);
    CHECK(sig2.z == sig.z);
    CHECK(sig2.c == sig.c);
    CHECK(verify(pk2, as_bytes("round-trip"), sig2));

    CHECK(&deserialized_params(pkb) == &toy());
}

TEST_CASE("serialized public key size at full parameters")
{
    KeyPair kp = keygen(para1(), "size-check");
    // 8 header + 8 dims + 3557 rows of 512 bytes (H) + 3557 rows of 112 bytes (S)
    CHECK(serialize(kp.pk).size() == std::size_t(8 + 8 + 3557 * 512 + 3557 * 112));
    PublicKey back = deserialize_public_key(serialize(kp.pk));
    CHECK(back.h == kp.pk.h);
}

TEST_CASE("malformed streams raise parse errors")
{
    Rng rng("malformed");
    KeyPair kp = keygen(toy(), rng);
    auto pkb = serialize(kp.pk);

    auto truncated = pkb;
    truncated.resize(truncated.size() - 1);
    CHECK_THROWS_AS(deserialize_public_key(truncated), ParseError);
    try {
        deserialize_public_key(truncated);
    } catch (const ParseError &e) {
        CHECK(e.offset() > 0);
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }

    auto trailing = pkb;
    trailing.push_back(0);
    CHECK_THROWS_AS(deserialize_public_key(trailing), ParseError);

    auto bad_magic = pkb;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(deserialize_public_key(bad_magic), ParseError);

    auto bad_id = pkb;
    bad_id[7] = 9;
    CHECK_THROWS_AS(deserialize_public_key(bad_id), ParseError);

    // a signature stream is not a public key
    Signature sig = sign(kp.sk, kp.pk, as_bytes("x"), rng);
    CHECK_THROWS_AS(deserialize_public_key(serialize(sig, toy())), ParseError);

    // dimension/parameter disagreement
    auto wrong_dims = pkb;
    wrong_dims[8] ^= 1;
    CHECK_THROWS_AS(deserialize_public_key(wrong_dims), ParseError);

    CHECK_THROWS_AS(deserialize_public_key(std::vector<std::uint8_t>{1, 2, 3}), ParseError);
}

TEST_CASE("bias experiment labels columns from the trace")
{
    auto rows = run_bias_experiment(toy(), 400, 42);
    REQUIRE(rows.size() == 16);
    std::size_t random_count = 0;
    double sum_r = 0, sum_i = 0;
    for (const auto &r : rows) {
        CHECK(r.frequency >= 0.0);
        CHECK(r.frequency <= 1.0);
        (r.is_random ? sum_r : sum_i) += r.frequency;
        random_count += r.is_random;
    }
    CHECK(random_count == toy().random_columns());
    CHECK(sum_r / 8 > sum_i / 8); // random columns are visibly more biased

    // deterministic per seed
    auto again = run_bias_experiment(toy(), 400, 42);
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].frequency == again[i].frequency);
    auto other = run_bias_experiment(toy(), 400, 43);
    bool any_diff = false;
    for (std::size_t i = 0; i < rows.size(); ++i)
        any_diff |= rows[i].frequency != other[i].frequency;
    CHECK(any_diff);

    // raw-challenge mode has the same shape
    auto raw = run_bias_experiment(toy(), 100, 7, true);
    CHECK(raw.size() == 16);

    std::ostringstream csv;
    write_bias_csv(csv, rows);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,frequency,is_random_column");
    std::size_t data_lines = 0;
    while (std::getline(in, line))
        ++data_lines;
    CHECK(data_lines == 16);

    CHECK_THROWS_AS(run_bias_experiment(toy(), 0, 1), std::invalid_argument);
}

TEST_CASE("confidence experiment")
{
    auto rows = run_confidence_experiment(toy(), {64, 256}, 5, 3);
    REQUIRE(rows.size() == 2);
    for (const auto &r : rows) {
        CHECK(r.delta > 0);
        CHECK(r.delta < 0.5);
        CHECK(r.theoretical_alpha >= 0);
        CHECK(r.theoretical_alpha <= 1);
        CHECK(r.empirical_alpha >= 0);
        CHECK(r.empirical_alpha <= 1);
    }
    // more signatures can only help the guesser
    CHECK(rows[1].theoretical_alpha >= rows[0].theoretical_alpha);

    std::ostringstream csv;
    write_confidence_csv(csv, rows);
    CHECK(csv.str().rfind("n,delta,theoretical_alpha,empirical_alpha\n", 0) == 0);

    CHECK_THROWS_AS(run_confidence_experiment(toy(), {10}, 0, 1), std::invalid_argument);
}

TEST_CASE("n-star experiment")
{
    auto rows = run_nstar_experiment(para1(), {0.5, 0.9, 0.99}, 0);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].n_star < rows[1].n_star);
    CHECK(rows[1].n_star < rows[2].n_star);
    CHECK(rows[1].n_star >= 238);
    CHECK(rows[1].n_star <= 263);
    for (const auto &r : rows)
        CHECK(r.log2_cost <= 48.0);

    std::ostringstream csv;
    write_nstar_csv(csv, rows);
    CHECK(csv.str().rfind("alpha_star,delta,n_star,log2_cost\n", 0) == 0);
}

TEST_CASE("attack timing experiment on the toy set")
{
    auto rows = run_attack_timing(toy(), {256}, 2, 2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].trials == 2);
    CHECK(rows[0].successes == 2);
    CHECK(rows[0].min_seconds <= rows[0].avg_seconds);
    CHECK(rows[0].avg_seconds <= rows[0].max_seconds);

    std::ostringstream csv;
    write_timing_csv(csv, rows);
    CHECK(csv.str().rfind("n,trials,successes,min_seconds,avg_seconds,max_seconds\n", 0) == 0);
}

TEST_CASE("primitive benchmark")
{
    BenchReport r = run_primitive_bench(toy(), 3, 5);
    CHECK(r.iterations == 3);
    CHECK(r.keygen_mean_ms > 0);
    CHECK(r.sign_mean_ms > 0);
    CHECK(r.verify_mean_ms > 0);
    std::ostringstream out;
    write_bench_report(out, toy(), r);
    CHECK(out.str().find("keygen") != std::string::npos);
}

TEST_CASE("command line round trip")
{
    REQUIRE_FALSE(cli_path().empty());
    TempDir tmp;
    std::string dir = tmp.path.string();

    CHECK(run_cli("keygen --params toy --seed cli-test-2 --out " + dir) == 0);
    CHECK(fs::exists(dir + "/pk.bin"));
    CHECK(fs::exists(dir + "/sk.bin"));

    CHECK(run_cli("sign --pk " + dir + "/pk.bin --sk " + dir + "/sk.bin --msg hello --out " +
                  dir + "/sig.bin") == 0);
    CHECK(run_cli("verify --pk " + dir + "/pk.bin --msg hello --sig " + dir + "/sig.bin") == 0);
    CHECK(run_cli("verify --pk " + dir + "/pk.bin --msg hellx --sig " + dir + "/sig.bin") == 1);

    // corrupt the challenge: its weight leaves w1, so verification cannot pass
    auto sig = read_file(dir + "/sig.bin");
    sig.back() ^= 0x01;
    write_file(dir + "/sig2.bin", sig);
    CHECK(run_cli("verify --pk " + dir + "/pk.bin --msg hello --sig " + dir + "/sig2.bin") != 0);

    CHECK(run_cli("estimate --params para1") == 0);
    CHECK(run_cli("experiment bias --params toy --n-list 50 --seed 1 --csv " + dir +
                  "/bias.csv") == 0);
    CHECK(fs::exists(dir + "/bias.csv"));

    // attack from serialized artifacts
    std::string sig_args;
    for (int j = 0; j < 200; ++j) {
        std::string p = dir + "/s" + std::to_string(j) + ".bin";
        REQUIRE(run_cli("sign --pk " + dir + "/pk.bin --sk " + dir + "/sk.bin --msg m" +
                        std::to_string(j) + " --seed s" + std::to_string(j) + " --out " + p) ==
                0);
        sig_args += " " + p;
    }
    CHECK(run_cli("attack --pk " + dir + "/pk.bin --sigs" + sig_args + " --seed atk --out " +
                  dir + "/rec.bin") == 0);
    PublicKey pk = deserialize_public_key(read_file(dir + "/pk.bin"));
    PrivateKey rec = deserialize_private_key(read_file(dir + "/rec.bin"));
    CHECK(gf2::mat_mul(pk.h, gf2::transpose(rec.e)) == pk.s);

    // usage errors exit with 2
    CHECK(run_cli("keygen --params nope --out " + dir) == 2);
    CHECK(run_cli("frobnicate") == 2);
}
