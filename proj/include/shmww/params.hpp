#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shmww {

class ParameterError : public std::runtime_error {
public:
    explicit ParameterError(const std::string &what) : std::runtime_error(what) {}
};

// Public scheme parameters. The secret is a juxtaposition of ell blocks of
// width n_prime, scrambled by row/column permutations.
struct ParameterSet {
    std::string name;
    std::uint8_t id = 0;
    std::size_t n = 0;        // code length, n = ell * n_prime
    std::size_t k = 0;        // code dimension
    std::size_t n_prime = 0;  // block length
    std::size_t k_prime = 0;  // block dimension (rows of the secret)
    std::size_t ell = 0;      // number of blocks
    std::size_t w1 = 0;       // challenge weight
    std::size_t w2 = 0;       // mask weight
    std::size_t d_gv = 0;     // Gilbert-Varshamov distance, taken as given
    std::size_t lambda = 0;   // claimed security bits, informational

    std::size_t redundancy() const { return n - k; }
    std::size_t random_columns() const { return ell * (n_prime - k_prime); }
    std::size_t identity_columns() const { return ell * k_prime; }
    std::size_t signature_weight_bound() const { return ell * (w1 + n_prime - k_prime) + w2; }
    // Largest weight an honest secret row can have: ell identity ones plus
    // at most all random-column positions.
    std::size_t row_weight_bound() const { return ell + random_columns(); }
};

const ParameterSet &para1();
const ParameterSet &para2();
const ParameterSet &toy();

// Throws ParameterError naming the violated inequality.
void validate_params(const ParameterSet &ps);

const ParameterSet &params_by_name(const std::string &name);
const ParameterSet &params_by_id(std::uint8_t id);

} // namespace shmww
