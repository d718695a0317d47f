#include "shmww/params.hpp"

namespace shmww {

const ParameterSet &para1()
{
    static const ParameterSet ps{"para1", 1, 4096, 539, 1024, 890, 4, 31, 531, 1191, 80};
    return ps;
}

const ParameterSet &para2()
{
    static const ParameterSet ps{"para2", 2, 8192, 1065, 1024, 880, 8, 53, 807, 2383, 128};
    return ps;
}

const ParameterSet &toy()
{
    // Desk-scale instance mirroring the worked key-structure example:
    // two [8,4] blocks. d_gv is set to the exact signature weight bound.
    static const ParameterSet ps{"toy", 0, 16, 6, 8, 4, 2, 1, 2, 12, 8};
    return ps;
}

void validate_params(const ParameterSet &ps)
{
    if (ps.n == 0 || ps.k == 0 || ps.n_prime == 0 || ps.k_prime == 0 || ps.ell == 0 ||
        ps.w1 == 0 || ps.w2 == 0 || ps.d_gv == 0)
        throw ParameterError("all parameters must be positive");
    if (ps.n != ps.ell * ps.n_prime)
        throw ParameterError("n = ell * n' violated");
    if (ps.k_prime >= ps.n_prime)
        throw ParameterError("k' < n' violated");
    if (ps.k >= ps.n)
        throw ParameterError("k < n violated");
    if (ps.signature_weight_bound() > ps.d_gv)
        throw ParameterError("ell*(w1 + n' - k') + w2 <= d_gv violated (" +
                             std::to_string(ps.signature_weight_bound()) + " > " +
                             std::to_string(ps.d_gv) + ")");
    if (ps.w1 > ps.k_prime)
        throw ParameterError("w1 <= k' violated");
    if (ps.w2 > ps.n)
        throw ParameterError("w2 <= n violated");
}

const ParameterSet &params_by_name(const std::string &name)
{
    if (name == "para1")
        return para1();
    if (name == "para2")
        return para2();
    if (name == "toy")
        return toy();
    throw ParameterError("unknown parameter set: " + name);
}

const ParameterSet &params_by_id(std::uint8_t id)
{
    switch (id) {
    case 0: return toy();
    case 1: return para1();
    case 2: return para2();
    default: throw ParameterError("unknown parameter set id: " + std::to_string(id));
    }
}

} // namespace shmww
