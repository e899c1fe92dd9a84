#include "qchar/quad_char.hpp"

#include <stdexcept>
#include <string>

namespace qchar {

QuadChar QuadChar::validate(std::uint64_t q, bool strict)
{
    const std::string tag = "modulus " + std::to_string(q) + ": ";
    if (q <= 3) throw std::invalid_argument(tag + "must exceed 3");
    if (strict && q % 8 != 3) throw std::invalid_argument(tag + "must be 3 mod 8");
    if (!strict && q % 4 != 3) throw std::invalid_argument(tag + "must be 3 mod 4");
    if (is_prime(q)) return QuadChar(q, {{q, 1}});
    if (q > kMaxCompositeModulus) throw std::invalid_argument(tag + "composite modulus too large to validate");
    auto f = trial_factor(q);
    for (const auto& pp : f) {
        if (pp.exponent > 1) throw std::invalid_argument(tag + "not squarefree");
    }
    return QuadChar(q, std::move(f));
}

QuadChar QuadChar::make(std::uint64_t q) { return validate(q, true); }
QuadChar QuadChar::make_odd(std::uint64_t q) { return validate(q, false); }

} // namespace qchar
