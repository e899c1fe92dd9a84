#include "qchar/ntcore.hpp"

#include <stdexcept>
#include <utility>

namespace qchar {

int jacobi_u(std::uint64_t a, std::uint64_t m)
{
    if (m == 0 || (m & 1u) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    a %= m;
    int t = 1;
    while (a != 0) {
        const int tz = __builtin_ctzll(a);
        a >>= tz;
        if ((tz & 1) && ((m & 7u) == 3 || (m & 7u) == 5)) t = -t;
        std::swap(a, m);
        if ((a & 3u) == 3 && (m & 3u) == 3) t = -t;
        a %= m;
    }
    return m == 1 ? t : 0;
}

int jacobi(std::int64_t n, std::uint64_t m)
{
    if (m == 0 || (m & 1u) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    if (n >= 0) return jacobi_u(static_cast<std::uint64_t>(n), m);
    // Negative n: reduce |n| mod m and reflect.
    const std::uint64_t mag = static_cast<std::uint64_t>(-(n + 1)) + 1;
    const std::uint64_t r = mag % m;
    return jacobi_u(r == 0 ? 0 : m - r, m);
}

} // namespace qchar
