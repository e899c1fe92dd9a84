#include "qchar/lambda_sieve.hpp"

#include <mutex>
#include <stdexcept>

namespace qchar {

LiouvilleTable::LiouvilleTable(std::uint64_t limit) : limit_(limit)
{
    if (limit == 0) throw std::invalid_argument("liouville_sieve needs N >= 1");
    // Linear sieve: every composite is struck exactly once by its least prime.
    values_.assign(limit + 1, 0);
    values_[1] = 1;
    std::vector<std::uint64_t> primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            values_[i] = -1;
        }
        for (std::uint64_t p : primes) {
            if (p * i > limit) break;
            composite[p * i] = true;
            values_[p * i] = static_cast<std::int8_t>(-values_[i]);
            if (i % p == 0) break;
        }
    }
}

LiouvilleTable liouville_sieve(std::uint64_t n)
{
    return LiouvilleTable(n);
}

std::shared_ptr<const LiouvilleTable> cached_liouville(std::uint64_t n)
{
    static std::mutex mu;
    static std::shared_ptr<const LiouvilleTable> table;
    std::lock_guard lock(mu);
    if (!table || table->limit() < n) table = std::make_shared<const LiouvilleTable>(n);
    return table;
}

} // namespace qchar
