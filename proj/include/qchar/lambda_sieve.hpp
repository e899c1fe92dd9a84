#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace qchar {

/// Liouville lambda(n) for 1 <= n <= limit.
class LiouvilleTable {
public:
    explicit LiouvilleTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    int operator[](std::uint64_t n) const { return values_[n]; }

private:
    std::uint64_t limit_;
    std::vector<std::int8_t> values_; // index 0 unused
};

LiouvilleTable liouville_sieve(std::uint64_t n);

/// Process-wide immutable table covering at least n; grown on demand.
std::shared_ptr<const LiouvilleTable> cached_liouville(std::uint64_t n);

} // namespace qchar
