#pragma once

// Checked 128-bit integer arithmetic. Every verification path accumulates in
// wide_int and an overflow is reported as std::overflow_error, never wrapped.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qchar {

using wide_int = __int128;

[[noreturn]] inline void throw_overflow(const char* what)
{
    throw std::overflow_error(std::string("128-bit overflow in ") + what);
}

inline wide_int checked_add(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_add_overflow(a, b, &r)) throw_overflow("add");
    return r;
}

inline wide_int checked_sub(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_sub_overflow(a, b, &r)) throw_overflow("sub");
    return r;
}

inline wide_int checked_mul(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_mul_overflow(a, b, &r)) throw_overflow("mul");
    return r;
}

std::string to_string(wide_int v);

/// Narrowing that throws instead of truncating.
std::int64_t to_int64(wide_int v);

} // namespace qchar
