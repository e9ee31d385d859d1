#ifndef DGP_COUNT_HPP
#define DGP_COUNT_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dgp {

// Partition counts grow exponentially in the part count; they are never
// truncated to a machine word.
using Count = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Count& c) { return c.str(); }

struct RealValue {
    double value = 0.0;
    bool exact = true;  // false when the integer is not representable as a double
};

// Round-to-nearest-even conversion. Boost 1.74 truncates in convert_to<double>,
// so the rounding is done by hand from the top 64 bits plus a sticky bit.
inline RealValue to_nearest_double(const Count& c) {
    if (c.sign() == 0) return {0.0, true};
    const bool negative = c.sign() < 0;
    const Count mag = negative ? Count(-c) : c;
    const auto top_bit = boost::multiprecision::msb(mag);
    RealValue out;
    if (top_bit < 64) {
        const auto v = mag.convert_to<std::uint64_t>();
        out.value = static_cast<double>(v);  // hardware rounds to nearest
        out.exact = top_bit < 53 || (v & ((std::uint64_t{1} << (top_bit - 52)) - 1)) == 0;
    } else {
        const auto shift = static_cast<unsigned>(top_bit - 63);
        const auto top = static_cast<std::uint64_t>(mag >> shift);
        const bool sticky = boost::multiprecision::lsb(mag) < shift;
        std::uint64_t mantissa = top >> 11;
        const std::uint64_t rem = top & 0x7FF;
        const bool round_up = rem > 0x400 || (rem == 0x400 && (sticky || (mantissa & 1)));
        if (round_up) ++mantissa;
        out.value = std::ldexp(static_cast<double>(mantissa), static_cast<int>(shift) + 11);
        out.exact = rem == 0 && !sticky;
    }
    if (negative) out.value = -out.value;
    return out;
}

// Natural log of a positive count; stays finite beyond the double range.
inline double natural_log(const Count& c) {
    const auto top_bit = boost::multiprecision::msb(c);
    if (top_bit < 1000) return std::log(to_nearest_double(c).value);
    const auto shift = static_cast<unsigned>(top_bit - 62);
    const double head = static_cast<double>(static_cast<std::uint64_t>(c >> shift));
    return std::log(head) + static_cast<double>(shift) * std::numbers::ln2;
}

}  // namespace dgp

#endif  // DGP_COUNT_HPP
