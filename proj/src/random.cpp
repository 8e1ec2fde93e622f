#include "pathint/random.hpp"

#include <cmath>

namespace pathint::rng {

namespace {

constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline void round_once(std::array<std::uint32_t, 4>& c, std::uint32_t k0, std::uint32_t k1) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mul_hi_lo(kMulA, c[0], hi0, lo0);
    mul_hi_lo(kMulB, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
}

inline double to_unit_interval(std::uint32_t hi, std::uint32_t lo) {
    // 53 random mantissa bits, offset to stay strictly inside (0,1)
    std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t counter) {
    std::array<std::uint32_t, 4> c = {
        static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32),
        static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::uint32_t k0 = static_cast<std::uint32_t>(seed);
    std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);
    for (int r = 0; r < 10; ++r) {
        round_once(c, k0, k1);
        k0 += kWeylA;
        k1 += kWeylB;
    }
    return c;
}

double uniform(const RandomStream& s, std::uint64_t n) {
    auto block = philox4x32(s.seed, s.stream_index, n >> 1);
    return (n & 1) ? to_unit_interval(block[2], block[3]) : to_unit_interval(block[0], block[1]);
}

double normal(const RandomStream& s, std::uint64_t n) {
    auto block = philox4x32(s.seed, s.stream_index, n >> 1);
    double u1 = to_unit_interval(block[0], block[1]);
    double u2 = to_unit_interval(block[2], block[3]);
    double r = std::sqrt(-2.0 * std::log(u1));
    double phase = 2.0 * M_PI * u2;
    return (n & 1) ? r * std::sin(phase) : r * std::cos(phase);
}

}  // namespace pathint::rng
