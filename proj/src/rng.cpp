#include "erasure_bandit/rng.hpp"

#include <cmath>
#include <numbers>

namespace erasure_bandit {

namespace {
__extension__ using u128 = unsigned __int128;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) noexcept
{
    // Lemire's multiply-shift with rejection, unbiased.
    auto product = static_cast<u128>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            product = static_cast<u128>((*this)()) * n;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

double RngStream::standard_normal() noexcept
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace erasure_bandit
