/**
 * @file random.hpp
 * @brief Seeded random source with a pinned algorithm.
 *
 * std::normal_distribution differs between standard libraries, so normals are
 * drawn with Box-Muller on top of std::mt19937_64 (whose output is fixed by
 * the standard). Streams are reproducible across platforms for a given seed.
 */

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pacomp
{

class Rng
{
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64+box-muller";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1), 53-bit resolution.
    double uniform();
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace pacomp
