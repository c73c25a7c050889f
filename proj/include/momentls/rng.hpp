#ifndef MOMENTLS_RNG_HPP
#define MOMENTLS_RNG_HPP

#include <cstdint>
#include <random>

namespace momentls
{

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t x);

/**
 * Seed for replication `rep` at chain length `M` under `base`:
 * splitmix64(splitmix64(splitmix64(base) ^ M) ^ rep).
 * Independent of which estimators are run.
 */
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t M, std::uint64_t rep);

/**
 * Reproducible random source: std::mt19937_64 (whose output sequence is fixed
 * by the standard) with uniforms built from the top 53 bits and normals from
 * the Box-Muller transform, both spares of each pair used in order.
 */
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    /// Standard normal.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace momentls

#endif // MOMENTLS_RNG_HPP
