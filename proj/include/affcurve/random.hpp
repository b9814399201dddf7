#pragma once

// Seeded random affinity matrices for property checks and the oracle run.

#include <affcurve/affinity.hpp>

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace affcurve {

/// Small value pool with ties and Infinity, so that random matrices exercise
/// tie groups and permanent edges.
inline const std::vector<double>& default_value_pool()
{
    static const std::vector<double> pool{0.5, 1.0, 1.0, 2.0, 3.0, 3.0, 5.0, 8.0, kInfinity};
    return pool;
}

/// Each off-diagonal pair is drawn uniformly from pool.
template <typename Rng>
AffinityMatrix random_affinity_matrix(Rng& rng, std::size_t n, std::span<const double> pool)
{
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    RawMatrix raw(n, std::vector<double>(n, kInfinity));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = pool[pick(rng)];
            raw[i][j] = v;
            raw[j][i] = v;
        }
    }
    return validate(raw);
}

template <typename Rng>
AffinityMatrix random_affinity_matrix(Rng& rng, std::size_t n)
{
    return random_affinity_matrix(rng, n, default_value_pool());
}

/// Continuous log-uniform entries in [1e-3, 1e3]; each pair is Infinity with
/// probability infinity_rate.
template <typename Rng>
AffinityMatrix random_continuous_matrix(Rng& rng, std::size_t n, double infinity_rate = 0.05)
{
    std::uniform_real_distribution<double> exponent(-3.0, 3.0);
    std::bernoulli_distribution infinite(infinity_rate);
    RawMatrix raw(n, std::vector<double>(n, kInfinity));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = infinite(rng) ? kInfinity : std::pow(10.0, exponent(rng));
            raw[i][j] = v;
            raw[j][i] = v;
        }
    }
    return validate(raw);
}

}  // namespace affcurve
