#pragma once

#include <cstdint>

namespace sbvsim {

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// k-th uniform variate in [0, 1) for a given seed; counter-based, so
/// evaluation order and parallel scheduling never change the stream.
double u01_from_counter(std::uint64_t seed, std::uint64_t counter);

/// Standard normal quantile (Wichura's AS241 rational approximation,
/// double precision). p in (0, 1); p <= 0 -> -inf, p >= 1 -> +inf.
double normal_quantile(double p);

} // namespace sbvsim
