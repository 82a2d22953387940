#pragma once

#include <cstdint>
#include <random>

#include "scig/types.hpp"

namespace scig {

/// Seeded standard-normal stream. Uses Box-Muller on top of mt19937_64 so
/// that a seed reproduces the same stream on one platform independently of
/// the standard library's distribution internals.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double next();
    Vec vector(int n);

    /// uniform in [0, 1)
    double uniform();

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace scig
