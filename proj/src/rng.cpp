#include "scig/rng.hpp"

#include <cmath>
#include <numbers>

namespace scig {

double GaussianSampler::uniform() {
    // 53 high bits of the engine output, uniform in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Vec GaussianSampler::vector(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = next();
    return v;
}

}  // namespace scig
