#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace compositedp {

// The library never owns a global generator: every sampling routine consumes
// an injected UniformStream, so runs replay deterministically from a seed and
// each thread owns its own stream.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1).
    double next() {
        return std::generate_canonical<double, 53>(engine_);
    }

private:
    std::mt19937_64 engine_;
};

// Stable 64-bit FNV-1a, used to derive per-cell seeds from string keys so
// parallel and serial benchmark runs agree.
inline std::uint64_t fnv1a64(const std::string &s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace compositedp
