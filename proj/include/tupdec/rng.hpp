#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace tupdec {

// Counter-based deterministic RNG (SplitMix64 core).  We avoid the standard
// distributions on purpose: their output differs between standard library
// implementations, and decomposition results must be reproducible from a
// seed alone.  Streams for recursive work are derived from the seed and the
// recursion path, never from consumption order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed + 0x9e3779b97f4a7c15ull)) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53-bit resolution.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller (libm only, stable per platform).
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> cgauss() { return {gauss(), gauss()}; }

    // Independent stream for child index i of the current recursion node.
    // Derived from the node key only, so sibling consumption cannot skew it.
    Rng child(std::uint64_t i) const {
        Rng r(0);
        r.state_ = mix(state_ ^ ((i + 1) * 0xd1342543de82ef95ull));
        return r;
    }

    std::uint64_t key() const { return state_; }

  private:
    std::uint64_t state_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace tupdec
