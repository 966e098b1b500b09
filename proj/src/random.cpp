#include "sensorctl/random.hpp"

namespace sensorctl {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream)
    : gen_(splitmix64(splitmix64(master_seed) ^ splitmix64(stream * 0xD1342543DE82EF95ull + 1))) {}

std::uint64_t Rng::raw() { return gen_(); }

double Rng::uniform() {
    // 53-bit mantissa in [0, 1)
    return (gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    // Inverse CDF on an open-interval uniform keeps the stream portable.
    const double u = ((gen_() >> 11) + 0.5) * 0x1.0p-53;
    return normal_quantile(u);
}

Vec Rng::normal_vec(Eigen::Index k) {
    Vec v(k);
    for (Eigen::Index i = 0; i < k; ++i) v[i] = normal();
    return v;
}

}  // namespace sensorctl
