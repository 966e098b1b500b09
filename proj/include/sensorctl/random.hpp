#ifndef SENSORCTL_RANDOM_HPP
#define SENSORCTL_RANDOM_HPP

#include <cstdint>
#include <random>

#include "sensorctl/common.hpp"

namespace sensorctl {

// Deterministic random stream. Streams are derived from a master seed and a
// stream id (trial index), so independent trials can be generated in any
// order and still reproduce bit-for-bit. Normal variates go through the
// inverse CDF so the sequence does not depend on the standard library's
// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0);

    double uniform();                 // [0, 1)
    double normal();                  // N(0, 1)
    Vec normal_vec(Eigen::Index k);
    std::uint64_t raw();

private:
    std::mt19937_64 gen_;
};

}  // namespace sensorctl

#endif
