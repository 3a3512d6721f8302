#ifndef SAFEOCO_COMMON_HPP
#define SAFEOCO_COMMON_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace safeoco {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Thrown when an iterative routine fails to meet its stopping rule.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an oracle returns a non-finite value.
struct EvaluationFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a caller-side precondition is breached. Carries its own type
/// so the line search can report a validity breach distinctly from other
/// faults (it signals a problem upstream, not in the callee).
struct PreconditionViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// SplitMix64 step; used to derive per-round substream seeds so that sweeps
/// over different horizons share cost-draw prefixes.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Substream key for (seed, index). Index 0 is reserved for instance-level
/// draws; round t uses index t.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 1));
}

}  // namespace safeoco

#endif
