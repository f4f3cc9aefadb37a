#ifndef CURV_COMMON_HPP
#define CURV_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace curv {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands live on spaces of different dimension or kind.
class dimension_mismatch : public error {
 public:
  using error::error;
};

/// Input violates a structural requirement (symmetry, quaternion relation, ...).
class validation_error : public error {
 public:
  using error::error;
};

/// Mutually inconsistent generator entries in the same symmetry orbit.
class conflict_error : public error {
 public:
  using error::error;
};

/// Request is outside the supported parameter range.
class unsupported_error : public error {
 public:
  using error::error;
};

struct Tolerances {
  double symmetry = 1e-9;    // relative, identity/symmetry validation
  double spectrum = 1e-7;    // eigenvalue multiset comparison, scaled by max |eigenvalue|
  double rank = 1e-9;        // relative singular value cutoff for subspace ranks
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Deterministic 64-bit stream (SplitMix64). Used everywhere randomness is
/// needed so that runs are reproducible bit-for-bit across platforms;
/// std::normal_distribution is implementation-defined and never used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0,1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on the deterministic uniform stream.
  double next_normal();

  /// Stream for sample `index` of a sampling run; decouples parallel order.
  static Rng for_sample(std::uint64_t seed, std::uint64_t index) {
    Rng mixer(seed ^ (0xA0761D6478BD642Full * (index + 1)));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace curv

#endif
