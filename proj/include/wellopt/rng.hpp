#pragma once

#include <cstdint>
#include <random>

namespace wellopt {

// Source of uniform draws used by the evolutionary operators. Abstract so
// tests can script exact draw sequences.
class UniformStream {
 public:
  virtual ~UniformStream() = default;

  // Uniform real in [0, 1).
  virtual double next_u01() = 0;

  // Uniform integer in [lo, hi], inclusive.
  virtual int next_int(int lo, int hi) = 0;
};

// Deterministic seeded stream. Identical seed gives an identical sequence
// of draws; the mapping from engine output to values is fixed here rather
// than delegated to distribution objects so streams are stable across
// standard library versions.
class RngStream final : public UniformStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  double next_u01() override {
    // 53 high bits -> double in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  int next_int(int lo, int hi) override;

  // Standard normal via Box-Muller; consumes two uniform draws.
  double next_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace wellopt
