#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rocsbb {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used to turn a master seed
// plus a stream index into well-separated engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for an independent substream. Every replicate/resample/dataset uses
// substream_seed(master, index), so results do not depend on how work is
// scheduled across threads.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  return splitmix64(s);
}

// Random stream with explicit sampling algorithms. The standard library's
// distribution objects are implementation-defined, so drawing through them
// would break the bit-reproducibility contract across toolchains; everything
// here is written out against raw mt19937_64 output.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Unit-rate exponential by inversion.
  double exponential() { return -std::log(uniform_pos()); }

  // Standard normal via Box-Muller. No cached spare: one value per call
  // keeps the draw count deterministic per call site.
  double normal() {
    double u1 = uniform_pos();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi_ * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  // Gamma(shape, rate 1) by Marsaglia-Tsang squeeze; the shape < 1 case is
  // boosted through Gamma(shape + 1).
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform_pos();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform_pos();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double gamma(double shape, double rate) { return gamma(shape) / rate; }

  double beta(double a, double b) {
    double x = gamma(a);
    double y = gamma(b);
    return x / (x + y);
  }

  double chi_square(double df) { return gamma(0.5 * df) * 2.0; }

  double student_t(double df) {
    double z = normal();
    double s = chi_square(df);
    return z / std::sqrt(s / df);
  }

private:
  static constexpr double pi_ = 3.14159265358979323846;
  std::mt19937_64 eng_;
};

}  // namespace rocsbb
