#include "lstmboost/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lstmboost/error.hpp"

namespace lstmboost {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double sigmoid(double x) noexcept {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double tanh_act(double x) noexcept { return std::tanh(x); }

namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Vector affine(const Matrix& W, std::span<const double> x, const Matrix& U,
              std::span<const double> h, std::span<const double> b) {
  const std::size_t H = b.size();
  if (W.rows() != H || W.cols() != x.size()) {
    throw ConfigError("affine: input weights W is " + shape(W.rows(), W.cols()) + ", expected " +
                      shape(H, x.size()));
  }
  if (U.rows() != H || U.cols() != H) {
    throw ConfigError("affine: recurrent weights U is " + shape(U.rows(), U.cols()) +
                      ", expected " + shape(H, H));
  }
  if (h.size() != H) {
    throw ConfigError("affine: hidden state h has length " + std::to_string(h.size()) +
                      ", expected " + std::to_string(H));
  }
  Vector out(b.begin(), b.end());
  for (std::size_t r = 0; r < H; ++r) {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += W(r, k) * x[k];
    for (std::size_t k = 0; k < H; ++k) acc += U(r, k) * h[k];
    out[r] += acc;
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) noexcept {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t Rng::next_u64() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw ArgumentError("uniform: requires lo < hi, got [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + ")");
  }
  const double v = lo + (hi - lo) * next_unit();
  // lo + span*u can round up to hi when the span is tiny relative to lo.
  return v < hi ? v : std::nextafter(hi, lo);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ArgumentError("below: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

double Rng::normal() noexcept {
  const double u1 = 1.0 - next_unit();  // (0, 1]
  const double u2 = next_unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double rng_uniform(Rng& state, double lo, double hi) { return state.uniform(lo, hi); }

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double l2_norm_squared(std::span<const double> a) { return dot(a, a); }

}  // namespace lstmboost
