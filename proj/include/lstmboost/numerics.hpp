#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lstmboost {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  static Matrix identity(std::size_t n);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Logistic function, evaluated on the branch that cannot overflow.
double sigmoid(double x) noexcept;
double tanh_act(double x) noexcept;

/// Returns W*x + U*h + b. Throws ConfigError naming the operand whose shape
/// does not conform.
Vector affine(const Matrix& W, std::span<const double> x, const Matrix& U,
              std::span<const double> h, std::span<const double> b);

/// Deterministic generator: xoshiro256** with its state expanded from a
/// 64-bit seed by SplitMix64. Streams are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept;
  /// Uniform in [lo, hi). Throws ArgumentError unless lo < hi.
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller (the second variate is discarded).
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

double rng_uniform(Rng& state, double lo, double hi);

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm_squared(std::span<const double> a);

}  // namespace lstmboost
