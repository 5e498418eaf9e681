#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stel {

/// Exact nonnegative rational kept in lowest terms. All comparisons go
/// through integer cross-multiplication; there is no floating point anywhere
/// on this path.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (num < 0 || den < 0) throw std::invalid_argument("rational must be nonnegative");
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const auto lhs = static_cast<__int128>(a.num_) * b.den_;
    const auto rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Canonical "p/q" form, e.g. "1/2", "0/1".
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

inline const Rational kZero{0, 1};
inline const Rational kHalf{1, 2};
inline const Rational kOne{1, 1};

/// Bit length of n in binary; by convention the bit length of 0 is 1.
inline std::size_t bit_length(std::uint64_t n) {
  return n == 0 ? 1 : static_cast<std::size_t>(std::bit_width(n));
}

}  // namespace stel
