#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace edgedom {

// Natural number extended with an absorbing infinity.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t value) : value_(value) {}  // NOLINT

  static constexpr ExtNat infinity() { return ExtNat(kInfRaw); }

  constexpr bool is_finite() const { return value_ != kInfRaw; }
  constexpr bool is_infinite() const { return value_ == kInfRaw; }

  // Only meaningful when finite.
  constexpr std::uint64_t value() const { return value_; }

  constexpr auto operator<=>(const ExtNat&) const = default;

  friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtNat(a.value_ + b.value_);
  }
  constexpr ExtNat& operator+=(ExtNat other) { return *this = *this + other; }

  std::string to_string() const {
    return is_finite() ? std::to_string(value_) : std::string("inf");
  }

 private:
  static constexpr std::uint64_t kInfRaw =
      std::numeric_limits<std::uint64_t>::max();
  std::uint64_t value_ = 0;
};

inline constexpr ExtNat kInf = ExtNat::infinity();

inline std::ostream& operator<<(std::ostream& os, ExtNat x) {
  return os << x.to_string();
}

}  // namespace edgedom
