#pragma once

#include <string>
#include <string_view>

namespace nhrm {

/// Exponent of an l_p / Schatten-p norm: a finite p >= 1 or infinity.
class PNorm {
 public:
  /// Throws BadP unless p is finite and >= 1.
  static PNorm finite(double p);
  static PNorm infinity() noexcept { return PNorm(0.0, true); }
  /// Accepts a decimal number or one of "inf", "infinity", "∞".
  static PNorm parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  /// +inf for the infinite exponent.
  double value() const noexcept;
  /// True when finite and an integer.
  bool is_integer() const noexcept;
  std::string to_string() const;

  bool operator==(const PNorm&) const = default;

 private:
  PNorm(double p, bool infinite) : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

}  // namespace nhrm
