#include "nhrm/pnorm.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "nhrm/error.hpp"

namespace nhrm {

PNorm PNorm::finite(double p) {
  if (!std::isfinite(p) || p < 1.0) throw Error(ErrorCode::BadP, "p must be finite and >= 1");
  return PNorm(p, false);
}

PNorm PNorm::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "\xE2\x88\x9E") return infinity();
  double p = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::BadP, "cannot parse p from '" + std::string(text) + "'");
  return finite(p);
}

double PNorm::value() const noexcept {
  return infinite_ ? std::numeric_limits<double>::infinity() : p_;
}

bool PNorm::is_integer() const noexcept { return !infinite_ && std::floor(p_) == p_; }

std::string PNorm::to_string() const {
  if (infinite_) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p_);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace nhrm
