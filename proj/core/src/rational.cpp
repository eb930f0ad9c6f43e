#include "nhrm/rational.hpp"

namespace nhrm {

Rational pow_int(const Rational& x, unsigned k) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), k);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

double pow_int(double x, unsigned k) {
  double result = 1.0;
  double base = x;
  while (k) {
    if (k & 1u) result *= base;
    base *= base;
    k >>= 1u;
  }
  return result;
}

Rational gaussian_moment(unsigned k) {
  if (k % 2 == 1) return 0;
  mpz_class acc = 1;
  for (unsigned j = k; j >= 2; j -= 2) acc *= (j - 1);
  return Rational(acc);
}

RealTable to_real(const RationalTable& t) {
  return t.map<double>([](const Rational& q) { return q.get_d(); });
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace nhrm
