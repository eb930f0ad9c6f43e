#pragma once

#include <gmpxx.h>

#include <string>

#include "nhrm/table.hpp"

namespace nhrm {

using Rational = mpq_class;
using RationalTable = Table<Rational>;
using RealTable = Table<double>;

Rational pow_int(const Rational& x, unsigned k);
double pow_int(double x, unsigned k);

/// (k-1)!! for even k >= 2, i.e. E g^k for a standard Gaussian g. Zero for odd k.
Rational gaussian_moment(unsigned k);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

RealTable to_real(const RationalTable& t);
std::string to_string(const Rational& q);

}  // namespace nhrm
