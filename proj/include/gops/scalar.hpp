// Copyright 2026 The GOPS Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GOPS_SCALAR_HPP_
#define GOPS_SCALAR_HPP_

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace gops {

// Exact rational scalar. GMP keeps it normalized (gcd 1, positive denominator).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

enum class Arithmetic : std::uint8_t { kFloat64 = 0, kRational = 1 };

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr Arithmetic kArithmetic = Arithmetic::kFloat64;
  // Pivot selection, saddle comparisons and feasibility.
  static constexpr double tolerance() { return 1e-9; }
  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr Arithmetic kArithmetic = Arithmetic::kRational;
  static Rational tolerance() { return Rational(0); }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static std::string to_string(const Rational& x) { return x.str(); }
};

template <typename Scalar>
double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

template <typename Scalar>
Scalar tolerance() {
  return ScalarTraits<Scalar>::tolerance();
}

inline const char* arithmetic_name(Arithmetic a) {
  return a == Arithmetic::kFloat64 ? "float64" : "rational";
}

}  // namespace gops

#endif  // GOPS_SCALAR_HPP_
