#pragma once

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sepdec/core_types.hpp"

namespace testsup {

using sepdec::CMatrix;
using sepdec::Complex;
using sepdec::Error;
using sepdec::ErrorCode;
using sepdec::RVector;

// Two-row instance with lambda = (0.9, 0.1) and flat rows; NPT.
inline CMatrix w2_table() {
  const double hi = std::sqrt(0.45);
  const double lo = std::sqrt(0.05);
  CMatrix x(2, 2);
  x << Complex(hi, 0), Complex(hi, 0), Complex(lo, 0), Complex(lo, 0);
  return x;
}

inline sepdec::ClassParams w2() {
  return sepdec::ClassParams::validate(w2_table());
}

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a sepdec::Error");
  return ErrorCode::Internal;
}

inline double multiset_distance(RVector a, RVector b) {
  REQUIRE(a.size() == b.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testsup
