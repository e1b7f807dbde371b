// Copyright 2026 The Autobid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace autobid {

// Absolute tolerance for money/value comparisons at the scales this library
// works with (item values in single digits, budgets up to a few hundred).
inline constexpr double kMoneyTol = 1e-9;

// Tolerance for identities that are exact up to rounding.
inline constexpr double kExactTol = 1e-12;

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

/// Extended real with explicit +inf / -inf states.
///
/// Utilities and ROIs use the sentinels to encode "constraint violated"
/// (-inf) and "zero payment" (+inf). Arithmetic on sentinels is not a
/// meaningful operation in this model, so ExtReal deliberately has no
/// operators beyond ordering; callers unwrap with value() which throws on a
/// sentinel.
class ExtReal {
 public:
  ExtReal() : state_(State::kFinite), v_(0.0) {}

  static ExtReal finite(double v) {
    if (!std::isfinite(v)) throw InternalError("ExtReal::finite on non-finite value");
    ExtReal r;
    r.state_ = State::kFinite;
    r.v_ = v;
    return r;
  }
  static ExtReal pos_inf() {
    ExtReal r;
    r.state_ = State::kPosInf;
    return r;
  }
  static ExtReal neg_inf() {
    ExtReal r;
    r.state_ = State::kNegInf;
    return r;
  }

  bool is_finite() const { return state_ == State::kFinite; }
  bool is_pos_inf() const { return state_ == State::kPosInf; }
  bool is_neg_inf() const { return state_ == State::kNegInf; }

  double value() const {
    if (!is_finite()) throw InternalError("ExtReal::value on sentinel");
    return v_;
  }

  // Finite value, or +-HUGE_VAL; for printing and serialization only.
  double as_double() const {
    if (is_pos_inf()) return HUGE_VAL;
    if (is_neg_inf()) return -HUGE_VAL;
    return v_;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.state_ != b.state_) return false;
    return a.state_ != State::kFinite || a.v_ == b.v_;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.state_ == b.state_)
      return a.state_ == State::kFinite && a.v_ < b.v_;
    if (a.is_neg_inf()) return true;
    if (b.is_neg_inf()) return false;
    return b.is_pos_inf();
  }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

 private:
  enum class State { kNegInf, kFinite, kPosInf };
  State state_;
  double v_ = 0.0;
};

inline bool approx_eq(double a, double b, double tol = kMoneyTol) {
  return std::fabs(a - b) <= tol;
}

}  // namespace autobid
