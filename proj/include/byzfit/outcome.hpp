#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace byzfit {

// Algorithmic failure kinds. Contract violations (bad dimensions, mismatched
// fields, malformed config) throw std::invalid_argument instead; these codes
// are reserved for outcomes a correct caller can legitimately hit.
enum class Fail {
  Infeasible,
  NotDivisible,
  TooManyErrors,
  Exhausted,
  BudgetExceeded,
  NoDegreeFits,
  InsufficientCleanData,
  NumericalFailure,
  InvalidInput,
};

const char* fail_name(Fail f);

struct Failure {
  Fail code;
  std::string detail;
};

// Minimal expected-style carrier: a value or a Failure.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : v_(std::move(value)) {}
  Outcome(Failure f) : v_(std::move(f)) {}
  Outcome(Fail code, std::string detail = {})
      : v_(Failure{code, std::move(detail)}) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  T& value() & {
    require_ok();
    return std::get<T>(v_);
  }
  const T& value() const& {
    require_ok();
    return std::get<T>(v_);
  }
  T&& take() && {
    require_ok();
    return std::get<T>(std::move(v_));
  }

  const Failure& failure() const {
    if (ok()) throw std::logic_error("Outcome holds a value, not a failure");
    return std::get<Failure>(v_);
  }
  Fail code() const { return failure().code; }

 private:
  void require_ok() const {
    if (!ok()) {
      const Failure& f = std::get<Failure>(v_);
      throw std::logic_error(std::string("unchecked failed Outcome: ") +
                             fail_name(f.code) +
                             (f.detail.empty() ? "" : ": " + f.detail));
    }
  }
  std::variant<T, Failure> v_;
};

}  // namespace byzfit
