#ifndef GAPSHIFT_ERRORS_HPP_
#define GAPSHIFT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace gapshift {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A predicate-backed gap set was queried past its enumeration bound.
struct QueryBeyondBound : Error {
  QueryBeyondBound(long long n, long long bound)
      : Error("query at " + std::to_string(n) +
              " exceeds enumeration bound " + std::to_string(bound)),
        n(n),
        bound(bound) {}
  long long n;
  long long bound;
};

// Substitution rules failed the primitivity check (or were otherwise
// unusable for factor computation).
struct NotPrimitive : Error {
  explicit NotPrimitive(const std::string& msg) : Error(msg) {}
};

// A word handed to an extension routine is not a factor of w.
struct NotAFactor : Error {
  explicit NotAFactor(const std::string& msg) : Error(msg) {}
};

// A word handed to a language operation fails membership.
struct NotInLanguage : Error {
  explicit NotInLanguage(const std::string& msg) : Error(msg) {}
};

// Enumeration would exceed the configured word-count budget.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// The series evaluator could not certify a finite upper bound at the
// configured maximum truncation depth.
struct DivergentAt : Error {
  explicit DivergentAt(double lambda)
      : Error("no finite tail bound attainable at lambda = " +
              std::to_string(lambda)),
        lambda(lambda) {}
  double lambda;
};

// Certification ran out of depth (e.g. a predicate gap set's enumeration
// bound) before reaching the requested tolerance.
struct DepthExhausted : Error {
  explicit DepthExhausted(const std::string& msg) : Error(msg) {}
};

// Operation called on the wrong variant (e.g. a periodic-only fast path).
struct WrongVariant : Error {
  explicit WrongVariant(const std::string& msg) : Error(msg) {}
};

// The synchronization harness found a counterexample triple.  This
// falsifies the implementation, never the property.
struct SynchronizationViolation : Error {
  SynchronizationViolation(std::string left, std::string right,
                           std::string joined)
      : Error("synchronization violated: '" + left + "' + '" + right +
              "' -> '" + joined + "' rejected"),
        left(std::move(left)),
        right(std::move(right)),
        joined(std::move(joined)) {}
  std::string left, right, joined;
};

// Malformed spec file.
struct SpecParseError : Error {
  explicit SpecParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace gapshift

#endif  // GAPSHIFT_ERRORS_HPP_
