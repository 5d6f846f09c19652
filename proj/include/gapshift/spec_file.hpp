#ifndef GAPSHIFT_SPEC_FILE_HPP_
#define GAPSHIFT_SPEC_FILE_HPP_

#include <cstdint>
#include <string>

#include "gapshift/language.hpp"
#include "gapshift/shift_spec.hpp"

namespace gapshift {

// Solver knobs a spec file may override; absent fields keep these
// defaults.
struct SolverOptions {
  double tol = 1e-10;
  long long max_depth = 1 << 14;
  double mass_tol = 1e-9;
  unsigned long long enumeration_budget = kDefaultEnumerationBudget;
  std::uint64_t seed = 0;
};

// A parsed shift-spec document: the (S, w) pair plus solver options.
struct SpecFile {
  ShiftSpec shift;
  SolverOptions options;
};

// Parses the JSON document format described in schema/spec-file.md.
// Strict: unknown fields, wrong types, and out-of-range values all throw
// SpecParseError.
SpecFile parse_spec_text(const std::string& text);

// Reads and parses a spec file from disk.
SpecFile load_spec_file(const std::string& path);

// Serializes back to the canonical document form (normalized gap set,
// minimal period, defaults materialized).  Reparsing the output yields an
// equivalent SpecFile, and serialization is idempotent from then on.
std::string spec_to_json_text(const SpecFile& spec);

// The named membership predicates usable in spec files: "primes" and
// "powers-of-2" (powers include 2^0 = 1).
GapSet make_named_predicate(const std::string& name,
                            long long enumeration_bound);

}  // namespace gapshift

#endif  // GAPSHIFT_SPEC_FILE_HPP_
