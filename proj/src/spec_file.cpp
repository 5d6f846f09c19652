#include "gapshift/spec_file.hpp"

#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapshift/errors.hpp"

namespace gapshift {
namespace {

using nlohmann::json;

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) {
      throw SpecParseError("unknown field '" + key + "' in " + where);
    }
  }
}

const json& require(const json& obj, const char* key,
                    const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SpecParseError("missing field '" + std::string(key) + "' in " +
                         where);
  }
  return *it;
}

long long as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw SpecParseError(where + " must be an integer");
  }
  return v.get<long long>();
}

double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw SpecParseError(where + " must be a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw SpecParseError(where + " must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw SpecParseError(where + " must be a boolean");
  return v.get<bool>();
}

std::vector<long long> as_int_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw SpecParseError(where + " must be an array");
  std::vector<long long> out;
  for (const auto& e : v) out.push_back(as_int(e, "element of " + where));
  return out;
}

GapSet parse_gap_set(const json& obj) {
  if (!obj.is_object()) throw SpecParseError("gap_set must be an object");
  const std::string kind = as_string(require(obj, "kind", "gap_set"),
                                     "gap_set.kind");
  if (kind == "finite") {
    expect_keys(obj, "gap_set", {"kind", "elements"});
    return GapSet::finite(
        as_int_list(require(obj, "elements", "gap_set"), "gap_set.elements"));
  }
  if (kind == "eventually_periodic") {
    expect_keys(obj, "gap_set", {"kind", "sporadic", "progressions"});
    std::vector<long long> sporadic;
    if (obj.contains("sporadic")) {
      sporadic = as_int_list(obj["sporadic"], "gap_set.sporadic");
    }
    std::vector<Progression> progressions;
    const json& plist = require(obj, "progressions", "gap_set");
    if (!plist.is_array()) {
      throw SpecParseError("gap_set.progressions must be an array");
    }
    for (const auto& p : plist) {
      if (!p.is_object()) {
        throw SpecParseError("progression entries must be objects");
      }
      expect_keys(p, "progression", {"start", "step"});
      Progression prog;
      prog.start = as_int(require(p, "start", "progression"), "start");
      prog.step = as_int(require(p, "step", "progression"), "step");
      progressions.push_back(prog);
    }
    return GapSet::eventually_periodic(std::move(sporadic),
                                       std::move(progressions));
  }
  if (kind == "predicate") {
    expect_keys(obj, "gap_set", {"kind", "name", "enumeration_bound"});
    return make_named_predicate(
        as_string(require(obj, "name", "gap_set"), "gap_set.name"),
        as_int(require(obj, "enumeration_bound", "gap_set"),
               "gap_set.enumeration_bound"));
  }
  throw SpecParseError("unknown gap_set kind '" + kind + "'");
}

FactorSource parse_factor_source(const json& obj, int alphabet_size) {
  if (!obj.is_object()) {
    throw SpecParseError("factor_source must be an object");
  }
  const std::string kind =
      as_string(require(obj, "kind", "factor_source"), "factor_source.kind");
  if (kind == "periodic") {
    expect_keys(obj, "factor_source", {"kind", "word"});
    return FactorSource::periodic(
        parse_word(as_string(require(obj, "word", "factor_source"),
                             "factor_source.word"),
                   alphabet_size),
        alphabet_size);
  }
  if (kind == "substitution") {
    expect_keys(obj, "factor_source", {"kind", "rules", "seed", "primitive"});
    const json& rules_obj = require(obj, "rules", "factor_source");
    if (!rules_obj.is_object()) {
      throw SpecParseError("factor_source.rules must be an object");
    }
    std::map<Symbol, Word> rules;
    for (const auto& [key, value] : rules_obj.items()) {
      std::size_t pos = 0;
      int letter = 0;
      try {
        letter = std::stoi(key, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != key.size() || letter < 1 || letter > alphabet_size) {
        throw SpecParseError("rule key '" + key +
                             "' is not a letter of 1..k");
      }
      rules[static_cast<Symbol>(letter)] =
          parse_word(as_string(value, "rule image"), alphabet_size);
    }
    const long long seed =
        as_int(require(obj, "seed", "factor_source"), "factor_source.seed");
    if (seed < 1 || seed > alphabet_size) {
      throw SpecParseError("factor_source.seed outside 1..k");
    }
    const bool primitive = as_bool(require(obj, "primitive", "factor_source"),
                                   "factor_source.primitive");
    return FactorSource::substitution(std::move(rules),
                                      static_cast<Symbol>(seed), primitive,
                                      alphabet_size);
  }
  if (kind == "full_shift") {
    expect_keys(obj, "factor_source", {"kind"});
    return FactorSource::full_shift(alphabet_size);
  }
  throw SpecParseError("unknown factor_source kind '" + kind + "'");
}

SolverOptions parse_solver(const json& obj) {
  SolverOptions opts;
  if (!obj.is_object()) throw SpecParseError("solver must be an object");
  expect_keys(obj, "solver",
              {"tol", "max_depth", "mass_tol", "enumeration_budget", "seed"});
  if (obj.contains("tol")) {
    opts.tol = as_real(obj["tol"], "solver.tol");
    if (!(opts.tol > 0.0)) throw SpecParseError("solver.tol must be positive");
  }
  if (obj.contains("max_depth")) {
    opts.max_depth = as_int(obj["max_depth"], "solver.max_depth");
    if (opts.max_depth < 1) {
      throw SpecParseError("solver.max_depth must be positive");
    }
  }
  if (obj.contains("mass_tol")) {
    opts.mass_tol = as_real(obj["mass_tol"], "solver.mass_tol");
    if (!(opts.mass_tol > 0.0)) {
      throw SpecParseError("solver.mass_tol must be positive");
    }
  }
  if (obj.contains("enumeration_budget")) {
    long long budget =
        as_int(obj["enumeration_budget"], "solver.enumeration_budget");
    if (budget < 1) {
      throw SpecParseError("solver.enumeration_budget must be positive");
    }
    opts.enumeration_budget = static_cast<unsigned long long>(budget);
  }
  if (obj.contains("seed")) {
    long long seed = as_int(obj["seed"], "solver.seed");
    if (seed < 0) throw SpecParseError("solver.seed must be non-negative");
    opts.seed = static_cast<std::uint64_t>(seed);
  }
  return opts;
}

json gap_set_to_json(const GapSet& S) {
  json out;
  switch (S.kind()) {
    case GapSet::Kind::Finite:
      out["kind"] = "finite";
      out["elements"] = S.pre_period();
      break;
    case GapSet::Kind::EventuallyPeriodic: {
      out["kind"] = "eventually_periodic";
      out["sporadic"] = S.pre_period();
      json plist = json::array();
      for (long long f : S.residue_firsts()) {
        plist.push_back({{"start", f}, {"step", S.modulus()}});
      }
      out["progressions"] = std::move(plist);
      break;
    }
    case GapSet::Kind::Predicate:
      out["kind"] = "predicate";
      out["name"] = S.name();
      out["enumeration_bound"] = S.enumeration_bound();
      break;
  }
  return out;
}

json factor_source_to_json(const FactorSource& w) {
  json out;
  switch (w.kind()) {
    case FactorSource::Kind::Periodic:
      out["kind"] = "periodic";
      out["word"] = format_word(w.period_word());
      break;
    case FactorSource::Kind::Substitution: {
      out["kind"] = "substitution";
      json rules = json::object();
      for (const auto& [letter, image] : w.rules()) {
        rules[std::to_string(letter)] = format_word(image);
      }
      out["rules"] = std::move(rules);
      out["seed"] = static_cast<int>(w.seed());
      out["primitive"] = w.primitivity_verified();
      break;
    }
    case FactorSource::Kind::FullShift:
      out["kind"] = "full_shift";
      break;
  }
  return out;
}

}  // namespace

GapSet make_named_predicate(const std::string& name,
                            long long enumeration_bound) {
  if (name == "primes") {
    return GapSet::predicate(
        [](long long n) {
          if (n < 2) return false;
          for (long long d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
          }
          return true;
        },
        enumeration_bound, name, true);
  }
  if (name == "powers-of-2") {
    return GapSet::predicate(
        [](long long n) { return n >= 1 && (n & (n - 1)) == 0; },
        enumeration_bound, name, true);
  }
  throw SpecParseError("unknown predicate name '" + name + "'");
}

SpecFile parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecParseError("spec document must be an object");
  expect_keys(doc, "spec document",
              {"alphabet_size", "gap_set", "factor_source", "solver"});

  const long long k =
      as_int(require(doc, "alphabet_size", "spec document"), "alphabet_size");
  if (k < 1 || k > kMaxAlphabet) {
    throw SpecParseError("alphabet_size out of range 1.." +
                         std::to_string(kMaxAlphabet));
  }

  SpecFile spec{
      ShiftSpec{
          parse_gap_set(require(doc, "gap_set", "spec document")),
          parse_factor_source(require(doc, "factor_source", "spec document"),
                              static_cast<int>(k)),
      },
      SolverOptions{},
  };
  if (doc.contains("solver")) spec.options = parse_solver(doc["solver"]);
  return spec;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

std::string spec_to_json_text(const SpecFile& spec) {
  json doc;
  doc["alphabet_size"] = spec.shift.alphabet_size();
  doc["gap_set"] = gap_set_to_json(spec.shift.gap_set);
  doc["factor_source"] = factor_source_to_json(spec.shift.factor_source);
  doc["solver"] = {
      {"tol", spec.options.tol},
      {"max_depth", spec.options.max_depth},
      {"mass_tol", spec.options.mass_tol},
      {"enumeration_budget", spec.options.enumeration_budget},
      {"seed", spec.options.seed},
  };
  return doc.dump(2) + "\n";
}

}  // namespace gapshift
