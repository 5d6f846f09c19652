#include "gapshift/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapshift/dynamics.hpp"
#include "gapshift/entropy.hpp"
#include "gapshift/errors.hpp"
#include "gapshift/language.hpp"
#include "gapshift/rng.hpp"
#include "gapshift/spec_file.hpp"
#include "gapshift/word.hpp"

namespace gapshift {

namespace {

using nlohmann::ordered_json;

// Defaults for cmd_check; documented in schema/spec-file.md.
constexpr std::uint64_t kCheckSyncTrials = 1000;
constexpr int kCheckSyncMaxLen = 32;
constexpr int kCheckBridgePairs = 200;
constexpr std::size_t kCheckFactorCap = 6;

int emit(const std::string& text, const std::string& out_path,
         std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "gapshift: cannot open " << out_path << " for writing\n";
    return 1;
  }
  file << text;
  file.flush();
  if (!file.good()) {
    err << "gapshift: write to " << out_path << " failed\n";
    return 1;
  }
  return 0;
}

std::string format_csv_double(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

int cmd_entropy(const SpecFile& sf, bool bits, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  SolverConfig cfg{sf.options.tol, sf.options.max_depth};
  EntropyResult r = solve_entropy(sf.shift, cfg);

  double h_lo = r.h_lo;
  double h_hi = r.h_hi;
  if (bits) {
    // Outward rounding survives the unit change.
    h_lo = std::nextafter(h_lo / std::log(2.0),
                          -std::numeric_limits<double>::infinity());
    h_hi = std::nextafter(h_hi / std::log(2.0),
                          std::numeric_limits<double>::infinity());
  }

  ordered_json doc;
  doc["lambda_lo"] = r.lambda.lo;
  doc["lambda_hi"] = r.lambda.hi;
  doc["h_lo"] = h_lo;
  doc["h_hi"] = h_hi;
  doc["truncation_depth"] = r.lambda.truncation_depth;
  doc["tail_bound_kind"] = to_string(r.lambda.tail_bound_kind);

  int rc = emit(doc.dump(2) + "\n", out_path, out, err);
  if (rc != 0) return rc;
  if (!r.certified) {
    err << "gapshift: uncertified: the series enclosure at depth "
        << r.lambda.truncation_depth
        << " stayed too wide to locate the root at the requested tolerance"
           " (raise GAPSHIFT_MAX_DEPTH or the gap set's enumeration bound);"
           " the reported interval is best-effort\n";
    return 2;
  }
  return 0;
}

int cmd_count(const SpecFile& sf, long long n_max, bool enumerate,
              const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  std::ostringstream csv;
  csv << (enumerate ? "n,count,empirical_entropy,enumerated_count\n"
                    : "n,count,empirical_entropy\n");
  long long first_mismatch = 0;
  for (long long n = 1; n <= n_max; ++n) {
    BigInt dp = count_words(sf.shift, static_cast<std::size_t>(n));
    csv << n << ',' << dp << ','
        << format_csv_double(
               empirical_entropy(sf.shift, static_cast<std::size_t>(n)));
    if (enumerate) {
      auto words = enumerate_words(sf.shift, static_cast<std::size_t>(n),
                                   sf.options.enumeration_budget);
      csv << ',' << words.size();
      if (first_mismatch == 0 && BigInt(words.size()) != dp) {
        first_mismatch = n;
      }
    }
    csv << '\n';
  }
  int rc = emit(csv.str(), out_path, out, err);
  if (rc != 0) return rc;
  if (first_mismatch != 0) {
    err << "gapshift: counting and enumeration disagree at n="
        << first_mismatch << "\n";
    return 3;
  }
  return 0;
}

int cmd_complexity(const SpecFile& sf, long long n_max,
                   const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
  std::ostringstream csv;
  csv << "n,phi\n";
  for (long long n = 0; n <= n_max; ++n) {
    csv << n << ','
        << sf.shift.factor_source.complexity(static_cast<std::size_t>(n))
        << '\n';
  }
  return emit(csv.str(), out_path, out, err);
}

// A short allowed word "f1 0 f2" with factor halves of admissible head and
// tail lengths; used to feed the bridge sampler.
Word random_two_block_word(const ShiftSpec& spec, Rng& rng) {
  std::size_t cap = kCheckFactorCap;
  if (auto max = spec.gap_set.max_element()) {
    cap = std::min<std::size_t>(cap, static_cast<std::size_t>(*max));
  }
  auto half = [&](void) -> Word {
    std::size_t len = rng.uniform_index(cap + 1);
    if (len == 0) return Word();
    if (spec.factor_source.kind() == FactorSource::Kind::FullShift) {
      Word f;
      for (std::size_t i = 0; i < len; ++i) {
        f.push_back(static_cast<char>(
            1 + rng.uniform_index(
                    static_cast<std::size_t>(spec.alphabet_size()))));
      }
      return f;
    }
    const auto& factors = spec.factor_source.factor_set(len);
    return factors[rng.uniform_index(factors.size())];
  };
  Word u = half();
  u.push_back('\0');
  Word v = half();
  u += v;
  return u;
}

int cmd_check(const SpecFile& sf, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  MixingVerdict mv = is_mixing(sf.shift);

  ordered_json doc;
  switch (mv.status) {
    case MixingVerdict::Status::Mixing:
      doc["mixing"] = "yes";
      break;
    case MixingVerdict::Status::NotMixing:
      doc["mixing"] = "no";
      break;
    case MixingVerdict::Status::UnknownUpTo:
      doc["mixing"] = "unknown";
      doc["probe_bound"] = mv.probe_bound;
      break;
  }
  doc["gcd"] = mv.gcd_witness;
  if (!mv.certificate.empty()) doc["gcd_certificate"] = mv.certificate;

  SynchronizationReport sync = verify_synchronization(
      sf.shift, kCheckSyncTrials, kCheckSyncMaxLen, sf.options.seed);
  doc["synchronization"] = {{"trials", sync.trials},
                            {"passes", sync.passes}};

  Rng rng(sf.options.seed ^ 0x9e3779b97f4a7c15ULL);
  int bridged = 0;
  for (int i = 0; i < kCheckBridgePairs; ++i) {
    Word u = random_two_block_word(sf.shift, rng);
    Word v = random_two_block_word(sf.shift, rng);
    try {
      bridge(sf.shift, u, v);
      ++bridged;
    } catch (const Error&) {
    }
  }
  doc["irreducibility"] = {{"pairs", kCheckBridgePairs},
                          {"bridged", bridged}};

  int rc = emit(doc.dump(2) + "\n", out_path, out, err);
  if (rc != 0) return rc;
  if (bridged != kCheckBridgePairs) {
    err << "gapshift: " << (kCheckBridgePairs - bridged)
        << " sampled pairs could not be bridged\n";
    return 3;
  }
  return 0;
}

int cmd_sample(const SpecFile& sf, long long length,
               const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  SolverConfig cfg{sf.options.tol, sf.options.max_depth};
  EntropyResult er = solve_entropy(sf.shift, cfg);
  GapDistribution gd = gap_distribution(sf.shift, er, sf.options.mass_tol);
  Word sample = sample_mme(sf.shift, gd, static_cast<std::size_t>(length),
                           sf.options.seed);

  long long zeros = 0;
  for (char c : sample) {
    if (c == '\0') ++zeros;
  }
  // Histogram of complete gaps only: runs strictly between two markers.
  std::map<long long, long long> hist;
  std::size_t pos = sample.find('\0');
  while (pos != Word::npos) {
    std::size_t next = sample.find('\0', pos + 1);
    if (next == Word::npos) break;
    ++hist[static_cast<long long>(next - pos - 1)];
    pos = next;
  }

  ordered_json stats;
  stats["length"] = sample.size();
  stats["zero_frequency_empirical"] =
      static_cast<double>(zeros) / static_cast<double>(sample.size());
  stats["zero_frequency_kac"] = gd.zero_frequency;
  ordered_json hist_doc = ordered_json::object();
  for (const auto& [gap, count] : hist) {
    hist_doc[std::to_string(gap)] = count;
  }
  stats["gap_histogram"] = hist_doc;

  std::string text = format_word(sample) + "\n" + stats.dump(2) + "\n";
  return emit(text, out_path, out, err);
}

int cmd_compare(const SpecFile& sf, long long n_max,
                const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  SolverConfig cfg{sf.options.tol, sf.options.max_depth};
  EntropyResult er = solve_entropy(sf.shift, cfg);

  std::ostringstream csv;
  csv << "n,count,empirical_entropy,h_lo,h_hi\n";
  for (long long n = 1; n <= n_max; ++n) {
    csv << n << ',' << count_words(sf.shift, static_cast<std::size_t>(n))
        << ','
        << format_csv_double(
               empirical_entropy(sf.shift, static_cast<std::size_t>(n)))
        << ',' << format_csv_double(er.h_lo) << ','
        << format_csv_double(er.h_hi) << '\n';
  }
  int rc = emit(csv.str(), out_path, out, err);
  if (rc != 0) return rc;
  if (!er.certified) {
    err << "gapshift: entropy column is an uncertified best-effort"
           " enclosure\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"S-gap and (S,w)-gap shift toolkit"};
  app.name("gapshift");
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_path;
  double tol = 0.0;        // 0 = keep the spec file's value
  double mass_tol = 0.0;   // likewise
  long long seed = -1;     // likewise
  long long n_max = 10;
  long long length = 1000;
  bool enumerate = false;
  bool bits = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "shift spec JSON document")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_path,
                    "write the report to this file instead of stdout");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "target width of the lambda enclosure")
        ->check(CLI::PositiveNumber);
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_n_max = [&](CLI::App* sub) {
    sub->add_option("--n-max", n_max, "largest word length, default 10")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* entropy =
      app.add_subcommand("entropy", "certified entropy enclosure");
  common(entropy);
  add_tol(entropy);
  entropy->add_flag("--bits", bits, "report h in log base 2 units");

  CLI::App* count =
      app.add_subcommand("count", "language counts by word length");
  common(count);
  add_n_max(count);
  count->add_flag("--enumerate", enumerate,
                  "cross-check the counts against explicit enumeration");

  CLI::App* check =
      app.add_subcommand("check", "mixing, synchronization, irreducibility");
  common(check);
  add_seed(check);

  CLI::App* sample =
      app.add_subcommand("sample", "draw from the maximal-entropy gap process");
  common(sample);
  add_tol(sample);
  add_seed(sample);
  sample->add_option("--length", length, "symbols to emit, default 1000")
      ->check(CLI::PositiveNumber);
  sample->add_option("--mass-tol", mass_tol,
                     "gap law truncation mass, default from the spec file")
      ->check(CLI::PositiveNumber);

  CLI::App* complexity =
      app.add_subcommand("complexity", "factor counts of w by length");
  common(complexity);
  add_n_max(complexity);

  CLI::App* compare =
      app.add_subcommand("compare",
                         "empirical entropy vs the certified enclosure");
  common(compare);
  add_tol(compare);
  add_n_max(compare);

  try {
    // CLI11's vector overload consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    SpecFile sf = load_spec_file(spec_path);
    if (tol > 0) sf.options.tol = tol;
    if (mass_tol > 0) sf.options.mass_tol = mass_tol;
    if (seed >= 0) sf.options.seed = static_cast<std::uint64_t>(seed);
    if (const char* env = std::getenv("GAPSHIFT_MAX_DEPTH")) {
      char* end = nullptr;
      long long depth = std::strtoll(env, &end, 10);
      if (end == env || *end != '\0' || depth < 1) {
        err << "gapshift: GAPSHIFT_MAX_DEPTH must be a positive integer\n";
        return 1;
      }
      sf.options.max_depth = depth;
    }

    if (app.got_subcommand(entropy))
      return cmd_entropy(sf, bits, out_path, out, err);
    if (app.got_subcommand(count))
      return cmd_count(sf, n_max, enumerate, out_path, out, err);
    if (app.got_subcommand(check)) return cmd_check(sf, out_path, out, err);
    if (app.got_subcommand(sample))
      return cmd_sample(sf, length, out_path, out, err);
    if (app.got_subcommand(complexity))
      return cmd_complexity(sf, n_max, out_path, out, err);
    if (app.got_subcommand(compare))
      return cmd_compare(sf, n_max, out_path, out, err);
    err << "gapshift: no subcommand\n";
    return 1;
  } catch (const SynchronizationViolation& e) {
    err << "gapshift: " << e.what() << "\n";
    return 3;
  } catch (const DepthExhausted& e) {
    err << "gapshift: " << e.what() << "\n";
    return 2;
  } catch (const QueryBeyondBound& e) {
    err << "gapshift: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "gapshift: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "gapshift: internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gapshift
