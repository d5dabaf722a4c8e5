#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"
#include "riffle/decimal.hpp"
#include "riffle/descent_polynomials.hpp"
#include "riffle/equivalence.hpp"
#include "riffle/eulerian.hpp"
#include "riffle/mixing.hpp"
#include "riffle/sampler.hpp"
#include "riffle/transition.hpp"
#include "riffle/verify.hpp"

using namespace riffle;

namespace {

constexpr const char* tool_version = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "auto";
  unsigned workers = 0;
  int precision = 12;
  std::string output;
  bool quiet = false;
};

struct Result {
  std::vector<std::string> header;
  std::vector<Row> rows;
  // Replaces the row array in JSON output when set.
  std::optional<std::string> json;
  bool json_default = false;
  int exit_code = 0;
};

Deck deck_arg(const std::string& text, const char* what) {
  try {
    return parse_deck(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

SortedSpec spec_arg(const std::string& text) {
  try {
    return spec_of(parse_deck(text));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--spec: ") + e.what());
  }
}

bool is_sorted_deck(const Deck& d) {
  auto l = d.labels();
  return std::is_sorted(l.begin(), l.end()) && l.front() == 1 && l.back() == d.max_label();
}

std::optional<SortedSpec> sorted_spec(const Deck& d) {
  if (!is_sorted_deck(d)) return std::nullopt;
  try {
    return spec_of(d);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// Shuffles from `from` to `to`, by whichever route applies.
DescentPolynomial descent_poly(const Deck& from, const Deck& to, bool brute) {
  if (brute) return brute_force_poly(from, to);
  if (auto s = sorted_spec(from)) return poly_from_sorted(*s, to);
  if (auto s = sorted_spec(to)) return poly_to_sorted(from, *s);
  throw UsageError("one endpoint must be a sorted deck 1^n1 2^n2 ... unless --brute-force is given");
}

std::pair<unsigned, unsigned> riffle_range(const std::string& text) {
  try {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
      unsigned m = static_cast<unsigned>(std::stoul(text));
      return {m, m};
    }
    unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
    unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
    if (lo > hi) throw UsageError("--riffles: empty range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--riffles: expected m or lo..hi, got '" + text + "'");
  }
}

Orientation orientation_arg(const std::string& s) {
  return s == "from-sorted" ? Orientation::from_sorted : Orientation::to_sorted;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RIFFLE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw UsageError(std::string("RIFFLE_SEED is not an integer: ") + env);
    }
  }
  return 0;
}

void error_line(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riffle shuffles of decks with repeated cards"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("--workers", g.workers, "Monte Carlo worker threads (0 = all cores)");
  app.add_option("--precision", g.precision, "Significant digits in decimals")->check(CLI::Range(1, 60));
  app.add_option("--output", g.output, "Write the result with its run manifest to this file");
  app.add_flag("--quiet", g.quiet, "No progress lines");
  app.set_version_flag("--version", tool_version);

  std::optional<std::uint64_t> seed_opt;
  std::function<Result()> run;

  // descent-poly
  auto* dp = app.add_subcommand("descent-poly", "Descent polynomial of the shuffles between two decks");
  std::string dp_from, dp_to;
  bool dp_brute = false;
  dp->add_option("--from", dp_from)->required();
  dp->add_option("--to", dp_to)->required();
  dp->add_flag("--brute-force", dp_brute, "Enumerate all n! permutations");
  dp->callback([&] {
    run = [&] {
      DescentPolynomial p = descent_poly(deck_arg(dp_from, "--from"), deck_arg(dp_to, "--to"), dp_brute);
      Result r;
      r.header = {"d", "count"};
      std::string arr;
      for (std::size_t d = 0; d < p.coeffs().size(); ++d) {
        r.rows.push_back({{"d", num(std::to_string(d))}, {"count", num(p.coeffs()[d].get_str())}});
        arr += (d ? "," : "") + p.coeffs()[d].get_str();
      }
      r.json = "{\"coeffs\":[" + arr + "]}\n";
      r.json_default = true;
      return r;
    };
  });

  // eulerian
  auto* eu = app.add_subcommand("eulerian", "Eulerian numbers, optionally with pinned first/last values");
  std::size_t eu_n = 0, eu_i = 0, eu_j = 0;
  eu->add_option("--n", eu_n)->required()->check(CLI::Range(1, 200));
  eu->add_option("--first", eu_i, "pi(1)");
  eu->add_option("--last", eu_j, "pi(n)");
  eu->callback([&] {
    run = [&] {
      if (eu_j && !eu_i) throw UsageError("--last requires --first");
      if ((eu_i && eu_i > eu_n) || eu_j > eu_n) throw UsageError("--first/--last must lie in 1..n");
      EulerianTable table(std::max<std::size_t>(eu_n, 1));
      Result r;
      r.header = {"d", "count"};
      for (long d = 0; d < static_cast<long>(eu_n); ++d) {
        BigInt v = eu_j ? table.first_last(eu_n, d, eu_i, eu_j) : eu_i ? table.first(eu_n, d, eu_i) : table.eulerian(eu_n, d);
        r.rows.push_back({{"d", num(std::to_string(d))}, {"count", num(v.get_str())}});
      }
      return r;
    };
  });

  // transition
  auto* tr = app.add_subcommand("transition", "Probability that an a-shuffle carries one deck to another");
  std::string tr_from, tr_to;
  std::optional<std::string> tr_a;
  std::optional<unsigned> tr_m;
  tr->add_option("--from", tr_from)->required();
  tr->add_option("--to", tr_to)->required();
  auto* tr_a_opt = tr->add_option("--a", tr_a, "Shuffle parameter a >= 1");
  tr->add_option("--riffles", tr_m, "Use a = 2^m")->excludes(tr_a_opt);
  tr->callback([&] {
    run = [&] {
      if (!tr_a && !tr_m) throw UsageError("one of --a or --riffles is required");
      BigInt a;
      if (tr_a) {
        if (a.set_str(*tr_a, 10) != 0 || a < 1) throw UsageError("--a must be a positive integer");
      } else {
        a = riffles_to_a(*tr_m);
      }
      Deck from = deck_arg(tr_from, "--from"), to = deck_arg(tr_to, "--to");
      ExactProbability p;
      if (sorted_spec(from) || sorted_spec(to) || from.size() <= default_enumeration_bound) {
        bool brute = !sorted_spec(from) && !sorted_spec(to);
        p = transition_prob(descent_poly(from, to, brute), from.size(), a);
      } else {
        if (a > 16) throw std::invalid_argument("unsorted endpoints with n > 9 need a <= 16");
        BigInt c = count_inducing_sequences(from, to, a.get_ui());
        p = ExactProbability(make_rational(c, power(a, from.size())));
      }
      Result r;
      r.header = {"a", "probability", "decimal"};
      r.rows.push_back({{"a", num(a.get_str())}, {"probability", str(p.fraction())}, {"decimal", str(p.decimal(g.precision))}});
      return r;
    };
  });

  // classes
  auto* cl = app.add_subcommand("classes", "Equivalence classes of arrangements of 1^n 2^n");
  std::size_t cl_n = 0;
  std::string cl_rel = "s3";
  std::optional<unsigned> cl_a;
  cl->add_option("--n", cl_n)->required()->check(CLI::Range(1, 10));
  cl->add_option("--relation", cl_rel)->check(CLI::IsMember({"s3", "s4"}));
  cl->add_option("--a", cl_a, "Also report the transition probability from the class start deck")
      ->check(CLI::Range(1, 16));
  cl->callback([&] {
    run = [&] {
      Relation rel = cl_rel == "s3" ? Relation::centered : Relation::anywhere;
      auto classes = all_classes(cl_n, rel);
      Deck start = class_start_deck(cl_n, rel);
      SortedSpec spec({cl_n, cl_n});
      Result r;
      r.header = {"class", "representative", "size", "code", "probability", "constant"};
      for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& c = classes[k];
        Row row{{"class", num(std::to_string(k + 1))},
                {"representative", str(format_deck_literal(c.representative()))},
                {"size", num(std::to_string(c.members.size()))},
                {"code", str(rel == Relation::centered ? to_string(canonical_code_s3(c.representative())) : "")}};
        std::string prob, constant;
        if (cl_a) {
          auto count = [&](const Deck& d) {
            return rel == Relation::centered ? weighted_count(poly_from_sorted(spec, d), shuffle_weights(2 * cl_n, *cl_a))
                                             : count_inducing_sequences(start, d, *cl_a);
          };
          BigInt first = count(c.representative());
          bool same = true;
          for (const auto& d : c.members) same = same && count(d) == first;
          prob = to_fraction_string(make_rational(first, power(BigInt(*cl_a), 2 * cl_n)));
          constant = same ? "true" : "false";
        }
        row.push_back({"probability", prob.empty() ? num("") : str(prob)});
        row.push_back({"constant", num(constant)});
        r.rows.push_back(std::move(row));
      }
      return r;
    };
  });

  // simulate
  auto* si = app.add_subcommand("simulate", "Empirical deck frequencies after m riffle shuffles");
  std::string si_deck;
  unsigned si_m = 1;
  std::uint64_t si_k = 10000;
  bool si_inverse = false;
  si->add_option("--deck", si_deck)->required();
  si->add_option("--riffles", si_m)->required();
  si->add_option("--samples", si_k)->check(CLI::PositiveNumber);
  si->add_option("--seed", seed_opt);
  si->add_flag("--inverse", si_inverse, "Apply inverse riffles");
  si->callback([&] {
    run = [&] {
      Deck start = deck_arg(si_deck, "--deck");
      const std::uint64_t seed = seed_opt ? *seed_opt : default_seed();
      CounterRng rng(RngSpec{seed, 0});
      std::map<Deck, std::uint64_t> freq;
      for (std::uint64_t k = 0; k < si_k; ++k)
        ++freq[si_inverse ? inverse_riffle_m(start, si_m, rng) : riffle_m(start, si_m, rng)];
      auto spec = sorted_spec(start);
      Result r;
      r.header = {"deck", "count", "frequency", "exact"};
      for (const auto& [d, c] : freq) {
        std::string exact;
        if (spec && !si_inverse)
          exact = to_decimal(transition_prob(poly_from_sorted(*spec, d), d.size(), riffles_to_a(si_m)).value(), g.precision);
        r.rows.push_back({{"deck", str(format_deck_literal(d))},
                          {"count", num(std::to_string(c))},
                          {"frequency", num(to_decimal(make_rational(c, si_k), g.precision))},
                          {"exact", num(exact)}});
      }
      return r;
    };
  });

  // mixing
  auto* mx = app.add_subcommand("mixing", "Distance from uniform after m riffle shuffles");
  std::string mx_spec, mx_metric = "separation", mx_riffles, mx_orient = "to-sorted";
  MonteCarloOptions mc;
  std::uint64_t mx_bound = default_deck_enumeration_bound;
  mx->add_option("--spec", mx_spec, "Sorted deck, e.g. \"1^13 2^13 3^13 4^13\"")->required();
  mx->add_option("--metric", mx_metric)->check(CLI::IsMember({"separation", "tv-exact", "tv-mc"}));
  mx->add_option("--riffles", mx_riffles, "m or lo..hi")->required();
  mx->add_option("--samples", mc.samples)->check(CLI::PositiveNumber);
  mx->add_option("--seed", seed_opt);
  mx->add_option("--confidence", mc.confidence)->check(CLI::Range(0.5, 0.999999));
  mx->add_option("--orientation", mx_orient,
                 "to-sorted: deal distribution P(D -> sorted); from-sorted: P(sorted -> D)")
      ->check(CLI::IsMember({"from-sorted", "to-sorted"}));
  mx->add_option("--enumeration-bound", mx_bound);
  mx->callback([&] {
    run = [&] {
      SortedSpec spec = spec_arg(mx_spec);
      auto [lo, hi] = riffle_range(mx_riffles);
      MixingTableOptions opts;
      opts.orientation = orientation_arg(mx_orient);
      opts.enumeration_bound = mx_bound;
      opts.monte_carlo = mc;
      opts.monte_carlo.workers = g.workers;
      opts.monte_carlo.rng = RngSpec{seed_opt ? *seed_opt : default_seed(), 0};
      Metric metric = mx_metric == "separation" ? Metric::separation
                      : mx_metric == "tv-exact" ? Metric::tv_exact
                                                : Metric::tv_mc;
      unsigned current = lo;
      std::uint64_t last_tenth = 0;
      if (!g.quiet)
        opts.monte_carlo.progress = [&](std::uint64_t done, std::uint64_t total) {
          std::uint64_t tenth = done * 10 / total;
          if (tenth == last_tenth && done != total) return;
          last_tenth = tenth % 10;
          std::cerr << "progress m=" << current << " " << done << "/" << total << '\n';
        };
      Result r;
      r.header = {"m", "metric", "exact_fraction", "decimal", "ci_halfwidth", "samples"};
      for (unsigned m = lo; m <= hi; ++m) {
        current = m;
        last_tenth = 0;
        MixingRow row = mixing_table(spec, metric, m, m, opts).front();
        auto emit = [&](const std::string& name, const std::optional<Rational>& exact, double point, double ci,
                        std::uint64_t samples) {
          std::ostringstream ci_text, point_text;
          point_text << std::setprecision(g.precision) << point;
          ci_text << std::setprecision(g.precision) << ci;
          r.rows.push_back({{"m", num(std::to_string(m))},
                            {"metric", str(name)},
                            {"exact_fraction", exact ? str(to_fraction_string(*exact)) : num("")},
                            {"decimal", num(exact ? to_decimal(*exact, g.precision) : point_text.str())},
                            {"ci_halfwidth", num(ci_text.str())},
                            {"samples", num(std::to_string(samples))}});
        };
        if (row.bounds && !row.bounds->exact()) {
          emit("separation-lower", row.bounds->lower, 0, 0, 0);
          emit("separation-upper", row.bounds->upper, 0, 0, 0);
        } else {
          emit(mx_metric, row.estimate.exact, row.estimate.point, row.estimate.ci_halfwidth, row.estimate.samples_used);
        }
        if (row.monotonicity_violation) std::cerr << "warning: distance rose at m=" << m << '\n';
      }
      return r;
    };
  });

  // verify
  auto* ve = app.add_subcommand("verify", "Cross-check recursions and closed forms against enumeration");
  ve->callback([&] {
    run = [&] {
      Result r;
      r.header = {"check", "status", "detail"};
      for (const auto& c : run_self_checks()) {
        r.rows.push_back({{"check", str(c.name)}, {"status", str(c.passed ? "pass" : "fail")}, {"detail", str(c.detail)}});
        if (!c.passed) r.exit_code = 3;
      }
      return r;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    error_line("usage", e.what());
    return 2;
  }

  Result result;
  try {
    result = run();
  } catch (const UsageError& e) {
    error_line("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    error_line("computation", e.what());
    return 1;
  }

  const bool json = g.format == "json" || (g.format == "auto" && result.json_default);
  std::ostringstream body;
  if (json && result.json) body << *result.json;
  else if (json) write_json(body, result.rows);
  else write_csv(body, result.rows, result.header);

  if (g.output.empty()) {
    std::cout << body.str();
  } else {
    std::string cmdline;
    for (int k = 1; k < argc; ++k) cmdline += (k > 1 ? " " : "") + std::string(argv[k]);
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << fnv1a(cmdline);
    nlohmann::ordered_json manifest{{"command", cmdline},
                                    {"seed", seed_opt ? *seed_opt : default_seed()},
                                    {"versions", {{"riffle", tool_version}, {"gmp", gmp_version}, {"cli11", CLI11_VERSION}}},
                                    {"timestamp", utc_now()},
                                    {"input_hash", "fnv1a64:" + hash.str()}};
    std::ofstream out(g.output, std::ios::binary);
    if (!out) {
      error_line("io", "cannot open " + g.output);
      return 1;
    }
    if (json) out << "{\"manifest\":" << manifest.dump() << ",\n\"result\":" << body.str() << "}\n";
    else out << "# manifest " << manifest.dump() << '\n' << body.str();
  }
  return result.exit_code;
}
