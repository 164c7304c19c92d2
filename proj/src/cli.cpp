#include "eigcount/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "eigcount/closedform.hpp"
#include "eigcount/density.hpp"
#include "eigcount/errors.hpp"
#include "eigcount/experiment.hpp"
#include "eigcount/selftest.hpp"
#include "eigcount/series.hpp"

#ifndef EIGCOUNT_VERSION
#define EIGCOUNT_VERSION "dev"
#endif

namespace eigcount::cli {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Fixed decimals, integers bare: 3.60, 1.
std::string decimals(double v, int places) {
  char buf[64];
  if (v == std::round(v)) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
  }
  return buf;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("EIGCOUNT_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError("EIGCOUNT_SEED must be a nonnegative integer");
  return v;
}

double route_value(const ProblemShape& s, Route route) {
  switch (route) {
    case Route::hypergeom: return expected_count_hypergeom(s).value;
    case Route::finite_sum: return expected_count_sum(s).value;
    case Route::quadrature: return expected_count_quadrature(s).value;
    case Route::generating_function: return generating_coefficients(s.d(), s.n())[s.n()];
  }
  return 0.0;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

fs::path manifest_path(const fs::path& artifact) {
  fs::path p = artifact;
  p.replace_extension(".manifest.json");
  return p;
}

void write_manifest(const fs::path& primary, const std::string& command, const json& parameters,
                    std::uint64_t seed, const std::vector<fs::path>& artifacts, double wall) {
  json paths = json::array();
  for (const auto& a : artifacts) paths.push_back(a.string());
  const json m = {{"command", command},         {"parameters", parameters},
                  {"seed", seed},               {"artifacts", paths},
                  {"tool_version", EIGCOUNT_VERSION}, {"wall_time_seconds", wall}};
  write_text(manifest_path(primary), m.dump(2) + "\n");
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Options {
  unsigned threads = 0;
  int digits = 0;  // 0: command default
  std::uint64_t seed = 0;

  int n = 0;
  int d = 0;
  std::string route;
  int nmax = 12;
  int dmax = 8;
  std::string format = "csv";
  std::string out_path;
  int order = 10;
  double t = 0.0;
  std::uint64_t mc_samples = 0;
  std::uint64_t samples = 0;
  std::string sampler = "contraction";
  bool thorough = false;
};

int run_expect(const Options& o, std::ostream& out) {
  const ProblemShape s(o.n, o.d);
  const Route route = o.route.empty() ? Route::finite_sum : route_from_string(o.route);
  const double v = route_value(s, route);
  out << (o.digits ? sig(v, o.digits) : decimals(v, 2)) << '\n';
  return ok;
}

int run_table(const Options& o, std::ostream& out) {
  if (o.nmax < 1 || o.dmax < 1) throw UsageError("--nmax and --dmax must be >= 1");
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
  const auto start = std::chrono::steady_clock::now();
  const int digits = o.digits ? o.digits : 10;
  const Route routes[] = {Route::hypergeom, Route::finite_sum, Route::quadrature,
                          Route::generating_function};

  json rows = json::array();
  std::string csv = "n,d,D,hypergeom,sum,quadrature,genfun,max_rel_dev\n";
  double overall = 0.0;
  for (int d = 1; d <= o.dmax; ++d) {
    const auto gf = generating_coefficients(d, o.nmax);
    for (int n = 1; n <= o.nmax; ++n) {
      const ProblemShape s(n, d);
      double v[4];
      for (int r = 0; r < 4; ++r) {
        v[r] = routes[r] == Route::generating_function ? gf[n] : route_value(s, routes[r]);
      }
      double dev = 0.0;
      for (double a : v) {
        for (double b : v) dev = std::max(dev, std::abs(a - b) / std::abs(b));
      }
      overall = std::max(overall, dev);
      const double big_d = dnd_real(s);
      csv += std::to_string(n) + ',' + std::to_string(d) + ',' + sig(big_d, 17);
      json row = {{"n", n}, {"d", d}, {"D", big_d}};
      for (int r = 0; r < 4; ++r) {
        csv += ',' + sig(v[r], digits);
        row[std::string(to_string(routes[r]))] = std::stod(sig(v[r], digits));
      }
      csv += ',' + sig(dev, 3) + '\n';
      row["max_rel_dev"] = dev;
      rows.push_back(row);
    }
  }
  std::string text;
  if (o.format == "csv") {
    text = csv;
  } else {
    text = json{{"rows", rows}, {"max_rel_dev", overall}}.dump(2) + "\n";
  }
  if (o.out_path.empty()) {
    out << text;
    if (o.format == "csv") out << "# max_rel_dev " << sig(overall, 3) << '\n';
  } else {
    const fs::path p = o.out_path;
    write_text(p, text);
    write_manifest(p, "table",
                   {{"nmax", o.nmax}, {"dmax", o.dmax}, {"format", o.format}, {"digits", digits}},
                   0, {p}, elapsed(start));
    out << "max_rel_dev " << sig(overall, 3) << '\n';
  }
  return ok;
}

int run_genfun(const Options& o, std::ostream& out) {
  if (o.d < 1) throw UsageError("--d must be >= 1");
  if (o.order < 0) throw UsageError("--order must be >= 0");
  const int digits = o.digits ? o.digits : 10;
  const auto c = generating_coefficients(o.d, o.order);
  out << "n,coefficient\n";
  for (std::size_t n = 0; n < c.size(); ++n) out << n << ',' << sig(c[n], digits) << '\n';
  return ok;
}

int run_detmoment(const Options& o, std::ostream& out) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  const int digits = o.digits ? o.digits : 10;
  out << "closed_form " << sig(expected_abs_det(o.n, o.t), digits) << '\n';
  if (o.mc_samples > 0) {
    const auto e = mc_abs_det(o.n, o.t, o.mc_samples, o.seed, o.threads);
    out << "mc_mean " << sig(e.mean, digits) << '\n'
        << "mc_std_error " << sig(e.std_error, digits) << '\n'
        << "mc_samples " << e.samples << '\n'
        << "seed " << e.seed << '\n';
  }
  return ok;
}

int run_mc_count(const Options& o, std::ostream& out) {
  const ProblemShape shape(o.n, o.d);
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  ExperimentConfig cfg;
  cfg.threads = o.threads;
  if (o.sampler == "contraction") {
    cfg.sampler = Sampler::contraction;
  } else if (o.sampler == "bw") {
    cfg.sampler = Sampler::bombieri_weyl;
  } else {
    throw UsageError("--sampler must be contraction or bw");
  }
  const int digits = o.digits ? o.digits : 10;
  const auto start = std::chrono::steady_clock::now();
  const CountHistogram h = run_experiment(shape, o.samples, o.seed, cfg);
  const auto e = h.estimate();

  out << "count,frequency\n";
  for (const auto& [count, freq] : h.counts) out << count << ',' << freq << '\n';
  out << "samples " << h.samples << '\n'
      << "failures " << h.failures << '\n'
      << "invariant_violations " << h.invariant_violations << '\n'
      << "retries " << h.retries << '\n'
      << "mean " << sig(e.mean, digits) << '\n'
      << "std_error " << sig(e.std_error, digits) << '\n'
      << "expected " << decimals(expected_count_sum(shape).value, 2) << '\n'
      << "D " << dnd_exact(shape) << '\n';

  if (!o.out_path.empty()) {
    const fs::path csv = o.out_path;
    fs::path sidecar = csv;
    sidecar.replace_extension(".json");
    write_histogram_csv(h, csv);
    write_text(sidecar, histogram_summary(h).dump(2) + "\n");
    write_manifest(csv, "mc-count",
                   {{"n", o.n}, {"d", o.d}, {"samples", o.samples}, {"sampler", o.sampler}}, o.seed,
                   {csv, sidecar}, elapsed(start));
  }
  return ok;
}

int run_selftest_cmd(const Options& o, std::ostream& out) {
  SelftestOptions so;
  so.threads = o.threads;
  so.thorough = o.thorough;
  so.seed = o.seed;
  bool all = true;
  for (const auto& r : run_selftest(so)) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? ok : failure;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const DomainError*>(&e)) {
    return usage_error;
  }
  if (dynamic_cast<const FailureRateExceeded*>(&e)) return failure_rate_abort;
  if (dynamic_cast<const ConvergenceError*>(&e) || dynamic_cast<const PrecisionError*>(&e) ||
      dynamic_cast<const OverflowError*>(&e)) {
    return numerical_error;
  }
  return failure;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected number of real eigenpair classes of gaussian tensors", "eigcount"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  app.add_option("--digits", o.digits, "Significant digits in printed values")
      ->check(CLI::Range(1, 17));
  app.add_option("--seed", o.seed, "RNG seed (default: $EIGCOUNT_SEED or 1)");

  auto* expect = app.add_subcommand("expect", "Print E_{n,d}");
  expect->add_option("--n", o.n)->required();
  expect->add_option("--d", o.d)->required();
  expect->add_option("--route", o.route)
      ->check(CLI::IsMember({"hypergeom", "sum", "quadrature", "genfun"}));

  auto* table = app.add_subcommand("table", "All routes over a grid of (n, d)");
  table->add_option("--nmax", o.nmax);
  table->add_option("--dmax", o.dmax);
  table->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", o.out_path);

  auto* genfun = app.add_subcommand("genfun", "Generating-function coefficients");
  genfun->add_option("--d", o.d)->required();
  genfun->add_option("--order", o.order)->required();

  auto* detmoment = app.add_subcommand("detmoment", "E|det(A + tI)|");
  detmoment->add_option("--n", o.n)->required();
  detmoment->add_option("--t", o.t)->required();
  detmoment->add_option("--mc-samples", o.mc_samples);

  auto* mc = app.add_subcommand("mc-count", "Histogram of real class counts");
  mc->add_option("--n", o.n)->required();
  mc->add_option("--d", o.d)->required();
  mc->add_option("--samples", o.samples)->required();
  mc->add_option("--out", o.out_path);
  mc->add_option("--sampler", o.sampler)->check(CLI::IsMember({"contraction", "bw"}));

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_flag("--thorough", o.thorough);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (app.get_option("--seed")->count() == 0) o.seed = default_seed();
    if (expect->parsed()) return run_expect(o, out);
    if (table->parsed()) return run_table(o, out);
    if (genfun->parsed()) return run_genfun(o, out);
    if (detmoment->parsed()) return run_detmoment(o, out);
    if (mc->parsed()) return run_mc_count(o, out);
    if (selftest->parsed()) return run_selftest_cmd(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return usage_error;
}

}  // namespace eigcount::cli
