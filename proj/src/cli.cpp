#include "splab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include "splab/conversions.hpp"
#include "splab/errors.hpp"
#include "splab/exact_bernoulli.hpp"
#include "splab/exact_binary.hpp"
#include "splab/growth.hpp"
#include "splab/io.hpp"
#include "splab/limits.hpp"
#include "splab/montecarlo.hpp"
#include "splab/network.hpp"
#include "splab/oracle.hpp"
#include "splab/stats.hpp"

namespace splab::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Validate found a failing check; the report is already written.
struct ValidationFailed {};

struct ProbabilityArg {
  double value = 0.0;
  std::optional<Rational> exact;
};

ProbabilityArg parse_probability(const std::string& text) {
  ProbabilityArg p;
  if (text.find('/') != std::string::npos) {
    p.exact = parse_rational(text);
    p.value = to_double(*p.exact);
  } else {
    std::size_t used = 0;
    try {
      p.value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size()) throw UsageError("--p expects a decimal or a/b, got '" + text + "'");
  }
  if (!(p.value > 0.0 && p.value < 1.0)) throw UsageError("--p must lie strictly between 0 and 1");
  return p;
}

Model make_model(const std::string& kind, const std::string& p_text) {
  ModelKind k = parse_model_kind(kind);
  if (k == ModelKind::Bernoulli) {
    if (p_text.empty()) throw UsageError("--p is required for the bernoulli model");
    return Model::bernoulli(parse_probability(p_text).value);
  }
  if (!p_text.empty()) throw UsageError("--p applies only to the bernoulli model");
  return Model::binary();
}

int thread_count(int requested) {
  if (const char* env = std::getenv("SPLAB_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("SPLAB_THREADS must be a positive integer");
  }
  if (requested >= 1) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string json_text(nlohmann::json j) {
  if (!j.contains("schema_version")) j["schema_version"] = kSchemaVersion;
  return j.dump(2) + "\n";
}

std::string distribution_csv(const DiscreteDistribution& d) {
  std::string s = "m,probability\n";
  for (int m = d.lo(); m <= d.hi(); ++m) s += std::to_string(m) + "," + format_double(d(m)) + "\n";
  return s;
}

nlohmann::json distribution_json(const DiscreteDistribution& d) {
  nlohmann::json rows = nlohmann::json::array();
  for (int m = d.lo(); m <= d.hi(); ++m) rows.push_back({{"m", m}, {"probability", d(m)}});
  return {{"provenance", to_string(d.provenance())}, {"distribution", rows}};
}

// ---- grow ------------------------------------------------------------------

struct GrowOptions {
  std::string model;
  std::string p;
  int n = 1;
  std::uint64_t seed = 0;
  long long trials = 1;
  std::string format = "csv";
  std::string out;
};

void do_grow(const GrowOptions& o, std::ostream& out) {
  Model model = make_model(o.model, o.p);
  if (o.n < 1) throw UsageError("--n must be at least 1");
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  if (o.format != "csv" && o.trials != 1) throw UsageError("--format " + o.format + " needs --trials 1");
  if (o.format == "csv") {
    std::string text = ParameterSample::csv_header() + "\n";
    for (long long t = 0; t < o.trials; ++t) {
      RngStream rng(o.seed, static_cast<std::uint64_t>(t));
      GrownNetwork g = grow(model, o.n, rng);
      text += sample_parameters(g.network, &rng).to_csv_row() + "\n";
    }
    emit(text, o.out, out);
    return;
  }
  RngStream rng(o.seed, 0);
  GrownNetwork g = grow(model, o.n, rng);
  if (o.format == "dot") {
    emit(to_dot(g.network), o.out, out);
  } else if (o.format == "json") {
    ParameterSample s = sample_parameters(g.network);
    nlohmann::json j{{"history", history_to_json(g.history)},
                     {"seed", o.seed},
                     {"parameters",
                      {{"n", s.n},
                       {"source_degree", s.source_degree},
                       {"sink_degree", s.sink_degree},
                       {"leftmost_len", s.leftmost_path_length},
                       {"path_count", s.path_count.get_str()}}}};
    emit(json_text(j), o.out, out);
  } else {
    throw UsageError("--format must be csv, json or dot");
  }
}

// ---- exact -----------------------------------------------------------------

struct ExactOptions {
  std::string quantity;
  int n = 0;
  std::string p;
  std::string method;
  std::string format = "csv";
  std::string out;
  int precision = 0;
  bool estimate_rho = false;
  int n_max = 2000;
};

void do_exact_bernoulli(const ExactOptions& o, std::ostream& out) {
  if (o.p.empty()) throw UsageError("--p is required");
  ProbabilityArg p = parse_probability(o.p);
  if (o.n < 1) throw UsageError("--n must be at least 1");
  const std::string method = o.method.empty() ? (o.quantity == "paths" ? "series" : "dp") : o.method;

  if (o.quantity == "degree" || o.quantity == "length") {
    const bool length = o.quantity == "length";
    DiscreteDistribution law = DiscreteDistribution::point_mass(1, Provenance::DynamicProgram);
    std::vector<std::string> exact_text;
    if (method == "dp") {
      if (p.exact) {
        Rational pr = length ? Rational(1 - *p.exact) : *p.exact;
        auto q = bernoulli::degree_law_dp<Rational>(o.n, pr);
        std::vector<double> probs;
        for (const auto& v : q) {
          probs.push_back(to_double(v));
          exact_text.push_back(splab::to_string(v));
        }
        law = DiscreteDistribution::make(1, probs, Provenance::DynamicProgram);
      } else {
        law = bernoulli::degree_dist_dp(o.n, length ? 1.0 - p.value : p.value);
      }
    } else if (method == "closed") {
      auto r = length ? bernoulli::length_dist_closed(o.n, p.value, o.precision)
                      : bernoulli::degree_dist_closed(o.n, p.value, o.precision);
      law = r.distribution;
    } else {
      throw UsageError("--method for " + o.quantity + " must be dp or closed");
    }
    if (o.format == "json") {
      nlohmann::json j = distribution_json(law);
      j["quantity"] = o.quantity;
      j["n"] = o.n;
      j["p"] = o.p;
      if (!exact_text.empty()) j["exact"] = exact_text;
      emit(json_text(j), o.out, out);
    } else {
      emit(distribution_csv(law), o.out, out);
    }
    return;
  }
  if (o.quantity == "paths") {
    std::vector<double> values;
    if (method == "series") {
      values = bernoulli::expected_paths_series<double>(o.n, p.value);
    } else if (method == "closed") {
      for (const auto& r : bernoulli::expected_paths_closed_upto(o.n, p.value, o.precision)) values.push_back(r.value);
    } else {
      throw UsageError("--method for paths must be series or closed");
    }
    if (o.format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (int n = 1; n <= o.n; ++n) rows.push_back({{"n", n}, {"expectation", values[n - 1]}});
      emit(json_text({{"quantity", "paths"}, {"p", o.p}, {"values", rows}}), o.out, out);
    } else {
      std::string s = "n,expectation\n";
      for (int n = 1; n <= o.n; ++n) s += std::to_string(n) + "," + format_double(values[n - 1]) + "\n";
      emit(s, o.out, out);
    }
    return;
  }
  throw UsageError("--quantity must be degree, length or paths");
}

void do_exact_binary(const ExactOptions& o, std::ostream& out) {
  if (o.estimate_rho) {
    auto r = binary::estimate_rho(o.n_max);
    emit(json_text({{"rho", r.rho}, {"uncertainty", r.uncertainty}, {"n_used", r.n_used}}), o.out, out);
    return;
  }
  if (o.n < 1) throw UsageError("--n must be at least 1");
  if (!o.p.empty()) throw UsageError("--p applies only to the bernoulli model");
  const bool length = o.quantity == "length";
  if (length || o.quantity == "sinkdeg") {
    const std::string method = o.method.empty() ? "series" : o.method;
    if (method == "series") {
      auto laws = length ? binary::length_dist_series(o.n) : binary::sink_degree_dist_series(o.n);
      const auto& law = laws.back();
      if (o.format == "json") {
        nlohmann::json j = distribution_json(law);
        j["quantity"] = o.quantity;
        j["n"] = o.n;
        emit(json_text(j), o.out, out);
      } else {
        emit(distribution_csv(law), o.out, out);
      }
    } else if (method == "closed") {
      auto e = length ? binary::expected_length_closed(o.n) : binary::expected_sink_degree_closed(o.n);
      if (o.format == "json") {
        emit(json_text({{"quantity", o.quantity}, {"n", o.n}, {"expectation", e.exact}, {"asymptotic", e.asymptotic}}),
             o.out, out);
      } else {
        emit("n,expectation,asymptotic\n" + std::to_string(o.n) + "," + format_double(e.exact) + "," +
                 format_double(e.asymptotic) + "\n",
             o.out, out);
      }
    } else {
      throw UsageError("--method for " + o.quantity + " must be series or closed");
    }
    return;
  }
  if (o.quantity == "paths") {
    if (!o.method.empty() && o.method != "tables") throw UsageError("--method for paths must be tables");
    auto t = binary::expected_paths_tables<double>(o.n);
    if (o.format == "json") {
      nlohmann::json rows = nlohmann::json::array();
      for (int n = 1; n <= o.n; ++n) rows.push_back({{"n", n}, {"expectation", t.E[n]}, {"forest", t.forest[n]}});
      emit(json_text({{"quantity", "paths"}, {"values", rows}}), o.out, out);
    } else {
      std::string s = "n,expectation\n";
      for (int n = 1; n <= o.n; ++n) s += std::to_string(n) + "," + format_double(t.E[n]) + "\n";
      emit(s, o.out, out);
    }
    return;
  }
  throw UsageError("--quantity must be length, sinkdeg or paths");
}

// ---- oracle ----------------------------------------------------------------

struct OracleOptions {
  std::string model;
  int n = 1;
  long p_num = 0;
  long p_den = 0;
  std::string p;
  std::string out;
};

void do_oracle(const OracleOptions& o, std::ostream& out) {
  ModelKind kind = parse_model_kind(o.model);
  std::optional<Rational> p;
  if (kind == ModelKind::Bernoulli) {
    if (!o.p.empty()) {
      ProbabilityArg arg = parse_probability(o.p);
      if (!arg.exact) throw UsageError("the oracle needs an exact p; write it as a/b");
      p = arg.exact;
    } else if (o.p_den > 0) {
      p = Rational(o.p_num, o.p_den);
      p->canonicalize();
    } else {
      throw UsageError("the bernoulli oracle needs --p a/b or --p-num/--p-den");
    }
  } else if (!o.p.empty() || o.p_den > 0) {
    throw UsageError("p applies only to the bernoulli model");
  }
  auto table = oracle::enumerate(kind, o.n, p);
  emit(json_text(table.to_json()), o.out, out);
}

// ---- simulate --------------------------------------------------------------

struct SimulateOptions {
  std::string model;
  std::string p;
  int n = 1;
  long long trials = 1000;
  std::uint64_t seed = 0;
  std::string quantities = "deg,len";
  std::string out;
  int threads = 0;
};

void do_simulate(const SimulateOptions& o, std::ostream& out) {
  Model model = make_model(o.model, o.p);
  auto result = mc::run_trials(model, o.n, o.trials, o.seed, mc::QuantitySet::parse(o.quantities),
                               thread_count(o.threads));
  emit(json_text(result.to_json()), o.out, out);
}

// ---- validate --------------------------------------------------------------

struct ValidateOptions {
  std::string against;
  std::string input;
  double alpha = 0.01;
  double tolerance = 1e-12;
  double moment_tolerance = 0.05;
  std::string out;
};

class Report {
 public:
  void check(const std::string& name, bool pass, const std::string& detail) {
    text_ += std::string(pass ? "PASS " : "FAIL ") + name + ": " + detail + "\n";
    failed_ = failed_ || !pass;
  }
  bool failed() const { return failed_; }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  bool failed_ = false;
};

std::string gof_detail(const mc::GofResult& g) {
  return "chi2=" + format_double(g.statistic) + " dof=" + std::to_string(g.dof) + " p=" + format_double(g.p_value);
}

// Exact counterpart of an oracle marginal.
std::optional<DiscreteDistribution> exact_marginal(const oracle::JointDistributionTable& t, oracle::Parameter which,
                                                   const std::string& method) {
  using oracle::Parameter;
  if (t.model == ModelKind::Bernoulli) {
    const double p = to_double(*t.p);
    if (which == Parameter::SourceDegree || which == Parameter::SinkDegree) {
      if (method == "closed") return bernoulli::degree_dist_closed(t.n, p).distribution;
      return bernoulli::degree_dist_dp(t.n, p);
    }
    if (which == Parameter::LeftmostLength) {
      if (method == "closed") return bernoulli::length_dist_closed(t.n, p).distribution;
      return bernoulli::degree_dist_dp(t.n, 1.0 - p);
    }
    return std::nullopt;
  }
  if (which == Parameter::LeftmostLength) return binary::length_dist_series(t.n).back();
  if (which == Parameter::SinkDegree) return binary::sink_degree_dist_series(t.n).back();
  return std::nullopt;
}

void validate_oracle_table(const oracle::JointDistributionTable& t, const std::string& method, double tol,
                           Report& report) {
  using oracle::Parameter;
  report.check("oracle probabilities sum to 1", t.total() == 1, "total " + splab::to_string(t.total()));
  for (Parameter which : {Parameter::SourceDegree, Parameter::SinkDegree, Parameter::LeftmostLength}) {
    auto exact = exact_marginal(t, which, method);
    if (!exact) continue;
    double diff = max_abs_difference(t.marginal(which), *exact);
    report.check(oracle::to_string(which) + " marginal vs " + to_string(exact->provenance()), diff <= tol,
                 "max |diff| = " + format_double(diff));
  }
  Rational mean = t.mean_exact(Parameter::PathCount);
  if (t.model == ModelKind::Bernoulli) {
    Rational series = bernoulli::expected_paths_series<Rational>(t.n, *t.p).back();
    report.check("path-count mean vs expectation recurrence", mean == series,
                 splab::to_string(mean) + " vs " + splab::to_string(series));
  } else {
    Rational tables = binary::expected_paths_tables<Rational>(t.n).E[t.n];
    report.check("path-count mean vs expectation tables", mean == tables,
                 splab::to_string(mean) + " vs " + splab::to_string(tables));
  }
}

void validate_simulation(const mc::TrialBatchResult& r, const std::string& against, double alpha, double moment_tol,
                         Report& report) {
  using mc::Quantity;
  auto check_gof = [&](Quantity q, const DiscreteDistribution& exact, const std::string& label) {
    if (!r.histograms.count(q)) return;
    try {
      auto g = mc::chi_square_gof(r.histograms.at(q), exact);
      report.check(mc::to_string(q) + " vs " + label, g.p_value >= alpha, gof_detail(g));
    } catch (const StatisticsError& e) {
      report.check(mc::to_string(q) + " vs " + label, r.law(q).total() > 0 && exact(r.histograms.at(q).lo) == 1.0,
                   e.what());
    }
  };
  const bool bern = r.model.is_bernoulli();
  if (against == "dp" || against == "closed") {
    const bool closed = against == "closed";
    if (bern) {
      const double p = r.model.p;
      auto deg = closed ? bernoulli::degree_dist_closed(r.n, p).distribution : bernoulli::degree_dist_dp(r.n, p);
      auto len =
          closed ? bernoulli::length_dist_closed(r.n, p).distribution : bernoulli::degree_dist_dp(r.n, 1.0 - p);
      check_gof(Quantity::SourceDegree, deg, against);
      check_gof(Quantity::SinkDegree, deg, against);
      check_gof(Quantity::LeftmostLength, len, against);
      check_gof(Quantity::RandomLength, len, against);
    } else {
      if (r.n > 500) throw UsageError("binary series laws are limited to n <= 500 here");
      auto len = binary::length_dist_series(r.n).back();
      check_gof(Quantity::SinkDegree, binary::sink_degree_dist_series(r.n).back(), "series");
      check_gof(Quantity::LeftmostLength, len, "series");
      check_gof(Quantity::RandomLength, len, "series");
    }
    if (r.paths && r.paths->mean) {
      double expected = bern ? bernoulli::expected_paths_series<double>(r.n, r.model.p).back()
                             : binary::expected_paths_tables<double>(r.n).E[r.n];
      double rel = std::fabs(*r.paths->mean / expected - 1.0);
      report.check("path-count sample mean", rel <= moment_tol,
                   "mean " + format_double(*r.paths->mean) + " vs " + format_double(expected));
    }
    return;
  }
  if (against == "oracle") {
    auto t = oracle::enumerate(r.model.kind, r.n,
                               bern ? std::optional<Rational>(Rational(r.model.p)) : std::nullopt);
    check_gof(Quantity::SourceDegree, t.marginal(oracle::Parameter::SourceDegree), "oracle");
    check_gof(Quantity::SinkDegree, t.marginal(oracle::Parameter::SinkDegree), "oracle");
    check_gof(Quantity::LeftmostLength, t.marginal(oracle::Parameter::LeftmostLength), "oracle");
    check_gof(Quantity::RandomLength, t.marginal(oracle::Parameter::LeftmostLength), "oracle");
    return;
  }
  if (against == "limit") {
    for (const auto& [q, m] : r.moments) {
      std::optional<limits::LimitTarget> target;
      if (bern && (q == Quantity::SourceDegree || q == Quantity::SinkDegree)) {
        target = limits::LimitTarget::bernoulli_degree(r.model.p);
      } else if (bern) {
        target = limits::LimitTarget::bernoulli_length(r.model.p);
      } else if (q == Quantity::SinkDegree) {
        target = limits::LimitTarget::binary_sink_degree();
      } else if (q == Quantity::LeftmostLength || q == Quantity::RandomLength) {
        target = limits::LimitTarget::binary_length();
      }
      if (!target) continue;
      auto rep = mc::compare_scaled_limit(r, q, *target);
      for (int k = 1; k <= 2; ++k) {
        const auto& row = rep.rows[k];
        report.check(mc::to_string(q) + " scaled moment r=" + std::to_string(k),
                     std::fabs(row.relative_difference) <= moment_tol,
                     format_double(row.empirical) + " vs limit " + format_double(row.limit));
      }
    }
    return;
  }
  throw UsageError("--against must be dp, closed, oracle or limit");
}

void do_validate(const ValidateOptions& o, std::ostream& out) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(o.input));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("--input is not JSON: ") + e.what());
  }
  Report report;
  if (j.contains("entries")) {
    auto t = oracle::JointDistributionTable::from_json(j);
    if (o.against == "oracle" || o.against == "dp" || o.against == "closed") {
      validate_oracle_table(t, o.against == "closed" ? "closed" : "dp", o.tolerance, report);
    } else {
      throw UsageError("an oracle table validates against oracle, dp or closed");
    }
  } else {
    validate_simulation(mc::TrialBatchResult::from_json(j), o.against, o.alpha, o.moment_tolerance, report);
  }
  emit(report.text(), o.out, out);
  if (report.failed()) throw ValidationFailed{};
}

// ---- limits ----------------------------------------------------------------

struct LimitsOptions {
  std::string family = "ml";
  std::string p;
  std::optional<double> x;
  std::optional<int> r;
  std::string out;
};

void do_limits(const LimitsOptions& o, std::ostream& out) {
  auto family = limits::parse_moment_family(o.family);
  if (o.x.has_value() == o.r.has_value()) throw UsageError("give exactly one of --x (density) or --r (moment)");
  double p = 0.0;
  if (family == limits::MomentFamily::MittagLeffler) {
    if (o.p.empty()) throw UsageError("--p is required for the ml family");
    p = parse_probability(o.p).value;
  } else if (!o.p.empty()) {
    throw UsageError("--p applies only to the ml family");
  }
  nlohmann::json j{{"family", o.family}};
  if (family == limits::MomentFamily::MittagLeffler) j["p"] = p;
  if (o.x) {
    if (family != limits::MomentFamily::MittagLeffler) throw UsageError("densities are available for --family ml");
    auto d = limits::ml_density(*o.x, p);
    j["x"] = *o.x;
    j["value"] = d.value;
    j["error_estimate"] = d.error_estimate;
  } else {
    if (*o.r < 0) throw UsageError("--r must be non-negative");
    limits::LimitTarget target{family, p};
    j["r"] = *o.r;
    j["value"] = target.moment(*o.r);
    j["error_estimate"] = 0.0;
  }
  emit(json_text(j), o.out, out);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Series-parallel network growth: sampling, exact laws, enumeration and simulation"};
  app.name("splab");
  app.require_subcommand(1);

  GrowOptions grow_o;
  auto* grow_cmd = app.add_subcommand("grow", "Grow networks and print them or their parameters");
  grow_cmd->add_option("--model", grow_o.model, "bernoulli or binary")->required();
  grow_cmd->add_option("--p", grow_o.p, "parallel-doubling probability (decimal or a/b)");
  grow_cmd->add_option("--n", grow_o.n, "network size")->required();
  grow_cmd->add_option("--seed", grow_o.seed, "RNG seed");
  grow_cmd->add_option("--trials", grow_o.trials, "number of networks (csv only)");
  grow_cmd->add_option("--format", grow_o.format, "csv, json or dot");
  grow_cmd->add_option("--out", grow_o.out, "output file (default stdout)");

  ExactOptions bern_o;
  ExactOptions bin_o;
  auto* exact_cmd = app.add_subcommand("exact", "Exact laws and expectations");
  exact_cmd->require_subcommand(1);
  auto* bern_cmd = exact_cmd->add_subcommand("bernoulli", "Bernoulli model");
  bern_cmd->add_option("--quantity", bern_o.quantity, "degree, length or paths")->required();
  bern_cmd->add_option("--n", bern_o.n, "size (for paths: largest size)")->required();
  bern_cmd->add_option("--p", bern_o.p, "decimal or a/b")->required();
  bern_cmd->add_option("--method", bern_o.method, "dp, closed or series");
  bern_cmd->add_option("--precision", bern_o.precision, "mantissa bits for closed forms (0 = automatic)");
  bern_cmd->add_option("--format", bern_o.format, "csv or json");
  bern_cmd->add_option("--out", bern_o.out, "output file");
  auto* bin_cmd = exact_cmd->add_subcommand("binary", "Binary model");
  bin_cmd->add_option("--quantity", bin_o.quantity, "length, sinkdeg or paths");
  bin_cmd->add_option("--n", bin_o.n, "size (for paths: largest size)");
  bin_cmd->add_option("--p", bin_o.p, "not used by the binary model");
  bin_cmd->add_option("--method", bin_o.method, "series, closed or tables");
  bin_cmd->add_flag("--estimate-rho", bin_o.estimate_rho, "estimate the dominant singularity");
  bin_cmd->add_option("--nmax", bin_o.n_max, "table size for --estimate-rho");
  bin_cmd->add_option("--format", bin_o.format, "csv or json");
  bin_cmd->add_option("--out", bin_o.out, "output file");

  OracleOptions oracle_o;
  auto* oracle_cmd = app.add_subcommand("oracle", "Enumerate all histories of size n");
  oracle_cmd->add_option("--model", oracle_o.model, "bernoulli or binary")->required();
  oracle_cmd->add_option("--n", oracle_o.n, "network size")->required();
  oracle_cmd->add_option("--p", oracle_o.p, "exact p as a/b");
  oracle_cmd->add_option("--p-num", oracle_o.p_num, "numerator of p");
  oracle_cmd->add_option("--p-den", oracle_o.p_den, "denominator of p");
  oracle_cmd->add_option("--out", oracle_o.out, "output file");

  SimulateOptions sim_o;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo batch");
  sim_cmd->add_option("--model", sim_o.model, "bernoulli or binary")->required();
  sim_cmd->add_option("--p", sim_o.p, "decimal or a/b");
  sim_cmd->add_option("--n", sim_o.n, "network size")->required();
  sim_cmd->add_option("--trials", sim_o.trials, "number of trials");
  sim_cmd->add_option("--seed", sim_o.seed, "RNG seed");
  sim_cmd->add_option("--quantities", sim_o.quantities, "comma list of deg, sinkdeg, len, rlen, paths");
  sim_cmd->add_option("--threads", sim_o.threads, "worker threads (default: all cores)");
  sim_cmd->add_option("--out", sim_o.out, "output file");

  ValidateOptions val_o;
  auto* val_cmd = app.add_subcommand("validate", "Check a simulation result or oracle table");
  val_cmd->add_option("--against", val_o.against, "dp, closed, oracle or limit")->required();
  val_cmd->add_option("--input", val_o.input, "result or table JSON")->required();
  val_cmd->add_option("--alpha", val_o.alpha, "significance level for goodness-of-fit checks");
  val_cmd->add_option("--tolerance", val_o.tolerance, "entrywise tolerance for exact comparisons");
  val_cmd->add_option("--moment-tolerance", val_o.moment_tolerance, "relative tolerance for moment checks");
  val_cmd->add_option("--out", val_o.out, "report file");

  LimitsOptions lim_o;
  auto* lim_cmd = app.add_subcommand("limits", "Limit-law moments and densities");
  lim_cmd->add_option("--family", lim_o.family, "ml, binary-length or binary-degree");
  lim_cmd->add_option("--p", lim_o.p, "Mittag-Leffler parameter");
  lim_cmd->add_option("--x", lim_o.x, "density argument");
  lim_cmd->add_option("--r", lim_o.r, "moment order");
  lim_cmd->add_option("--out", lim_o.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (grow_cmd->parsed()) {
      do_grow(grow_o, out);
    } else if (bern_cmd->parsed()) {
      do_exact_bernoulli(bern_o, out);
    } else if (bin_cmd->parsed()) {
      if (!bin_o.estimate_rho && bin_o.quantity.empty()) throw UsageError("--quantity or --estimate-rho is required");
      do_exact_binary(bin_o, out);
    } else if (oracle_cmd->parsed()) {
      do_oracle(oracle_o, out);
    } else if (sim_cmd->parsed()) {
      do_simulate(sim_o, out);
    } else if (val_cmd->parsed()) {
      do_validate(val_o, out);
    } else if (lim_cmd->parsed()) {
      do_limits(lim_o, out);
    }
  } catch (const ValidationFailed&) {
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace splab::cli
