#include "splab/montecarlo.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "splab/growth.hpp"
#include "splab/io.hpp"
#include "splab/stats.hpp"

namespace splab::mc {

namespace {

const std::vector<std::pair<Quantity, std::string>>& quantity_names() {
  static const std::vector<std::pair<Quantity, std::string>> names{{Quantity::SourceDegree, "source_degree"},
                                                                   {Quantity::SinkDegree, "sink_degree"},
                                                                   {Quantity::LeftmostLength, "leftmost_length"},
                                                                   {Quantity::RandomLength, "random_length"},
                                                                   {Quantity::Paths, "path_count"}};
  return names;
}

Quantity parse_quantity_name(const std::string& text) {
  for (const auto& [q, name] : quantity_names()) {
    if (name == text) return q;
  }
  throw ParameterError("unknown quantity '" + text + "'");
}

// Runs body(t) for t in [begin, end) split over `threads` contiguous chunks.
template <class Body>
void parallel_for(long long begin, long long end, int threads, Body body) {
  const long long count = end - begin;
  threads = static_cast<int>(std::clamp<long long>(threads, 1, std::max<long long>(1, count)));
  if (threads == 1) {
    for (long long t = begin; t < end; ++t) body(t);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < threads; ++w) {
    long long lo = begin + count * w / threads;
    long long hi = begin + count * (w + 1) / threads;
    pool.emplace_back([&, lo, hi] {
      try {
        for (long long t = lo; t < hi; ++t) body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

MomentSummary summarise(const std::vector<int>& values, double exponent, int n) {
  MomentSummary m;
  m.exponent = exponent;
  const double scale = std::pow(static_cast<double>(n), exponent);
  const double count = static_cast<double>(values.size());
  for (int r = 0; r <= 4; ++r) {
    double raw = 0.0;
    double scaled = 0.0;
    double scaled_sq = 0.0;
    for (int v : values) {
      double x = std::pow(static_cast<double>(v), r);
      double y = std::pow(v / scale, r);
      raw += x;
      scaled += y;
      scaled_sq += y * y;
    }
    m.raw[r] = raw / count;
    m.scaled[r] = scaled / count;
    double variance = std::max(0.0, scaled_sq / count - m.scaled[r] * m.scaled[r]);
    m.scaled_stderr[r] = values.size() > 1 ? std::sqrt(variance / (count - 1.0)) : 0.0;
  }
  return m;
}

struct Bin {
  double observed_a = 0;
  double observed_b = 0;
  double expected_a = 0;
  double expected_b = 0;
};

double upper_tail(double statistic, int dof) {
  if (statistic <= 0.0) return 1.0;
  if (!std::isfinite(statistic)) return 0.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

std::string to_string(Quantity q) {
  for (const auto& [k, name] : quantity_names()) {
    if (k == q) return name;
  }
  return "?";
}

QuantitySet QuantitySet::parse(const std::string& text) {
  QuantitySet s{false, false, false, false, false};
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "deg" || item == "degree") {
      s.source_degree = true;
    } else if (item == "sinkdeg") {
      s.sink_degree = true;
    } else if (item == "len" || item == "length") {
      s.leftmost_length = true;
    } else if (item == "rlen") {
      s.random_length = true;
    } else if (item == "paths") {
      s.paths = true;
    } else {
      throw ParameterError("unknown quantity '" + item + "' (use deg, sinkdeg, len, rlen, paths)");
    }
  }
  return s;
}

bool QuantitySet::has(Quantity q) const {
  switch (q) {
    case Quantity::SourceDegree:
      return source_degree;
    case Quantity::SinkDegree:
      return sink_degree;
    case Quantity::LeftmostLength:
      return leftmost_length;
    case Quantity::RandomLength:
      return random_length;
    case Quantity::Paths:
      return paths;
  }
  return false;
}

long long Histogram::total() const {
  long long s = 0;
  for (long long c : counts) s += c;
  return s;
}

DiscreteDistribution Histogram::distribution() const { return DiscreteDistribution::from_counts(lo, counts); }

Histogram Histogram::from(const std::vector<int>& values) {
  if (values.empty()) throw ParameterError("histogram of an empty sample");
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  Histogram h;
  h.lo = *mn;
  h.counts.assign(static_cast<std::size_t>(*mx - *mn + 1), 0);
  for (int v : values) ++h.counts[static_cast<std::size_t>(v - h.lo)];
  return h;
}

DiscreteDistribution TrialBatchResult::law(Quantity q) const {
  auto it = histograms.find(q);
  if (it == histograms.end()) throw ParameterError("quantity " + to_string(q) + " was not simulated");
  return it->second.distribution();
}

double scaling_exponent(const Model& model, Quantity q) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (model.is_bernoulli()) {
    switch (q) {
      case Quantity::SourceDegree:
      case Quantity::SinkDegree:
        return model.p;
      case Quantity::LeftmostLength:
      case Quantity::RandomLength:
        return 1.0 - model.p;
      case Quantity::Paths:
        return 0.0;
    }
  }
  switch (q) {
    case Quantity::SinkDegree:
      return std::sqrt(2.0) - 1.0;
    case Quantity::LeftmostLength:
    case Quantity::RandomLength:
      return phi;
    default:
      return 0.0;
  }
}

TrialBatchResult run_trials(const Model& model, int n, long long trials, std::uint64_t seed, QuantitySet quantities,
                            int threads, ResourceCaps caps) {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (trials < 1) throw ParameterError("trials must be at least 1");
  if (model.is_bernoulli()) Model::bernoulli(model.p);

  const bool needs_network =
      quantities.paths || quantities.random_length || (model.is_bernoulli() && quantities.sink_degree);
  long long runnable = trials;
  if (needs_network && static_cast<double>(n) * static_cast<double>(trials) > caps.max_network_work) {
    runnable = static_cast<long long>(caps.max_network_work / n);
  }

  const std::vector<Quantity> int_quantities{Quantity::SourceDegree, Quantity::SinkDegree, Quantity::LeftmostLength,
                                             Quantity::RandomLength};
  std::map<Quantity, std::vector<int>> values;
  for (Quantity q : int_quantities) {
    if (quantities.has(q)) values[q].assign(static_cast<std::size_t>(runnable), 0);
  }
  std::vector<BigInt> path_counts(quantities.paths ? static_cast<std::size_t>(runnable) : 0);

  auto slot = [&](Quantity q) -> int* {
    auto it = values.find(q);
    return it == values.end() ? nullptr : it->second.data();
  };
  int* src = slot(Quantity::SourceDegree);
  int* snk = slot(Quantity::SinkDegree);
  int* len = slot(Quantity::LeftmostLength);
  int* rlen = slot(Quantity::RandomLength);

  parallel_for(0, runnable, threads, [&](long long t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    const std::size_t i = static_cast<std::size_t>(t);
    if (needs_network) {
      GrownNetwork g = grow(model, n, rng);
      if (src) src[i] = source_degree(g.network);
      if (snk) snk[i] = sink_degree(g.network);
      if (len) len[i] = leftmost_path_length(g.network);
      if (rlen) rlen[i] = random_path_length(g.network, rng);
      if (quantities.paths) path_counts[i] = count_paths(g.network);
      return;
    }
    AnyTree tree = grow_tree_only(model, n, rng);
    if (auto* c = std::get_if<ColouredRecursiveTree>(&tree)) {
      if (src) src[i] = blue_subtree_order(*c);
      if (len) len[i] = red_subtree_order(*c);
    } else {
      const auto& b = std::get<BucketRecursiveTree>(tree);
      if (src) src[i] = b.root().saturated() ? 2 : 1;
      if (snk) snk[i] = tree_sink_degree_binary(b);
      if (len) len[i] = tree_leftmost_length_binary(b);
    }
  });

  auto result = std::make_shared<TrialBatchResult>();
  result->model = model;
  result->n = n;
  result->trials = runnable;
  result->seed = seed;
  if (runnable > 0) {
    for (auto& [q, v] : values) {
      result->histograms[q] = Histogram::from(v);
      result->moments[q] = summarise(v, scaling_exponent(model, q), n);
    }
    if (quantities.paths) {
      PathStatistics ps;
      BigInt sum = 0;
      BigInt largest = 0;
      double log_sum = 0.0;
      double log_sq = 0.0;
      for (const auto& p : path_counts) {
        double lp = log2_big(p) * std::log(2.0);
        log_sum += lp;
        log_sq += lp * lp;
        sum += p;
        if (p > largest) largest = p;
      }
      const double count = static_cast<double>(runnable);
      ps.mean_log = log_sum / count;
      ps.variance_log = runnable > 1 ? std::max(0.0, (log_sq - log_sum * log_sum / count) / (count - 1.0)) : 0.0;
      ps.max_paths = largest.get_str();
      // The sample mean is reported only while the sum stays inside double range.
      ps.heavy_tailed = log2_big(largest) + std::log2(count) > 1000.0;
      if (!ps.heavy_tailed) ps.mean = to_double(sum) / count;
      result->paths = ps;
    }
  }
  if (runnable < trials) {
    throw PartialResultError("network work n*trials = " + std::to_string(static_cast<double>(n) * trials) +
                                 " exceeds the cap " + std::to_string(caps.max_network_work) + "; completed " +
                                 std::to_string(runnable) + " of " + std::to_string(trials) + " trials",
                             result);
  }
  return std::move(*result);
}

nlohmann::json TrialBatchResult::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["model"] = splab::to_string(model.kind);
  if (model.is_bernoulli()) j["p"] = model.p;
  j["n"] = n;
  j["trials"] = trials;
  j["seed"] = seed;
  nlohmann::json quantities = nlohmann::json::object();
  for (const auto& [q, h] : histograms) {
    const auto& m = moments.at(q);
    quantities[to_string(q)] = {{"lo", h.lo},
                                {"counts", h.counts},
                                {"exponent", m.exponent},
                                {"raw_moments", m.raw},
                                {"scaled_moments", m.scaled},
                                {"scaled_stderr", m.scaled_stderr}};
  }
  j["quantities"] = std::move(quantities);
  if (paths) {
    nlohmann::json p{{"mean_log", paths->mean_log},
                     {"variance_log", paths->variance_log},
                     {"heavy_tailed", paths->heavy_tailed},
                     {"max", paths->max_paths}};
    p["mean"] = paths->mean ? nlohmann::json(*paths->mean) : nlohmann::json(nullptr);
    j["paths"] = std::move(p);
  }
  return j;
}

TrialBatchResult TrialBatchResult::from_json(const nlohmann::json& j) {
  try {
    TrialBatchResult r;
    ModelKind kind = parse_model_kind(j.at("model").get<std::string>());
    r.model = kind == ModelKind::Bernoulli ? Model::bernoulli(j.at("p").get<double>()) : Model::binary();
    r.n = j.at("n").get<int>();
    r.trials = j.at("trials").get<long long>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [name, body] : j.at("quantities").items()) {
      Quantity q = parse_quantity_name(name);
      Histogram h{body.at("lo").get<int>(), body.at("counts").get<std::vector<long long>>()};
      MomentSummary m;
      m.exponent = body.at("exponent").get<double>();
      m.raw = body.at("raw_moments").get<std::array<double, 5>>();
      m.scaled = body.at("scaled_moments").get<std::array<double, 5>>();
      m.scaled_stderr = body.at("scaled_stderr").get<std::array<double, 5>>();
      r.histograms[q] = std::move(h);
      r.moments[q] = m;
    }
    if (j.contains("paths")) {
      const auto& p = j.at("paths");
      PathStatistics ps;
      ps.mean_log = p.at("mean_log").get<double>();
      ps.variance_log = p.at("variance_log").get<double>();
      ps.heavy_tailed = p.at("heavy_tailed").get<bool>();
      ps.max_paths = p.at("max").get<std::string>();
      if (!p.at("mean").is_null()) ps.mean = p.at("mean").get<double>();
      r.paths = ps;
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed simulation result: ") + e.what());
  }
}

GofResult chi_square_gof(const Histogram& observed, const DiscreteDistribution& exact, double min_bin_mass) {
  const double trials = static_cast<double>(observed.total());
  if (trials <= 0) throw StatisticsError("no observations");
  const int observed_hi = observed.lo + static_cast<int>(observed.counts.size()) - 1;
  const int lo = std::min(observed.lo, exact.lo());
  const int hi = std::max(observed_hi, exact.hi());
  auto count_at = [&](int m) -> double {
    if (m < observed.lo || m > observed_hi) return 0.0;
    return static_cast<double>(observed.counts[static_cast<std::size_t>(m - observed.lo)]);
  };

  std::vector<Bin> bins;
  Bin current;
  bool impossible = false;
  for (int m = lo; m <= hi; ++m) {
    double e = trials * exact(m);
    double o = count_at(m);
    if (e == 0.0 && o > 0.0) impossible = true;
    current.observed_a += o;
    current.expected_a += e;
    if (current.expected_a >= min_bin_mass) {
      bins.push_back(current);
      current = Bin{};
    }
  }
  if (current.expected_a > 0.0 || current.observed_a > 0.0) {
    if (bins.empty()) {
      bins.push_back(current);
    } else {
      bins.back().observed_a += current.observed_a;
      bins.back().expected_a += current.expected_a;
    }
  }
  GofResult out;
  out.bins = static_cast<int>(bins.size());
  if (impossible) {
    // Observations where the exact law puts no mass: a certain mismatch.
    out.statistic = std::numeric_limits<double>::infinity();
    out.dof = std::max(1, out.bins - 1);
    out.p_value = 0.0;
    return out;
  }
  if (bins.size() < 2) throw StatisticsError("fewer than two pooled bins; the test has no degrees of freedom");
  for (const auto& b : bins) {
    double d = b.observed_a - b.expected_a;
    out.statistic += d * d / b.expected_a;
  }
  out.dof = out.bins - 1;
  out.p_value = upper_tail(out.statistic, out.dof);
  return out;
}

GofResult chi_square_two_sample(const Histogram& a, const Histogram& b, double min_bin_mass) {
  const double na = static_cast<double>(a.total());
  const double nb = static_cast<double>(b.total());
  if (na <= 0 || nb <= 0) throw StatisticsError("both samples need observations");
  const int a_hi = a.lo + static_cast<int>(a.counts.size()) - 1;
  const int b_hi = b.lo + static_cast<int>(b.counts.size()) - 1;
  auto at = [](const Histogram& h, int hi, int m) -> double {
    if (m < h.lo || m > hi) return 0.0;
    return static_cast<double>(h.counts[static_cast<std::size_t>(m - h.lo)]);
  };
  const double fa = na / (na + nb);
  const double fb = nb / (na + nb);
  std::vector<Bin> bins;
  Bin current;
  for (int m = std::min(a.lo, b.lo); m <= std::max(a_hi, b_hi); ++m) {
    double oa = at(a, a_hi, m);
    double ob = at(b, b_hi, m);
    current.observed_a += oa;
    current.observed_b += ob;
    current.expected_a += fa * (oa + ob);
    current.expected_b += fb * (oa + ob);
    if (std::min(current.expected_a, current.expected_b) >= min_bin_mass) {
      bins.push_back(current);
      current = Bin{};
    }
  }
  if (current.observed_a + current.observed_b > 0) {
    if (bins.empty()) {
      bins.push_back(current);
    } else {
      bins.back().observed_a += current.observed_a;
      bins.back().observed_b += current.observed_b;
      bins.back().expected_a += current.expected_a;
      bins.back().expected_b += current.expected_b;
    }
  }
  if (bins.size() < 2) throw StatisticsError("fewer than two pooled bins; the test has no degrees of freedom");
  GofResult out;
  out.bins = static_cast<int>(bins.size());
  for (const auto& bin : bins) {
    double da = bin.observed_a - bin.expected_a;
    double db = bin.observed_b - bin.expected_b;
    out.statistic += da * da / bin.expected_a + db * db / bin.expected_b;
  }
  out.dof = out.bins - 1;
  out.p_value = upper_tail(out.statistic, out.dof);
  return out;
}

ScaledLimitReport compare_scaled_limit(const TrialBatchResult& result, Quantity q, const limits::LimitTarget& target,
                                       bool with_overlay) {
  auto it = result.moments.find(q);
  if (it == result.moments.end()) throw ParameterError("quantity " + to_string(q) + " was not simulated");
  const MomentSummary& m = it->second;
  ScaledLimitReport report{target, {}, {}};
  for (int r = 0; r <= 4; ++r) {
    double limit = target.moment(r);
    report.rows.push_back({r, m.scaled[r], m.scaled_stderr[r], limit, (m.scaled[r] - limit) / limit});
  }
  if (with_overlay) {
    const Histogram& h = result.histograms.at(q);
    const double scale = std::pow(static_cast<double>(result.n), target.exponent());
    const double total = static_cast<double>(h.total());
    const int hi = h.lo + static_cast<int>(h.counts.size()) - 1;
    const int bins = std::min(100, hi - h.lo + 1);
    const double width = (hi + 1.0 - h.lo) / bins;  // in unscaled units
    std::ostringstream csv;
    csv << "x,empirical_density,limit_density\n";
    for (int b = 0; b < bins; ++b) {
      double from = h.lo + b * width;
      double to = from + width;
      double mass = 0.0;
      for (int v = static_cast<int>(std::ceil(from)); v < to && v <= hi; ++v) {
        mass += static_cast<double>(h.counts[static_cast<std::size_t>(v - h.lo)]);
      }
      double x = (from + to) / 2.0 / scale;
      double density = mass / total / (width / scale);
      csv << format_double(x) << "," << format_double(density) << ",";
      if (target.family == limits::MomentFamily::MittagLeffler) {
        try {
          csv << format_double(limits::ml_density(x, target.p).value);
        } catch (const std::exception&) {
        }
      }
      csv << "\n";
    }
    report.overlay_csv = csv.str();
  }
  return report;
}

PathLawReport path_law_equality_test(const Model& model, int n, long long trials, std::uint64_t seed, int threads) {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (trials < 1) throw ParameterError("trials must be at least 1");
  std::vector<int> leftmost(static_cast<std::size_t>(trials));
  std::vector<int> random(static_cast<std::size_t>(trials));
  parallel_for(0, trials, threads, [&](long long t) {
    RngStream a(seed, static_cast<std::uint64_t>(t));
    leftmost[static_cast<std::size_t>(t)] = leftmost_path_length(grow(model, n, a).network);
    RngStream b(seed, static_cast<std::uint64_t>(trials + t));
    GrownNetwork g = grow(model, n, b);
    random[static_cast<std::size_t>(t)] = random_path_length(g.network, b);
  });
  PathLawReport report;
  report.leftmost_path = Histogram::from(leftmost);
  report.random_path = Histogram::from(random);
  if (report.leftmost_path.counts.size() == 1 && report.random_path.counts.size() == 1 &&
      report.leftmost_path.lo == report.random_path.lo) {
    report.degenerate = true;
    report.test = GofResult{0.0, 0, 1.0, 1};
    return report;
  }
  report.test = chi_square_two_sample(report.random_path, report.leftmost_path);
  return report;
}

}  // namespace splab::mc
