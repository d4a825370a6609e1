#include "splab/limits.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>

#include "splab/errors.hpp"

namespace splab::limits {

namespace {

using std::numbers::pi;

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("need 0 < p < 1");
}

// Ray angle for the integration variable. The integrand is the imaginary part of
// e^{i pi p} exp(-w^{1/p} - x w e^{i pi p}); along w = t e^{i psi} both terms
// decay once |psi| < pi p / 2 and |pi p + psi| < pi / 2. For p <= 1/2 the real
// axis already qualifies; beyond that exp(-x w cos(pi p)) grows on the real
// axis and the ray is turned clockwise into the middle of the admissible range.
double ray_angle(double p) {
  if (p <= 0.5) return 0.0;
  return 0.5 * (-pi * p / 2.0 + (pi / 2.0 - pi * p));
}

// Smallest T with a t^{1/p} + b t > 41.5 (a, b >= 0); the envelope is then below 1e-18.
double truncation_point(double a, double b, double p) {
  auto exponent = [&](double t) { return a * std::pow(t, 1.0 / p) + b * t; };
  double hi = 1.0;
  while (exponent(hi) < 41.5) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-9 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (exponent(mid) >= 41.5 ? hi : lo) = mid;
  }
  return hi;
}

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;

}  // namespace

double ml_moment(double r, double p) {
  check_p(p);
  if (r < 0) throw ParameterError("moment order must be non-negative");
  if (r == 0) return 1.0;
  return std::exp(std::lgamma(r + 1.0) - std::lgamma(r * p + 1.0));
}

QuadratureResult ml_density(double x, double p, const QuadratureConfig& config) {
  check_p(p);
  if (!(x > 0.0)) throw ParameterError("density argument must be positive");
  const double psi = ray_angle(p);
  const double inv_p = 1.0 / p;
  const std::complex<double> power_dir = std::polar(1.0, psi * inv_p);
  const std::complex<double> linear_dir = std::polar(x, pi * p + psi);
  const std::complex<double> front = std::polar(1.0, pi * p + psi);
  auto integrand = [&](double t) {
    return std::imag(front * std::exp(-std::pow(t, inv_p) * power_dir - t * linear_dir));
  };
  const double W = truncation_point(power_dir.real(), linear_dir.real(), p);
  // Pieces of at most half an oscillation keep every subintegral smooth.
  const double phase = std::pow(W, inv_p) * std::fabs(power_dir.imag()) + W * std::fabs(linear_dir.imag());
  const int pieces = std::max(1, static_cast<int>(std::ceil(phase / pi)));
  if (pieces > config.max_pieces) {
    throw QuadratureError("density at x=" + std::to_string(x) + " needs " + std::to_string(pieces) +
                              " oscillation pieces, budget is " + std::to_string(config.max_pieces),
                          std::numeric_limits<double>::infinity());
  }
  const double h = W / pieces;
  double total = 0.0;
  double error = 0.0;
  for (int i = 0; i < pieces; ++i) {
    double piece_error = 0.0;
    total += Kronrod::integrate(integrand, i * h, (i + 1) * h, config.max_depth, config.piece_tolerance, &piece_error);
    error += piece_error;
  }
  const double scale = 1.0 / (pi * p);
  QuadratureResult result{total * scale, error * scale};
  if (!(result.error_estimate <= config.tolerance) || !std::isfinite(result.value)) {
    throw QuadratureError("Mittag-Leffler density at x=" + std::to_string(x) + ", p=" + std::to_string(p) +
                              " missed the tolerance " + std::to_string(config.tolerance),
                          result.error_estimate);
  }
  return result;
}

double ml_density_halfnormal(double x) {
  if (!(x > 0.0)) throw ParameterError("density argument must be positive");
  return std::exp(-x * x / 4.0) / std::sqrt(pi);
}

QuadratureResult length_limit_density(double x, double p, const QuadratureConfig& config) {
  check_p(p);
  return ml_density(x, 1.0 - p, config);
}

double ml_integration_cutoff(int r, double p, double tail) {
  check_p(p);
  // int_X^inf x^r f <= E(X^{r+s}) / X^s for every s > 0.
  auto bound = [&](double X) {
    double best = std::numeric_limits<double>::infinity();
    for (int s = 1; s <= 200; ++s) {
      best = std::min(best, std::exp(std::lgamma(r + s + 1.0) - std::lgamma((r + s) * p + 1.0) - s * std::log(X)));
    }
    return best;
  };
  double X = 1.0;
  while (bound(X) > tail) X *= 1.25;
  return X;
}

std::vector<QuadratureResult> ml_density_moments(int r_max, double p, const QuadratureConfig& config) {
  check_p(p);
  if (r_max < 0) throw ParameterError("r_max must be non-negative");
  const double X = ml_integration_cutoff(r_max, p);
  const int pieces = std::max(8, static_cast<int>(std::ceil(X / 0.25)));
  const double h = X / pieces;

  std::map<double, double> density;
  auto f = [&](double x) {
    auto it = density.find(x);
    if (it != density.end()) return it->second;
    double v = ml_density(x, p, config).value;
    density.emplace(x, v);
    return v;
  };

  std::vector<QuadratureResult> out;
  for (int r = 0; r <= r_max; ++r) {
    auto g = [&](double x) { return std::pow(x, r) * f(x); };
    double fine = 0.0;
    double coarse = 0.0;
    for (int i = 0; i < pieces; ++i) {
      fine += boost::math::quadrature::gauss<double, 30>::integrate(g, i * h, (i + 1) * h);
      coarse += boost::math::quadrature::gauss<double, 20>::integrate(g, i * h, (i + 1) * h);
    }
    out.push_back({fine, std::fabs(fine - coarse)});
  }
  return out;
}

std::string to_string(MomentFamily f) {
  switch (f) {
    case MomentFamily::MittagLeffler:
      return "ml";
    case MomentFamily::BinaryLength:
      return "binary-length";
    case MomentFamily::BinaryDegree:
      return "binary-degree";
  }
  return "?";
}

MomentFamily parse_moment_family(const std::string& text) {
  if (text == "ml") return MomentFamily::MittagLeffler;
  if (text == "binary-length") return MomentFamily::BinaryLength;
  if (text == "binary-degree") return MomentFamily::BinaryDegree;
  throw ParameterError("unknown moment family '" + text + "'");
}

int MomentSequence::first_convexity_violation(double slack) const {
  for (std::size_t r = 1; r + 1 < values.size(); ++r) {
    double second = std::log(values[r - 1]) - 2.0 * std::log(values[r]) + std::log(values[r + 1]);
    if (second < -slack) return static_cast<int>(r);
  }
  return -1;
}

MomentSequence ml_moments(int r_max, double p) {
  check_p(p);
  if (r_max < 0) throw ParameterError("r_max must be non-negative");
  MomentSequence s{MomentFamily::MittagLeffler, p, {}, {}};
  for (int r = 0; r <= r_max; ++r) s.values.push_back(ml_moment(r, p));
  return s;
}

MomentSequence binary_length_moments(int r_max) {
  if (r_max < 0) throw ParameterError("r_max must be non-negative");
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  MomentSequence s{MomentFamily::BinaryLength, 0.0, {1.0}, {}};
  if (r_max >= 1) s.c.push_back((3.0 + phi) / 5.0);
  for (int r = 2; r <= r_max; ++r) {
    double sum = 0.0;
    for (int k = 1; k < r; ++k) sum += (k * phi + 1.0) * s.c[k] * s.c[r - k];
    s.c.push_back(sum / (phi * (r - 1) * ((r + 1) * phi + 1.0)));
  }
  for (int r = 0; r <= r_max; ++r) {
    s.values.push_back(std::exp(std::lgamma(r + 1.0) - std::lgamma(r * phi + 1.0)) * s.c[r]);
  }
  return s;
}

MomentSequence binary_degree_moments(int r_max) {
  if (r_max < 0) throw ParameterError("r_max must be non-negative");
  const double b = std::sqrt(2.0) - 1.0;
  MomentSequence s{MomentFamily::BinaryDegree, 0.0, {1.0}, {}};
  if (r_max >= 1) s.c.push_back((1.0 + std::sqrt(2.0)) / (2.0 * std::sqrt(2.0)));
  for (int r = 2; r <= r_max; ++r) {
    double sum = 0.0;
    for (int k = 1; k < r; ++k) sum += s.c[k] * s.c[r - k];
    double d = r * b + 1.0;
    s.c.push_back(sum / (d * d - 2.0));
  }
  for (int r = 0; r <= r_max; ++r) {
    double d = r * b + 1.0;
    s.values.push_back(std::exp(std::lgamma(r + 1.0) - std::lgamma(d)) * d * s.c[r]);
  }
  return s;
}

double LimitTarget::exponent() const {
  switch (family) {
    case MomentFamily::MittagLeffler:
      return p;
    case MomentFamily::BinaryLength:
      return (std::sqrt(5.0) - 1.0) / 2.0;
    case MomentFamily::BinaryDegree:
      return std::sqrt(2.0) - 1.0;
  }
  return 0.0;
}

double LimitTarget::moment(int r) const {
  switch (family) {
    case MomentFamily::MittagLeffler:
      return ml_moment(r, p);
    case MomentFamily::BinaryLength:
      return binary_length_moments(r).values.back();
    case MomentFamily::BinaryDegree:
      return binary_degree_moments(r).values.back();
  }
  return 0.0;
}

double scaled_moment_gap(const LimitTarget& target, int n, int r, const DiscreteDistribution& law) {
  if (r == 0) return 0.0;
  if (n < 1 || r < 0) throw ParameterError("need n >= 1 and r >= 0");
  const double scale = std::pow(static_cast<double>(n), target.exponent());
  return std::fabs(law.moment(r, scale) - target.moment(r));
}

double scaled_moment_gap_from_raw(const LimitTarget& target, int n, int r, double raw_moment) {
  if (r == 0) return 0.0;
  if (n < 1 || r < 0) throw ParameterError("need n >= 1 and r >= 0");
  const double scale = std::pow(static_cast<double>(n), target.exponent() * r);
  return std::fabs(raw_moment / scale - target.moment(r));
}

}  // namespace splab::limits
