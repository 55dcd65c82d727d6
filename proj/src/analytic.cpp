#include "dint/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "dint/errors.hpp"
#include "dint/format.hpp"

namespace dint {

namespace {

constexpr int kGridPerDecade = 400;
constexpr int kBisectIterations = 80;

void check_channel(int channel) {
  if (channel < 1 || channel > 3) {
    throw DomainError("channel must be 1, 2 or 3, got " +
                      std::to_string(channel));
  }
}

double to_db(double gain) {
  return gain > 0.0 ? 20.0 * std::log10(gain)
                    : -std::numeric_limits<double>::infinity();
}

// Bisection on log(omega) for the point where level(omega) crosses target,
// given level(lo) >= target > level(hi).
double bisect_crossing(const std::function<double(double)>& level,
                       double target, double lo, double hi) {
  double a = std::log(lo);
  double b = std::log(hi);
  for (int i = 0; i < kBisectIterations; ++i) {
    const double m = 0.5 * (a + b);
    if (level(std::exp(m)) >= target) {
      a = m;
    } else {
      b = m;
    }
  }
  return std::exp(0.5 * (a + b));
}

struct Peak {
  double omega;
  double level;
};

// Golden-section maximization of level over log(omega) in [lo, hi].
Peak refine_peak(const std::function<double(double)>& level, double lo,
                   double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo);
  double b = std::log(hi);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = level(std::exp(c));
  double fd = level(std::exp(d));
  for (int i = 0; i < 100 && b - a > 1e-12; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = level(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = level(std::exp(d));
    }
  }
  return fc > fd ? Peak{std::exp(c), fc} : Peak{std::exp(d), fd};
}

}  // namespace

TransferEval transfer_eval(const ObserverParams& p, int channel,
                           double omega) {
  check_channel(channel);
  if (!p.is_effectively_linear()) {
    throw DomainError("closed-form response exists only for the linear observer");
  }
  const std::complex<double> s(0.0, omega);
  const double eps = p.epsilon();
  const double eps4 = p.eps2() * p.eps2();
  // eps^4 s^3 + k3 s^2 + k2 eps^2 s + k1 eps, Horner form.
  const std::complex<double> den =
      ((eps4 * s + p.k3()) * s + p.k2() * p.eps2()) * s + p.k1() * eps;
  if (std::abs(den) < 1e-300) {
    throw SingularDenominator("transfer denominator vanishes at omega=" +
                              format_g(omega));
  }
  std::complex<double> num = p.k3();
  for (int i = 1; i < channel; ++i) num *= s;

  TransferEval out;
  out.channel = channel;
  out.omega = omega;
  out.value = num / den;
  out.gain = std::abs(out.value);
  out.gain_db = to_db(out.gain);
  out.phase = std::arg(out.value);
  return out;
}

std::complex<double> limit_transfer(int channel, double omega) {
  check_channel(channel);
  if (channel == 3) return {1.0, 0.0};
  if (omega == 0.0) {
    throw SingularAtDC("ideal integrator is singular at omega=0");
  }
  const std::complex<double> s(0.0, omega);
  return channel == 2 ? 1.0 / s : 1.0 / (s * s);
}

bool is_hurwitz_cubic(double c2, double c1, double c0) noexcept {
  return c2 > 0.0 && c1 > 0.0 && c0 > 0.0 && c2 * c1 > c0;
}

double cutoff_frequency(const ObserverParams& p, int channel,
                        const CutoffOptions& options) {
  check_channel(channel);
  if (!(options.drop_db > 0.0)) throw DomainError("drop_db must be > 0");
  const double lo = options.search_low;
  const double hi = options.search_high;
  if (!(lo > 0.0 && hi > lo)) throw DomainError("empty cutoff search bracket");

  std::function<double(double)> level;
  if (options.reference == CutoffReference::peak) {
    level = [&](double w) { return transfer_eval(p, channel, w).gain_db; };
  } else {
    level = [&](double w) {
      return transfer_eval(p, channel, w).gain_db -
             to_db(std::abs(limit_transfer(channel, w)));
    };
  }

  const double decades = std::log10(hi / lo);
  const auto points =
      static_cast<std::size_t>(std::ceil(decades * kGridPerDecade)) + 1;
  std::vector<double> grid(points);
  std::vector<double> levels(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
    grid[i] = lo * std::pow(hi / lo, frac);
    levels[i] = level(grid[i]);
  }

  if (options.reference == CutoffReference::ideal) {
    const double target = -options.drop_db;
    if (levels.back() >= target) {
      throw NotFound("gain still within drop_db of ideal at top of bracket");
    }
    for (std::size_t i = points - 1; i-- > 0;) {
      if (levels[i] >= target) {
        return bisect_crossing(level, target, grid[i], grid[i + 1]);
      }
    }
    throw NotFound("gain never within drop_db of the ideal response");
  }

  std::size_t ipeak = 0;
  for (std::size_t i = 1; i < points; ++i) {
    if (levels[i] > levels[ipeak]) ipeak = i;
  }
  Peak peak = refine_peak(level, grid[ipeak == 0 ? 0 : ipeak - 1],
                          grid[std::min(ipeak + 1, points - 1)]);
  if (peak.level < levels[ipeak]) peak = {grid[ipeak], levels[ipeak]};
  const double target = peak.level - options.drop_db;
  double last_above = peak.omega;
  for (std::size_t i = 0; i < points; ++i) {
    if (grid[i] <= peak.omega) continue;
    if (levels[i] < target) {
      return bisect_crossing(level, target, last_above, grid[i]);
    }
    last_above = grid[i];
  }
  throw NotFound("no drop of " + format_g(options.drop_db) +
                 " dB below the peak inside the search bracket");
}

}  // namespace dint
