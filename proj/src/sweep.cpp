#include "dint/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "dint/analytic.hpp"
#include "dint/errors.hpp"
#include "dint/format.hpp"

namespace dint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FrequencyResult {
  std::vector<BodeRow> rows;
};

BodeRow flagged_row(double f_hz, double omega, int channel, RowFlag flag) {
  BodeRow row;
  row.f_hz = f_hz;
  row.omega = omega;
  row.channel = channel;
  row.magnitude_db = row.phase = row.phase_unwrapped = kNaN;
  row.residual_rms = row.c1 = row.c2 = kNaN;
  row.flag = flag;
  return row;
}

double channel_value(const ObserverState& x, int channel) {
  switch (channel) {
    case 1:
      return x.x1;
    case 2:
      return x.x2;
    default:
      return x.x3;
  }
}

FrequencyResult sweep_one(const ObserverParams& p, const SweepConfig& cfg,
                          double f_hz) {
  const double omega = kTwoPi * f_hz;
  const double amp = cfg.amplitude;
  const std::size_t n = cfg.samples;
  const auto skip = static_cast<std::size_t>(
      std::floor(cfg.discard_fraction * static_cast<double>(n)));
  const std::size_t kept = n - skip;

  FrequencyResult out;
  std::vector<double> times(kept);
  std::vector<std::vector<double>> values(cfg.channels.size(),
                                          std::vector<double>(kept));

  ObserverState x;
  if (cfg.start == SweepStart::integral_matched) x.x2 = -amp / omega;
  const InputFn input = [amp, omega](double t) {
    return amp * std::sin(omega * t);
  };
  try {
    for (std::size_t k = 0; k < n; ++k) {
      x = step(p, x, static_cast<double>(k) * cfg.step_h, cfg.step_h,
               cfg.method, input);
      if (k + 1 <= skip) continue;
      const std::size_t j = k - skip;
      times[j] = static_cast<double>(k + 1) * cfg.step_h;
      for (std::size_t c = 0; c < cfg.channels.size(); ++c) {
        values[c][j] = channel_value(x, cfg.channels[c]);
      }
    }
  } catch (const DivergedState&) {
    for (int ch : cfg.channels) {
      out.rows.push_back(flagged_row(f_hz, omega, ch, RowFlag::diverged));
    }
    return out;
  }

  for (std::size_t c = 0; c < cfg.channels.size(); ++c) {
    const int ch = cfg.channels[c];
    try {
      const SinusoidFit fit = fit_sinusoid(times, values[c], omega);
      BodeRow row;
      row.f_hz = f_hz;
      row.omega = omega;
      row.channel = ch;
      row.magnitude_db = 20.0 * std::log10(fit.amplitude / amp);
      row.phase = fit.phase;
      row.phase_unwrapped = fit.phase;
      row.residual_rms = fit.residual_rms;
      row.c1 = fit.c1;
      row.c2 = fit.c2;
      out.rows.push_back(row);
    } catch (const IllConditioned&) {
      out.rows.push_back(flagged_row(f_hz, omega, ch, RowFlag::ill_conditioned));
    }
  }
  return out;
}

}  // namespace

SinusoidFit fit_sinusoid(std::span<const double> times,
                         std::span<const double> values, double omega) {
  if (times.size() != values.size()) {
    throw DomainError("fit_sinusoid: times and values differ in length");
  }
  if (times.size() < 2) throw DomainError("fit_sinusoid: need >= 2 samples");
  if (!(omega > 0.0)) throw DomainError("fit_sinusoid: omega must be > 0");

  double ss = 0.0, cc = 0.0, sc = 0.0, ys = 0.0, yc = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = std::sin(omega * times[i]);
    const double c = std::cos(omega * times[i]);
    ss += s * s;
    cc += c * c;
    sc += s * c;
    ys += values[i] * s;
    yc += values[i] * c;
  }

  // Eigenvalues of [[ss, sc], [sc, cc]].
  const double mean = 0.5 * (ss + cc);
  const double radius = std::hypot(0.5 * (ss - cc), sc);
  const double lmax = mean + radius;
  const double lmin = mean - radius;
  if (!(lmin > 0.0) || lmax / lmin > kMaxFitCondition) {
    throw IllConditioned("sin/cos regressors are not separable on these samples");
  }

  const double det = ss * cc - sc * sc;
  SinusoidFit fit;
  fit.c1 = (cc * ys - sc * yc) / det;
  fit.c2 = (ss * yc - sc * ys) / det;
  fit.amplitude = std::hypot(fit.c1, fit.c2);
  fit.phase = std::atan2(fit.c2, fit.c1);

  double sq = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double r = values[i] - fit.c1 * std::sin(omega * times[i]) -
                     fit.c2 * std::cos(omega * times[i]);
    sq += r * r;
  }
  fit.residual_rms = std::sqrt(sq / static_cast<double>(times.size()));
  return fit;
}

std::vector<double> frequency_grid(double start, double step, double stop) {
  if (!(step > 0.0)) throw ConfigError("frequency step must be > 0");
  std::vector<double> grid;
  // Tolerate rounding in (stop - start) / step.
  const auto count =
      static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.push_back(start + static_cast<double>(i) * step);
  }
  return grid;
}

std::vector<double> paper_frequency_grid() {
  return frequency_grid(0.1, 0.5, 100.0);
}

const char* to_string(SweepStart s) noexcept {
  return s == SweepStart::zero ? "zero" : "integral_matched";
}

SweepStart parse_sweep_start(const std::string& name) {
  if (name == "zero") return SweepStart::zero;
  if (name == "integral_matched") return SweepStart::integral_matched;
  throw ConfigError("unknown sweep start '" + name + "'");
}

const char* to_string(CurveSource s) noexcept {
  return s == CurveSource::sweep ? "sweep" : "analytic";
}

const char* to_string(RowFlag f) noexcept {
  switch (f) {
    case RowFlag::ok:
      return "";
    case RowFlag::diverged:
      return "diverged";
    case RowFlag::ill_conditioned:
      return "ill_conditioned";
  }
  return "";
}

std::vector<std::string> check_sweep_config(const ObserverParams& p,
                                            const SweepConfig& cfg) {
  if (cfg.freqs_hz.empty()) throw ConfigError("sweep needs at least one frequency");
  for (std::size_t i = 0; i < cfg.freqs_hz.size(); ++i) {
    if (!(cfg.freqs_hz[i] > 0.0)) throw ConfigError("frequencies must be > 0");
    if (i > 0 && !(cfg.freqs_hz[i] > cfg.freqs_hz[i - 1])) {
      throw ConfigError("frequencies must be strictly increasing");
    }
  }
  if (!(cfg.amplitude > 0.0)) throw ConfigError("sweep amplitude must be > 0");
  if (cfg.samples < 2) throw ConfigError("sweep needs >= 2 samples");
  if (!(cfg.discard_fraction >= 0.0 && cfg.discard_fraction < 1.0)) {
    throw ConfigError("discard_fraction must lie in [0, 1)");
  }
  const auto kept = cfg.samples - static_cast<std::size_t>(std::floor(
                                      cfg.discard_fraction *
                                      static_cast<double>(cfg.samples)));
  if (kept < 2) throw ConfigError("discard_fraction leaves fewer than 2 samples");
  if (cfg.channels.empty()) throw ConfigError("sweep needs at least one channel");
  for (int ch : cfg.channels) {
    if (ch < 1 || ch > 3) throw ConfigError("channels must be 1, 2 or 3");
  }
  SimConfig sim;
  sim.step_h = cfg.step_h;
  sim.duration = static_cast<double>(cfg.samples) * cfg.step_h;
  check_config(p, sim);

  std::vector<std::string> warnings;
  const double span = static_cast<double>(cfg.samples) * cfg.step_h;
  if (span * cfg.freqs_hz.front() < 1.0) {
    warnings.push_back("sample span " + format_g(span) +
                       " s is shorter than one period of " +
                       format_g(cfg.freqs_hz.front()) + " Hz");
  }
  return warnings;
}

std::vector<BodeRow> BodeCurve::channel_rows(int channel) const {
  std::vector<BodeRow> out;
  for (const auto& row : rows) {
    if (row.channel == channel) out.push_back(row);
  }
  return out;
}

std::size_t BodeCurve::flagged_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(),
      [](const BodeRow& r) { return r.flag != RowFlag::ok; }));
}

BodeCurve sweep_observer(const ObserverParams& p, const SweepConfig& cfg) {
  require_valid(p);
  BodeCurve curve{p, cfg, CurveSource::sweep, {}, check_sweep_config(p, cfg)};

  const std::size_t nf = cfg.freqs_hz.size();
  std::vector<FrequencyResult> results(nf);
  unsigned threads = cfg.threads == 0 ? std::thread::hardware_concurrency()
                                      : cfg.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(nf));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < nf; i = next++) {
      results[i] = sweep_one(p, cfg, cfg.freqs_hz[i]);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& r : results) {
    curve.rows.insert(curve.rows.end(), r.rows.begin(), r.rows.end());
  }
  return phase_unwrap(std::move(curve));
}

BodeCurve analytic_curve(const ObserverParams& p, const SweepConfig& cfg) {
  BodeCurve curve{p, cfg, CurveSource::analytic, {}, {}};
  for (double f : cfg.freqs_hz) {
    const double omega = kTwoPi * f;
    for (int ch : cfg.channels) {
      const TransferEval h = transfer_eval(p, ch, omega);
      BodeRow row;
      row.f_hz = f;
      row.omega = omega;
      row.channel = ch;
      row.magnitude_db = h.gain_db;
      row.phase = h.phase;
      row.phase_unwrapped = h.phase;
      row.residual_rms = 0.0;
      row.c1 = h.value.real();
      row.c2 = h.value.imag();
      row.source = CurveSource::analytic;
      curve.rows.push_back(row);
    }
  }
  return phase_unwrap(std::move(curve));
}

BodeCurve phase_unwrap(BodeCurve curve) {
  for (int ch = 1; ch <= 3; ++ch) {
    bool have_prev = false;
    double prev = 0.0;
    for (auto& row : curve.rows) {
      if (row.channel != ch || row.flag != RowFlag::ok) continue;
      double value = row.phase;
      if (have_prev) value += kTwoPi * std::round((prev - value) / kTwoPi);
      row.phase_unwrapped = value;
      prev = value;
      have_prev = true;
    }
  }
  return curve;
}

void write_bode_csv(std::ostream& os, const BodeCurve& curve, bool header) {
  if (header) {
    os << "f_hz,omega_rad_s,channel,magnitude_db,phase_rad,"
          "phase_unwrapped_rad,residual_rms,source,flag\n";
  }
  for (const auto& row : curve.rows) {
    os << format_sci(row.f_hz) << ',' << format_sci(row.omega) << ','
       << row.channel << ',' << format_sci(row.magnitude_db) << ','
       << format_sci(row.phase) << ',' << format_sci(row.phase_unwrapped)
       << ',' << format_sci(row.residual_rms) << ',' << to_string(row.source)
       << ',' << to_string(row.flag) << '\n';
  }
}

}  // namespace dint
