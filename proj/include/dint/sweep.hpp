#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dint/observers.hpp"
#include "dint/solver.hpp"

namespace dint {

/// Least-squares fit of y(t) ~ c1 sin(omega t) + c2 cos(omega t).
struct SinusoidFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double amplitude = 0.0;  // sqrt(c1^2 + c2^2)
  double phase = 0.0;      // atan2(c2, c1)
  double residual_rms = 0.0;
};

/// Largest accepted condition number of the 2x2 normal matrix.
inline constexpr double kMaxFitCondition = 1e8;

/// Solves the normal equations in closed form. Throws DomainError for
/// mismatched lengths, fewer than two samples or omega <= 0, and
/// IllConditioned when the samples cannot separate sine from cosine.
SinusoidFit fit_sinusoid(std::span<const double> times,
                         std::span<const double> values, double omega);

/// start, start+step, ... up to and including stop. Values are computed as
/// start + i*step.
std::vector<double> frequency_grid(double start, double step, double stop);

/// 0.1, 0.6, ..., 99.6 Hz (200 points).
std::vector<double> paper_frequency_grid();

/// Initial observer state for every sweep frequency.
enum class SweepStart {
  /// x = (0, -A/omega, 0): the periodic integrals of A sin(omega t) at t=0,
  /// so the slow observer mode is not excited.
  integral_matched,
  zero,
};

const char* to_string(SweepStart s) noexcept;
SweepStart parse_sweep_start(const std::string& name);

struct SweepConfig {
  std::vector<double> freqs_hz = paper_frequency_grid();
  double amplitude = 1.0;
  double step_h = 1e-3;
  std::size_t samples = 50000;
  /// Leading fraction of the samples left out of the fit.
  double discard_fraction = 0.0;
  std::vector<int> channels{1, 2, 3};
  Method method = Method::rk4;
  SweepStart start = SweepStart::integral_matched;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 1;
};

/// Throws ConfigError on an unusable config. Returns non-fatal warnings.
std::vector<std::string> check_sweep_config(const ObserverParams& p,
                                            const SweepConfig& cfg);

enum class CurveSource { sweep, analytic };
enum class RowFlag { ok, diverged, ill_conditioned };

const char* to_string(CurveSource s) noexcept;
const char* to_string(RowFlag f) noexcept;

struct BodeRow {
  double f_hz = 0.0;
  double omega = 0.0;
  int channel = 3;
  double magnitude_db = 0.0;
  double phase = 0.0;  // atan2 of the fitted (or exact) response
  double phase_unwrapped = 0.0;
  double residual_rms = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  CurveSource source = CurveSource::sweep;
  RowFlag flag = RowFlag::ok;
};

/// Rows ordered by frequency, then channel.
struct BodeCurve {
  ObserverParams params;
  SweepConfig config;
  CurveSource source = CurveSource::sweep;
  std::vector<BodeRow> rows;
  std::vector<std::string> warnings;

  std::vector<BodeRow> channel_rows(int channel) const;
  std::size_t flagged_count() const noexcept;
};

/// Simulates the observer against A sin(2 pi f t) at every frequency, fits
/// each requested channel and assembles magnitude and phase rows. A
/// diverged or ill-conditioned frequency is flagged and the sweep goes on.
/// Output order does not depend on the thread count.
BodeCurve sweep_observer(const ObserverParams& p, const SweepConfig& cfg);

/// Same grid and channels evaluated with the exact linear transfer function.
BodeCurve analytic_curve(const ObserverParams& p, const SweepConfig& cfg);

/// Fills phase_unwrapped per channel, shifting each phase by the multiple of
/// 2 pi closest to the previous unwrapped value. Flagged rows are skipped.
BodeCurve phase_unwrap(BodeCurve curve);

/// Writes f_hz,omega_rad_s,channel,magnitude_db,phase_rad,
/// phase_unwrapped_rad,residual_rms,source,flag. Set header=false to append.
void write_bode_csv(std::ostream& os, const BodeCurve& curve,
                    bool header = true);

}  // namespace dint
