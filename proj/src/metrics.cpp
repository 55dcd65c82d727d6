#include "dint/metrics.hpp"

#include <cmath>
#include <limits>

#include "dint/errors.hpp"

namespace dint {

namespace {

void require_truth(const Trajectory& traj) {
  if (!traj.has_truth()) {
    throw DomainError("trajectory carries no ground truth");
  }
}

template <typename Fn>
std::size_t for_each_in(const Trajectory& traj, TimeWindow w, Fn&& fn) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const double t = traj.times[j];
    if (t < w.start || t > w.end) continue;
    fn(j);
    ++count;
  }
  return count;
}

}  // namespace

double channel_error(const Trajectory& traj, std::size_t j, int channel) {
  const auto& e = traj.errors[j];
  switch (channel) {
    case 1:
      return e.a1;
    case 2:
      return e.a2;
    case 3:
      return e.a3;
  }
  throw DomainError("channel must be 1, 2 or 3");
}

double rms_error(const Trajectory& traj, int channel, TimeWindow window) {
  require_truth(traj);
  double sum = 0.0;
  const std::size_t n = for_each_in(traj, window, [&](std::size_t j) {
    const double e = channel_error(traj, j, channel);
    sum += e * e;
  });
  if (n == 0) throw DomainError("time window contains no samples");
  return std::sqrt(sum / static_cast<double>(n));
}

double max_abs_error(const Trajectory& traj, int channel, TimeWindow window) {
  require_truth(traj);
  double peak = 0.0;
  const std::size_t n = for_each_in(traj, window, [&](std::size_t j) {
    peak = std::max(peak, std::abs(channel_error(traj, j, channel)));
  });
  if (n == 0) throw DomainError("time window contains no samples");
  return peak;
}

double drift_ratio(const Trajectory& traj) {
  require_truth(traj);
  if (traj.size() < 2) throw DomainError("trajectory too short");
  const double end = traj.times.back();
  const double late = max_abs_error(traj, 1, {0.9 * end, end});
  const double mid = max_abs_error(traj, 1, {0.5 * end, 0.6 * end});
  if (mid == 0.0) {
    return late == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return late / mid;
}

std::optional<double> settling_time(const Trajectory& traj, int channel,
                                    double threshold) {
  require_truth(traj);
  std::optional<double> settled;
  for (std::size_t j = traj.size(); j-- > 0;) {
    if (!(std::abs(channel_error(traj, j, channel)) < threshold)) break;
    settled = traj.times[j];
  }
  return settled;
}

}  // namespace dint
