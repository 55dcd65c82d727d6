#pragma once

#include <optional>

#include "dint/solver.hpp"

namespace dint {

/// Closed time interval [start, end] in seconds.
struct TimeWindow {
  double start = 0.0;
  double end = 0.0;
};

/// Error of channel 1, 2 or 3 at sample j.
double channel_error(const Trajectory& traj, std::size_t j, int channel);

/// RMS of the channel error over the recorded samples inside the window.
/// Throws DomainError when the trajectory has no truth or the window holds
/// no samples.
double rms_error(const Trajectory& traj, int channel, TimeWindow window);

double max_abs_error(const Trajectory& traj, int channel, TimeWindow window);

/// max|e1| over the last 10% of the run divided by max|e1| over the
/// [50%, 60%] window. 0 when both windows are error free, +inf when only
/// the reference window is.
double drift_ratio(const Trajectory& traj);

/// Earliest recorded time after which |e_channel| stays below threshold up to
/// the end of the run, or nullopt if the final sample is not below it.
std::optional<double> settling_time(const Trajectory& traj, int channel,
                                    double threshold);

}  // namespace dint
