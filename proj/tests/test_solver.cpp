#include "dint/solver.hpp"

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "dint/errors.hpp"
#include "dint/metrics.hpp"
#include "oracles.hpp"

namespace dint {
namespace {

const Gains kPaperGains{0.1, 0.1, 1.0};

double zero_input(double) { return 0.0; }

TEST(Step, EulerAtEquilibriumIsIdentity) {
  const auto p = ObserverParams::nonlinear(kPaperGains, 0.2, 0.3);
  EXPECT_EQ(step(p, {}, 0.0, 1e-3, Method::euler, zero_input), ObserverState{});
}

TEST(Step, SingleEulerUpdate) {
  const auto p = ObserverParams::linear(kPaperGains, 0.2);
  const ObserverState x = step(p, {1.0, 1.0, 1.0}, 0.0, 1e-3, Method::euler, zero_input);
  EXPECT_DOUBLE_EQ(x.x1, 1.001);
  EXPECT_DOUBLE_EQ(x.x2, 1.001);
  EXPECT_NEAR(x.x3, 0.36, 1e-12);
}

// Local error of one RK4 step against exp(A h) x0 must shrink like h^5.
TEST(Step, Rk4MatchesMatrixExponential) {
  const oracle::Gains3 k{0.1, 0.1, 1.0};
  const double eps = 0.2;
  const auto p = ObserverParams::linear(kPaperGains, eps);
  const Eigen::Matrix3d a = oracle::linear_system_matrix(k, eps);
  const Eigen::Vector3d x0(0.3, -1.0, 2.0);

  auto local_error = [&](double h) {
    const ObserverState x =
        step(p, {x0(0), x0(1), x0(2)}, 0.0, h, Method::rk4, zero_input);
    const Eigen::Vector3d exact = (a * h).exp() * x0;
    return (Eigen::Vector3d(x.x1, x.x2, x.x3) - exact).norm();
  };
  const double e1 = local_error(4e-4);
  const double e2 = local_error(2e-4);
  EXPECT_LT(e1, 1e-4);
  EXPECT_NEAR(std::log2(e1 / e2), 5.0, 0.3);
}

TEST(Step, DivergenceCarriesTime) {
  const auto p = ObserverParams::linear(kPaperGains, 0.2);
  try {
    step(p, {}, 2.5, 1e-3, Method::rk4, [](double) { return NAN; });
    FAIL() << "expected DivergedState";
  } catch (const DivergedState& e) {
    EXPECT_EQ(e.time(), 2.5);
  }
}

TEST(Simulate, ZeroSignalStaysAtOrigin) {
  const SimConfig cfg{1e-3, 1.0, {}, Method::rk4, 1};
  for (auto p : {ObserverParams::linear(kPaperGains, 0.2),
                 ObserverParams::nonlinear(kPaperGains, 0.2, 0.3)}) {
    const Trajectory traj = simulate(p, SignalSpec::sinusoid(0.0, 3.0), cfg);
    ASSERT_EQ(traj.size(), 1001u);
    for (std::size_t j = 0; j < traj.size(); ++j) {
      EXPECT_EQ(traj.states[j], ObserverState{});
      EXPECT_EQ(traj.errors[j].a1, 0.0);
    }
  }
}

TEST(Simulate, TimeGridAndErrorsAreConsistent) {
  SimConfig cfg{1e-3, 20.0, {0.0, 1.0, 0.0}, Method::rk4, 7};
  const Trajectory traj = simulate(ObserverParams::nonlinear(kPaperGains, 0.2, 0.3),
                                   SignalSpec::noisy_reference(), cfg);
  ASSERT_EQ(traj.size(), 20000u / 7 + 1);
  EXPECT_EQ(traj.states.size(), traj.size());
  EXPECT_EQ(traj.inputs.size(), traj.size());
  EXPECT_EQ(traj.truths.size(), traj.size());
  EXPECT_EQ(traj.errors.size(), traj.size());
  for (std::size_t j = 0; j < traj.size(); ++j) {
    EXPECT_EQ(traj.times[j], static_cast<double>(j * 7) * 1e-3);
    if (j > 0) EXPECT_GT(traj.times[j], traj.times[j - 1]);
    EXPECT_EQ(traj.errors[j].a1, traj.states[j].x1 - traj.truths[j].a1);
    EXPECT_EQ(traj.errors[j].a2, traj.states[j].x2 - traj.truths[j].a2);
    EXPECT_EQ(traj.errors[j].a3, traj.states[j].x3 - traj.truths[j].a3);
  }
  EXPECT_DOUBLE_EQ(traj.errors[0].a2, 0.686);
}

TEST(Simulate, IsDeterministic) {
  SimConfig cfg{1e-3, 5.0, {0.0, 1.0, 0.0}, Method::rk4, 1};
  const auto p = ObserverParams::nonlinear(kPaperGains, 0.2, 0.3);
  const Trajectory a = simulate(p, SignalSpec::noisy_reference(), cfg);
  const Trajectory b = simulate(p, SignalSpec::noisy_reference(), cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) EXPECT_EQ(a.states[j], b.states[j]);
}

TEST(Simulate, CompositeSignalHasNoTruth) {
  SimConfig cfg{1e-3, 1.0, {}, Method::rk4, 10};
  SignalSpec spec{SignalKind::composite, 0.0, 0.0, SignalSpec::standard_noise()};
  const Trajectory traj =
      simulate(ObserverParams::linear(kPaperGains, 0.2), spec, cfg);
  EXPECT_FALSE(traj.has_truth());
  EXPECT_TRUE(traj.errors.empty());
  EXPECT_THROW(rms_error(traj, 1, {0.0, 1.0}), DomainError);
}

TEST(Simulate, RejectsBadConfig) {
  const auto p = ObserverParams::linear(kPaperGains, 0.2);
  const auto sig = SignalSpec::reference();
  // h * k3 / eps^4 = 0.004 * 625 = 2.5
  EXPECT_THROW(simulate(p, sig, {4e-3, 1.0, {}, Method::rk4, 1}), ConfigError);
  EXPECT_THROW(simulate(p, sig, {0.0, 1.0, {}, Method::rk4, 1}), ConfigError);
  EXPECT_THROW(simulate(p, sig, {1e-3, -1.0, {}, Method::rk4, 1}), ConfigError);
  EXPECT_THROW(simulate(p, sig, {1e-3, 1.0, {}, Method::rk4, 0}), ConfigError);
  EXPECT_THROW(simulate(ObserverParams::linear({0.1, 0.0, 1.0}, 0.2), sig,
                        {1e-3, 1.0, {}, Method::rk4, 1}),
               DomainError);
}

TEST(Simulate, DivergedInitialState) {
  const auto p = ObserverParams::linear(kPaperGains, 0.2);
  EXPECT_THROW(simulate(p, SignalSpec::reference(),
                        {1e-3, 1.0, {INFINITY, 0, 0}, Method::rk4, 1}),
               DivergedState);
}

// Halving h shrinks the end-state error by ~16x (RK4) and ~2x (Euler),
// measured against an h = 1e-5 RK4 reference run.
TEST(Simulate, ConvergenceOrder) {
  const auto p = ObserverParams::linear(kPaperGains, 0.2);
  const SignalSpec sig = SignalSpec::sinusoid(1.0, 2.0);
  auto end_state = [&](double h, Method m) {
    return simulate(p, sig, {h, 1.0, {0.0, -0.5, 0.0}, m, 1}).states.back();
  };
  const ObserverState ref = end_state(1e-5, Method::rk4);
  auto err = [&](const ObserverState& x) {
    return std::hypot(x.x1 - ref.x1, x.x2 - ref.x2, x.x3 - ref.x3);
  };
  const double rk4_ratio =
      err(end_state(1e-3, Method::rk4)) / err(end_state(5e-4, Method::rk4));
  const double euler_ratio =
      err(end_state(1e-3, Method::euler)) / err(end_state(5e-4, Method::euler));
  EXPECT_GT(rk4_ratio, 16.0 / 1.5);
  EXPECT_LT(rk4_ratio, 16.0 * 1.5);
  EXPECT_GT(euler_ratio, 2.0 / 1.5);
  EXPECT_LT(euler_ratio, 2.0 * 1.5);
}

TEST(Simulate, CsvLayout) {
  SimConfig cfg{1e-3, 0.002, {0.0, 1.0, 0.0}, Method::rk4, 1};
  const Trajectory traj = simulate(ObserverParams::linear(kPaperGains, 0.2),
                                   SignalSpec::reference(), cfg);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  std::istringstream lines(os.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_EQ(header, "t,x1,x2,x3,a,a1,a2,a3,e1,e2,e3");
  EXPECT_EQ(first,
            "0.00000000e+00,0.00000000e+00,1.00000000e+00,0.00000000e+00,"
            "0.00000000e+00,0.00000000e+00,3.14000000e-01,0.00000000e+00,"
            "0.00000000e+00,6.86000000e-01,0.00000000e+00");

  SignalSpec comp{SignalKind::composite, 0.0, 0.0, {}};
  std::ostringstream os2;
  write_trajectory_csv(os2, simulate(ObserverParams::linear(kPaperGains, 0.2), comp, cfg));
  std::istringstream lines2(os2.str());
  std::getline(lines2, header);
  std::getline(lines2, first);
  EXPECT_EQ(first.substr(first.size() - 6), ",,,,,,");
}

TEST(Metrics, DriftAndSettling) {
  Trajectory traj;
  for (int j = 0; j <= 100; ++j) {
    const double t = j * 0.1;
    const double e = j < 50 ? 1.0 : (j < 70 ? 0.04 : 0.01);
    traj.times.push_back(t);
    traj.states.push_back({e, 0, 0});
    traj.inputs.push_back(0);
    traj.truths.push_back({});
    traj.errors.push_back({e, 0, 0});
  }
  EXPECT_DOUBLE_EQ(drift_ratio(traj), 0.01 / 0.04);
  ASSERT_TRUE(settling_time(traj, 1, 0.05).has_value());
  EXPECT_DOUBLE_EQ(*settling_time(traj, 1, 0.05), 5.0);
  EXPECT_FALSE(settling_time(traj, 1, 0.005).has_value());
  EXPECT_DOUBLE_EQ(max_abs_error(traj, 1, {0.0, 10.0}), 1.0);
  EXPECT_NEAR(rms_error(traj, 1, {7.0, 10.0}), 0.01, 1e-15);
  EXPECT_THROW(rms_error(traj, 1, {20.0, 30.0}), DomainError);
}

// Frozen in the acceptance suite as the short-horizon threshold base.
TEST(Oracle, EulerReferenceRms) {
  const double rms = oracle::euler_rms_e1({0.1, 0.1, 1.0}, 0.2, 0.3, 1e-4, 20.0, 10.0, 20.0);
  EXPECT_NEAR(rms, 10.3979, 5e-5);
}

}  // namespace
}  // namespace dint
