#include <cmath>
#include <limits>

#include "fdelab/diagnostics/angular_momentum.hpp"
#include "fdelab/electrodynamics.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"

namespace fdelab::electrodynamics {
namespace {

using ::fdelab::testing::bisect_decreasing;

constexpr double kC = 29.9792458;

// A particle that never moves.
struct StaticLine {
  using real_type = double;
  Vec3 at;
  Vec3 position(double) const { return at; }
  Vec3 velocity(double) const { return {}; }
  Vec3 acceleration(double) const { return {}; }
  double t_begin() const { return -100.0; }
  double t_end() const { return 100.0; }
};

State12<> resting_pair(double separation) {
  SystemState s;
  s.r1 = {separation, 0.0, 0.0};
  return pack(s);
}

dde::Trajectory<12> constant_history(const State12<>& y) {
  dde::PastFunction<12> past{[y](double) { return y; },
                             [](double) { return State12<>{}; }, -10.0};
  return dde::Trajectory<12>(past, 0.0);
}

double relative_gap(const State12<>& a, const State12<>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max(std::abs(a[i]), std::abs(b[i]));
    if (scale > 0.0) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

TEST(RetardedTime, StaticSourceMatchesBisection) {
  const StaticLine source{{0.0, 0.0, 0.0}};
  const Vec3 observer{0.53, 0.0, 0.0};
  const auto s = solve_retarded_time(source, observer, 0.0, 0.01, kC);
  const double oracle = bisect_decreasing(
      [&](double tau) { return norm(observer - source.at) - kC * tau; }, 0.0,
      1.0);
  EXPECT_NEAR(s.tau, oracle, 1e-15);
  EXPECT_NEAR(s.tau, 0.0176789, 1e-7);
}

TEST(RetardedTime, StaticDelayScalesWithDistance) {
  const StaticLine source{{0.1, -0.2, 0.3}};
  const Vec3 dir = normalized(Vec3{1.0, 2.0, -2.0});
  const double d = 0.4;
  const auto near =
      solve_retarded_time(source, source.at + d * dir, 1.0, 0.001, kC);
  const auto far =
      solve_retarded_time(source, source.at + 2.0 * d * dir, 1.0, 0.001, kC);
  EXPECT_NEAR(far.tau, 2.0 * near.tau, 1e-15);
}

TEST(RetardedTime, CircularPastAtReleaseMatchesBisection) {
  const PhysicalParams p = default_params();
  const double w = p.omega0;
  const Vec3 proton{-p.mu * p.r0, 0.0, 0.0};
  auto z = [&](double tau) {
    const Vec3 electron{p.r0 * std::cos(-w * tau), p.r0 * std::sin(-w * tau),
                        0.0};
    return norm(proton - electron) - p.c * tau;
  };
  const double oracle = bisect_decreasing(z, 0.0, 1.0);
  const auto s = solve_retarded_time(RigidRotationLine<>(p, 0), proton, 0.0,
                                     p.r0 / p.c, p.c);
  EXPECT_NEAR(s.tau, oracle, 1e-14);
  EXPECT_NEAR(s.tau, 0.0176885, 1e-7);
}

TEST(RetardedTime, SampleInvariants) {
  const PhysicalParams p = default_params();
  const auto s = solve_retarded_time(RigidRotationLine<>(p, 1),
                                     Vec3{p.r0, 0.0, 0.0}, 3.0, 0.02, p.c);
  EXPECT_LE(std::abs(s.R_norm - p.c * s.tau), 1e-12);
  EXPECT_GT(s.tau, 0.0);
  const Vec3 u = p.c * (s.R / s.R_norm) - s.v_ret;
  EXPECT_DOUBLE_EQ(s.u.x, u.x);
  EXPECT_DOUBLE_EQ(s.u.y, u.y);
  EXPECT_GT(dot(s.R, s.u), 0.0);
}

TEST(RetardedTime, RejectsBadInput) {
  const StaticLine source{{0.0, 0.0, 0.0}};
  try {
    solve_retarded_time(source, Vec3{1.0, 0.0, 0.0}, 0.0, 0.0, kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  try {
    solve_retarded_time(source, Vec3{1e-8, 0.0, 0.0}, 0.0, 0.01, kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCollision);
  }
  try {
    solve_retarded_time(source, Vec3{1.0, 0.0, 0.0}, -100.0, 0.01, kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHistoryTooShort);
  }
}

TEST(RetardedTime, HistoryMustReachTheNullCone) {
  const auto traj = constant_history(resting_pair(0.53));
  try {
    // the cone from t = -9.99 reaches back before -10
    solve_retarded_time(ParticleHistory(traj, 1), Vec3{0.53, 0.0, 0.0},
                        -9.99, 0.01, kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHistoryTooShort);
  }
}

RetardedSample static_sample(double r) {
  RetardedSample s;
  s.R = {0.0, r, 0.0};
  s.R_norm = r;
  s.tau = r / kC;
  s.u = kC * (s.R / r);
  return s;
}

TEST(Field, StaticLimitIsInverseSquare) {
  const Vec3 E = lw_field(static_sample(0.53), kC);
  EXPECT_NEAR(E.x, 0.0, 1e-15);
  EXPECT_NEAR(E.y, 1.0 / (0.53 * 0.53), 1e-12);
  EXPECT_NEAR(E.z, 0.0, 1e-15);
}

TEST(Field, DoublingDistanceQuartersStaticField) {
  const double e1 = norm(lw_field(static_sample(0.3), kC));
  const double e2 = norm(lw_field(static_sample(0.6), kC));
  EXPECT_NEAR(e2 / e1, 0.25, 1e-14);
}

TEST(Field, SuperluminalDataIsDegenerate) {
  RetardedSample s = static_sample(0.5);
  s.u = -1.0 * s.u;
  try {
    lw_field(s, kC);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateDenominator);
  }
}

TEST(Field, CircularPastFieldHasTangentialPart) {
  using R = long double;
  const PhysicalParams p = default_params();
  const auto s0 = RigidRotation<R>(p).state(0);
  const auto seen = solve_retarded_time(RigidRotationLine<R>(p, 1), s0.r1,
                                        R(0), R(p.r0 / p.c), p.c);
  const auto E = lw_field(seen, p.c);
  const R tangential = dot(E, s0.v1) / norm(s0.v1);
  EXPECT_NE(tangential, 0.0L);
  EXPECT_GT(std::abs(static_cast<double>(tangential / norm(E))), 1e-12);
}

TEST(FullRhs, StaticLimitEqualsCoulomb) {
  const PhysicalParams p = default_params();
  for (double sep : {0.2, 0.53, 1.7}) {
    const State12<> y = resting_pair(sep);
    const auto history = constant_history(y);
    const auto full = full_rhs<double>(0.0, y, history, p);
    const auto coulomb = coulomb_rhs(0.0, y, p);
    EXPECT_LE(relative_gap(full, coulomb), 1e-12) << "separation " << sep;
  }
}

TEST(FullRhs, StaticElectronFallsTowardProton) {
  const PhysicalParams p = default_params();
  const State12<> y = resting_pair(0.53);
  const auto f = full_rhs<double>(0.0, y, constant_history(y), p);
  const Vec3 a1 = block(f, 6);
  EXPECT_LT(a1.x, 0.0);
  EXPECT_NEAR(norm(a1), std::abs(p.kappa) / (0.53 * 0.53), 1e-14);
}

TEST(FullRhs, PositionRatesAreVelocities) {
  const PhysicalParams p = default_params();
  const dde::Trajectory<12> past(rigid_rotation_past(p, -5.0), 0.0);
  for (double t : {-3.0, -1.0, 0.0}) {
    const State12<> y = past.state(t);
    const auto f = full_rhs<double>(t, y, past, p);
    for (int i = 0; i < 6; ++i) EXPECT_EQ(f[i], y[i + 6]);
  }
}

TEST(FullRhs, ReleaseAccelerationHasTangentialPart) {
  using R = long double;
  const PhysicalParams p = default_params();
  const dde::Trajectory<12, R> past(rigid_rotation_past<R>(p, -5.0), 0);
  const auto y = past.state(0);
  const auto s = unpack(y);
  const auto full = block(full_rhs<R>(0, y, past, p), 6);
  const auto coulomb = block(coulomb_rhs<R>(0, y, p), 6);
  const R tangential = dot(full - coulomb, s.v1) / norm(s.v1);
  // Leading retardation estimate, -(2/3) |kappa| mu w^2 v / c^3.
  const double w = p.omega0, v = p.omega0 * p.r0;
  const double estimate =
      -(2.0 / 3.0) * std::abs(p.kappa) * p.mu * w * w * v / (p.c * p.c * p.c);
  EXPECT_NEAR(static_cast<double>(tangential), estimate,
              1e-3 * std::abs(estimate));
}

TEST(Coulomb, ForcesAreAntiparallel) {
  const PhysicalParams p = default_params();
  SystemState s;
  s.r1 = {0.3, -0.2, 0.1};
  s.r2 = {-0.01, 0.02, 0.0};
  const auto [a1, a2] = coulomb_accelerations(s, p);
  const Vec3 sum = a1 + (1.0 / p.mu) * a2;
  EXPECT_LE(norm(sum), 1e-14 * norm(a1));
  EXPECT_LT(dot(a1, a2), 0.0);
}

TEST(Coulomb, DoublingSeparationQuartersAccelerations) {
  const PhysicalParams p = default_params();
  SystemState s;
  s.r1 = {0.4, 0.1, 0.0};
  SystemState s2 = s;
  s2.r1 = 2.0 * s.r1;
  const auto [a1, a2] = coulomb_accelerations(s, p);
  const auto [b1, b2] = coulomb_accelerations(s2, p);
  EXPECT_NEAR(norm(b1) / norm(a1), 0.25, 1e-15);
  EXPECT_NEAR(norm(b2) / norm(a2), 0.25, 1e-15);
}

TEST(Coulomb, CoincidentParticlesCollide) {
  const PhysicalParams p = default_params();
  try {
    coulomb_rhs(0.0, State12<>{}, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCollision);
  }
}

// Energy per unit electron mass: kinetic terms plus kappa / |r1 - r2|.
template <class Real>
double energy(const BasicSystemState<Real>& s, const PhysicalParams& p) {
  const Real kinetic =
      0.5L * dot(s.v1, s.v1) + 0.5L * dot(s.v2, s.v2) / Real(p.mu);
  return static_cast<double>(kinetic + Real(p.kappa) / norm(s.r1 - s.r2));
}

TEST(Coulomb, CircularOrbitIsStableAndConservative) {
  const PhysicalParams p = default_params();
  RunOptions opt;
  opt.t_end = 100.0;
  const auto run = run_coulomb(p, opt);
  const auto s0 = unpack(run.state(0));
  const double L0 =
      static_cast<double>(diagnostics::angular_momentum_z(s0, p.mu));
  const double E0 = energy(s0, p);
  double drift = 0.0, dL = 0.0, dE = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const auto s = unpack(run.state(0.05L * i));
    drift = std::max(drift, std::abs(static_cast<double>(norm(s.r1)) - p.r0));
    dL = std::max(dL, std::abs(static_cast<double>(
                          diagnostics::angular_momentum_z(s, p.mu)) -
                          L0));
    dE = std::max(dE, std::abs(energy(s, p) - E0));
  }
  EXPECT_LT(drift / p.r0, 1e-6);
  EXPECT_LT(dL / std::abs(L0), 1e-8);
  EXPECT_LT(dE / std::abs(E0), 1e-8);
}

TEST(Params, DefaultsMatchHydrogenConstants) {
  const PhysicalParams p = default_params();
  EXPECT_EQ(p.kappa, -0.02528);
  EXPECT_EQ(p.mu, 5.436e-4);
  EXPECT_EQ(p.r0, 0.53);
  EXPECT_EQ(std::round(p.c), 30.0);
  EXPECT_NEAR(keplerian_speed(p.kappa, p.r0), 0.21839, 1e-5);
  EXPECT_NEAR(keplerian_omega(p.kappa, p.r0),
              std::sqrt(0.02528 / (0.53 * 0.53 * 0.53)), 1e-16);
  EXPECT_NEAR(keplerian_omega(p.kappa, p.r0), 0.41207, 1e-5);
  EXPECT_NEAR(keplerian_omega(p.kappa, p.r0), 0.412, 1e-3);
  EXPECT_NEAR(p.omega0, 0.412, 1e-3);
}

TEST(Params, ValidationRejectsNonsense) {
  PhysicalParams p = default_params();
  EXPECT_NO_THROW(validate(p));
  for (auto mutate : {+[](PhysicalParams& q) { q.mu = 1.5; },
                      +[](PhysicalParams& q) { q.c = -1.0; },
                      +[](PhysicalParams& q) { q.omega0 *= 1.01; },
                      +[](PhysicalParams& q) { q.c = 0.1; }}) {
    PhysicalParams q = p;
    mutate(q);
    EXPECT_THROW(validate(q), Error);
  }
}

TEST(RigidPast, StartsOnTheXAxis) {
  const PhysicalParams p = default_params();
  const auto s = RigidRotation<>(p).state(0.0);
  EXPECT_EQ(s.r1.x, 0.53);
  EXPECT_EQ(s.r1.y, 0.0);
  EXPECT_EQ(s.v1.x, 0.0);
  EXPECT_NEAR(s.v1.y, 0.218, 5e-4);
}

TEST(RigidPast, CentreOfMassStaysAtOrigin) {
  const PhysicalParams p = default_params();
  const auto past = rigid_rotation_past(p, -20.0);
  for (double t = -20.0; t <= 0.0; t += 0.37) {
    const auto s = unpack(past.value(t));
    EXPECT_LE(norm(p.mu * s.r1 + s.r2), 1e-18);
    EXPECT_LE(norm(p.mu * s.v1 + s.v2), 1e-18);
  }
}

TEST(RigidPast, AccelerationIsCentripetal) {
  const PhysicalParams p = default_params();
  const auto past = rigid_rotation_past(p, -20.0);
  const auto s = unpack(past.value(-2.5));
  const auto d = unpack(past.derivative(-2.5));
  const Vec3 expected = -(p.omega0 * p.omega0) * s.r1;
  EXPECT_NEAR(d.v1.x, expected.x, 1e-15);
  EXPECT_NEAR(d.v1.y, expected.y, 1e-15);
}

TEST(RetardedRun, DelaysStayOnTheNullCone) {
  const PhysicalParams p = default_params();
  RunOptions opt;
  opt.t_end = 10.0;
  const auto run = run_retarded(p, opt);
  for (long double t = 0.1L; t <= 10.0L; t += 0.1L) {
    const auto s = unpack(run.state(t));
    EXPECT_LT(norm(s.v1), p.c);
    EXPECT_LT(norm(s.v2), p.c);
    const auto acc = full_accelerations(t, s, ParticleHistory(run, 0),
                                        ParticleHistory(run, 1), p);
    for (const auto& seen : {acc.seen_by_1, acc.seen_by_2}) {
      EXPECT_GT(seen.tau, 0.0L);
      EXPECT_LE(std::abs(static_cast<double>(seen.R_norm - p.c * seen.tau)),
                1e-12);
    }
  }
}

TEST(RetardedRun, PositionAndVelocityContinuousAtRelease) {
  const PhysicalParams p = default_params();
  RunOptions opt;
  opt.t_end = 1.0;
  const auto run = run_retarded(p, opt);
  const auto before = run.past().value(0);
  const auto after = run.segments().front().value(0);
  for (int i = 0; i < 12; ++i) EXPECT_EQ(before[i], after[i]);
}

}  // namespace
}  // namespace fdelab::electrodynamics
