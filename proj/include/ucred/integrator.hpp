#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ucred/params.hpp"
#include "ucred/phase.hpp"

namespace ucred {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double margin = 1e-3;  // minimal distance to the singular locus
  double h_min = 1e-14;
  long max_steps = 2000000;
  // Path-parameter values where dense output is recorded; empty records
  // every accepted step.
  std::vector<double> samples;
};

struct TrajectorySample {
  long step = 0;
  double path_param = 0.0;
  PhasePoint<double> point;
  std::vector<double> H;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  long accepted = 0, rejected = 0, evaluations = 0;
  double rtol = 0.0, atol = 0.0;
  double length = 0.0;
  bool aborted = false;
  std::string message;
  PhasePoint<double> last_good;
  double last_good_param = 0.0;
};

// Step-size underflow or step budget exhausted.
struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smallest of |s_i|, |s_i - 1|, |s_i - s_j|.
double singular_distance(const std::vector<double>& s);

// Integrates the commuting flows along the piecewise-linear path through
// the given waypoints in s-space, parametrized by arc length. The first
// waypoint must coincide with pt0.s. Approaching the singular locus closer
// than the margin stops the run and returns the state at the boundary.
Trajectory integrate(const ParameterSet& params, const PhasePoint<double>& pt0,
                     const std::vector<std::vector<double>>& waypoints, const IntegratorOptions& opt = {});

// CSV with columns step,path_param,s1..sN,q_n_i..,p_n_i..,H1..HN.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace ucred
