#pragma once

#include <vector>

#include "ucred/character.hpp"
#include "ucred/identities.hpp"
#include "ucred/params.hpp"
#include "ucred/phase.hpp"
#include "ucred/rational_function.hpp"

namespace ucred {

// Canonical coordinates of a sigma-grid solution as exact rational functions
// of t_1..t_N, normalized by t_0 = 1 so that s_i = t_i^L.
struct CanonicalSolution {
  ParameterSet params;
  PhasePoint<RationalFunction> point;
};

CanonicalSolution canonical_from_sigma(SigmaFamily& fam);

// d/ds_j of an exact function of t, taken as t_j^{1-L}/L d/dt_j.
RationalFunction s_derivative(const RationalFunction& f, int j, int L);

// Residuals of dq/dt_k - sum_j (ds_j/dt_k) dH_j/dp and the matching p equation,
// for every direction t_k and coordinate. The times s_j may be any functions
// of t, so transformed solutions are checked with the same routine.
std::vector<IdentityReport> canonical_flow_residual(const ParameterSet& params, const PhasePoint<RationalFunction>& pt);

// Numeric value of the exact solution at t_1..t_N (t_0 = 1).
PhasePoint<double> evaluate_solution(const PhasePoint<RationalFunction>& pt, const std::vector<double>& t);
PhasePoint<Rational> evaluate_solution(const PhasePoint<RationalFunction>& pt, const std::vector<Rational>& t);

}  // namespace ucred
