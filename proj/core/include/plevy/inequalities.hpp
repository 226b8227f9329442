// Copyright (c) 2026 the plevy authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace plevy {

// A_p, A'_p of the elementary vector inequalities for |x|^{p-2}x:
// p >= 2: A_p = p-1, A'_p = min(1/2, 2^{2-p});
// 1 <= p < 2: A_p = 2^{2-p}(3-p), A'_p = p-1.
double simon_upper_constant(double p);
double simon_lower_constant(double p);

struct InequalityCheck {
  std::string name;
  long trials = 0;
  long violations = 0;
  double worst_margin = 0.0;  // most negative slack seen (>= 0 means pass)
};

// Randomized verification of the elementary inequalities (the two-sided
// bounds with (|x|+|y|)^{p-2}, their beta-generalization, the one-sided
// Simon forms, the scalar 2^{2-p} bound for p < 2, and the Taylor-expansion
// bounds), over vectors in dimensions 1..3 drawn from [-10,10]^d, plus
// deliberate near-tie pairs. Deterministic under a fixed seed.
std::vector<InequalityCheck> inequality_suite(double p, long trials,
                                              std::uint64_t seed = 42);

}  // namespace plevy
