#pragma once

#include <vector>

#include "lmsr/gentree.hpp"
#include "lmsr/lmonomial.hpp"

namespace lmsr {

/// Values for every leaf of one gentree: the p, z and h of the fitting problem.
struct ParamAssignment {
  std::vector<LMonomial> leaves;

  int gated_count() const;
  friend bool operator==(const ParamAssignment&, const ParamAssignment&) = default;
};

/// Bounds a parameter assignment must respect.
struct ParamBounds {
  int delta = 2;          // |p| <= delta
  int tau = 6;            // per-leaf sum |p| <= tau
  double omega = 100.0;   // |h| <= omega for gated leaves
  int max_constants = 1;  // sum z <= k
};

/// True when every leaf satisfies the power, constant and gating bounds.
bool within_bounds(const ParamAssignment& params, const ParamBounds& bounds);

struct CandidateModel {
  Gentree tree;
  ParamAssignment params;
  double sse = 0.0;
  int complexity = 1;

  friend bool operator==(const CandidateModel&, const CandidateModel&) = default;
};

/// Deterministic preference between equal-SSE models: smaller total |p|,
/// then lexicographically smaller powers, then smaller total |h|.
bool simpler_than(const ParamAssignment& a, const ParamAssignment& b);

/// Lower SSE first, ties broken by simpler_than.
bool better_model(const CandidateModel& a, const CandidateModel& b);

}  // namespace lmsr
