#include "lmsr/model.hpp"

#include <cmath>

namespace lmsr {

int ParamAssignment::gated_count() const {
  int c = 0;
  for (const auto& l : leaves) c += l.gated ? 1 : 0;
  return c;
}

bool within_bounds(const ParamAssignment& params, const ParamBounds& bounds) {
  if (params.gated_count() > bounds.max_constants) return false;
  for (const auto& leaf : params.leaves) {
    for (int p : leaf.powers) {
      if (p < -bounds.delta || p > bounds.delta) return false;
    }
    if (power_norm(leaf.powers) > bounds.tau) return false;
    if (leaf.gated) {
      if (!(std::fabs(leaf.constant) <= bounds.omega)) return false;
    } else if (leaf.constant != 1.0) {
      return false;
    }
  }
  return true;
}

bool simpler_than(const ParamAssignment& a, const ParamAssignment& b) {
  int na = 0;
  int nb = 0;
  for (const auto& l : a.leaves) na += power_norm(l.powers);
  for (const auto& l : b.leaves) nb += power_norm(l.powers);
  if (na != nb) return na < nb;
  const std::size_t m = std::min(a.leaves.size(), b.leaves.size());
  for (std::size_t j = 0; j < m; ++j) {
    if (a.leaves[j].powers != b.leaves[j].powers) return a.leaves[j].powers < b.leaves[j].powers;
  }
  double ha = 0.0;
  double hb = 0.0;
  for (const auto& l : a.leaves) ha += l.gated ? std::fabs(l.constant) : 0.0;
  for (const auto& l : b.leaves) hb += l.gated ? std::fabs(l.constant) : 0.0;
  return ha < hb;
}

bool better_model(const CandidateModel& a, const CandidateModel& b) {
  if (a.sse != b.sse) return a.sse < b.sse;
  return simpler_than(a.params, b.params);
}

}  // namespace lmsr
