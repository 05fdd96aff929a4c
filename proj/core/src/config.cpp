#include "lmsr/config.hpp"

#include "lmsr/errors.hpp"

namespace lmsr {

std::string_view to_string(TimeSource source) { return source == TimeSource::wall ? "wall" : "work"; }

std::string_view to_string(LowerBoundMethod method) {
  return method == LowerBoundMethod::none ? "none" : "interval";
}

double SolverConfig::effective_tol(const Dataset& data) const {
  return tol_relative ? tol * data.target_energy() : tol;
}

void SolverConfig::validate() const {
  if (max_depth < 0 || max_depth > 5) throw ConfigError("depth must lie in [0, 5]");
  if (max_constants < 0 || max_constants > 3) throw ConfigError("max constants must lie in [0, 3]");
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (delta < 0) throw ConfigError("delta must be non-negative");
  if (tau < 0) throw ConfigError("tau must be non-negative");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(time_limit_s > 0.0)) throw ConfigError("time limit must be positive");
  if (!(eps_div >= 0.0)) throw ConfigError("eps_div must be non-negative");
  if (grid_points < 3 || grid_points_multi < 3) throw ConfigError("grids need at least 3 points");
  if (multistart < 1) throw ConfigError("multistart must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (!(slice_s > 0.0)) throw ConfigError("slice must be positive");
  if (!(work_unit_s > 0.0)) throw ConfigError("work unit must be positive");
  if (ops.empty()) throw ConfigError("operator set is empty");
}

}  // namespace lmsr
