#include "lmsr/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "lmsr/errors.hpp"

namespace lmsr {

Dataset::Dataset(std::vector<std::string> names, std::vector<double> rows, std::vector<double> targets,
                 std::optional<UnitsTable> units)
    : names_(std::move(names)), rows_(std::move(rows)), targets_(std::move(targets)), units_(std::move(units)) {
  if (names_.empty()) throw ShapeError("dataset has no independent variables", 1);
  if (targets_.empty()) throw ShapeError("dataset has no rows", 1);
  if (rows_.size() != targets_.size() * names_.size()) {
    throw ShapeError("dataset has " + std::to_string(rows_.size()) + " values for " +
                         std::to_string(targets_.size()) + " rows of " + std::to_string(names_.size()),
                     1);
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(rows_.begin(), rows_.end(), finite) || !std::all_of(targets_.begin(), targets_.end(), finite)) {
    throw ValueError("dataset contains NaN or infinite values");
  }
  if (units_) units_->validate(names_.size());
}

double Dataset::target_energy() const {
  double s = 0.0;
  for (double y : targets_) s += y * y;
  return s;
}

Dataset Dataset::with_targets(std::vector<double> targets) const {
  return Dataset(names_, rows_, std::move(targets), units_);
}

Dataset Dataset::with_units(std::optional<UnitsTable> units) const {
  return Dataset(names_, rows_, targets_, std::move(units));
}

Dataset Dataset::head(std::size_t count) const {
  count = std::min(count, size());
  std::vector<double> rows(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(count * names_.size()));
  std::vector<double> targets(targets_.begin(), targets_.begin() + static_cast<std::ptrdiff_t>(count));
  return Dataset(names_, std::move(rows), std::move(targets), units_);
}

}  // namespace lmsr
