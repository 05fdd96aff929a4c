#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmsr/units.hpp"

namespace lmsr {

/// Tabular training data: n named inputs per row plus one target per row.
class Dataset {
 public:
  Dataset() = default;
  /// `rows` is row-major with `names.size()` values per row. Throws
  /// ShapeError/ValueError on bad shapes or non-finite values.
  Dataset(std::vector<std::string> names, std::vector<double> rows, std::vector<double> targets,
          std::optional<UnitsTable> units = std::nullopt);

  std::size_t variable_count() const noexcept { return names_.size(); }
  std::size_t size() const noexcept { return targets_.size(); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::span<const double> row(std::size_t i) const {
    return {rows_.data() + i * names_.size(), names_.size()};
  }
  const std::vector<double>& rows() const noexcept { return rows_; }
  const std::vector<double>& targets() const noexcept { return targets_; }
  const std::optional<UnitsTable>& units() const noexcept { return units_; }

  /// Sum of squared targets; used to scale relative tolerances.
  double target_energy() const;

  Dataset with_targets(std::vector<double> targets) const;
  Dataset with_units(std::optional<UnitsTable> units) const;
  /// The first `count` rows.
  Dataset head(std::size_t count) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> rows_;
  std::vector<double> targets_;
  std::optional<UnitsTable> units_;
};

}  // namespace lmsr
