#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lmsr/dataset.hpp"
#include "lmsr/model.hpp"
#include "lmsr/units.hpp"

namespace lmsr {

struct VariableSpec {
  std::string name;
  UnitVector unit;
  double lo = 1.0;
  double hi = 5.0;
};

/// One benchmark problem: variables with sampling ranges and units, the
/// true law, and (when one exists within the default bounds) a reference
/// model in gentree form.
struct ProblemSpec {
  std::string label;
  std::string true_form;  // documentation only
  std::vector<VariableSpec> variables;
  UnitVector target_unit;
  std::function<double(std::span<const double>)> formula;
  std::string expected_tree;                // canonical serialization, empty if none
  std::vector<std::string> expected_leaves;  // e.g. "0.5*m*v^2"; a numeric factor gates the leaf
  int constants_needed = 0;
  bool expected_fail = false;

  std::vector<std::string> names() const;
  UnitsTable units() const;
  /// `points` rows sampled uniformly from the ranges with SplitMix64(seed).
  Dataset generate(std::size_t points, std::uint64_t seed) const;
  std::optional<CandidateModel> expected_model() const;
};

/// Base dimensions used by every registry units table.
const std::vector<std::string>& registry_dimensions();

const std::vector<ProblemSpec>& feynman_registry();

/// Throws UnknownLabel.
const ProblemSpec& find_problem(std::string_view label);

/// Parses a leaf such as "-1*v^2*c^-2" over `names`: the product of an
/// optional numeric factor and powered variables. Throws ParseError.
LMonomial parse_leaf(std::string_view text, const std::vector<std::string>& names);

}  // namespace lmsr
