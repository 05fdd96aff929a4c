#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lmsr/dataset.hpp"
#include "lmsr/units.hpp"

namespace lmsr {

/// Reads a points CSV: a header of variable names with the target last,
/// then numeric rows. Throws ParseError (bad text, with line), ShapeError
/// (ragged rows) or ValueError (NaN/inf).
Dataset read_dataset(std::istream& in, std::optional<UnitsTable> units = std::nullopt);

/// Reads a units CSV with header `name,dim1,...`, one row per variable and
/// a `__target__` row, ordered to match `variables`. Exponents are exact
/// decimal rationals.
UnitsTable read_units(std::istream& in, const std::vector<std::string>& variables);

/// File front end for the two readers; the units file is optional.
Dataset load_dataset(const std::string& points_path, const std::optional<std::string>& units_path = std::nullopt);

void write_dataset(std::ostream& out, const Dataset& data, const std::string& target_name = "y");
void write_units(std::ostream& out, const UnitsTable& units, const std::vector<std::string>& variables);

}  // namespace lmsr
