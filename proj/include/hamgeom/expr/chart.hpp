#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamgeom {

/// An ordered coordinate system plus declared symbolic constants.
///
/// Polynomials on a chart have one variable per coordinate followed by one
/// per constant. Forms, fields and tensors index only the coordinates;
/// constants behave as scalars under differentiation along the chart.
/// Copies share the underlying name storage.
class Chart {
 public:
  Chart();
  /// Throws std::invalid_argument on empty, duplicate or malformed names.
  explicit Chart(std::vector<std::string> coordinates, std::vector<std::string> constants = {});

  std::size_t dimension() const { return data_->coords.size(); }
  std::size_t num_constants() const { return data_->constants.size(); }
  /// Coordinates plus constants.
  std::size_t num_variables() const { return dimension() + num_constants(); }

  const std::vector<std::string>& coordinates() const { return data_->coords; }
  const std::vector<std::string>& constants() const { return data_->constants; }
  const std::string& variable_name(std::size_t var) const;

  std::optional<std::size_t> variable_index(std::string_view name) const;
  /// Index of a coordinate (not a constant).
  std::optional<std::size_t> coordinate_index(std::string_view name) const;
  bool is_constant(std::size_t var) const { return var >= dimension(); }

  friend bool operator==(const Chart& a, const Chart& b);

 private:
  struct Data {
    std::vector<std::string> coords;
    std::vector<std::string> constants;
  };
  std::shared_ptr<const Data> data_;
};

}  // namespace hamgeom
