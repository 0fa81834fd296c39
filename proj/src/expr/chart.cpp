#include "hamgeom/expr/chart.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace hamgeom {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Chart::Chart() : data_(std::make_shared<Data>()) {}

Chart::Chart(std::vector<std::string> coordinates, std::vector<std::string> constants) {
  std::set<std::string> seen;
  for (const auto* list : {&coordinates, &constants}) {
    for (const auto& name : *list) {
      if (!is_identifier(name)) throw std::invalid_argument("invalid chart name '" + name + "'");
      if (!seen.insert(name).second) throw std::invalid_argument("duplicate chart name '" + name + "'");
    }
  }
  data_ = std::make_shared<Data>(Data{std::move(coordinates), std::move(constants)});
}

const std::string& Chart::variable_name(std::size_t var) const {
  if (var < dimension()) return data_->coords[var];
  if (var < num_variables()) return data_->constants[var - dimension()];
  throw std::out_of_range("chart variable index out of range");
}

std::optional<std::size_t> Chart::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < num_variables(); ++i)
    if (variable_name(i) == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Chart::coordinate_index(std::string_view name) const {
  auto idx = variable_index(name);
  if (idx && *idx < dimension()) return idx;
  return std::nullopt;
}

bool operator==(const Chart& a, const Chart& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->coords == b.data_->coords && a.data_->constants == b.data_->constants;
}

}  // namespace hamgeom
