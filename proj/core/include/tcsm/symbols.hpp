#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tcsm/types.hpp"

namespace tcsm {

/// Interns label strings into dense integers shared by data and query graphs.
/// The edge-label placeholder "-" always maps to kNoLabel.
class SymbolTable {
 public:
  Label intern(std::string_view name);
  Label intern_edge_label(std::string_view name);

  // Returns kNoLabel when the symbol has never been interned.
  Label find(std::string_view name) const;
  const std::string& name(Label label) const;
  std::string edge_label_name(Label label) const;

  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, Label> ids_;
  std::vector<std::string> names_;
};

}  // namespace tcsm
