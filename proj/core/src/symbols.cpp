#include "tcsm/symbols.hpp"

namespace tcsm {

Label SymbolTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<Label>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

Label SymbolTable::intern_edge_label(std::string_view name) {
  if (name == "-") return kNoLabel;
  return intern(name);
}

Label SymbolTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  return it == ids_.end() ? kNoLabel : it->second;
}

const std::string& SymbolTable::name(Label label) const {
  if (label >= names_.size()) throw Error("unknown label id " + std::to_string(label));
  return names_[label];
}

std::string SymbolTable::edge_label_name(Label label) const {
  return label == kNoLabel ? std::string("-") : name(label);
}

}  // namespace tcsm
