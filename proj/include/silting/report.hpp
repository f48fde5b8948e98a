#pragma once
#include <json.hpp>

#include "silting/perfmod.hpp"

namespace silting {

using Json = nlohmann::ordered_json;

// Report bundle: versioned JSON document plus recorded assertions. Keys are
// emitted in insertion order, so identical runs produce identical bytes.
struct Report {
  Json doc;
  int failures = 0;

  explicit Report(const std::string& name);
  void note(const std::string& key, Json value);
  // records {anchor, computed, expected, pass}; returns pass
  bool check(const std::string& anchor, Json computed, Json expected);
  bool require(const std::string& anchor, bool ok);
  std::string render(bool as_json) const;
  int exit_code() const { return failures == 0 ? 0 : 1; }
};

Json module_json(const PerfModule& x);
// inverse of module_json; vertices by name, delta entries parsed as elements
PerfModule module_from_json(const BuiltAlgebra& A, const Json& j);

}  // namespace silting
