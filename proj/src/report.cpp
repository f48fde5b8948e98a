#include "silting/report.hpp"

#include <sstream>

namespace silting {

Report::Report(const std::string& name) {
  doc["schema"] = 1;
  doc["report"] = name;
  doc["checks"] = Json::array();
}

void Report::note(const std::string& key, Json value) { doc[key] = std::move(value); }

bool Report::check(const std::string& anchor, Json computed, Json expected) {
  bool pass = computed == expected;
  doc["checks"].push_back(Json{{"anchor", anchor},
                               {"computed", std::move(computed)},
                               {"expected", std::move(expected)},
                               {"pass", pass}});
  if (!pass) ++failures;
  return pass;
}

bool Report::require(const std::string& anchor, bool ok) {
  return check(anchor, ok, true);
}

std::string Report::render(bool as_json) const {
  if (as_json) return doc.dump(2) + "\n";
  std::ostringstream os;
  for (auto& [key, value] : doc.items()) {
    if (key == "checks") continue;
    if (value.is_string())
      os << key << ": " << value.get<std::string>() << "\n";
    else
      os << key << ": " << value.dump() << "\n";
  }
  for (auto& c : doc["checks"])
    os << (c["pass"].get<bool>() ? "  ok  " : "  FAIL") << "  " << c["anchor"].get<std::string>()
       << ": computed " << c["computed"].dump() << ", expected " << c["expected"].dump() << "\n";
  return os.str();
}

Json module_json(const PerfModule& x) { return Json::parse(perfmodule_json(x)); }

PerfModule module_from_json(const BuiltAlgebra& A, const Json& j) {
  PerfModule x;
  x.A = &A;
  for (auto& s : j.at("summands")) {
    int v = A.quiver().vertex_index(s.at(0).get<std::string>());
    if (v < 0) throw std::invalid_argument("module_from_json: unknown vertex " +
                                           s.at(0).get<std::string>());
    x.summands.emplace_back(v, s.at(1).get<int>());
  }
  int n = x.size();
  x.delta.assign(n, std::vector<AlgebraElement>(n));
  const Json& d = j.at("delta");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      x.delta[r][c] = A.parse_element(d.at(r).at(c).get<std::string>());
  assert_square_zero(x, "module_from_json");
  return x;
}

}  // namespace silting
