#include "cityres/cli/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "cityres/error.hpp"

namespace cityres::cli {

namespace {

class Context {
 public:
  explicit Context(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (node.IsDefined() && node.Mark().line >= 0) os << ":" << node.Mark().line + 1;
    if (!field.empty()) os << ": field '" << field << "'";
    os << ": " << msg;
    throw ValidationError(os.str());
  }

  template <typename T>
  T get(const YAML::Node& node, const std::string& field, const char* type) const {
    if (!node.IsScalar()) fail(node, field, std::string("expected ") + type);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, std::string("expected ") + type + ", got '" + node.Scalar() + "'");
    }
  }

  double real(const YAML::Node& node, const std::string& field) const { return get<double>(node, field, "a number"); }
  int integer(const YAML::Node& node, const std::string& field) const { return get<int>(node, field, "an integer"); }

  void only(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where) const {
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, where.empty() ? key : where + "." + key, "unknown field");
    }
  }

 private:
  std::string source_;
};

struct Defaults {
  double gamma = 1.5;
  double f = 0.5;
  double r = 0.1;
  double bshear = 1.5;
  std::optional<double> c;
};

}  // namespace

city::CityConfig Scenario::pattern() const {
  if (period) return city::CityConfig::periodic(buildings, *period);
  if (mode == city::Mode::periodic) throw ValidationError("periodic scenario needs a period");
  return city::CityConfig::finite(buildings);
}

city::CityConfig Scenario::city() const {
  if (mode == city::Mode::periodic) return pattern();
  if (repeat > 1) {
    if (!period) throw ValidationError("repeat > 1 needs a period");
    return pattern().repeated(repeat);
  }
  return city::CityConfig::finite(buildings);
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  Context ctx(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ": " << e.msg;
    throw ValidationError(os.str());
  }
  if (!root.IsMap()) ctx.fail(root, "", "scenario must be a mapping");
  ctx.only(root, {"mode", "M", "xi0", "pin", "eig_index", "period", "repeat", "defaults", "buildings"}, "");

  Scenario sc;
  if (auto n = root["mode"]) {
    const auto m = ctx.get<std::string>(n, "mode", "a string");
    if (m == "finite") {
      sc.mode = city::Mode::finite;
    } else if (m == "periodic") {
      sc.mode = city::Mode::periodic;
    } else {
      ctx.fail(n, "mode", "expected 'finite' or 'periodic', got '" + m + "'");
    }
  }
  if (auto n = root["M"]) {
    sc.M = ctx.integer(n, "M");
    if (sc.M < 1) ctx.fail(n, "M", "must be a positive integer");
  }
  if (auto n = root["xi0"]) {
    sc.xi0 = ctx.real(n, "xi0");
    if (!(sc.xi0 > 0.0)) ctx.fail(n, "xi0", "must be positive");
  }
  if (auto n = root["pin"]) sc.pin = ctx.integer(n, "pin");
  if (auto n = root["eig_index"]) sc.eig_index = ctx.integer(n, "eig_index");
  if (sc.pin && sc.eig_index) ctx.fail(root["eig_index"], "eig_index", "give either pin or eig_index, not both");
  if (auto n = root["period"]) {
    sc.period = ctx.real(n, "period");
    if (!(*sc.period > 0.0)) ctx.fail(n, "period", "must be positive");
  }
  if (auto n = root["repeat"]) {
    sc.repeat = ctx.integer(n, "repeat");
    if (sc.repeat < 1) ctx.fail(n, "repeat", "must be at least 1");
  }
  if (sc.mode == city::Mode::periodic && !sc.period) ctx.fail(root, "period", "required in periodic mode");
  if (sc.repeat > 1 && !sc.period) ctx.fail(root["repeat"], "period", "required when repeat > 1");

  Defaults def;
  if (auto d = root["defaults"]) {
    if (!d.IsMap()) ctx.fail(d, "defaults", "expected a mapping");
    ctx.only(d, {"gamma", "f", "c", "r", "bshear"}, "defaults");
    if (d["gamma"]) def.gamma = ctx.real(d["gamma"], "defaults.gamma");
    if (d["f"]) def.f = ctx.real(d["f"], "defaults.f");
    if (d["r"]) def.r = ctx.real(d["r"], "defaults.r");
    if (d["bshear"]) def.bshear = ctx.real(d["bshear"], "defaults.bshear");
    if (d["c"]) def.c = ctx.real(d["c"], "defaults.c");
  }

  const auto list = root["buildings"];
  if (!list) ctx.fail(root, "buildings", "missing");
  if (!list.IsSequence()) ctx.fail(list, "buildings", "expected a list");
  if (list.size() == 0) ctx.fail(list, "buildings", "at least one building is required");
  for (std::size_t j = 0; j < list.size(); ++j) {
    const auto n = list[j];
    const std::string where = "buildings[" + std::to_string(j + 1) + "]";
    if (!n.IsMap()) ctx.fail(n, where, "expected a mapping");
    ctx.only(n, {"a", "b", "gamma", "f", "c", "r", "bshear"}, where);
    if (!n["a"] || !n["b"]) ctx.fail(n, where, "needs both a and b");
    city::BuildingSpec s;
    s.a = ctx.real(n["a"], where + ".a");
    s.b = ctx.real(n["b"], where + ".b");
    s.gamma = n["gamma"] ? ctx.real(n["gamma"], where + ".gamma") : def.gamma;
    s.f = n["f"] ? ctx.real(n["f"], where + ".f") : def.f;
    s.r = n["r"] ? ctx.real(n["r"], where + ".r") : def.r;
    s.bshear = n["bshear"] ? ctx.real(n["bshear"], where + ".bshear") : def.bshear;
    s.c = n["c"] ? ctx.real(n["c"], where + ".c") : def.c.value_or(0.5 * (s.b - s.a));
    try {
      s.validate();
    } catch (const ValidationError& e) {
      ctx.fail(n, where, e.what());
    }
    sc.buildings.push_back(s);
  }

  // Surface geometry problems (overlap, cell too wide) with the file name.
  try {
    (void)sc.city();
  } catch (const ValidationError& e) {
    ctx.fail(list, "buildings", e.what());
  }
  const auto n = sc.city().size();
  if (sc.pin && (*sc.pin < 1 || static_cast<std::size_t>(*sc.pin) > n))
    ctx.fail(root["pin"], "pin", "outside 1.." + std::to_string(n));
  if (sc.eig_index && (*sc.eig_index < 1 || static_cast<std::size_t>(*sc.eig_index) > n))
    ctx.fail(root["eig_index"], "eig_index", "outside 1.." + std::to_string(n));
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace cityres::cli
