#include "pvb/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace pt = boost::property_tree;

bool operator==(const Harmonic& a, const Harmonic& b) { return a.omega == b.omega; }
bool operator==(const Morse& a, const Morse& b) {
  return a.depth == b.depth && a.width == b.width && a.center == b.center;
}
bool operator==(const QuarticDoubleWell& a, const QuarticDoubleWell& b) {
  return a.c2 == b.c2 && a.c4 == b.c4;
}

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"id", "seed"}},
      {"model", {"kind", "mass", "omega", "depth", "width", "center", "c2", "c4"}},
      {"basis", {"family", "xmin", "xmax", "n"}},
      {"lattice", {"rule", "nx", "np", "sampling"}},
      {"solve", {"representations", "levels"}},
      {"prune", {"strategy", "values", "levels"}},
      {"output", {"dir", "echo_config"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

double to_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", field, text), field);
  }
  return value;
}

long long to_integer(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(fmt::format("{}: '{}' is not an integer", field, text), field);
  }
  return value;
}

bool to_bool(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", field, text), field);
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto value = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!value) return std::nullopt;
    return trim(*value);
  }

  double number(const std::string& section, const std::string& key, double fallback) const {
    const auto v = get(section, key);
    return v ? to_double(*v, section + "." + key) : fallback;
  }

 private:
  const pt::ptree& tree_;
};

std::string_view rule_name(LatticeRule rule) {
  switch (rule) {
    case LatticeRule::Explicit: return "explicit";
    case LatticeRule::Balanced: return "balanced";
    case LatticeRule::Square: return "square";
    case LatticeRule::Line: return "line";
  }
  return "balanced";
}

std::string_view prune_name(PruneKind kind) {
  switch (kind) {
    case PruneKind::All: return "all";
    case PruneKind::EnergyShell: return "energy-shell";
    case PruneKind::TopK: return "top-k";
  }
  return "all";
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()), "", static_cast<int>(e.line()));
  }

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      if (!body.data().empty()) {
        throw ConfigError(fmt::format("key '{}' appears outside any section", section), section);
      }
      throw ConfigError(fmt::format("unknown section [{}]", section), section);
    }
    for (const auto& [key, value] : body) {
      (void)value;
      if (!it->second.contains(key)) {
        throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, section),
                          section + "." + key);
      }
    }
  }

  const Reader r(tree);
  ExperimentConfig c;

  if (auto v = r.get("experiment", "id")) c.id = *v;
  if (auto v = r.get("experiment", "seed")) {
    const auto seed = to_integer(*v, "experiment.seed");
    if (seed < 0) throw ConfigError("experiment.seed must be non-negative", "experiment.seed");
    c.seed = static_cast<std::uint64_t>(seed);
  }

  const std::string kind = r.get("model", "kind").value_or("harmonic");
  if (kind == "harmonic") {
    c.model = Harmonic{r.number("model", "omega", 1.0)};
  } else if (kind == "morse") {
    c.model = Morse{r.number("model", "depth", 10.0), r.number("model", "width", 1.0),
                    r.number("model", "center", 0.0)};
  } else if (kind == "double-well") {
    c.model = QuarticDoubleWell{r.number("model", "c2", 1.0), r.number("model", "c4", 0.1)};
  } else {
    throw ConfigError(fmt::format("model.kind: unknown model '{}'", kind), "model.kind");
  }
  c.mass = r.number("model", "mass", 1.0);

  if (auto v = r.get("basis", "family")) {
    try {
      c.family = dvr_family_from_string(*v);
    } catch (const InvalidArgument& e) {
      throw ConfigError(fmt::format("basis.family: {}", e.what()), "basis.family");
    }
  }
  // Model validity is needed before the default domain can be looked up.
  try {
    validate(c.model);
  } catch (const InvalidArgument& e) {
    throw ConfigError(fmt::format("model: {}", e.what()), "model");
  }
  const auto [dmin, dmax] = default_domain(c.model);
  c.xmin = r.number("basis", "xmin", dmin);
  c.xmax = r.number("basis", "xmax", dmax);
  if (auto v = r.get("basis", "n")) {
    for (const auto& item : split_list(*v)) {
      c.sizes.push_back(static_cast<int>(to_integer(item, "basis.n")));
    }
  }

  if (auto v = r.get("lattice", "rule")) {
    if (*v == "explicit") c.lattice_rule = LatticeRule::Explicit;
    else if (*v == "balanced") c.lattice_rule = LatticeRule::Balanced;
    else if (*v == "square") c.lattice_rule = LatticeRule::Square;
    else if (*v == "line") c.lattice_rule = LatticeRule::Line;
    else throw ConfigError(fmt::format("lattice.rule: unknown rule '{}'", *v), "lattice.rule");
  }
  const auto nx = r.get("lattice", "nx");
  const auto np = r.get("lattice", "np");
  if (nx || np) {
    if (!nx || !np) throw ConfigError("lattice.nx and lattice.np must be given together", "lattice.nx");
    if (r.get("lattice", "rule") && c.lattice_rule != LatticeRule::Explicit) {
      throw ConfigError("lattice.nx/np conflict with a non-explicit lattice.rule", "lattice.rule");
    }
    c.lattice_rule = LatticeRule::Explicit;
    c.nx = static_cast<int>(to_integer(*nx, "lattice.nx"));
    c.np = static_cast<int>(to_integer(*np, "lattice.np"));
  }
  if (auto v = r.get("lattice", "sampling")) {
    try {
      c.sampling = gaussian_sampling_from_string(*v);
    } catch (const InvalidArgument& e) {
      throw ConfigError(fmt::format("lattice.sampling: {}", e.what()), "lattice.sampling");
    }
  }

  if (auto v = r.get("solve", "representations")) {
    for (const auto& item : split_list(*v)) {
      try {
        c.representations.push_back(representation_from_string(item));
      } catch (const InvalidArgument& e) {
        throw ConfigError(fmt::format("solve.representations: {}", e.what()),
                          "solve.representations");
      }
    }
  }
  if (auto v = r.get("solve", "levels")) c.levels = static_cast<int>(to_integer(*v, "solve.levels"));

  if (auto v = r.get("prune", "strategy")) {
    if (*v == "all") c.prune_kind = PruneKind::All;
    else if (*v == "energy-shell") c.prune_kind = PruneKind::EnergyShell;
    else if (*v == "top-k") c.prune_kind = PruneKind::TopK;
    else throw ConfigError(fmt::format("prune.strategy: unknown strategy '{}'", *v), "prune.strategy");
  }
  if (auto v = r.get("prune", "values")) {
    for (const auto& item : split_list(*v)) c.prune_values.push_back(to_double(item, "prune.values"));
  }
  if (auto v = r.get("prune", "levels")) {
    c.tracked_levels = static_cast<int>(to_integer(*v, "prune.levels"));
  }

  if (auto v = r.get("output", "dir")) c.output_dir = *v;
  if (auto v = r.get("output", "echo_config")) c.echo_config = to_bool(*v, "output.echo_config");

  validate_config(c);
  return c;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  return parse_config(in);
}

void validate_config(const ExperimentConfig& c) {
  if (c.id.empty() || c.id.find_first_of("/\\ \t") != std::string::npos) {
    throw ConfigError("experiment.id must be a non-empty name without spaces or slashes",
                      "experiment.id");
  }
  try {
    validate(c.model);
  } catch (const InvalidArgument& e) {
    throw ConfigError(fmt::format("model: {}", e.what()), "model");
  }
  if (!(c.mass > 0.0) || !std::isfinite(c.mass)) {
    throw ConfigError("model.mass must be positive", "model.mass");
  }
  if (!(c.xmax > c.xmin) || !std::isfinite(c.xmin) || !std::isfinite(c.xmax)) {
    throw ConfigError("basis.xmax must exceed basis.xmin", "basis.xmin");
  }
  if (c.sizes.empty()) throw ConfigError("basis.n is required", "basis.n");
  for (int n : c.sizes) {
    if (n < 2) throw ConfigError(fmt::format("basis.n: size {} is below 2", n), "basis.n");
    if (n > 1024) throw ConfigError(fmt::format("basis.n: size {} exceeds 1024", n), "basis.n");
    lattice_shape(c, n);
  }
  if (c.sampling == GaussianSampling::Periodized && c.family != DvrFamily::PeriodicSinc) {
    throw ConfigError("lattice.sampling = periodized needs the periodic-sinc family",
                      "lattice.sampling");
  }
  for (auto rep : c.representations) {
    if (rep == Representation::DirectDvr) {
      throw ConfigError("solve.representations: direct-dvr always runs and must not be listed",
                        "solve.representations");
    }
  }
  if (c.levels < 1) throw ConfigError("solve.levels must be at least 1", "solve.levels");
  if (c.tracked_levels && *c.tracked_levels < 1) {
    throw ConfigError("prune.levels must be at least 1", "prune.levels");
  }
  for (double v : c.prune_values) {
    if (std::isnan(v)) throw ConfigError("prune.values: NaN is not a valid parameter", "prune.values");
    if (c.prune_kind == PruneKind::TopK && (v < 1.0 || v != std::floor(v) || std::isinf(v))) {
      throw ConfigError(fmt::format("prune.values: top-k needs positive integers, got {}", v),
                        "prune.values");
    }
  }
  if (c.prune_kind == PruneKind::All && !c.prune_values.empty()) {
    throw ConfigError("prune.values given but prune.strategy is 'all'", "prune.values");
  }
  if (c.output_dir.empty()) throw ConfigError("output.dir must not be empty", "output.dir");
}

std::pair<int, int> lattice_shape(const ExperimentConfig& c, int n) {
  switch (c.lattice_rule) {
    case LatticeRule::Explicit:
      if (c.nx < 1 || c.np < 1 || c.nx * c.np != n) {
        throw ConfigError(fmt::format("lattice: Nx * Np must equal N (got {} * {} for N = {})",
                                      c.nx, c.np, n),
                          "lattice.nx");
      }
      return {c.nx, c.np};
    case LatticeRule::Balanced: {
      int nx = 1;
      for (int d = 1; d * d <= n; ++d) {
        if (n % d == 0) nx = d;
      }
      return {nx, n / nx};
    }
    case LatticeRule::Square: {
      const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
      if (root * root != n) {
        throw ConfigError(
            fmt::format("lattice: rule 'square' needs Nx * Np = N with N a perfect square, got N = {}", n),
            "lattice.rule");
      }
      return {root, root};
    }
    case LatticeRule::Line:
      return {n, 1};
  }
  return {n, 1};
}

std::string serialize_config(const ExperimentConfig& c) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  out += "[experiment]\n";
  line("id", c.id);
  line("seed", std::to_string(c.seed));

  out += "\n[model]\n";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Harmonic>) {
          line("kind", "harmonic");
          line("omega", format_number(m.omega));
        } else if constexpr (std::is_same_v<T, Morse>) {
          line("kind", "morse");
          line("depth", format_number(m.depth));
          line("width", format_number(m.width));
          line("center", format_number(m.center));
        } else {
          line("kind", "double-well");
          line("c2", format_number(m.c2));
          line("c4", format_number(m.c4));
        }
      },
      c.model);
  line("mass", format_number(c.mass));

  out += "\n[basis]\n";
  line("family", std::string(to_string(c.family)));
  line("xmin", format_number(c.xmin));
  line("xmax", format_number(c.xmax));
  line("n", fmt::format("{}", fmt::join(c.sizes, ", ")));

  out += "\n[lattice]\n";
  line("rule", std::string(rule_name(c.lattice_rule)));
  if (c.lattice_rule == LatticeRule::Explicit) {
    line("nx", std::to_string(c.nx));
    line("np", std::to_string(c.np));
  }
  line("sampling", std::string(to_string(c.sampling)));

  out += "\n[solve]\n";
  std::vector<std::string> reps;
  for (auto rep : c.representations) reps.emplace_back(to_string(rep));
  if (!reps.empty()) line("representations", fmt::format("{}", fmt::join(reps, ", ")));
  line("levels", std::to_string(c.levels));

  out += "\n[prune]\n";
  line("strategy", std::string(prune_name(c.prune_kind)));
  if (!c.prune_values.empty()) {
    std::vector<std::string> vals;
    for (double v : c.prune_values) vals.push_back(format_number(v));
    line("values", fmt::format("{}", fmt::join(vals, ", ")));
  }
  if (c.tracked_levels) line("levels", std::to_string(*c.tracked_levels));

  out += "\n[output]\n";
  line("dir", c.output_dir);
  line("echo_config", c.echo_config ? "true" : "false");
  return out;
}

}  // namespace pvb
