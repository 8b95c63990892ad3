#include "dscflow/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "dscflow/error.hpp"
#include "dscflow/mesh_io.hpp"

namespace dscflow {

std::string_view format_name(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Vtk: return "vtk";
    case OutputFormat::Both: return "both";
  }
  return "?";
}

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_double(const Entry& e, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || !std::isfinite(v)) {
    throw ConfigError(e.key + ": expected a finite number, got '" + text + "'", e.line);
  }
  return v;
}

double to_double(const Entry& e) { return to_double(e, e.value); }

std::int64_t to_int(const Entry& e) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(e.value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != e.value.size()) throw ConfigError(e.key + ": expected an integer, got '" + e.value + "'", e.line);
  return v;
}

bool to_bool(const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(e.key + ": expected true or false, got '" + e.value + "'", e.line);
}

Vec3 to_vec3(const Entry& e) {
  const auto w = words(e.value);
  if (w.size() != 3) throw ConfigError(e.key + ": expected three numbers", e.line);
  return {to_double(e, w[0]), to_double(e, w[1]), to_double(e, w[2])};
}

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string vec(const Vec3& v) { return num(v.x()) + " " + num(v.y()) + " " + num(v.z()); }

ProbeSpec to_probe(const Entry& e) {
  auto w = words(e.value);
  ProbeSpec p;
  std::size_t first_field = 0;
  if (!w.empty() && w[0] == "cell") {
    if (w.size() < 2) throw ConfigError("probe: expected a cell index after 'cell'", e.line);
    Entry ce{e.key, w[1], e.line};
    const auto c = to_int(ce);
    if (c < 0) throw ConfigError("probe: cell index must be non-negative", e.line);
    p.cell = static_cast<std::size_t>(c);
    first_field = 2;
  } else {
    if (w.size() < 3) throw ConfigError("probe: expected 'x y z [fields...]' or 'cell N [fields...]'", e.line);
    p.position = {to_double(e, w[0]), to_double(e, w[1]), to_double(e, w[2])};
    first_field = 3;
  }
  if (w.size() > first_field) {
    p.fields.clear();
    for (std::size_t i = first_field; i < w.size(); ++i) {
      const auto f = parse_probe_field(w[i]);
      if (!f) throw ConfigError("probe: unknown field '" + w[i] + "' (T, ux, uy, uz, p, umag)", e.line);
      p.fields.push_back(*f);
    }
  }
  return p;
}

std::string probe_text(const ProbeSpec& p) {
  std::string s = p.cell ? "cell " + std::to_string(*p.cell) : vec(p.position);
  for (ProbeField f : p.fields) s += " " + std::string(probe_field_name(f));
  return s;
}

FieldMask to_targets(const Entry& e) {
  FieldMask m;
  std::string v = e.value;
  for (char& ch : v) {
    if (ch == ',') ch = ' ';
  }
  for (const auto& w : words(v)) {
    if (w == "T") m.insert(Field::T);
    else if (w == "ux") m.insert(Field::Ux);
    else if (w == "uy") m.insert(Field::Uy);
    else if (w == "uz") m.insert(Field::Uz);
    else if (w == "u") m.insert(Field::Ux).insert(Field::Uy).insert(Field::Uz);
    else if (w == "p") m.insert(Field::P);
    else throw ConfigError("coarsening.targets: unknown field '" + w + "'", e.line);
  }
  return m;
}

std::string targets_text(const FieldMask& m) {
  std::string s;
  for (auto [f, n] : {std::pair{Field::T, "T"}, {Field::Ux, "ux"}, {Field::Uy, "uy"}, {Field::Uz, "uz"}, {Field::P, "p"}}) {
    if (m.contains(f)) s += (s.empty() ? "" : " ") + std::string(n);
  }
  return s.empty() ? "none" : s;
}

void apply(RunSettings& s, const Entry& e, bool& probes_reset) {
  SimulationConfig& c = s.config;
  const std::string& k = e.key;
  if (k == "steps") {
    c.n_steps = to_int(e);
    if (c.n_steps < 0) throw ConfigError("steps must be non-negative", e.line);
  } else if (k == "tau") {
    c.tau = to_double(e);
    if (!(c.tau > 0.0)) throw ConfigError("tau must be positive", e.line);
  } else if (k == "material.alpha") c.props.alpha = to_double(e);
  else if (k == "material.eta") c.props.eta = to_double(e);
  else if (k == "material.rho_inf") c.props.rho_inf = to_double(e);
  else if (k == "material.beta") c.props.beta = to_double(e);
  else if (k == "material.T_inf") c.props.T_inf = to_double(e);
  else if (k == "material.g") c.props.g = to_vec3(e);
  else if (k == "source.q") c.q.uniform = to_double(e);
  else if (k == "coarsening.enabled") c.coarsening.enabled = to_bool(e);
  else if (k == "coarsening.period") c.coarsening.period = static_cast<int>(to_int(e));
  else if (k == "coarsening.min_period_ratio") c.coarsening.min_period_ratio = to_double(e);
  else if (k == "coarsening.weights") {
    const auto w = words(e.value);
    if (w.size() == 1 && w[0] == "face_area") c.coarsening.scheme = WeightScheme::FaceArea;
    else if (w.size() == 1 && w[0] == "uniform") c.coarsening.scheme = WeightScheme::Uniform;
    else if (w.size() == 6) {
      c.coarsening.scheme = WeightScheme::Custom;
      for (int i = 0; i < 6; ++i) c.coarsening.custom_weights[i] = to_double(e, w[i]);
    } else {
      throw ConfigError("coarsening.weights: expected face_area, uniform or six numbers", e.line);
    }
  } else if (k == "coarsening.targets") c.coarsening.targets = to_targets(e);
  else if (k == "pressure.max_iterations") c.pressure.max_iterations = static_cast<int>(to_int(e));
  else if (k == "pressure.tolerance") c.pressure.tolerance = to_double(e);
  else if (k == "pressure.omega") c.pressure.relaxation = to_double(e);
  else if (k == "pressure.ordering") {
    if (e.value == "natural") c.pressure.ordering = CellOrdering::Natural;
    else if (e.value == "red_black") c.pressure.ordering = CellOrdering::RedBlack;
    else throw ConfigError("pressure.ordering: expected natural or red_black", e.line);
  } else if (k == "pressure.equation") {
    if (e.value == "coupled") c.pressure.equation = CellEquation::Coupled;
    else if (e.value == "frozen_faces") c.pressure.equation = CellEquation::FrozenFaces;
    else throw ConfigError("pressure.equation: expected coupled or frozen_faces", e.line);
  } else if (k == "pressure.reference_cell") {
    const auto v = to_int(e);
    if (v < 0) throw ConfigError("pressure.reference_cell must be non-negative", e.line);
    c.pressure.reference_cell = static_cast<std::size_t>(v);
  } else if (k == "flow.frozen") c.freeze_flow = to_bool(e);
  else if (k == "cfl.warn") c.cfl_warn = to_double(e);
  else if (k == "cfl.max") c.cfl_max = to_double(e);
  else if (k == "output.every") c.output_every = to_int(e);
  else if (k == "output.format") {
    if (e.value == "csv") s.format = OutputFormat::Csv;
    else if (e.value == "vtk") s.format = OutputFormat::Vtk;
    else if (e.value == "both") s.format = OutputFormat::Both;
    else throw ConfigError("output.format: expected csv, vtk or both", e.line);
  } else if (k == "probe.capacity") {
    const auto v = to_int(e);
    if (v < 1) throw ConfigError("probe.capacity must be >= 1", e.line);
    c.probe_capacity = static_cast<std::size_t>(v);
  } else if (k == "probe") {
    if (!probes_reset) {
      c.probes.clear();
      probes_reset = true;
    }
    c.probes.push_back(to_probe(e));
  } else if (k.rfind("bc.", 0) == 0 && k.size() > 3) {
    try {
      c.bcs[k.substr(3)] = BoundaryRule::parse(e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(k + ": " + err.what(), e.line);
    }
  } else if (k == "initial.T") s.initial_T = to_double(e);
  else if (k == "initial.u") s.initial_u = to_vec3(e);
  else throw ConfigError("unknown key '" + k + "'", e.line);
}

}  // namespace

RunSettings scenario_settings(const std::string& scenario, int resolution, const ScenarioParameters& parameters) {
  RunSettings s;
  s.scenario = scenario;
  s.resolution = resolution > 0 ? resolution : default_resolution(scenario);
  s.parameters = scenario_defaults(scenario);
  for (const auto& [k, v] : parameters) {
    if (!s.parameters.count(k)) throw ConfigError("scenario '" + scenario + "' has no parameter '" + k + "'");
    s.parameters[k] = v;
  }
  s.config = build_scenario(scenario, s.resolution, s.parameters).config;
  return s;
}

RunSettings parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  std::vector<Entry> entries;
  std::map<std::string, std::size_t> seen;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    Entry e{trim(text.substr(0, eq)), trim(text.substr(eq + 1)), line};
    if (e.key.empty()) throw ConfigError("missing key", line);
    if (e.value.empty()) throw ConfigError(e.key + ": missing value", line);
    if (e.key != "probe") {
      auto [it, fresh] = seen.emplace(e.key, line);
      if (!fresh) throw ConfigError("duplicate key '" + e.key + "' (first on line " + std::to_string(it->second) + ")", line);
    }
    entries.push_back(std::move(e));
  }

  auto find = [&](const std::string& key) -> const Entry* {
    for (const auto& e : entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  };
  const Entry* scen = find("scenario");
  const Entry* mesh = find("mesh");
  if (scen && mesh) throw ConfigError("'scenario' and 'mesh' are mutually exclusive", mesh->line);
  if (!scen && !mesh) throw ConfigError("config must set 'scenario' or 'mesh'");

  RunSettings s;
  if (scen) {
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), scen->value) == names.end()) {
      throw ConfigError("unknown scenario '" + scen->value + "'", scen->line);
    }
    int resolution = 0;
    if (const Entry* r = find("resolution")) {
      const auto v = to_int(*r);
      if (v < 1) throw ConfigError("resolution must be positive", r->line);
      resolution = static_cast<int>(v);
    }
    const ScenarioParameters defaults = scenario_defaults(scen->value);
    ScenarioParameters params;
    for (const auto& e : entries) {
      if (e.key.rfind("scenario.", 0) != 0) continue;
      const std::string name = e.key.substr(9);
      if (!defaults.count(name)) throw ConfigError("scenario '" + scen->value + "' has no parameter '" + name + "'", e.line);
      params[name] = to_double(e);
    }
    try {
      s = scenario_settings(scen->value, resolution, params);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), scen->line);
    }
  } else {
    s.mesh_path = mesh->value;
    if (s.mesh_path.is_relative()) s.mesh_path = base_dir / s.mesh_path;
    if (find("resolution")) throw ConfigError("'resolution' only applies to scenarios", find("resolution")->line);
    s.config.coarsening.enabled = true;
  }

  bool probes_reset = false;
  for (const auto& e : entries) {
    if (e.key == "scenario" || e.key == "mesh" || e.key == "resolution" || e.key.rfind("scenario.", 0) == 0) continue;
    if (scen && (e.key == "initial.T" || e.key == "initial.u")) {
      throw ConfigError(e.key + " only applies to mesh-file runs", e.line);
    }
    apply(s, e, probes_reset);
  }

  // Cross-field validation; attribute errors to the key they name.
  try {
    PreparedRun run = prepare_run(s);
    (void)run;
  } catch (const ConfigError& err) {
    const std::string msg = err.what();
    const std::string first = msg.substr(0, msg.find_first_of(" :"));
    if (first == "probe" && probes_reset) {
      // Probe entries may repeat: find the first one the mesh rejects.
      RunSettings bare = s;
      bare.config.probes.clear();
      const PreparedRun run = prepare_run(bare);
      std::size_t k = 0;
      for (const auto& e : entries) {
        if (e.key != "probe") continue;
        try {
          Probe(run.mesh, s.config.probes[k++], 1);
        } catch (const Error&) {
          throw ConfigError(msg, e.line);
        }
      }
    }
    const auto it = seen.find(first);
    throw ConfigError(msg, it != seen.end() ? it->second : 0);
  }
  return s;
}

RunSettings parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

std::string emit_config(const RunSettings& s) {
  const SimulationConfig& c = s.config;
  std::ostringstream os;
  os << "# dscflow run configuration\n";
  if (!s.scenario.empty()) {
    os << "scenario = " << s.scenario << "\n";
    os << "resolution = " << s.resolution << "\n";
    for (const auto& [k, v] : s.parameters) os << "scenario." << k << " = " << num(v) << "\n";
  } else {
    os << "mesh = " << s.mesh_path.string() << "\n";
    os << "initial.T = " << num(s.initial_T) << "\n";
    os << "initial.u = " << vec(s.initial_u) << "\n";
  }
  os << "\nsteps = " << c.n_steps << "\n";
  os << "tau = " << num(c.tau) << "\n";
  os << "flow.frozen = " << (c.freeze_flow ? "true" : "false") << "\n";
  os << "\nmaterial.alpha = " << num(c.props.alpha) << "\n";
  os << "material.eta = " << num(c.props.eta) << "\n";
  os << "material.rho_inf = " << num(c.props.rho_inf) << "\n";
  os << "material.beta = " << num(c.props.beta) << "\n";
  os << "material.T_inf = " << num(c.props.T_inf) << "\n";
  os << "material.g = " << vec(c.props.g) << "\n";
  os << "source.q = " << num(c.q.uniform) << "\n";
  os << "\ncoarsening.enabled = " << (c.coarsening.enabled ? "true" : "false") << "\n";
  os << "coarsening.period = " << c.coarsening.period << "\n";
  os << "coarsening.min_period_ratio = " << num(c.coarsening.min_period_ratio) << "\n";
  os << "coarsening.weights = ";
  switch (c.coarsening.scheme) {
    case WeightScheme::FaceArea: os << "face_area"; break;
    case WeightScheme::Uniform: os << "uniform"; break;
    case WeightScheme::Custom:
      for (int i = 0; i < 6; ++i) os << (i ? " " : "") << num(c.coarsening.custom_weights[i]);
      break;
  }
  os << "\ncoarsening.targets = " << targets_text(c.coarsening.targets) << "\n";
  os << "\npressure.max_iterations = " << c.pressure.max_iterations << "\n";
  os << "pressure.tolerance = " << num(c.pressure.tolerance) << "\n";
  os << "pressure.omega = " << num(c.pressure.relaxation) << "\n";
  os << "pressure.ordering = " << (c.pressure.ordering == CellOrdering::Natural ? "natural" : "red_black") << "\n";
  os << "pressure.equation = " << (c.pressure.equation == CellEquation::Coupled ? "coupled" : "frozen_faces") << "\n";
  os << "pressure.reference_cell = " << c.pressure.reference_cell << "\n";
  os << "\ncfl.warn = " << num(c.cfl_warn) << "\n";
  os << "cfl.max = " << num(c.cfl_max) << "\n";
  os << "output.every = " << c.output_every << "\n";
  os << "output.format = " << format_name(s.format) << "\n";
  os << "probe.capacity = " << c.probe_capacity << "\n";
  for (const auto& p : c.probes) os << "probe = " << probe_text(p) << "\n";
  os << "\n";
  for (const auto& [tag, rule] : c.bcs) os << "bc." << tag << " = " << rule.to_string() << "\n";
  return os.str();
}

PreparedRun prepare_run(const RunSettings& s) {
  PreparedRun run;
  if (!s.scenario.empty()) {
    Scenario sc = build_scenario(s.scenario, s.resolution, s.parameters);
    run.mesh = std::move(sc.mesh);
    run.initial = std::move(sc.initial);
    run.config = s.config;
    run.config.validate(run.mesh);
    prepare_state(run.mesh, run.config, run.initial);
  } else {
    run.mesh = read_mesh(s.mesh_path);
    run.config = s.config;
    run.config.validate(run.mesh);
    run.initial = initial_state(run.mesh, run.config, s.initial_T, s.initial_u);
  }
  return run;
}

}  // namespace dscflow
