#include "dscflow/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "dscflow/error.hpp"

namespace dscflow {

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"cavity", "step", "cylinder", "annulus", "slab"};
  return names;
}

ScenarioParameters scenario_defaults(std::string_view name) {
  if (name == "slab") return {{"alpha", 1.0}, {"length", 1.0}, {"diffusion_number", 0.25}, {"T_hot", 1.0}, {"T_cold", 0.0}};
  if (name == "cavity") return {{"reynolds", 100.0}, {"lid_speed", 1.0}, {"courant", 0.16}, {"coarsen_period", 0.0}};
  if (name == "step") {
    return {{"reynolds", 5000.0}, {"inflow_speed", 1.0}, {"courant", 0.1}, {"length", 4.0}, {"coarsen_period", 10.0}};
  }
  if (name == "cylinder") {
    return {{"reynolds", 150.0}, {"inflow_speed", 1.0},  {"courant", 0.04},
            {"offset", 0.05},    {"coarsen_period", 0.0}, {"diameter_fraction", 0.15}};
  }
  if (name == "annulus") {
    return {{"rayleigh", 1.0e4}, {"prandtl", 0.7}, {"delta_T", 1.0}, {"radius_ratio", 2.0}, {"diffusion_number", 0.1},
            {"coarsen_period", 0.0}};
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

int default_resolution(std::string_view name) {
  if (name == "slab") return 64;
  if (name == "cavity") return 16;
  if (name == "step") return 16;
  if (name == "cylinder") return 40;
  if (name == "annulus") return 12;
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

Mesh structured_mesh(int nx, int ny, int nz, const Vec3& origin, const Vec3& h,
                     const std::function<bool(int, int, int)>& active,
                     const std::function<std::string(int, int, int, int)>& tag) {
  if (nx < 1 || ny < 1 || nz < 1) throw ConfigError("grid dimensions must be positive");
  auto on = [&](int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return false;
    return !active || active(i, j, k);
  };
  const auto lattice = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(k) * (ny + 1) + j) * (nx + 1) + i;
  };
  std::vector<std::int64_t> compact((nx + 1) * static_cast<std::size_t>(ny + 1) * (nz + 1), -1);
  std::vector<Vec3> vertices;
  auto vid = [&](int i, int j, int k) {
    auto& slot = compact[lattice(i, j, k)];
    if (slot < 0) {
      slot = static_cast<std::int64_t>(vertices.size());
      vertices.push_back(origin + Vec3(i * h.x(), j * h.y(), k * h.z()));
    }
    return static_cast<std::size_t>(slot);
  };
  static constexpr int kOffsets[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                         {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  static constexpr int kStep[6][3] = {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};
  std::vector<std::array<std::size_t, 8>> hexes;
  std::vector<BoundarySpec> boundary;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!on(i, j, k)) continue;
        std::array<std::size_t, 8> ids{};
        for (int v = 0; v < 8; ++v) ids[v] = vid(i + kOffsets[v][0], j + kOffsets[v][1], k + kOffsets[v][2]);
        const std::size_t c = hexes.size();
        hexes.push_back(ids);
        for (int f = 0; f < 6; ++f) {
          if (!on(i + kStep[f][0], j + kStep[f][1], k + kStep[f][2])) boundary.push_back({c, f, tag(i, j, k, f)});
        }
      }
    }
  }
  if (hexes.empty()) throw ConfigError("grid has no active cells");
  return build_mesh(std::move(vertices), hexes, boundary);
}

Mesh annulus_mesh(int n_r, int n_theta, double r_in, double r_out, double thickness) {
  if (n_r < 1 || n_theta < 3) throw ConfigError("annulus needs at least 1 radial and 3 azimuthal cells");
  if (!(r_in > 0.0) || !(r_out > r_in) || !(thickness > 0.0)) throw ConfigError("invalid annulus dimensions");
  std::vector<Vec3> vertices;
  auto vid = [&](int j, int k, int z) {
    return static_cast<std::size_t>((z * n_theta + (k % n_theta)) * (n_r + 1) + j);
  };
  for (int z = 0; z < 2; ++z) {
    for (int k = 0; k < n_theta; ++k) {
      const double th = 2.0 * std::numbers::pi * k / n_theta;
      for (int j = 0; j <= n_r; ++j) {
        const double r = r_in + (r_out - r_in) * j / n_r;
        vertices.emplace_back(r * std::cos(th), r * std::sin(th), z * thickness);
      }
    }
  }
  std::vector<std::array<std::size_t, 8>> hexes;
  std::vector<BoundarySpec> boundary;
  for (int k = 0; k < n_theta; ++k) {
    for (int j = 0; j < n_r; ++j) {
      const std::size_t c = hexes.size();
      hexes.push_back({vid(j, k, 0), vid(j + 1, k, 0), vid(j + 1, k + 1, 0), vid(j, k + 1, 0), vid(j, k, 1),
                       vid(j + 1, k, 1), vid(j + 1, k + 1, 1), vid(j, k + 1, 1)});
      if (j == 0) boundary.push_back({c, 0, "inner"});
      if (j == n_r - 1) boundary.push_back({c, 1, "outer"});
      boundary.push_back({c, 4, "front"});
      boundary.push_back({c, 5, "back"});
    }
  }
  return build_mesh(std::move(vertices), hexes, boundary);
}

namespace {

double sor_factor(int n) { return 2.0 / (1.0 + std::sin(std::numbers::pi / n)); }

CoarseningConfig coarsening_every(double period) {
  CoarseningConfig c;
  if (period < 1.0) {
    c.enabled = false;
  } else {
    c.period = static_cast<int>(std::lround(period));
  }
  return c;
}

Scenario make_slab(int n, const ScenarioParameters& p) {
  const double L = p.at("length");
  const double h = L / n;
  Scenario s;
  s.mesh = structured_mesh(n, 1, 1, Vec3::Zero(), Vec3(h, h, h), {}, [](int, int, int, int) { return "wall"; });
  s.length_scale = L;
  auto& cfg = s.config;
  cfg.props.alpha = p.at("alpha");
  cfg.props.eta = 0.0;
  cfg.tau = p.at("diffusion_number") * h * h / cfg.props.alpha;
  cfg.freeze_flow = true;
  cfg.coarsening.enabled = false;
  cfg.bcs["wall"] = BoundaryRule::adiabatic();
  cfg.n_steps = static_cast<std::int64_t>(std::lround(0.1 * L * L / cfg.props.alpha / cfg.tau));
  s.initial = FieldState(s.mesh.num_cells());
  for (std::size_t c = 0; c < s.mesh.num_cells(); ++c) {
    s.initial.node(Field::T, c) = s.mesh.cells[c].centroid.x() < 0.5 * L ? p.at("T_hot") : p.at("T_cold");
  }
  return s;
}

Scenario make_cavity(int n, const ScenarioParameters& p) {
  const double h = 1.0 / n;
  const double U = p.at("lid_speed");
  Scenario s;
  s.mesh = structured_mesh(n, n, 1, Vec3::Zero(), Vec3(h, h, h), {}, [](int, int, int, int f) -> std::string {
    switch (f) {
      case 3: return "lid";
      case 4: return "front";
      case 5: return "back";
      default: return "wall";
    }
  });
  s.length_scale = 1.0;
  s.velocity_scale = U;
  auto& cfg = s.config;
  cfg.props.eta = U / p.at("reynolds");
  cfg.props.alpha = cfg.props.eta;
  cfg.tau = p.at("courant") * h / U;
  cfg.coarsening = coarsening_every(p.at("coarsen_period"));
  cfg.pressure.relaxation = sor_factor(n);
  cfg.pressure.max_iterations = 5000;
  cfg.bcs["wall"] = BoundaryRule::no_slip_wall();
  cfg.bcs["lid"] = BoundaryRule::moving_wall(Vec3(U, 0.0, 0.0));
  cfg.bcs["front"] = BoundaryRule::symmetry();
  cfg.bcs["back"] = BoundaryRule::symmetry();
  cfg.n_steps = static_cast<std::int64_t>(std::lround(20.0 / cfg.tau));
  cfg.probes.push_back({std::nullopt, Vec3(0.5, 0.5, 0.5 * h), {ProbeField::Ux, ProbeField::Uy, ProbeField::P}});
  s.initial = FieldState(s.mesh.num_cells());
  return s;
}

Scenario make_step(int n, const ScenarioParameters& p) {
  // Channel of height H = 1; the inflow jet fills the upper half of the
  // inlet plane, the lower half is the step face.
  const double H = 1.0;
  const double h = H / n;
  const int nx = static_cast<int>(std::lround(p.at("length") * n));
  if (n % 2 != 0) throw ConfigError("step resolution must be even");
  if (nx < 2) throw ConfigError("step channel too short");
  const double U = p.at("inflow_speed");
  Scenario s;
  s.mesh = structured_mesh(nx, n, 1, Vec3::Zero(), Vec3(h, h, h), {}, [n](int, int j, int, int f) -> std::string {
    switch (f) {
      case 0: return j >= n / 2 ? "inlet" : "step";
      case 1: return "outlet";
      case 4: return "front";
      case 5: return "back";
      default: return "wall";
    }
  });
  s.length_scale = H;
  s.velocity_scale = U;
  auto& cfg = s.config;
  cfg.props.eta = U * H / p.at("reynolds");
  cfg.props.alpha = cfg.props.eta;
  cfg.tau = p.at("courant") * h / U;
  cfg.coarsening = coarsening_every(p.at("coarsen_period"));
  cfg.pressure.relaxation = sor_factor(std::max(nx, n));
  cfg.pressure.tolerance = 1e-4;
  cfg.pressure.max_iterations = 20000;
  cfg.bcs["inlet"] = BoundaryRule::inflow(Vec3(U, 0.0, 0.0), 0.0);
  cfg.bcs["step"] = BoundaryRule::no_slip_wall();
  cfg.bcs["wall"] = BoundaryRule::no_slip_wall();
  cfg.bcs["outlet"] = BoundaryRule::outflow();
  cfg.bcs["front"] = BoundaryRule::symmetry();
  cfg.bcs["back"] = BoundaryRule::symmetry();
  cfg.n_steps = 20000;
  cfg.probes.push_back({std::nullopt, Vec3(2.0 * H, 0.5 * H, 0.5 * h), {ProbeField::Ux, ProbeField::Uy, ProbeField::Umag}});
  s.initial = FieldState(s.mesh.num_cells());
  return s;
}

Scenario make_cylinder(int ny, const ScenarioParameters& p) {
  // Unit diameter; the grid spacing follows from the number of cells across it.
  const double dcells = p.at("diameter_fraction") * ny;
  if (dcells < 3.0) throw ConfigError("cylinder resolution too low to resolve the obstacle");
  const double D = 1.0;
  const double h = D / dcells;
  const int nx = 3 * ny;
  const double U = p.at("inflow_speed");
  const double xc = 0.25 * nx * h;
  const double yc = 0.5 * ny * h + p.at("offset") * D;
  const double R = 0.5 * D;
  auto solid = [=](int i, int j) {
    const double x = (i + 0.5) * h - xc;
    const double y = (j + 0.5) * h - yc;
    return x * x + y * y < R * R;
  };
  Scenario s;
  s.mesh = structured_mesh(
      nx, ny, 1, Vec3::Zero(), Vec3(h, h, h), [&](int i, int j, int) { return !solid(i, j); },
      [&](int i, int j, int, int f) -> std::string {
        static constexpr int di[6] = {-1, 1, 0, 0, 0, 0};
        static constexpr int dj[6] = {0, 0, -1, 1, 0, 0};
        if (f == 4) return "front";
        if (f == 5) return "back";
        const int a = i + di[f];
        const int b = j + dj[f];
        if (a >= 0 && b >= 0 && a < nx && b < ny) return "cylinder";
        switch (f) {
          case 0: return "inlet";
          case 1: return "outlet";
          default: return "side";
        }
      });
  s.length_scale = D;
  s.velocity_scale = U;
  auto& cfg = s.config;
  cfg.props.eta = U * D / p.at("reynolds");
  cfg.props.alpha = cfg.props.eta;
  cfg.tau = p.at("courant") * h / U;
  cfg.coarsening = coarsening_every(p.at("coarsen_period"));
  cfg.pressure.relaxation = sor_factor(nx);
  cfg.pressure.tolerance = 1e-4;
  cfg.pressure.max_iterations = 20000;
  cfg.bcs["inlet"] = BoundaryRule::inflow(Vec3(U, 0.0, 0.0), 0.0);
  cfg.bcs["outlet"] = BoundaryRule::outflow();
  cfg.bcs["side"] = BoundaryRule::symmetry();
  cfg.bcs["cylinder"] = BoundaryRule::no_slip_wall();
  cfg.bcs["front"] = BoundaryRule::symmetry();
  cfg.bcs["back"] = BoundaryRule::symmetry();
  cfg.n_steps = static_cast<std::int64_t>(std::lround(60.0 * D / U / cfg.tau));
  cfg.probes.push_back({std::nullopt, Vec3(xc + 2.0 * D, 0.5 * ny * h, 0.5 * h), {ProbeField::Ux, ProbeField::Uy}});
  s.initial = FieldState(s.mesh.num_cells());
  for (std::size_t c = 0; c < s.mesh.num_cells(); ++c) s.initial.set_velocity(c, Vec3(U, 0.0, 0.0));
  return s;
}

Scenario make_annulus(int n_r, const ScenarioParameters& p) {
  // Gap width L = r_out - r_in = 1, hot inner wall, cold outer wall.
  const double ratio = p.at("radius_ratio");
  if (!(ratio > 1.0)) throw ConfigError("radius_ratio must exceed 1");
  const double r_in = 1.0 / (ratio - 1.0);
  const double r_out = r_in + 1.0;
  const double dr = 1.0 / n_r;
  const int n_theta = 8 * n_r;
  Scenario s;
  s.mesh = annulus_mesh(n_r, n_theta, r_in, r_out, dr);
  s.length_scale = 1.0;
  const double dT = p.at("delta_T");
  const double Pr = p.at("prandtl");
  const double Ra = p.at("rayleigh");
  auto& cfg = s.config;
  // Ra = g |beta| dT L^3 / (nu alpha), with g = |beta| = 1.
  const double nu = std::sqrt(dT * Pr / Ra);
  cfg.props.eta = nu;
  cfg.props.alpha = nu / Pr;
  cfg.props.beta = -1.0;
  cfg.props.T_inf = 0.5 * dT;
  cfg.props.g = Vec3(0.0, -1.0, 0.0);
  s.velocity_scale = std::sqrt(dT);
  double hmin = std::numeric_limits<double>::infinity();
  for (const auto& c : s.mesh.cells) hmin = std::min(hmin, c.min_spacing);
  cfg.tau = p.at("diffusion_number") * hmin * hmin / std::max(nu, cfg.props.alpha);
  cfg.coarsening = coarsening_every(p.at("coarsen_period"));
  cfg.pressure.relaxation = sor_factor(n_theta / 2);
  cfg.pressure.tolerance = 1e-4;
  cfg.pressure.max_iterations = 20000;
  BoundaryRule inner = BoundaryRule::fixed_temperature(dT);
  BoundaryRule outer = BoundaryRule::fixed_temperature(0.0);
  cfg.bcs["inner"] = inner;
  cfg.bcs["outer"] = outer;
  cfg.bcs["front"] = BoundaryRule::symmetry();
  cfg.bcs["back"] = BoundaryRule::symmetry();
  cfg.n_steps = static_cast<std::int64_t>(std::lround(1.0 / cfg.props.alpha / cfg.tau));
  const double rp = r_in + 0.25;
  cfg.probes.push_back({std::nullopt, Vec3(1e-3, rp, 0.5 * dr), {ProbeField::T, ProbeField::Ux, ProbeField::Uy}});
  cfg.probes.push_back({std::nullopt, Vec3(1e-3, -rp, 0.5 * dr), {ProbeField::T, ProbeField::Ux, ProbeField::Uy}});
  s.initial = FieldState(s.mesh.num_cells());
  for (std::size_t c = 0; c < s.mesh.num_cells(); ++c) {
    const Vec3& x = s.mesh.cells[c].centroid;
    const double r = std::hypot(x.x(), x.y());
    s.initial.node(Field::T, c) = dT * std::log(r_out / r) / std::log(r_out / r_in);
  }
  return s;
}

}  // namespace

Scenario build_scenario(std::string_view name, int resolution, const ScenarioParameters& parameters) {
  ScenarioParameters p = scenario_defaults(name);
  for (const auto& [key, value] : parameters) {
    if (!p.count(key)) throw ConfigError("scenario '" + std::string(name) + "' has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw ConfigError("scenario parameter '" + key + "' must be finite");
    p[key] = value;
  }
  const int minimum = name == "slab" ? 2 : name == "annulus" ? 2 : 4;
  if (resolution < minimum) {
    throw ConfigError("resolution " + std::to_string(resolution) + " too small for scenario '" + std::string(name) +
                      "' (minimum " + std::to_string(minimum) + ")");
  }
  Scenario s;
  if (name == "slab") s = make_slab(resolution, p);
  else if (name == "cavity") s = make_cavity(resolution, p);
  else if (name == "step") s = make_step(resolution, p);
  else if (name == "cylinder") s = make_cylinder(resolution, p);
  else if (name == "annulus") s = make_annulus(resolution, p);
  s.name = std::string(name);
  s.resolution = resolution;
  prepare_state(s.mesh, s.config, s.initial);
  return s;
}

}  // namespace dscflow
