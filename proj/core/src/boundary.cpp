#include "dscflow/boundary.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "dscflow/error.hpp"

namespace dscflow {

BoundaryRule BoundaryRule::fixed_temperature(double T) {
  BoundaryRule r;
  r.temperature = TemperatureBc::Fixed;
  r.T = T;
  return r;
}

BoundaryRule BoundaryRule::moving_wall(const Vec3& u) {
  BoundaryRule r;
  r.velocity = VelocityBc::Prescribed;
  r.u = u;
  return r;
}

BoundaryRule BoundaryRule::inflow(const Vec3& u, double T) {
  BoundaryRule r;
  r.velocity = VelocityBc::Prescribed;
  r.u = u;
  r.temperature = TemperatureBc::Fixed;
  r.T = T;
  return r;
}

BoundaryRule BoundaryRule::outflow(double p) {
  BoundaryRule r;
  r.velocity = VelocityBc::ZeroGradient;
  r.fixed_pressure = true;
  r.p = p;
  return r;
}

BoundaryRule BoundaryRule::symmetry() {
  BoundaryRule r;
  r.velocity = VelocityBc::Slip;
  return r;
}

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string BoundaryRule::to_string() const {
  // Canonical forms for the named rules, otherwise the general form.
  if (*this == no_slip_wall()) return "no_slip";
  if (*this == fixed_temperature(T)) return "fixed_temperature " + num(T);
  if (*this == moving_wall(u)) return "moving_wall " + num(u.x()) + " " + num(u.y()) + " " + num(u.z());
  if (*this == inflow(u, T)) return "inflow " + num(u.x()) + " " + num(u.y()) + " " + num(u.z()) + " " + num(T);
  if (*this == outflow(p)) return "outflow " + num(p);
  if (*this == symmetry()) return "symmetry";

  std::ostringstream os;
  os << "custom velocity=";
  switch (velocity) {
    case VelocityBc::NoSlip: os << "no_slip"; break;
    case VelocityBc::Prescribed: os << "prescribed:" << num(u.x()) << ',' << num(u.y()) << ',' << num(u.z()); break;
    case VelocityBc::ZeroGradient: os << "zero_gradient"; break;
    case VelocityBc::Slip: os << "slip"; break;
  }
  os << " temperature=";
  if (temperature == TemperatureBc::Fixed) os << "fixed:" << num(T);
  else os << "adiabatic";
  os << " pressure=";
  if (fixed_pressure) os << "fixed:" << num(p);
  else os << "zero_gradient";
  return os.str();
}

namespace {

double parse_number(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) throw ConfigError("expected a finite number, got '" + s + "'");
  return v;
}

Vec3 parse_triple(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("expected three comma-separated components, got '" + s + "'");
  return {parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
}

}  // namespace

BoundaryRule BoundaryRule::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> tok;
  for (std::string t; is >> t;) tok.push_back(t);
  if (tok.empty()) throw ConfigError("empty boundary rule");
  const std::string& kind = tok[0];
  auto expect = [&](std::size_t n) {
    if (tok.size() != n + 1) {
      throw ConfigError("boundary rule '" + kind + "' takes " + std::to_string(n) + " value(s)");
    }
  };
  if (kind == "no_slip" || kind == "wall" || kind == "adiabatic") {
    expect(0);
    return no_slip_wall();
  }
  if (kind == "fixed_temperature") {
    expect(1);
    return fixed_temperature(parse_number(tok[1]));
  }
  if (kind == "moving_wall") {
    expect(3);
    return moving_wall({parse_number(tok[1]), parse_number(tok[2]), parse_number(tok[3])});
  }
  if (kind == "inflow") {
    expect(4);
    return inflow({parse_number(tok[1]), parse_number(tok[2]), parse_number(tok[3])}, parse_number(tok[4]));
  }
  if (kind == "outflow") {
    if (tok.size() == 1) return outflow();
    expect(1);
    return outflow(parse_number(tok[1]));
  }
  if (kind == "symmetry" || kind == "slip") {
    expect(0);
    return symmetry();
  }
  if (kind == "custom") {
    BoundaryRule r;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const auto eq = tok[i].find('=');
      if (eq == std::string::npos) throw ConfigError("custom boundary rule expects key=value, got '" + tok[i] + "'");
      const std::string key = tok[i].substr(0, eq);
      const std::string val = tok[i].substr(eq + 1);
      const auto colon = val.find(':');
      const std::string head = val.substr(0, colon);
      const std::string arg = colon == std::string::npos ? "" : val.substr(colon + 1);
      if (key == "velocity") {
        if (head == "no_slip") r.velocity = VelocityBc::NoSlip;
        else if (head == "prescribed") {
          r.velocity = VelocityBc::Prescribed;
          r.u = parse_triple(arg);
        } else if (head == "zero_gradient") r.velocity = VelocityBc::ZeroGradient;
        else if (head == "slip") r.velocity = VelocityBc::Slip;
        else throw ConfigError("unknown velocity condition '" + head + "'");
      } else if (key == "temperature") {
        if (head == "adiabatic") r.temperature = TemperatureBc::Adiabatic;
        else if (head == "fixed") {
          r.temperature = TemperatureBc::Fixed;
          r.T = parse_number(arg);
        } else throw ConfigError("unknown temperature condition '" + head + "'");
      } else if (key == "pressure") {
        if (head == "zero_gradient") r.fixed_pressure = false;
        else if (head == "fixed") {
          r.fixed_pressure = true;
          r.p = parse_number(arg);
        } else throw ConfigError("unknown pressure condition '" + head + "'");
      } else {
        throw ConfigError("unknown custom boundary key '" + key + "'");
      }
    }
    return r;
  }
  throw ConfigError("unknown boundary rule '" + kind + "'");
}

ResolvedBoundary resolve_boundary(const Mesh& mesh, const BoundaryRules& rules) {
  std::vector<const BoundaryRule*> by_tag(mesh.tags.size());
  for (std::size_t t = 0; t < mesh.tags.size(); ++t) {
    auto it = rules.find(mesh.tags[t]);
    if (it == rules.end()) throw BoundaryError("no boundary rule for tag '" + mesh.tags[t] + "'");
    by_tag[t] = &it->second;
  }
  ResolvedBoundary out;
  const std::size_t nb = mesh.boundary_faces.size();
  out.table.resize(nb);
  out.slip.assign(nb, 0);
  out.pressure.assign(nb, std::nullopt);
  using Kind = BoundaryValue::Kind;
  for (std::size_t bi = 0; bi < nb; ++bi) {
    const BoundaryRule& r = *by_tag[mesh.boundary_faces[bi].tag];
    auto& row = out.table[bi];
    row[index(Field::T)] = r.temperature == TemperatureBc::Fixed ? BoundaryValue{Kind::Fixed, r.T}
                                                                 : BoundaryValue{Kind::ZeroGradient, 0.0};
    for (int k = 0; k < 3; ++k) {
      BoundaryValue v;
      switch (r.velocity) {
        case VelocityBc::NoSlip: v = {Kind::Fixed, 0.0}; break;
        case VelocityBc::Prescribed: v = {Kind::Fixed, r.u(k)}; break;
        case VelocityBc::ZeroGradient:
        case VelocityBc::Slip: v = {Kind::ZeroGradient, 0.0}; break;
      }
      row[index(velocity_component(k))] = v;
    }
    row[index(Field::P)] = r.fixed_pressure ? BoundaryValue{Kind::Fixed, r.p} : BoundaryValue{Kind::ZeroGradient, 0.0};
    out.slip[bi] = r.velocity == VelocityBc::Slip;
    if (r.fixed_pressure) out.pressure[bi] = r.p;
  }
  return out;
}

void apply_boundary_conditions(const Mesh& mesh, FieldState& state, const ResolvedBoundary& bcs, FieldMask fields) {
  if (bcs.table.size() != mesh.boundary_faces.size()) throw BoundaryError("boundary table does not match the mesh");
  for (std::size_t bi = 0; bi < mesh.boundary_faces.size(); ++bi) {
    const BoundaryFace& bf = mesh.boundary_faces[bi];
    const HexCell& cell = mesh.cells[bf.cell];
    for (std::size_t fi = 0; fi < kFieldCount; ++fi) {
      const Field f = static_cast<Field>(fi);
      if (!fields.contains(f) || f == Field::P) continue;
      const BoundaryValue& rule = bcs.table[bi][fi];
      const CellPorts cp = state.cell_ports(f, bf.cell);
      const double nodal = state.node(f, bf.cell);
      const InterfaceValue v = rule.kind == BoundaryValue::Kind::Fixed
                                   ? boundary_fixed(cell, bf.face, nodal, cp, rule.value)
                                   : boundary_zero_gradient(cell, bf.face, nodal, cp);
      state.port(f, bf.cell, bf.face) = v.port;
      state.flux(f, bf.cell, bf.face) = v.flux;
    }
    if (bcs.slip[bi] && fields.contains(Field::Ux)) {
      const Vec3 n = cell.face_vectors[bf.face].normalized();
      Vec3 u = state.port_velocity(bf.cell, bf.face);
      u -= u.dot(n) * n;
      state.set_port_velocity(bf.cell, bf.face, u);
    }
  }
}

}  // namespace dscflow
