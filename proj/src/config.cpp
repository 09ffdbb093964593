#include "sailroa/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sailroa/errors.hpp"

namespace sailroa {

using nlohmann::json;

namespace {

constexpr double kDegToRad = M_PI / 180.0;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& scope) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key \"" + key + "\" in " + scope);
}

double number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError("\"" + key + "\" must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) throw ConfigError("\"" + key + "\" must be an integer");
  return obj[key].get<int>();
}

}  // namespace

SailShape RunConfig::shape() const {
  if (sail.kind == "cone")
    return SailShape::cone(sail.base_radius, sail.cone_angle_deg * kDegToRad);
  if (sail.kind == "polynomial")
    return SailShape::polynomial(sail.base_radius, sail.coefficients);
  return SailShape::spherical_cap(sail.cap_base_radius, sail.curvature_radius);
}

DynamicsParams RunConfig::dynamics_params() const {
  const SailShape s = shape();
  DynamicsParams p;
  p.shape = s;
  p.props = mass_properties(s, mass, mesh_radial, mesh_azimuthal);
  const double fwhm = beam_fwhm > 0.0 ? beam_fwhm : s.base_radius;
  p.beam = BeamProfile::from_fwhm(0.0, fwhm);
  p.damping = damping_matrix(d11, d12, d22);
  p.z_setpoint = z_setpoint;
  p.n_rays = n_rays;
  return p;
}

VehicleState RunConfig::initial_state() const {
  VehicleState s;
  s.position = {initial.x, initial.y, initial.z < 0.0 ? z_setpoint : initial.z};
  s.angles = {initial.yaw_deg * kDegToRad, initial.pitch_deg * kDegToRad,
              initial.roll_deg * kDegToRad};
  s.velocity = {initial.vx, initial.vy, initial.vz};
  s.omega_body = {initial.wx, initial.wy, initial.wz};
  return s;
}

RunConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("JSON parse error: ") + err.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown(root,
                 {"sail", "mass", "beam_fwhm", "damping", "z_setpoint", "integrator",
                  "rays", "mesh", "initial", "roa", "output_dir", "sweep"},
                 "config root");

  RunConfig c;

  if (root.contains("sail")) {
    const json& s = root["sail"];
    reject_unknown(s,
                   {"kind", "base_radius", "cone_angle_deg", "coefficients",
                    "cap_base_radius", "curvature_radius"},
                   "sail");
    c.sail.kind = s.value("kind", c.sail.kind);
    if (c.sail.kind != "cone" && c.sail.kind != "polynomial" &&
        c.sail.kind != "spherical_cap")
      throw ConfigError("sail.kind must be cone, polynomial, or spherical_cap");
    c.sail.base_radius = number(s, "base_radius", c.sail.base_radius);
    c.sail.cone_angle_deg = number(s, "cone_angle_deg", c.sail.cone_angle_deg);
    c.sail.cap_base_radius = number(s, "cap_base_radius", c.sail.cap_base_radius);
    c.sail.curvature_radius = number(s, "curvature_radius", c.sail.curvature_radius);
    if (s.contains("coefficients")) {
      const json& coeffs = s["coefficients"];
      if (!coeffs.is_array() || coeffs.size() != 5)
        throw ConfigError("sail.coefficients must be an array of 5 numbers");
      for (int k = 0; k < 5; ++k) c.sail.coefficients[k] = coeffs[k].get<double>();
    }
  }

  if (root.contains("mass")) {
    const json& m = root["mass"];
    reject_unknown(m, {"sail_mass", "payload_mass", "mast_length"}, "mass");
    c.mass.sail_mass = number(m, "sail_mass", c.mass.sail_mass);
    c.mass.payload_mass = number(m, "payload_mass", c.mass.payload_mass);
    c.mass.mast_length = number(m, "mast_length", c.mass.mast_length);
  }

  c.beam_fwhm = number(root, "beam_fwhm", c.beam_fwhm);

  if (root.contains("damping")) {
    const json& d = root["damping"];
    reject_unknown(d, {"d11", "d12", "d22"}, "damping");
    c.d11 = number(d, "d11", c.d11);
    c.d12 = number(d, "d12", c.d12);
    c.d22 = number(d, "d22", c.d22);
  }

  c.z_setpoint = number(root, "z_setpoint", c.z_setpoint);

  if (root.contains("integrator")) {
    const json& i = root["integrator"];
    reject_unknown(i, {"dt", "t_end"}, "integrator");
    c.dt = number(i, "dt", c.dt);
    c.t_end = number(i, "t_end", c.t_end);
  }

  c.n_rays = integer(root, "rays", c.n_rays);

  if (root.contains("mesh")) {
    const json& m = root["mesh"];
    reject_unknown(m, {"n_radial", "n_azimuthal"}, "mesh");
    c.mesh_radial = integer(m, "n_radial", c.mesh_radial);
    c.mesh_azimuthal = integer(m, "n_azimuthal", c.mesh_azimuthal);
  }

  if (root.contains("initial")) {
    const json& s = root["initial"];
    reject_unknown(s,
                   {"x", "y", "z", "yaw_deg", "pitch_deg", "roll_deg", "vx", "vy",
                    "vz", "wx", "wy", "wz"},
                   "initial");
    c.initial.x = number(s, "x", c.initial.x);
    c.initial.y = number(s, "y", c.initial.y);
    c.initial.z = number(s, "z", c.initial.z);
    c.initial.yaw_deg = number(s, "yaw_deg", c.initial.yaw_deg);
    c.initial.pitch_deg = number(s, "pitch_deg", c.initial.pitch_deg);
    c.initial.roll_deg = number(s, "roll_deg", c.initial.roll_deg);
    c.initial.vx = number(s, "vx", c.initial.vx);
    c.initial.vy = number(s, "vy", c.initial.vy);
    c.initial.vz = number(s, "vz", c.initial.vz);
    c.initial.wx = number(s, "wx", c.initial.wx);
    c.initial.wy = number(s, "wy", c.initial.wy);
    c.initial.wz = number(s, "wz", c.initial.wz);
  }

  if (root.contains("roa")) {
    const json& r = root["roa"];
    reject_unknown(r,
                   {"n_samples", "bisection_tol", "rho_max", "stencil_radius",
                    "multiplier_degree", "spin"},
                   "roa");
    c.roa.n_samples = integer(r, "n_samples", c.roa.n_samples);
    c.roa.bisection_tol = number(r, "bisection_tol", c.roa.bisection_tol);
    c.roa.rho_max = number(r, "rho_max", c.roa.rho_max);
    c.roa.stencil_radius = number(r, "stencil_radius", c.roa.stencil_radius);
    c.roa.multiplier_degree = integer(r, "multiplier_degree", c.roa.multiplier_degree);
    c.roa.spin = number(r, "spin", c.roa.spin);
  }

  c.output_dir = root.value("output_dir", c.output_dir);

  if (root.contains("sweep")) {
    const json& s = root["sweep"];
    reject_unknown(s, {"parameter", "values", "metrics"}, "sweep");
    SweepConfig sweep;
    sweep.parameter = s.value("parameter", "");
    if (s.contains("values"))
      for (const auto& v : s["values"]) sweep.values.push_back(v.get<double>());
    if (s.contains("metrics"))
      for (const auto& m : s["metrics"]) sweep.metrics.push_back(m.get<std::string>());
    c.sweep = sweep;
  }

  // validation
  if (!(c.sail.base_radius > 0.0)) throw ConfigError("sail.base_radius must be > 0");
  if (c.sail.kind == "cone" &&
      !(c.sail.cone_angle_deg > 0.0 && c.sail.cone_angle_deg <= 80.0))
    throw ConfigError("sail.cone_angle_deg must lie in (0, 80]");
  if (c.sail.kind == "spherical_cap" &&
      !(c.sail.cap_base_radius > 0.0 && c.sail.cap_base_radius < c.sail.curvature_radius))
    throw ConfigError("spherical cap requires 0 < cap_base_radius < curvature_radius");
  if (!(c.mass.sail_mass > 0.0)) throw ConfigError("mass.sail_mass must be > 0");
  if (c.mass.payload_mass < 0.0) throw ConfigError("mass.payload_mass must be >= 0");
  if (c.mass.mast_length < 0.0) throw ConfigError("mass.mast_length must be >= 0");
  if (c.beam_fwhm < 0.0) throw ConfigError("beam_fwhm must be >= 0");
  if (!(c.z_setpoint > 0.0)) throw ConfigError("z_setpoint must be > 0");
  if (!(c.dt > 0.0)) throw ConfigError("integrator.dt must be > 0");
  if (!(c.t_end > 0.0)) throw ConfigError("integrator.t_end must be > 0");
  if (c.n_rays < 16) throw ConfigError("rays must be >= 16");
  if (c.mesh_radial < 2 || c.mesh_azimuthal < 2)
    throw ConfigError("mesh resolution must be >= 2 per axis");
  if (c.roa.n_samples < 100) throw ConfigError("roa.n_samples must be >= 100");
  if (!(c.roa.bisection_tol > 0.0)) throw ConfigError("roa.bisection_tol must be > 0");
  if (!(c.roa.rho_max > 0.0)) throw ConfigError("roa.rho_max must be > 0");
  if (!(c.roa.stencil_radius > 0.0)) throw ConfigError("roa.stencil_radius must be > 0");
  if (c.roa.multiplier_degree < 0) throw ConfigError("roa.multiplier_degree must be >= 0");
  if (c.sweep) {
    if (c.sweep->parameter != "cone_angle" && c.sweep->parameter != "mast_length")
      throw ConfigError("sweep.parameter must be cone_angle or mast_length");
    if (c.sweep->values.size() < 2) throw ConfigError("sweep.values needs at least 2 values");
    if (c.sweep->parameter == "cone_angle" && c.sail.kind != "cone")
      throw ConfigError("sweep over cone_angle requires sail.kind = cone");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string print_config(const RunConfig& c) {
  json root;
  root["sail"]["kind"] = c.sail.kind;
  root["sail"]["base_radius"] = c.sail.base_radius;
  if (c.sail.kind == "cone") root["sail"]["cone_angle_deg"] = c.sail.cone_angle_deg;
  if (c.sail.kind == "polynomial") {
    json coeffs = json::array();
    for (int k = 0; k < 5; ++k) coeffs.push_back(c.sail.coefficients[k]);
    root["sail"]["coefficients"] = coeffs;
  }
  if (c.sail.kind == "spherical_cap") {
    root["sail"]["cap_base_radius"] = c.sail.cap_base_radius;
    root["sail"]["curvature_radius"] = c.sail.curvature_radius;
  }
  root["mass"]["sail_mass"] = c.mass.sail_mass;
  root["mass"]["payload_mass"] = c.mass.payload_mass;
  root["mass"]["mast_length"] = c.mass.mast_length;
  root["beam_fwhm"] = c.beam_fwhm;
  root["damping"]["d11"] = c.d11;
  root["damping"]["d12"] = c.d12;
  root["damping"]["d22"] = c.d22;
  root["z_setpoint"] = c.z_setpoint;
  root["integrator"]["dt"] = c.dt;
  root["integrator"]["t_end"] = c.t_end;
  root["rays"] = c.n_rays;
  root["mesh"]["n_radial"] = c.mesh_radial;
  root["mesh"]["n_azimuthal"] = c.mesh_azimuthal;
  root["initial"]["x"] = c.initial.x;
  root["initial"]["y"] = c.initial.y;
  root["initial"]["z"] = c.initial.z;
  root["initial"]["yaw_deg"] = c.initial.yaw_deg;
  root["initial"]["pitch_deg"] = c.initial.pitch_deg;
  root["initial"]["roll_deg"] = c.initial.roll_deg;
  root["initial"]["vx"] = c.initial.vx;
  root["initial"]["vy"] = c.initial.vy;
  root["initial"]["vz"] = c.initial.vz;
  root["initial"]["wx"] = c.initial.wx;
  root["initial"]["wy"] = c.initial.wy;
  root["initial"]["wz"] = c.initial.wz;
  root["roa"]["n_samples"] = c.roa.n_samples;
  root["roa"]["bisection_tol"] = c.roa.bisection_tol;
  root["roa"]["rho_max"] = c.roa.rho_max;
  root["roa"]["stencil_radius"] = c.roa.stencil_radius;
  root["roa"]["multiplier_degree"] = c.roa.multiplier_degree;
  root["roa"]["spin"] = c.roa.spin;
  root["output_dir"] = c.output_dir;
  if (c.sweep) {
    root["sweep"]["parameter"] = c.sweep->parameter;
    root["sweep"]["values"] = c.sweep->values;
    if (!c.sweep->metrics.empty()) root["sweep"]["metrics"] = c.sweep->metrics;
  }
  return root.dump(2) + "\n";
}

RunConfig with_parameter(const RunConfig& base, const std::string& parameter,
                         double value) {
  RunConfig c = base;
  c.sweep.reset();
  if (parameter == "cone_angle") {
    c.sail.cone_angle_deg = value;
  } else if (parameter == "mast_length") {
    c.mass.mast_length = value;
  } else {
    throw ConfigError("unknown sweep parameter " + parameter);
  }
  return c;
}

}  // namespace sailroa
