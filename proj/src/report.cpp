#include "elastwave/report.hpp"

#include <iomanip>
#include <sstream>

#include "elastwave/evolution.hpp"

namespace elastwave {
namespace {

using json = nlohmann::json;

// Adding 0.0 turns -0.0 into 0.0.
json vec(const Vector3<double>& v) { return json::array({v(0) + 0.0, v(1) + 0.0, v(2) + 0.0}); }

json g_json(const GTensord& g) {
  return {{"g111", g.g111()}, {"g112", g.g112()}, {"g122", g.g122()}, {"g222", g.g222()}};
}

json plan_json(const EvolutionPlan<double>& plan) {
  json systems = json::array();
  for (const auto& s : plan.systems) {
    json j{{"form", to_string(s.form)}, {"equation", canonical_equation(s.form)}, {"speed", s.speed},
           {"components", s.components}};
    if (s.form == EquationForm::burgers) j["gamma"] = s.gamma;
    if (s.form == EquationForm::modified_burgers) j["G"] = s.cubic;
    if (s.components == 2 && s.form != EquationForm::transport) j["coupling"] = g_json(s.coupling);
    systems.push_back(j);
  }
  json out{{"systems", systems}};
  if (plan.rotation) out["rotation"] = *plan.rotation;
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt(const Vector3<double>& v) {
  return "[" + fmt(v(0)) + ", " + fmt(v(1)) + ", " + fmt(v(2)) + "]";
}

}  // namespace

json analysis_to_json(const Modulid& mod, const AxisAnalysis<double>& a, const Tolerances& tol) {
  json out;
  out["material"] = {{"name", mod.name()}, {"symmetry", to_string(mod.symmetry())}, {"density", mod.density()}};
  out["direction"] = vec(a.modes.n);
  out["tolerances"] = {{"degeneracy", tol.degeneracy}, {"gamma_vanish", tol.gamma_vanish}, {"mu", tol.mu}};
  json modes = json::array();
  for (int j = 0; j < 3; ++j)
    modes.push_back({{"alpha", a.modes.alphas(j)}, {"speed", a.modes.speed(j)},
                     {"polarization", vec(a.modes.polarization(j))}});
  out["modes"] = modes;
  out["degeneracy"] = {{"kind", to_string(a.modes.degeneracy.kind)}, {"gap", a.modes.degeneracy.gap}};
  if (a.modes.near_defective) out["degeneracy"]["near_defective"] = true;

  json profiles = json::array();
  for (const auto& p : a.profiles) {
    json j{{"kind", to_string(p.kind)}, {"modes", p.modes}, {"speed", p.speed}};
    if (p.kind != ProfileKind::degenerate_pair) {
      j["quasi_longitudinal"] = p.quasi_longitudinal;
      j["Gamma_s"] = p.gamma_s;
      if (p.cubic) j["G_s"] = *p.cubic;
    } else {
      j["Gamma_s"] = p.gamma_s;
      j["Gamma_s_s2"] = p.gamma_s_s2;
      j["Gamma_s2_s"] = p.gamma_s2_s;
      j["Gamma_s2"] = p.gamma_s2;
      j["basis"] = json::array({vec(p.basis[0]), vec(p.basis[1])});
      j["canonical_basis"] = json::array({vec(p.canonical_basis[0]), vec(p.canonical_basis[1])});
      j["basis_angle"] = p.basis_angle;
      j["g"] = g_json(p.g);
      j["g_canonical"] = g_json(p.g_canonical);
      j["mu"] = p.mu;
      j["gamma1"] = p.gamma1;
      j["gamma3"] = p.gamma3;
      j["coupling_class"] = to_string(p.coupling_class);
      j["decoupled"] = p.decoupling_angle.has_value();
      if (p.decoupling_angle) j["theta_star"] = *p.decoupling_angle;
      j["transverse_tilt"] = p.transverse_tilt;
      json pc = json::array();
      for (const auto& c : p.pair_cubic) pc.push_back(c ? json(*c) : json(nullptr));
      j["G_s"] = pc;
    }
    try {
      j["evolution"] = plan_json(build_system(p, tol));
    } catch (const std::exception& e) {
      j["evolution"] = {{"error", e.what()}};
    }
    if (!p.notes.empty()) j["notes"] = p.notes;
    profiles.push_back(j);
  }
  out["profiles"] = profiles;
  return out;
}

std::string analysis_to_text(const Modulid& mod, const AxisAnalysis<double>& a, const Tolerances& tol) {
  std::ostringstream os;
  os << "material   " << (mod.name().empty() ? "(unnamed)" : mod.name()) << " (" << to_string(mod.symmetry())
     << ", density " << fmt(mod.density()) << ")\n";
  os << "direction  " << fmt(a.modes.n) << "\n";
  os << "degeneracy " << to_string(a.modes.degeneracy.kind) << " (gap " << fmt(a.modes.degeneracy.gap) << ")\n";
  if (a.modes.near_defective) os << "warning    eigenvector basis is nearly defective\n";
  os << "\nmodes\n";
  for (int j = 0; j < 3; ++j)
    os << "  " << j + 1 << "  alpha " << fmt(a.modes.alphas(j)) << "  speed " << fmt(a.modes.speed(j)) << "  k "
       << fmt(a.modes.polarization(j)) << "\n";
  for (const auto& p : a.profiles) {
    os << "\n" << to_string(p.kind) << " (mode";
    for (int m : p.modes) os << ' ' << m + 1;
    os << ")\n  speed        " << fmt(p.speed) << "\n";
    if (p.kind != ProfileKind::degenerate_pair) {
      os << "  Gamma_s      " << fmt(p.gamma_s) << (p.quasi_longitudinal ? "  (quasi-longitudinal)" : "") << "\n";
      if (p.cubic) os << "  G_s          " << fmt(*p.cubic) << "\n";
    } else {
      os << "  class        " << to_string(p.coupling_class) << "\n";
      os << "  basis k1     " << fmt(p.basis[0]) << "\n";
      os << "  basis k2     " << fmt(p.basis[1]) << "\n";
      os << "  Gamma_s      " << fmt(p.gamma_s) << "\n";
      os << "  Gamma^s+2_s  " << fmt(p.gamma_s_s2) << "\n";
      os << "  Gamma^s_s+2  " << fmt(p.gamma_s2_s) << "\n";
      os << "  Gamma_s+2    " << fmt(p.gamma_s2) << "\n";
      os << "  g            " << fmt(p.g.g111()) << ' ' << fmt(p.g.g112()) << ' ' << fmt(p.g.g122()) << ' '
         << fmt(p.g.g222()) << "\n";
      os << "  mu           " << fmt(p.mu) << "\n";
      os << "  gamma1       " << fmt(p.gamma1) << "\n";
      os << "  gamma3       " << fmt(p.gamma3) << "\n";
      if (p.decoupling_angle) os << "  theta*       " << fmt(*p.decoupling_angle) << "\n";
      for (int i = 0; i < 2; ++i)
        if (p.pair_cubic[i]) os << "  G_s[" << i + 1 << "]       " << fmt(*p.pair_cubic[i]) << "\n";
    }
    try {
      const auto plan = build_system(p, tol);
      for (const auto& s : plan.systems)
        os << "  form         " << to_string(s.form) << " (" << canonical_equation(s.form) << ")\n";
      if (plan.rotation) os << "  rotation     " << fmt(*plan.rotation) << "\n";
    } catch (const std::exception& e) {
      os << "  form         unavailable: " << e.what() << "\n";
    }
    for (const auto& n : p.notes) os << "  note         " << n << "\n";
  }
  return os.str();
}

json decoupling_to_json(const NonlinearityProfile<double>& p) {
  json out{{"verdict", p.decoupling_angle ? "DECOUPLED" : "COUPLED"},
           {"mu", p.mu},
           {"gamma1", p.gamma1},
           {"gamma3", p.gamma3},
           {"coupling_class", to_string(p.coupling_class)},
           {"identity", p.coupling_identity()}};
  if (p.decoupling_angle) out["theta_star"] = *p.decoupling_angle;
  return out;
}

std::string decoupling_to_text(const NonlinearityProfile<double>& p) {
  std::ostringstream os;
  os << (p.decoupling_angle ? "DECOUPLED" : "COUPLED") << "\n";
  os << "mu       " << fmt(p.mu) << "\n";
  os << "gamma1   " << fmt(p.gamma1) << "\n";
  os << "gamma3   " << fmt(p.gamma3) << "\n";
  os << "class    " << to_string(p.coupling_class) << "\n";
  if (p.decoupling_angle) os << "theta*   " << fmt(*p.decoupling_angle) << "\n";
  return os.str();
}

}  // namespace elastwave
