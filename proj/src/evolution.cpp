#include "elastwave/evolution.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "elastwave/errors.hpp"

namespace elastwave {

const char* to_string(EquationForm f) {
  switch (f) {
    case EquationForm::burgers: return "burgers";
    case EquationForm::modified_burgers: return "modified_burgers";
    case EquationForm::coupled_pair: return "coupled_pair";
    case EquationForm::coupled_twofold: return "coupled_twofold";
    case EquationForm::coupled_threefold: return "coupled_threefold";
    default: return "transport";
  }
}

const char* canonical_equation(EquationForm f) {
  switch (f) {
    case EquationForm::burgers: return "Eq. 31";
    case EquationForm::modified_burgers: return "Eq. 34";
    case EquationForm::coupled_pair: return "Eq. -2";
    case EquationForm::coupled_twofold: return "Eq. 82";
    case EquationForm::coupled_threefold: return "Eq. 83";
    default: return "Eq. 84";
  }
}

const char* to_string(Boundary b) { return b == Boundary::outflow ? "outflow" : "periodic"; }

// ---------------------------------------------------------------------------
// EvolutionSystem

template <typename Scalar>
EvolutionSystem<Scalar> EvolutionSystem<Scalar>::transport_system(Scalar speed, int components) {
  if (components != 1 && components != 2) throw ValidationError("transport system needs 1 or 2 components");
  EvolutionSystem s;
  s.form = EquationForm::transport;
  s.speed = speed;
  s.components = components;
  return s;
}

template <typename Scalar>
EvolutionSystem<Scalar> EvolutionSystem<Scalar>::burgers(Scalar speed, Scalar gamma) {
  EvolutionSystem s;
  s.form = EquationForm::burgers;
  s.speed = speed;
  s.gamma = gamma;
  return s;
}

template <typename Scalar>
EvolutionSystem<Scalar> EvolutionSystem<Scalar>::modified_burgers(Scalar speed, Scalar g) {
  EvolutionSystem s;
  s.form = EquationForm::modified_burgers;
  s.speed = speed;
  s.cubic = g;
  return s;
}

template <typename Scalar>
EvolutionSystem<Scalar> EvolutionSystem<Scalar>::coupled(Scalar speed, const GTensor<Scalar>& coupling) {
  EvolutionSystem s;
  s.form = EquationForm::coupled_pair;
  s.speed = speed;
  s.components = 2;
  s.coupling = coupling;
  return s;
}

template <typename Scalar>
EvolutionSystem<Scalar> EvolutionSystem<Scalar>::twofold(Scalar speed, Scalar gamma_s_s2, Scalar gamma_s2) {
  auto s = coupled(speed, GTensor<Scalar>(Scalar(0), gamma_s_s2, Scalar(0), gamma_s2));
  s.form = EquationForm::coupled_twofold;
  return s;
}

template <typename Scalar>
EvolutionSystem<Scalar> EvolutionSystem<Scalar>::threefold(Scalar speed, Scalar gamma_s2) {
  auto s = coupled(speed, GTensor<Scalar>(Scalar(0), -gamma_s2, Scalar(0), gamma_s2));
  s.form = EquationForm::coupled_threefold;
  return s;
}

template <typename Scalar>
typename EvolutionSystem<Scalar>::Vec EvolutionSystem<Scalar>::flux(const Vec& u) const {
  Vec f = Vec::Zero(components);
  switch (form) {
    case EquationForm::transport: break;
    case EquationForm::burgers: f(0) = Scalar(0.5) * gamma * u(0) * u(0); break;
    case EquationForm::modified_burgers: f(0) = cubic * u(0) * u(0) * u(0) / Scalar(3); break;
    default: {
      const auto& C = coupling;
      const Scalar a = u(0), b = u(1);
      f(0) = Scalar(0.5) * (C.g111() * a * a + Scalar(2) * C.g112() * a * b + C.g122() * b * b);
      f(1) = Scalar(0.5) * (C.g112() * a * a + Scalar(2) * C.g122() * a * b + C.g222() * b * b);
    }
  }
  return f;
}

template <typename Scalar>
typename EvolutionSystem<Scalar>::Mat EvolutionSystem<Scalar>::jacobian(const Vec& u) const {
  Mat J = Mat::Zero(components, components);
  switch (form) {
    case EquationForm::transport: break;
    case EquationForm::burgers: J(0, 0) = gamma * u(0); break;
    case EquationForm::modified_burgers: J(0, 0) = cubic * u(0) * u(0); break;
    default: {
      const auto& C = coupling;
      J(0, 0) = C.g111() * u(0) + C.g112() * u(1);
      J(0, 1) = J(1, 0) = C.g112() * u(0) + C.g122() * u(1);
      J(1, 1) = C.g122() * u(0) + C.g222() * u(1);
    }
  }
  return J;
}

namespace {

// Largest |eigenvalue + drift| of the symmetric Jacobian.
template <typename Scalar>
Scalar shifted_radius(const EvolutionSystem<Scalar>& sys, const typename EvolutionSystem<Scalar>::Vec& u,
                      Scalar drift) {
  using std::abs;
  using std::sqrt;
  const auto J = sys.jacobian(u);
  if (J.rows() == 1) return abs(J(0, 0) + drift);
  const Scalar mean = Scalar(0.5) * (J(0, 0) + J(1, 1));
  const Scalar half = Scalar(0.5) * (J(0, 0) - J(1, 1));
  const Scalar r = sqrt(half * half + J(0, 1) * J(0, 1));
  return std::max(abs(mean + r + drift), abs(mean - r + drift));
}

}  // namespace

template <typename Scalar>
Scalar EvolutionSystem<Scalar>::max_wave_speed(const Vec& sigma) const {
  return shifted_radius(*this, sigma, Scalar(0));
}

// ---------------------------------------------------------------------------
// WaveField

template <typename Scalar>
WaveField<Scalar> WaveField<Scalar>::uniform(Scalar a, Scalar b, int cells, int components) {
  if (cells < 2) throw ValidationError("grid needs at least 2 cells");
  if (!(b > a)) throw ValidationError("grid interval must have positive length");
  WaveField f;
  f.eta_min = a;
  f.deta = (b - a) / Scalar(cells);
  f.sigma = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(cells, components);
  return f;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> WaveField<Scalar>::mass() const {
  return sigma.colwise().sum().transpose() * deta;
}

// ---------------------------------------------------------------------------
// Solver

template <typename Scalar>
Scalar stable_step(const WaveField<Scalar>& field, const EvolutionSystem<Scalar>& sys, Scalar drift) {
  if (field.components() != sys.components)
    throw ValidationError("field component count does not match the equation form");
  Scalar smax(0);
  for (int i = 0; i < field.cells(); ++i)
    smax = std::max(smax, shifted_radius(sys, typename EvolutionSystem<Scalar>::Vec(field.sigma.row(i).transpose()), drift));
  if (smax == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
  return field.deta / smax;
}

template <typename Scalar>
WaveField<Scalar> step(const WaveField<Scalar>& field, const EvolutionSystem<Scalar>& sys, Scalar dtau,
                       const StepOptions<Scalar>& opts) {
  using Vec = typename EvolutionSystem<Scalar>::Vec;
  const Scalar limit = stable_step(field, sys, opts.drift);
  if (!(dtau >= Scalar(0)) || dtau > limit * (Scalar(1) + Scalar(1e-12))) {
    std::ostringstream os;
    os << "CFL violation: step " << static_cast<double>(dtau) << " exceeds stable step "
       << static_cast<double>(limit);
    throw NumericalError(os.str());
  }
  const int n = field.cells(), m = field.components();
  // Cell fluxes and local speeds, with ghost cells at -1 and n.
  auto state = [&](int i) -> Vec {
    if (opts.boundary == Boundary::periodic) i = (i % n + n) % n;
    else i = std::clamp(i, 0, n - 1);
    return field.sigma.row(i).transpose();
  };
  std::vector<Vec> u(n + 2), f(n + 2);
  std::vector<Scalar> a(n + 2);
  for (int i = -1; i <= n; ++i) {
    u[i + 1] = state(i);
    f[i + 1] = sys.flux(u[i + 1]) + opts.drift * u[i + 1];
    a[i + 1] = shifted_radius(sys, u[i + 1], opts.drift);
  }
  // Interface i + 1/2 sits between u[i + 1] and u[i + 2].
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> F(n + 1, m);
  for (int i = -1; i < n; ++i) {
    const int L = i + 1, R = i + 2;
    const Scalar alpha = std::max(a[L], a[R]);
    F.row(i + 1) = (Scalar(0.5) * (f[L] + f[R]) - Scalar(0.5) * alpha * (u[R] - u[L])).transpose();
  }
  WaveField<Scalar> out = field;
  const Scalar r = dtau / field.deta;
  for (int i = 0; i < n; ++i) out.sigma.row(i) -= r * (F.row(i + 1) - F.row(i));
  out.tau = field.tau + dtau;
  return out;
}

template <typename Scalar>
IntegrationResult<Scalar> integrate(const WaveField<Scalar>& field, const EvolutionSystem<Scalar>& sys,
                                    Scalar tau_end, const IntegrateOptions<Scalar>& opts) {
  using std::abs;
  if (!(opts.cfl > Scalar(0)) || opts.cfl > Scalar(1)) throw ValidationError("cfl must lie in (0, 1]");
  if (!(tau_end >= field.tau)) throw ValidationError("tau_end lies before the current time");
  IntegrationResult<Scalar> res;
  res.field = field;
  res.initial_mass = field.mass();
  const StepOptions<Scalar> so{opts.boundary, opts.drift};
  const bool snapshots = opts.snapshot_interval > Scalar(0) && static_cast<bool>(opts.on_snapshot);
  long next_index = 1;
  auto next_snapshot = [&]() {
    return snapshots ? field.tau + Scalar(next_index) * opts.snapshot_interval
                     : std::numeric_limits<Scalar>::infinity();
  };
  if (snapshots) opts.on_snapshot(res.field);
  const Scalar eps = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), abs(tau_end));

  while (res.field.tau < tau_end) {
    if (res.steps >= opts.max_steps) {
      res.aborted = true;
      res.message = "step limit reached";
      break;
    }
    const Scalar target = std::min(tau_end, next_snapshot());
    Scalar dt = opts.cfl * stable_step(res.field, sys, opts.drift);
    bool lands = false;
    if (!(res.field.tau + dt < target - eps)) {
      dt = target - res.field.tau;
      lands = true;
    }
    WaveField<Scalar> next = step(res.field, sys, dt, so);
    if (!next.sigma.allFinite()) {
      res.aborted = true;
      std::ostringstream os;
      os << "non-finite amplitude at tau = " << static_cast<double>(next.tau) << "; returning last finite state";
      res.message = os.str();
      break;
    }
    if (lands) next.tau = target;
    res.field = std::move(next);
    ++res.steps;
    if (lands && snapshots && target != tau_end) {
      opts.on_snapshot(res.field);
      ++next_index;
    }
  }
  if (snapshots && !res.aborted) {
    // tau_end is always reported, even when it coincides with a multiple of the interval.
    opts.on_snapshot(res.field);
  }
  res.final_mass = res.field.mass();
  return res;
}

// ---------------------------------------------------------------------------
// Profiles -> systems

template <typename Scalar>
DecoupledPair<Scalar> decouple_transform(const EvolutionSystem<Scalar>& sys, Scalar theta, Scalar mu_tol) {
  using std::abs;
  if (sys.components != 2) throw ValidationError("decouple_transform needs a two-component system");
  const GTensor<Scalar>& C = sys.coupling;
  const Scalar scale = C.max_abs();
  const Scalar mu = coupling_invariant(C);
  if (abs(mu) > mu_tol * scale * scale) {
    std::ostringstream os;
    os << "decouple_transform: pair is coupled (mu = " << static_cast<double>(mu) << ")";
    throw ValidationError(os.str());
  }
  const GTensor<Scalar> R = rotate_g(C, theta);
  const Scalar off = std::max(abs(R.g112()), abs(R.g122()));
  if (off > Scalar(1e-7) * std::max(scale, std::numeric_limits<Scalar>::min())) {
    std::ostringstream os;
    os << "decouple_transform: angle " << static_cast<double>(theta) << " leaves coupling terms of size "
       << static_cast<double>(off);
    throw ValidationError(os.str());
  }
  auto scalar = [&](Scalar gamma) {
    return abs(gamma) <= mu_tol * scale ? EvolutionSystem<Scalar>::transport_system(sys.speed, 1)
                                        : EvolutionSystem<Scalar>::burgers(sys.speed, gamma);
  };
  return {theta, {scalar(R.g111()), scalar(R.g222())}};
}

template <typename Scalar>
WaveField<Scalar> rotate_field(const WaveField<Scalar>& field, Scalar theta) {
  using std::cos;
  using std::sin;
  if (field.components() != 2) throw ValidationError("rotate_field needs a two-component field");
  WaveField<Scalar> out = field;
  const Scalar c = cos(theta), s = sin(theta);
  out.sigma.col(0) = c * field.sigma.col(0) + s * field.sigma.col(1);
  out.sigma.col(1) = -s * field.sigma.col(0) + c * field.sigma.col(1);
  return out;
}

template <typename Scalar>
EvolutionPlan<Scalar> build_system(const NonlinearityProfile<Scalar>& p, const Tolerances& tol) {
  using Sys = EvolutionSystem<Scalar>;
  EvolutionPlan<Scalar> plan;
  switch (p.kind) {
    case ProfileKind::quadratic_single:
      plan.systems.push_back(Sys::burgers(p.speed, p.gamma_s));
      return plan;
    case ProfileKind::cubic_single:
      if (p.cubic) {
        plan.systems.push_back(Sys::modified_burgers(p.speed, *p.cubic));
      } else {
        plan.systems.push_back(Sys::transport_system(p.speed, 1));
        plan.notes.push_back("cubic coefficient unavailable; evolving by transport only");
      }
      return plan;
    case ProfileKind::degenerate_pair: break;
  }
  const Scalar two_lam = Scalar(2) * p.speed;
  switch (p.coupling_class) {
    case CouplingClass::r0:
      plan.systems.push_back(Sys::transport_system(p.speed, 2));
      break;
    case CouplingClass::r1:
      // Project onto Gamma^{s+2}_s = -Gamma_{s+2}.
      plan.systems.push_back(Sys::threefold(p.speed, Scalar(0.5) * (p.gamma_s2 - p.gamma_s_s2)));
      break;
    case CouplingClass::r2:
      plan.systems.push_back(Sys::twofold(p.speed, p.gamma_s_s2, p.gamma_s2));
      break;
    case CouplingClass::decoupled_by_identity: {
      const Sys coupled = Sys::coupled(p.speed, p.g * (Scalar(1) / two_lam));
      const Scalar theta = p.decoupling_angle ? *p.decoupling_angle : decoupling_angle(p.g);
      auto pair = decouple_transform(coupled, theta, Scalar(tol.mu));
      plan.systems = {pair.systems[0], pair.systems[1]};
      plan.rotation = theta;
      plan.notes.push_back("pair decouples after rotating the amplitudes by theta*");
      break;
    }
    default:
      plan.systems.push_back(Sys::coupled(p.speed, p.g * (Scalar(1) / two_lam)));
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Initial data and CSV

InitialSpec parse_initial_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw ValidationError("empty initial-data spec");
  InitialSpec spec;
  if (parts[0] == "sine") {
    spec.shape = InitialShape::sine;
    spec.center = 0.0;
    spec.width = 1.0;
  } else if (parts[0] == "gaussian") {
    spec.shape = InitialShape::gaussian;
  } else if (parts[0] == "box") {
    spec.shape = InitialShape::box;
  } else {
    throw ValidationError("unknown initial shape \"" + parts[0] + "\" (expected sine, gaussian or box)");
  }
  if (parts.size() > 4) throw ValidationError("too many fields in initial-data spec \"" + text + "\"");
  auto num = [&](std::size_t i) {
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[i], &used);
      if (used != parts[i].size() || !std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ValidationError("bad number \"" + parts[i] + "\" in initial-data spec");
    }
  };
  if (parts.size() > 1) spec.amplitude = num(1);
  if (spec.shape == InitialShape::sine) {
    if (parts.size() > 2) spec.width = num(2);
    if (parts.size() > 3) spec.center = num(3);
  } else {
    if (parts.size() > 2) spec.center = num(2);
    if (parts.size() > 3) spec.width = num(3);
  }
  if (!(spec.width > 0)) throw ValidationError("initial-data width must be positive");
  return spec;
}

std::string to_string(const InitialSpec& spec) {
  std::ostringstream os;
  os << std::setprecision(17);
  switch (spec.shape) {
    case InitialShape::sine: os << "sine:" << spec.amplitude << ':' << spec.width << ':' << spec.center; break;
    case InitialShape::gaussian: os << "gaussian:" << spec.amplitude << ':' << spec.center << ':' << spec.width; break;
    case InitialShape::box: os << "box:" << spec.amplitude << ':' << spec.center << ':' << spec.width; break;
  }
  return os.str();
}

void fill_initial(WaveField<double>& field, int component, const InitialSpec& spec) {
  if (component < 0 || component >= field.components()) throw ValidationError("component out of range");
  for (int i = 0; i < field.cells(); ++i) {
    const double x = field.eta(i);
    double v = 0;
    switch (spec.shape) {
      case InitialShape::sine:
        v = spec.amplitude * std::sin(2 * std::numbers::pi * (x - spec.center) / spec.width);
        break;
      case InitialShape::gaussian: {
        const double z = (x - spec.center) / spec.width;
        v = spec.amplitude * std::exp(-0.5 * z * z);
        break;
      }
      case InitialShape::box: v = std::abs(x - spec.center) <= spec.width ? spec.amplitude : 0.0; break;
    }
    field.sigma(i, component) = v;
  }
}

void write_field_csv(std::ostream& os, const WaveField<double>& field) {
  os << "eta,sigma1";
  if (field.components() == 2) os << ",sigma2";
  os << '\n' << std::setprecision(17);
  for (int i = 0; i < field.cells(); ++i) {
    os << field.eta(i);
    for (int c = 0; c < field.components(); ++c) os << ',' << field.sigma(i, c);
    os << '\n';
  }
}

WaveField<double> read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("field CSV is empty");
  int comps = 0;
  if (line == "eta,sigma1") comps = 1;
  else if (line == "eta,sigma1,sigma2") comps = 2;
  else throw ParseError("field CSV header must be eta,sigma1[,sigma2]");
  std::vector<double> eta;
  std::vector<std::array<double, 2>> vals;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ss, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ParseError("field CSV line " + std::to_string(lineno) + ": bad number \"" + cell + "\"");
      }
    }
    if (static_cast<int>(row.size()) != comps + 1)
      throw ParseError("field CSV line " + std::to_string(lineno) + " has the wrong number of columns");
    eta.push_back(row[0]);
    vals.push_back({row[1], comps == 2 ? row[2] : 0.0});
  }
  if (eta.size() < 2) throw ParseError("field CSV needs at least two rows");
  const double d = (eta.back() - eta.front()) / static_cast<double>(eta.size() - 1);
  if (!(d > 0)) throw ParseError("field CSV eta must increase");
  for (std::size_t i = 1; i < eta.size(); ++i)
    if (std::abs(eta[i] - eta[i - 1] - d) > 1e-6 * d)
      throw ParseError("field CSV grid is not uniform at row " + std::to_string(i + 1));
  const int n = static_cast<int>(eta.size());
  auto field = WaveField<double>::uniform(eta.front() - 0.5 * d, eta.front() - 0.5 * d + d * n, n, comps);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < comps; ++c) field.sigma(i, c) = vals[i][c];
  return field;
}

// ---------------------------------------------------------------------------

#define ELASTWAVE_INSTANTIATE(S)                                                                          \
  template struct EvolutionSystem<S>;                                                                     \
  template struct WaveField<S>;                                                                           \
  template S stable_step(const WaveField<S>&, const EvolutionSystem<S>&, S);                              \
  template WaveField<S> step(const WaveField<S>&, const EvolutionSystem<S>&, S, const StepOptions<S>&);   \
  template IntegrationResult<S> integrate(const WaveField<S>&, const EvolutionSystem<S>&, S,              \
                                          const IntegrateOptions<S>&);                                    \
  template EvolutionPlan<S> build_system(const NonlinearityProfile<S>&, const Tolerances&);               \
  template DecoupledPair<S> decouple_transform(const EvolutionSystem<S>&, S, S);                          \
  template WaveField<S> rotate_field(const WaveField<S>&, S);

ELASTWAVE_INSTANTIATE(double)
ELASTWAVE_INSTANTIATE(long double)

#undef ELASTWAVE_INSTANTIATE

}  // namespace elastwave
