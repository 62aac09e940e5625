#pragma once

// Reduced amplitude equations d(sigma)/d(tau) + d f(sigma)/d(eta) = 0 obtained
// along the characteristic x - lambda t, and a first-order Rusanov finite-volume
// solver for them.
//
//   transport           f = 0
//   burgers             f = 1/2 Gamma sigma^2
//   modified_burgers    f = 1/3 G sigma^3
//   coupled_*           f_a = 1/2 C_abc sigma_b sigma_c,   C = g / (2 lambda)
//
// The coupled forms differ only in which components of C may be nonzero:
// twofold has C111 = C122 = 0, threefold additionally C112 = -C222.

#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "elastwave/gtensor.hpp"
#include "elastwave/nonlinearity.hpp"

namespace elastwave {

enum class EquationForm { transport, burgers, modified_burgers, coupled_pair, coupled_twofold, coupled_threefold };

const char* to_string(EquationForm f);
/// Equation label of the canonical form, e.g. "Eq. 83".
const char* canonical_equation(EquationForm f);

enum class Boundary { periodic, outflow };

const char* to_string(Boundary b);

template <typename Scalar>
struct EvolutionSystem {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  EquationForm form = EquationForm::transport;
  /// lambda_s of the underlying wave (sets the characteristic frame only).
  Scalar speed = Scalar(0);
  /// 1 or 2; transport may carry either.
  int components = 1;
  /// Burgers Gamma_s.
  Scalar gamma = Scalar(0);
  /// Modified-Burgers G_s.
  Scalar cubic = Scalar(0);
  /// Coupling tensor in Gamma units (g / 2 lambda) for the coupled forms.
  GTensor<Scalar> coupling;

  static EvolutionSystem transport_system(Scalar speed, int components);
  static EvolutionSystem burgers(Scalar speed, Scalar gamma);
  static EvolutionSystem modified_burgers(Scalar speed, Scalar g);
  static EvolutionSystem coupled(Scalar speed, const GTensor<Scalar>& coupling);
  static EvolutionSystem twofold(Scalar speed, Scalar gamma_s_s2, Scalar gamma_s2);
  static EvolutionSystem threefold(Scalar speed, Scalar gamma_s2);

  /// f(sigma) for one cell.
  Vec flux(const Vec& sigma) const;
  /// df/dsigma for one cell (symmetric for every form).
  Mat jacobian(const Vec& sigma) const;
  /// Spectral radius of the Jacobian.
  Scalar max_wave_speed(const Vec& sigma) const;
};

template <typename Scalar>
struct WaveField {
  Scalar eta_min = Scalar(0);
  Scalar deta = Scalar(1);
  /// cells x components.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sigma;
  Scalar tau = Scalar(0);

  /// Uniform grid of `cells` cells covering [a, b).
  static WaveField uniform(Scalar a, Scalar b, int cells, int components);

  int cells() const { return static_cast<int>(sigma.rows()); }
  int components() const { return static_cast<int>(sigma.cols()); }
  Scalar eta(int i) const { return eta_min + (Scalar(i) + Scalar(0.5)) * deta; }
  Scalar length() const { return deta * Scalar(cells()); }
  /// sum_i sigma_ia * deta per component.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mass() const;
};

template <typename Scalar>
struct StepOptions {
  Boundary boundary = Boundary::periodic;
  /// Extra linear flux drift * sigma: evolves in a frame moving at -drift relative to the
  /// characteristic one. With Courant number 1 a pure drift is an exact one-cell shift.
  Scalar drift = Scalar(0);
};

template <typename Scalar>
struct IntegrateOptions {
  Scalar cfl = Scalar(0.45);
  Boundary boundary = Boundary::periodic;
  Scalar drift = Scalar(0);
  /// Snapshots are emitted at every multiple of this interval (and at tau_end) when > 0.
  Scalar snapshot_interval = Scalar(0);
  std::function<void(const WaveField<Scalar>&)> on_snapshot;
  long max_steps = 100000000;
};

template <typename Scalar>
struct IntegrationResult {
  WaveField<Scalar> field;
  long steps = 0;
  bool aborted = false;
  std::string message;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> initial_mass;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> final_mass;
};

/// Largest stable step: deta / max_i (spectral radius + |drift|), infinite for zero speed.
template <typename Scalar>
Scalar stable_step(const WaveField<Scalar>& field, const EvolutionSystem<Scalar>& sys, Scalar drift = Scalar(0));

/// One Rusanov step. Throws NumericalError when dtau exceeds the stable step.
template <typename Scalar>
WaveField<Scalar> step(const WaveField<Scalar>& field, const EvolutionSystem<Scalar>& sys, Scalar dtau,
                       const StepOptions<Scalar>& opts = {});

/// Advances to exactly tau_end. A non-finite state aborts the run and returns the last
/// finite field with `aborted` set.
template <typename Scalar>
IntegrationResult<Scalar> integrate(const WaveField<Scalar>& field, const EvolutionSystem<Scalar>& sys,
                                    Scalar tau_end, const IntegrateOptions<Scalar>& opts = {});

// ---------------------------------------------------------------------------
// From nonlinearity profiles

/// One coupled system, or two independent scalar systems acting on amplitudes rotated
/// by `rotation` (sigma' = R(theta) sigma) when the pair decouples.
template <typename Scalar>
struct EvolutionPlan {
  std::vector<EvolutionSystem<Scalar>> systems;
  std::optional<Scalar> rotation;
  std::vector<std::string> notes;
};

template <typename Scalar>
EvolutionPlan<Scalar> build_system(const NonlinearityProfile<Scalar>& profile, const Tolerances& tol = {});

template <typename Scalar>
struct DecoupledPair {
  Scalar theta;
  std::array<EvolutionSystem<Scalar>, 2> systems;
};

/// Splits a coupled pair with mu = 0 into two Burgers (or transport) equations for the
/// amplitudes in the basis rotated by theta. Throws ValidationError when mu != 0.
template <typename Scalar>
DecoupledPair<Scalar> decouple_transform(const EvolutionSystem<Scalar>& sys, Scalar theta, Scalar mu_tol = Scalar(1e-9));

/// sigma'_1 = c sigma_1 + s sigma_2, sigma'_2 = -s sigma_1 + c sigma_2 in every cell.
template <typename Scalar>
WaveField<Scalar> rotate_field(const WaveField<Scalar>& field, Scalar theta);

// ---------------------------------------------------------------------------
// Initial data and I/O

enum class InitialShape { sine, gaussian, box };

struct InitialSpec {
  InitialShape shape = InitialShape::gaussian;
  double amplitude = 1.0;
  /// Gaussian centre / box centre; sine phase offset.
  double center = 0.5;
  /// Gaussian standard deviation / box half-width; sine wavelength.
  double width = 0.1;
};

/// Parses "sine:amp[:wavelength]", "gaussian:amp[:center[:width]]" or "box:amp[:center[:halfwidth]]".
InitialSpec parse_initial_spec(const std::string& text);
std::string to_string(const InitialSpec& spec);

/// Fills component `component` of the field from the analytic profile.
void fill_initial(WaveField<double>& field, int component, const InitialSpec& spec);

/// Columns eta, sigma1[, sigma2].
void write_field_csv(std::ostream& os, const WaveField<double>& field);
/// Reads the format above; the grid must be uniform.
WaveField<double> read_field_csv(std::istream& is);

}  // namespace elastwave
