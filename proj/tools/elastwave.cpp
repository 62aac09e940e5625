// elastwave: analyze plane waves in a hyperelastic solid, scan for acoustic
// axes, test decoupling of degenerate pairs and integrate amplitude equations.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "elastwave/evolution.hpp"
#include "elastwave/material_io.hpp"
#include "elastwave/nonlinearity.hpp"
#include "elastwave/report.hpp"
#include "elastwave/scan.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace elastwave;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct MaterialArgs {
  std::string path;
  std::string builtin;
  std::vector<double> constants;
  double density = 1.0;
};

struct ToleranceArgs {
  double degeneracy = kDegeneracyTolerance;
  double gamma = 1e-9;
  double mu = 1e-9;

  Tolerances get() const {
    Tolerances t;
    t.degeneracy = degeneracy;
    t.gamma_vanish = gamma;
    t.mu = mu;
    return t;
  }
};

void add_material_options(CLI::App* cmd, MaterialArgs& m) {
  auto* file = cmd->add_option("--material", m.path, "Material JSON file")->check(CLI::ExistingFile);
  auto* builtin = cmd->add_option("--builtin", m.builtin, "Builtin material: isotropic or cubic")
                      ->check(CLI::IsMember({"isotropic", "cubic"}));
  file->excludes(builtin);
  cmd->add_option("--constants", m.constants,
                  "Builtin constants: isotropic lambda,mu,l,m,n; cubic c11,c12,c44,c111,c112,c144,c123,c166,c456")
      ->delimiter(',')
      ->needs(builtin);
  cmd->add_option("--density", m.density, "Builtin density")->needs(builtin)->check(CLI::PositiveNumber);
}

void add_tolerance_options(CLI::App* cmd, ToleranceArgs& t) {
  cmd->add_option("--degeneracy-tol", t.degeneracy, "Relative eigenvalue gap for degeneracy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--gamma-tol", t.gamma, "Relative tolerance for vanishing coefficients")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--mu-tol", t.mu, "Relative tolerance on the decoupling invariant")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

Modulid load(const MaterialArgs& m) {
  if (!m.path.empty()) return load_material(m.path);
  if (m.builtin == "isotropic") {
    std::vector<double> c = m.constants.empty() ? std::vector<double>{2.0, 1.0, -3.0, -2.5, -4.0} : m.constants;
    if (c.size() != 5) throw CLI::ValidationError("--constants", "isotropic needs 5 constants: lambda,mu,l,m,n");
    return make_isotropic(c[0], c[1], c[2], c[3], c[4], m.density);
  }
  if (m.builtin == "cubic") {
    std::vector<double> c = m.constants.empty()
                                ? std::vector<double>{1.7, 1.2, 0.75, -12.7, -8.1, -0.5, -0.3, -7.8, -0.95}
                                : m.constants;
    if (c.size() != 9)
      throw CLI::ValidationError("--constants", "cubic needs 9 constants: c11,c12,c44,c111,c112,c144,c123,c166,c456");
    return make_cubic_m3m(c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8], m.density);
  }
  throw CLI::RequiredError("--material or --builtin");
}

Directiond direction(const std::vector<double>& v) {
  const Vector3<double> raw(v[0], v[1], v[2]);
  Directiond d(raw);
  if (std::abs(raw.norm() - 1.0) > 1e-12) {
    std::ostringstream os;
    os << std::setprecision(10) << "note: direction normalized to [" << d(0) << ", " << d(1) << ", " << d(2) << "]";
    std::cerr << os.str() << '\n';
  }
  return d;
}

int cmd_analyze(const MaterialArgs& m, const ToleranceArgs& t, const std::vector<double>& dir, bool as_json) {
  const Modulid mod = load(m);
  const auto tol = t.get();
  const auto analysis = classify_axis(mod, direction(dir), tol);
  if (as_json) std::cout << analysis_to_json(mod, analysis, tol).dump(2) << '\n';
  else std::cout << analysis_to_text(mod, analysis, tol);
  return 0;
}

int cmd_scan(const MaterialArgs& m, const ToleranceArgs& t, int grid, int threads, const std::string& output,
             bool as_json) {
  const Modulid mod = load(m);
  ScanOptions opts;
  opts.grid = grid;
  opts.reltol = t.degeneracy;
  opts.threads = threads;
  const ScanResult res = scan_acoustic_axes(mod, opts);
  std::ostringstream csv;
  write_scan_csv(csv, res);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw ValidationError("cannot write " + output);
    out << csv.str();
  }
  if (as_json) {
    json rows = json::array();
    for (const auto& r : res.axes)
      rows.push_back({{"n", {r.n(0), r.n(1), r.n(2)}},
                      {"alphas", {r.alphas(0), r.alphas(1), r.alphas(2)}},
                      {"gap", r.gap},
                      {"label", r.label}});
    std::cout << json{{"globally_degenerate", res.globally_degenerate}, {"grid", grid}, {"axes", rows}}.dump(2)
              << '\n';
  } else if (output.empty()) {
    std::cout << csv.str();
  }
  return 0;
}

int cmd_check(const MaterialArgs& m, const ToleranceArgs& t, const std::vector<double>& dir, bool as_json) {
  const Modulid mod = load(m);
  const auto analysis = classify_axis(mod, direction(dir), t.get());
  if (!analysis.pair_profile)
    throw ValidationError("direction is not an acoustic axis: the decoupling check applies only to degenerate "
                          "shear pairs (relative eigenvalue gap " +
                          std::to_string(analysis.modes.degeneracy.gap) + ")");
  const auto& pair = analysis.profiles[*analysis.pair_profile];
  if (as_json) std::cout << decoupling_to_json(pair).dump(2) << '\n';
  else std::cout << decoupling_to_text(pair);
  return 0;
}

struct EvolveArgs {
  std::vector<double> direction;
  int profile = 0;
  int cells = 512;
  std::vector<double> domain{0.0, 1.0};
  double cfl = 0.45;
  double tau_end = 0.1;
  double snapshot = 0.0;
  double drift = 0.0;
  std::string boundary = "periodic";
  std::string initial = "gaussian:1:0.5:0.1";
  std::string initial2 = "gaussian:0:0.5:0.1";
  std::string input_csv;
  std::string output_dir = "elastwave_run";
};

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

int cmd_evolve(const MaterialArgs& m, const ToleranceArgs& t, const EvolveArgs& a, bool as_json) {
  const Modulid mod = load(m);
  const auto tol = t.get();
  const Directiond n = direction(a.direction);
  const auto analysis = classify_axis(mod, n, tol);
  std::size_t index;
  if (a.profile > 0) {
    if (static_cast<std::size_t>(a.profile) > analysis.profiles.size())
      throw ValidationError("--profile " + std::to_string(a.profile) + " out of range (direction has " +
                            std::to_string(analysis.profiles.size()) + " profiles)");
    index = static_cast<std::size_t>(a.profile - 1);
  } else if (analysis.pair_profile) {
    index = *analysis.pair_profile;
  } else {
    index = 0;
    for (std::size_t i = 0; i < analysis.profiles.size(); ++i)
      if (analysis.profiles[i].quasi_longitudinal) index = i;
  }
  const auto& profile = analysis.profiles[index];
  const auto plan = build_system(profile, tol);
  const int comps = plan.rotation ? 2 : plan.systems.front().components;

  WaveField<double> field;
  if (!a.input_csv.empty()) {
    std::ifstream in(a.input_csv);
    if (!in) throw ValidationError("cannot open " + a.input_csv);
    field = read_field_csv(in);
    if (field.components() != comps)
      throw ValidationError("input CSV has " + std::to_string(field.components()) + " components, system needs " +
                            std::to_string(comps));
  } else {
    field = WaveField<double>::uniform(a.domain[0], a.domain[1], a.cells, comps);
    fill_initial(field, 0, parse_initial_spec(a.initial));
    if (comps == 2) fill_initial(field, 1, parse_initial_spec(a.initial2));
  }

  IntegrateOptions<double> opts;
  opts.cfl = a.cfl;
  opts.boundary = a.boundary == "outflow" ? Boundary::outflow : Boundary::periodic;
  opts.drift = a.drift;
  opts.snapshot_interval = a.snapshot > 0 ? a.snapshot : (a.tau_end > 0 ? a.tau_end : 1.0);

  // Each system evolves its own components; decoupled pairs run in the rotated basis.
  const WaveField<double> start = plan.rotation ? rotate_field(field, *plan.rotation) : field;
  std::vector<std::vector<WaveField<double>>> snaps(plan.systems.size());
  std::vector<IntegrationResult<double>> results;
  int col = 0;
  for (std::size_t s = 0; s < plan.systems.size(); ++s) {
    const auto& sys = plan.systems[s];
    WaveField<double> part = start;
    part.sigma = start.sigma.middleCols(col, sys.components);
    col += sys.components;
    auto o = opts;
    o.on_snapshot = [&, s](const WaveField<double>& f) { snaps[s].push_back(f); };
    results.push_back(integrate(part, sys, a.tau_end, o));
  }

  fs::create_directories(a.output_dir);
  json files = json::array();
  const std::size_t count = snaps.front().size();
  for (std::size_t k = 0; k < count; ++k) {
    WaveField<double> joined = start;
    int c = 0;
    for (std::size_t s = 0; s < snaps.size(); ++s) {
      if (k >= snaps[s].size()) continue;
      const auto& f = snaps[s][k];
      joined.sigma.middleCols(c, f.components()) = f.sigma;
      joined.tau = f.tau;
      c += f.components();
    }
    if (plan.rotation) joined = rotate_field(joined, -*plan.rotation);
    std::ostringstream name;
    name << "snapshot_" << std::setw(4) << std::setfill('0') << k << ".csv";
    std::ofstream out(fs::path(a.output_dir) / name.str());
    write_field_csv(out, joined);
    files.push_back({{"file", name.str()}, {"tau", joined.tau}});
  }

  bool aborted = false;
  json runs = json::array();
  for (std::size_t s = 0; s < results.size(); ++s) {
    const auto& r = results[s];
    aborted = aborted || r.aborted;
    json sys{{"form", to_string(plan.systems[s].form)},
             {"equation", canonical_equation(plan.systems[s].form)},
             {"speed", plan.systems[s].speed},
             {"components", plan.systems[s].components},
             {"gamma", plan.systems[s].gamma},
             {"G", plan.systems[s].cubic},
             {"coupling",
              {plan.systems[s].coupling.g111(), plan.systems[s].coupling.g112(), plan.systems[s].coupling.g122(),
               plan.systems[s].coupling.g222()}},
             {"steps", r.steps},
             {"aborted", r.aborted},
             {"initial_mass", vector_json(r.initial_mass)},
             {"final_mass", vector_json(r.final_mass)}};
    if (!r.message.empty()) sys["message"] = r.message;
    runs.push_back(sys);
  }
  json manifest{{"material", json::parse(material_to_json(mod))},
                {"direction", {n(0), n(1), n(2)}},
                {"tolerances", {{"degeneracy", tol.degeneracy}, {"gamma_vanish", tol.gamma_vanish}, {"mu", tol.mu}}},
                {"profile", index + 1},
                {"profile_kind", to_string(profile.kind)},
                {"grid", {{"cells", field.cells()}, {"eta_min", field.eta_min}, {"deta", field.deta}}},
                {"cfl", a.cfl},
                {"boundary", a.boundary},
                {"drift", a.drift},
                {"tau_end", a.tau_end},
                {"snapshot_interval", opts.snapshot_interval},
                {"systems", runs},
                {"snapshots", files}};
  if (profile.kind == ProfileKind::degenerate_pair)
    manifest["coupling_class"] = to_string(profile.coupling_class);
  if (plan.rotation) manifest["rotation"] = *plan.rotation;
  if (!a.input_csv.empty()) manifest["input_csv"] = a.input_csv;
  else {
    manifest["initial"] = {to_string(parse_initial_spec(a.initial))};
    if (comps == 2) manifest["initial"].push_back(to_string(parse_initial_spec(a.initial2)));
  }
  {
    std::ofstream out(fs::path(a.output_dir) / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  if (as_json) std::cout << manifest.dump(2) << '\n';
  else {
    std::cout << "form      ";
    for (const auto& s : plan.systems) std::cout << to_string(s.form) << " (" << canonical_equation(s.form) << ") ";
    std::cout << "\nsnapshots " << count << " written to " << a.output_dir << "\n";
  }
  if (aborted) {
    for (const auto& r : results)
      if (r.aborted) std::cerr << "error: " << r.message << '\n';
    return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weakly nonlinear plane elastic waves: coefficients, acoustic axes and amplitude evolution"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output");

  MaterialArgs mat;
  ToleranceArgs tol;
  std::vector<double> dir;

  auto* analyze = app.add_subcommand("analyze", "Speeds, polarizations and nonlinearity coefficients along n");
  add_material_options(analyze, mat);
  add_tolerance_options(analyze, tol);
  analyze->add_option("--direction", dir, "Propagation direction x y z")->expected(3)->required();
  analyze->add_flag("--json", as_json, "Machine-readable output");

  int grid = 64, threads = 0;
  std::string scan_out;
  auto* scan = app.add_subcommand("scan", "Search the direction sphere for acoustic axes");
  add_material_options(scan, mat);
  add_tolerance_options(scan, tol);
  scan->add_option("--grid", grid, "Polar grid resolution (>= 16)")->check(CLI::Range(16, 100000))->capture_default_str();
  scan->add_option("--threads", threads, "Worker threads (default: ELASTWAVE_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  scan->add_option("--output", scan_out, "CSV output file");
  scan->add_flag("--json", as_json, "Machine-readable output");

  auto* check = app.add_subcommand("check-decoupling", "Decoupling test of the degenerate pair along n");
  add_material_options(check, mat);
  add_tolerance_options(check, tol);
  check->add_option("--direction", dir, "Propagation direction x y z")->expected(3)->required();
  check->add_flag("--json", as_json, "Machine-readable output");

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Integrate the reduced amplitude equations");
  add_material_options(evolve, mat);
  add_tolerance_options(evolve, tol);
  evolve->add_option("--direction", ev.direction, "Propagation direction x y z")->expected(3)->required();
  evolve->add_option("--profile", ev.profile, "1-based profile index (default: pair, else quasi-longitudinal)")
      ->check(CLI::PositiveNumber);
  evolve->add_option("--cells", ev.cells, "Grid cells")->check(CLI::Range(16, 100000000))->capture_default_str();
  evolve->add_option("--domain", ev.domain, "eta interval a b")->expected(2)->capture_default_str();
  evolve->add_option("--cfl", ev.cfl, "Courant number in (0, 1]")->check(CLI::Range(1e-6, 1.0))->capture_default_str();
  evolve->add_option("--tau-end", ev.tau_end, "Final time")->check(CLI::NonNegativeNumber)->capture_default_str();
  evolve->add_option("--snapshot-interval", ev.snapshot, "Snapshot spacing (default: only start and end)")
      ->check(CLI::NonNegativeNumber);
  evolve->add_option("--drift", ev.drift, "Frame drift speed added to the flux")->capture_default_str();
  evolve->add_option("--boundary", ev.boundary, "periodic or outflow")
      ->check(CLI::IsMember({"periodic", "outflow"}))
      ->capture_default_str();
  auto* init1 = evolve->add_option("--initial", ev.initial, "sine:amp[:wavelength[:phase]] | gaussian:amp[:center[:width]] | box:amp[:center[:halfwidth]]")
                    ->capture_default_str();
  evolve->add_option("--initial2", ev.initial2, "Initial data for the second amplitude")->capture_default_str();
  evolve->add_option("--input-csv", ev.input_csv, "Initial field CSV (eta,sigma1[,sigma2])")
      ->check(CLI::ExistingFile)
      ->excludes(init1);
  evolve->add_option("--output-dir", ev.output_dir, "Directory for snapshots and manifest")->capture_default_str();
  evolve->add_flag("--json", as_json, "Machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(mat, tol, dir, as_json);
    if (*scan) return cmd_scan(mat, tol, grid, threads, scan_out, as_json);
    if (*check) return cmd_check(mat, tol, dir, as_json);
    if (*evolve) return cmd_evolve(mat, tol, ev, as_json);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
