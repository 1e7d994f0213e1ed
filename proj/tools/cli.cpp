#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

#include "nkdv/closed_form.hpp"
#include "nkdv/errors.hpp"
#include "nkdv/hamiltonian_ode.hpp"
#include "nkdv/operator_lab.hpp"
#include "nkdv/pde_sim.hpp"
#include "nkdv/phase_plane.hpp"
#include "nkdv/report.hpp"
#include "run_config.hpp"

namespace nkdv::cli {

using nlohmann::json;

namespace {

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Writes to the named file, or to `fallback` when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidInput("cannot open '" + path + "' for writing");
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':', 1);
  if (colon == std::string::npos) throw InvalidInput("range must look like lo:hi, got '" + text + "'");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const std::string lo_s = text.substr(0, colon), hi_s = text.substr(colon + 1);
    const double lo = std::stod(lo_s, &used_lo);
    const double hi = std::stod(hi_s, &used_hi);
    if (used_lo != lo_s.size() || used_hi != hi_s.size()) throw std::invalid_argument("trailing");
    if (!(hi > lo)) throw InvalidInput("range must satisfy lo < hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InvalidInput("range must look like lo:hi, got '" + text + "'");
  }
}

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return ".";
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  double c = 0.0;
  double g = 0.0;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  emit_json(out, to_json(classify(TravelingWaveParams::make(a.c, a.g))));
  return kExitOk;
}

struct SampleArgs {
  std::string case_name;
  double c = 0.0;
  double g = 0.0;
  std::string variant = "derived";
  std::string branch = "plus";
  double xi0 = 0.0;
  std::optional<double> A;
  std::optional<double> h;
  std::string range = "-10:10";
  std::size_t n = 1001;
  std::string out;
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  ProfileConstants k;
  k.xi0 = a.xi0;
  k.A = a.A;
  k.h = a.h;
  k.width = parse_variant(a.variant);
  const auto profile = WaveProfile::make(TravelingWaveParams::make(a.c, a.g), parse_case(a.case_name),
                                         parse_branch(a.branch), k);
  const auto [lo, hi] = parse_range(a.range);
  Sink sink(a.out, out);
  write_profile_csv(sink.stream(), profile, lo, hi, a.n);
  return kExitOk;
}

struct AuditArgs {
  bool default_regimes = false;
  std::string config;
  std::vector<std::string> points;
};

int cmd_audit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<TravelingWaveParams> regimes;
  if (a.default_regimes) regimes = default_audit_regimes();
  if (!a.config.empty()) {
    const auto cfg = parse_audit_config(read_json_file(a.config));
    regimes.insert(regimes.end(), cfg.regimes.begin(), cfg.regimes.end());
  }
  for (const auto& p : a.points) {
    const auto comma = p.find(',');
    if (comma == std::string::npos) throw InvalidInput("--point expects c,g");
    try {
      regimes.push_back(TravelingWaveParams::make(std::stod(p.substr(0, comma)), std::stod(p.substr(comma + 1))));
    } catch (const std::logic_error&) {
      throw InvalidInput("--point expects c,g, got '" + p + "'");
    }
  }
  if (regimes.empty()) throw InvalidInput("audit needs --default-regimes, --config or --point");
  const AuditReport report = audit_all(regimes);
  err << "audit: " << report.entries.size() << " entries over " << regimes.size() << " regime points, "
      << report.flagged.size() << " flagged\n";
  emit_json(out, to_json(report));
  return kExitOk;
}

struct OdeArgs {
  std::string config;
  std::optional<double> c, g, U0, y0, dxi;
  std::optional<std::size_t> steps, stride;
  std::optional<std::string> integrator;
  std::string out;
};

int cmd_ode(const OdeArgs& a, std::ostream& out, std::ostream& err) {
  OdeConfig cfg;
  if (!a.config.empty()) {
    cfg = parse_ode_config(read_json_file(a.config));
  } else {
    if (!a.c || !a.g || !a.U0 || !a.y0) throw InvalidInput("ode needs --config or all of --c, --g, --U0, --y0");
    cfg.params = TravelingWaveParams::make(*a.c, *a.g);
    cfg.initial = {*a.U0, *a.y0, 0.0};
    cfg.dxi = a.dxi.value_or(cfg.dxi);
    cfg.steps = a.steps.value_or(cfg.steps);
    cfg.options.stride = a.stride.value_or(cfg.options.stride);
    if (a.integrator) cfg.method = parse_integrator(*a.integrator);
  }
  Sink sink(a.out, out);
  try {
    const Trajectory traj = integrate(cfg.params, cfg.initial, cfg.dxi, cfg.steps, cfg.method, cfg.options);
    write_trajectory_csv(sink.stream(), traj);
    err << "ode: " << cfg.steps << " " << to_string(cfg.method) << " steps, max |H - H0| = "
        << format_number(traj.max_energy_error);
    if (const auto period = measure_period(traj)) err << ", period = " << format_number(*period);
    err << '\n';
    return kExitOk;
  } catch (const DivergenceError& e) {
    write_trajectory_csv(sink.stream(), e.partial());
    throw;
  }
}

struct SimulateArgs {
  std::string config;
  std::string slices;
  std::string out_dir;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const SimulateConfig cfg = parse_simulate_config(read_json_file(a.config));
  std::filesystem::path slices_path;
  if (!a.slices.empty()) slices_path = a.slices;
  else if (cfg.slices) slices_path = output_dir(a.out_dir) / *cfg.slices;
  else slices_path = output_dir(a.out_dir) / (std::string(cli_name(cfg.sim.case_id)) + "-slices.csv");

  std::ofstream slices(slices_path);
  if (!slices) throw InvalidInput("cannot open '" + slices_path.string() + "' for writing");
  write_slice_csv_header(slices);
  err << "simulate: " << cli_name(cfg.sim.case_id) << ", n = " << cfg.sim.grid.n << ", dx = "
      << format_number(cfg.sim.grid.dx) << ", t_end = " << format_number(cfg.sim.t_end) << '\n';
  try {
    const SimulationSummary summary = run_simulation(cfg.sim, [&](const SimState& s) { write_slice_csv(slices, s); });
    json j = to_json(summary);
    j["slices"] = slices_path.filename().string();
    emit_json(out, j);
    return kExitOk;
  } catch (const PositivityLoss& e) {
    write_slice_csv(slices, e.state());
    throw;
  }
}

struct OperatorArgs {
  std::size_t n = 256;
  std::size_t refine = 3;
  double c = -1.0;
  double g = 1.0;
  double h = -0.125;
};

// Columns of the refinement study, each a relative residual that should
// decrease at O(dx^2).
constexpr std::array<const char*, 7> kOperatorColumns = {
    "L_sum_vs_factored", "K_sum_vs_factored", "K_of_u_squared", "lenard", "lax", "hierarchy_quarter",
    "hierarchy_half"};

int cmd_verify_operators(const OperatorArgs& a, std::ostream& out, std::ostream& err) {
  if (a.refine < 1 || a.refine > 6) throw InvalidInput("--refine must lie in [1, 6]");
  if (a.n < 16 || (a.n << (a.refine - 1)) > 1024) {
    throw InvalidInput("--n must be >= 16 and n * 2^(refine-1) <= 1024 (dense eigensolver)");
  }
  const auto params = TravelingWaveParams::make(a.c, a.g);
  ProfileConstants k;
  k.h = a.h;
  const auto profile = WaveProfile::make(params, CaseId::DN_26, Branch::plus, k);
  const double period = *profile.period();
  const double w = 2.0 * std::numbers::pi / period;

  json levels = json::array();
  std::map<std::string, std::vector<double>> columns;
  json finest;
  for (std::size_t level = 0; level < a.refine; ++level) {
    const std::size_t n = a.n << level;
    const Grid grid = Grid::periodic_over(0.0, period, n);
    const auto u = GridFunction::sample(grid, [&](double x) { return profile.eval(x); });
    const auto p = PotentialData::from_u(u);
    const auto f = GridFunction::sample(
        grid, [&](double x) { return 1.0 + 0.3 * std::cos(w * x) + 0.2 * std::sin(2.0 * w * x); });
    const double fs = f.max_abs();

    const auto seeds = kernel_seed_residuals(p);
    const auto pairs = eigen_smallest(p, 3);
    double lenard = 0.0;
    for (const auto& e : pairs) lenard = std::max(lenard, verify_lenard(p, e));
    const auto lax = lax_residual(p, params, f);
    const Grid circle = Grid::periodic_over(0.0, 2.0 * std::numbers::pi, n);
    const auto hier = hierarchy_coefficient_audit(GridFunction::sample(circle, [](double x) { return std::cos(x); }));

    const std::array<double, 7> row = {
        (apply_L(p, f, OperatorForm::sum) - apply_L(p, f, OperatorForm::factored)).max_abs() / fs,
        (apply_K(p, f, OperatorForm::sum) - apply_K(p, f, OperatorForm::factored)).max_abs() / fs,
        seeds.k_of_u_squared,
        lenard,
        lax.residual,
        hier.residual_quarter,
        hier.residual_half};
    json entry = {{"n", n}, {"dx", grid.dx}};
    for (std::size_t i = 0; i < row.size(); ++i) {
      entry[kOperatorColumns[i]] = row[i];
      columns[kOperatorColumns[i]].push_back(row[i]);
    }
    levels.push_back(entry);

    if (level + 1 == a.refine) {
      json eig = json::array();
      for (const auto& e : pairs) eig.push_back({{"lambda", e.lambda}, {"residual", e.residual}});
      finest = {{"kernel_seeds", to_json(seeds)},
                {"hierarchy", to_json(hier)},
                {"lax", to_json(lax)},
                {"eigenpairs", eig}};
    }
  }

  json orders = json::object();
  json decreasing = json::object();
  for (const char* name : kOperatorColumns) {
    const auto& col = columns[name];
    json o = json::array();
    bool down = true;
    for (std::size_t i = 1; i < col.size(); ++i) {
      o.push_back(std::log2(col[i - 1] / col[i]));
      down = down && col[i] < col[i - 1];
    }
    orders[name] = o;
    decreasing[name] = down;
  }

  json report = {{"schema", schema::operators},
                 {"data", {{"case", cli_name(CaseId::DN_26)}, {"c", a.c}, {"g", a.g}, {"h", a.h}, {"period", period}}},
                 {"hierarchy_data", "v = cos x on [0, 2 pi)"},
                 {"levels", levels},
                 {"observed_order", orders},
                 {"decreasing", decreasing},
                 {"finest", finest}};
  for (const char* name : kOperatorColumns) {
    if (std::string(name) != "hierarchy_half" && !decreasing[name].get<bool>()) {
      err << "verify-operators: warning: " << name << " does not decrease under refinement\n";
    }
  }
  emit_json(out, report);
  return kExitOk;
}

struct OrbitArgs {
  double c = 0.0;
  double g = 0.0;
  std::vector<double> levels;
  double dxi = 0.01;
  std::size_t steps = 4000;
  double window = 0.0;
  std::string out;
};

// Level-set sample points for phase portraits. Each orbit is traced with RK4
// from a seed on an axis, forward and (by the reversibility
// (U, y, xi) -> (U, -y, -xi)) backward, until it leaves the window or closes.
int cmd_orbits(const OrbitArgs& a, std::ostream& out) {
  const auto params = TravelingWaveParams::make(a.c, a.g);
  const auto portrait = classify(params);
  std::vector<double> levels = a.levels;
  if (levels.empty()) {
    const double s = portrait.h1 ? std::abs(*portrait.h1) : 1.0;
    levels = {0.0, 0.5 * s, -0.5 * s};
    if (portrait.h1) levels.push_back(*portrait.h1);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const double window = a.window > 0.0 ? a.window : 2.5 * std::max(1.0, std::sqrt(std::abs(a.c * a.g)));

  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  os << "# schema: " << schema::orbits_csv << '\n' << "level,orbit,U,y\n";

  auto trace = [&](double U, double y) {
    IntegrateOptions opt;
    opt.overflow_guard = window;
    try {
      return integrate(params, {U, y, 0.0}, a.dxi, a.steps, Integrator::rk4, opt).states;
    } catch (const DivergenceError& e) {
      return e.partial().states;
    }
  };

  for (const double h : levels) {
    std::vector<std::pair<double, double>> seeds;
    // H(U, 0) = h  <=>  s^2/(4c) + g s/2 + h = 0 with s = U^2.
    const double disc = a.g * a.g - 4.0 * h / a.c;
    if (disc >= 0.0) {
      for (double sgn : {1.0, -1.0}) {
        const double s = a.c * (-a.g + sgn * std::sqrt(disc));
        if (s > 0.0 && std::sqrt(s) < window) {
          seeds.emplace_back(std::sqrt(s), 0.0);
          seeds.emplace_back(-std::sqrt(s), 0.0);
        }
      }
    }
    if (h > 0.0) {
      seeds.emplace_back(0.0, std::sqrt(2.0 * h));
      seeds.emplace_back(0.0, -std::sqrt(2.0 * h));
    }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    std::size_t orbit = 0;
    for (const auto& [U0, y0] : seeds) {
      const PlaneVector v = vector_field(params, U0, y0);
      if (std::hypot(v.dU, v.dy) <= 1e-12 * window) {
        os << format_number(h) << ',' << orbit++ << ',' << format_number(U0) << ',' << format_number(y0) << '\n';
        continue;
      }
      auto fwd = trace(U0, y0);
      // A closed orbit ends at its first return to the seed.
      bool closed = false;
      if (fwd.size() > 2) {
        const double step = std::hypot(fwd[1].U - U0, fwd[1].y - y0);
        double farthest = 0.0;
        for (std::size_t i = 2; i < fwd.size(); ++i) {
          const double d = std::hypot(fwd[i].U - U0, fwd[i].y - y0);
          farthest = std::max(farthest, d);
          if (farthest > 5.0 * step && d <= step) {
            fwd.resize(i + 1);
            closed = true;
            break;
          }
        }
      }
      std::vector<std::pair<double, double>> pts;
      if (!closed) {
        const auto bwd = trace(U0, -y0);
        for (auto it = bwd.rbegin(); it + 1 != bwd.rend(); ++it) pts.emplace_back(it->U, -it->y);
      }
      for (const auto& s : fwd) pts.emplace_back(s.U, s.y);
      // Points stalling next to a saddle add nothing to the picture.
      const double min_gap = 1e-6 * window;
      std::pair<double, double> last{HUGE_VAL, HUGE_VAL};
      for (const auto& [U, y] : pts) {
        if (std::abs(y) > window || std::hypot(U - last.first, y - last.second) < min_gap) continue;
        last = {U, y};
        os << format_number(h) << ',' << orbit << ',' << format_number(U) << ',' << format_number(y) << '\n';
      }
      ++orbit;
    }
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Traveling waves, operator identities and simulations for (-u_xx/u)_t = 2 u u_x"};
  app.name(args.empty() ? "nkdv" : args.front());
  app.require_subcommand(1);
  // "-h" is taken by the energy-level option.
  app.set_help_flag("--help", "Print this help message and exit");

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Phase portrait of U'' = gU + U^3/c as JSON");
  classify_cmd->add_option("--c", classify_args.c, "Wave speed (non-zero)")->required();
  classify_cmd->add_option("--g", classify_args.g, "Integration constant")->required();

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a closed-form profile as CSV");
  sample_cmd->add_option("--case", sample_args.case_name, "breaking23, exp24, soliton25, dn26, cn27, kink28, sn29")
      ->required();
  sample_cmd->add_option("--c", sample_args.c)->required();
  sample_cmd->add_option("--g", sample_args.g)->required();
  sample_cmd->add_option("--variant", sample_args.variant, "Width for soliton25/kink28: paper or derived");
  sample_cmd->add_option("--branch", sample_args.branch, "plus or minus");
  sample_cmd->add_option("--xi0", sample_args.xi0, "Shift: profiles depend on xi + xi0");
  sample_cmd->add_option("--A", sample_args.A, "Integration constant of exp24");
  sample_cmd->add_option("--h", sample_args.h, "Energy level of dn26, cn27, sn29");
  sample_cmd->add_option("--range", sample_args.range, "lo:hi");
  sample_cmd->add_option("--n", sample_args.n, "Number of samples");
  sample_cmd->add_option("--out", sample_args.out, "Output file (default standard output)");

  AuditArgs audit_args;
  auto* audit_cmd = app.add_subcommand("audit", "Substitute every closed form back into the ODE");
  audit_cmd->add_flag("--default-regimes", audit_args.default_regimes, "Use the built-in regime points");
  audit_cmd->add_option("--config", audit_args.config, "JSON file {\"regimes\": [{\"c\", \"g\"}]}");
  audit_cmd->add_option("--point", audit_args.points, "Extra regime point c,g (repeatable)");

  OdeArgs ode_args;
  auto* ode_cmd = app.add_subcommand("ode", "Integrate U' = y, y' = gU + U^3/c and write the trajectory CSV");
  auto* ode_config = ode_cmd->add_option("--config", ode_args.config, "JSON run configuration");
  for (auto* opt : {ode_cmd->add_option("--c", ode_args.c), ode_cmd->add_option("--g", ode_args.g),
                    ode_cmd->add_option("--U0", ode_args.U0), ode_cmd->add_option("--y0", ode_args.y0),
                    ode_cmd->add_option("--dxi", ode_args.dxi), ode_cmd->add_option("--steps", ode_args.steps),
                    ode_cmd->add_option("--stride", ode_args.stride),
                    ode_cmd->add_option("--integrator", ode_args.integrator, "leapfrog or rk4")}) {
    opt->excludes(ode_config);
  }
  ode_cmd->add_option("--out", ode_args.out, "Output file (default standard output)");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Evolve a traveling wave with the PDE solver");
  sim_cmd->add_option("--config", sim_args.config, "JSON run configuration")->required();
  sim_cmd->add_option("--slices", sim_args.slices, "Slice CSV path (overrides the output directory)");
  sim_cmd->add_option("--out-dir", sim_args.out_dir,
                      std::string("Directory for the slice CSV (default $") + kOutputDirEnv + " or .)");

  OperatorArgs op_args;
  auto* op_cmd = app.add_subcommand("verify-operators", "Refinement study of the operator identities");
  op_cmd->add_option("--n", op_args.n, "Coarsest grid size");
  op_cmd->add_option("--refine", op_args.refine, "Number of levels, each halving dx");
  op_cmd->add_option("--c", op_args.c, "dn-wave speed (c < 0)");
  op_cmd->add_option("--g", op_args.g, "dn-wave g (g > 0)");
  op_cmd->add_option("--h", op_args.h, "dn-wave level, c g^2/4 < h < 0");

  OrbitArgs orbit_args;
  auto* orbit_cmd = app.add_subcommand("orbits", "Level-set sample points for a phase portrait as CSV");
  orbit_cmd->add_option("--c", orbit_args.c)->required();
  orbit_cmd->add_option("--g", orbit_args.g)->required();
  orbit_cmd->add_option("--level", orbit_args.levels, "Energy level (repeatable; default h0, h1 and neighbours)");
  orbit_cmd->add_option("--dxi", orbit_args.dxi, "RK4 step");
  orbit_cmd->add_option("--steps", orbit_args.steps, "Steps per direction");
  orbit_cmd->add_option("--window", orbit_args.window, "Clip |U|, |y| to this bound");
  orbit_cmd->add_option("--out", orbit_args.out, "Output file (default standard output)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(classify_args, out);
    if (sample_cmd->parsed()) return cmd_sample(sample_args, out);
    if (audit_cmd->parsed()) return cmd_audit(audit_args, out, err);
    if (ode_cmd->parsed()) return cmd_ode(ode_args, out, err);
    if (sim_cmd->parsed()) return cmd_simulate(sim_args, out, err);
    if (op_cmd->parsed()) return cmd_verify_operators(op_args, out, err);
    if (orbit_cmd->parsed()) return cmd_orbits(orbit_args, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitInput;
}

}  // namespace nkdv::cli
