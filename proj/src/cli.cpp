#include "fkdv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "fkdv/csv.hpp"
#include "fkdv/errors.hpp"
#include "fkdv/fourier.hpp"
#include "fkdv/pde.hpp"
#include "fkdv/stability.hpp"
#include "fkdv/waves.hpp"

namespace fkdv::cli {
namespace {

using waves::Family;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string family;
  double gamma = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double cee = 0.0;
  std::string speed;  // one value or a comma-separated list; empty picks the family default
  double fluxA = 0.5;
  std::size_t samples = 0;
  int N = 12;
  int M = 12;
  std::size_t dftSamples = 4096;
  double speedFactor = 1.0;
  std::string mode = "fixed-flux";
  int jmax = 200;
  int jobs = 1;
  std::size_t gridN = 0;
  int periods = 0;
  double dt = 0.0;
  double dtCap = 0.005;
  double horizon = 0.0;
  int records = 100;
  std::string perturb = "none";
  int perturbMode = 1;
  std::uint64_t seed = 0;
  std::string out;
};

std::string fmt(double v) { return format_number(v); }

std::vector<double> parse_speeds(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("--c: '" + item + "' is not a number");
    }
  }
  if (v.empty()) throw UsageError("--c: no value given");
  return v;
}

double single_speed(const Settings& s, double fallback) {
  if (s.speed.empty()) return fallback;
  const auto v = parse_speeds(s.speed);
  if (v.size() != 1) throw UsageError("--c takes a single value for this command");
  return v.front();
}

waves::WaveProfile build_profile(const Settings& s, Family family, std::size_t samples) {
  switch (family) {
    case Family::FifthOrderSoliton:
      return waves::build_fifth_order_soliton(s.gamma, s.alpha, s.beta,
                                              samples ? samples : waves::kDefaultSolitonSamples);
    case Family::KdVSoliton:
      return waves::build_kdv_soliton(s.gamma, s.alpha, single_speed(s, 1.0),
                                      samples ? samples : waves::kDefaultSolitonSamples);
    case Family::KdVCnoidal:
      return waves::build_kdv_cnoidal(s.gamma, s.alpha, single_speed(s, 1.0), s.fluxA,
                                      samples ? samples : waves::kDefaultCnoidalSamples);
    case Family::FifthOrderCnoidal:
      return waves::build_fifth_order_cnoidal(s.gamma, s.beta, single_speed(s, 1.0),
                                              samples ? samples : waves::kDefaultCnoidalSamples);
  }
  throw UsageError("unknown family");
}

Family family_of(const Settings& s) {
  try {
    return waves::parse_family(s.family);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

std::string prefix(const Settings& s, const std::string& command) {
  return s.out.empty() ? "fkdv-" + command : s.out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

void echo_profile(std::ostream& out, const waves::WaveProfile& p) {
  const auto& m = p.params();
  out << "family: " << waves::family_name(p.family()) << "\n";
  out << "gamma: " << fmt(m.gamma) << "\n";
  out << "alpha: " << fmt(m.alpha) << "\n";
  out << "beta: " << fmt(m.beta) << "\n";
  out << "c: " << fmt(m.speed) << "\n";
  out << "amplitude: " << fmt(p.amplitude()) << "\n";
  out << "wavenumber: " << fmt(p.wavenumber()) << "\n";
  if (const auto& cn = p.cnoidal()) {
    if (p.family() == Family::KdVCnoidal) out << "Delta: " << fmt(cn->delta) << "\n";
    out << "k: " << fmt(cn->modulus) << "\n";
    if (p.family() == Family::KdVCnoidal) out << "M: " << fmt(cn->emm) << "\n";
    out << "lambda: " << fmt(cn->wavelength) << "\n";
  } else {
    out << "width: " << fmt(p.characteristic_width()) << "\n";
  }
  out << "flux A: " << fmt(m.fluxA) << "\n";
  out << "flux B: " << fmt(m.fluxB) << "\n";
}

// ---- profile ----

int cmd_profile(const Settings& s, std::ostream& out) {
  const auto p = build_profile(s, family_of(s), s.samples);
  echo_profile(out, p);
  const std::string path = prefix(s, "profile") + "_profile.csv";
  auto f = open_output(path);
  waves::write_csv(f, p);
  out << "wrote: " << path << "\n";
  return kSuccess;
}

// ---- verify ----

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

int cmd_verify(const Settings& s, std::ostream& out, std::ostream& err) {
  const Family family = family_of(s);
  const auto p = build_profile(s, family, s.samples);
  echo_profile(out, p);
  const std::string base = prefix(s, "verify");
  std::vector<Check> checks;
  auto add = [&](std::string name, double value, double tol, std::string detail = {}) {
    checks.push_back({std::move(name), value, tol, value <= tol, std::move(detail)});
  };

  auto params = p.params();
  params.speed *= s.speedFactor;
  waves::SampledField field{std::vector<double>(p.xi().begin(), p.xi().end()),
                            std::vector<double>(p.u().begin(), p.u().end()), p.periodic() ? p.period() : 0.0};
  try {
    const auto r = waves::conservation_residuals(field, params);
    const double fluxA = p.params().fluxA;
    const double fluxB = p.params().fluxB;
    add("first law spread", r.stdA / r.scaleA, 1e-6, "std / field scale");
    add("first law mean", std::abs(r.meanA - fluxA) / std::max(1.0, r.scaleA), 1e-6,
        "mean " + fmt(r.meanA) + " vs declared " + fmt(fluxA));
    add("second law spread", r.stdB / r.scaleB, 1e-4, "std / field scale");
    add("second law mean", std::abs(r.meanB - fluxB) / std::max(1.0, r.scaleB), 1e-4,
        "mean " + fmt(r.meanB) + " vs declared " + fmt(fluxB));
    auto f = open_output(base + "_residuals.csv");
    f << "xi,first_law_residual,second_law_residual\n";
    for (std::size_t j = 0; j < r.xi.size(); ++j) {
      f << fmt(r.xi[j]) << ',' << fmt(r.residualA[j]) << ',' << fmt(r.residualB[j]) << '\n';
    }
  } catch (const ResolutionError& e) {
    checks.push_back({"conservation laws", NAN, 0.0, false, e.what()});
  }

  if (p.periodic()) {
    const auto analytic = family == Family::KdVCnoidal
                              ? fourier::cn2_coeffs(*p.cnoidal(), s.N)
                              : fourier::cn4_coeffs_halfmodulus(p, s.N);
    const auto dft = fourier::dft_coeffs(p, s.N, s.dftSamples);
    double worst = 0.0;
    auto f = open_output(base + "_coeffs.csv");
    f << "# " << analytic.normalization << ", L=" << fmt(analytic.halfPeriod) << "\n";
    f << "n,analytic,dft,rel_err\n";
    for (int n = -s.N; n <= s.N; ++n) {
      const double a = analytic.coeff(n);
      const double d = dft.coeff(n);
      const double e = std::abs(a - d) / std::abs(a);
      worst = std::max(worst, e);
      f << n << ',' << fmt(a) << ',' << fmt(d) << ',' << fmt(e) << '\n';
    }
    add("coefficients vs transform", worst, 1e-8, "max relative error for |n| <= " + std::to_string(s.N));
    try {
      const auto pf = fourier::pf2_check(analytic, std::min(s.M, analytic.order()));
      checks.push_back({"PF(2) minors", -pf.minMinor, fourier::kPf2Tolerance, pf.passed,
                        pf.passed ? std::to_string(pf.minorsChecked) + " minors" : pf.location()});
    } catch (const DomainError& e) {
      checks.push_back({"PF(2) minors", NAN, fourier::kPf2Tolerance, false, e.what()});
    }
  }
  if (family == Family::KdVSoliton) {
    const auto u = p.u();
    const double h = p.period() / static_cast<double>(u.size());
    double sum = 0.0;
    for (double v : u) sum += v * v;
    const double exact = stability::kdv_soliton_norm_squared(p.params().gamma, p.params().alpha,
                                                             p.params().speed);
    add("soliton norm", std::abs(sum * h - exact) / exact, 1e-6,
        "sum u^2 h = " + fmt(sum * h) + " vs " + fmt(exact));
  }

  for (const auto& c : checks) {
    out << "check " << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " value=" << fmt(c.value)
        << " tol=" << fmt(c.tolerance);
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  const auto failed = std::find_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
  if (failed != checks.end()) {
    err << "verify failed: " << failed->name << "\n";
    return kCheckFailed;
  }
  out << "all checks passed\n";
  return kSuccess;
}

// ---- stability ----

int cmd_stability(const Settings& s, std::ostream& out) {
  const Family family = family_of(s);
  const std::string base = prefix(s, "stability");
  if (family == Family::FifthOrderSoliton) {
    if (s.jmax < 1) throw UsageError("--jmax must be at least 1");
    const auto rep = stability::gegenbauer_verdict(stability::GegenbauerSeriesSpec{}, s.jmax);
    const auto b0 = stability::gegenbauer_term_exact(0);
    out << "b0 exact: " << b0 << "\n";
    stability::write_text(out, rep);
    std::vector<double> terms = stability::gegenbauer_terms(stability::GegenbauerSeriesSpec{}, s.jmax);
    auto f = open_output(base + "_gegenbauer.csv");
    stability::write_gegenbauer_csv(f, terms);
    auto g = open_output(base + "_stability.csv");
    stability::write_csv(g, std::span(&rep, 1));
    out << "wrote: " << base << "_gegenbauer.csv\n";
    return rep.stable() ? kSuccess : kCheckFailed;
  }

  const auto speeds = parse_speeds(s.speed.empty() ? (family == Family::KdVSoliton ? "1" : "0.5,1,2")
                                                   : s.speed);
  stability::FluxMode mode;
  try {
    mode = stability::parse_mode(s.mode);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const int count = static_cast<int>(speeds.size());
  std::vector<stability::StabilityReport> reports(speeds.size());
  std::vector<std::exception_ptr> errors(speeds.size());
  const int jobs = std::max(1, std::min(s.jobs, count));
  // Sweep points are independent; results land in input order.
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      const double c = speeds[static_cast<std::size_t>(i)];
      switch (family) {
        case Family::KdVSoliton:
          reports[i] = stability::kdv_soliton_report(s.gamma, s.alpha, c);
          break;
        case Family::KdVCnoidal:
          reports[i] = stability::cn2_norm_derivative(s.gamma, s.alpha, c, s.fluxA, mode);
          break;
        default:
          reports[i] = stability::cn4_norm_derivative(s.gamma, s.beta, c);
          break;
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  bool allStable = true;
  for (const auto& r : reports) {
    stability::write_text(out, r);
    out << "\n";
    allStable = allStable && r.stable();
  }
  auto f = open_output(base + "_stability.csv");
  stability::write_csv(f, reports);
  out << "wrote: " << base << "_stability.csv\n";
  return allStable ? kSuccess : kCheckFailed;
}

// ---- simulate ----

int cmd_simulate(const Settings& s, std::ostream& out, std::ostream& err) {
  const Family family = family_of(s);
  const auto p = build_profile(s, family, 0);
  pde::Perturbation pert;
  try {
    pert = pde::parse_perturbation(s.perturb);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  pert.mode = s.perturbMode;
  pert.seed = s.seed;
  pde::ExperimentOptions opt;
  opt.gridN = s.gridN;
  opt.periods = s.periods;
  opt.dt = s.dt;
  opt.dtCap = s.dtCap;
  opt.horizon = s.horizon;
  opt.records = s.records;
  opt.advection = s.cee;

  pde::ExperimentReport rep;
  try {
    rep = pde::stability_experiment(p, pert, opt);
  } catch (const BlowUpError& e) {
    err << "simulation failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  const std::string base = prefix(s, "simulate");
  {
    auto f = open_output(base + "_diagnostics.csv");
    pde::write_diagnostics_csv(f, rep.records);
    auto g = open_output(base + "_snapshot.csv");
    pde::write_snapshot_csv(g, rep.final);
  }
  out << "family: " << waves::family_name(rep.family) << "\n";
  out << "perturbation: " << pde::describe(rep.perturbation) << "\n";
  out << "gridN: " << rep.gridN << "\n";
  out << "band limit: " << rep.bandLimit << "\n";
  out << "domain length: " << fmt(rep.domainLength) << "\n";
  out << "dt: " << fmt(rep.dt) << "\n";
  out << "horizon: " << fmt(rep.horizon) << "\n";
  out << "amplitude: " << fmt(rep.amplitude) << "\n";
  out << "initial distH1: " << fmt(rep.initialH1) << "\n";
  out << "initial distH2: " << fmt(rep.initialH2) << "\n";
  out << "max distH1: " << fmt(rep.maxH1) << "\n";
  out << "max distH2: " << fmt(rep.maxH2) << "\n";
  if (!std::isnan(rep.ratioH2)) {
    out << "ratio H1: " << fmt(rep.ratioH1) << "\n";
    out << "ratio H2: " << fmt(rep.ratioH2) << "\n";
  }
  out << "mass drift: " << fmt(rep.massDrift) << "\n";
  out << "momentum drift: " << fmt(rep.momentumDrift) << "\n";
  out << "wrote: " << base << "_diagnostics.csv, " << base << "_snapshot.csv\n";
  return kSuccess;
}

// ---- wiring ----

void add_wave_options(CLI::App* app, Settings& s) {
  app->add_option("--family", s.family, "fifth-soliton, kdv-soliton, kdv-cnoidal or fifth-cnoidal")
      ->required();
  app->add_option("--gamma", s.gamma, "nonlinear coefficient")->capture_default_str();
  app->add_option("--alpha", s.alpha, "third-order dispersion (unused by fifth-cnoidal, which has alpha = 0)")
      ->capture_default_str();
  app->add_option("--beta", s.beta, "fifth-order dispersion (unused by the KdV families)")
      ->capture_default_str();
  app->add_option("--c", s.speed, "wave speed; fifth-soliton derives its own (default 1)");
  app->add_option("--A", s.fluxA, "mass flux of the kdv-cnoidal wave")->capture_default_str();
  app->add_option("--out", s.out, "output path prefix (default fkdv-<command>)");
}

void add_config_option(CLI::App* app) {
  app->add_option("--config", "key=value file; command-line flags take precedence");
}

const std::vector<std::string> kCommands = {"profile", "verify", "stability", "simulate"};

// Expands `--config file` into flags placed right after the subcommand name,
// skipping keys given explicitly on the command line.
std::vector<std::string> merge_config(const std::vector<std::string>& args, CLI::App& app) {
  if (args.size() < 2) return args;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (!path) return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    throw UsageError("--config must follow a command");
  }
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file " + *path);
  std::map<std::string, std::string> entries;
  try {
    entries = read_config(in);
  } catch (const std::runtime_error& e) {
    throw UsageError(std::string(*path) + ": " + e.what());
  }
  std::vector<std::string> merged(args.begin(), args.begin() + 2);
  for (const auto& [key, value] : entries) {
    const std::string flag = "--" + key;
    if (key == "config" || sub->get_option_no_throw(flag) == nullptr) {
      throw UsageError(*path + ": unknown key '" + key + "' for command " + args[1]);
    }
    const bool given = std::any_of(args.begin() + 2, args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) {
      merged.push_back(flag);
      merged.push_back(value);
    }
  }
  merged.insert(merged.end(), args.begin() + 2, args.end());
  return merged;
}

}  // namespace

std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int number = 0;
  auto trim = [](std::string t) {
    const auto b = t.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = t.find_last_not_of(" \t\r");
    return t.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("line " + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::runtime_error("line " + std::to_string(number) + ": empty key or value");
    }
    entries[key] = value;
  }
  return entries;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Traveling waves of the fifth-order KdV equation: profiles, checks, stability indices, simulations",
               "fkdv"};
  app.require_subcommand(1);

  auto* profile = app.add_subcommand("profile", "sample a wave and echo its derived quantities");
  add_wave_options(profile, s);
  profile->add_option("--samples", s.samples, "sample count (default 2048 solitary, 1024 cnoidal)");
  add_config_option(profile);

  auto* verify = app.add_subcommand("verify", "conservation laws, coefficient cross-check and PF(2)");
  add_wave_options(verify, s);
  verify->add_option("--samples", s.samples, "profile sample count for the residuals");
  verify->add_option("--N", s.N, "highest coefficient index compared")->capture_default_str()
      ->check(CLI::Range(1, 1000));
  verify->add_option("--M", s.M, "PF(2) window half-width")->capture_default_str()->check(CLI::Range(1, 1000));
  verify->add_option("--dft-samples", s.dftSamples, "samples per period for the transform")
      ->capture_default_str();
  verify->add_option("--speed-factor", s.speedFactor, "multiply c in the residuals (sanity check)")
      ->capture_default_str();
  add_config_option(verify);

  auto* stab = app.add_subcommand("stability", "stability functional and its sign");
  add_wave_options(stab, s);
  stab->add_option("--mode", s.mode, "kdv-cnoidal: fixed-flux or fixed-period")->capture_default_str();
  stab->add_option("--jmax", s.jmax, "fifth-soliton: series terms summed")->capture_default_str();
  stab->add_option("--jobs", s.jobs, "parallel sweep points")->capture_default_str()->check(CLI::PositiveNumber);
  add_config_option(stab);

  auto* sim = app.add_subcommand("simulate", "evolve a perturbed wave and track its orbital distance");
  add_wave_options(sim, s);
  sim->add_option("--C", s.cee, "linear advection coefficient of the PDE")->capture_default_str();
  sim->add_option("--gridN", s.gridN, "grid points, a power of two (0: family default)")->capture_default_str();
  sim->add_option("--periods", s.periods, "wavelengths in the box for cnoidal waves (0: 1)")->capture_default_str();
  sim->add_option("--dt", s.dt, "time step (0: automatic)")->capture_default_str();
  sim->add_option("--dt-cap", s.dtCap, "upper bound for the automatic time step")->capture_default_str();
  sim->add_option("--horizon", s.horizon, "end time (0: ten characteristic times)")->capture_default_str();
  sim->add_option("--records", s.records, "diagnostic records over the run")->capture_default_str();
  sim->add_option("--perturb", s.perturb, "none, scale:eps, mode:eps or noise:eps")->capture_default_str();
  sim->add_option("--perturb-mode", s.perturbMode, "wavenumber index of mode:eps")->capture_default_str();
  sim->add_option("--seed", s.seed, "seed of noise:eps")->capture_default_str();
  add_config_option(sim);

  try {
    std::vector<std::string> full{"fkdv"};
    full.insert(full.end(), args.begin(), args.end());
    const auto merged = merge_config(full, app);
    std::vector<const char*> argv;
    for (const auto& a : merged) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*profile) return cmd_profile(s, out);
    if (*verify) return cmd_verify(s, out, err);
    if (*stab) return cmd_stability(s, out);
    if (*sim) return cmd_simulate(s, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace fkdv::cli
