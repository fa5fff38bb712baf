// Command-line front end: kernel evaluation, path simulation, characteristic
// functions, codifference curves and the statistical verification suites.
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad arguments or
// an inadmissible parameter combination.
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftsm/charfn.hpp"
#include "ftsm/kernel.hpp"
#include "ftsm/measure.hpp"
#include "ftsm/series.hpp"
#include "ftsm/verify.hpp"

using namespace ftsm;
using nlohmann::json;

namespace {

#ifndef FTSM_VERSION
#define FTSM_VERSION "0.0.0"
#endif

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

InnerMeasure resolve_rho(const std::string& name, double alpha) {
  if (name == "rho1") return InnerMeasure::rho1();
  if (name == "rho2") return InnerMeasure::rho2(alpha);
  throw std::invalid_argument("unknown measure '" + name + "' (expected rho1 or rho2)");
}

std::vector<double> uniform_grid(double T, int n) {
  if (n < 1) throw std::invalid_argument("grid-n must be at least 1");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = T * (i + 1) / n;
  return g;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("need at least 2 grid points");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

// Output sink: stdout by default, file when --out is given (plus a JSON
// metadata sidecar next to it).
struct Sink {
  std::ofstream file;
  std::string path;
  std::ostream& stream() { return path.empty() ? std::cout : file; }

  explicit Sink(const std::string& out) : path(out) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file " + path);
    }
  }
  void sidecar(const json& meta) const {
    if (path.empty()) return;
    std::ofstream m(path + ".meta.json");
    m << meta.dump(2) << "\n";
  }
};

void write_header(std::ostream& os, const std::string& sub, const json& params) {
  os << "# ftsm " << FTSM_VERSION << " " << sub << "\n#";
  for (auto it = params.begin(); it != params.end(); ++it) {
    os << " " << it.key() << "=";
    if (it->is_string())
      os << it->get<std::string>();
    else
      os << it->dump();
  }
  os << "\n";
}

// ------------------------------------------------------------------- kernel
struct KernelCmd {
  double H = 0, alpha = 0, t = 1.0, s = 0.5;

  void run() const {
    auto kp = make_kernel_params(H, alpha);
    const char* regime = kp.regime == Regime::long_memory ? "long_memory"
                         : kp.regime == Regime::levy      ? "levy"
                                                          : "rough";
    std::cout << "H       = " << g17(kp.H) << "\n"
              << "alpha   = " << g17(kp.alpha) << "\n"
              << "regime  = " << regime << "\n"
              << "G       = " << g17(kp.G) << "\n"
              << "delta   = " << g17(kp.delta) << "\n";
    if (kp.regime != Regime::levy) std::cout << "c       = " << g17(kp.c) << "\n";
    std::cout << "K(t,s)  = " << g17(kernel_eval(kp, t, s)) << "  (t=" << g17(t)
              << ", s=" << g17(s) << ")\n"
              << "k(t)    = " << g17(kernel_primitive(kp, t)) << "\n";
    const double ip = inner_product(kp, t, s);
    const double cf = 0.5 * (std::pow(t, 2 * kp.G) + std::pow(s, 2 * kp.G) -
                             std::pow(std::fabs(t - s), 2 * kp.G));
    std::cout << "<K_t,K_s> = " << g17(ip) << "  (closed form " << g17(cf) << ")\n";
  }
};

// ----------------------------------------------------------------- simulate
struct SimulateCmd {
  std::string kind = "ftsm";
  double H = std::nan("");
  double alpha = 0;
  std::string rho_name = "rho1";
  double T = 1.0;
  int grid_n = 0;
  long terms = 2000;
  std::uint64_t seed = 1;
  long reps = 1;
  double h = 0.01;
  std::string tail = "gaussian";
  std::string out;

  void run() const {
    const bool needs_H = kind != "ts";
    if (needs_H && std::isnan(H))
      throw std::invalid_argument("--H is required for kind=" + kind);
    if (kind != "ts" && kind != "ftsm" && kind != "fsm" && kind != "fbm" &&
        kind != "coupled")
      throw std::invalid_argument("unknown kind '" + kind + "'");
    const int gn = grid_n > 0 ? grid_n : 32;
    auto grid = uniform_grid(T, gn);
    auto rho = resolve_rho(rho_name, alpha);
    auto kp = make_kernel_params(needs_H ? H : 1.0 / alpha, alpha);
    auto sc = series_constants(rho, alpha, T);
    const TailMode tm = tail == "none" ? TailMode::none : TailMode::gaussian;
    std::unique_ptr<TailPlan> plan;
    if (tm == TailMode::gaussian && kind != "fbm" && kind != "coupled")
      plan = std::make_unique<TailPlan>(make_tail_plan(kp, grid));

    auto run_rep = [&](std::uint64_t rep) {
      Path p;
      if (kind == "fbm") {
        p = simulate_fbm_approx(seed, rep, kp, terms, grid);
      } else {
        auto drv = make_driver(seed, rep, T, terms, rho, alpha);
        if (kind == "ts")
          p = simulate_ts(drv, sc, grid, tm, plan.get());
        else if (kind == "ftsm")
          p = simulate_ftsm(drv, kp, sc, grid, tm, plan.get());
        else if (kind == "fsm")
          p = simulate_fsm(drv, kp, sc, grid, tm, plan.get());
        else
          p = coupled_short_time_diff(drv, kp, sc, h, grid);
      }
      std::ostringstream os;
      for (std::size_t j = 0; j < grid.size(); ++j)
        os << rep << "," << g17(grid[j]) << "," << g17(p.values[j]) << "\n";
      return os.str();
    };

    // Reps are independent streams, so scheduling cannot change the output.
    std::vector<std::string> rows(static_cast<std::size_t>(reps));
    const int nt = std::min<long>(std::max(1, default_threads()), reps);
    if (nt <= 1) {
      for (long r = 0; r < reps; ++r) rows[r] = run_rep(r);
    } else {
      std::atomic<long> next{0};
      std::vector<std::thread> pool;
      for (int i = 0; i < nt; ++i)
        pool.emplace_back([&] {
          for (;;) {
            const long r = next.fetch_add(1);
            if (r >= reps) break;
            rows[r] = run_rep(r);
          }
        });
      for (auto& th : pool) th.join();
    }

    json meta = {{"tool", "ftsm"},       {"version", FTSM_VERSION},
                 {"subcommand", "simulate"}, {"kind", kind},
                 {"H", kp.H},            {"alpha", alpha},
                 {"rho", rho_name},      {"T", T},
                 {"grid_n", gn},         {"terms", terms},
                 {"seed", seed},         {"reps", reps},
                 {"tail", tail}};
    if (kind == "coupled") meta["h"] = h;
    Sink sink(out);
    write_header(sink.stream(), "simulate", meta);
    sink.stream() << "rep,t,value\n";
    for (const auto& r : rows) sink.stream() << r;
    sink.sidecar(meta);
  }
};

// ----------------------------------------------------------------------- cf
struct CfCmd {
  std::string process = "ftsm";
  double H = std::nan("");
  double alpha = 0;
  std::string rho_name = "rho1";
  double t = 1.0;
  double h = 1.0;
  double y_max = 5.0;
  int y_n = 101;
  std::string out;

  void run() const {
    const bool needs_H = process != "ts";
    if (needs_H && std::isnan(H))
      throw std::invalid_argument("--H is required for process=" + process);
    auto rho = resolve_rho(rho_name, alpha);
    KernelParams kp = make_kernel_params(needs_H ? H : 1.0 / alpha, alpha);
    auto eval = [&](double y) -> std::complex<double> {
      if (process == "ts") return cf_ts(y, t, rho, alpha);
      if (process == "ftsm") return cf_ftsm(y, t, kp, rho);
      if (process == "fsm") return cf_fsm(y, t, kp, rho);
      if (process == "short") return cf_rescaled_short(y, t, kp, rho, h);
      if (process == "long") return cf_rescaled_long(y, kp, rho, h);
      throw std::invalid_argument("unknown process '" + process + "'");
    };
    json meta = {{"tool", "ftsm"}, {"version", FTSM_VERSION}, {"subcommand", "cf"},
                 {"process", process}, {"H", kp.H},   {"alpha", alpha},
                 {"rho", rho_name},    {"t", t},      {"h", h},
                 {"y_max", y_max},     {"y_n", y_n}};
    Sink sink(out);
    write_header(sink.stream(), "cf", meta);
    sink.stream() << "y,re,im\n";
    for (double y : linspace(-y_max, y_max, y_n)) {
      const auto v = eval(y);
      sink.stream() << g17(y) << "," << g17(v.real()) << "," << g17(v.imag()) << "\n";
    }
    sink.sidecar(meta);
  }
};

// ------------------------------------------------------------------- codiff
struct CodiffCmd {
  double H = 0, alpha = 0;
  std::string rho_name = "rho1";
  double theta1 = 1.0, theta2 = -1.0;
  double t_min = 10.0, t_max = 1000.0;
  int t_n = 13;
  std::string out;

  void run() const {
    auto rho = resolve_rho(rho_name, alpha);
    auto kp = make_kernel_params(H, alpha);
    json meta = {{"tool", "ftsm"},   {"version", FTSM_VERSION},
                 {"subcommand", "codiff"}, {"H", H},
                 {"alpha", alpha},  {"rho", rho_name},
                 {"theta1", theta1}, {"theta2", theta2},
                 {"t_min", t_min},  {"t_max", t_max},
                 {"t_n", t_n},      {"decay_exponent", 2.0 * (kp.G - 1.0)}};
    Sink sink(out);
    write_header(sink.stream(), "codiff", meta);
    if (kp.alpha != 1.0) {
      const auto c = codifference_asymptotic_constant(theta1, theta2, kp, rho);
      sink.stream() << "# limit_constant_re=" << g17(c.real())
                    << " limit_constant_im=" << g17(c.imag()) << "\n";
    }
    sink.stream() << "t,re,im\n";
    for (int i = 0; i < t_n; ++i) {
      const double t =
          t_n == 1 ? t_min : t_min * std::pow(t_max / t_min, double(i) / (t_n - 1));
      const auto v = codifference(theta1, theta2, t, kp, rho);
      sink.stream() << g17(t) << "," << g17(v.real()) << "," << g17(v.imag()) << "\n";
    }
    sink.sidecar(meta);
  }
};

// ------------------------------------------------------------------- verify
struct VerifyCmd {
  std::string suite = "all";
  double H = 0, alpha = 0;
  std::string rho_name = "rho1";
  double T = 1.0;
  int grid_n = 0;
  long reps = 1000;
  long terms = 2000;
  std::uint64_t seed = 1;
  long qv_n = 256;
  double h = 100.0;
  double t_max = 1000.0;
  double y_max = 3.0;
  int y_n = 61;
  int threads = 0;
  std::string out;

  int run() const {
    auto rho = resolve_rho(rho_name, alpha);
    auto kp = make_kernel_params(H, alpha);
    VerifyOptions opt;
    opt.n_terms = terms;
    opt.threads = threads;
    std::vector<VerificationReport> reports;
    auto add = [&](std::vector<VerificationReport> rs) {
      for (auto& r : rs) reports.push_back(std::move(r));
    };
    const bool all = suite == "all";
    if (all || suite == "covariance")
      add(check_covariance(kp, rho, uniform_grid(T, grid_n > 0 ? grid_n : 5), reps,
                           seed, opt));
    if (all || suite == "qv")
      add(check_quadratic_variation(kp, rho, T, qv_n, reps, seed, opt));
    if (all || suite == "lrd")
      add(check_lrd_slope(kp, rho, 1.0, t_max, all ? 0 : reps, seed, opt));
    if (all || suite == "gauss")
      add(check_long_time_gaussianity(kp, rho, h, reps, seed, opt));
    if (all || suite == "cf")
      reports.push_back(check_empirical_cf(PathKind::ftsm, kp, rho, T,
                                           linspace(-y_max, y_max, y_n), reps, seed,
                                           opt));
    if (all || suite == "holder") {
      const int gn = grid_n > 0 ? grid_n : 256;
      auto grid = uniform_grid(T, gn);
      std::vector<Path> paths;
      const long n_paths = std::min<long>(reps, 64);
      paths.reserve(n_paths);
      for (long r = 0; r < n_paths; ++r)
        paths.push_back(simulate_fbm_approx(seed, r, kp, terms, grid));
      reports.push_back(estimate_holder_roughness(paths));
    }
    if (reports.empty())
      throw std::invalid_argument("unknown suite '" + suite + "'");

    int failed = 0;
    std::printf("%-26s %14s %14s %11s %8s  %s\n", "check", "theoretical", "estimate",
                "std_error", "z", "pass");
    for (const auto& r : reports) {
      if (!r.passed) ++failed;
      std::printf("%-26s %14.6g %14.6g %11.3g %8.2f  %s\n", r.name.c_str(),
                  r.theoretical, r.estimate, r.std_error, r.z_score,
                  r.passed ? "yes" : "NO");
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(reports.size()) - failed,
                reports.size());
    if (!out.empty()) {
      json j = json::array();
      for (const auto& r : reports)
        j.push_back({{"name", r.name},
                     {"theoretical", r.theoretical},
                     {"estimate", r.estimate},
                     {"std_error", r.std_error},
                     {"z_score", r.z_score},
                     {"passed", r.passed},
                     {"n_reps", r.n_reps},
                     {"runtime_s", r.runtime_s},
                     {"seed", r.seed},
                     {"params", r.params}});
      std::ofstream f(out);
      if (!f) throw std::runtime_error("cannot open output file " + out);
      f << j.dump(2) << "\n";
    }
    return failed == 0 ? 0 : 1;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional tempered stable motion toolkit (ftsm " FTSM_VERSION ")"};
  app.set_config("--config", "", "Read options from an INI file");
  app.require_subcommand(1);
  int exit_code = 0;

  // Subcommands keep only the long help flag so short single-letter options
  // (notably --h) stay available.
  auto add_sub = [&](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print this help message and exit");
    return sub;
  };

  KernelCmd kc;
  auto* kernel = add_sub("kernel", "Evaluate the Volterra kernel and its invariants");
  kernel->add_option("--H", kc.H, "Hurst-type index")->required();
  kernel->add_option("--alpha", kc.alpha, "stability index in (0,2)")->required();
  kernel->add_option("--t", kc.t, "time argument");
  kernel->add_option("--s", kc.s, "second time argument");
  kernel->callback([&] { kc.run(); });

  SimulateCmd sm;
  auto* simulate = add_sub("simulate", "Sample paths via the truncated shot-noise series");
  simulate->add_option("--kind", sm.kind, "ts|ftsm|fsm|fbm|coupled");
  simulate->add_option("--H", sm.H, "Hurst-type index (not needed for ts)");
  simulate->add_option("--alpha", sm.alpha, "stability index in (0,2)")->required();
  simulate->add_option("--rho", sm.rho_name, "inner measure: rho1|rho2");
  simulate->add_option("--T", sm.T, "horizon");
  simulate->add_option("--grid-n", sm.grid_n, "grid points (default 32)");
  simulate->add_option("--terms", sm.terms, "series terms per replication");
  simulate->add_option("--seed", sm.seed, "RNG seed");
  simulate->add_option("--reps", sm.reps, "number of replications");
  simulate->add_option("--h", sm.h, "short-time scale (kind=coupled)");
  simulate->add_option("--tail", sm.tail, "tail compensation: gaussian|none");
  simulate->add_option("--out", sm.out, "CSV output path (stdout if omitted)");
  simulate->callback([&] { sm.run(); });

  CfCmd cf;
  auto* cfc = add_sub("cf", "Characteristic functions on a y-grid");
  cfc->add_option("--process", cf.process, "ts|ftsm|fsm|short|long");
  cfc->add_option("--H", cf.H, "Hurst-type index (not needed for ts)");
  cfc->add_option("--alpha", cf.alpha, "stability index in (0,2)")->required();
  cfc->add_option("--rho", cf.rho_name, "inner measure: rho1|rho2");
  cfc->add_option("--t", cf.t, "marginal time");
  cfc->add_option("--h", cf.h, "rescaling parameter (short/long)");
  cfc->add_option("--y-max", cf.y_max, "half-width of the y grid");
  cfc->add_option("--y-n", cf.y_n, "number of y points");
  cfc->add_option("--out", cf.out, "CSV output path (stdout if omitted)");
  cfc->callback([&] { cf.run(); });

  CodiffCmd cd;
  auto* codiff = add_sub("codiff", "Codifference across a log-spaced lag grid");
  codiff->add_option("--H", cd.H, "Hurst-type index")->required();
  codiff->add_option("--alpha", cd.alpha, "stability index in (0,2)")->required();
  codiff->add_option("--rho", cd.rho_name, "inner measure: rho1|rho2");
  codiff->add_option("--theta1", cd.theta1, "first argument");
  codiff->add_option("--theta2", cd.theta2, "second argument");
  codiff->add_option("--t-min", cd.t_min, "smallest lag (>= 1)");
  codiff->add_option("--t-max", cd.t_max, "largest lag");
  codiff->add_option("--t-n", cd.t_n, "number of lags");
  codiff->add_option("--out", cd.out, "CSV output path (stdout if omitted)");
  codiff->callback([&] { cd.run(); });

  VerifyCmd vf;
  auto* verify = add_sub("verify", "Run statistical verification suites");
  verify->add_option("--suite", vf.suite, "covariance|qv|lrd|gauss|cf|holder|all");
  verify->add_option("--H", vf.H, "Hurst-type index")->required();
  verify->add_option("--alpha", vf.alpha, "stability index in (0,2)")->required();
  verify->add_option("--rho", vf.rho_name, "inner measure: rho1|rho2");
  verify->add_option("--T", vf.T, "horizon / marginal time");
  verify->add_option("--grid-n", vf.grid_n, "grid points (suite-specific default)");
  verify->add_option("--reps", vf.reps, "replications");
  verify->add_option("--terms", vf.terms, "series terms per replication");
  verify->add_option("--seed", vf.seed, "RNG seed");
  verify->add_option("--qv-n", vf.qv_n, "finest dyadic grid for the QV suite");
  verify->add_option("--h", vf.h, "long-time scale for the gauss suite");
  verify->add_option("--t-max", vf.t_max, "largest offset for the lrd suite");
  verify->add_option("--y-max", vf.y_max, "half-width of the CF y grid");
  verify->add_option("--y-n", vf.y_n, "number of CF y points");
  verify->add_option("--threads", vf.threads, "worker threads (0: auto)");
  verify->add_option("--out", vf.out, "JSON report path");
  verify->callback([&] { exit_code = vf.run(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
