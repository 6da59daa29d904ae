// Command-line front end: operator curves, convergence traces, synthetic
// benchmarks, and image restoration. Every run writes a run.meta sidecar
// capturing the full effective configuration; --from-meta replays it.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "extdiv/benchmark.hpp"
#include "extdiv/imaging.hpp"
#include "extdiv/meta.hpp"
#include "extdiv/shrinkage.hpp"
#include "extdiv/solver.hpp"

namespace fs = std::filesystem;
using namespace extdiv;

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == delim) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(std::stod(tok));
  return out;
}

std::string join_double_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt_double(v[i]);
  }
  return s;
}

struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
};

GridSpec parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ParamError("grid must be lo:hi:steps");
  GridSpec g;
  g.lo = std::stod(parts[0]);
  g.hi = std::stod(parts[1]);
  g.steps = std::stoi(parts[2]);
  if (g.steps < 2) throw ParamError("grid needs at least 2 samples");
  if (!(g.hi > g.lo)) throw ParamError("grid needs hi > lo");
  return g;
}

SolverVariant parse_method(const std::string& name) {
  if (name == "rkl") return SolverVariant::RklL1;
  if (name == "fkl") return SolverVariant::FklL1;
  if (name == "proposed") return SolverVariant::Proposed;
  if (name == "proposed-a0") return SolverVariant::ProposedA0;
  throw ParamError("unknown method '" + name +
                   "' (use rkl, fkl, proposed, proposed-a0)");
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string());
  f << content;
}

fs::path prepare_out_dir(const std::string& out_dir) {
  fs::path p(out_dir);
  fs::create_directories(p);
  return p;
}

void check_meta_subcommand(const RunMeta& meta, const std::string& expected) {
  if (meta.require("subcommand") != expected) {
    throw FormatError("run.meta is for subcommand '" + meta.require("subcommand") +
                      "', expected '" + expected + "'");
  }
}

// ---------------------------------------------------------------------------
// operator-curve
// ---------------------------------------------------------------------------

struct CurveArgs {
  std::string op = "ext-div";
  double omega = 2.0;
  double eta1 = 0.3;
  double a = 3.0;
  double eta = 0.3;
  double tau = 1.0;
  double gamma = 2.0;
  std::string grid = "0:10:1000";
  std::string out_dir = ".";
  std::string from_meta;
};

int run_curve(CurveArgs args) {
  if (!args.from_meta.empty()) {
    const RunMeta meta = RunMeta::load(args.from_meta);
    check_meta_subcommand(meta, "operator-curve");
    args.op = meta.require("op");
    args.omega = meta.require_double("omega");
    args.eta1 = meta.require_double("eta1");
    args.a = meta.require_double("a");
    args.eta = meta.require_double("eta");
    args.tau = meta.require_double("tau");
    args.gamma = meta.require_double("gamma");
    args.grid = meta.require("grid");
  }
  const GridSpec g = parse_grid(args.grid);

  std::function<double(double)> f;
  if (args.op == "ext-div") {
    const ExtDivParams p = validate_ext_div_params(args.omega, args.eta1, args.a);
    f = [p](double x) { return ext_div_scalar(x, p); };
  } else if (args.op == "bregman-prox-bs") {
    const double eta = args.eta, a = args.a;
    f = [eta, a](double x) { return bregman_prox_shifted_l1_bs_scalar(x, eta, a); };
  } else if (args.op == "bregman-prox-burg") {
    const double eta = args.eta;
    f = [eta](double x) { return bregman_prox_l1_burg_scalar(x, eta); };
  } else if (args.op == "soft") {
    const double gamma = args.gamma;
    f = [gamma](double x) { return soft(x, gamma); };
  } else if (args.op == "firm") {
    const double tau = args.tau, gamma = args.gamma;
    f = [tau, gamma](double x) { return firm(x, tau, gamma); };
  } else {
    throw ParamError("unknown --op '" + args.op + "'");
  }

  std::string csv = "x,y\n";
  const double step = (g.hi - g.lo) / (g.steps - 1);
  for (int i = 0; i < g.steps; ++i) {
    const double x = g.lo + step * i;
    try {
      const double y = f(x);
      csv += fmt_double(x);
      csv += ',';
      csv += fmt_double(y);
      csv += '\n';
    } catch (const DomainError&) {
      // sample outside the operator domain; skipped
    }
  }

  const fs::path out = prepare_out_dir(args.out_dir);
  write_text(out / "curve.csv", csv);

  RunMeta meta;
  meta.set("subcommand", std::string("operator-curve"));
  meta.set("op", args.op);
  meta.set("omega", args.omega);
  meta.set("eta1", args.eta1);
  meta.set("a", args.a);
  meta.set("eta", args.eta);
  meta.set("tau", args.tau);
  meta.set("gamma", args.gamma);
  meta.set("grid", args.grid);
  meta.save((out / "run.meta").string());
  std::cout << "wrote " << (out / "curve.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

struct TraceArgs {
  int m = 100;
  int n = 150;
  double rho = 0.1;
  double k_max = 50.0;
  std::uint64_t seed = 1;
  std::string method = "rkl";
  double lambda_frac = 0.9;
  double eta = 0.1;
  double omega = 2.0;
  double eta1 = 0.3;
  double a = 0.05;
  long long max_iter = 0;  // 0 = default budget (5e6 for fkl, 1e4 otherwise)
  double tol = 1e-4;
  int trace_every = 10;
  std::string out_dir = ".";
  std::string from_meta;
};

int run_trace(TraceArgs args) {
  if (!args.from_meta.empty()) {
    const RunMeta meta = RunMeta::load(args.from_meta);
    check_meta_subcommand(meta, "trace");
    args.m = static_cast<int>(meta.require_int("m"));
    args.n = static_cast<int>(meta.require_int("n"));
    args.rho = meta.require_double("rho");
    args.k_max = meta.require_double("k_max");
    args.seed = static_cast<std::uint64_t>(meta.require_int("seed"));
    args.method = meta.require("method");
    args.lambda_frac = meta.require_double("lambda_frac");
    args.eta = meta.require_double("eta");
    args.omega = meta.require_double("omega");
    args.eta1 = meta.require_double("eta1");
    args.a = meta.require_double("a");
    args.max_iter = meta.require_int("max_iter");
    args.tol = meta.require_double("tol");
    args.trace_every = static_cast<int>(meta.require_int("trace_every"));
  }

  const SolverVariant variant = parse_method(args.method);
  long long max_iter = args.max_iter;
  if (max_iter == 0) {
    max_iter = variant == SolverVariant::FklL1 ? 5000000LL : 10000LL;
  }

  SyntheticSpec spec;
  spec.m = args.m;
  spec.n = args.n;
  spec.rho = args.rho;
  spec.k_max = args.k_max;
  spec.seed = args.seed;
  spec.trials = 1;
  spec.validate();

  const TrialData data = make_trial_data(spec, 0);
  PoissonModel model(LinearMap::dense(data.A), data.b, kSyntheticBackground);
  const double bound = step_bound(fidelity_for(variant), model);

  SolverConfig cfg;
  cfg.variant = variant;
  cfg.lambda = args.lambda_frac * bound;
  cfg.max_iter = static_cast<int>(max_iter);
  cfg.tol = args.tol;
  cfg.l1_weight = args.eta;
  cfg.trace_every = args.trace_every;
  if (variant == SolverVariant::Proposed) {
    cfg.ext_div = validate_ext_div_params(args.omega, args.eta1, args.a);
  }

  const SolveResult r = solve(cfg, model, data.truth);

  std::string csv = trace_csv_header() + "\n";
  for (const auto& t : r.trace) csv += trace_csv_row(t) + "\n";

  const fs::path out = prepare_out_dir(args.out_dir);
  write_text(out / "trace.csv", csv);

  RunMeta meta;
  meta.set("subcommand", std::string("trace"));
  meta.set("m", args.m);
  meta.set("n", args.n);
  meta.set("rho", args.rho);
  meta.set("k_max", args.k_max);
  meta.set("seed", static_cast<unsigned long long>(args.seed));
  meta.set("method", args.method);
  meta.set("lambda_frac", args.lambda_frac);
  meta.set("eta", args.eta);
  meta.set("omega", args.omega);
  meta.set("eta1", args.eta1);
  meta.set("a", args.a);
  meta.set("max_iter", max_iter);
  meta.set("tol", args.tol);
  meta.set("trace_every", args.trace_every);
  // informational outputs (ignored on replay)
  meta.set("result.lambda", cfg.lambda);
  meta.set("result.converged", r.converged);
  meta.set("result.iterations", r.iterations);
  meta.save((out / "run.meta").string());

  std::cout << "method=" << args.method << " iterations=" << r.iterations
            << " converged=" << (r.converged ? 1 : 0) << " final_nmse="
            << fmt_double(r.trace.empty() ? std::numeric_limits<double>::quiet_NaN()
                                          : r.trace.back().nmse)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// synth-bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  int m = 100;
  int n = 150;
  std::string rho_list = "0.05,0.1,0.2";
  int trials = 50;
  double k_max = 50.0;
  std::uint64_t seed = 1;
  std::string methods = "rkl,fkl,proposed,proposed-a0";
  long long max_iter = 10000;
  long long fkl_max_iter = 100000;
  double tol = 1e-4;
  std::string lambda_fracs;  // optional grid overrides, comma lists
  std::string etas;
  std::string omegas;
  std::string eta1_fracs;
  std::string a_list;
  std::string out_dir = ".";
  std::string from_meta;
};

MethodGrid build_grid(SolverVariant method, const BenchArgs& args) {
  MethodGrid g = default_grid(method);
  g.tol = args.tol;
  g.max_iter = static_cast<int>(method == SolverVariant::FklL1 ? args.fkl_max_iter
                                                               : args.max_iter);
  const bool any_override = !args.lambda_fracs.empty() || !args.etas.empty() ||
                            !args.omegas.empty() || !args.eta1_fracs.empty() ||
                            !args.a_list.empty();
  if (!any_override) return g;

  const std::vector<double> lf =
      args.lambda_fracs.empty() ? std::vector<double>{0.1, 0.3, 0.5, 0.9, 1.0}
                                : parse_double_list(args.lambda_fracs);
  std::vector<double> etas;
  if (args.etas.empty()) {
    for (int i = 0; i < 9; ++i) etas.push_back(std::pow(10.0, -3.0 + 0.5 * i));
  } else {
    etas = parse_double_list(args.etas);
  }
  const std::vector<double> omegas =
      args.omegas.empty() ? std::vector<double>{1.5, 2.0, 4.0, 8.0}
                          : parse_double_list(args.omegas);
  const std::vector<double> e1f =
      args.eta1_fracs.empty() ? std::vector<double>{0.5, 0.7, 0.9}
                              : parse_double_list(args.eta1_fracs);
  const std::vector<double> as =
      args.a_list.empty() ? std::vector<double>{0.01, 0.05, 0.1, 0.5, 1.0}
                          : parse_double_list(args.a_list);

  switch (method) {
    case SolverVariant::FklL1:
    case SolverVariant::RklL1:
      g.points = detail::cross(lf, etas, {2.0}, {0.5}, {0.0});
      break;
    case SolverVariant::Proposed:
      g.points = detail::cross(lf, {0.0}, omegas, e1f, as);
      break;
    case SolverVariant::ProposedA0:
      g.points = detail::cross(lf, {0.0}, {2.0}, {0.5}, {0.0});
      break;
  }
  return g;
}

int run_bench(BenchArgs args) {
  if (!args.from_meta.empty()) {
    const RunMeta meta = RunMeta::load(args.from_meta);
    check_meta_subcommand(meta, "synth-bench");
    args.m = static_cast<int>(meta.require_int("m"));
    args.n = static_cast<int>(meta.require_int("n"));
    args.rho_list = meta.require("rho_list");
    args.trials = static_cast<int>(meta.require_int("trials"));
    args.k_max = meta.require_double("k_max");
    args.seed = static_cast<std::uint64_t>(meta.require_int("seed"));
    args.methods = meta.require("methods");
    args.max_iter = meta.require_int("max_iter");
    args.fkl_max_iter = meta.require_int("fkl_max_iter");
    args.tol = meta.require_double("tol");
    args.lambda_fracs = meta.require("lambda_fracs");
    args.etas = meta.require("etas");
    args.omegas = meta.require("omegas");
    args.eta1_fracs = meta.require("eta1_fracs");
    args.a_list = meta.require("a_list");
  }

  const std::vector<double> rhos = parse_double_list(args.rho_list);
  if (rhos.empty()) throw ParamError("synth-bench: empty --rho-list");
  std::vector<SolverVariant> methods;
  for (const auto& name : split(args.methods, ',')) methods.push_back(parse_method(name));
  if (methods.empty()) throw ParamError("synth-bench: empty --methods");

  std::vector<MethodGrid> grids;
  for (SolverVariant mth : methods) grids.push_back(build_grid(mth, args));

  std::string csv = bench_csv_header() + "\n";
  for (double rho : rhos) {
    SyntheticSpec spec;
    spec.m = args.m;
    spec.n = args.n;
    spec.rho = rho;
    spec.k_max = args.k_max;
    spec.seed = args.seed;
    spec.trials = args.trials;
    const BenchOutput out = run_benchmark(spec, grids);
    for (const auto& r : out.results) csv += bench_csv_row(r) + "\n";
  }

  const fs::path out = prepare_out_dir(args.out_dir);
  write_text(out / "bench.csv", csv);

  RunMeta meta;
  meta.set("subcommand", std::string("synth-bench"));
  meta.set("m", args.m);
  meta.set("n", args.n);
  meta.set("rho_list", args.rho_list);
  meta.set("trials", args.trials);
  meta.set("k_max", args.k_max);
  meta.set("seed", static_cast<unsigned long long>(args.seed));
  meta.set("methods", args.methods);
  meta.set("max_iter", args.max_iter);
  meta.set("fkl_max_iter", args.fkl_max_iter);
  meta.set("tol", args.tol);
  meta.set("lambda_fracs", args.lambda_fracs);
  meta.set("etas", args.etas);
  meta.set("omegas", args.omegas);
  meta.set("eta1_fracs", args.eta1_fracs);
  meta.set("a_list", args.a_list);
  meta.save((out / "run.meta").string());
  std::cout << "wrote " << (out / "bench.csv").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// restore
// ---------------------------------------------------------------------------

struct RestoreArgs {
  std::string input;  // empty => built-in phantom
  bool use_phantom = false;
  std::string method = "all";
  std::uint64_t seed = 1;
  std::string boundary = "reflect";
  double background = 1.0;
  bool no_noise = false;
  long long max_iter = 10000;
  double tol = 1e-4;
  std::string out_dir = ".";
  std::string from_meta;
};

int run_restore(RestoreArgs args) {
  if (!args.from_meta.empty()) {
    const RunMeta meta = RunMeta::load(args.from_meta);
    check_meta_subcommand(meta, "restore");
    args.input = meta.require("input");
    args.use_phantom = meta.require_bool("phantom");
    args.method = meta.require("method");
    args.seed = static_cast<std::uint64_t>(meta.require_int("seed"));
    args.boundary = meta.require("boundary");
    args.background = meta.require_double("background");
    args.no_noise = meta.require_bool("no_noise");
    args.max_iter = meta.require_int("max_iter");
    args.tol = meta.require_double("tol");
  }

  if (args.input.empty()) args.use_phantom = true;
  const GrayImage truth = args.use_phantom ? make_phantom() : load_pgm(args.input);

  RestoreOptions opt;
  if (args.boundary == "reflect") {
    opt.boundary = Boundary::Reflect;
  } else if (args.boundary == "zero") {
    opt.boundary = Boundary::Zero;
  } else {
    throw ParamError("unknown --boundary '" + args.boundary + "'");
  }
  opt.background = args.background;
  opt.add_noise = !args.no_noise;
  opt.max_iter = static_cast<int>(args.max_iter);
  opt.tol = args.tol;

  std::vector<SolverVariant> methods;
  if (args.method == "all") {
    methods = {SolverVariant::RklL1, SolverVariant::FklL1, SolverVariant::Proposed,
               SolverVariant::ProposedA0};
  } else {
    methods = {parse_method(args.method)};
  }

  const fs::path out = prepare_out_dir(args.out_dir);
  save_pgm(truth, (out / "original.pgm").string());
  {
    const PoissonModel model = make_restore_model(truth, opt, args.seed);
    GrayImage observed(truth.width, truth.height);
    observed.intensities = model.b;
    save_pgm(observed, (out / "observed.pgm").string());
  }

  std::string report;
  for (SolverVariant mth : methods) {
    const RestoreOutput r = restore(truth, mth, args.seed, opt);
    const std::string name = to_string(mth);
    save_pgm(r.restored, (out / ("restored_" + name + ".pgm")).string());
    report += "method=" + name;
    report += " lambda=" + fmt_double(r.report.lambda);
    report += " eta=" + fmt_double(r.report.eta);
    report += " omega=" + fmt_double(r.report.omega);
    report += " eta1=" + fmt_double(r.report.eta1);
    report += " a=" + fmt_double(r.report.a);
    report += " psnr_db=" + fmt_double(r.report.psnr_db);
    report += " iterations=" + fmt_int(r.report.iterations);
    report += " converged=" + std::string(r.report.converged ? "1" : "0");
    report += " seed=" + std::to_string(args.seed);
    report += "\n";
    std::cout << "restored " << name << ": psnr_db=" << fmt_double(r.report.psnr_db)
              << "\n";
  }
  write_text(out / "report.txt", report);

  RunMeta meta;
  meta.set("subcommand", std::string("restore"));
  meta.set("input", args.input);
  meta.set("phantom", args.use_phantom);
  meta.set("method", args.method);
  meta.set("seed", static_cast<unsigned long long>(args.seed));
  meta.set("boundary", args.boundary);
  meta.set("background", args.background);
  meta.set("no_noise", args.no_noise);
  meta.set("max_iter", args.max_iter);
  meta.set("tol", args.tol);
  meta.save((out / "run.meta").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bregman proximal-gradient solvers for sparse Poisson inverse "
               "problems, with the external-division backward step"};
  app.require_subcommand(1);

  CurveArgs curve;
  auto* sc_curve = app.add_subcommand(
      "operator-curve", "Sample a shrinkage operator on a 1-D grid (CSV x,y)");
  sc_curve->add_option("--op", curve.op,
                       "ext-div | bregman-prox-bs | bregman-prox-burg | soft | firm");
  sc_curve->add_option("--omega", curve.omega, "external-division weight (> 1)");
  sc_curve->add_option("--eta1", curve.eta1, "inner threshold (0 < eta1 < log omega)");
  sc_curve->add_option("--a", curve.a, "sparsity center (>= 0)");
  sc_curve->add_option("--eta", curve.eta, "prox weight for the Bregman prox ops");
  sc_curve->add_option("--tau", curve.tau, "firm inner threshold");
  sc_curve->add_option("--gamma", curve.gamma, "soft/firm threshold");
  sc_curve->add_option("--grid", curve.grid, "lo:hi:steps sample grid");
  sc_curve->add_option("--out", curve.out_dir, "output directory");
  sc_curve->add_option("--from-meta", curve.from_meta, "replay a run.meta file");

  TraceArgs trace;
  auto* sc_trace = app.add_subcommand(
      "trace", "Convergence trace on one synthetic instance (CSV)");
  sc_trace->add_option("--m", trace.m, "observations");
  sc_trace->add_option("--n", trace.n, "unknowns");
  sc_trace->add_option("--rho", trace.rho, "sparsity fraction");
  sc_trace->add_option("--k-max", trace.k_max, "nonzero magnitude bound");
  sc_trace->add_option("--seed", trace.seed, "RNG seed");
  sc_trace->add_option("--method", trace.method, "rkl | fkl | proposed | proposed-a0");
  sc_trace->add_option("--lambda-frac", trace.lambda_frac,
                       "step size as a fraction of the step bound");
  sc_trace->add_option("--eta", trace.eta, "l1 weight (rkl/fkl)");
  sc_trace->add_option("--omega", trace.omega, "external-division weight");
  sc_trace->add_option("--eta1", trace.eta1, "external-division inner threshold");
  sc_trace->add_option("--a", trace.a, "external-division sparsity center");
  sc_trace->add_option("--max-iter", trace.max_iter,
                       "iteration budget (0 = 5e6 for fkl, 1e4 otherwise)");
  sc_trace->add_option("--tol", trace.tol, "stopping threshold on ||dx||_2");
  sc_trace->add_option("--trace-every", trace.trace_every, "trace sampling stride");
  sc_trace->add_option("--out", trace.out_dir, "output directory");
  sc_trace->add_option("--from-meta", trace.from_meta, "replay a run.meta file");

  BenchArgs bench;
  auto* sc_bench = app.add_subcommand(
      "synth-bench", "Multi-trial synthetic benchmark with grid search (CSV)");
  sc_bench->add_option("--m", bench.m, "observations");
  sc_bench->add_option("--n", bench.n, "unknowns");
  sc_bench->add_option("--rho-list", bench.rho_list, "comma list of sparsity fractions");
  sc_bench->add_option("--trials", bench.trials, "number of trials");
  sc_bench->add_option("--k-max", bench.k_max, "nonzero magnitude bound");
  sc_bench->add_option("--seed", bench.seed, "RNG seed");
  sc_bench->add_option("--methods", bench.methods, "comma list of methods");
  sc_bench->add_option("--max-iter", bench.max_iter, "budget for rkl/proposed");
  sc_bench->add_option("--fkl-max-iter", bench.fkl_max_iter,
                       "budget for fkl (desk default 1e5; paper scale 5e6)");
  sc_bench->add_option("--tol", bench.tol, "stopping threshold");
  sc_bench->add_option("--lambda-fracs", bench.lambda_fracs, "grid override");
  sc_bench->add_option("--etas", bench.etas, "grid override (rkl/fkl l1 weights)");
  sc_bench->add_option("--omegas", bench.omegas, "grid override (proposed)");
  sc_bench->add_option("--eta1-fracs", bench.eta1_fracs,
                       "grid override (fractions of log omega)");
  sc_bench->add_option("--a-list", bench.a_list, "grid override (proposed centers)");
  sc_bench->add_option("--out", bench.out_dir, "output directory");
  sc_bench->add_option("--from-meta", bench.from_meta, "replay a run.meta file");

  RestoreArgs restore_args;
  auto* sc_restore = app.add_subcommand(
      "restore", "Blur + Poisson-corrupt + restore an image (PGM in/out)");
  sc_restore->add_option("--input", restore_args.input, "input PGM (P5, maxval 255)");
  sc_restore->add_flag("--phantom", restore_args.use_phantom,
                       "use the built-in 64x64 phantom");
  sc_restore->add_option("--method", restore_args.method,
                         "all | rkl | fkl | proposed | proposed-a0");
  sc_restore->add_option("--seed", restore_args.seed, "RNG seed");
  sc_restore->add_option("--boundary", restore_args.boundary, "reflect | zero");
  sc_restore->add_option("--background", restore_args.background,
                         "background counts added to the blurred image");
  sc_restore->add_flag("--no-noise", restore_args.no_noise,
                       "observe the blurred image without Poisson noise");
  sc_restore->add_option("--max-iter", restore_args.max_iter, "iteration budget");
  sc_restore->add_option("--tol", restore_args.tol, "stopping threshold");
  sc_restore->add_option("--out", restore_args.out_dir, "output directory");
  sc_restore->add_option("--from-meta", restore_args.from_meta, "replay a run.meta file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_curve->parsed()) return run_curve(curve);
    if (sc_trace->parsed()) return run_trace(trace);
    if (sc_bench->parsed()) return run_bench(bench);
    if (sc_restore->parsed()) return run_restore(restore_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
