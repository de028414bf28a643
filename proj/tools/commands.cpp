#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <omp.h>
#include <sstream>

#include "banklaine/dilatation.hpp"
#include "banklaine/errors.hpp"
#include "banklaine/glue_maps.hpp"
#include "banklaine/oscillation_verify.hpp"
#include "banklaine/sequence_builder.hpp"

namespace bl::cli {

namespace {

using cd = std::complex<double>;
using nlohmann::json;

struct PlanArgs {
  double gamma = 0, lambda = 0, delta = 0;
  int K = 0;
  std::string plan_file;
  // one option per subcommand; the shared fields are filled by whichever ran
  std::vector<CLI::Option*> gamma_opts, lambda_opts;
  bool given(const std::vector<CLI::Option*>& v) const {
    return std::any_of(v.begin(), v.end(), [](const CLI::Option* o) { return o->count() > 0; });
  }
  bool has_gamma() const { return given(gamma_opts); }
  bool has_lambda() const { return given(lambda_opts); }
};

void add_plan_options(CLI::App* app, PlanArgs& p) {
  auto* g = app->add_option("--gamma", p.gamma, "growth exponent gamma >= 1");
  auto* l = app->add_option("--lambda", p.lambda, "exponent of convergence lambda >= 1");
  g->excludes(l);
  p.gamma_opts.push_back(g);
  p.lambda_opts.push_back(l);
  app->add_option("--delta", p.delta, "pole density delta in [0,1]");
  app->add_option("--K", p.K, "number of materialized strips");
  app->add_option("--plan", p.plan_file, "plan JSON instead of --gamma/--lambda, --delta, --K");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

SequencePlan build_plan(const PlanArgs& a, std::ostream& err) {
  SequencePlan plan;
  if (!a.plan_file.empty()) {
    if (a.has_gamma() || a.has_lambda()) throw PreconditionError("--plan excludes --gamma/--lambda");
    try {
      plan = plan_from_json(read_json(a.plan_file));
    } catch (const json::exception& e) {
      throw PreconditionError(a.plan_file + ": " + e.what());
    }
  } else {
    if (!a.has_gamma() && !a.has_lambda()) throw PreconditionError("exactly one of --gamma, --lambda is required");
    if (a.K < 1) throw PreconditionError("--K must be a positive integer");
    double gamma = a.gamma;
    if (a.has_lambda()) {
      if (a.lambda < 1) throw PreconditionError("--lambda must be >= 1");
      gamma = gamma_from_lambda(a.lambda);
    }
    plan = make_plan(gamma, a.delta, a.K);
  }
  err << "plan: gamma=" << plan.gamma << " rho=" << plan.rho << " sigma=" << plan.sigma
      << " delta=" << plan.delta << " K=" << plan.K << "\n";
  return plan;
}

// Output sink: a file when a path is given, else the command stream.
struct Sink {
  std::ofstream file;
  std::ostream* os;
  std::string path;
  Sink(const std::string& p, std::ostream& fallback) : os(&fallback), path(p) {
    if (!p.empty()) {
      file.open(p, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write " + p);
      os = &file;
    }
    *os << std::setprecision(17);
  }
  std::ostream& operator()() { return *os; }
};

void write_gnuplot_stub(const std::string& csv, const std::string& xlabel, const std::string& ylabel,
                        bool logscale, const std::string& overlay = "") {
  if (csv.empty()) return;
  std::ofstream gp(csv + ".gp", std::ios::binary);
  if (!gp) throw std::runtime_error("cannot write " + csv + ".gp");
  gp << "set datafile separator ','\n";
  gp << "set xlabel '" << xlabel << "'\nset ylabel '" << ylabel << "'\n";
  if (logscale) gp << "set logscale xy\n";
  gp << "plot '" << csv << "' every ::1 using 1:2 with linespoints title '" << ylabel << "'";
  if (!overlay.empty()) gp << ", \\\n     " << overlay;
  gp << "\n";
}

std::pair<int, int> parse_pair(const std::string& s) {
  const auto c = s.find(',');
  if (c == std::string::npos) throw PreconditionError("expected m,n but got '" + s + "'");
  try {
    return {std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))};
  } catch (const std::exception&) {
    throw PreconditionError("expected m,n but got '" + s + "'");
  }
}

std::vector<cd> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::vector<cd> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || (lineno == 1 && std::isalpha(static_cast<unsigned char>(line[0]))))
      continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double re, im;
    if (!(ls >> re >> im)) throw PreconditionError(path + ":" + std::to_string(lineno) + ": expected re,im");
    pts.emplace_back(re, im);
  }
  return pts;
}

struct VerifyFailure : std::runtime_error {
  json payload;
  explicit VerifyFailure(json j) : std::runtime_error("verification failed"), payload(std::move(j)) {}
};

void require(bool ok, const std::string& tag, const json& detail) {
  if (!ok) throw VerifyFailure({{"failed", tag}, {"detail", detail}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bank-Laine construction toolkit", "banklaine"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the default)");

  PlanArgs pa;
  std::string out_path;

  auto* plan_cmd = app.add_subcommand("plan", "build a plan and print it as JSON");
  add_plan_options(plan_cmd, pa);
  plan_cmd->add_option("--out", out_path, "output file");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate U, V, W, Q or G at points");
  add_plan_options(eval_cmd, pa);
  std::string map_name = "G", points_file;
  double re = 0, im = 0;
  eval_cmd->add_option("--map", map_name, "U | V | W | Q | G")->check(CLI::IsMember({"U", "V", "W", "Q", "G"}));
  eval_cmd->add_option("--re", re, "real part");
  eval_cmd->add_option("--im", im, "imaginary part");
  eval_cmd->add_option("--points", points_file, "CSV of re,im");
  eval_cmd->add_option("--out", out_path, "output CSV");

  auto* phi_cmd = app.add_subcommand("phi", "tabulate phi and phi' between two pairs");
  std::string from_s = "0,0", to_s = "0,1";
  double x_lo = -10, x_hi = 10;
  int n_points = 41;
  phi_cmd->add_option("--from", from_s, "m,n of the source pair");
  phi_cmd->add_option("--to", to_s, "m,n of the target pair");
  phi_cmd->add_option("--x-lo", x_lo);
  phi_cmd->add_option("--x-hi", x_hi);
  phi_cmd->add_option("--points", n_points);
  phi_cmd->add_option("--out", out_path, "output CSV");

  auto* fp_cmd = app.add_subcommand("fixed-points", "fixed points of phi");
  fp_cmd->add_option("--from", from_s, "m,n of the source pair");
  fp_cmd->add_option("--to", to_s, "m,n of the target pair");
  fp_cmd->add_option("--x-lo", x_lo);
  fp_cmd->add_option("--x-hi", x_hi);
  fp_cmd->add_option("--out", out_path, "output JSON");

  auto* seams_cmd = app.add_subcommand("seams", "continuity of U, V, G across all seams");
  add_plan_options(seams_cmd, pa);
  double tol = 1e-8;
  int y_points = 64;
  seams_cmd->add_option("--tol", tol, "log-value tolerance");
  seams_cmd->add_option("--y-points", y_points);
  seams_cmd->add_option("--out", out_path, "output JSON");

  auto* dil_cmd = app.add_subcommand("dilatation", "dyadic annulus integrals of (K_G - 1)/|z|^2");
  add_plan_options(dil_cmd, pa);
  int j_min = 2, j_max = 8, n_r = 64, n_theta = 512;
  dil_cmd->add_option("--j-min", j_min);
  dil_cmd->add_option("--j-max", j_max);
  dil_cmd->add_option("--n-r", n_r);
  dil_cmd->add_option("--n-theta", n_theta);
  dil_cmd->add_option("--out", out_path, "output CSV");

  auto* zeros_cmd = app.add_subcommand("zeros", "counting curve of zeros or poles");
  add_plan_options(zeros_cmd, pa);
  std::string kind_s = "zeros-G";
  double r_min = 1, r_max = 100;
  bool log2 = false;
  double min_decades = 1.5;
  for (auto* c : {zeros_cmd}) {
    c->add_option("--kind", kind_s, "zeros-U | zeros-V | zeros-G | poles-U | poles-V | poles-G");
    c->add_option("--r-min", r_min);
    c->add_option("--r-max", r_max);
    c->add_option("--points", n_points);
    c->add_option("--out", out_path, "output CSV");
  }
  auto* exp_cmd = app.add_subcommand("exponent", "fit the counting exponent");
  add_plan_options(exp_cmd, pa);
  exp_cmd->add_option("--kind", kind_s, "zeros-U | zeros-V | zeros-G | poles-U | poles-V | poles-G");
  exp_cmd->add_option("--r-min", r_min);
  exp_cmd->add_option("--r-max", r_max);
  exp_cmd->add_option("--points", n_points);
  exp_cmd->add_flag("--log2", log2, "fit log(n (log r)^2) instead of log n");
  exp_cmd->add_option("--min-decades", min_decades);
  exp_cmd->add_option("--out", out_path, "output JSON");

  auto* asym_cmd = app.add_subcommand("asymptotics", "ray asymptotics of G and the explicit anchor");
  add_plan_options(asym_cmd, pa);
  std::string side_s = "U";
  std::vector<double> thetas{0.0};
  double lr_lo = 10, lr_hi = 30;
  bool anchor = false;
  asym_cmd->add_option("--side", side_s, "U | V")->check(CLI::IsMember({"U", "V"}));
  asym_cmd->add_option("--theta", thetas, "ray angles")->delimiter(',');
  asym_cmd->add_option("--exp-lo", lr_lo, "smallest log of r^rho (U) or r^sigma (V)");
  asym_cmd->add_option("--exp-hi", lr_hi, "largest log of r^rho (U) or r^sigma (V)");
  asym_cmd->add_option("--points", n_points);
  asym_cmd->add_flag("--anchor", anchor, "check the explicit rho = 1 solution instead");
  asym_cmd->add_option("--out", out_path, "output CSV");

  auto* ver_cmd = app.add_subcommand("verify", "verification suites");
  std::string suite;
  int k1 = 0, k2 = 0, k_max = 200;
  ver_cmd->add_option("suite", suite, "ode | wronskian | banklaine | schwarzian | identity | lemma3 | lemma5")
      ->required()
      ->check(CLI::IsMember({"ode", "wronskian", "banklaine", "schwarzian", "identity", "lemma3", "lemma5"}));
  ver_cmd->add_option("--k1", k1);
  ver_cmd->add_option("--k2", k2);
  ver_cmd->add_option("--k-max", k_max, "strip indices for lemma5");
  add_plan_options(ver_cmd, pa);
  ver_cmd->add_option("--out", out_path, "output JSON");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*plan_cmd) {
      const SequencePlan plan = build_plan(pa, err);
      json j = plan_to_json(plan);
      Sink s(out_path, out);
      s() << j.dump(2) << "\n";
      return kOk;
    }
    if (*phi_cmd) {
      const auto [fm, fn] = parse_pair(from_s);
      const auto [tm, tn] = parse_pair(to_s);
      if (n_points < 2 || !(x_lo < x_hi)) throw PreconditionError("need --points >= 2 and --x-lo < --x-hi");
      Sink s(out_path, out);
      s() << "x,phi,phi_prime\n";
      for (int i = 0; i < n_points; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (n_points - 1);
        s() << x << "," << phi({fm, fn}, {tm, tn}, x) << "," << phi_prime({fm, fn}, {tm, tn}, x) << "\n";
      }
      write_gnuplot_stub(out_path, "x", "phi", false);
      return kOk;
    }
    if (*fp_cmd) {
      const auto [fm, fn] = parse_pair(from_s);
      const auto [tm, tn] = parse_pair(to_s);
      const FixedPointReport r = fixed_points({fm, fn}, {tm, tn}, x_lo, x_hi);
      const char* tag = r.tag == FixedPointCase::Greater ? "greater" : r.tag == FixedPointCase::Equal ? "equal" : "less";
      json j{{"from", {fm, fn}}, {"to", {tm, tn}}, {"points", r.points}, {"case", tag},
             {"deviation", r.deviation}, {"degenerate", r.degenerate}, {"sign_margin", r.sign_margin},
             {"sup_below_logN", r.sup_below_logN}};
      Sink s(out_path, out);
      s() << j.dump(2) << "\n";
      return kOk;
    }
    if (*eval_cmd) {
      const GluedMapCtx ctx(build_plan(pa, err));
      std::vector<cd> pts = points_file.empty() ? std::vector<cd>{cd(re, im)} : read_points(points_file);
      Sink s(out_path, out);
      s() << "re,im,log_abs,arg\n";
      for (const cd z : pts) {
        LogComplex v;
        if (map_name == "U") v = ctx.eval_U(z);
        else if (map_name == "V") v = ctx.eval_V(z);
        else if (map_name == "W") v = ctx.eval_W(z);
        else if (map_name == "G") v = ctx.eval_G(z);
        else v = LogComplex::from_value(ctx.eval_Q(z));
        s() << z.real() << "," << z.imag() << "," << v.log_mag << "," << v.arg << "\n";
      }
      return kOk;
    }
    if (*seams_cmd) {
      const GluedMapCtx ctx(build_plan(pa, err));
      std::vector<double> ys;
      const double ytop = 2 * std::numbers::pi * (ctx.K() - 1);
      for (int i = 1; i <= y_points; ++i) ys.push_back(ytop * i / (y_points + 1));
      const SeamReport r = boundary_consistency_check(ctx, ys);
      json j{{"max_UV", r.max_UV}, {"max_U_strip", r.max_U_strip}, {"max_V_strip", r.max_V_strip},
             {"max_G_sector", r.max_G_sector}, {"max_Q", r.max_Q}, {"samples", r.samples}, {"tol", tol}};
      Sink s(out_path, out);
      s() << j.dump(2) << "\n";
      const double worst = std::max({r.max_UV, r.max_U_strip, r.max_V_strip, r.max_G_sector, r.max_Q});
      require(worst <= tol, "gluing continuity", j);
      return kOk;
    }
    if (*dil_cmd) {
      const GluedMapCtx ctx(build_plan(pa, err));
      if (j_min < 0 || j_max < j_min) throw PreconditionError("need 0 <= --j-min <= --j-max");
      Sink s(out_path, out);
      s() << "j,integral,coarse,err_estimate\n";
      for (int j = j_min; j <= j_max; ++j) {
        const AnnulusIntegral a = dilatation_integral(ctx, std::ldexp(1.0, j), std::ldexp(1.0, j + 1), n_r, n_theta);
        s() << j << "," << a.value << "," << a.coarse << "," << a.err_estimate << "\n";
      }
      write_gnuplot_stub(out_path, "j", "integral_j", false);
      return kOk;
    }
    if (*zeros_cmd || *exp_cmd) {
      const CountKind kind = count_kind_from_name(kind_s);
      const GluedMapCtx ctx(build_plan(pa, err));
      const bool poles_only = kind == CountKind::PolesU || kind == CountKind::PolesV || kind == CountKind::PolesG;
      const ZeroCatalog cat(ctx, ExecPolicy::Parallel, !poles_only);
      if (r_max > cat.depth(kind))
        throw DepthError("--r-max exceeds the plan depth " + std::to_string(cat.depth(kind)) + " for " + kind_s);
      const CountingCurve c = counting_curve(cat, kind, log_spaced(r_min, r_max, n_points));
      if (*zeros_cmd) {
        Sink s(out_path, out);
        s() << "r,count\n";
        for (size_t i = 0; i < c.radii.size(); ++i) s() << c.radii[i] << "," << c.counts[i] << "\n";
        write_gnuplot_stub(out_path, "r", "count", true);
        return kOk;
      }
      const ExponentFit f = counting_exponent_fit(c, log2, min_decades);
      json j{{"kind", kind_s},         {"slope", f.fit.slope},   {"slope_lo", f.fit.slope_lo},
             {"slope_hi", f.fit.slope_hi}, {"intercept", f.fit.intercept}, {"r2", f.fit.r2},
             {"points", f.fit.n},      {"decades", f.decades},   {"log2_corrected", f.log2_corrected},
             {"rho", ctx.plan().rho},  {"sigma", ctx.plan().sigma}, {"gamma", ctx.plan().gamma}};
      Sink s(out_path, out);
      s() << j.dump(2) << "\n";
      return kOk;
    }
    if (*asym_cmd) {
      if (anchor) {
        const AnchorReport a = rho_one_anchor(log_spaced(5, 40, 4), {-1.2, -0.6, 0.0, 0.6, 1.2});
        json j{{"max_dev_E_right", a.max_dev_E_right}, {"max_dev_E_left", a.max_dev_E_left},
               {"max_dev_A_right", a.max_dev_A_right}, {"max_dev_A_left", a.max_dev_A_left},
               {"ratio_E_right", a.ratio_E_right},     {"ratio_A_right", a.ratio_A_right},
               {"ratio_A_left", a.ratio_A_left}};
        Sink s(out_path, out);
        s() << j.dump(2) << "\n";
        return kOk;
      }
      const GluedMapCtx ctx(build_plan(pa, err));
      const Side side = side_s == "U" ? Side::U : Side::V;
      const double e = side == Side::U ? ctx.plan().rho : ctx.plan().sigma;
      if (n_points < 2 || !(lr_lo < lr_hi)) throw PreconditionError("need --points >= 2 and --exp-lo < --exp-hi");
      std::vector<double> lr;
      for (int i = 0; i < n_points; ++i) lr.push_back((lr_lo + (lr_hi - lr_lo) * i / (n_points - 1)) / e);
      const RayReport r = ray_asymptotics_check(ctx, side, thetas, lr);
      Sink s(out_path, out);
      s() << "theta,r,ratio\n";
      for (size_t i = 0; i < r.ratio.size(); ++i)
        s() << r.theta[i] << "," << std::exp(r.log_r[i]) << "," << r.ratio[i] << "\n";
      write_gnuplot_stub(out_path, "r", "ratio", false);
      err << "max |ratio - 1| = " << r.max_deviation << ", skipped " << r.skipped << " points beyond depth\n";
      return kOk;
    }
    if (*ver_cmd) {
      json j;
      if (suite == "lemma3" || suite == "lemma5") {
        VerificationReport rep;
        if (suite == "lemma3") {
          rep = lemma3_fit();
        } else {
          const GluedMapCtx ctx(build_plan(pa, err));
          rep = lemma5_fit(ctx, k_max);
        }
        j = rep.to_json();
        Sink s(out_path, out);
        s() << j.dump(2) << "\n";
        for (const auto& [name, ok] : rep.pass) require(ok, suite + ":" + name, j);
        return kOk;
      }
      if (k1 < 0 || k2 < 0) throw PreconditionError("--k1 and --k2 must be nonnegative");
      const SolutionSpec spec = solution_coefficients(k1, k2);
      j["k1"] = k1;
      j["k2"] = k2;
      double worst = 0, bound = 1e-8;
      if (suite == "banklaine") {
        const BankLaineReport r = banklaine_check(spec);
        j.update({{"zeros", r.zeros}, {"max_deviation", r.max_deviation}, {"plus_ones", r.plus_ones},
                  {"max_root_residual", r.max_root_residual}});
        worst = r.max_deviation;
        bound = 1e-7;
      } else {
        const OdeSweep sw = ode_sweep(spec);
        const std::map<std::string, double> v{{"ode", sw.ode},
                                              {"wronskian", sw.wronskian},
                                              {"schwarzian", std::max(sw.schwarzian, sw.mobius)},
                                              {"identity", sw.identity}};
        worst = v.at(suite);
        if (suite == "wronskian") bound = 1e-9;
        j.update({{"max_deviation", worst}, {"points", sw.points}, {"pole_points", sw.poles}});
      }
      j["suite"] = suite;
      j["bound"] = bound;
      Sink s(out_path, out);
      s() << j.dump(2) << "\n";
      require(worst <= bound, suite, j);
      return kOk;
    }
  } catch (const VerifyFailure& f) {
    err << f.payload.dump() << "\n";
    return kVerifyFailed;
  } catch (const DepthError& e) {
    err << "depth error: " << e.what() << "\n";
    return kDepthError;
  } catch (const PreconditionError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternalError;
  }
  return kConfigError;
}

}  // namespace bl::cli
