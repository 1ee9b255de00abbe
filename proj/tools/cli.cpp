#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "pathforest/cde.hpp"
#include "pathforest/generators.hpp"
#include "pathforest/io.hpp"
#include "pathforest/rough.hpp"

namespace pathforest::cli {

namespace {

using nlohmann::json;

struct GridFlags {
  double amin = 0, amax = 0, ratio = 0;
  int scales = 0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--amin", amin, "smallest scale");
    cmd->add_option("--amax", amax, "largest scale");
    cmd->add_option("--scales", scales, "number of scales");
    cmd->add_option("--ratio", ratio, "geometric ratio between scales");
  }
  ScaleGrid make(const SampledPath& path) const {
    if (amin > 0 && amax > 0) {
      const int n = scales > 0 ? scales : 40;
      return ScaleGrid::geometric(amax, amin, n);
    }
    const int n = scales > 0 ? scales : 40;
    const double r = ratio > 0 ? ratio : 0.8408964152537145;
    return ScaleGrid::auto_for(path, n, r);
  }
};

std::string slurp(const std::string& file) {
  std::ifstream in(file);
  if (!in) fail(Errc::io_error, "cannot open " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::variant<SampledPath, CadlagPath> load_any(const std::string& file) {
  std::stringstream ss(slurp(file));
  return read_any_csv(ss);
}

SampledPath load_continuous(const std::string& file) {
  auto v = load_any(file);
  if (std::holds_alternative<SampledPath>(v))
    return std::get<SampledPath>(std::move(v));
  return embed_cadlag(std::get<CadlagPath>(v)).continuous;
}

void emit(const std::string& out_file, const std::string& text) {
  if (out_file.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_file);
    if (!out) fail(Errc::io_error, "cannot write " + out_file);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  }
}

Integrand parse_integrand(const std::string& desc, const SampledPath& path) {
  if (desc == "time") return Integrand::time();
  if (desc == "value")
    return Integrand::compose([](double x) { return x; }, path);
  if (desc.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::stringstream ss(desc.substr(5));
    std::string cell;
    while (std::getline(ss, cell, ',')) coeffs.push_back(std::stod(cell));
    if (coeffs.empty()) fail(Errc::io_error, "empty polynomial");
    return Integrand::poly(std::move(coeffs));
  }
  if (desc.rfind("file:", 0) == 0) {
    std::stringstream ss(slurp(desc.substr(5)));
    return Integrand::sampled(read_path_csv(ss));
  }
  fail(Errc::io_error, "unknown integrand descriptor: " + desc);
}

int cmd_generate(const std::string& model, std::size_t n, double hurst,
                 double sigma, double alpha, double rate, double star_alpha,
                 int star_k, const std::string& fixture, std::uint64_t seed,
                 const std::string& out_file) {
  std::stringstream out;
  if (model == "fbm") {
    write_path_csv(out, gen_fbm(n, hurst, sigma, seed));
  } else if (model == "bm") {
    write_path_csv(out, gen_brownian(n, sigma, seed));
  } else if (model == "stable") {
    write_cadlag_csv(out, gen_stable(n, alpha, sigma, seed));
  } else if (model == "cpoisson") {
    write_cadlag_csv(out, gen_cpoisson(rate, seed));
  } else if (model == "star") {
    write_path_csv(out, star_path(star_alpha, star_k));
  } else if (model == "fixture") {
    if (fixture == "P0") {
      write_path_csv(out, fixture_p0());
    } else if (fixture == "P1") {
      write_path_csv(out, fixture_p1());
    } else if (fixture.rfind("zigzag:", 0) == 0) {
      write_path_csv(out, zigzag(std::stoi(fixture.substr(7))));
    } else {
      fail(Errc::io_error, "unknown fixture: " + fixture);
    }
  } else {
    fail(Errc::io_error, "unknown model: " + model);
  }
  emit(out_file, out.str());
  return 0;
}

int cmd_profile(const std::string& in_file, const GridFlags& gf,
                const std::string& out_file, bool as_json) {
  const SampledPath path = load_continuous(in_file);
  const TrimProfile prof = trim_profile(path, gf.make(path));
  if (as_json) {
    json rows = json::array();
    for (std::size_t k = 0; k < prof.scales.size(); ++k)
      rows.push_back({prof.scales[k], prof.counts[k], prof.lengths[k]});
    emit(out_file, json{{"schema", 1},
                        {"floor", prof.discretization_floor},
                        {"rows", rows}}
                       .dump());
  } else {
    std::stringstream out;
    write_profile_csv(out, prof);
    emit(out_file, out.str());
  }
  return 0;
}

// Young precondition 1/p + 1/q > 1, estimated from the data; advisory only.
void warn_young_indices(const SampledPath& path, const std::string& rho_desc) {
  try {
    const TrimProfile pw = trim_profile(path, ScaleGrid::auto_for(path, 30));
    const double p_hat = variation_index(pw).estimate;
    double q_hat = 1.0;
    if (rho_desc.rfind("file:", 0) == 0) {
      std::stringstream ss(slurp(rho_desc.substr(5)));
      const SampledPath rp = read_path_csv(ss);
      const TrimProfile pr = trim_profile(rp, ScaleGrid::auto_for(rp, 30));
      q_hat = variation_index(pr).estimate;
    }
    if (1.0 / p_hat + 1.0 / q_hat <= 1.0)
      std::cerr << "warning: empirical indices violate the Young condition "
                << "(1/" << p_hat << " + 1/" << q_hat << " <= 1)\n";
  } catch (const Error&) {
    // too few scales to judge; stay silent
  }
}

int cmd_integrate(const std::string& in_file, const std::string& rho_desc,
                  const std::string& kind, const GridFlags& gf, double tol,
                  double q_exp, const std::string& out_file) {
  // cadlag inputs integrate through the graph embedding; integrand
  // descriptors stay on the original clock (value = the graph height)
  auto loaded = load_any(in_file);
  SampledPath path;
  std::optional<GraphEmbedding> emb;
  if (std::holds_alternative<SampledPath>(loaded)) {
    path = std::get<SampledPath>(std::move(loaded));
  } else {
    emb = embed_cadlag(std::get<CadlagPath>(loaded));
    path = emb->continuous;
  }
  Integrand rho = parse_integrand(rho_desc, path);
  if (emb && rho_desc != "value") rho = embed_integrand(rho, *emb);
  const double tol_eff = tol > 0 ? tol : 1e-7;
  if (kind == "tree") {
    const IntegralReport rep =
        tree_integral(rho, path, gf.make(path), tol_eff);
    json out = json::parse(integral_json(rep));
    if (q_exp > 0)
      out["vq_lower_bound"] =
          conditional_variation_lb(rho, path, q_exp, gf.make(path));
    emit(out_file, out.dump());
  } else if (kind == "young") {
    warn_young_indices(path, rho_desc);
    const double v = young(rho, path, tol_eff);
    emit(out_file, json{{"schema", 1}, {"value", v}}.dump());
  } else if (kind == "stieltjes") {
    emit(out_file, json{{"schema", 1}, {"value", stieltjes(rho, path)}}.dump());
  } else if (kind == "all") {
    warn_young_indices(path, rho_desc);
    const IntegralReport rep =
        tree_integral(rho, path, gf.make(path), tol_eff, false);
    json out{{"schema", 1},
             {"tree", rep.value},
             {"young", young(rho, path, tol_eff)},
             {"stieltjes", stieltjes(rho, path)},
             {"converged", rep.converged}};
    if (q_exp > 0)
      out["vq_lower_bound"] =
          conditional_variation_lb(rho, path, q_exp, gf.make(path));
    emit(out_file, out.dump());
  } else {
    fail(Errc::io_error, "unknown integral kind: " + kind);
  }
  return 0;
}

int cmd_rough(const std::string& in_file, double r, double tol,
              const std::string& out_file) {
  // multi-column CSV: t,x1,...,xd
  std::stringstream ss(slurp(in_file));
  std::string line;
  std::vector<std::vector<double>> cols;
  bool header = true;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream row(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(row, cell, ',')) {
      if (cols.size() <= c) cols.resize(c + 1);
      cols[c].push_back(std::stod(cell));
      ++c;
    }
  }
  if (cols.size() < 3) fail(Errc::io_error, "need t,x1,x2 columns");
  std::vector<SampledPath> comps;
  const auto& t = cols[0];
  const double t0 = t.front(), span = t.back() - t.front();
  std::vector<double> times(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) times[i] = (t[i] - t0) / span;
  times.front() = 0.0;
  times.back() = 1.0;
  for (std::size_t c = 1; c < cols.size(); ++c)
    comps.push_back(SampledPath::from_knots(times, cols[c]));

  const RoughPath rp = RoughPath::lift_linear(comps, r);
  // integral of the second component against the first
  ControlledIntegrand ci;
  const int d = rp.dimension();
  ci.rho = [&rp, d](double u) {
    std::vector<double> row(static_cast<std::size_t>(d), 0.0);
    row[0] = rp.component(1, u);
    return row;
  };
  ci.phi = [d](double) {
    Tensor2 m(d);
    m.at(1, 0) = 1.0;
    return m;
  };
  const RoughResult res =
      rough_integral(ci, rp, 0.0, 1.0, tol > 0 ? tol : 1e-6);

  // Chen residual on a fixed triple set
  double chen = 0;
  for (int i = 1; i <= 8; ++i) {
    const double s = i / 10.0, u = (i + 1) / 10.0, tt = (i + 2) / 10.0;
    const Tensor2 g_st = rp.gamma(s, tt);
    const Tensor2 g_su = rp.gamma(s, u);
    const Tensor2 g_ut = rp.gamma(u, tt);
    const auto xs = rp.point(s), xu = rp.point(u), xt = rp.point(tt);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double expect =
            g_su.at(a, b) + g_ut.at(a, b) +
            (xu[static_cast<std::size_t>(a)] - xs[static_cast<std::size_t>(a)]) *
                (xt[static_cast<std::size_t>(b)] - xu[static_cast<std::size_t>(b)]);
        chen = std::max(chen, std::abs(g_st.at(a, b) - expect));
      }
  }

  emit(out_file, json{{"schema", 1},
                      {"value", res.value},
                      {"local_error_exponent", res.local_error_exponent},
                      {"depth", res.depth},
                      {"chen_residual", chen}}
                     .dump());
  return 0;
}

int cmd_cde(const std::string& in_file, const std::string& eta_file,
            const std::string& field_name, double x0, double tol,
            const std::string& scheme, const std::string& out_file,
            const std::string& solution_file) {
  std::vector<SampledPath> drivers;
  drivers.push_back(load_continuous(in_file));
  if (!eta_file.empty()) drivers.push_back(load_continuous(eta_file));
  const std::size_t d = drivers.size();

  CdeField field;
  if (field_name == "linear") {
    field.f = [d](double x) { return std::vector<double>(d, x); };
    field.df = [d](double) { return std::vector<double>(d, 1.0); };
  } else if (field_name == "identity") {
    field.f = [d](double) { return std::vector<double>(d, 1.0); };
    field.df = [d](double) { return std::vector<double>(d, 0.0); };
  } else {
    fail(Errc::io_error, "unknown field: " + field_name);
  }

  CdeOptions opt;
  if (tol > 0) opt.tol = tol;
  opt.scheme = scheme == "taylor" ? CdeScheme::taylor : CdeScheme::picard;
  const SampledPath x = cde_solve(field, drivers, x0, opt);
  if (!solution_file.empty()) {
    std::stringstream out;
    write_path_csv(out, x);
    emit(solution_file, out.str());
  }
  emit(out_file, json{{"schema", 1},
                      {"x0", x0},
                      {"x1", x.last_value()},
                      {"grid_points", x.size()}}
                     .dump());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"pathforest: real-tree analytics for one-dimensional paths"};
  app.require_subcommand(1);

  // shared flag storage
  std::string in_file, out_file, solution_file;
  std::string model = "fbm", fixture = "P0", rho_desc = "time";
  std::string kind = "tree", field_name = "linear", scheme = "picard";
  std::string eta_file;
  std::uint64_t seed = 0;
  std::size_t n = 1024;
  double hurst = 0.5, sigma = 1.0, alpha = 1.5, rate = 10.0;
  double star_alpha = 0.5;
  int star_k = 8;
  double p_exp = 2.0, q_exp = 0.0, tol = 0, scale = 0, r_hoelder = 0.45;
  double x0 = 1.0;
  bool as_json = false;
  GridFlags gf;

  auto* g = app.add_subcommand("generate", "emit a synthetic path as CSV");
  g->add_option("--model", model,
                "fbm | bm | stable | cpoisson | star | fixture");
  g->add_option("--n", n, "sample count");
  g->add_option("--hurst", hurst, "Hurst parameter");
  g->add_option("--sigma", sigma, "scale coefficient");
  g->add_option("--alpha", alpha, "stable index");
  g->add_option("--rate", rate, "compound-Poisson rate");
  g->add_option("--star-alpha", star_alpha, "star path exponent");
  g->add_option("--star-k", star_k, "star path peak count");
  g->add_option("--fixture", fixture, "P0 | P1 | zigzag:<k>");
  g->add_option("--seed", seed, "random seed");
  g->add_option("-o,--output", out_file, "output file");

  auto* tr = app.add_subcommand("tree", "build the merge tree, dump JSON");
  tr->add_option("-i,--input", in_file, "input CSV")->required();
  tr->add_option("-o,--output", out_file, "output file");

  auto* tm = app.add_subcommand("trim", "stopping times at one scale");
  tm->add_option("-i,--input", in_file, "input CSV")->required();
  tm->add_option("-a,--scale", scale, "trimming scale")->required();
  tm->add_option("-o,--output", out_file, "output file");

  auto* pr = app.add_subcommand("profile", "scale profile a,N,L as CSV");
  pr->add_option("-i,--input", in_file, "input CSV")->required();
  gf.attach(pr);
  pr->add_flag("--json", as_json, "emit JSON instead of CSV");
  pr->add_option("-o,--output", out_file, "output file");

  auto* pv = app.add_subcommand("pvar", "p-variation bounds and exact value");
  pv->add_option("-i,--input", in_file, "input CSV")->required();
  pv->add_option("-p", p_exp, "variation exponent");
  gf.attach(pv);
  pv->add_option("-o,--output", out_file, "output file");

  auto* dm = app.add_subcommand("dimension", "variation-index regression");
  dm->add_option("-i,--input", in_file, "input CSV")->required();
  gf.attach(dm);
  dm->add_option("-o,--output", out_file, "output file");

  auto* hu = app.add_subcommand("hurst", "Hurst estimators");
  hu->add_option("-i,--input", in_file, "input CSV")->required();
  gf.attach(hu);
  hu->add_option("-a,--scale", scale, "drawdown statistic scale (0 = auto)");
  hu->add_option("-o,--output", out_file, "output file");

  auto* ig = app.add_subcommand("integrate", "integrals against the path");
  ig->add_option("-i,--input", in_file, "input CSV")->required();
  ig->add_option("--rho", rho_desc, "time | value | poly:c0,c1,.. | file:<csv>");
  ig->add_option("--kind", kind, "tree | young | stieltjes | all");
  ig->add_option("--tol", tol, "stabilization tolerance");
  ig->add_option("-q", q_exp, "also report the V_q(rho|w) lower bound");
  gf.attach(ig);
  ig->add_option("-o,--output", out_file, "output file");

  auto* rg = app.add_subcommand("rough", "rough integral of x2 against x1");
  rg->add_option("-i,--input", in_file, "multi-column CSV t,x1,x2")->required();
  rg->add_option("--r", r_hoelder, "declared Hoelder exponent");
  rg->add_option("--tol", tol, "refinement tolerance");
  rg->add_option("-o,--output", out_file, "output file");

  auto* cd = app.add_subcommand("cde", "controlled differential equation");
  cd->add_option("-i,--input", in_file, "driver CSV")->required();
  cd->add_option("--eta", eta_file, "second driver CSV");
  cd->add_option("--field", field_name, "linear | identity");
  cd->add_option("--x0", x0, "initial value");
  cd->add_option("--tol", tol, "Picard tolerance");
  cd->add_option("--scheme", scheme, "picard | taylor");
  cd->add_option("--solution", solution_file, "write the solution path CSV");
  cd->add_option("-o,--output", out_file, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (g->parsed())
      return cmd_generate(model, n, hurst, sigma, alpha, rate, star_alpha,
                          star_k, fixture, seed, out_file);
    if (tr->parsed()) {
      const SampledPath path = load_continuous(in_file);
      emit(out_file, tree_json(build_merge_tree(path)));
      return 0;
    }
    if (tm->parsed()) {
      const SampledPath path = load_continuous(in_file);
      emit(out_file, trim_events_json(trim_events(path, scale)));
      return 0;
    }
    if (pr->parsed()) return cmd_profile(in_file, gf, out_file, as_json);
    if (pv->parsed()) {
      const SampledPath path = load_continuous(in_file);
      const MergeTree tree = build_merge_tree(path);
      const TrimProfile prof = trim_profile(path, gf.make(path));
      emit(out_file, variation_json(pvar_bounds(path, p_exp, tree, prof)));
      return 0;
    }
    if (dm->parsed()) {
      const SampledPath path = load_continuous(in_file);
      const TrimProfile prof = trim_profile(path, gf.make(path));
      emit(out_file, dimension_json(variation_index(prof)));
      return 0;
    }
    if (hu->parsed()) {
      const SampledPath path = load_continuous(in_file);
      const TrimProfile prof = trim_profile(path, gf.make(path));
      const HurstRatioFit rf = hurst_ratio(prof);
      double dd_scale = scale > 0 ? scale : std::sqrt(rf.a_lo * rf.a_hi);
      double dd_stat = std::nan("");
      try {
        dd_stat = hurst_drawdown(path, dd_scale);
      } catch (const Error&) {
      }
      emit(out_file, hurst_json(rf, dd_stat, dd_scale));
      return 0;
    }
    if (ig->parsed())
      return cmd_integrate(in_file, rho_desc, kind, gf, tol, q_exp, out_file);
    if (rg->parsed()) return cmd_rough(in_file, r_hoelder, tol, out_file);
    if (cd->parsed())
      return cmd_cde(in_file, eta_file, field_name, x0, tol, scheme, out_file,
                     solution_file);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << error_json(errc_name(e.code()), e.what()) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << error_json("Internal", e.what()) << "\n";
    return 1;
  }
}

}  // namespace pathforest::cli
