#include "sdgreen/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sdgreen/stabilization.hpp"

namespace sdgreen {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& key) {
  std::vector<int> out;
  for (const auto& p : split_list(s)) {
    size_t pos = 0;
    const int v = std::stoi(p, &pos);
    if (pos != p.size()) throw std::invalid_argument("config: bad integer for " + key);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
  return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& p : split_list(s)) {
    size_t pos = 0;
    const double v = std::stod(p, &pos);
    if (pos != p.size()) throw std::invalid_argument("config: bad number for " + key);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
  return out;
}

bool parse_bool(const std::string& s, const std::string& key) {
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  throw std::invalid_argument("config: bad boolean for " + key);
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

}  // namespace

void ExperimentConfig::apply_line(const std::string& key, const std::string& value) {
  if (key == "N") N_list = parse_int_list(value, key);
  else if (key == "eps") eps_list = parse_double_list(value, key);
  else if (key == "b") {
    const auto b = parse_double_list(value, key);
    if (b.size() != 2) throw std::invalid_argument("config: b needs two components");
    b1 = b[0];
    b2 = b[1];
  } else if (key == "k") k_list = parse_double_list(value, key);
  else if (key == "xstar") xstar_rule = value;
  else if (key == "quad-order") quad_order = std::stoi(value);
  else if (key == "assembly-quad-order") assembly_quad_order = std::stoi(value);
  else if (key == "tol") tol = std::stod(value);
  else if (key == "source") source = value;
  else if (key == "out") out = value;
  else if (key == "seed") seed = std::stoul(value);
  else if (key == "allow-non-assumption1") allow_non_assumption1 = parse_bool(value, key);
  else if (key == "crosswind") crosswind = parse_bool(value, key);
  else if (key == "K") K_list = parse_double_list(value, key);
  else if (key == "v") v_exponent = std::stod(value);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section header
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    cfg.apply_line(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string ExperimentConfig::echo() const {
  std::ostringstream os;
  os << "N = " << join(N_list) << "\n";
  os << "eps = " << join(eps_list) << "\n";
  os << "b = " << fmt(b1) << "," << fmt(b2) << "\n";
  os << "k = " << join(k_list) << "\n";
  os << "xstar = " << xstar_rule << "\n";
  os << "quad-order = " << quad_order << "\n";
  os << "assembly-quad-order = " << assembly_quad_order << "\n";
  os << "tol = " << fmt(tol) << "\n";
  os << "source = " << source << "\n";
  os << "out = " << out << "\n";
  os << "seed = " << seed << "\n";
  os << "allow-non-assumption1 = " << (allow_non_assumption1 ? "true" : "false")
     << "\n";
  os << "crosswind = " << (crosswind ? "true" : "false") << "\n";
  os << "K = " << join(K_list) << "\n";
  os << "v = " << fmt(v_exponent) << "\n";
  return os.str();
}

std::pair<int, int> resolve_xstar(const std::string& rule, int N) {
  if (rule == "center") return {N / 4, N / 4};
  if (rule == "xlayer") return {3 * N / 4, N / 4};
  if (rule == "ylayer") return {N / 4, 3 * N / 4};
  const auto comma = rule.find(',');
  if (comma != std::string::npos) {
    const int i = std::stoi(rule.substr(0, comma));
    const int j = std::stoi(rule.substr(comma + 1));
    if (i <= 0 || i >= N || j <= 0 || j >= N)
      throw std::invalid_argument("xstar: node (" + rule + ") is not interior");
    return {i, j};
  }
  throw std::invalid_argument("xstar: unknown rule '" + rule + "'");
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  FitResult fit;
  const size_t n = x.size();
  if (n != y.size() || n < 2) return fit;
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (syy == 0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.reliable = fit.r2 >= 0.9 && n >= 3;
  return fit;
}

namespace {

ProblemSpec make_spec(const ExperimentConfig& cfg, double eps) {
  return ProblemSpec(eps, cfg.b1, cfg.b2, builtin_source(cfg.source));
}

ShishkinMesh build_mesh(const ExperimentConfig& cfg, const ProblemSpec& spec, int N) {
  MeshParams params;
  params.N = N;
  params.spec = spec;
  const auto tp = transition_parameters(params);
  if (!tp.assumption1 && !cfg.allow_non_assumption1)
    throw std::domain_error(
        "mesh: convection-dominated assumption violated (eps > 1/N or a "
        "transition parameter capped at 1/2); pass allow-non-assumption1 to "
        "proceed");
  return ShishkinMesh::build(params);
}

StabilizationProfile make_profile(const ExperimentConfig& cfg,
                                  const ProblemSpec& spec, int N) {
  return cfg.crosswind ? StabilizationProfile::crosswind(spec, N)
                       : StabilizationProfile::plain_sdfem(spec, N);
}

}  // namespace

SolveSweep run_solve(const ExperimentConfig& cfg) {
  SolveSweep sweep;
  sweep.config = cfg;
  for (int N : cfg.N_list) {
    for (double eps : cfg.eps_list) {
      SolveRow row;
      row.N = N;
      row.eps = eps;
      try {
        const ProblemSpec spec = make_spec(cfg, eps);
        const ShishkinMesh mesh = build_mesh(cfg, spec, N);
        const auto profile = make_profile(cfg, spec, N);
        const SparseSystem sys = assemble(mesh, spec, profile, cfg.assembly_quad_order);
        const SolveReport rep = solve(sys, cfg.tol);
        if (!rep.success)
          throw std::runtime_error("solver stalled at relative residual " +
                                   fmt(rep.rel_residual));
        const NodalField u = to_nodal(rep.x, N);
        row.u_min = row.u_max = 0.0;  // boundary nodes are part of the range
        for (int j = 0; j <= N; ++j)
          for (int i = 0; i <= N; ++i) {
            row.u_min = std::min(row.u_min, u.at(i, j));
            row.u_max = std::max(row.u_max, u.at(i, j));
          }
        // Node (N/2, N/2) sits at the mesh transition corner (1-lambda,
        // 1-lambda), not the middle of the domain, so interpolate instead.
        row.u_at_center = u.eval(mesh, 0.5, 0.5);
        row.rel_residual = rep.rel_residual;
        row.method = rep.method;
        row.seconds = rep.seconds;
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      sweep.rows.push_back(std::move(row));
    }
  }
  return sweep;
}

GreenSuiteReport run_green_suite(const ExperimentConfig& cfg) {
  GreenSuiteReport rep;
  rep.config = cfg;
  for (int N : cfg.N_list) {
    for (double eps : cfg.eps_list) {
      for (double k : cfg.k_list) {
        GreenSuiteRow row;
        row.N = N;
        row.eps = eps;
        row.k = k;
        try {
          const ProblemSpec spec = make_spec(cfg, eps);
          const ShishkinMesh mesh = build_mesh(cfg, spec, N);
          const auto profile = make_profile(cfg, spec, N);
          const auto [is, js] = resolve_xstar(cfg.xstar_rule, N);
          row.i_star = is;
          row.j_star = js;
          const GreenFunction gf =
              discrete_green(mesh, spec, profile, is, js, cfg.tol);
          row.x_star = gf.x_star.x;
          row.y_star = gf.x_star.y;
          if (!gf.report.success)
            throw std::runtime_error("solver stalled at relative residual " +
                                     fmt(gf.report.rel_residual));
          const WeightParams w = WeightParams::make(k, gf.x_star, N, eps);
          const CoercivityReport co =
              coercivity_quantities(gf.G, mesh, spec, profile, w, cfg.quad_order);
          row.coercivity_ratio = co.ratio();
          row.norm_sq = co.norm.total();
          row.identity_rel_resid = std::fabs(co.identity_residual()) / row.norm_sq;
          row.t1 = co.norm.t1;
          row.t2 = co.norm.t2;
          row.t3 = co.norm.t3;
          row.t4 = co.norm.t4;
          row.lemmas = lemma_quantities(gf.G, mesh, spec, profile, w, cfg.quad_order);
          row.rings = green_decay_profile(gf, mesh, spec, w).rings;
          row.solver_residual = gf.report.rel_residual;
          row.seconds = gf.report.seconds;
          row.ok = true;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rep.rows.push_back(std::move(row));
      }
    }
  }

  // scaling fits across the N sweep, one series per (eps, k) pair
  for (double eps : cfg.eps_list) {
    for (double k : cfg.k_list) {
      std::vector<double> x_growth, y_growth, x_interp, y_interp;
      for (const auto& row : rep.rows) {
        if (!row.ok || row.eps != eps || row.k != k) continue;
        if (row.norm_sq <= 0) continue;
        x_growth.push_back(std::log(row.N * std::log(double(row.N))));
        y_growth.push_back(std::log(row.norm_sq));
        const double norm = std::sqrt(row.norm_sq);
        if (row.lemmas.e_smooth > 0) {
          x_interp.push_back(std::log(double(row.N)));
          y_interp.push_back(std::log(row.lemmas.e_smooth / norm));
        }
      }
      rep.norm_growth_fits.push_back({eps, k, fit_line(x_growth, y_growth)});
      rep.interp_decay_fits.push_back({eps, k, fit_line(x_interp, y_interp)});
    }
  }
  return rep;
}

DecayReport run_decay(const ExperimentConfig& cfg) {
  DecayReport rep;
  rep.config = cfg;
  for (int N : cfg.N_list) {
    for (double eps : cfg.eps_list) {
      for (double k : cfg.k_list) {
        GreenSuiteRow ring_row;
        ring_row.N = N;
        ring_row.eps = eps;
        ring_row.k = k;
        try {
          const ProblemSpec spec = make_spec(cfg, eps);
          const ShishkinMesh mesh = build_mesh(cfg, spec, N);
          const auto profile = make_profile(cfg, spec, N);
          const auto [is, js] = resolve_xstar(cfg.xstar_rule, N);
          if (mesh.region_of_point(mesh.node(is, js).x, mesh.node(is, js).y) ==
              Region::Oxy)
            throw std::invalid_argument(
                "decay: anchor must lie outside the corner region");
          ring_row.i_star = is;
          ring_row.j_star = js;
          const GreenFunction gf =
              discrete_green(mesh, spec, profile, is, js, cfg.tol);
          if (!gf.report.success)
            throw std::runtime_error("solver stalled at relative residual " +
                                     fmt(gf.report.rel_residual));
          ring_row.x_star = gf.x_star.x;
          ring_row.y_star = gf.x_star.y;
          ring_row.solver_residual = gf.report.rel_residual;
          ring_row.seconds = gf.report.seconds;
          const WeightParams w = WeightParams::make(k, gf.x_star, N, eps);
          ring_row.rings = green_decay_profile(gf, mesh, spec, w).rings;
          ring_row.ok = true;

          const double tmpl_plain = std::pow(double(N), -cfg.v_exponent);
          for (double K : cfg.K_list) {
            const auto excluded = excluded_cells(mesh, w, spec, K);
            const struct {
              const char* label;
              std::vector<Region> regions;
              double tmpl;
              bool full_gradient;
            } groups[3] = {
                {"Os", {Region::Os}, tmpl_plain, true},
                {"OxOy", {Region::Ox, Region::Oy}, tmpl_plain, false},
                {"Oxy", {Region::Oxy}, tmpl_plain / std::sqrt(eps), false},
            };
            for (const auto& grp : groups) {
              DecayRegionRow row;
              row.N = N;
              row.eps = eps;
              row.k = k;
              row.K = K;
              row.region_label = grp.label;
              const SupNorms sup = w1inf_norms(gf.G, mesh, grp.regions, excluded);
              row.empty = sup.empty;
              row.cells = sup.cells;
              row.sup_abs = sup.sup_abs;
              row.sup_grad = sup.sup_grad;
              row.eps_sup_grad = eps * sup.sup_grad;
              row.template_value = grp.tmpl;
              if (!sup.empty) {
                const double measured = grp.full_gradient
                                            ? std::max(sup.sup_abs, sup.sup_grad)
                                            : sup.sup_abs + eps * sup.sup_grad;
                row.ratio = measured / grp.tmpl;
              }
              rep.region_rows.push_back(std::move(row));
            }
          }
        } catch (const std::exception& e) {
          ring_row.error = e.what();
        }
        rep.ring_rows.push_back(std::move(ring_row));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

void write_config_header(const ExperimentConfig& cfg, std::ostream& os) {
  std::istringstream lines(cfg.echo());
  std::string line;
  while (std::getline(lines, line)) os << "# " << line << "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_solve_csv(const SolveSweep& sweep, std::ostream& os) {
  write_config_header(sweep.config, os);
  // wall-clock time is reported on stderr by the CLI, never in the table:
  // identical config + seed must give a byte-identical file
  os << "N,eps,ok,error,u_min,u_max,u_at_center,rel_residual,method\n";
  for (const auto& r : sweep.rows) {
    os << r.N << "," << fmt(r.eps) << "," << (r.ok ? 1 : 0) << ","
       << csv_escape(r.error) << "," << fmt(r.u_min) << "," << fmt(r.u_max) << ","
       << fmt(r.u_at_center) << "," << fmt(r.rel_residual) << "," << r.method
       << "\n";
  }
}

void write_green_suite_csv(const GreenSuiteReport& rep, std::ostream& os) {
  write_config_header(rep.config, os);
  os << "N,eps,k,i_star,j_star,x_star,y_star,ok,error,coercivity_ratio,"
        "identity_rel_resid,norm_sq,t1,t2,t3,t4,G_at_xstar,e_beta_smooth,"
        "e_beta_layer,e_eta_smooth,e_eta_layer,e_smooth,e_layer,B_E_G,growth_C,"
        "deriv_smooth_C,deriv_layer_C,interp_smooth_C,interp_layer_C,form_ratio,"
        "solver_residual\n";
  for (const auto& r : rep.rows) {
    os << r.N << "," << fmt(r.eps) << "," << fmt(r.k) << "," << r.i_star << ","
       << r.j_star << "," << fmt(r.x_star) << "," << fmt(r.y_star) << ","
       << (r.ok ? 1 : 0) << "," << csv_escape(r.error) << ","
       << fmt(r.coercivity_ratio) << "," << fmt(r.identity_rel_resid) << ","
       << fmt(r.norm_sq) << "," << fmt(r.t1) << "," << fmt(r.t2) << "," << fmt(r.t3)
       << "," << fmt(r.t4) << "," << fmt(r.lemmas.G_at_xstar) << ","
       << fmt(r.lemmas.e_beta_smooth) << "," << fmt(r.lemmas.e_beta_layer) << ","
       << fmt(r.lemmas.e_eta_smooth) << "," << fmt(r.lemmas.e_eta_layer) << ","
       << fmt(r.lemmas.e_smooth) << "," << fmt(r.lemmas.e_layer) << ","
       << fmt(r.lemmas.B_E_G) << "," << fmt(r.lemmas.growth_C) << ","
       << fmt(r.lemmas.deriv_smooth_C) << "," << fmt(r.lemmas.deriv_layer_C) << ","
       << fmt(r.lemmas.interp_smooth_C) << "," << fmt(r.lemmas.interp_layer_C) << ","
       << fmt(r.lemmas.form_ratio) << "," << fmt(r.solver_residual) << "\n";
  }
}

void write_decay_csv(const DecayReport& rep, std::ostream& os) {
  write_config_header(rep.config, os);
  os << "N,eps,k,K,region,empty,cells,sup_abs,sup_grad,eps_sup_grad,"
        "template,ratio\n";
  for (const auto& r : rep.region_rows) {
    os << r.N << "," << fmt(r.eps) << "," << fmt(r.k) << "," << fmt(r.K) << ","
       << r.region_label << "," << (r.empty ? 1 : 0) << "," << r.cells << ",";
    if (r.empty) {
      // a sup over an empty restriction has no value; leave the fields blank
      os << ",,," << fmt(r.template_value) << ",\n";
    } else {
      os << fmt(r.sup_abs) << "," << fmt(r.sup_grad) << "," << fmt(r.eps_sup_grad)
         << "," << fmt(r.template_value) << "," << fmt(r.ratio) << "\n";
    }
  }
}

void write_decay_rings_csv(const DecayReport& rep, std::ostream& os) {
  write_config_header(rep.config, os);
  os << "N,eps,k,ok,error,m,count,max_abs\n";
  for (const auto& r : rep.ring_rows) {
    if (r.rings.empty()) {
      os << r.N << "," << fmt(r.eps) << "," << fmt(r.k) << "," << (r.ok ? 1 : 0)
         << "," << csv_escape(r.error) << ",,,\n";
      continue;
    }
    for (const auto& ring : r.rings)
      os << r.N << "," << fmt(r.eps) << "," << fmt(r.k) << "," << (r.ok ? 1 : 0)
         << "," << csv_escape(r.error) << "," << ring.m << "," << ring.count << ","
         << fmt(ring.max_abs) << "\n";
  }
}

void write_decay_profile_csv(const DecayProfile& prof, const ExperimentConfig& cfg,
                             std::ostream& os) {
  write_config_header(cfg, os);
  os << "i,j,x,y,s_beta,s_eta,region,abs_g\n";
  for (const auto& r : prof.rows)
    os << r.i << "," << r.j << "," << fmt(r.x) << "," << fmt(r.y) << ","
       << fmt(r.s_beta) << "," << fmt(r.s_eta) << "," << region_name(r.region) << ","
       << fmt(r.abs_g) << "\n";
}

namespace {

nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["N"] = cfg.N_list;
  j["eps"] = cfg.eps_list;
  j["b"] = {cfg.b1, cfg.b2};
  j["k"] = cfg.k_list;
  j["xstar"] = cfg.xstar_rule;
  j["quad_order"] = cfg.quad_order;
  j["assembly_quad_order"] = cfg.assembly_quad_order;
  j["tol"] = cfg.tol;
  j["source"] = cfg.source;
  j["seed"] = cfg.seed;
  j["allow_non_assumption1"] = cfg.allow_non_assumption1;
  j["crosswind"] = cfg.crosswind;
  j["K"] = cfg.K_list;
  j["v"] = cfg.v_exponent;
  return j;
}

nlohmann::json fit_json(const GreenSuiteReport::SeriesFit& sf) {
  return {{"eps", sf.eps},
          {"k", sf.k},
          {"slope", sf.fit.slope},
          {"intercept", sf.fit.intercept},
          {"r2", sf.fit.r2},
          {"reliable", sf.fit.reliable}};
}

void append_lemma_records(const GreenSuiteRow& r, nlohmann::json& records) {
  const auto push = [&](const char* name, double value, double implied) {
    records.push_back({{"N", r.N},
                       {"eps", r.eps},
                       {"k", r.k},
                       {"x_star", {r.x_star, r.y_star}},
                       {"quantity_name", name},
                       {"value", value},
                       {"implied_C", implied}});
  };
  push("coercivity_ratio", r.coercivity_ratio, 0.0);
  push("G_at_xstar", r.lemmas.G_at_xstar, r.lemmas.growth_C);
  push("e_beta_smooth", r.lemmas.e_beta_smooth, r.lemmas.deriv_smooth_C);
  push("e_eta_smooth", r.lemmas.e_eta_smooth, r.lemmas.deriv_smooth_C);
  push("e_beta_layer", r.lemmas.e_beta_layer, r.lemmas.deriv_layer_C);
  push("e_eta_layer", r.lemmas.e_eta_layer, r.lemmas.deriv_layer_C);
  push("e_smooth", r.lemmas.e_smooth, r.lemmas.interp_smooth_C);
  push("e_layer", r.lemmas.e_layer, r.lemmas.interp_layer_C);
  push("B_E_G", r.lemmas.B_E_G, r.lemmas.form_ratio);
}

}  // namespace

std::string green_suite_summary_json(const GreenSuiteReport& rep) {
  nlohmann::json j;
  j["config"] = config_json(rep.config);
  j["rows"] = nlohmann::json::array();
  j["lemma_records"] = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json row = {{"N", r.N},
                          {"eps", r.eps},
                          {"k", r.k},
                          {"ok", r.ok},
                          {"coercivity_ratio", r.coercivity_ratio},
                          {"identity_rel_resid", r.identity_rel_resid},
                          {"norm_sq", r.norm_sq},
                          {"solver_residual", r.solver_residual}};
    if (!r.ok) row["error"] = r.error;
    j["rows"].push_back(std::move(row));
    if (r.ok) append_lemma_records(r, j["lemma_records"]);
  }
  j["fits"]["norm_growth"] = nlohmann::json::array();
  for (const auto& sf : rep.norm_growth_fits)
    j["fits"]["norm_growth"].push_back(fit_json(sf));
  j["fits"]["interp_decay"] = nlohmann::json::array();
  for (const auto& sf : rep.interp_decay_fits)
    j["fits"]["interp_decay"].push_back(fit_json(sf));
  return j.dump(2);
}

std::string solve_summary_json(const SolveSweep& sweep) {
  nlohmann::json j;
  j["config"] = config_json(sweep.config);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : sweep.rows) {
    nlohmann::json row = {{"N", r.N},         {"eps", r.eps},
                          {"ok", r.ok},       {"u_min", r.u_min},
                          {"u_max", r.u_max}, {"u_at_center", r.u_at_center},
                          {"rel_residual", r.rel_residual}};
    if (!r.ok) row["error"] = r.error;
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

std::string decay_summary_json(const DecayReport& rep) {
  nlohmann::json j;
  j["config"] = config_json(rep.config);
  j["regions"] = nlohmann::json::array();
  for (const auto& r : rep.region_rows) {
    j["regions"].push_back({{"N", r.N},
                            {"eps", r.eps},
                            {"k", r.k},
                            {"K", r.K},
                            {"region", r.region_label},
                            {"empty", r.empty},
                            {"cells", r.cells},
                            {"sup_abs", r.sup_abs},
                            {"sup_grad", r.sup_grad},
                            {"ratio", r.ratio}});
  }
  j["rings"] = nlohmann::json::array();
  for (const auto& r : rep.ring_rows) {
    nlohmann::json rings = nlohmann::json::array();
    for (const auto& ring : r.rings)
      rings.push_back({{"m", ring.m}, {"count", ring.count}, {"max_abs", ring.max_abs}});
    nlohmann::json row = {
        {"N", r.N}, {"eps", r.eps}, {"k", r.k}, {"ok", r.ok}, {"rings", rings}};
    if (!r.ok) row["error"] = r.error;
    j["rings"].push_back(std::move(row));
  }
  return j.dump(2);
}

}  // namespace sdgreen
