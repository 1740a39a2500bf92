#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "opq/catalog.hpp"
#include "opq/errors.hpp"
#include "opq/io.hpp"
#include "opq/reconstruction.hpp"
#include "opq/spectral.hpp"
#include "opq/tridiagonal.hpp"
#include "opq/verification.hpp"

namespace {

using namespace opq;

// name=value arguments; N is detected and routed to the window parameter
std::pair<Params, std::optional<int>> parse_assignments(
    const std::vector<std::string>& kvs) {
  Params p;
  std::optional<int> N;
  for (const auto& kv : kvs) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw InvalidParameterError("expected name=value, got '" + kv + "'");
    std::string k = kv.substr(0, eq);
    double v = std::stod(kv.substr(eq + 1));
    if (k == "N")
      N = static_cast<int>(v);
    else
      p[k] = v;
  }
  return {p, N};
}

double env_tolerance_scale() {
  if (const char* s = std::getenv("OPQ_RTOL_SCALE")) return std::atof(s);
  return 1.0;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int cmd_list(bool as_json, const std::string& filter) {
  const auto& cat = Catalog::instance();
  if (as_json) {
    std::cout << catalog_metadata_json().dump(2) << "\n";
    return 0;
  }
  for (const auto& s : cat.families()) {
    if (filter == "finite" && !s.info.finite) continue;
    if (filter == "infinite" && s.info.finite) continue;
    std::string kind = s.info.finite ? "finite" : "infinite";
    std::string dual = s.info.duality;
    std::cout << s.info.id << " (" << kind << ", "
              << (dual == "-" ? "no listed dual" : dual) << ") params:";
    for (const auto& p : s.info.param_names) std::cout << " " << p;
    if (s.info.finite) std::cout << " N";
    if (s.info.ks_ref != "-") std::cout << "  [" << s.info.ks_ref << "]";
    std::cout << "\n";
  }
  return 0;
}

int cmd_table(const std::string& family, const std::vector<std::string>& kvs,
              const std::string& quantities, int xmax, int nmax,
              const std::string& format, const std::string& out_path) {
  auto [params, N] = parse_assignments(kvs);
  BoundFamily f = get_family(family, params, N);
  int W = f.info.finite ? *f.lambda.N : (xmax > 0 ? xmax : suite_window(f));
  if (xmax > 0) W = std::min(W, xmax);
  int nm = f.info.finite ? *f.lambda.N : (nmax > 0 ? nmax : 10);
  if (nmax > 0) nm = std::min(nm, nmax);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error("cannot open " + out_path);
    os = &file;
  }

  auto quants = split_csv(quantities);
  if (quants.size() == 1 && (quants[0] == "P" || quants[0] == "Q")) {
    bool is_p = quants[0] == "P";
    PolynomialTable pt;
    DualTable qt;
    if (is_p) {
      pt = build_P_table(f, nm, W, true);
    } else {
      std::vector<double> evs;
      for (int n = 0; n <= nm; ++n) evs.push_back(f.E(n));
      qt = build_Q_table(f.B, f.D, evs, W,
                         f.info.finite ? f.lambda.N : std::nullopt);
    }
    if (format == "json") {
      nlohmann::json data = is_p ? nlohmann::json(pt.values)
                                 : nlohmann::json(qt.values);
      nlohmann::json j = {{"meta",
                           {{"family", family},
                            {"params", render_params(params, N)},
                            {"table", quants[0]},
                            {"n_max", nm},
                            {"x_max", W}}},
                          {"data", data}};
      *os << j.dump(2) << "\n";
    } else {
      std::vector<std::string> header{is_p ? "n\\x" : "x\\n"};
      int cols = is_p ? W + 1 : nm + 1;
      for (int c = 0; c < cols; ++c) header.push_back(std::to_string(c));
      std::vector<std::vector<double>> rows;
      const auto& vals = is_p ? pt.values : qt.values;
      for (size_t i = 0; i < vals.size(); ++i) {
        std::vector<double> row{static_cast<double>(i)};
        row.insert(row.end(), vals[i].begin(), vals[i].end());
        rows.push_back(row);
      }
      write_csv(*os, header, rows);
    }
    return 0;
  }

  std::vector<std::string> header{"k"};
  for (const auto& q : quants) header.push_back(q);
  std::vector<std::vector<double>> rows;
  GroundState g0;
  for (const auto& q : quants)
    if (q == "phi0sq") g0 = ground_state(f.B, f.D, W + 1);
  std::vector<double> dn_prod;
  int kmax = std::max(W, nm);
  for (int k = 0; k <= kmax; ++k) {
    std::vector<double> row{static_cast<double>(k)};
    for (const auto& q : quants) {
      double v = std::nan("");
      if (q == "B" && k <= W) v = f.B(k);
      else if (q == "D" && k <= W) v = f.D(k);
      else if (q == "eta" && k <= W) v = f.eta(k);
      else if (q == "phi" && k <= W) v = f.varphi(k);
      else if (q == "phi0sq" && k <= W) {
        if (f.phi0sq) v = f.phi0sq(k);
        else v = g0.values[k] * g0.values[k];
      } else if (q == "E" && k <= nm) v = f.E(k);
      else if (q == "A" && k <= nm) v = f.A(k);
      else if (q == "C" && k <= nm) v = f.C(k);
      else if (q == "dnsq" && k <= nm) {
        if (f.dnsq) {
          v = f.dnsq(k);
        } else {
          if (dn_prod.empty()) {
            GroundState g = ground_state(f.B, f.D, suite_window(f) + 1);
            dn_prod = normalization_dn(f, nm, g.squared_norm);
          }
          v = dn_prod[k];
        }
      } else if (q == "R1" && k <= nm) v = f.closure.R1(f.E(k));
      else if (q == "R0" && k <= nm) v = f.closure.R0(f.E(k));
      else if (q == "Rm1" && k <= nm) v = f.closure.Rm1(f.E(k));
      row.push_back(v);
    }
    rows.push_back(row);
  }
  if (format == "json") {
    nlohmann::json j = {{"meta",
                         {{"family", family},
                          {"params", render_params(params, N)},
                          {"quantities", quants}}},
                        {"data", rows}};
    *os << j.dump(2) << "\n";
  } else {
    write_csv(*os, header, rows);
  }
  return 0;
}

int cmd_verify(const std::string& target,
               const std::optional<std::string>& suites,
               const std::string& bd_file, const std::string& json_path,
               double rtol_scale, bool quiet) {
  SuiteReport rep;
  if (target == "custom") {
    if (bd_file.empty())
      throw InvalidParameterError("verify custom needs --bd-file");
    CustomFamily cf = read_bd_csv(bd_file);
    std::cout << "custom B/D table: closed-form suites skipped, numeric "
                 "checks only\n";
    rep = run_custom_suite(cf, rtol_scale);
  } else {
    SuiteConfig cfg;
    cfg.tolerance_scale = rtol_scale;
    if (target != "all") cfg.families = {target};
    if (suites) cfg.suites = split_csv(*suites);
    rep = run_suite(cfg);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << report_to_json(rep).dump(2) << "\n";
  }
  std::cout << report_table(rep, quiet);
  return rep.all_pass() ? 0 : 1;
}

int cmd_reconstruct(const std::string& from_family,
                    const std::vector<std::string>& kvs,
                    const std::map<std::string, std::optional<double>>& coeffs,
                    double eta1, double b0, int xmax, const std::string& route_s,
                    bool as_json) {
  ReconstructionRoute route = ReconstructionRoute::automatic;
  if (route_s == "simple") route = ReconstructionRoute::simple;
  else if (route_s == "general") route = ReconstructionRoute::general;

  ReconstructionState st;
  double deviation = -1.0;
  if (!from_family.empty()) {
    auto [params, N] = parse_assignments(kvs);
    BoundFamily f = get_family(from_family, params, N);
    int W = std::min(f.info.finite ? *f.lambda.N : suite_window(f), xmax);
    auto rt = roundtrip_catalog(f, W, route);
    st = rt.state;
    deviation = rt.max_deviation;
  } else {
    ClosureCoefficients r;
    for (const auto& [name, v] : coeffs)
      if (!v) throw InvalidParameterError("missing coefficient --" + name);
    r.r1_1 = *coeffs.at("r11");
    r.r1_0 = *coeffs.at("r10");
    r.r0_2 = r.r1_1;          // the two closure constraints
    r.r0_1 = 2.0 * r.r1_0;
    r.r0_0 = *coeffs.at("r00");
    r.rm1_2 = *coeffs.at("rm12");
    r.rm1_1 = *coeffs.at("rm11");
    r.rm1_0 = *coeffs.at("rm10");
    st = reconstruct(r, eta1, b0, xmax, route);
  }

  if (as_json) {
    nlohmann::json j = {
        {"meta",
         {{"eta_class", st.cls.name()},
          {"q", st.cls.q},
          {"d", st.cls.d},
          {"epsilon_prime", st.cls.epsilon_p},
          {"route", st.route_used == ReconstructionRoute::simple ? "simple"
                                                                 : "general"},
          {"ri0cond_residual", st.ri0cond_residual},
          {"eta1", st.eta1},
          {"eta_minus1", st.eta_minus1},
          {"B0", st.B0}}},
        {"data",
         {{"eta", st.eta_values},
          {"a", st.a_values},
          {"B", st.B_values},
          {"D", st.D_values}}}};
    if (deviation >= 0.0) j["meta"]["roundtrip_deviation"] = deviation;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "eta class: " << st.cls.name();
    if (st.cls.tag == EtaClass::q_geometric ||
        st.cls.tag == EtaClass::q_inverse_geometric ||
        st.cls.tag == EtaClass::q_quadratic)
      std::cout << " (q=" << fmt_csv(st.cls.q) << ")";
    if (st.cls.tag == EtaClass::quadratic || st.cls.tag == EtaClass::q_quadratic)
      std::cout << " (d=" << fmt_csv(st.cls.d) << ", eps'=" << st.cls.epsilon_p
                << ")";
    std::cout << "\nroute: "
              << (st.route_used == ReconstructionRoute::simple ? "simple"
                                                              : "general")
              << "  ri0cond residual: " << fmt_csv(st.ri0cond_residual) << "\n";
    std::vector<std::vector<double>> rows;
    for (size_t x = 0; x < st.B_values.size(); ++x)
      rows.push_back({static_cast<double>(x), st.eta_values[x], st.a_values[x],
                      st.B_values[x], st.D_values[x]});
    write_csv(std::cout, {"x", "eta", "a", "B", "D"}, rows);
    if (deviation >= 0.0)
      std::cout << "roundtrip max deviation: " << fmt_csv(deviation) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete orthogonal polynomials from factorisable Jacobi matrices"};
  app.require_subcommand(1);

  // list
  auto* list = app.add_subcommand("list", "catalog of polynomial families");
  bool list_json = false;
  std::string list_filter;
  list->add_flag("--json", list_json, "machine-readable output");
  list->add_option("--filter", list_filter, "finite|infinite")
      ->check(CLI::IsMember({"finite", "infinite"}));

  // table
  auto* table = app.add_subcommand("table", "evaluate closed-form quantities");
  std::string tb_family, tb_quant = "B,D", tb_format = "csv", tb_out;
  std::vector<std::string> tb_params;
  int tb_xmax = 0, tb_nmax = 0;
  table->add_option("family", tb_family)->required();
  table->add_option("params", tb_params, "name=value assignments (incl. N=..)");
  table->add_option("--quantities", tb_quant,
                    "comma list of B,D,E,eta,phi,phi0sq,dnsq,A,C,R1,R0,Rm1 or P or Q");
  table->add_option("--xmax", tb_xmax);
  table->add_option("--nmax", tb_nmax);
  table->add_option("--format", tb_format)->check(CLI::IsMember({"csv", "json"}));
  table->add_option("--out", tb_out, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the identity suites");
  std::string vf_target, vf_suites, vf_bd, vf_json;
  double vf_rtol = env_tolerance_scale();
  bool vf_quiet = false;
  verify->add_option("target", vf_target, "family id, 'all', or 'custom'")
      ->required();
  verify->add_option("--suites", vf_suites, "comma list of suite names");
  verify->add_option("--bd-file", vf_bd, "CSV x,B,D for custom tables");
  verify->add_option("--json", vf_json, "write the full report as JSON");
  verify->add_option("--rtol-scale", vf_rtol,
                     "scale applied to every tolerance (env OPQ_RTOL_SCALE)");
  verify->add_flag("--failures-only", vf_quiet, "print only failing checks");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct",
                                 "solve the inverse problem from closure data");
  std::string rc_family, rc_route = "auto";
  std::vector<std::string> rc_params;
  std::map<std::string, std::optional<double>> rc_coeffs = {
      {"r11", std::nullopt}, {"r10", std::nullopt},  {"r00", std::nullopt},
      {"rm12", std::nullopt}, {"rm11", std::nullopt}, {"rm10", std::nullopt}};
  double rc_eta1 = 1.0, rc_b0 = 1.0;
  int rc_xmax = 20;
  bool rc_json = false;
  rec->add_option("--from-family", rc_family, "take coefficients from the catalog");
  rec->add_option("params", rc_params, "family parameters when --from-family");
  for (auto& [name, slot] : rc_coeffs)
    rec->add_option("--" + name, [&slot](const std::vector<std::string>& v) {
          slot = std::stod(v[0]);
          return true;
        }, "closure coefficient " + name)->expected(1);
  rec->add_option("--eta1", rc_eta1, "eta(1)");
  rec->add_option("--b0", rc_b0, "B(0)");
  rec->add_option("--xmax", rc_xmax);
  rec->add_option("--route", rc_route)->check(CLI::IsMember({"auto", "simple", "general"}));
  rec->add_flag("--json", rc_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*list) return cmd_list(list_json, list_filter);
    if (*table)
      return cmd_table(tb_family, tb_params, tb_quant, tb_xmax, tb_nmax,
                       tb_format, tb_out);
    if (*verify) {
      std::optional<std::string> suites_opt;
      if (verify->count("--suites")) suites_opt = vf_suites;
      return cmd_verify(vf_target, suites_opt, vf_bd, vf_json, vf_rtol, vf_quiet);
    }
    if (*rec) {
      bool have_any_coeff = false;
      for (const auto& [k, v] : rc_coeffs) have_any_coeff |= v.has_value();
      if (rc_family.empty() && !have_any_coeff)
        throw InvalidParameterError(
            "reconstruct needs --from-family or the --r.. coefficients");
      return cmd_reconstruct(rc_family, rc_params, rc_coeffs, rc_eta1, rc_b0,
                             rc_xmax, rc_route, rc_json);
    }
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const opq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
