#ifndef FLAGSHIFT_CLI_HPP
#define FLAGSHIFT_CLI_HPP

// Command-line surface: certify, flow, report.
//
// Exit codes: 0 pass, 1 claim or drift failure, 2 configuration error.

#include "flagshift/certify.hpp"
#include "flagshift/dynamics.hpp"
#include "flagshift/families.hpp"
#include "flagshift/product_space.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace flagshift::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

struct Tolerances {
  double rank_rel = 1e-8;
  double bracket_rel = 1e-9;
  double drift = 1e-7;
};

struct FlowParams {
  std::string model = "einstein";
  std::string p = "auto";
  std::string q = "auto";
  std::vector<double> s;  // novi s_i, or the einstein s (first entry)
  std::vector<double> t;  // novi t_i
  std::vector<double> a;  // gaudin weights
  bool restrict_v = false;
  double t_end = 10.0;
  double dt = 1e-3;
  int stride = 10;
};

struct RunConfig {
  std::string algebra = "su2";
  int n = 3;
  std::uint64_t seed = 42;
  int trials = 7;
  Tolerances tolerances;
  std::vector<std::string> claims;
  FlowParams flow;
  std::string out;      // certify JSON / flow summary JSON
  std::string csv;      // flow trajectory
  bool timestamp = true;
};

/// Default seed, honouring FLAGSHIFT_SEED.
inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("FLAGSHIFT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("FLAGSHIFT_SEED is not an unsigned integer: '") + env + "'");
    }
  }
  return 42;
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

/// Values from a JSON config file, applied on top of `cfg`.
inline void apply_config_json(RunConfig& cfg, const nlohmann::json& j) {
  try {
    if (j.contains("algebra")) cfg.algebra = j.at("algebra").get<std::string>();
    if (j.contains("n")) cfg.n = j.at("n").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      cfg.tolerances.rank_rel = t.value("rank_rel", cfg.tolerances.rank_rel);
      cfg.tolerances.bracket_rel = t.value("bracket_rel", cfg.tolerances.bracket_rel);
      cfg.tolerances.drift = t.value("drift", cfg.tolerances.drift);
    }
    if (j.contains("claims")) {
      const auto& c = j.at("claims");
      cfg.claims = c.is_string() ? split_list(c.get<std::string>()) : c.get<std::vector<std::string>>();
    }
    if (j.contains("flow")) {
      const auto& f = j.at("flow");
      auto num_or_auto = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : format_double(v.get<double>());
      };
      cfg.flow.model = f.value("model", cfg.flow.model);
      if (f.contains("p")) cfg.flow.p = num_or_auto(f.at("p"));
      if (f.contains("q")) cfg.flow.q = num_or_auto(f.at("q"));
      if (f.contains("s")) cfg.flow.s = f.at("s").is_array() ? f.at("s").get<std::vector<double>>()
                                                             : std::vector<double>{f.at("s").get<double>()};
      if (f.contains("t")) cfg.flow.t = f.at("t").get<std::vector<double>>();
      if (f.contains("a")) cfg.flow.a = f.at("a").get<std::vector<double>>();
      cfg.flow.restrict_v = f.value("restrict_v", cfg.flow.restrict_v);
      cfg.flow.t_end = f.value("t_end", cfg.flow.t_end);
      cfg.flow.dt = f.value("dt", cfg.flow.dt);
      cfg.flow.stride = f.value("stride", cfg.flow.stride);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

inline void validate(const RunConfig& cfg) {
  LieAlgebra::build(cfg.algebra);
  if (cfg.n < 2) throw ConfigError("n must be >= 2, got " + std::to_string(cfg.n));
  if (cfg.trials < 3) throw ConfigError("trials must be >= 3, got " + std::to_string(cfg.trials));
  if (!(cfg.tolerances.rank_rel > 0.0) || !(cfg.tolerances.bracket_rel > 0.0) || !(cfg.tolerances.drift > 0.0))
    throw ConfigError("tolerances must be positive");
  if (!(cfg.flow.dt > 0.0) || !(cfg.flow.t_end > 0.0)) throw ConfigError("dt and t-end must be positive");
  if (cfg.flow.stride < 1) throw ConfigError("stride must be >= 1");
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

/// Writes `text` to `path` through a temporary file and a rename.
inline void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path() && !target.parent_path().empty()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + tmp.string() + "'");
    f << text;
    if (!f) throw ConfigError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

inline Json config_json(const RunConfig& cfg) {
  Json j;
  j["algebra"] = cfg.algebra;
  j["n"] = cfg.n;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["tolerances"] = {{"rank_rel", cfg.tolerances.rank_rel},
                     {"bracket_rel", cfg.tolerances.bracket_rel},
                     {"drift", cfg.tolerances.drift}};
  return j;
}

inline CertifyOptions certify_options(const RunConfig& cfg) {
  CertifyOptions o;
  o.trials = cfg.trials;
  o.seed = cfg.seed;
  o.rank_rel = cfg.tolerances.rank_rel;
  o.bracket_rel = cfg.tolerances.bracket_rel;
  o.invariance_tol = cfg.tolerances.bracket_rel;
  return o;
}

/// Certify document; the "timestamp" field is the only run-dependent content.
inline Json certify_document(const RunConfig& cfg, const std::vector<CertificateReport>& reports) {
  Json doc;
  doc["command"] = "certify";
  doc["config"] = config_json(cfg);
  doc["claims"] = cfg.claims;
  doc["all_pass"] = all_pass(reports);
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  doc["reports"] = std::move(arr);
  if (cfg.timestamp) doc["timestamp"] = utc_timestamp();
  return doc;
}

inline int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const ProductSpace space(LieAlgebra::build(cfg.algebra), cfg.n);
  const std::vector<std::string> groups = cfg.claims.empty() ? claim_groups() : cfg.claims;
  RunConfig effective = cfg;
  effective.claims = groups;
  const auto reports = run_claims(space, groups, certify_options(cfg));
  const std::string text = certify_document(effective, reports).dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_atomically(cfg.out, text);
    for (const auto& r : reports)
      out << (r.pass ? "PASS " : "FAIL ") << r.claim_id << " formula=" << format_double(r.formula_value)
          << " measured=" << format_double(r.measured_value) << "\n";
  }
  return all_pass(reports) ? kExitPass : kExitFail;
}

/// One bound checked by a flow run.
struct FlowCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass() const { return value <= bound; }
};

struct FlowResult {
  Trajectory trajectory;
  std::vector<FlowCheck> checks;
  HamiltonianSpec hamiltonian;
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass(); });
  }
};

inline HamiltonianSpec flow_hamiltonian(const RunConfig& cfg) {
  const auto& f = cfg.flow;
  const int n = cfg.n;
  if (f.model == "normal") return HamiltonianSpec::normal(n);
  if (f.model == "gaudin") {
    Vector a = f.a.empty() ? default_gaudin_weights(n) : Eigen::Map<const Vector>(f.a.data(), static_cast<Eigen::Index>(f.a.size()));
    if (a.size() != n) throw ConfigError("--a needs n = " + std::to_string(n) + " weights");
    return HamiltonianSpec::gaudin(a);
  }
  if (f.model == "novi") {
    if (static_cast<int>(f.s.size()) != n - 1 || static_cast<int>(f.t.size()) != n - 1)
      throw ConfigError("novi needs --s and --t with n-1 = " + std::to_string(n - 1) + " entries each");
    return HamiltonianSpec::novi(Eigen::Map<const Vector>(f.s.data(), n - 1), Eigen::Map<const Vector>(f.t.data(), n - 1));
  }
  if (f.model == "einstein") {
    const EinsteinParameters ep = einstein_parameters(n);
    auto pick = [](const std::string& text, double fallback, const char* name) {
      if (text == "auto") return fallback;
      const auto v = parse_doubles(text, name);
      if (v.size() != 1) throw ConfigError(std::string(name) + " expects one value or 'auto'");
      return v.front();
    };
    const double p = pick(f.p, ep.p, "--p");
    const double q = pick(f.q, ep.q, "--q");
    const double s = f.s.empty() ? p : f.s.front();
    return HamiltonianSpec::einstein(n, p, q, s);
  }
  throw ConfigError("unknown flow model '" + f.model + "' (expected einstein, gaudin, novi, normal)");
}

inline FlowResult run_flow(const RunConfig& cfg) {
  const ProductSpace space(LieAlgebra::build(cfg.algebra), cfg.n);
  const HamiltonianSpec h = flow_hamiltonian(cfg);
  const ProductElement x0 =
      cfg.flow.restrict_v ? space.random_v_element(mix_seed(cfg.seed, 77)) : space.random_element(mix_seed(cfg.seed, 77));

  PolynomialFamily monitors;
  if (h.kind() == HamiltonianKind::gaudin) {
    const auto p = gaudin_family(space, h.a(), default_gaudin_grid());
    const auto mu = momentum_coordinates(space);
    const auto z = casimir_family(space);
    monitors = concat("P+mu+Z", {&p, &mu, &z});
  } else {
    monitors = flag_shift_family(space);
  }
  FlowSpec spec{h, x0, cfg.flow.t_end, cfg.flow.dt, cfg.flow.stride, monitors.members};
  spec.monitors.push_back(h.as_member(space));

  FlowResult res{integrate(space, spec), {}, h};
  const auto& tr = res.trajectory;
  double family_drift = 0.0, casimir_drift = 0.0;
  for (std::size_t k = 0; k + 1 < tr.drift.size(); ++k) {
    family_drift = std::max(family_drift, tr.drift[k]);
    if (tr.monitor_ids[k].rfind("Z[", 0) == 0) casimir_drift = std::max(casimir_drift, tr.drift[k]);
  }
  res.checks.push_back({"energy_drift", tr.drift.back(), 1e-8});
  res.checks.push_back({"family_drift", family_drift, cfg.tolerances.drift});
  res.checks.push_back({"casimir_drift", casimir_drift, 1e-9});
  res.checks.push_back({"momentum_drift", momentum_conservation_check(space, tr), 1e-8});
  if (cfg.flow.restrict_v) {
    double mu_norm = 0.0;
    for (const auto& x : tr.states) mu_norm = std::max(mu_norm, space.base().norm(space.momentum(x)));
    res.checks.push_back({"v_invariance", mu_norm, 1e-9});
    if (h.kind() == HamiltonianKind::einstein) {
      double worst = 0.0;
      for (std::size_t r = 0; r < tr.states.size(); ++r)
        worst = std::max(worst, space.norm_g(tr.states[r] - enr_closed_form(space, h, x0, tr.times[r])));
      res.checks.push_back({"closed_form_residual", worst, cfg.tolerances.drift});
    }
  }
  return res;
}

inline Json flow_summary(const RunConfig& cfg, const FlowResult& res) {
  Json doc;
  doc["command"] = "flow";
  doc["config"] = config_json(cfg);
  doc["model"] = cfg.flow.model;
  const auto& h = res.hamiltonian;
  Json params;
  switch (h.kind()) {
    case HamiltonianKind::einstein:
      params = {{"p", h.p()}, {"q", h.q()}, {"s", h.s_param()}, {"u_coef", h.u_coef()}, {"v_coef", h.v_coef()}};
      break;
    case HamiltonianKind::gaudin:
      params = {{"a", std::vector<double>(h.a().data(), h.a().data() + h.a().size())}};
      break;
    case HamiltonianKind::novi:
      params = {{"s", std::vector<double>(h.s().data(), h.s().data() + h.s().size())},
                {"t", std::vector<double>(h.t().data(), h.t().data() + h.t().size())}};
      break;
    default:
      params = Json::object();
  }
  doc["parameters"] = params;
  doc["dt"] = cfg.flow.dt;
  doc["t_end"] = cfg.flow.t_end;
  doc["restrict_v"] = cfg.flow.restrict_v;
  Json checks = Json::array();
  for (const auto& c : res.checks) checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass()}});
  doc["checks"] = std::move(checks);
  Json drift;
  for (std::size_t k = 0; k < res.trajectory.drift.size(); ++k) drift[res.trajectory.monitor_ids[k]] = res.trajectory.drift[k];
  doc["drift"] = std::move(drift);
  doc["pass"] = res.pass();
  if (cfg.timestamp) doc["timestamp"] = utc_timestamp();
  return doc;
}

inline int cmd_flow(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<FlowResult> result;
  try {
    result.emplace(run_flow(cfg));
  } catch (const IntegrationError& e) {
    err << "flow: integration blew up: " << e.what() << "\n";
    return kExitFail;
  }
  const FlowResult& res = *result;
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    write_trajectory_csv(csv, res.trajectory);
    write_atomically(cfg.csv, csv.str());
  }
  const std::string text = flow_summary(cfg, res).dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_atomically(cfg.out, text);
    for (const auto& c : res.checks)
      out << (c.pass() ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
          << " bound=" << format_double(c.bound) << "\n";
  }
  return res.pass() ? kExitPass : kExitFail;
}

/// One row of the report table.
struct ReportRow {
  bool pass = false;
  std::string claim;
  std::string algebra;
  int n = 0;
  std::string formula;
  std::string measured;
  std::string tolerance;
  std::string file;
};

inline std::string json_number_text(const Json& v) {
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  return v.dump();
}

inline std::vector<ReportRow> rows_from_document(const Json& doc, const std::string& file) {
  std::vector<ReportRow> rows;
  auto from_report = [&](const Json& r) {
    rows.push_back({r.at("pass").get<bool>(), r.at("claim_id").get<std::string>(), r.value("algebra", ""),
                    r.value("n", 0), json_number_text(r.at("formula_value")), json_number_text(r.at("measured_value")),
                    json_number_text(r.value("tolerance", Json(0.0))), file});
  };
  if (doc.contains("reports")) {
    for (const auto& r : doc.at("reports")) from_report(r);
  } else if (doc.contains("claim_id")) {
    from_report(doc);
  } else if (doc.contains("checks")) {
    const auto& cfg = doc.at("config");
    for (const auto& c : doc.at("checks"))
      rows.push_back({c.at("pass").get<bool>(), "flow:" + doc.value("model", std::string("?")) + ":" + c.at("name").get<std::string>(),
                      cfg.value("algebra", ""), cfg.value("n", 0), "<= " + json_number_text(c.at("bound")),
                      json_number_text(c.at("value")), json_number_text(c.at("bound")), file});
  } else {
    throw ConfigError("'" + file + "' is not a flagshift report");
  }
  return rows;
}

inline int cmd_report(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    const fs::path path(p);
    if (!fs::exists(path)) {
      err << "report: missing file '" << p << "'\n";
      return kExitConfig;
    }
    if (fs::is_directory(path)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(path);
    }
  }
  std::vector<ReportRow> rows;
  for (const auto& f : files) {
    std::ifstream in(f);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
      err << "report: cannot parse '" << f.string() << "': " << e.what() << "\n";
      return kExitConfig;
    }
    auto more = rows_from_document(doc, f.filename().string());
    rows.insert(rows.end(), more.begin(), more.end());
  }
  if (rows.empty()) {
    out << "no reports\n";
    return kExitConfig;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return !a.pass && b.pass; });

  std::size_t wc = 5, wa = 7, wf = 7, wm = 8;
  for (const auto& r : rows) {
    wc = std::max(wc, r.claim.size());
    wa = std::max(wa, r.algebra.size());
    wf = std::max(wf, r.formula.size());
    wm = std::max(wm, r.measured.size());
  }
  auto line = [&](const std::string& status, const std::string& claim, const std::string& alg, const std::string& n,
                  const std::string& formula, const std::string& measured, const std::string& tol,
                  const std::string& file) {
    out << std::left << std::setw(8) << status << std::setw(static_cast<int>(wc) + 2) << claim
        << std::setw(static_cast<int>(wa) + 2) << alg << std::setw(4) << n << std::setw(static_cast<int>(wf) + 2)
        << formula << std::setw(static_cast<int>(wm) + 2) << measured << std::setw(12) << tol << file << "\n";
  };
  line("STATUS", "CLAIM", "ALGEBRA", "N", "FORMULA", "MEASURED", "TOLERANCE", "FILE");
  bool ok = true;
  for (const auto& r : rows) {
    ok = ok && r.pass;
    line(r.pass ? "PASS" : "FAIL", r.claim, r.algebra, std::to_string(r.n), r.formula, r.measured, r.tolerance, r.file);
  }
  return ok ? kExitPass : kExitFail;
}

/// Parses arguments (argv[0] excluded) and runs the selected command.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"flagshift: certification and flows for commuting integrals on k^n"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, claims_text, s_text, t_text, a_text, p_text, q_text;
  bool no_timestamp = false;
  std::vector<std::string> report_paths;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    sub->add_option("--algebra", cfg.algebra, "compact algebra, e.g. su2, su3");
    sub->add_option("--n", cfg.n, "number of factors");
    sub->add_option("--seed", cfg.seed, "base seed (default 42, or FLAGSHIFT_SEED)");
    sub->add_option("--trials", cfg.trials, "generic points per claim");
    sub->add_option("--rank-rel", cfg.tolerances.rank_rel, "relative singular-value threshold");
    sub->add_option("--bracket-rel", cfg.tolerances.bracket_rel, "normalized bracket tolerance");
    sub->add_option("--drift", cfg.tolerances.drift, "first-integral drift tolerance");
    sub->add_option("--out", cfg.out, "write the JSON document here instead of stdout");
    sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
  };

  CLI::App* certify = app.add_subcommand("certify", "certify dimension, index and involutivity claims");
  common(certify);
  certify->add_option("--claims", claims_text, "comma list of lemma1,casimir,thm2i,thm2ii,thm3,gaudin");

  CLI::App* flow = app.add_subcommand("flow", "integrate an Euler flow and monitor first integrals");
  common(flow);
  flow->add_option("--model", cfg.flow.model, "einstein, gaudin, novi or normal");
  flow->add_option("--p", p_text, "einstein p, or 'auto'");
  flow->add_option("--q", q_text, "einstein q, or 'auto'");
  flow->add_option("--s", s_text, "novi s_1..s_{n-1}, or the einstein s");
  flow->add_option("--t", t_text, "novi t_1..t_{n-1}");
  flow->add_option("--a", a_text, "gaudin weights a_1..a_n");
  flow->add_flag("--restrict-v", cfg.flow.restrict_v, "start in v (mu = 0)");
  flow->add_option("--t-end", cfg.flow.t_end, "final time");
  flow->add_option("--dt", cfg.flow.dt, "step size");
  flow->add_option("--stride", cfg.flow.stride, "record every k-th step");
  flow->add_option("--csv", cfg.csv, "trajectory CSV path");

  CLI::App* report = app.add_subcommand("report", "tabulate JSON reports");
  report->add_option("paths", report_paths, "report files or directories")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (report->parsed()) return cmd_report(report_paths, out, err);

    CLI::App* sub = certify->parsed() ? certify : flow;
    // Precedence: defaults < FLAGSHIFT_SEED < config file < flags.
    RunConfig merged;
    merged.seed = default_seed();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot open config file '" + config_path + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config file: ") + e.what());
      }
      apply_config_json(merged, j);
    }
    auto given = [&](const char* name) { return sub->count(name) > 0; };
    if (given("--algebra")) merged.algebra = cfg.algebra;
    if (given("--n")) merged.n = cfg.n;
    if (given("--seed")) merged.seed = cfg.seed;
    if (given("--trials")) merged.trials = cfg.trials;
    if (given("--rank-rel")) merged.tolerances.rank_rel = cfg.tolerances.rank_rel;
    if (given("--bracket-rel")) merged.tolerances.bracket_rel = cfg.tolerances.bracket_rel;
    if (given("--drift")) merged.tolerances.drift = cfg.tolerances.drift;
    if (given("--out")) merged.out = cfg.out;
    merged.timestamp = !no_timestamp;
    if (sub == certify) {
      if (given("--claims")) merged.claims = split_list(claims_text);
    } else {
      if (given("--model")) merged.flow.model = cfg.flow.model;
      if (given("--p")) merged.flow.p = p_text;
      if (given("--q")) merged.flow.q = q_text;
      if (given("--s")) merged.flow.s = parse_doubles(s_text, "--s");
      if (given("--t")) merged.flow.t = parse_doubles(t_text, "--t");
      if (given("--a")) merged.flow.a = parse_doubles(a_text, "--a");
      if (given("--restrict-v")) merged.flow.restrict_v = true;
      if (given("--t-end")) merged.flow.t_end = cfg.flow.t_end;
      if (given("--dt")) merged.flow.dt = cfg.flow.dt;
      if (given("--stride")) merged.flow.stride = cfg.flow.stride;
      if (given("--csv")) merged.csv = cfg.csv;
    }
    validate(merged);
    return sub == certify ? cmd_certify(merged, out) : cmd_flow(merged, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GenericityError& e) {
    err << "genericity failure: " << e.what() << "\n";
    return kExitFail;
  } catch (const nlohmann::json::exception& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace flagshift::cli

#endif
