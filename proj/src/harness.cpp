#include "hardcore/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "hardcore/approx.hpp"
#include "hardcore/contour.hpp"
#include "hardcore/flow.hpp"
#include "hardcore/iso.hpp"
#include "hardcore/sampler.hpp"

namespace hardcore {

namespace {

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (v.empty() || ec != std::errc{} || p != end) throw UsageError(key + ": expected a non-negative integer, got '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v, int lo, int hi) {
  int x = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (v.empty() || ec != std::errc{} || p != end) throw UsageError(key + ": expected an integer, got '" + v + "'");
  if (x < lo || x > hi) throw UsageError(key + ": " + v + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

double parse_decimal(const std::string& key, const std::string& v) {
  if (v.find('/') != std::string::npos) throw UsageError(key + ": sampling takes decimal values, got '" + v + "'");
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(x))
    throw UsageError(key + ": expected a decimal number, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw UsageError(key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_point(const std::string& key, std::string v) {
  if (!v.empty() && v.front() == '(') {
    if (v.back() != ')') throw UsageError(key + ": unbalanced parentheses in '" + v + "'");
    v = v.substr(1, v.size() - 2);
  }
  std::vector<int> out;
  for (const auto& part : split(v, ',')) out.push_back(parse_int(key, part, -1000000, 1000000));
  return out;
}

std::string format_point(const std::vector<int>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

const std::vector<std::string>& default_lambdas(const std::string& sub) {
  static const std::vector<std::string> one{"1"};
  static const std::vector<std::string> gap{"0.5", "5"};
  return sub == "gap-scan" ? gap : one;
}

bool is_sampling(const std::string& sub) { return sub == "sample" || sub == "gap-scan"; }

Boundary boundary_or_default(const RunConfig& cfg) {
  if (cfg.boundary) return *cfg.boundary;
  const bool audit = cfg.subcommand == "contour-audit" || cfg.subcommand == "flow-audit" || cfg.subcommand == "approx-audit";
  return audit ? Boundary::odd : Boundary::even;
}

std::vector<std::string> lambdas_of(const RunConfig& cfg) {
  return cfg.lambdas.empty() ? default_lambdas(cfg.subcommand) : cfg.lambdas;
}

Vertex v0_of(const RunConfig& cfg, const Torus& t) {
  if (!cfg.v0) return t.origin();
  if (static_cast<int>(cfg.v0->size()) != t.dim()) throw UsageError("v0: expected " + std::to_string(t.dim()) + " coordinates");
  for (int c : *cfg.v0)
    if (c < -(t.half_side() - 1) || c > t.half_side())
      throw UsageError("v0: coordinates must lie in [" + std::to_string(-(t.half_side() - 1)) + ", " +
                       std::to_string(t.half_side()) + "]");
  return t.vertex_at(*cfg.v0);
}

FlowPolicy policy_of(const RunConfig& cfg) {
  FlowPolicy p = cfg.force_large ? FlowPolicy::forced_large()
                 : cfg.tau       ? FlowPolicy{*cfg.tau, std::nullopt}
                                 : FlowPolicy::standard(cfg.d);
  p.psi = cfg.psi;
  return p;
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json names_failing(const std::map<std::string, std::size_t>& m) {
  auto out = nlohmann::json::array();
  for (const auto& [name, n] : m)
    if (n) out.push_back(name);
  return out;
}

// Configurations of J0 for contour-based audits: exhaustive, sampled, or the replay list.
std::vector<VertexSet> audit_configs(const RunConfig& cfg, const Ensemble& e, Vertex v0, nlohmann::json& source) {
  const std::size_t n = e.torus().vertex_count();
  if (!cfg.instances.empty()) {
    std::vector<VertexSet> out;
    for (const auto& h : cfg.instances) out.push_back(VertexSet::from_hex(n, h));
    source = {{"mode", "replay"}, {"count", out.size()}};
    return out;
  }
  if (cfg.samples == 0) {
    auto out = enumerate_J0(e, v0, cfg.budget);
    source = {{"mode", "exhaustive"}, {"count", out.size()}};
    return out;
  }
  const double lam = parse_decimal("lambda", lambdas_of(cfg).front());
  if (!(lam > 0)) throw UsageError("lambda: sampling needs lambda > 0");
  ChainState chain(e, cfg.seed, 0);
  const std::uint64_t thin = 10;
  const std::uint64_t max_sweeps = std::max<std::uint64_t>(cfg.sweeps, thin * cfg.samples * 1000);
  auto out = collect_samples(chain, lam, cfg.burn_in, thin, cfg.samples, max_sweeps,
                             [&](const VertexSet& I) { return in_J0(e, I, v0); });
  std::set<std::string> distinct;
  for (const auto& I : out) distinct.insert(I.to_hex());
  source = {{"mode", "sampled"}, {"lambda", lam},   {"thin", thin},
            {"count", out.size()}, {"distinct", distinct.size()}, {"sweeps_used", chain.sweeps()}};
  if (out.size() < cfg.samples) throw std::length_error("sampler found too few members of J0 within the sweep cap");
  return out;
}

RunResult run_exact(const RunConfig& cfg, std::ostream& log) {
  const Torus t = Torus::make(cfg.d, cfg.M);
  const Ensemble e(t, boundary_or_default(cfg));
  const Vertex v0 = v0_of(cfg, t);
  RunResult res;
  auto results = nlohmann::json::array();
  const auto outer = e.outer_parity();
  for (const auto& text : lambdas_of(cfg)) {
    Activity lam(0);
    try {
      lam = Activity::parse(text);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(std::string("lambda: ") + ex.what());
    }
    const Rational occ = occupation_probability(e, lam, v0, cfg.budget);
    results.push_back(exact_record(e, lam, v0, occ, "occupation"));
    results.push_back(exact_record(e, lam, v0, partition_function(e, lam, cfg.budget), "partition_function"));
    if (outer && t.parity(v0) != *outer && lam.value() > 0)
      results.push_back(exact_record(e, lam, v0, prob_J0(e, lam, v0, cfg.budget), "prob_J0"));
    const auto id = conditional_occupation_identity_check(e, lam, v0, cfg.budget);
    if (id.applicable && !id.holds)
      res.failures.push_back({{"kind", "exact"}, {"lambda", text}, {"check", "conditional_occupation"}});
    log << "exact lambda=" << text << " occupation=" << to_string(occ) << "\n";
  }
  res.report = {{"header", header_json(cfg)}, {"results", results}};
  res.artifacts.push_back({"", json_text(res.report)});
  return res;
}

RunResult run_sample(const RunConfig& cfg, std::ostream& log) {
  const Torus t = Torus::make(cfg.d, cfg.M);
  const Ensemble e(t, boundary_or_default(cfg));
  const Vertex v0 = v0_of(cfg, t);
  if (cfg.sweeps <= cfg.burn_in) throw UsageError("sweeps must exceed burn_in");
  RunResult res;
  std::string csv = csv_header_block(cfg) + estimate_csv_header() + "\n";
  auto rows = nlohmann::json::array();
  const auto texts = lambdas_of(cfg);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const double lam = parse_decimal("lambda", texts[i]);
    if (!(lam > 0)) throw UsageError("lambda: sampling needs lambda > 0");
    const auto r = estimate_occupation(e, lam, v0, cfg.sweeps, cfg.burn_in, cfg.seed, i);
    csv += estimate_csv_row(e, lam, v0, r) + "\n";
    rows.push_back({{"lambda", lam},
                    {"estimate", r.estimate},
                    {"stderr", r.std_error},
                    {"stream", r.stream},
                    {"burn_in_suspect", r.burn_in_suspect}});
    log << "sample lambda=" << lam << " estimate=" << r.estimate << " stderr=" << r.std_error << "\n";
  }
  res.report = {{"header", header_json(cfg)}, {"rows", rows}};
  res.artifacts.push_back({"", csv});
  return res;
}

RunResult run_gap_scan(const RunConfig& cfg, std::ostream& log) {
  const Torus t = Torus::make(cfg.d, cfg.M);
  const Vertex v0 = v0_of(cfg, t);
  if (t.parity(v0) != Parity::even) throw UsageError("gap-scan: v0 must be an even vertex");
  if (cfg.sweeps <= cfg.burn_in) throw UsageError("sweeps must exceed burn_in");
  std::vector<double> lams;
  for (const auto& text : lambdas_of(cfg)) {
    lams.push_back(parse_decimal("lambda", text));
    if (!(lams.back() > 0)) throw UsageError("lambda: sampling needs lambda > 0");
  }
  const auto rows = gap_scan(t, lams, v0, cfg.sweeps, cfg.burn_in, cfg.seed);
  RunResult res;
  std::ostringstream csv;
  csv << csv_header_block(cfg) << "lambda,even,even_stderr,odd,odd_stderr,gap,gap_stderr\n" << std::setprecision(10);
  auto js = nlohmann::json::array();
  for (const auto& r : rows) {
    csv << r.lambda << ',' << r.even.estimate << ',' << r.even.std_error << ',' << r.odd.estimate << ','
        << r.odd.std_error << ',' << r.gap() << ',' << r.gap_std_error() << '\n';
    js.push_back({{"lambda", r.lambda}, {"gap", r.gap()}, {"gap_stderr", r.gap_std_error()}});
    log << "gap-scan lambda=" << r.lambda << " gap=" << r.gap() << " stderr=" << r.gap_std_error() << "\n";
  }
  res.report = {{"header", header_json(cfg)}, {"rows", js}};
  res.artifacts.push_back({"", csv.str()});
  return res;
}

RunResult run_contour_audit(const RunConfig& cfg, std::ostream& log) {
  const Torus t = Torus::make(cfg.d, cfg.M);
  const Ensemble e(t, boundary_or_default(cfg));
  const Vertex v0 = v0_of(cfg, t);
  const auto outer = e.outer_parity();
  if (!outer || t.parity(v0) == *outer) throw UsageError("contour-audit: v0 must have the parity opposite the boundary");
  nlohmann::json source;
  const auto configs = audit_configs(cfg, e, v0, source);
  const auto rep = contour_audit(e, v0, configs);
  RunResult res;
  for (const auto& I : rep.failing) {
    nlohmann::json f{{"kind", "contour"}, {"I", I.to_hex()}};
    if (in_J0(e, I, v0))
      f["properties"] = check_contour(e, build_contour(e, I, v0)).to_json();
    else
      f["properties"] = {{"in_J0", false}};
    res.failures.push_back(std::move(f));
  }
  res.report = {{"header", header_json(cfg)},
                {"source", source},
                {"audited", rep.audited},
                {"failures", rep.failures},
                {"property_failures", rep.property_failures},
                {"distinct_pairs", rep.multiplicity.size()},
                {"records", rep.records}};
  res.artifacts.push_back({"", json_text(res.report)});
  log << "contour-audit audited=" << rep.audited << " failures=" << rep.failures << "\n";
  return res;
}

RunResult run_flow_audit(const RunConfig& cfg, std::ostream& log) {
  const Torus t = Torus::make(cfg.d, cfg.M);
  const Ensemble e(t, boundary_or_default(cfg));
  const Vertex v0 = v0_of(cfg, t);
  const auto outer = e.outer_parity();
  if (!outer || t.parity(v0) == *outer) throw UsageError("flow-audit: v0 must have the parity opposite the boundary");
  const FlowPolicy policy = policy_of(cfg);
  RunResult res;
  auto runs = nlohmann::json::array();
  const auto texts = lambdas_of(cfg);
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Activity lam(0);
    try {
      lam = Activity::parse(texts[i]);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(std::string("lambda: ") + ex.what());
    }
    if (lam.value() <= 0) throw UsageError("flow-audit: lambda must be positive");
    const auto rep = defect_audit(e, lam, v0, policy, cfg.budget);
    std::ostringstream csv;
    csv << csv_header_block(cfg) << "# lambda=" << texts[i] << "\nJ_mask,defect_num,defect_den,argmax_I_mask\n";
    for (const auto& r : rep.rows)
      csv << hex64(r.J) << ',' << r.defect.get_num().get_str() << ',' << r.defect.get_den().get_str() << ','
          << hex64(r.argmax_I) << '\n';
    res.artifacts.push_back({texts.size() == 1 ? ".defect.csv" : ".defect." + std::to_string(i) + ".csv", csv.str()});

    for (auto mask : rep.failing_I)
      res.failures.push_back({{"kind", "flow"}, {"lambda", texts[i]}, {"I", hex64(mask)}});
    nlohmann::json globals = nlohmann::json::array();
    const std::pair<const char*, bool> global_checks[] = {{"identity", rep.identity},
                                                          {"telescoping", rep.telescoping},
                                                          {"prob_agrees", rep.prob_agrees},
                                                          {"prob_below_max", rep.prob_below_max}};
    for (const auto& [name, pass] : global_checks)
      if (!pass) globals.push_back(name);
    if (!globals.empty()) res.failures.push_back({{"kind", "flow-global"}, {"lambda", texts[i]}, {"checks", globals}});

    runs.push_back({{"lambda", texts[i]},
                    {"J_count", rep.J_count},
                    {"J0_count", rep.J0_count},
                    {"large_count", rep.large_count},
                    {"fallback_count", rep.fallback_count},
                    {"phi_members", rep.phi_members},
                    {"failures", rep.failures},
                    {"cover_checks", rep.cover_checks},
                    {"cover_cross_checked", rep.cover_cross_checked},
                    {"max_defect", to_string(rep.max_defect)},
                    {"argmax_J", hex64(rep.argmax_J)},
                    {"weight_J0", to_string(rep.weight_J0)},
                    {"weight_J", to_string(rep.weight_J)},
                    {"prob_J0_flow", to_string(rep.prob_J0_flow)},
                    {"prob_J0_direct", to_string(rep.prob_J0_direct)},
                    {"identity", rep.identity},
                    {"telescoping", rep.telescoping},
                    {"prob_agrees", rep.prob_agrees},
                    {"prob_below_max", rep.prob_below_max},
                    {"row_sums", rep.row_sums},
                    {"ok", rep.ok()}});
    log << "flow-audit lambda=" << texts[i] << " J0=" << rep.J0_count << " max_defect=" << to_string(rep.max_defect)
        << " ok=" << (rep.ok() ? "true" : "false") << "\n";
  }
  res.report = {{"header", header_json(cfg)}, {"policy", {{"tau", policy.tau}, {"force_large", cfg.force_large}}},
                {"runs", runs}};
  res.artifacts.insert(res.artifacts.begin(), Artifact{"", json_text(res.report)});
  return res;
}

RunResult run_approx_audit(const RunConfig& cfg, std::ostream& log) {
  const Torus t = Torus::make(cfg.d, cfg.M);
  const Ensemble e(t, boundary_or_default(cfg));
  const Vertex v0 = v0_of(cfg, t);
  const auto outer = e.outer_parity();
  if (!outer || t.parity(v0) == *outer) throw UsageError("approx-audit: v0 must have the parity opposite the boundary");
  std::vector<GAPair> pairs;
  nlohmann::json source;
  if (!cfg.instances.empty()) {
    for (const auto& h : cfg.instances) pairs.push_back(GAPair::from_A(t, *outer, VertexSet::from_hex(t.vertex_count(), h)));
    source = {{"mode", "replay"}, {"count", pairs.size()}};
  } else if (cfg.source == "pairs") {
    GAEnumOptions opts;
    opts.v0 = v0;
    opts.budget = cfg.budget;
    pairs = enumerate_GA_pairs(t, *outer, opts);
    source = {{"mode", "pairs"}, {"count", pairs.size()}};
  } else {
    RunConfig inner = cfg;
    inner.instances.clear();
    const auto configs = audit_configs(inner, e, v0, source);
    std::set<std::string> seen;
    for (const auto& I : configs) {
      const GAPair p = build_contour(e, I, v0).pair();
      if (seen.insert(p.A.to_hex()).second) pairs.push_back(p);
    }
    source["distinct_pairs"] = pairs.size();
  }
  PiParams params;
  params.psi = cfg.psi;
  const auto rep = approx_audit(t, pairs, params, v0);
  RunResult res;
  for (const auto& p : rep.failing) {
    const auto single = approx_audit(t, {p}, params, v0, Exec::serial);
    res.failures.push_back({{"kind", "approx"}, {"A", p.A.to_hex()}, {"checks", names_failing(single.property_failures)}});
  }
  res.report = {{"header", header_json(cfg)},
                {"source", source},
                {"audited", rep.audited},
                {"failures", rep.failures},
                {"property_failures", rep.property_failures},
                {"degeneracies", rep.degeneracies},
                {"distinct_outputs", rep.distinct_outputs},
                {"max_U2_ratio", rep.max_U2_ratio},
                {"max_app12_ratio", rep.max_app12_ratio},
                {"records", rep.records}};
  res.artifacts.push_back({"", json_text(res.report)});
  log << "approx-audit audited=" << rep.audited << " failures=" << rep.failures
      << " distinct_outputs=" << rep.distinct_outputs << "\n";
  return res;
}

RunResult run_iso(const RunConfig& cfg, std::ostream& log) {
  const auto bc = ball_counts(cfg.d, cfg.r_max + 1);
  RunResult res;
  std::size_t checked = 0;
  for (int q = 1; q <= cfg.r_max; ++q) {
    for (int t = 1; t < std::min(q, cfg.d); ++t) {
      try {
        f_ratio(q, t, cfg.d);
      } catch (const std::logic_error& ex) {
        if (dynamic_cast<const std::out_of_range*>(&ex)) throw;
        res.failures.push_back({{"kind", "iso"}, {"check", "f_ratio"}, {"q", q}, {"t", t}});
      }
      ++checked;
    }
    // s(q)/s(q+1) ≤ min(q+1,d)/(2d - t(q)).
    const auto qi = static_cast<std::size_t>(q);
    const Rational lhs(bc.s[qi], bc.s[qi + 1]);
    const Rational rhs = Rational(std::min(q + 1, cfg.d)) / (2 * cfg.d - bc.t_of(q));
    if (lhs > rhs) res.failures.push_back({{"kind", "iso"}, {"check", "qratio"}, {"q", q}});
  }
  const auto table = ball_counts(cfg.d, cfg.r_max);
  res.report = {{"header", header_json(cfg)}, {"f_ratio_cells", checked}, {"failures", res.failures.size()}};
  res.artifacts.push_back({"", csv_header_block(cfg) + sqt_csv(table)});
  res.artifacts.push_back({".ball.csv", csv_header_block(cfg) + ball_csv(table)});
  log << "iso d=" << cfg.d << " r_max=" << cfg.r_max << " f_ratio_cells=" << checked
      << " failures=" << res.failures.size() << "\n";
  return res;
}

RunResult run_replay(const RunConfig& cfg, std::ostream& log) {
  if (cfg.file.empty()) throw UsageError("replay: file=<failures.json> is required");
  std::ifstream in(cfg.file);
  if (!in) throw UsageError("replay: cannot open " + cfg.file);
  nlohmann::json art;
  try {
    art = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError(std::string("replay: malformed artifact: ") + ex.what());
  }
  if (!art.contains("header") || !art["header"].contains("config") || !art.contains("failures"))
    throw UsageError("replay: artifact needs header.config and failures");
  RunConfig inner;
  apply_json(inner, art["header"]["config"]);
  inner.subcommand = art["header"]["config"].value("subcommand", "");
  if (inner.subcommand == "replay") throw UsageError("replay: nested replay artifact");
  inner.threads = cfg.threads;
  const auto& stored = art["failures"];
  if (inner.subcommand == "contour-audit" || inner.subcommand == "approx-audit") {
    const char* key = inner.subcommand == "contour-audit" ? "I" : "A";
    for (const auto& f : stored)
      if (f.contains(key)) inner.instances.push_back(f[key].get<std::string>());
  }
  validate(inner);
  std::ostringstream inner_log;
  RunResult rerun;
  if (inner.subcommand == "contour-audit" || inner.subcommand == "approx-audit") {
    if (inner.instances.empty()) {
      rerun.status = kExitOk;
    } else {
      rerun = run(inner, inner_log);
    }
  } else {
    rerun = run(inner, inner_log);
  }
  const bool reproduced = rerun.failures == stored;
  RunResult res;
  res.failures = rerun.failures;
  res.report = {{"header", header_json(cfg)},
                {"replayed", inner.subcommand},
                {"replayed_hash", hex64(inner.hash())},
                {"stored_failures", stored.size()},
                {"observed_failures", rerun.failures.size()},
                {"reproduced", reproduced}};
  res.artifacts.push_back({"", json_text(res.report)});
  log << "replay " << inner.subcommand << " stored=" << stored.size() << " observed=" << rerun.failures.size()
      << " reproduced=" << (reproduced ? "true" : "false") << "\n";
  res.status = (!reproduced || !rerun.failures.empty()) ? kExitInvariant : kExitOk;
  return res;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j{{"subcommand", subcommand},
                   {"d", d},
                   {"M", M},
                   {"lambda", lambdas.empty() ? default_lambdas(subcommand) : lambdas},
                   {"seed", seed},
                   {"sweeps", sweeps},
                   {"burn_in", burn_in},
                   {"force_large", force_large},
                   {"budget", budget},
                   {"samples", samples},
                   {"r_max", r_max},
                   {"source", source}};
  j["boundary"] = to_string(boundary_or_default(*this));
  j["v0"] = v0 ? nlohmann::json(format_point(*v0)) : nlohmann::json("origin");
  j["tau"] = tau ? nlohmann::json(*tau) : nlohmann::json(nullptr);
  j["psi"] = psi ? nlohmann::json(*psi) : nlohmann::json(nullptr);
  if (!file.empty()) j["file"] = file;
  return j;
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "d") {
    cfg.d = parse_int(key, value, 1, 64);
  } else if (key == "M") {
    cfg.M = parse_int(key, value, 2, 1 << 20);
  } else if (key == "lambda") {
    cfg.lambdas = split(value, ',');
    for (const auto& l : cfg.lambdas)
      if (l.empty()) throw UsageError("lambda: empty entry in '" + value + "'");
  } else if (key == "v0") {
    if (value == "origin")
      cfg.v0.reset();
    else
      cfg.v0 = parse_point(key, value);
  } else if (key == "boundary") {
    try {
      cfg.boundary = parse_boundary(value);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(std::string("boundary: ") + ex.what());
    }
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "sweeps") {
    cfg.sweeps = parse_u64(key, value);
  } else if (key == "burn_in" || key == "burn-in") {
    cfg.burn_in = parse_u64(key, value);
  } else if (key == "tau") {
    if (value == "null" || value == "inf" || value == "max")
      cfg.tau = value == "null" ? std::nullopt : std::optional<std::size_t>(FlowPolicy::small_only().tau);
    else
      cfg.tau = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "force_large" || key == "force-large") {
    cfg.force_large = parse_bool(key, value);
  } else if (key == "psi") {
    if (value == "null") {
      cfg.psi.reset();
    } else {
      const double p = parse_decimal(key, value);
      if (!(p > 0)) throw UsageError("psi: must be positive");
      cfg.psi = p;
    }
  } else if (key == "budget") {
    cfg.budget = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "samples") {
    cfg.samples = static_cast<std::size_t>(parse_u64(key, value));
  } else if (key == "r_max") {
    cfg.r_max = parse_int(key, value, 0, 10000);
  } else if (key == "source") {
    if (value != "contours" && value != "pairs") throw UsageError("source: expected contours or pairs");
    cfg.source = value;
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = parse_int(key, value, 0, 4096);
  } else if (key == "file") {
    cfg.file = value;
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

void apply_json(RunConfig& cfg, const nlohmann::json& obj) {
  if (!obj.is_object()) throw UsageError("config: expected a JSON object");
  for (const auto& [key, val] : obj.items()) {
    if (key == "subcommand") continue;
    std::string text;
    if (val.is_null()) {
      text = "null";
    } else if (val.is_string()) {
      text = val.get<std::string>();
    } else if (val.is_boolean()) {
      text = val.get<bool>() ? "true" : "false";
    } else if (val.is_number_integer() || val.is_number_unsigned()) {
      text = val.dump();
    } else if (val.is_number_float()) {
      std::ostringstream os;
      os << std::setprecision(17) << val.get<double>();
      text = os.str();
    } else if (val.is_array() && key == "lambda") {
      for (std::size_t i = 0; i < val.size(); ++i) {
        if (!val[i].is_string() && !val[i].is_number()) throw UsageError("lambda: entries must be strings or numbers");
        text += (i ? "," : "") + (val[i].is_string() ? val[i].get<std::string>() : val[i].dump());
      }
    } else {
      throw UsageError("config: unsupported value for '" + key + "'");
    }
    if (key == "v0" && text == "origin") {
      cfg.v0.reset();
      continue;
    }
    if (key == "tau" && text == "null") {
      cfg.tau.reset();
      continue;
    }
    apply_setting(cfg, key, text);
  }
}

RunConfig parse_args(int argc, const char* const* argv) {
  if (argc < 2) throw UsageError("missing subcommand");
  RunConfig cfg;
  cfg.subcommand = argv[1];
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), cfg.subcommand) == subs.end())
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + arg + "'");
    kv.emplace_back(arg.substr(0, eq), arg.substr(eq + 1));
  }
  for (const auto& [k, v] : kv)
    if (k == "config") {
      std::ifstream in(v);
      if (!in) throw UsageError("config: cannot open " + v);
      try {
        apply_json(cfg, nlohmann::json::parse(in));
      } catch (const nlohmann::json::exception& ex) {
        throw UsageError(std::string("config: ") + ex.what());
      }
    }
  for (const auto& [k, v] : kv)
    if (k != "config") apply_setting(cfg, k, v);
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), cfg.subcommand) == subs.end())
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
  if (cfg.d < 1) throw UsageError("d must be at least 1");
  if (cfg.M < 2) throw UsageError("M must be at least 2");
  if (cfg.v0 && static_cast<int>(cfg.v0->size()) != cfg.d)
    throw UsageError("v0: expected " + std::to_string(cfg.d) + " coordinates");
  if (is_sampling(cfg.subcommand))
    for (const auto& l : cfg.lambdas) parse_decimal("lambda", l);
  if (cfg.force_large && cfg.tau) throw UsageError("tau and force_large are mutually exclusive");
  if (cfg.subcommand == "replay" && cfg.file.empty()) throw UsageError("replay: file=<failures.json> is required");
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> subs{"exact",        "sample",       "gap-scan", "contour-audit",
                                             "flow-audit",   "approx-audit", "iso",      "replay"};
  return subs;
}

std::string usage() {
  return "usage: hardcore_lab <subcommand> key=value ... [config=file.json]\n"
         "subcommands: exact sample gap-scan contour-audit flow-audit approx-audit iso replay\n"
         "keys: d M lambda boundary v0 seed sweeps burn_in tau force_large psi budget samples r_max source out "
         "threads file\n"
         "exit status: 0 ok, 1 invariant failure, 2 usage error\n";
}

std::string hex64(std::uint64_t x) {
  std::ostringstream os;
  os << "0x" << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

nlohmann::json header_json(const RunConfig& cfg) {
  return {{"tool", "hardcore_lab"},
          {"subcommand", cfg.subcommand},
          {"config", cfg.to_json()},
          {"config_hash", hex64(cfg.hash())},
          {"seed", cfg.seed}};
}

std::string csv_header_block(const RunConfig& cfg) {
  return "# hardcore_lab " + cfg.subcommand + "\n# config_hash=" + hex64(cfg.hash()) +
         "\n# seed=" + std::to_string(cfg.seed) + "\n# config=" + cfg.to_json().dump() + "\n";
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  RunResult res;
  const std::string& s = cfg.subcommand;
  if (s == "exact") res = run_exact(cfg, log);
  else if (s == "sample") res = run_sample(cfg, log);
  else if (s == "gap-scan") res = run_gap_scan(cfg, log);
  else if (s == "contour-audit") res = run_contour_audit(cfg, log);
  else if (s == "flow-audit") res = run_flow_audit(cfg, log);
  else if (s == "approx-audit") res = run_approx_audit(cfg, log);
  else if (s == "iso") res = run_iso(cfg, log);
  else res = run_replay(cfg, log);
  if (s != "replay") res.status = res.failures.empty() ? kExitOk : kExitInvariant;
  return res;
}

void write_artifacts(const RunConfig& cfg, const RunResult& result, std::ostream& stdout_sink) {
  if (cfg.out.empty()) {
    if (!result.artifacts.empty()) stdout_sink << result.artifacts.front().text;
    return;
  }
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  };
  for (const auto& a : result.artifacts) write(cfg.out + a.suffix, a.text);
  if (cfg.subcommand != "replay") {
    const nlohmann::json fail{{"header", header_json(cfg)}, {"failures", result.failures}};
    write(cfg.out + ".failures.json", json_text(fail));
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n" << usage();
    return kExitUsage;
  }
  try {
    const auto res = run(cfg, err);
    write_artifacts(cfg, res, out);
    if (res.status != kExitOk) {
      if (cfg.subcommand == "replay")
        err << "replay: " << (res.report.value("reproduced", false) ? "failures persist" : "failures not reproduced") << "\n";
      else
        err << "invariant failures: " << res.failures.size() << "\n";
    }
    return res.status;
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n" << usage();
    return kExitUsage;
  } catch (const std::length_error& ex) {
    err << "error: budget: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace hardcore
