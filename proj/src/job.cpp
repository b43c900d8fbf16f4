#include "shifttower/job.hpp"

#include "shifttower/commutant.hpp"
#include "shifttower/dense_oracle.hpp"
#include "shifttower/entropy.hpp"
#include "shifttower/errors.hpp"
#include "shifttower/relations.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace shifttower {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxListed = 100;

template <class T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw SpecError(std::string("config field \"") + key + "\" has the wrong type");
  }
}

void check_keys(const json& doc, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [k, v] : doc.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw SpecError("unknown config field \"" + k + "\" in " + where);
  }
}

json rational_list(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(fraction_string(q));
  return out;
}

std::string status(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace

Command parse_command(const std::string& s) {
  if (s == "verify") return Command::Verify;
  if (s == "commutant") return Command::Commutant;
  if (s == "entropy") return Command::Entropy;
  if (s == "oracle") return Command::Oracle;
  if (s == "all") return Command::All;
  throw SpecError("unknown command \"" + s + "\"");
}

std::string to_string(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Commutant: return "commutant";
    case Command::Entropy: return "entropy";
    case Command::Oracle: return "oracle";
    case Command::All: return "all";
  }
  return "?";
}

std::pair<long long, long long> parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long e = std::stoll(s, &used);
      if (used != s.size()) throw SpecError("");
      return {e, 1};
    }
    const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    const long long e = std::stoll(a, &used);
    if (used != a.size()) throw SpecError("");
    const long long f = std::stoll(b, &used);
    if (used != b.size()) throw SpecError("");
    if (f == 0) throw SpecError("");
    const long long g = gcd_ll(e, f);
    return {e / g, f / g};
  } catch (const std::exception&) {
    throw SpecError("fraction \"" + s + "\" is not of the form e/f");
  }
}

std::string fraction_string(const Rational& q) {
  std::ostringstream os;
  os << numerator(q) << '/' << denominator(q);
  return os.str();
}

JobConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw SpecError("config must be a JSON object");
  check_keys(doc,
             {"spec", "depth", "window", "truncation", "relations_truncation", "seed", "tower_depth", "tower_cap",
              "shift_window", "random_products", "window_cap", "oracle"},
             "config");
  if (!doc.contains("spec")) throw SpecError("config needs a \"spec\" object");
  const json& sp = doc.at("spec");
  if (!sp.is_object()) throw SpecError("\"spec\" must be an object");
  check_keys(sp, {"variant", "dims", "traces"}, "spec");
  JobConfig cfg;
  cfg.spec.variant = parse_variant(get_or<std::string>(sp, "variant", "simplified"));
  if (!sp.contains("dims") || !sp.at("dims").is_array()) throw SpecError("spec needs a \"dims\" array");
  for (const auto& d : sp.at("dims")) {
    if (!d.is_number_integer()) throw SpecError("spec.dims entries must be integers");
    cfg.spec.dims.push_back(d.get<long long>());
  }
  if (sp.contains("traces")) {
    if (!sp.at("traces").is_array()) throw SpecError("spec.traces must be an array of \"e/f\" strings");
    for (const auto& t : sp.at("traces")) {
      if (!t.is_string()) throw SpecError("spec.traces entries must be \"e/f\" strings");
      cfg.spec.traces.push_back(parse_fraction(t.get<std::string>()));
    }
  }
  cfg.depth = get_or<int>(doc, "depth", 1);
  if (doc.contains("window")) cfg.window = get_or<int>(doc, "window", 0);
  if (doc.contains("truncation")) cfg.truncation = get_or<int>(doc, "truncation", 0);
  if (doc.contains("relations_truncation")) cfg.relations_truncation = get_or<int>(doc, "relations_truncation", 0);
  cfg.seed = get_or<unsigned>(doc, "seed", 1);
  if (doc.contains("tower_depth") && doc.at("tower_depth") != "auto")
    cfg.tower_depth = get_or<int>(doc, "tower_depth", 0);
  cfg.tower_cap = get_or<long long>(doc, "tower_cap", 64);
  cfg.shift_window = get_or<int>(doc, "shift_window", 6);
  cfg.random_products = get_or<int>(doc, "random_products", 100);
  cfg.window_cap = get_or<long long>(doc, "window_cap", 128);
  if (doc.contains("oracle")) {
    const json& o = doc.at("oracle");
    if (!o.is_object()) throw SpecError("\"oracle\" must be an object");
    check_keys(o, {"enabled", "truncation", "dense_cap"}, "oracle");
    cfg.oracle_enabled = get_or<bool>(o, "enabled", true);
    cfg.oracle_truncation = get_or<int>(o, "truncation", 0);
    cfg.dense_cap = get_or<long long>(o, "dense_cap", 256);
  }
  if (cfg.depth < 0) throw SpecError("depth must be >= 0");
  if (cfg.effective_window() < cfg.depth) throw SpecError("window must be >= depth");
  if (cfg.effective_window() < 1) throw SpecError("window must be >= 1");
  if (cfg.effective_truncation() < cfg.effective_window()) throw SpecError("truncation must be >= window");
  if (cfg.relations_truncation && *cfg.relations_truncation < 1) throw SpecError("relations_truncation must be >= 1");
  if (cfg.tower_depth && *cfg.tower_depth < 0) throw SpecError("tower_depth must be >= 0");
  if (cfg.tower_cap < 1 || cfg.window_cap < 1 || cfg.dense_cap < 1) throw SpecError("caps must be positive");
  if (cfg.shift_window < 1) throw SpecError("shift_window must be >= 1");
  if (cfg.random_products < 0) throw SpecError("random_products must be >= 0");
  if (cfg.oracle_truncation < 0) throw SpecError("oracle.truncation must be >= 0");
  return cfg;
}

json config_to_json(const JobConfig& cfg) {
  json traces = json::array();
  for (auto [e, f] : cfg.spec.traces) traces.push_back(std::to_string(e) + "/" + std::to_string(f));
  json spec{{"variant", to_string(cfg.spec.variant)}, {"dims", cfg.spec.dims}};
  if (!cfg.spec.traces.empty()) spec["traces"] = traces;
  return json{{"spec", spec},
              {"depth", cfg.depth},
              {"window", cfg.effective_window()},
              {"truncation", cfg.effective_truncation()},
              {"relations_truncation", cfg.relations_truncation.value_or(cfg.effective_truncation())},
              {"seed", cfg.seed},
              {"tower_depth", cfg.tower_depth ? json(*cfg.tower_depth) : json("auto")},
              {"tower_cap", cfg.tower_cap},
              {"shift_window", cfg.shift_window},
              {"random_products", cfg.random_products},
              {"window_cap", cfg.window_cap},
              {"oracle", {{"enabled", cfg.oracle_enabled}, {"truncation", cfg.oracle_truncation}, {"dense_cap", cfg.dense_cap}}}};
}

// ---------------------------------------------------------------------------

namespace {

json relations_json(const RelationReport& rep, int K) {
  json fams = json::array();
  long checked = 0;
  for (const auto& s : rep.summaries()) {
    fams.push_back({{"family", s.family}, {"checked", s.checked}, {"failed", s.failed}});
    checked += s.checked;
  }
  json failures = json::array();
  const auto fails = rep.failures();
  for (std::size_t k = 0; k < fails.size() && k < kMaxListed; ++k) {
    const auto& e = *fails[k];
    failures.push_back({{"family", e.rel.family},
                        {"indices", e.rel.indices},
                        {"a", e.rel.a.to_string()},
                        {"b", e.rel.b.to_string()},
                        {"expected", e.expected},
                        {"observed", e.observed}});
  }
  json site = json::array();
  for (const auto& c : rep.site_checks) site.push_back({{"check", c.name}, {"pass", c.pass}});
  return {{"status", status(rep.pass)}, {"truncation", K},           {"checked", checked},
          {"families", fams},          {"failures_total", fails.size()}, {"failures", failures},
          {"site_checks", site}};
}

json rank_json(const RankResult& r) {
  return {{"status", status(r.pass)}, {"dimension", r.dimension}, {"target", r.target},
          {"arithmetic", r.arithmetic}, {"products", r.products}};
}

json element_json(const SparseElement& e) {
  json terms = json::array();
  for (const auto& [u, c] : e.terms()) terms.push_back({u.first, u.second, c.to_string()});
  return terms;
}

json commutant_json(const CommutantReport& rep, bool prediction_required) {
  json containment = json::array();
  for (const auto& v : rep.containment) {
    json viol = json::array();
    for (std::size_t k = 0; k < v.violations.size() && k < 5; ++k) viol.push_back(v.violations[k]);
    containment.push_back({{"generator", v.generator}, {"checked", v.checked}, {"pass", v.pass}, {"violations", viol}});
  }
  json blocks = json::array();
  for (const auto& b : rep.structure.blocks)
    blocks.push_back({{"block_dim", b.block_dim},
                      {"min_trace", fraction_string(b.min_trace)},
                      {"projection_rank", b.projection_rank},
                      {"verification", b.verification},
                      {"projection_ok", b.projection_ok}});
  json structure{{"closed_product", rep.structure.closed_product},
                 {"closed_adjoint", rep.structure.closed_adjoint},
                 {"center_dim", rep.structure.center_dim},
                 {"blocks", blocks},
                 {"dimension_vector", rep.structure.dimension_vector()},
                 {"trace_vector", rational_list(rep.structure.trace_vector())},
                 {"ok", rep.structure.ok},
                 {"note", rep.structure.note}};
  json prediction{{"dimension", rep.prediction.dimension},
                  {"dimension_vector", rep.prediction.dimension_vector},
                  {"trace_vector", rational_list(rep.prediction.trace_vector)}};
  json out{{"window", rep.window},
           {"depth", rep.depth},
           {"truncation", rep.truncation},
           {"default_truncation", rep.default_truncation},
           {"restrictions", rep.restrictions},
           {"dimension", rep.basis.elements.size()},
           {"components", rep.basis.components},
           {"inconsistent_components", rep.basis.inconsistent_components},
           {"zero_components", rep.basis.zero_components},
           {"identity_in_span", rep.basis.identity_in_span},
           {"containment_pass", rep.containment_pass},
           {"containment", containment},
           {"locality", rep.locality},
           {"structure", structure},
           {"prediction", prediction},
           {"prediction_required", prediction_required},
           {"matches_prediction", rep.matches_prediction}};
  if (rep.basis.elements.size() <= 32) {
    json basis = json::array();
    for (const auto& e : rep.basis.elements) basis.push_back(element_json(e));
    out["basis"] = basis;
  }
  return out;
}

json entropy_json(const EntropyReport& rep) {
  json blocks = json::array();
  for (const auto& b : rep.blocks)
    blocks.push_back(
        {{"dim", b.dim}, {"trace", fraction_string(b.trace)}, {"contribution", round_significant(b.contribution)}});
  return {{"status", status(rep.bounds_ordered)},
          {"restricted_entropy", rep.restricted ? json(round_significant(*rep.restricted)) : json(nullptr)},
          {"lower_bound", round_significant(rep.lower)},
          {"upper_bound", round_significant(rep.upper)},
          {"index", rep.index},
          {"blocks", blocks},
          {"bounds_ordered", rep.bounds_ordered},
          {"note", rep.note}};
}

int oracle_truncation_for(const AlgebraSpec& spec, const JobConfig& cfg) {
  if (cfg.oracle_truncation > 0) return cfg.oracle_truncation;
  int K = 0;
  long long dim = 1;
  while (dim * spec.n <= cfg.dense_cap) {
    dim *= spec.n;
    ++K;
    if (spec.n == 1 && K >= 8) break;
  }
  return K;
}

}  // namespace

JobResult run_job(const JobConfig& cfg, Command command) {
  using clock = std::chrono::steady_clock;
  JobResult res;
  json& rep = res.report;
  rep["schema_version"] = kSchemaVersion;
  rep["command"] = to_string(command);
  rep["config"] = config_to_json(cfg);
  rep["sections"] = json::object();
  rep["timing"] = {{"section_ms", json::object()}};
  std::vector<std::string> failed;
  bool cap_hit = false;

  auto finish = [&](int code) {
    rep["verdict"] = {{"status", code == kExitPass ? "pass" : "fail"}, {"failed_checks", failed}, {"exit_code", code}};
    res.exit_code = code;
    return res;
  };

  AlgebraSpec spec;
  try {
    spec = validate_spec(cfg.spec);
  } catch (const SpecError& e) {
    rep["sections"]["spec"] = {{"status", "error"}, {"message", e.what()}};
    failed.push_back("spec");
    return finish(kExitConfig);
  } catch (const CapExceeded& e) {
    rep["sections"]["spec"] = {{"status", "cap-exceeded"}, {"message", e.what()}};
    failed.push_back("spec");
    return finish(kExitCap);
  }
  const int K = cfg.effective_truncation();
  const int window = cfg.effective_window();
  const int K_rel = cfg.relations_truncation.value_or(K);
  rep["derived"] = {{"n", spec.n},
                    {"j", spec.j},
                    {"a", spec.a},
                    {"a_prime", spec.a_prime},
                    {"s", rational_list(spec.s)},
                    {"N", spec.N},
                    {"block_offsets", spec.offset},
                    {"default_truncation", default_truncation(cfg.depth)},
                    {"truncation", K},
                    {"window", window},
                    {"depth", cfg.depth}};

  // Runs one section; cap violations abort the job with a partial report.
  auto section = [&](const std::string& name, const std::function<json()>& body) {
    if (cap_hit) return;
    const auto t0 = clock::now();
    json out;
    try {
      out = body();
    } catch (const CapExceeded& e) {
      out = {{"status", "cap-exceeded"}, {"message", e.what()}};
      cap_hit = true;
    } catch (const SpecError& e) {
      out = {{"status", "error"}, {"message", e.what()}};
    } catch (const ShapeError& e) {
      out = {{"status", "error"}, {"message", e.what()}};
    }
    const auto ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    rep["timing"]["section_ms"][name] = ms;
    if (out.value("status", "pass") != "pass" && out.value("status", "") != "skipped") failed.push_back(name);
    rep["sections"][name] = out;
  };

  const bool verify = command == Command::Verify || command == Command::All || command == Command::Commutant;
  std::optional<TowerContext> rel_ctx, ctx;
  auto need_ctx = [&]() -> const TowerContext& {
    if (!ctx) ctx.emplace(spec, K);
    return *ctx;
  };
  auto need_rel_ctx = [&]() -> const TowerContext& {
    if (K_rel == K) return need_ctx();
    if (!rel_ctx) rel_ctx.emplace(spec, K_rel);
    return *rel_ctx;
  };

  if (verify) {
    section("relations", [&] { return relations_json(verify_relations(need_rel_ctx()), K_rel); });
    section("shift_endomorphism", [&] {
      const auto r = verify_shift_endomorphism(need_rel_ctx(), cfg.seed, cfg.random_products);
      json gm = json::array(), tm = json::array();
      for (std::size_t k = 0; k < r.generator_mismatches.size() && k < kMaxListed; ++k) gm.push_back(r.generator_mismatches[k]);
      for (std::size_t k = 0; k < r.trace_mismatches.size() && k < kMaxListed; ++k) tm.push_back(r.trace_mismatches[k]);
      return json{{"status", status(r.pass)},
                  {"generator_checks", r.generator_checks},
                  {"generator_mismatches", gm},
                  {"trace_checks", r.trace_checks},
                  {"random_products", r.random_products},
                  {"trace_mismatches", tm}};
    });
    section("spanning", [&] { return rank_json(verify_spanning(spec)); });
    int tower_depth = 0;
    if (cfg.tower_depth) {
      tower_depth = *cfg.tower_depth;
    } else {
      for (long long dim = spec.n; tower_depth < 2 && dim <= cfg.tower_cap; dim *= spec.n) ++tower_depth;
    }
    tower_depth = std::min(tower_depth, K_rel);
    if (tower_depth > 0)
      section("tower", [&] {
        json out = rank_json(verify_tower_full(need_rel_ctx(), tower_depth, cfg.tower_cap));
        out["depth"] = tower_depth;
        return out;
      });
    section("shift_window", [&] {
      const TowerContext& c = need_rel_ctx();
      // Half the truncation is left for the witnesses r_{1+k}.
      const int w = std::min(cfg.shift_window, std::max(1, c.truncation() / 2));
      const auto r = verify_unitary_shift_window(c, w, c.truncation() - 1);
      json missing = json::array();
      for (std::size_t k = 0; k < r.missing.size() && k < kMaxListed; ++k) missing.push_back(r.missing[k]);
      return json{{"status", status(r.pass)},
                  {"window", r.window},
                  {"search_depth", r.search_depth},
                  {"words", r.words},
                  {"words_with_witness", r.words_with_witness},
                  {"missing", missing},
                  {"witnesses", r.witnesses},
                  {"condition1", r.condition1},
                  {"condition3", r.condition3},
                  {"stream", r.stream},
                  {"stream_origin", "distance 1"}};
    });
  }

  if (command == Command::Commutant || command == Command::All) {
    section("commutant", [&] {
      const CommutantReport c = compute_commutant(need_ctx(), cfg.depth, window, cfg.seed, cfg.window_cap);
      const bool required = K >= default_truncation(cfg.depth);
      json out = commutant_json(c, required);
      bool pass = c.containment_pass && c.basis.identity_in_span && c.structure.ok;
      if (required) pass = pass && c.locality && c.matches_prediction;
      out["status"] = status(pass);
      return out;
    });
  }

  if (command == Command::Entropy || command == Command::Commutant || command == Command::All)
    section("entropy", [&] { return entropy_json(entropy_bounds(spec)); });

  if ((command == Command::Oracle || command == Command::All) && cfg.oracle_enabled) {
    section("oracle", [&] {
      const int Ko = oracle_truncation_for(spec, cfg);
      json out{{"truncation", Ko}, {"dense_cap", cfg.dense_cap}};
      bool pass = true;
      long long window_dim = 1;
      for (int t = 0; t < window && window_dim <= cfg.dense_cap; ++t) window_dim *= spec.n;
      if (Ko < window) {
        out["commutant"] = {{"status", "skipped"}, {"reason", "dense cap admits no truncation >= window"}};
      } else if (window_dim * window_dim > cfg.dense_cap) {
        out["commutant"] = {{"status", "skipped"}, {"reason", "window unknowns D^2 exceed the dense cap"}};
      } else {
        const TowerContext small(spec, Ko);
        const auto exact = commutant_basis(restrict_generators(small, window, cfg.depth), spec.n, window, spec.N,
                                           cfg.window_cap);
        const auto dense = oracle_dense_commutant(spec, Ko, cfg.depth, window, cfg.dense_cap);
        const double residual = projection_residual(dense.basis, exact);
        const bool ok = dense.dimension == static_cast<long>(exact.elements.size()) && residual < 1e-6;
        pass = pass && ok;
        out["commutant"] = {{"status", status(ok)},
                            {"exact_dimension", exact.elements.size()},
                            {"dense_dimension", dense.dimension},
                            {"projection_residual", round_significant(residual, 3)}};
      }
      const int Kr = std::min(Ko, 3);
      if (Kr >= 2) {
        const TowerContext small(spec, Kr);
        const auto exact = verify_relations(small);
        const auto dense = dense_verify_relations(small, cfg.dense_cap);
        const bool agree = exact.pass == dense.pass && exact.failures().size() == dense.failures.size();
        pass = pass && agree;
        out["relations"] = {{"status", status(agree)},
                            {"truncation", Kr},
                            {"exact_pass", exact.pass},
                            {"dense_pass", dense.pass},
                            {"exact_failures", exact.failures().size()},
                            {"dense_failures", dense.failures.size()}};
      } else {
        out["relations"] = {{"status", "skipped"}, {"reason", "dense cap admits no truncation >= 2"}};
      }
      const auto avg = dense_averaging_check(spec);
      if (avg.applicable) {
        pass = pass && avg.true_order_pass;
        out["averaging"] = {{"status", status(avg.true_order_pass)},
                            {"group_order", avg.group_order},
                            {"true_order_error", round_significant(avg.true_order_error, 3)},
                            {"literal_n_term_error", round_significant(avg.literal_error, 3)},
                            {"literal_n_term_matches", avg.literal_pass}};
      } else {
        out["averaging"] = {{"status", "skipped"}, {"reason", "full variant only"}};
      }
      out["status"] = status(pass);
      return out;
    });
  }

  if (cap_hit) return finish(kExitCap);
  bool config_error = false;
  for (const auto& [name, sec] : rep["sections"].items()) config_error = config_error || sec.value("status", "") == "error";
  if (config_error) return finish(kExitConfig);
  return finish(failed.empty() ? kExitPass : kExitCheckFailed);
}

json strip_timing(const json& report) {
  json out = report;
  out.erase("timing");
  return out;
}

std::string summarize(const json& report) {
  std::ostringstream os;
  os << "command: " << report.value("command", "?") << "\n";
  if (report.contains("derived")) {
    const auto& d = report["derived"];
    os << "spec: n=" << d["n"] << " j=" << d["j"] << " N=" << d["N"] << " K=" << d["truncation"]
       << " window=" << d["window"] << " depth=" << d["depth"] << "\n";
  }
  for (const auto& [name, sec] : report["sections"].items()) {
    os << "  " << name << ": " << sec.value("status", "?");
    if (name == "relations") os << " (" << sec["checked"] << " checks, " << sec["failures_total"] << " failed)";
    if (name == "spanning" || name == "tower") os << " (dim " << sec["dimension"] << " / " << sec["target"] << ")";
    if (name == "commutant")
      os << " (dim " << sec["dimension"] << ", blocks " << sec["structure"]["dimension_vector"].dump() << ", traces "
         << sec["structure"]["trace_vector"].dump() << ")";
    if (name == "entropy")
      os << " (restricted " << sec["restricted_entropy"].dump() << ", H(A) " << sec["lower_bound"] << ", ln n "
         << sec["upper_bound"] << ", index " << sec["index"] << ")";
    if (sec.contains("message")) os << " - " << sec["message"].get<std::string>();
    os << "\n";
  }
  os << "verdict: " << report["verdict"].value("status", "?") << "\n";
  return os.str();
}

}  // namespace shifttower
