#pragma once

// Job-file front end: parse a self-contained JSON job description,
// dispatch the named command, and emit a text report plus a
// machine-readable JSON report.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nca/gf.hpp"
#include "nca/grmod.hpp"
#include "nca/groebner.hpp"
#include "nca/regularity.hpp"
#include "nca/resolution.hpp"
#include "nca/serialize.hpp"

namespace nca {

struct Command {
  std::string name;
  int h = -1;
  int D = -1;
  std::optional<std::string> module;
  std::optional<std::pair<int, int>> s_range;
};

struct JobDescription {
  FieldSpec field;
  AlgebraPresentation algebra;
  std::optional<DualityDatum> duality;
  std::vector<std::string> assertions;
  std::map<std::string, GradedModulePresentation> modules;
  Command command;
};

inline JobDescription parse_job(const nlohmann::json& j) {
  JobDescription job;
  if (j.contains("field")) {
    if (!j["field"].contains("p")) throw UsageError("field block needs p");
    job.field.p = j["field"]["p"].get<std::uint32_t>();
  }
  Fp fp(job.field);

  if (!j.contains("algebra")) throw UsageError("missing algebra block");
  const auto& alg = j["algebra"];
  GeneratorSet gens;
  for (const auto& g : alg.at("generators")) {
    gens.names.push_back(g.at("name").get<std::string>());
    gens.degrees.push_back(g.at("degree").get<int>());
  }
  validate_generators(gens);

  MonomialOrder order = MonomialOrder::identity(gens.size());
  if (alg.contains("order") && !alg["order"].is_null()) {
    const auto& ord = alg["order"];
    if (ord.size() != gens.size())
      throw UsageError("order must list every generator exactly once");
    for (std::size_t rank = 0; rank < ord.size(); ++rank) {
      int idx = gens.index_of(ord[rank].get<std::string>());
      if (idx < 0) throw UsageError("order names unknown generator");
      order.rank_of[static_cast<std::size_t>(idx)] = static_cast<int>(rank);
    }
  }
  job.algebra.field = job.field;
  job.algebra.gens = gens;
  job.algebra.order = order;
  if (alg.contains("relations"))
    for (const auto& r : alg["relations"])
      job.algebra.relations.push_back(parse(r.get<std::string>(), gens, fp));
  validate_algebra(job.algebra);

  if (alg.contains("duality") && !alg["duality"].is_null()) {
    DualityDatum dd;
    dd.d = alg["duality"].at("d").get<int>();
    dd.l = alg["duality"].at("l").get<int>();
    job.duality = dd;
  }
  if (alg.contains("assertions"))
    for (const auto& a : alg["assertions"])
      job.assertions.push_back(a.get<std::string>());

  if (j.contains("modules")) {
    for (const auto& [name, m] : j["modules"].items()) {
      GradedModulePresentation gp;
      for (const auto& d : m.at("generators")) gp.gen_degrees.push_back(d.get<int>());
      if (m.contains("relations")) {
        for (const auto& rel : m["relations"]) {
          if (rel.size() != gp.gen_degrees.size())
            throw UsageError("module " + name +
                             ": relation length must equal generator count");
          std::vector<NcPoly> v;
          for (const auto& comp : rel) {
            std::string text = comp.get<std::string>();
            v.push_back(text.empty() || text == "0"
                            ? NcPoly{}
                            : parse(text, gens, fp));
          }
          gp.relations.push_back(std::move(v));
        }
      }
      job.modules.emplace(name, std::move(gp));
    }
  }

  if (!j.contains("command")) throw UsageError("missing command block");
  const auto& c = j["command"];
  job.command.name = c.at("name").get<std::string>();
  if (!c.contains("h") || !c.contains("D"))
    throw UsageError("command block must set the window h and D explicitly");
  job.command.h = c["h"].get<int>();
  job.command.D = c["D"].get<int>();
  if (job.command.h < 0 || job.command.D < 0)
    throw UsageError("window bounds must be non-negative");
  if (c.contains("module") && !c["module"].is_null())
    job.command.module = c["module"].get<std::string>();
  if (c.contains("s_range") && !c["s_range"].is_null()) {
    if (c["s_range"].size() != 2) throw UsageError("s_range must be [lo, hi]");
    job.command.s_range = {c["s_range"][0].get<int>(),
                           c["s_range"][1].get<int>()};
  }
  return job;
}

struct RunResult {
  int exit_code = 0;
  std::string text;
  nlohmann::json report;
};

namespace detail {

inline const GradedModulePresentation& required_module(
    const JobDescription& job) {
  if (!job.command.module)
    throw UsageError("command '" + job.command.name + "' needs a module");
  auto it = job.modules.find(*job.command.module);
  if (it == job.modules.end())
    throw UsageError("unknown module '" + *job.command.module + "'");
  return it->second;
}

inline int status_exit(const std::string& status) {
  return status == "fail" ? 1 : 0;
}

}  // namespace detail

inline RunResult run_job(const JobDescription& job) {
  RunResult out;
  std::ostringstream text;
  const Command& cmd = job.command;
  const int h = cmd.h, D = cmd.D;

  if (cmd.name == "gb") {
    TruncatedGB gb = complete(job.algebra, D);
    Fp fp(job.field);
    text << "Groebner basis of the defining ideal, complete to degree " << D
         << " (" << gb.rules.size() << " rules):\n";
    nlohmann::json rules = nlohmann::json::array();
    for (const auto& r : gb.rules) {
      NcPoly poly = NcPoly::monomial(r.lead);
      poly = add(fp, poly, negate(fp, r.tail));
      std::string s = print(poly, job.algebra.gens, job.algebra.order, fp);
      text << "  " << s << "\n";
      rules.push_back(s);
    }
    out.report = {{"claim", "groebner-basis"},
                  {"window", {h, D}},
                  {"status", "pass"},
                  {"details", {{"rules", rules}}}};
    out.text = text.str();
    return out;
  }

  AlgebraRealization R = realize(complete(job.algebra, D));

  if (cmd.name == "hilbert") {
    std::vector<int> dims = hilbert_function(R);
    text << "Hilbert function of A up to degree " << D << ":\n ";
    for (int d : dims) text << " " << d;
    text << "\n";
    out.report = {{"claim", "hilbert-function"},
                  {"window", {h, D}},
                  {"status", "pass"},
                  {"details", {{"dims", dims}}}};
  } else if (cmd.name == "betti") {
    const auto& M = detail::required_module(job);
    BettiTable b = betti(minimal_resolution(R, M, h, D));
    text << "Betti table of " << *cmd.module << " (window h=" << h
         << ", D=" << D << "):\n"
         << betti_macaulay(b);
    out.report = betti_json(b);
  } else if (cmd.name == "reg") {
    const auto& M = detail::required_module(job);
    RegularityValue v =
        ext_regularity(betti(minimal_resolution(R, M, h, D)));
    text << "Ext-regularity of " << *cmd.module << ": " << v.to_string()
         << "\n";
    out.report = {{"claim", "ext-regularity"},
                  {"window", {h, D}},
                  {"status", "pass"},
                  {"details", {{"value", regularity_json(v)}}}};
  } else if (cmd.name == "koszul") {
    KoszulResult k = koszul_check(R, h, D);
    text << "Koszul in window (" << h << ", " << D << "): "
         << (k.koszul_in_window ? "true" : "false");
    nlohmann::json details;
    details["koszul"] = k.koszul_in_window;
    if (k.witness) {
      text << "  witness (" << k.witness->first << ", " << k.witness->second
           << ")";
      details["witness"] = {k.witness->first, k.witness->second};
    }
    text << "\n";
    out.report = {{"claim", "koszul-in-window"},
                  {"window", {h, D}},
                  {"status", k.koszul_in_window ? "pass" : "fail"},
                  {"details", details}};
  } else if (cmd.name == "truncate-verify") {
    const auto& M = detail::required_module(job);
    if (!cmd.s_range) throw UsageError("truncate-verify needs s_range");
    TruncationReport tr = verify_truncation(
        R, M, h, D, cmd.s_range->first, cmd.s_range->second, job.duality);
    text << "Truncation linearity for " << *cmd.module << " (s in ["
         << cmd.s_range->first << ", " << cmd.s_range->second << "]):\n";
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& tv : tr.verdicts) {
      text << "  s = " << tv.s << ": "
           << (tv.zero ? "zero (vacuously linear)"
                       : (tv.linear ? "linear" : "not linear"))
           << "\n";
      verdicts.push_back({{"s", tv.s},
                          {"zero", tv.zero},
                          {"linear", tv.linear},
                          {"window_D", tv.window_D}});
    }
    text << "  Ext.reg M = " << tr.ext_reg_M.to_string() << ", s_min = "
         << (tr.s_min ? std::to_string(*tr.s_min) : std::string("none"))
         << ", status " << tr.report.status << "\n";
    out.report = report_json(tr.report);
    out.report["details"]["verdicts"] = verdicts;
  } else if (cmd.name == "cmreg") {
    const auto& M = detail::required_module(job);
    if (!job.duality)
      throw UsageError(
          "cmreg needs the algebra's duality datum (d, l) asserted");
    RegularityValue v = cm_regularity_duality(R, M, *job.duality, h, D);
    text << "CMreg (duality route) of " << *cmd.module << ": "
         << v.to_string() << "\n";
    out.report = {{"claim", "cm-regularity"},
                  {"window", {h, D}},
                  {"status", "pass"},
                  {"details", {{"value", regularity_json(v)}}}};
  } else if (cmd.name == "inequalities") {
    const auto& M = detail::required_module(job);
    InequalityReport ir = verify_inequalities(R, M, job.duality, h, D);
    text << "Regularity inequalities for " << *cmd.module << ":\n";
    for (const auto& c : ir.report.checks)
      text << "  " << c.name << ": " << c.status << " (" << c.detail
           << ")\n";
    for (const auto& [k, v] : ir.report.values)
      text << "  " << k << " = " << v << "\n";
    out.report = report_json(ir.report);
  } else if (cmd.name == "left-right-k") {
    LeftRightReport lr = left_right_k(job.algebra, h, D);
    text << "Betti table of k over A vs A^opp: "
         << (lr.equal ? "identical" : "DIFFERENT") << "\n";
    VerificationReport rep;
    rep.claim = "left-right-k";
    rep.h = h;
    rep.D = D;
    rep.status = lr.equal ? "pass" : "fail";
    out.report = report_json(rep);
    out.report["details"]["left"] = betti_json(lr.left);
    out.report["details"]["right"] = betti_json(lr.right);
  } else {
    throw UsageError("unknown command '" + cmd.name + "'");
  }

  out.text = text.str();
  if (out.report.contains("status"))
    out.exit_code = detail::status_exit(out.report["status"].get<std::string>());
  return out;
}

// Dotted-path override into the raw job JSON, e.g. "command.h=6".
inline void apply_override(nlohmann::json& doc, const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw UsageError("override must look like key.path=value: " + kv);
  std::string path = kv.substr(0, eq);
  std::string value = kv.substr(eq + 1);
  nlohmann::json* node = &doc;
  std::size_t start = 0;
  while (true) {
    std::size_t dot = path.find('.', start);
    std::string key = path.substr(start, dot - start);
    if (key.empty()) throw UsageError("bad override path: " + path);
    if (dot == std::string::npos) {
      nlohmann::json parsed =
          nlohmann::json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

// Returns the process exit status: 0 pass, 1 failed assertion, 2 usage or
// parse error, 3 out-of-window. Text goes to `text_out`.
inline int run_file(const std::string& path,
                    const std::vector<std::string>& overrides,
                    const std::string& json_out, std::ostream& text_out,
                    std::ostream& err_out) {
  try {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open job file " + path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw UsageError(std::string("job file is not valid JSON: ") +
                       e.what());
    }
    for (const auto& kv : overrides) apply_override(doc, kv);
    JobDescription job = parse_job(doc);
    RunResult r = run_job(job);
    text_out << r.text;
    if (!json_out.empty()) {
      std::ofstream jf(json_out);
      if (!jf) throw UsageError("cannot write " + json_out);
      jf << r.report.dump(2) << "\n";
    }
    return r.exit_code;
  } catch (const WindowError& e) {
    err_out << "out-of-window: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err_out << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err_out << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err_out << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nca
