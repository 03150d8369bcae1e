#include "pcforge/cli.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcforge/deciders.hpp"
#include "pcforge/dimacs.hpp"
#include "pcforge/dual_rail.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/families.hpp"
#include "pcforge/propagation.hpp"
#include "pcforge/qhorn.hpp"
#include "pcforge/semantics.hpp"
#include "pcforge/suite.hpp"

namespace pcforge::cli {
namespace {

using json = nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json lits_json(std::span<const Lit> lits) {
  json a = json::array();
  for (Lit l : lits) a.push_back(l.to_dimacs());
  return a;
}

std::string lits_text(std::span<const Lit> lits) {
  std::string s;
  for (Lit l : lits) {
    if (!s.empty()) s += ' ';
    s += std::to_string(l.to_dimacs());
  }
  return s.empty() ? "(none)" : s;
}

std::vector<Lit> parse_lits(const std::string& text) {
  std::string spaced = text;
  for (char& c : spaced)
    if (c == ',') c = ' ';
  std::istringstream in(spaced);
  std::vector<Lit> lits;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || value == 0) throw UsageError("bad literal '" + token + "'");
    lits.push_back(Lit::from_dimacs(value));
  }
  return lits;
}

struct Session {
  std::ostream& out;
  std::ostream& err;
  json report = json::object();
  std::optional<Var> limit;
  std::string mode = "auto";
  unsigned jobs = 0;

  Encoding load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    Encoding e = parse_dimacs(bytes);
    report["inputs"].push_back({{"path", path},
                                {"fnv1a", fnv1a(bytes)},
                                {"vars", e.formula().num_vars()},
                                {"clauses", e.formula().size()}});
    return e;
  }

  void guard(Var n) const {
    if (limit && n > *limit)
      throw LimitExceeded("universe of " + std::to_string(n) + " variables exceeds --limit " +
                          std::to_string(*limit));
  }

  DeciderOptions decider() const {
    DeciderOptions o;
    if (limit) o.limit = *limit;
    o.jobs = jobs;
    if (mode == "exhaustive") o.mode = DeciderMode::Exhaustive;
    if (mode == "closed") o.mode = DeciderMode::Closed;
    return o;
  }

  SemanticsOptions semantics() const {
    SemanticsOptions o;
    if (limit) o.variable_limit = *limit;
    return o;
  }

  void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
      report["dimacs"] = text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path);
    file << text;
    report["output"] = path;
  }
};

const char* mode_name(DeciderMode m) {
  switch (m) {
    case DeciderMode::Automatic: return "auto";
    case DeciderMode::Exhaustive: return "exhaustive";
    case DeciderMode::Closed: return "closed";
  }
  return "auto";
}

std::string weight_text(int halves) {
  return halves == 0 ? "0" : halves == 2 ? "1" : "1/2";
}

int verdict(Session& s, bool v) {
  s.report["verdict"] = v;
  return v ? kTrue : kFalse;
}

int cmd_up(Session& s, const std::string& file, const std::string& assume) {
  Encoding e = s.load(file);
  auto alpha = PartialAssignment::try_make(parse_lits(assume));
  if (!alpha) throw UsageError("assumption contains complementary literals");
  PropagationResult r = up_closure(e.formula(), *alpha);
  s.report["assume"] = lits_json(alpha->literals());
  if (r.conflict()) {
    s.report["status"] = "conflict";
    if (r.conflict_clause) s.report["conflict_clause"] = *r.conflict_clause + 1;
    s.err << "CONFLICT\n";
  } else {
    s.report["status"] = "stable";
    s.report["derived"] = lits_json(r.derived);
    s.err << lits_text(r.derived) << '\n';
  }
  return kTrue;
}

int cmd_check(Session& s, const std::string& property, const std::string& file, bool show) {
  Encoding e = s.load(file);
  const Formula& f = e.formula();
  s.report["property"] = property;
  if (property == "pc-dr") {
    s.guard(f.num_vars());
    if (!s.limit && f.num_vars() > DeciderOptions{}.limit)
      throw LimitExceeded("universe exceeds the default limit; pass --limit");
    return verdict(s, pc_via_dual_rail(f));
  }
  const bool pc = property == "pc";
  DecisionReport r = pc ? is_pc(f, s.decider()) : is_urc(f, s.decider());
  s.report["mode"] = mode_name(r.mode_used);
  if (r.witness) {
    s.report["witness"] = lits_json(r.witness->literals());
    s.report["canonical"] = r.canonical;
    if (r.literal) s.report["literal"] = r.literal->to_dimacs();
    const bool valid = witness_valid(f, r, pc);
    s.report["witness_valid"] = valid;
    if (show) {
      s.err << "witness: " << lits_text(r.witness->literals());
      if (r.literal) s.err << " missing " << r.literal->to_dimacs();
      s.err << '\n';
    }
    if (!valid) throw std::logic_error("witness failed re-validation");
  }
  return verdict(s, r.verdict);
}

int cmd_primes(Session& s, const std::string& file, const std::string& output) {
  Encoding e = s.load(file);
  s.guard(e.formula().num_vars());
  Formula p = prime_implicates(e.formula(), s.semantics());
  s.report["clauses"] = p.size();
  s.emit(write_dimacs(p), output);
  return kTrue;
}

int cmd_equiv(Session& s, const std::string& a, const std::string& b) {
  Encoding fa = s.load(a);
  Encoding fb = s.load(b);
  s.guard(std::max(fa.formula().num_vars(), fb.formula().num_vars()));
  return verdict(s, equivalent(fa.formula(), fb.formula()));
}

int cmd_encodes(Session& s, const std::string& enc, const std::string& spec) {
  Encoding psi = s.load(enc);
  Encoding phi = s.load(spec);
  FunctionTable table = enumerate_models(phi.formula(), s.semantics());
  return verdict(s, is_encoding_of(psi, table, s.semantics()));
}

int cmd_dr(Session& s, const std::string& file, const std::string& output) {
  Encoding e = s.load(file);
  DualRailFormula dr = dual_rail(e.formula());
  std::vector<std::string> comments;
  for (Var m = 1; m <= dr.map.meta_vars(); ++m)
    comments.push_back("meta " + std::to_string(m) + " " +
                       std::to_string(dr.map.literal(m).to_dimacs()));
  s.report["meta_vars"] = dr.map.meta_vars();
  s.report["clauses"] = dr.horn.size();
  s.emit(write_dimacs(dr.horn, comments), output);
  return kTrue;
}

json valuation_json(const Valuation& v) {
  json w = json::object();
  for (Var x = 1; x <= v.num_vars(); ++x) w[std::to_string(x)] = weight_text(v.halves(x));
  return w;
}

int cmd_qhorn(Session& s, const std::string& action, const std::string& file,
              const std::string& output, bool verify) {
  Encoding e = s.load(file);
  const Formula& f = e.formula();
  s.report["action"] = action;
  if (action == "recognize") {
    auto gamma = recognize_qhorn(f);
    s.report["qhorn"] = gamma.has_value();
    if (!gamma) {
      s.err << "NOT-QHORN\n";
      return kFalse;
    }
    s.report["valuation"] = valuation_json(*gamma);
    for (Var x = 1; x <= gamma->num_vars(); ++x)
      s.err << "x" << x << "=" << weight_text(gamma->halves(x)) << (x == gamma->num_vars() ? "\n" : " ");
    return kTrue;
  }
  if (action == "sat") {
    auto gamma = recognize_qhorn(f);
    if (!gamma) throw NotQHornError();
    const bool sat = qhorn_sat(normalize(f, *gamma)) == SatStatus::Sat;
    s.report["status"] = sat ? "SAT" : "UNSAT";
    s.err << (sat ? "SAT" : "UNSAT") << '\n';
    return sat ? kTrue : kFalse;
  }
  CompiledEncoding c = compile_urc_encoding(f);
  s.report["aux"] = c.encoding.aux().size();
  s.report["clauses"] = c.encoding.formula().size();
  s.report["x2"] = c.split.x2;
  s.report["flipped"] = c.split.flipped;
  json groups = json::object();
  for (std::size_t g = 0; g < c.group_sizes.size(); ++g)
    groups["QH" + std::to_string(g + 1)] = c.group_sizes[g];
  s.report["groups"] = groups;
  s.emit(write_dimacs(c.encoding), output);
  if (!verify) return kTrue;
  s.guard(f.num_vars());
  const bool enc = is_encoding_of(c.encoding, enumerate_models(f, s.semantics()), s.semantics());
  DeciderOptions o = s.decider();
  if (!s.limit) o.limit = 64;
  const bool urc = is_urc(c.encoding.formula(), o).verdict;
  s.report["encoding"] = enc;
  s.report["urc"] = urc;
  return enc && urc ? kTrue : kFalse;
}

json clauses_json(const std::vector<Clause>& cs) {
  json a = json::array();
  for (const Clause& c : cs) a.push_back(lits_json(c.literals()));
  return a;
}

int cmd_gen(Session& s, const std::string& family, unsigned param, const std::string& output,
            bool companions) {
  Encoding e;
  json extra = json::object();
  if (family == "psi_horn") {
    e = Encoding(gen_psi_horn(param));
  } else if (family == "psi_horn_pc") {
    e = Encoding(gen_psi_horn_pc(param));
  } else if (family == "cycle_ext") {
    e = Encoding(gen_cycle_extension(gen_psi_horn_base(param)));
  } else if (family == "psi_qhorn") {
    QHornFamily q = gen_psi_qhorn(param);
    e = Encoding(q.formula);
    extra["u_bar"] = clauses_json(q.u_bar);
  } else if (family == "psi_qhorn_pc") {
    e = gen_psi_qhorn_pc(param);
  } else if (family == "gamma" || family == "gamma_prime" || family == "gamma_dprime") {
    const GammaVariant v = family == "gamma"         ? GammaVariant::Base
                           : family == "gamma_prime" ? GammaVariant::Prime
                                                     : GammaVariant::DoublePrime;
    e = Encoding(gen_gamma(param, v));
    json sets = json::array();
    for (std::uint32_t mask : even_subsets(param)) {
      json set = json::array();
      for (unsigned i = 0; i < param; ++i)
        if (mask >> i & 1U) set.push_back(i + 1);
      sets.push_back(set);
    }
    extra["e_m"] = sets;
  } else if (family == "parity_enc") {
    e = gen_parity(param, ParityMode::Encoding);
  } else if (family == "parity_cnf") {
    e = gen_parity(param, ParityMode::Cnf);
  } else {
    throw UsageError("unknown family '" + family + "'");
  }
  s.report["family"] = family;
  s.report["param"] = param;
  s.report["vars"] = e.formula().num_vars();
  s.report["clauses"] = e.formula().size();
  s.report["aux"] = e.aux().size();
  if (companions) s.report["companions"] = extra;
  s.emit(write_dimacs(e), output);
  return kTrue;
}

int cmd_reduce(Session& s, const std::string& property, const std::string& file,
               std::optional<std::uint64_t> seed, const std::string& output) {
  Encoding e = s.load(file);
  ReduceOptions o;
  o.decider = s.decider();
  o.seed = seed;
  Formula r = property == "pc" ? reduce_pc_irredundant(e.formula(), o)
                               : reduce_urc_irredundant(e.formula(), o);
  s.report["property"] = property;
  s.report["before"] = e.formula().size();
  s.report["after"] = r.size();
  if (seed) s.report["seed"] = *seed;
  s.emit(write_dimacs(r), output);
  return kTrue;
}

int cmd_absorb(Session& s, const std::string& file, const std::string& clause) {
  Encoding e = s.load(file);
  Clause c(parse_lits(clause));
  s.report["clause"] = lits_json(c.literals());
  return verdict(s, is_absorbed(c, e.formula()));
}

int cmd_suite(Session& s, std::uint64_t seed, const std::vector<int>& only) {
  SuiteOptions o;
  o.seed = seed;
  o.jobs = s.jobs;
  o.only = only;
  o.on_result = [&](const CriterionResult& r) { s.err << format_result(r) << '\n'; };
  bool all = true;
  json rows = json::array();
  for (const CriterionResult& r : run_acceptance(o)) {
    all = all && r.pass;
    rows.push_back({{"id", r.id},
                    {"name", r.name},
                    {"pass", r.pass},
                    {"seconds", r.seconds},
                    {"budget_seconds", r.budget_seconds},
                    {"detail", r.detail}});
  }
  s.report["seed"] = seed;
  s.report["criteria"] = rows;
  return verdict(s, all);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Propagation and unit-refutation completeness toolkit", "pcforge"};
  app.require_subcommand(1);
  app.fallthrough();

  Session s{out, err, json::object(), std::nullopt, "auto", 0};
  std::optional<unsigned> limit;
  app.add_option("--limit", limit, "Largest universe an exact procedure may enumerate");
  app.add_option("--jobs", s.jobs, "Worker threads (0 = hardware)");
  app.add_option("--mode", s.mode, "Decider engine")
      ->check(CLI::IsMember({"auto", "exhaustive", "closed"}));

  std::string file, file2, output, text, property, action, family;
  unsigned param = 0;
  bool flag = false;
  std::optional<std::uint64_t> seed;
  std::vector<int> only;

  auto* up = app.add_subcommand("up", "Unit propagation closure");
  up->add_option("file", file)->required();
  up->add_option("--assume", text, "Literals, e.g. \"1 -2\"");

  auto* check = app.add_subcommand("check", "Decide PC or URC");
  check->add_option("property", property)->required()->check(CLI::IsMember({"pc", "urc", "pc-dr"}));
  check->add_option("file", file)->required();
  check->add_flag("--witness", flag, "Print the witness");

  auto* primes = app.add_subcommand("primes", "Prime implicates");
  primes->add_option("file", file)->required();
  primes->add_option("-o,--output", output);

  auto* equiv = app.add_subcommand("equiv", "Logical equivalence");
  equiv->add_option("f1", file)->required();
  equiv->add_option("f2", file2)->required();

  auto* encodes = app.add_subcommand("encodes", "Encoding relation");
  encodes->add_option("encoding", file)->required();
  encodes->add_option("spec", file2)->required();

  auto* dr = app.add_subcommand("dr", "Dual rail Horn formula");
  dr->add_option("file", file)->required();
  dr->add_option("-o,--output", output);

  auto* qhorn = app.add_subcommand("qhorn", "q-Horn recognition, satisfiability and compilation");
  qhorn->add_option("action", action)->required()->check(CLI::IsMember({"recognize", "sat", "compile"}));
  qhorn->add_option("file", file)->required();
  qhorn->add_option("-o,--output", output);
  qhorn->add_flag("--verify", flag, "Check the encoding relation and URC of the result");

  auto* gen = app.add_subcommand("gen", "Generate a formula family");
  gen->add_option("family", family)->required()->check(CLI::IsMember(family_names()));
  gen->add_option("param", param)->required();
  gen->add_option("-o,--output", output);
  gen->add_flag("--companions", flag, "Include index sets in the report");

  auto* reduce = app.add_subcommand("reduce", "Irredundant PC or URC subformula");
  reduce->add_option("property", property)->required()->check(CLI::IsMember({"pc", "urc"}));
  reduce->add_option("file", file)->required();
  reduce->add_option("--seed", seed, "Shuffle the removal order");
  reduce->add_option("-o,--output", output);

  auto* absorb = app.add_subcommand("absorb", "Absorption of an implicate");
  absorb->add_option("file", file)->required();
  absorb->add_option("--clause", text, "Literals, e.g. \"1 -2\"")->required();

  auto* suite = app.add_subcommand("suite", "Acceptance matrix");
  std::uint64_t suite_seed = SuiteOptions{}.seed;
  suite->add_option("--seed", suite_seed);
  suite->add_option("--only", only, "Criterion ids")->delimiter(',');

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"pcforge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  if (limit) s.limit = static_cast<Var>(*limit);

  const auto start = std::chrono::steady_clock::now();
  int code = kUsage;
  try {
    if (*up) code = cmd_up(s, file, text);
    else if (*check) code = cmd_check(s, property, file, flag);
    else if (*primes) code = cmd_primes(s, file, output);
    else if (*equiv) code = cmd_equiv(s, file, file2);
    else if (*encodes) code = cmd_encodes(s, file, file2);
    else if (*dr) code = cmd_dr(s, file, output);
    else if (*qhorn) code = cmd_qhorn(s, action, file, output, flag);
    else if (*gen) code = cmd_gen(s, family, param, output, flag);
    else if (*reduce) code = cmd_reduce(s, property, file, seed, output);
    else if (*absorb) code = cmd_absorb(s, file, text);
    else if (*suite) code = cmd_suite(s, suite_seed, only);
  } catch (const LimitExceeded& e) {
    s.report["error"] = e.what();
    err << "error: " << e.what() << '\n';
    code = kLimit;
  } catch (const std::exception& e) {
    s.report["error"] = e.what();
    err << "error: " << e.what() << '\n';
    code = kUsage;
  }
  s.report["command"] = app.get_subcommands().front()->get_name();
  s.report["exit"] = code;
  s.report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << s.report.dump(2) << '\n';
  return code;
}

}  // namespace pcforge::cli
