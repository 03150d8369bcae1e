#include "pcforge/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>

#include "pcforge/corpus.hpp"
#include "pcforge/deciders.hpp"
#include "pcforge/dual_rail.hpp"
#include "pcforge/families.hpp"
#include "pcforge/propagation.hpp"
#include "pcforge/qhorn.hpp"
#include "pcforge/semantics.hpp"

namespace pcforge {

namespace {

// Collects the first failed expectation; later ones are counted only.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (first_.empty()) first_ = what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary(const std::string& extra) const {
    std::ostringstream os;
    if (ok()) {
      os << checks_ << " checks";
    } else {
      os << failures_ << "/" << checks_ << " checks failed; first: " << first_;
    }
    if (!extra.empty()) os << "; " << extra;
    return os.str();
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

struct Criterion {
  const char* name;
  double budget;
  std::string (*run)(Checker&, const SuiteOptions&);
};

DeciderOptions wide(const SuiteOptions& o) {
  DeciderOptions d;
  d.limit = 64;
  d.jobs = o.jobs;
  return d;
}

std::string c1(Checker& ck, const SuiteOptions&) {
  std::ostringstream os;
  for (unsigned m = 3; m <= 6; ++m) {
    const std::size_t expected = m * ((1U << (m - 1)) + m - 1) + m * (m - 1);
    const std::size_t got = prime_implicates(gen_psi_horn(m)).size();
    ck.expect(got == expected, "m=" + std::to_string(m) + " primes " + std::to_string(got) +
                                   " != " + std::to_string(expected));
    os << (m > 3 ? "," : "counts ") << got;
  }
  return os.str();
}

std::string c2(Checker& ck, const SuiteOptions& o) {
  for (unsigned m = 3; m <= 4; ++m) {
    const std::string tag = "m=" + std::to_string(m) + " ";
    const Formula psi = gen_psi_horn(m);
    const Formula pc = gen_psi_horn_pc(m);
    ck.expect(pc.size() == (1U << (m - 1)) + 2 * m - 1, tag + "PC size");
    ck.expect(equivalent(pc, psi), tag + "equivalence");
    ck.expect(is_pc(pc, wide(o)).verdict, tag + "PC representation rejected");
    const auto r = is_pc(psi, wide(o));
    ck.expect(!r.verdict, tag + "original accepted as PC");
    ck.expect(!r.verdict && witness_valid(psi, r, true), tag + "witness does not re-check");
  }
  return {};
}

std::string c3(Checker& ck, const SuiteOptions& o) {
  for (unsigned n = 2; n <= 3; ++n) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    const auto fam = gen_psi_qhorn(n);
    const auto r = is_urc(fam.formula, wide(o));
    std::vector<Lit> all_a;
    for (unsigned i = 1; i <= n; ++i) all_a.push_back(Lit::positive(n + i));
    ck.expect(!r.verdict, tag + "accepted as URC");
    ck.expect(r.witness && *r.witness == PartialAssignment(all_a), tag + "witness is not the a-conjunction");
    ck.expect(!r.verdict && witness_valid(fam.formula, r, false), tag + "witness does not re-check");
    const Formula primes = prime_implicates(fam.formula);
    ck.expect(fam.u_bar.size() == (1U << n), tag + "companion size");
    for (const auto& c : fam.u_bar) ck.expect(primes.contains(c), tag + "companion clause not prime");
    ck.expect(recognize_qhorn(fam.formula).has_value(), tag + "not recognized as q-Horn");
  }
  return {};
}

std::string c4(Checker& ck, const SuiteOptions& o) {
  for (unsigned n = 2; n <= 3; ++n) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    const Encoding enc = gen_psi_qhorn_pc(n);
    const FunctionTable f = enumerate_models(gen_psi_qhorn(n).formula);
    ck.expect(is_encoding_of(enc, f), tag + "not an encoding");
    ck.expect(is_pc(enc.formula(), wide(o)).verdict, tag + "not PC");
  }
  return {};
}

std::string c5(Checker& ck, const SuiteOptions& o) {
  for (unsigned m = 2; m <= 4; ++m) {
    const std::string tag = "m=" + std::to_string(m) + " ";
    const Formula g = gen_gamma(m, GammaVariant::Base);
    const Formula g1 = gen_gamma(m, GammaVariant::Prime);
    const Formula g2 = gen_gamma(m, GammaVariant::DoublePrime);
    ck.expect(g.size() == 3 * m + 1, tag + "|gamma|");
    ck.expect(g1.size() == 4 * m + 1, tag + "|gamma'|");
    ck.expect(g2.size() == 3 * m + (1U << (m - 1)), tag + "|gamma''|");
    ck.expect(equivalent(g, g1) && equivalent(g, g2) && equivalent(g1, g2), tag + "equivalence");
    ck.expect(is_pc(g1, wide(o)).verdict, tag + "gamma' not PC");
    ck.expect(is_urc(g2, wide(o)).verdict, tag + "gamma'' not URC");
    for (std::uint32_t s : even_subsets(m)) {
      Formula rest(g2.num_vars());
      const Clause drop = gamma_extra_clause(m, s);
      for (const auto& c : g2) {
        if (c != drop) rest.add(c);
      }
      const auto r = is_urc(rest, wide(o));
      ck.expect(!r.verdict && witness_valid(rest, r, false),
                tag + "removing E-clause " + std::to_string(s) + " keeps URC");
    }
    ReduceOptions ro;
    ro.decider = wide(o);
    ck.expect(reduce_urc_irredundant(g2, ro) == g2, tag + "reduction changed gamma''");
  }
  return {};
}

std::vector<Formula> sat_corpus(const SuiteOptions& o) {
  CorpusOptions c;
  c.seed = o.seed;
  c.count = 500;
  return random_corpus(c);
}

std::string c6(Checker& ck, const SuiteOptions& o) {
  std::size_t pc = 0;
  const auto corpus = sat_corpus(o);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const bool a = pc_via_dual_rail(corpus[i]);
    const bool b = is_pc(corpus[i], wide(o)).verdict;
    ck.expect(a == b, "instance " + std::to_string(i));
    pc += b ? 1 : 0;
  }
  return std::to_string(corpus.size()) + " formulas, " + std::to_string(pc) + " PC";
}

std::string c7(Checker& ck, const SuiteOptions& o) {
  const auto corpus = sat_corpus(o);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Formula& f = corpus[i];
    const std::string tag = "instance " + std::to_string(i) + " ";
    const auto dr = dual_rail(f);
    const FunctionTable dr_models = enumerate_models(dr.horn);
    ck.expect(dr_models == meta_table(up_closed_assignments(f), dr.map), tag + "DR models");
    const FunctionTable s = meta_table(closed_assignments(f), dr.map);
    bool closed = true;
    for (std::uint64_t a : s.onset()) {
      for (std::uint64_t b : s.onset()) closed = closed && s.contains(a & b);
    }
    ck.expect(closed, tag + "S(f) not closed under intersection");
    ck.expect((dr_models == s) == is_pc(f, wide(o)).verdict, tag + "DR represents h_f iff PC");
  }
  return std::to_string(corpus.size()) + " formulas";
}

std::string c8(Checker& ck, const SuiteOptions& o) {
  CorpusOptions c;
  c.seed = o.seed + 8;
  c.count = 100;
  std::size_t differing = 0;
  const auto corpus = random_function_corpus(c);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Formula primes = prime_implicates(corpus[i]);
    ReduceOptions first;
    first.decider = wide(o);
    ReduceOptions second = first;
    second.seed = o.seed + i;
    const Formula r1 = reduce_pc_irredundant(primes, first);
    const Formula r2 = reduce_pc_irredundant(primes, second);
    const std::size_t n2 = static_cast<std::size_t>(primes.num_vars()) * primes.num_vars();
    ck.expect(r1.size() <= n2 * r2.size() && r2.size() <= n2 * r1.size(),
              "instance " + std::to_string(i) + " size ratio");
    ck.expect(equivalent(r1, primes) && equivalent(r2, primes),
              "instance " + std::to_string(i) + " equivalence");
    differing += r1.size() != r2.size() ? 1 : 0;
  }
  return std::to_string(corpus.size()) + " functions, " + std::to_string(differing) +
         " with different reduced sizes";
}

std::string c9(Checker& ck, const SuiteOptions& o) {
  QHornCorpusOptions q;
  q.seed = o.seed + 9;
  q.count = 200;
  auto corpus = random_qhorn_corpus(q);
  corpus.push_back(gen_psi_qhorn(2).formula);
  corpus.push_back(gen_psi_qhorn(3).formula);
  std::size_t max_aux = 0;
  std::size_t unsat = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Formula& f = corpus[i];
    const std::string tag = "instance " + std::to_string(i) + " ";
    const CompiledEncoding ce = compile_urc_encoding(f);
    const std::size_t x2 = ce.split.x2.size();
    const std::size_t aux = ce.encoding.aux().size();
    max_aux = std::max(max_aux, aux);
    ck.expect(aux <= 2 * x2 * x2, tag + "aux bound");
    ck.expect(is_encoding_of(ce.encoding, enumerate_models(f)), tag + "not an encoding");
    ck.expect(is_urc(ce.encoding.formula(), wide(o)).verdict, tag + "encoding not URC");
    const bool sat = is_satisfiable(f);
    unsat += sat ? 0 : 1;
    ck.expect((qhorn_sat(ce.split) == SatStatus::Sat) == sat, tag + "Algorithm 1 verdict");
  }
  const auto psi2 = compile_urc_encoding(gen_psi_qhorn(2).formula);
  ck.expect(!recognize_qhorn(psi2.encoding.formula()).has_value(), "psi_2 encoding is q-Horn");
  return std::to_string(corpus.size()) + " formulas, " + std::to_string(unsat) +
         " unsatisfiable, max aux " + std::to_string(max_aux);
}

std::string c10(Checker& ck, const SuiteOptions& o) {
  for (unsigned n = 3; n <= 4; ++n) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    const Formula cnf = gen_parity(n, ParityMode::Cnf).formula();
    ck.expect(cnf.size() == (1U << (n - 1)), tag + "CNF size");
    ck.expect(prime_implicates(cnf).same_clauses(cnf), tag + "CNF clauses not all prime");
    const Encoding enc = gen_parity(n, ParityMode::Encoding);
    ck.expect(is_encoding_of(enc, enumerate_models(cnf)), tag + "chain is not an encoding");
    ck.expect(is_pc(enc.formula(), wide(o)).verdict, tag + "chain not PC");
  }
  return {};
}

std::string c11(Checker& ck, const SuiteOptions& o) {
  std::size_t assignments = 0;
  const auto corpus = sat_corpus(o);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Formula& f = corpus[i];
    for (const auto& alpha : all_partial_assignments(f.num_vars())) {
      ++assignments;
      const auto up = up_closure(f, alpha);
      const auto sem = cl_sem(f, alpha);
      bool sound = std::includes(sem.begin(), sem.end(), up.derived.begin(), up.derived.end());
      ck.expect(sound, "instance " + std::to_string(i) + " closure");
    }
  }
  CorpusOptions h;
  h.seed = o.seed + 11;
  h.count = 500;
  h.horn = true;
  h.satisfiable_only = false;
  const auto horn = random_corpus(h);
  for (std::size_t i = 0; i < horn.size(); ++i) {
    ck.expect(is_urc(horn[i], wide(o)).verdict, "Horn instance " + std::to_string(i));
  }
  return std::to_string(assignments) + " (formula, assignment) pairs, " +
         std::to_string(horn.size()) + " Horn formulas";
}

const Criterion kCriteria[kCriterionCount] = {
    {"prime-count reproduction", 60, c1},
    {"smallest PC representation", 120, c2},
    {"q-Horn non-URC family", 60, c3},
    {"PC encoding of the q-Horn family", 120, c4},
    {"gamma family", 300, c5},
    {"dual-rail PC cross-oracle", 300, c6},
    {"UP-closed and semantically closed assignments", 300, c7},
    {"PC-irredundant size ratio", 300, c8},
    {"q-Horn URC compiler", 600, c9},
    {"parity", 60, c10},
    {"closure soundness", 300, c11},
};

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.name = "unknown";
    r.detail = "no such criterion";
    return r;
  }
  const Criterion& c = kCriteria[id - 1];
  r.name = c.name;
  r.budget_seconds = c.budget;
  Checker ck;
  const auto start = std::chrono::steady_clock::now();
  std::string extra;
  try {
    extra = c.run(ck, options);
  } catch (const std::exception& e) {
    ck.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = ck.ok() && r.seconds < r.budget_seconds;
  r.detail = ck.summary(extra);
  if (ck.ok() && !r.pass) r.detail += "; over time budget";
  return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    out.push_back(run_criterion(id, options));
    if (options.on_result) options.on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", r.seconds, r.budget_seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " C" + std::to_string(r.id) + " " + r.name +
         " (" + timing + "): " + r.detail;
}

}  // namespace pcforge
