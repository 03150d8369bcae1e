#include "pcforge/semantics.hpp"

#include <algorithm>
#include <bit>

#include "pcforge/detail/bits.hpp"
#include "pcforge/errors.hpp"

namespace pcforge {

namespace detail {

BitClause to_bits(const Clause& c) {
  BitClause b;
  for (Lit l : c) {
    if (l.var() > kMaxBitVars) throw LimitExceeded("variable index above 64");
    (l.is_negative() ? b.neg : b.pos) |= bit(l.var());
  }
  return b;
}

Clause from_bits(const BitClause& c) {
  std::vector<Lit> lits;
  for (std::uint64_t m = c.pos; m != 0; m &= m - 1) {
    lits.push_back(Lit::positive(static_cast<Var>(std::countr_zero(m)) + 1));
  }
  for (std::uint64_t m = c.neg; m != 0; m &= m - 1) {
    lits.push_back(Lit::negative(static_cast<Var>(std::countr_zero(m)) + 1));
  }
  return Clause(std::move(lits));
}

std::vector<BitClause> to_bits(const Formula& f) {
  if (f.num_vars() > kMaxBitVars) {
    throw LimitExceeded("universe of " + std::to_string(f.num_vars()) +
                        " variables exceeds the 64-variable exact engine");
  }
  std::vector<BitClause> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(to_bits(c));
  return out;
}

BitAssignment to_bits(const PartialAssignment& a) {
  BitAssignment b;
  for (Lit l : a) {
    if (l.var() > kMaxBitVars) throw LimitExceeded("variable index above 64");
    (l.is_negative() ? b.f : b.t) |= bit(l.var());
  }
  return b;
}

BitSolver::BitSolver(Var num_vars, std::vector<BitClause> clauses)
    : num_vars_(num_vars), all_(universe_mask(num_vars)), clauses_(std::move(clauses)) {}

BitSolver::BitSolver(const Formula& f) : BitSolver(f.num_vars(), to_bits(f)) {}

bool BitSolver::propagate(BitAssignment& a) const {
  if ((a.t & a.f) != 0) return false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : clauses_) {
      if ((c.pos & a.t) != 0 || (c.neg & a.f) != 0) continue;
      const std::uint64_t free = ~(a.t | a.f);
      const std::uint64_t fp = c.pos & free;
      const std::uint64_t fn = c.neg & free;
      const int open = std::popcount(fp) + std::popcount(fn);
      if (open == 0) return false;
      if (open == 1) {
        if (fp != 0) {
          a.t |= fp;
        } else {
          a.f |= fn;
        }
        changed = true;
      }
    }
  }
  return true;
}

bool BitSolver::search(BitAssignment a, std::uint64_t* model) const {
  if (!propagate(a)) return false;
  const std::uint64_t free = ~(a.t | a.f);
  for (const auto& c : clauses_) {
    if ((c.pos & a.t) != 0 || (c.neg & a.f) != 0) continue;
    const std::uint64_t fp = c.pos & free;
    const std::uint64_t fn = c.neg & free;
    const std::uint64_t candidates = fp | fn;
    const std::uint64_t b = candidates & (~candidates + 1);
    BitAssignment first = a;
    BitAssignment second = a;
    if ((fp & b) != 0) {
      first.t |= b;
      second.f |= b;
    } else {
      first.f |= b;
      second.t |= b;
    }
    return search(first, model) || search(second, model);
  }
  if (model != nullptr) *model = a.t;
  return true;
}

bool BitSolver::satisfiable(BitAssignment a, std::uint64_t* model) const {
  return search(a, model);
}

bool BitSolver::enumerate(BitAssignment a, std::uint64_t project,
                          const std::function<bool(std::uint64_t)>& visit) const {
  if (!propagate(a)) return true;
  const std::uint64_t open_projected = project & ~(a.t | a.f);
  if (open_projected == 0) {
    if (search(a, nullptr)) return visit(a.t & project);
    return true;
  }
  bool all_satisfied = true;
  for (const auto& c : clauses_) {
    if ((c.pos & a.t) == 0 && (c.neg & a.f) == 0) {
      all_satisfied = false;
      break;
    }
  }
  if (all_satisfied) {
    // Every completion of the open projected variables is a model.
    const std::uint64_t base = a.t & project;
    std::uint64_t sub = 0;
    do {
      if (!visit(base | sub)) return false;
      sub = (sub - open_projected) & open_projected;
    } while (sub != 0);
    return true;
  }
  const std::uint64_t b = open_projected & (~open_projected + 1);
  BitAssignment hi = a;
  hi.t |= b;
  if (!enumerate(hi, project, visit)) return false;
  BitAssignment lo = a;
  lo.f |= b;
  return enumerate(lo, project, visit);
}

void BitSolver::for_each_projected_model(BitAssignment a, std::uint64_t project,
                                         const std::function<bool(std::uint64_t)>& visit) const {
  enumerate(a, project & all_, visit);
}

}  // namespace detail

using detail::BitAssignment;
using detail::BitClause;
using detail::BitSolver;

// ----------------------------------------------------------- FunctionTable

FunctionTable::FunctionTable(std::vector<Var> inputs, std::vector<std::uint64_t> onset)
    : inputs_(std::move(inputs)), onset_(std::move(onset)) {
  std::sort(onset_.begin(), onset_.end());
  onset_.erase(std::unique(onset_.begin(), onset_.end()), onset_.end());
}

bool FunctionTable::contains(std::uint64_t vector) const {
  return std::binary_search(onset_.begin(), onset_.end(), vector);
}

namespace {

// Compresses a model over the universe to the bit layout of `onto`.
std::uint64_t compress(std::uint64_t model, const std::vector<Var>& onto) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < onto.size(); ++i) {
    if ((model & detail::bit(onto[i])) != 0) out |= std::uint64_t{1} << i;
  }
  return out;
}

}  // namespace

FunctionTable project_models(const Formula& f, const std::vector<Var>& onto,
                             const SemanticsOptions& options) {
  if (onto.size() > options.variable_limit) {
    throw LimitExceeded("model enumeration over " + std::to_string(onto.size()) +
                        " variables exceeds limit " + std::to_string(options.variable_limit));
  }
  BitSolver solver(f);
  std::uint64_t mask = 0;
  for (Var v : onto) {
    if (v == 0 || v > f.num_vars()) throw PreconditionError("projection variable outside universe");
    mask |= detail::bit(v);
  }
  std::vector<std::uint64_t> onset;
  bool overflow = false;
  solver.for_each_projected_model({}, mask, [&](std::uint64_t m) {
    if (onset.size() >= options.output_limit) {
      overflow = true;
      return false;
    }
    onset.push_back(compress(m, onto));
    return true;
  });
  if (overflow) throw LimitExceeded("model count exceeds limit");
  return FunctionTable(onto, std::move(onset));
}

FunctionTable enumerate_models(const Formula& f, const SemanticsOptions& options) {
  std::vector<Var> all;
  for (Var v = 1; v <= f.num_vars(); ++v) all.push_back(v);
  return project_models(f, all, options);
}

bool is_satisfiable(const Formula& f, const PartialAssignment& alpha) {
  BitSolver solver(f);
  return solver.satisfiable(detail::to_bits(alpha));
}

bool entails(const Formula& f, const Clause& c) {
  if (c.is_tautology()) return true;
  auto neg = falsifying_assignment(c);
  return !is_satisfiable(f, *neg);
}

std::vector<Lit> cl_sem(const Formula& f, const PartialAssignment& alpha) {
  BitSolver solver(f);
  const BitAssignment base = detail::to_bits(alpha);
  std::vector<Lit> out;
  std::uint64_t model = 0;
  if (!solver.satisfiable(base, &model)) {
    for (Var v = 1; v <= f.num_vars(); ++v) {
      out.push_back(Lit::positive(v));
      out.push_back(Lit::negative(v));
    }
    return out;
  }
  // A literal is implied iff its complement is inconsistent with α. Models
  // found along the way rule out candidates without a solver call.
  std::uint64_t seen_true = model;
  std::uint64_t seen_false = ~model;
  for (Var v = 1; v <= f.num_vars(); ++v) {
    const std::uint64_t b = detail::bit(v);
    if ((base.t & b) != 0) {
      out.push_back(Lit::positive(v));
      continue;
    }
    if ((base.f & b) != 0) {
      out.push_back(Lit::negative(v));
      continue;
    }
    for (bool value : {true, false}) {
      // Is ¬(v=value) satisfiable together with α?
      const bool witnessed = value ? (seen_false & b) != 0 : (seen_true & b) != 0;
      if (witnessed) continue;
      BitAssignment probe = base;
      (value ? probe.f : probe.t) |= b;
      std::uint64_t m = 0;
      if (solver.satisfiable(probe, &m)) {
        seen_true |= m;
        seen_false |= ~m;
      } else {
        out.push_back(Lit::make(v, !value));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------- prime implicates

namespace {

// Inserts `c` unless an existing clause subsumes it; removes clauses it
// subsumes. Returns whether it was inserted.
bool insert_minimal(std::vector<BitClause>& set, const BitClause& c) {
  for (const auto& d : set) {
    if (d.subsumes(c)) return false;
  }
  std::erase_if(set, [&](const BitClause& d) { return c.subsumes(d); });
  set.push_back(c);
  return true;
}

}  // namespace

Formula prime_implicates(const Formula& f, const SemanticsOptions& options) {
  std::vector<BitClause> set;
  for (const auto& c : detail::to_bits(f)) {
    if (!c.tautology()) insert_minimal(set, c);
  }
  for (Var v = 1; v <= f.num_vars(); ++v) {
    const std::uint64_t b = detail::bit(v);
    std::vector<BitClause> pos;
    std::vector<BitClause> neg;
    for (const auto& c : set) {
      if ((c.pos & b) != 0) pos.push_back(c);
      if ((c.neg & b) != 0) neg.push_back(c);
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        BitClause r{(p.pos | n.pos) & ~b, (p.neg | n.neg) & ~b};
        if (r.tautology()) continue;
        insert_minimal(set, r);
        if (set.size() > options.output_limit) {
          throw LimitExceeded("prime implicate count exceeds limit");
        }
      }
    }
  }
  std::vector<Clause> clauses;
  clauses.reserve(set.size());
  for (const auto& c : set) clauses.push_back(detail::from_bits(c));
  std::sort(clauses.begin(), clauses.end(), [](const Clause& a, const Clause& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return Formula(f.num_vars(), std::move(clauses));
}

std::vector<PartialAssignment> all_partial_assignments(Var n) {
  if (n > 12) throw LimitExceeded("partial-assignment enumeration limited to 12 variables");
  std::vector<PartialAssignment> out;
  std::vector<std::uint8_t> digits(n, 0);
  while (true) {
    std::vector<Lit> lits;
    for (Var i = 0; i < n; ++i) {
      if (digits[i] != 0) lits.push_back(Lit::make(i + 1, digits[i] == 2));
    }
    out.emplace_back(std::move(lits));
    Var i = 0;
    while (i < n && digits[i] == 2) digits[i++] = 0;
    if (i == n) return out;
    ++digits[i];
  }
}

bool equivalent(const Formula& a, const Formula& b) {
  if (a.num_vars() != b.num_vars()) {
    throw PreconditionError("equivalence needs a shared universe");
  }
  BitSolver sa(a);
  BitSolver sb(b);
  auto implies_all = [](const BitSolver& s, const Formula& other) {
    for (const auto& c : other) {
      if (c.is_tautology()) continue;
      if (s.satisfiable(detail::to_bits(*falsifying_assignment(c)))) return false;
    }
    return true;
  };
  return implies_all(sa, b) && implies_all(sb, a);
}

bool is_encoding_of(const Encoding& psi, const FunctionTable& f, const SemanticsOptions& options) {
  const std::vector<Var> inputs = psi.inputs();
  if (inputs != f.inputs()) {
    throw PreconditionError("encoding inputs differ from the function's inputs");
  }
  return project_models(psi.formula(), inputs, options) == f;
}

}  // namespace pcforge
