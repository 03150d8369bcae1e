#include "pcforge/dual_rail.hpp"

#include <algorithm>

#include "pcforge/detail/bits.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/propagation.hpp"

namespace pcforge {

DualRailFormula dual_rail(const Formula& f) {
  if (f.has_empty_clause()) throw EmptyClauseError();
  if (f.has_tautology()) throw TautologyError();
  const MetaVarMap map(f.num_vars());
  Formula h(map.meta_vars());
  for (const auto& c : f) {
    for (Lit l : c) {
      std::vector<Lit> lits{Lit::positive(map.meta(l))};
      for (Lit e : c) {
        if (e != l) lits.push_back(Lit::negative(map.meta(~e)));
      }
      h.add(Clause(std::move(lits)));
    }
  }
  for (Var v = 1; v <= f.num_vars(); ++v) {
    h.add(Clause{Lit::negative(map.meta(Lit::positive(v))),
                 Lit::negative(map.meta(Lit::negative(v)))});
  }
  return {std::move(h), map};
}

bool horn_entails(const Formula& h, const Clause& c) {
  if (!h.is_horn()) throw PreconditionError("formula is not Horn");
  if (c.is_tautology()) return true;
  Propagator prop(h);
  std::vector<Lit> assumptions;
  for (Lit l : c) assumptions.push_back(~l);
  if (!prop.run(assumptions)) return true;
  return std::any_of(c.begin(), c.end(), [&](Lit l) { return prop.holds(l); });
}

bool horn_equivalent(const Formula& a, const Formula& b) {
  if (a.num_vars() != b.num_vars()) {
    throw PreconditionError("Horn formulas over different meta universes");
  }
  if (!a.is_horn() || !b.is_horn()) throw PreconditionError("formula is not Horn");
  auto covers = [](const Formula& h, const Formula& other) {
    Propagator prop(h);
    for (const auto& c : other) {
      if (c.is_tautology()) continue;
      std::vector<Lit> assumptions;
      for (Lit l : c) assumptions.push_back(~l);
      if (prop.run(assumptions)) return false;
    }
    return true;
  };
  return covers(a, b) && covers(b, a);
}

bool pc_via_dual_rail(const Formula& f) {
  if (f.has_empty_clause()) throw EmptyClauseError();
  if (!is_satisfiable(f)) throw UnsatisfiableError();
  const Formula primes = prime_implicates(f);
  return horn_equivalent(dual_rail(f).horn, dual_rail(primes).horn);
}

std::uint64_t meta_vector(const PartialAssignment& alpha, const MetaVarMap& map) {
  std::uint64_t v = 0;
  for (Lit l : alpha) v |= detail::bit(map.meta(l));
  return v;
}

namespace {

// Calls visit(alpha) for every consistent partial assignment over 1..n.
template <typename Visit>
void for_each_partial(Var n, Visit visit) {
  std::vector<std::uint8_t> digits(n, 0);
  std::vector<Lit> lits;
  while (true) {
    lits.clear();
    for (Var i = 0; i < n; ++i) {
      if (digits[i] != 0) lits.push_back(Lit::make(i + 1, digits[i] == 2));
    }
    visit(lits);
    Var i = 0;
    while (i < n && digits[i] == 2) digits[i++] = 0;
    if (i == n) return;
    ++digits[i];
  }
}

void check_limit(const Formula& f, Var limit) {
  if (f.num_vars() > limit) {
    throw LimitExceeded("partial-assignment enumeration over " + std::to_string(f.num_vars()) +
                        " variables exceeds limit " + std::to_string(limit));
  }
}

void sort_family(std::vector<PartialAssignment>& family) {
  std::sort(family.begin(), family.end(), witness_less);
}

}  // namespace

std::vector<PartialAssignment> closed_assignments(const Formula& f, Var limit) {
  check_limit(f, limit);
  const auto models = enumerate_models(f).onset();
  const std::uint64_t all = detail::universe_mask(f.num_vars());
  std::vector<PartialAssignment> out;
  for_each_partial(f.num_vars(), [&](const std::vector<Lit>& lits) {
    const detail::BitAssignment a = detail::to_bits(PartialAssignment(lits));
    bool any = false;
    std::uint64_t seen_true = 0;
    std::uint64_t seen_false = 0;
    for (std::uint64_t m : models) {
      if ((m & a.t) != a.t || (m & a.f) != 0) continue;
      any = true;
      seen_true |= m;
      seen_false |= ~m & all;
    }
    const std::uint64_t free = all & ~(a.t | a.f);
    if (any && (seen_true & seen_false & free) == free) out.emplace_back(lits);
  });
  sort_family(out);
  return out;
}

std::vector<PartialAssignment> up_closed_assignments(const Formula& f, Var limit) {
  check_limit(f, limit);
  Propagator prop(f);
  std::vector<PartialAssignment> out;
  for_each_partial(f.num_vars(), [&](const std::vector<Lit>& lits) {
    if (prop.run(lits) && prop.trail().size() == lits.size()) out.emplace_back(lits);
  });
  sort_family(out);
  return out;
}

FunctionTable meta_table(const std::vector<PartialAssignment>& family, const MetaVarMap& map) {
  std::vector<Var> inputs;
  for (Var v = 1; v <= map.meta_vars(); ++v) inputs.push_back(v);
  std::vector<std::uint64_t> onset;
  onset.reserve(family.size());
  for (const auto& a : family) onset.push_back(meta_vector(a, map));
  return FunctionTable(std::move(inputs), std::move(onset));
}

}  // namespace pcforge
