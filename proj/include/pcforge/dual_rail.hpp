#pragma once

// Implicational dual-rail encoding and the Horn-side PC characterization.

#include <cstdint>
#include <vector>

#include "pcforge/cnf.hpp"
#include "pcforge/semantics.hpp"

namespace pcforge {

/// ⟦x_i⟧ = i and ⟦¬x_i⟧ = n + i over a source universe of n variables.
class MetaVarMap {
 public:
  MetaVarMap() = default;
  explicit MetaVarMap(Var source_vars) : n_(source_vars) {}

  Var source_vars() const { return n_; }
  Var meta_vars() const { return 2 * n_; }
  Var meta(Lit l) const { return l.is_negative() ? n_ + l.var() : l.var(); }
  Lit literal(Var meta) const {
    return meta > n_ ? Lit::negative(meta - n_) : Lit::positive(meta);
  }

 private:
  Var n_ = 0;
};

struct DualRailFormula {
  Formula horn;
  MetaVarMap map;
};

/// DR(φ): one clause per (C, l) with l ∈ C ∈ φ, then one consistency
/// clause per variable. Throws EmptyClauseError / TautologyError.
DualRailFormula dual_rail(const Formula& f);

/// Exact entailment for Horn H by unit propagation. Throws
/// PreconditionError for non-Horn input.
bool horn_entails(const Formula& h, const Clause& c);
bool horn_equivalent(const Formula& a, const Formula& b);

/// DR(φ) ≡ DR(primes(φ)). Throws UnsatisfiableError / EmptyClauseError.
bool pc_via_dual_rail(const Formula& f);

/// Characteristic vector of α over the meta-variables: bit ⟦l⟧−1 is set iff l ∈ α.
std::uint64_t meta_vector(const PartialAssignment& alpha, const MetaVarMap& map);

/// S(f): partial assignments α with cl_sem(φ, α) = α, in (size, lex) order.
std::vector<PartialAssignment> closed_assignments(const Formula& f, Var limit = 12);
/// Consistent α with cl_up(φ, α) = α and no conflict, in (size, lex) order.
std::vector<PartialAssignment> up_closed_assignments(const Formula& f, Var limit = 12);

/// The set of meta vectors of `family` as a function over meta(x).
FunctionTable meta_table(const std::vector<PartialAssignment>& family, const MetaVarMap& map);

}  // namespace pcforge
