#pragma once

// Exact URC / PC deciders, absorption, and irredundant reduction.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pcforge/cnf.hpp"

namespace pcforge {

enum class DeciderMode {
  /// Exhaustive up to 10 variables, Closed above.
  Automatic,
  /// All 3^n partial assignments against a table of extendable assignments.
  Exhaustive,
  /// Search restricted to UP-closed assignments, guided by the models of φ.
  Closed,
};

struct DeciderOptions {
  /// Largest universe accepted; LimitExceeded above.
  Var limit = 14;
  DeciderMode mode = DeciderMode::Automatic;
  /// Worker threads for exhaustive mode; 0 = hardware concurrency.
  unsigned jobs = 1;
  /// Closed mode keeps every model of φ in memory.
  std::size_t model_limit = std::size_t{1} << 20;
  /// Candidate budget when closed mode looks for the least witness.
  std::size_t canonical_budget = std::size_t{1} << 22;
};

struct DecisionReport {
  bool verdict = true;
  /// For URC: φ ∧ α ⊨ ⊥ but φ ∧ α ⊬₁ ⊥.
  /// For PC: φ ∧ α ⊨ literal, and UP derives neither literal nor ⊥.
  std::optional<PartialAssignment> witness;
  std::optional<Lit> literal;
  DeciderMode mode_used = DeciderMode::Exhaustive;
  /// Whether the witness is the least one in (size, lexicographic) order.
  bool canonical = true;
};

DecisionReport is_urc(const Formula& f, const DeciderOptions& options = {});
DecisionReport is_pc(const Formula& f, const DeciderOptions& options = {});

/// Re-checks a failing report against `f` with the exact semantic engine.
bool witness_valid(const Formula& f, const DecisionReport& report, bool pc);

/// For every l ∈ C: φ ∧ ¬(C∖{l}) ⊢₁ l or ⊢₁ ⊥. Throws PreconditionError if C
/// is not an implicate of φ, TautologyError for tautological C.
bool is_absorbed(const Clause& c, const Formula& f);

struct ReduceOptions {
  DeciderOptions decider;
  /// When set, the clause order is shuffled with this seed before removal.
  std::optional<std::uint64_t> seed;
};

/// Greedy removal of clauses absorbed by the rest. Throws PreconditionError
/// when φ is not PC.
Formula reduce_pc_irredundant(const Formula& f, const ReduceOptions& options = {});
/// Greedy removal, to a fixpoint, of clauses whose removal keeps the
/// function and URC-ness. Throws PreconditionError when φ is not URC.
Formula reduce_urc_irredundant(const Formula& f, const ReduceOptions& options = {});

}  // namespace pcforge
