#pragma once

// Unit resolution to a fixpoint (cl_up).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge {

enum class PropagationStatus { Stable, Conflict };

struct PropagationResult {
  PropagationStatus status = PropagationStatus::Stable;
  /// cl_up(φ, α), sorted. On conflict this is every literal of the universe.
  std::vector<Lit> derived;
  /// Index of the clause that became empty; diagnostic only.
  std::optional<std::size_t> conflict_clause;

  bool conflict() const { return status == PropagationStatus::Conflict; }
  bool contains(Lit l) const;
};

/// Two-watched-literal unit propagation over a fixed formula.
///
/// The object is reusable: every run() starts from the empty trail. It is
/// not safe to share one instance between threads; construct one per worker.
class Propagator {
 public:
  explicit Propagator(const Formula& f);

  /// Propagates φ ∧ assumptions. Returns false iff the empty clause is
  /// derived (or the assumptions are themselves complementary).
  bool run(std::span<const Lit> assumptions);

  /// Literals assigned by the last run, in assignment order. Only meaningful
  /// when that run returned true.
  std::span<const Lit> trail() const { return trail_; }
  /// Whether `l` is true after the last (non-conflicting) run.
  bool holds(Lit l) const { return value(l) > 0; }
  /// Whether the variable is assigned after the last run.
  bool assigned(Var v) const { return values_[v] != 0; }
  std::optional<std::size_t> conflict_clause() const { return conflict_; }

  /// The last run as a PropagationResult.
  PropagationResult result() const;

  Var num_vars() const { return num_vars_; }

 private:
  struct StoredClause {
    std::vector<Lit> lits;
    std::size_t origin;
  };

  int value(Lit l) const {
    const int v = values_[l.var()];
    return l.is_negative() ? -v : v;
  }
  bool enqueue(Lit l);
  bool propagate();
  void reset();

  Var num_vars_;
  std::vector<StoredClause> clauses_;
  std::vector<std::pair<Lit, std::size_t>> units_;
  std::optional<std::size_t> empty_clause_;
  std::vector<std::vector<std::uint32_t>> watches_;  // by literal code
  std::vector<std::int8_t> values_;                  // by variable
  std::vector<Lit> trail_;
  std::optional<std::size_t> conflict_;
  bool last_conflict_ = false;
};

/// cl_up(φ, α) as defined for PC/URC: the derived literals, or all literals
/// when φ ∧ α ⊢₁ ⊥.
PropagationResult up_closure(const Formula& f, const PartialAssignment& alpha);

}  // namespace pcforge
