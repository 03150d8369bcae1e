#pragma once

// Exact semantic engine: models, entailment, semantic closure, prime
// implicates, equivalence and the encoding relation. Everything here is
// exponential in the worst case and limited to universes of at most 64
// variables.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge {

struct SemanticsOptions {
  /// Largest universe enumerate_models accepts.
  Var variable_limit = 24;
  /// Largest number of models (or clauses, for prime implicates) produced.
  std::size_t output_limit = std::size_t{1} << 24;
};

/// A boolean function given by its onset. Bit i of an onset vector is the
/// value of `inputs[i]`.
class FunctionTable {
 public:
  FunctionTable() = default;
  FunctionTable(std::vector<Var> inputs, std::vector<std::uint64_t> onset);

  const std::vector<Var>& inputs() const { return inputs_; }
  const std::vector<std::uint64_t>& onset() const { return onset_; }
  bool contains(std::uint64_t vector) const;
  std::size_t size() const { return onset_.size(); }

  bool operator==(const FunctionTable&) const = default;

 private:
  std::vector<Var> inputs_;
  std::vector<std::uint64_t> onset_;  // sorted, unique
};

FunctionTable enumerate_models(const Formula& f, const SemanticsOptions& options = {});
/// Models of `f` projected onto `onto` (existential quantification of the
/// other variables).
FunctionTable project_models(const Formula& f, const std::vector<Var>& onto,
                             const SemanticsOptions& options = {});

bool is_satisfiable(const Formula& f, const PartialAssignment& alpha = {});
/// Every model of `f` satisfies `c`.
bool entails(const Formula& f, const Clause& c);
/// {l | f ∧ α ⊨ l}, sorted; every literal of the universe when f ∧ α is unsatisfiable.
std::vector<Lit> cl_sem(const Formula& f, const PartialAssignment& alpha);

/// All prime implicates (Tison's consensus method), sorted by size then
/// lexicographically. An unsatisfiable formula yields exactly the empty
/// clause. Tautological input clauses are ignored.
Formula prime_implicates(const Formula& f, const SemanticsOptions& options = {});

/// Every consistent partial assignment over 1..n, in ternary counting order.
/// Throws LimitExceeded above 12 variables.
std::vector<PartialAssignment> all_partial_assignments(Var n);

/// Same function over the same universe. Throws PreconditionError when the
/// universes differ.
bool equivalent(const Formula& a, const Formula& b);

/// For every input vector a: f(a) = 1 iff some auxiliary extension satisfies
/// the encoding. Throws PreconditionError when the input variables differ.
bool is_encoding_of(const Encoding& psi, const FunctionTable& f,
                    const SemanticsOptions& options = {});

}  // namespace pcforge
