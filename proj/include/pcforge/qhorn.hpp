#pragma once

// q-Horn recognition, the split-based satisfiability procedure, the binary
// resolution closure φ_q⁺, and the URC encoding compiler.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge {

/// Weights in halves: weight(x) ∈ {0, 1, 2} means γ(x) ∈ {0, ½, 1}, and
/// γ(¬x) = 1 − γ(x).
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(Var num_vars, int halves = 1)
      : positive_(static_cast<std::size_t>(num_vars) + 1, halves) {}

  Var num_vars() const { return positive_.empty() ? 0 : static_cast<Var>(positive_.size() - 1); }
  int halves(Lit l) const {
    const int w = positive_[l.var()];
    return l.is_negative() ? 2 - w : w;
  }
  int halves(Var v) const { return positive_[v]; }
  void set(Var v, int halves) { positive_[v] = halves; }

  /// Σ_{u∈C} γ(u) ≤ 1 for every clause.
  bool witnesses(const Formula& f) const;

  bool operator==(const Valuation&) const = default;

 private:
  std::vector<int> positive_;
};

/// Returns a witnessing valuation, or nullopt when none exists. Formulas
/// whose clauses all have at most two literals get the all-½ valuation;
/// otherwise a backtracking search tries weights 1, 0, ½ per variable.
/// Throws TautologyError.
std::optional<Valuation> recognize_qhorn(const Formula& f);

struct QHornSplit {
  /// Variables replaced by their negation (γ(x) = 0).
  std::vector<Var> flipped;
  std::vector<Var> x1;
  std::vector<Var> x2;
  Formula renamed;
  Formula phi1;
  Formula phi2;

  bool is_flipped(Var v) const;
  /// Maps a literal between the original and the renamed formula (an involution).
  Lit rename(Lit l) const { return is_flipped(l.var()) ? ~l : l; }
  bool in_x2(Var v) const;
};

/// Throws PreconditionError if `gamma` does not witness f.
QHornSplit normalize(const Formula& f, const Valuation& gamma);

enum class SatStatus { Sat, Unsat };

SatStatus qhorn_sat(const QHornSplit& split);

/// Binary-resolution closure of the two-literal x2-projections of φ₂,
/// sorted, over the renamed universe.
Formula phi_q_plus(const QHornSplit& split);

struct CompiledEncoding {
  Encoding encoding;
  QHornSplit split;
  Formula closure;
  /// Auxiliary variable of each closure clause, in closure order.
  std::vector<std::pair<Clause, Var>> meta;
  /// Clauses emitted per group QH1..QH6.
  std::array<std::size_t, 6> group_sizes{};
};

/// Table-1 URC encoding. Uses `gamma` when given, recognize_qhorn otherwise.
/// Throws NotQHornError, TautologyError, PreconditionError.
CompiledEncoding compile_urc_encoding(const Formula& f,
                                      const std::optional<Valuation>& gamma = std::nullopt);

}  // namespace pcforge
