#pragma once

// Bit-parallel clause representation for the exact (desk-scale) engines.
// Variable v lives in bit v-1, so these types cover universes of up to 64
// variables.

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge::detail {

inline constexpr Var kMaxBitVars = 64;

inline std::uint64_t bit(Var v) { return std::uint64_t{1} << (v - 1); }

inline std::uint64_t universe_mask(Var n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

struct BitClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  bool tautology() const { return (pos & neg) != 0; }
  bool empty() const { return (pos | neg) == 0; }
  int size() const { return std::popcount(pos) + std::popcount(neg); }
  /// Every literal of *this occurs in `other`.
  bool subsumes(const BitClause& other) const {
    return (pos & ~other.pos) == 0 && (neg & ~other.neg) == 0;
  }
  bool operator==(const BitClause&) const = default;
};

BitClause to_bits(const Clause& c);
Clause from_bits(const BitClause& c);
std::vector<BitClause> to_bits(const Formula& f);

/// Three-valued assignment: `t` holds the true variables, `f` the false ones.
struct BitAssignment {
  std::uint64_t t = 0;
  std::uint64_t f = 0;
};

BitAssignment to_bits(const PartialAssignment& a);

/// Small DPLL engine over bit clauses. Unit propagation scans the clause
/// list; this is meant for formulas with up to a few hundred clauses.
class BitSolver {
 public:
  BitSolver(Var num_vars, std::vector<BitClause> clauses);
  explicit BitSolver(const Formula& f);

  Var num_vars() const { return num_vars_; }

  /// Unit propagation; false on conflict.
  bool propagate(BitAssignment& a) const;
  /// Satisfiability under `a`; on success `model` (if given) receives a total
  /// model as a bit vector of true variables.
  bool satisfiable(BitAssignment a, std::uint64_t* model = nullptr) const;
  /// Calls `visit` for every total model extending `a` whose projection
  /// onto `project` (a variable mask) has not been seen. Enumeration
  /// branches on projected variables first; `visit` receives the model
  /// restricted to `project`. Returning false from `visit` stops the search.
  void for_each_projected_model(BitAssignment a, std::uint64_t project,
                                const std::function<bool(std::uint64_t)>& visit) const;

 private:
  bool search(BitAssignment a, std::uint64_t* model) const;
  bool enumerate(BitAssignment a, std::uint64_t project,
                 const std::function<bool(std::uint64_t)>& visit) const;

  Var num_vars_;
  std::uint64_t all_;
  std::vector<BitClause> clauses_;
};

}  // namespace pcforge::detail
