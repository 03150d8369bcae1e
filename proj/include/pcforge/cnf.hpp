#pragma once

// Core propositional data model: literals, clauses, CNF formulas, partial
// assignments and encodings (formulas with a designated set of auxiliary
// variables).
//
// Variables are 1-based. A literal is stored as 2*var + sign so that the
// natural order is x1 < -x1 < x2 < -x2 < ...; clauses keep their literals
// sorted in this order and free of duplicates.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pcforge {

using Var = std::uint32_t;

class Lit {
 public:
  constexpr Lit() = default;

  static constexpr Lit positive(Var v) { return Lit(v << 1); }
  static constexpr Lit negative(Var v) { return Lit((v << 1) | 1U); }
  static constexpr Lit make(Var v, bool negated) {
    return negated ? negative(v) : positive(v);
  }
  static constexpr Lit from_code(std::uint32_t code) { return Lit(code); }
  /// Throws std::invalid_argument for 0.
  static Lit from_dimacs(int value);

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool is_negative() const { return (code_ & 1U) != 0; }
  constexpr bool is_positive() const { return !is_negative(); }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Lit operator~() const { return Lit(code_ ^ 1U); }
  int to_dimacs() const;

  constexpr auto operator<=>(const Lit&) const = default;

 private:
  explicit constexpr Lit(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

std::ostream& operator<<(std::ostream& os, Lit l);

/// A set of literals. Complementary pairs are allowed but flagged.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Lit> lits);
  explicit Clause(std::vector<Lit> lits);
  static Clause from_dimacs(std::initializer_list<int> values);

  std::span<const Lit> literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  Lit operator[](std::size_t i) const { return lits_[i]; }

  bool contains(Lit l) const;
  bool is_tautology() const { return tautology_; }
  /// At most one positive literal.
  bool is_horn() const;
  Var max_var() const { return lits_.empty() ? 0 : lits_.back().var(); }
  /// True if every literal of this clause occurs in `other`.
  bool subset_of(const Clause& other) const;
  /// The clause with `l` removed (no-op if absent).
  Clause without(Lit l) const;

  bool operator==(const Clause& other) const { return lits_ == other.lits_; }
  auto operator<=>(const Clause& other) const { return lits_ <=> other.lits_; }

 private:
  void normalize();

  std::vector<Lit> lits_;
  bool tautology_ = false;
};

std::ostream& operator<<(std::ostream& os, const Clause& c);

/// A consistent set of literals, kept sorted.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::initializer_list<Lit> lits);
  /// Throws std::invalid_argument if `lits` contains a complementary pair.
  explicit PartialAssignment(std::vector<Lit> lits);
  static std::optional<PartialAssignment> try_make(std::vector<Lit> lits);
  static PartialAssignment from_dimacs(std::initializer_list<int> values);

  std::span<const Lit> literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool contains(Lit l) const;
  bool assigns(Var v) const { return contains(Lit::positive(v)) || contains(Lit::negative(v)); }
  /// Adding `l`; nullopt if that would create a complementary pair.
  std::optional<PartialAssignment> with(Lit l) const;
  /// The negations of the literals, i.e. the clause falsified exactly by this assignment.
  Clause negation() const;
  Var max_var() const { return lits_.empty() ? 0 : lits_.back().var(); }

  bool operator==(const PartialAssignment& other) const { return lits_ == other.lits_; }

 private:
  std::vector<Lit> lits_;
};

/// Canonical witness order: smaller assignments first, then lexicographic
/// on the sorted literal codes.
bool witness_less(const PartialAssignment& a, const PartialAssignment& b);

std::ostream& operator<<(std::ostream& os, const PartialAssignment& a);

/// ¬α for the clause α: the assignment falsifying every literal of `c`.
/// nullopt for tautological clauses.
std::optional<PartialAssignment> falsifying_assignment(const Clause& c);

/// A set of clauses over the universe {1..num_vars}. Clause order is the
/// insertion order; duplicates are collapsed on insertion.
class Formula {
 public:
  Formula() = default;
  explicit Formula(Var num_vars) : num_vars_(num_vars) {}
  Formula(Var num_vars, std::vector<Clause> clauses);

  /// Returns false if the clause was already present. Throws
  /// std::invalid_argument if it mentions a variable outside the universe.
  bool add(Clause c);

  Var num_vars() const { return num_vars_; }
  /// Grows the universe; shrinking is not allowed.
  void set_num_vars(Var n);

  std::span<const Clause> clauses() const { return clauses_; }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }
  /// |φ|, the clause count.
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  /// ‖φ‖, the sum of clause sizes.
  std::size_t length() const;

  bool contains(const Clause& c) const { return index_.count(c) != 0; }
  bool has_empty_clause() const;
  bool has_tautology() const;
  bool is_horn() const;

  Formula without(std::size_t clause_index) const;
  /// Same universe and the same clauses, ignoring order.
  bool same_clauses(const Formula& other) const;

  bool operator==(const Formula& other) const {
    return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
  }

 private:
  Var num_vars_ = 0;
  std::vector<Clause> clauses_;
  std::set<Clause> index_;
};

std::ostream& operator<<(std::ostream& os, const Formula& f);

/// A CNF formula whose variables are split into inputs and auxiliaries.
class Encoding {
 public:
  Encoding() = default;
  explicit Encoding(Formula formula) : formula_(std::move(formula)) {}
  /// Throws std::invalid_argument if an auxiliary is outside the universe.
  Encoding(Formula formula, std::vector<Var> aux);

  const Formula& formula() const { return formula_; }
  std::span<const Var> aux() const { return aux_; }
  std::vector<Var> inputs() const;
  bool is_aux(Var v) const;
  bool has_aux() const { return !aux_.empty(); }

 private:
  Formula formula_;
  std::vector<Var> aux_;
};

/// φ(β): clauses satisfied by β removed, falsified literals dropped. A fully
/// falsified clause stays as the empty clause.
Formula apply_assignment(const Formula& f, const PartialAssignment& beta);

/// β touches a clause iff it assigns one of its variables; β is autark iff it
/// satisfies every clause it touches.
bool is_autark(const Formula& f, const PartialAssignment& beta);

/// Applies a variable permutation/renaming: `map[v]` is the image of v
/// (index 0 unused). The result has universe `num_vars`.
Formula rename(const Formula& f, std::span<const Var> map, Var num_vars);

}  // namespace pcforge
