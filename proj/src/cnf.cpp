#include "pcforge/cnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcforge {

Lit Lit::from_dimacs(int value) {
  if (value == 0) throw std::invalid_argument("literal 0 is not a literal");
  return value > 0 ? positive(static_cast<Var>(value)) : negative(static_cast<Var>(-value));
}

int Lit::to_dimacs() const {
  const int v = static_cast<int>(var());
  return is_negative() ? -v : v;
}

std::ostream& operator<<(std::ostream& os, Lit l) { return os << l.to_dimacs(); }

// ---------------------------------------------------------------- Clause

Clause::Clause(std::initializer_list<Lit> lits) : lits_(lits) { normalize(); }

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) { normalize(); }

Clause Clause::from_dimacs(std::initializer_list<int> values) {
  std::vector<Lit> lits;
  lits.reserve(values.size());
  for (int v : values) lits.push_back(Lit::from_dimacs(v));
  return Clause(std::move(lits));
}

void Clause::normalize() {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  tautology_ = false;
  for (std::size_t i = 1; i < lits_.size(); ++i) {
    if (lits_[i].var() == lits_[i - 1].var()) {
      tautology_ = true;
      break;
    }
  }
}

bool Clause::contains(Lit l) const { return std::binary_search(lits_.begin(), lits_.end(), l); }

bool Clause::is_horn() const {
  return std::count_if(lits_.begin(), lits_.end(), [](Lit l) { return l.is_positive(); }) <= 1;
}

bool Clause::subset_of(const Clause& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

Clause Clause::without(Lit l) const {
  Clause c = *this;
  c.lits_.erase(std::remove(c.lits_.begin(), c.lits_.end(), l), c.lits_.end());
  c.normalize();
  return c;
}

std::ostream& operator<<(std::ostream& os, const Clause& c) {
  os << '(';
  bool first = true;
  for (Lit l : c) {
    if (!first) os << ' ';
    os << l;
    first = false;
  }
  return os << ')';
}

// ------------------------------------------------------ PartialAssignment

namespace {

bool has_complementary_pair(const std::vector<Lit>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].var() == sorted[i - 1].var()) return true;
  }
  return false;
}

}  // namespace

PartialAssignment::PartialAssignment(std::initializer_list<Lit> lits)
    : PartialAssignment(std::vector<Lit>(lits)) {}

PartialAssignment::PartialAssignment(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  if (has_complementary_pair(lits_)) {
    throw std::invalid_argument("partial assignment contains a complementary pair");
  }
}

std::optional<PartialAssignment> PartialAssignment::try_make(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  if (has_complementary_pair(lits)) return std::nullopt;
  PartialAssignment a;
  a.lits_ = std::move(lits);
  return a;
}

PartialAssignment PartialAssignment::from_dimacs(std::initializer_list<int> values) {
  std::vector<Lit> lits;
  for (int v : values) lits.push_back(Lit::from_dimacs(v));
  return PartialAssignment(std::move(lits));
}

bool PartialAssignment::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

std::optional<PartialAssignment> PartialAssignment::with(Lit l) const {
  if (contains(~l)) return std::nullopt;
  std::vector<Lit> lits = lits_;
  lits.push_back(l);
  return PartialAssignment(std::move(lits));
}

Clause PartialAssignment::negation() const {
  std::vector<Lit> lits;
  lits.reserve(lits_.size());
  for (Lit l : lits_) lits.push_back(~l);
  return Clause(std::move(lits));
}

bool witness_less(const PartialAssignment& a, const PartialAssignment& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::ostream& operator<<(std::ostream& os, const PartialAssignment& a) {
  os << '{';
  bool first = true;
  for (Lit l : a) {
    if (!first) os << ' ';
    os << l;
    first = false;
  }
  return os << '}';
}

std::optional<PartialAssignment> falsifying_assignment(const Clause& c) {
  if (c.is_tautology()) return std::nullopt;
  std::vector<Lit> lits;
  for (Lit l : c) lits.push_back(~l);
  return PartialAssignment(std::move(lits));
}

// ---------------------------------------------------------------- Formula

Formula::Formula(Var num_vars, std::vector<Clause> clauses) : num_vars_(num_vars) {
  for (auto& c : clauses) add(std::move(c));
}

bool Formula::add(Clause c) {
  if (c.max_var() > num_vars_) {
    throw std::invalid_argument("clause mentions variable " + std::to_string(c.max_var()) +
                                " outside universe of " + std::to_string(num_vars_));
  }
  if (!index_.insert(c).second) return false;
  clauses_.push_back(std::move(c));
  return true;
}

void Formula::set_num_vars(Var n) {
  if (n < num_vars_) throw std::invalid_argument("universe cannot shrink");
  num_vars_ = n;
}

std::size_t Formula::length() const {
  std::size_t total = 0;
  for (const auto& c : clauses_) total += c.size();
  return total;
}

bool Formula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

bool Formula::has_tautology() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.is_tautology(); });
}

bool Formula::is_horn() const {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.is_horn(); });
}

Formula Formula::without(std::size_t clause_index) const {
  Formula f(num_vars_);
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (i != clause_index) f.add(clauses_[i]);
  }
  return f;
}

bool Formula::same_clauses(const Formula& other) const {
  return num_vars_ == other.num_vars_ && index_ == other.index_;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  bool first = true;
  for (const auto& c : f) {
    if (!first) os << ' ';
    os << c;
    first = false;
  }
  if (first) os << "(empty)";
  return os;
}

// --------------------------------------------------------------- Encoding

Encoding::Encoding(Formula formula, std::vector<Var> aux)
    : formula_(std::move(formula)), aux_(std::move(aux)) {
  std::sort(aux_.begin(), aux_.end());
  aux_.erase(std::unique(aux_.begin(), aux_.end()), aux_.end());
  for (Var v : aux_) {
    if (v == 0 || v > formula_.num_vars()) {
      throw std::invalid_argument("auxiliary variable " + std::to_string(v) +
                                  " outside universe");
    }
  }
}

std::vector<Var> Encoding::inputs() const {
  std::vector<Var> in;
  for (Var v = 1; v <= formula_.num_vars(); ++v) {
    if (!is_aux(v)) in.push_back(v);
  }
  return in;
}

bool Encoding::is_aux(Var v) const { return std::binary_search(aux_.begin(), aux_.end(), v); }

// ------------------------------------------------------------- operations

Formula apply_assignment(const Formula& f, const PartialAssignment& beta) {
  Formula out(f.num_vars());
  for (const auto& c : f) {
    bool satisfied = false;
    std::vector<Lit> rest;
    for (Lit l : c) {
      if (beta.contains(l)) {
        satisfied = true;
        break;
      }
      if (!beta.contains(~l)) rest.push_back(l);
    }
    if (!satisfied) out.add(Clause(std::move(rest)));
  }
  return out;
}

bool is_autark(const Formula& f, const PartialAssignment& beta) {
  for (const auto& c : f) {
    bool touched = false;
    bool satisfied = false;
    for (Lit l : c) {
      if (beta.contains(l)) satisfied = true;
      if (beta.contains(l) || beta.contains(~l)) touched = true;
    }
    if (touched && !satisfied) return false;
  }
  return true;
}

Formula rename(const Formula& f, std::span<const Var> map, Var num_vars) {
  Formula out(num_vars);
  for (const auto& c : f) {
    std::vector<Lit> lits;
    for (Lit l : c) lits.push_back(Lit::make(map[l.var()], l.is_negative()));
    out.add(Clause(std::move(lits)));
  }
  return out;
}

}  // namespace pcforge
