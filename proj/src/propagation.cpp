#include "pcforge/propagation.hpp"

#include <algorithm>

namespace pcforge {

bool PropagationResult::contains(Lit l) const {
  return std::binary_search(derived.begin(), derived.end(), l);
}

Propagator::Propagator(const Formula& f)
    : num_vars_(f.num_vars()), watches_(2 * (static_cast<std::size_t>(f.num_vars()) + 1)),
      values_(static_cast<std::size_t>(f.num_vars()) + 1, 0) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Clause& c = f[i];
    if (c.empty()) {
      if (!empty_clause_) empty_clause_ = i;
    } else if (c.size() == 1) {
      units_.emplace_back(c[0], i);
    } else {
      const auto idx = static_cast<std::uint32_t>(clauses_.size());
      clauses_.push_back({{c.begin(), c.end()}, i});
      watches_[c[0].code()].push_back(idx);
      watches_[c[1].code()].push_back(idx);
    }
  }
  trail_.reserve(num_vars_);
}

void Propagator::reset() {
  for (Lit l : trail_) values_[l.var()] = 0;
  trail_.clear();
  conflict_.reset();
  last_conflict_ = false;
}

bool Propagator::enqueue(Lit l) {
  const int v = value(l);
  if (v > 0) return true;
  if (v < 0) return false;
  values_[l.var()] = static_cast<std::int8_t>(l.is_negative() ? -1 : 1);
  trail_.push_back(l);
  return true;
}

bool Propagator::propagate() {
  std::size_t head = 0;
  while (head < trail_.size()) {
    const Lit falsified = ~trail_[head++];
    auto& ws = watches_[falsified.code()];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const std::uint32_t ci = ws[i++];
      auto& lits = clauses_[ci].lits;
      if (lits[0] == falsified) std::swap(lits[0], lits[1]);
      if (value(lits[0]) > 0) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) >= 0) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1].code()].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (!enqueue(lits[0])) {
        conflict_ = clauses_[ci].origin;
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        return false;
      }
    }
    ws.resize(j);
  }
  return true;
}

bool Propagator::run(std::span<const Lit> assumptions) {
  reset();
  if (empty_clause_) {
    conflict_ = empty_clause_;
    last_conflict_ = true;
    return false;
  }
  for (Lit l : assumptions) {
    if (!enqueue(l)) {
      last_conflict_ = true;
      return false;
    }
  }
  for (const auto& [l, origin] : units_) {
    if (!enqueue(l)) {
      conflict_ = origin;
      last_conflict_ = true;
      return false;
    }
  }
  last_conflict_ = !propagate();
  return !last_conflict_;
}

PropagationResult Propagator::result() const {
  PropagationResult r;
  if (last_conflict_) {
    r.status = PropagationStatus::Conflict;
    r.conflict_clause = conflict_;
    r.derived.reserve(2 * static_cast<std::size_t>(num_vars_));
    for (Var v = 1; v <= num_vars_; ++v) {
      r.derived.push_back(Lit::positive(v));
      r.derived.push_back(Lit::negative(v));
    }
    return r;
  }
  r.derived.assign(trail_.begin(), trail_.end());
  std::sort(r.derived.begin(), r.derived.end());
  return r;
}

PropagationResult up_closure(const Formula& f, const PartialAssignment& alpha) {
  Propagator p(f);
  p.run(alpha.literals());
  return p.result();
}

}  // namespace pcforge
