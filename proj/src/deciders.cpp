#include "pcforge/deciders.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <thread>
#include <tuple>

#include "pcforge/detail/bits.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/propagation.hpp"
#include "pcforge/semantics.hpp"

namespace pcforge {

namespace {

void check_input(const Formula& f, const DeciderOptions& options) {
  if (f.has_tautology()) throw TautologyError();
  if (f.num_vars() > options.limit) {
    throw LimitExceeded("universe of " + std::to_string(f.num_vars()) +
                        " variables exceeds decider limit " + std::to_string(options.limit));
  }
}

DeciderMode resolve_mode(const Formula& f, DeciderMode mode) {
  if (mode != DeciderMode::Automatic) return mode;
  return f.num_vars() <= 10 ? DeciderMode::Exhaustive : DeciderMode::Closed;
}

struct Candidate {
  std::vector<Lit> alpha;
  Lit literal;

  bool operator<(const Candidate& o) const {
    if (alpha.size() != o.alpha.size()) return alpha.size() < o.alpha.size();
    if (alpha != o.alpha) return alpha < o.alpha;
    return literal < o.literal;
  }
};

DecisionReport failure(const Candidate& c, bool pc, DeciderMode mode, bool canonical) {
  DecisionReport r;
  r.verdict = false;
  r.witness = PartialAssignment(c.alpha);
  if (pc) r.literal = c.literal;
  r.mode_used = mode;
  r.canonical = canonical;
  return r;
}

// Least literal of the universe absent from the (sorted) closure.
Lit least_missing(const std::vector<Lit>& closure, Var n) {
  for (Var v = 1; v <= n; ++v) {
    for (Lit l : {Lit::positive(v), Lit::negative(v)}) {
      if (!std::binary_search(closure.begin(), closure.end(), l)) return l;
    }
  }
  return Lit::positive(1);
}

// ------------------------------------------------------------ exhaustive

class Exhaustive {
 public:
  Exhaustive(const Formula& f, unsigned jobs) : f_(f), n_(f.num_vars()), jobs_(jobs) {
    if (n_ > 20) throw LimitExceeded("exhaustive mode supports at most 20 variables");
    pow3_.assign(n_ + 1, 1);
    for (Var i = 1; i <= n_; ++i) pow3_[i] = pow3_[i - 1] * 3;
    if (jobs_ == 0) jobs_ = std::max(1U, std::thread::hardware_concurrency());
    build_table();
  }

  std::optional<Candidate> run(bool pc) const {
    const std::uint64_t total = pow3_[n_];
    std::vector<std::optional<Candidate>> best(jobs_);
    auto work = [&](unsigned w) {
      const std::uint64_t lo = total * w / jobs_;
      const std::uint64_t hi = total * (w + 1) / jobs_;
      scan(lo, hi, pc, best[w]);
    };
    if (jobs_ == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < jobs_; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    std::optional<Candidate> out;
    for (auto& b : best) {
      if (b && (!out || *b < *out)) out = std::move(b);
    }
    return out;
  }

 private:
  // digit 0 = free, 1 = true, 2 = false; variable v is digit v-1.
  void build_table() {
    const std::uint64_t total = pow3_[n_];
    extendable_.assign(total, 0);
    const auto clauses = detail::to_bits(f_);
    const std::uint64_t all = detail::universe_mask(n_);
    std::vector<std::uint8_t> digits(n_, 2);
    for (std::uint64_t idx = total; idx-- > 0;) {
      Var p = 0;
      while (p < n_ && digits[p] != 0) ++p;
      if (p == n_) {
        std::uint64_t t = 0;
        for (Var i = 0; i < n_; ++i) {
          if (digits[i] == 1) t |= std::uint64_t{1} << i;
        }
        bool ok = true;
        for (const auto& c : clauses) {
          if ((c.pos & t) == 0 && (c.neg & ~t & all) == 0) {
            ok = false;
            break;
          }
        }
        extendable_[idx] = ok ? 1 : 0;
      } else {
        extendable_[idx] = extendable_[idx + pow3_[p]] | extendable_[idx + 2 * pow3_[p]];
      }
      // decrement the base-3 counter
      for (Var i = 0; i < n_; ++i) {
        if (digits[i] > 0) {
          --digits[i];
          break;
        }
        digits[i] = 2;
      }
    }
  }

  std::uint64_t index_of(std::span<const Lit> lits) const {
    std::uint64_t idx = 0;
    for (Lit l : lits) idx += pow3_[l.var() - 1] * (l.is_negative() ? 2 : 1);
    return idx;
  }

  void scan(std::uint64_t lo, std::uint64_t hi, bool pc, std::optional<Candidate>& best) const {
    Propagator prop(f_);
    std::vector<std::uint8_t> digits(n_, 0);
    std::uint64_t rest = lo;
    for (Var i = 0; i < n_; ++i) {
      digits[i] = static_cast<std::uint8_t>(rest % 3);
      rest /= 3;
    }
    std::vector<Lit> alpha;
    std::vector<Lit> closure;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      alpha.clear();
      for (Var i = 0; i < n_; ++i) {
        if (digits[i] != 0) alpha.push_back(Lit::make(i + 1, digits[i] == 2));
      }
      for (Var i = 0; i < n_; ++i) {
        if (++digits[i] < 3) break;
        digits[i] = 0;
      }
      if (best && alpha.size() > best->alpha.size()) continue;
      if (!prop.run(alpha)) continue;
      const auto trail = prop.trail();
      const std::uint64_t cidx = index_of(trail);
      std::optional<Lit> failing;
      if (extendable_[cidx] == 0) {
        closure.assign(trail.begin(), trail.end());
        std::sort(closure.begin(), closure.end());
        failing = least_missing(closure, n_);
      } else if (pc) {
        for (Var v = 1; v <= n_ && !failing; ++v) {
          if (prop.assigned(v)) continue;
          // ¬v extendable? if not, v is implied.
          if (extendable_[cidx + 2 * pow3_[v - 1]] == 0) {
            failing = Lit::positive(v);
          } else if (extendable_[cidx + pow3_[v - 1]] == 0) {
            failing = Lit::negative(v);
          }
        }
      }
      if (!failing) continue;
      Candidate c{alpha, *failing};
      if (!best || c < *best) best = std::move(c);
    }
  }

  const Formula& f_;
  Var n_;
  unsigned jobs_;
  std::vector<std::uint64_t> pow3_;
  std::vector<std::uint8_t> extendable_;
};

// ---------------------------------------------------------------- closed

using Bits = std::vector<std::uint64_t>;

bool none(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

void and_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
}

bool subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

class ClosedSearch {
 public:
  ClosedSearch(const Formula& f, const DeciderOptions& options)
      : f_(f), n_(f.num_vars()), prop_(f), options_(options) {
    collect_models();
  }

  std::optional<Candidate> run(bool pc) {
    if (!prop_.run({})) return std::nullopt;
    std::vector<Lit> base(prop_.trail().begin(), prop_.trail().end());
    std::sort(base.begin(), base.end());
    if (models_ == 0) return Candidate{{}, least_missing(base, n_)};

    std::optional<Candidate> found;
    std::vector<char> excluded(2 * n_ + 2, 0);
    std::vector<Lit> out;
    if (search(base, all_models(), excluded, out)) {
      found = Candidate{out, Lit::positive(1)};
      minimize_urc(found->alpha);
      found->literal = least_missing(closure_of(found->alpha), n_);
    } else if (pc) {
      for (Var v = 1; v <= n_ && !found; ++v) {
        for (Lit t : {Lit::positive(v), Lit::negative(v)}) {
          if (std::binary_search(base.begin(), base.end(), t) ||
              std::binary_search(base.begin(), base.end(), ~t)) {
            continue;
          }
          // Look for a closed α avoiding t and ¬t under which every model sets ¬t.
          std::fill(excluded.begin(), excluded.end(), 0);
          excluded[t.code()] = 1;
          excluded[(~t).code()] = 1;
          Bits targets = sat_[t.code()];
          if (search(base, targets, excluded, out)) {
            found = Candidate{out, ~t};
            minimize_pc(found->alpha, ~t);
            break;
          }
        }
      }
    }
    if (!found) return std::nullopt;
    canonical_ = false;
    if (auto least = least_witness(found->alpha.size(), pc)) {
      found = least;
      canonical_ = true;
    }
    return found;
  }

  bool canonical() const { return canonical_; }

 private:
  void collect_models() {
    std::vector<std::vector<std::uint8_t>> models;
    std::vector<Lit> assumptions;
    enumerate(assumptions, models);
    models_ = models.size();
    words_ = (models_ + 63) / 64;
    sat_.assign(2 * n_ + 2, Bits(words_, 0));
    for (std::size_t m = 0; m < models_; ++m) {
      for (Var v = 1; v <= n_; ++v) {
        const Lit l = Lit::make(v, models[m][v] == 0);
        sat_[l.code()][m / 64] |= std::uint64_t{1} << (m % 64);
      }
    }
  }

  void enumerate(std::vector<Lit>& assumptions, std::vector<std::vector<std::uint8_t>>& models) {
    if (!prop_.run(assumptions)) return;
    Var free = 0;
    for (Var v = 1; v <= n_; ++v) {
      if (!prop_.assigned(v)) {
        free = v;
        break;
      }
    }
    if (free == 0) {
      if (models.size() >= options_.model_limit) {
        throw LimitExceeded("model count exceeds closed-mode limit");
      }
      std::vector<std::uint8_t> m(n_ + 1, 0);
      for (Var v = 1; v <= n_; ++v) m[v] = prop_.holds(Lit::positive(v)) ? 1 : 0;
      models.push_back(std::move(m));
      return;
    }
    for (Lit l : {Lit::positive(free), Lit::negative(free)}) {
      assumptions.push_back(l);
      enumerate(assumptions, models);
      assumptions.pop_back();
    }
  }

  Bits all_models() const {
    Bits b(words_, ~std::uint64_t{0});
    if (models_ % 64 != 0) b.back() = (std::uint64_t{1} << (models_ % 64)) - 1;
    return b;
  }

  Bits compat_of(std::span<const Lit> lits) const {
    Bits b = all_models();
    for (Lit l : lits) and_into(b, sat_[l.code()]);
    return b;
  }

  std::vector<Lit> closure_of(const std::vector<Lit>& alpha) {
    prop_.run(alpha);
    std::vector<Lit> c(prop_.trail().begin(), prop_.trail().end());
    std::sort(c.begin(), c.end());
    return c;
  }

  struct Probe {
    Lit lit;
    std::vector<Lit> closure;
    Bits compat;
  };

  // Is there a UP-closed, conflict-free α ⊇ `alpha` avoiding `excluded`
  // that no model in `compat` satisfies?
  bool search(const std::vector<Lit>& alpha, const Bits& compat, const std::vector<char>& excluded,
              std::vector<Lit>& out) {
    if (none(compat)) {
      out = alpha;
      return true;
    }
    std::vector<char> assigned(n_ + 1, 0);
    for (Lit l : alpha) assigned[l.var()] = 1;
    std::vector<char> local = excluded;
    std::vector<Probe> live;
    std::vector<Lit> assumptions = alpha;
    for (Var v = 1; v <= n_; ++v) {
      if (assigned[v]) continue;
      for (Lit l : {Lit::positive(v), Lit::negative(v)}) {
        if (local[l.code()]) continue;
        assumptions.push_back(l);
        const bool ok = prop_.run(assumptions);
        assumptions.pop_back();
        bool dead = !ok;
        if (ok) {
          for (Lit d : prop_.trail()) {
            if (local[d.code()]) {
              dead = true;
              break;
            }
          }
        }
        if (dead) {
          local[l.code()] = 1;
          continue;
        }
        Probe p{l, {prop_.trail().begin(), prop_.trail().end()}, compat};
        for (Lit d : p.closure) {
          if (!assigned[d.var()]) and_into(p.compat, sat_[d.code()]);
        }
        std::sort(p.closure.begin(), p.closure.end());
        if (none(p.compat)) {
          out = std::move(p.closure);
          return true;
        }
        live.push_back(std::move(p));
      }
    }
    // A compatible model with the fewest live literals falsified by it.
    std::vector<std::uint32_t> count(models_, 0);
    for (const auto& p : live) {
      const Bits& killed = sat_[(~p.lit).code()];
      for (std::size_t w = 0; w < words_; ++w) {
        for (std::uint64_t m = compat[w] & killed[w]; m != 0; m &= m - 1) {
          ++count[w * 64 + static_cast<std::size_t>(std::countr_zero(m))];
        }
      }
    }
    std::size_t pick = models_;
    for (std::size_t w = 0; w < words_; ++w) {
      for (std::uint64_t m = compat[w]; m != 0; m &= m - 1) {
        const std::size_t idx = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
        if (pick == models_ || count[idx] < count[pick]) pick = idx;
      }
    }
    if (count[pick] == 0) return false;
    const std::uint64_t pick_bit = std::uint64_t{1} << (pick % 64);
    std::vector<const Probe*> branches;
    for (const auto& p : live) {
      if ((sat_[(~p.lit).code()][pick / 64] & pick_bit) != 0) branches.push_back(&p);
    }
    std::vector<char> child = local;
    for (const Probe* p : branches) {
      bool skip = false;
      for (Lit d : p->closure) {
        if (child[d.code()]) {
          skip = true;
          break;
        }
      }
      if (!skip && search(p->closure, p->compat, child, out)) return true;
      child[p->lit.code()] = 1;
    }
    return false;
  }

  void minimize_urc(std::vector<Lit>& alpha) const {
    for (std::size_t i = alpha.size(); i-- > 0;) {
      std::vector<Lit> smaller = alpha;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      if (none(compat_of(smaller))) alpha = std::move(smaller);
    }
  }

  void minimize_pc(std::vector<Lit>& alpha, Lit target) const {
    for (std::size_t i = alpha.size(); i-- > 0;) {
      std::vector<Lit> smaller = alpha;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      if (subset(compat_of(smaller), sat_[target.code()])) alpha = std::move(smaller);
    }
  }

  // Least witness of size at most `max_size`, or nullopt when the candidate
  // budget runs out first.
  std::optional<Candidate> least_witness(std::size_t max_size, bool pc) {
    std::size_t budget = options_.canonical_budget;
    std::vector<Lit> alpha;
    for (std::size_t k = 0; k <= max_size; ++k) {
      std::optional<Candidate> hit;
      if (!combos(alpha, 2, k, pc, budget, hit)) return std::nullopt;
      if (hit) return hit;
    }
    return std::nullopt;
  }

  // Extends `alpha` by `k` more literal codes ≥ `from`, in lexicographic order.
  // Returns false when the budget is exhausted.
  bool combos(std::vector<Lit>& alpha, std::uint32_t from, std::size_t k, bool pc,
              std::size_t& budget, std::optional<Candidate>& hit) {
    if (k == 0) {
      if (budget-- == 0) return false;
      hit = check(alpha, pc);
      return true;
    }
    const std::uint32_t last = 2 * n_ + 1;
    for (std::uint32_t code = from; code <= last; ++code) {
      if (!alpha.empty() && (code >> 1) == alpha.back().var()) continue;
      if (last - code + 1 < k) break;
      alpha.push_back(Lit::from_code(code));
      const bool ok = combos(alpha, code + 1, k - 1, pc, budget, hit);
      alpha.pop_back();
      if (!ok) return false;
      if (hit) return true;
    }
    return true;
  }

  std::optional<Candidate> check(const std::vector<Lit>& alpha, bool pc) {
    if (!prop_.run(alpha)) return std::nullopt;
    std::vector<Lit> closure(prop_.trail().begin(), prop_.trail().end());
    std::sort(closure.begin(), closure.end());
    const Bits compat = compat_of(closure);
    if (none(compat)) return Candidate{alpha, least_missing(closure, n_)};
    if (!pc) return std::nullopt;
    for (Var v = 1; v <= n_; ++v) {
      if (prop_.assigned(v)) continue;
      for (Lit l : {Lit::positive(v), Lit::negative(v)}) {
        if (subset(compat, sat_[l.code()])) return Candidate{alpha, l};
      }
    }
    return std::nullopt;
  }

  const Formula& f_;
  Var n_;
  Propagator prop_;
  const DeciderOptions& options_;
  std::size_t models_ = 0;
  std::size_t words_ = 0;
  std::vector<Bits> sat_;  // by literal code: models satisfying it
  bool canonical_ = true;
};

DecisionReport decide(const Formula& f, const DeciderOptions& options, bool pc) {
  check_input(f, options);
  const DeciderMode mode = resolve_mode(f, options.mode);
  if (mode == DeciderMode::Exhaustive) {
    Exhaustive ex(f, options.jobs);
    if (auto c = ex.run(pc)) return failure(*c, pc, mode, true);
  } else {
    ClosedSearch cs(f, options);
    if (auto c = cs.run(pc)) return failure(*c, pc, mode, cs.canonical());
  }
  DecisionReport r;
  r.mode_used = mode;
  return r;
}

// UP-based absorption without the implicate precondition.
bool absorbed_by(const Clause& c, const Formula& f) {
  Propagator prop(f);
  for (Lit l : c) {
    std::vector<Lit> assumptions;
    for (Lit e : c) {
      if (e != l) assumptions.push_back(~e);
    }
    if (prop.run(assumptions) && !prop.holds(l)) return false;
  }
  if (c.empty()) return !prop.run({});
  return true;
}

std::vector<std::size_t> removal_order(std::size_t size, const std::optional<std::uint64_t>& seed) {
  std::vector<std::size_t> order(size);
  std::iota(order.begin(), order.end(), 0);
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  return order;
}

Formula subformula(const Formula& f, const std::vector<char>& keep) {
  Formula out(f.num_vars());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (keep[i]) out.add(f[i]);
  }
  return out;
}

}  // namespace

DecisionReport is_urc(const Formula& f, const DeciderOptions& options) {
  return decide(f, options, false);
}

DecisionReport is_pc(const Formula& f, const DeciderOptions& options) {
  return decide(f, options, true);
}

bool witness_valid(const Formula& f, const DecisionReport& report, bool pc) {
  if (report.verdict || !report.witness) return false;
  const PartialAssignment& alpha = *report.witness;
  const auto up = up_closure(f, alpha);
  if (up.conflict()) return false;
  if (!pc) return !is_satisfiable(f, alpha);
  if (!report.literal) return false;
  const Lit l = *report.literal;
  if (up.contains(l)) return false;
  if (alpha.contains(~l)) return !is_satisfiable(f, alpha);
  return !is_satisfiable(f, *alpha.with(~l));
}

bool is_absorbed(const Clause& c, const Formula& f) {
  if (c.is_tautology()) throw TautologyError();
  if (!entails(f, c)) throw PreconditionError("clause is not an implicate of the formula");
  return absorbed_by(c, f);
}

Formula reduce_pc_irredundant(const Formula& f, const ReduceOptions& options) {
  if (!is_pc(f, options.decider).verdict) throw PreconditionError("formula is not PC");
  std::vector<char> keep(f.size(), 1);
  for (std::size_t i : removal_order(f.size(), options.seed)) {
    keep[i] = 0;
    if (!absorbed_by(f[i], subformula(f, keep))) keep[i] = 1;
  }
  Formula out = subformula(f, keep);
  if (!is_pc(out, options.decider).verdict) {
    throw std::logic_error("absorbed-clause removal lost propagation completeness");
  }
  return out;
}

Formula reduce_urc_irredundant(const Formula& f, const ReduceOptions& options) {
  if (!is_urc(f, options.decider).verdict) throw PreconditionError("formula is not URC");
  std::vector<char> keep(f.size(), 1);
  const auto order = removal_order(f.size(), options.seed);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i : order) {
      if (!keep[i]) continue;
      keep[i] = 0;
      const Formula rest = subformula(f, keep);
      if (entails(rest, f[i]) && is_urc(rest, options.decider).verdict) {
        changed = true;
      } else {
        keep[i] = 1;
      }
    }
  }
  return subformula(f, keep);
}

}  // namespace pcforge
