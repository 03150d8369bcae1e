#include "pcforge/qhorn.hpp"

#include <algorithm>
#include <set>

#include "pcforge/errors.hpp"
#include "pcforge/propagation.hpp"

namespace pcforge {

bool Valuation::witnesses(const Formula& f) const {
  if (f.num_vars() > num_vars()) return false;
  for (const auto& c : f) {
    int sum = 0;
    for (Lit l : c) sum += halves(l);
    if (sum > 2) return false;
  }
  return true;
}

namespace {

class Recognizer {
 public:
  explicit Recognizer(const Formula& f)
      : f_(f), gamma_(f.num_vars(), 1),
        sums_(f.size(), 0), occurs_(f.num_vars() + 1) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (Lit l : f[i]) occurs_[l.var()].emplace_back(i, l);
    }
  }

  std::optional<Valuation> run() {
    if (assign(1)) return gamma_;
    return std::nullopt;
  }

 private:
  bool assign(Var v) {
    if (v > f_.num_vars()) return true;
    for (int w : {2, 0, 1}) {
      gamma_.set(v, w);
      bool ok = true;
      std::size_t done = 0;
      for (const auto& [ci, l] : occurs_[v]) {
        sums_[ci] += gamma_.halves(l);
        ++done;
        if (sums_[ci] > 2) {
          ok = false;
          break;
        }
      }
      if (ok && assign(v + 1)) return true;
      for (std::size_t k = 0; k < done; ++k) {
        const auto& [ci, l] = occurs_[v][k];
        sums_[ci] -= gamma_.halves(l);
      }
    }
    return false;
  }

  const Formula& f_;
  Valuation gamma_;
  std::vector<int> sums_;
  std::vector<std::vector<std::pair<std::size_t, Lit>>> occurs_;
};

// 2-SAT over binary clauses by strongly connected components of the
// implication graph (iterative Tarjan).
bool two_sat(Var n, const std::vector<std::pair<Lit, Lit>>& clauses) {
  const std::size_t nodes = 2 * (static_cast<std::size_t>(n) + 1);
  std::vector<std::vector<std::uint32_t>> adj(nodes);
  for (const auto& [a, b] : clauses) {
    adj[(~a).code()].push_back(b.code());
    adj[(~b).code()].push_back(a.code());
  }
  std::vector<int> index(nodes, -1);
  std::vector<int> low(nodes, 0);
  std::vector<int> comp(nodes, -1);
  std::vector<char> on_stack(nodes, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  int counter = 0;
  int components = 0;
  for (std::uint32_t root = 2; root < nodes; ++root) {
    if (index[root] != -1) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [u, next] = call.back();
      if (next < adj[u].size()) {
        const std::uint32_t w = adj[u][next++];
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[u] = std::min(low[u], index[w]);
        }
        continue;
      }
      const std::uint32_t done = u;
      call.pop_back();
      if (!call.empty()) {
        const std::uint32_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }
  for (Var v = 1; v <= n; ++v) {
    if (comp[Lit::positive(v).code()] == comp[Lit::negative(v).code()]) return false;
  }
  return true;
}

using Pair = std::pair<Lit, Lit>;

Pair key_of(Lit a, Lit b) { return a < b ? Pair{a, b} : Pair{b, a}; }

}  // namespace

std::optional<Valuation> recognize_qhorn(const Formula& f) {
  if (f.has_tautology()) throw TautologyError();
  const bool binary = std::all_of(f.begin(), f.end(), [](const Clause& c) { return c.size() <= 2; });
  if (binary) return Valuation(f.num_vars(), 1);
  return Recognizer(f).run();
}

bool QHornSplit::is_flipped(Var v) const {
  return std::binary_search(flipped.begin(), flipped.end(), v);
}

bool QHornSplit::in_x2(Var v) const { return std::binary_search(x2.begin(), x2.end(), v); }

QHornSplit normalize(const Formula& f, const Valuation& gamma) {
  if (!gamma.witnesses(f)) throw PreconditionError("valuation does not witness q-Horn-ness");
  QHornSplit s;
  for (Var v = 1; v <= f.num_vars(); ++v) {
    const int w = gamma.halves(v);
    if (w == 0) s.flipped.push_back(v);
    (w == 1 ? s.x2 : s.x1).push_back(v);
  }
  s.renamed = Formula(f.num_vars());
  s.phi1 = Formula(f.num_vars());
  s.phi2 = Formula(f.num_vars());
  for (const auto& c : f) {
    std::vector<Lit> lits;
    bool touches_x2 = false;
    for (Lit l : c) {
      lits.push_back(s.rename(l));
      touches_x2 = touches_x2 || s.in_x2(l.var());
    }
    Clause r(std::move(lits));
    s.renamed.add(r);
    (touches_x2 ? s.phi2 : s.phi1).add(std::move(r));
  }
  return s;
}

SatStatus qhorn_sat(const QHornSplit& split) {
  // Steps 1-2: unit propagation on the Horn part.
  Propagator horn(split.phi1);
  if (!horn.run({})) return SatStatus::Unsat;
  // Step 3: the x1-literals it derived.
  const PartialAssignment beta(std::vector<Lit>(horn.trail().begin(), horn.trail().end()));
  // Step 4: clauses of φ₂(β) inside lit(x2).
  const Formula reduced = apply_assignment(split.phi2, beta);
  Formula inner(split.phi2.num_vars());
  for (const auto& c : reduced) {
    const bool inside = std::all_of(c.begin(), c.end(), [&](Lit l) { return split.in_x2(l.var()); });
    if (inside) inner.add(c);
  }
  // Step 5: 2-SAT, with the unit clauses propagated first.
  Propagator units(inner);
  if (!units.run({})) return SatStatus::Unsat;
  const PartialAssignment forced(std::vector<Lit>(units.trail().begin(), units.trail().end()));
  std::vector<Pair> binary;
  for (const auto& c : apply_assignment(inner, forced)) {
    if (c.size() == 2) binary.emplace_back(c[0], c[1]);
  }
  return two_sat(inner.num_vars(), binary) ? SatStatus::Sat : SatStatus::Unsat;
}

Formula phi_q_plus(const QHornSplit& split) {
  std::set<Pair> closure;
  for (const auto& c : split.phi2) {
    std::vector<Lit> q;
    for (Lit l : c) {
      if (split.in_x2(l.var())) q.push_back(l);
    }
    if (q.size() == 2) closure.insert(key_of(q[0], q[1]));
  }
  std::vector<Pair> work(closure.begin(), closure.end());
  while (!work.empty()) {
    const Pair p = work.back();
    work.pop_back();
    const std::vector<Pair> current(closure.begin(), closure.end());
    for (const Pair& q : current) {
      for (Lit a : {p.first, p.second}) {
        for (Lit b : {q.first, q.second}) {
          if (b != ~a) continue;
          const Lit u = a == p.first ? p.second : p.first;
          const Lit w = b == q.first ? q.second : q.first;
          if (u == w || u == ~w) continue;
          if (closure.insert(key_of(u, w)).second) work.push_back(key_of(u, w));
        }
      }
    }
  }
  Formula out(split.renamed.num_vars());
  for (const auto& [a, b] : closure) out.add(Clause{a, b});
  return out;
}

CompiledEncoding compile_urc_encoding(const Formula& f, const std::optional<Valuation>& gamma) {
  if (f.has_tautology()) throw TautologyError();
  std::optional<Valuation> g = gamma ? gamma : recognize_qhorn(f);
  if (!g) throw NotQHornError();
  if (!g->witnesses(f)) throw NotQHornError();

  CompiledEncoding out;
  out.split = normalize(f, *g);
  out.closure = phi_q_plus(out.split);
  const Var n = f.num_vars();
  std::map<Pair, Var> meta;
  Var next = n;
  for (const auto& c : out.closure) {
    meta.emplace(key_of(c[0], c[1]), ++next);
    out.meta.emplace_back(c, next);
  }
  auto y = [&](Lit a, Lit b) { return meta.at(key_of(a, b)); };
  const QHornSplit& s = out.split;

  Formula psi(next);
  auto emit = [&](std::size_t group, Clause c) {
    if (psi.add(std::move(c))) ++out.group_sizes[group];
  };
  // QH1: clauses with at most one x2-variable, as given.
  for (const auto& c : f) {
    const auto k = std::count_if(c.begin(), c.end(), [&](Lit l) { return s.in_x2(l.var()); });
    if (k <= 1) emit(0, c);
  }
  // QH2: x1-part of a φ₂ clause with two x2-variables, plus ⟦u∨v⟧.
  for (const auto& c : s.phi2) {
    std::vector<Lit> x1_part;
    std::vector<Lit> q;
    for (Lit l : c) (s.in_x2(l.var()) ? q : x1_part).push_back(l);
    if (q.size() != 2) continue;
    std::vector<Lit> lits;
    for (Lit l : x1_part) lits.push_back(s.rename(l));
    lits.push_back(Lit::positive(y(q[0], q[1])));
    emit(1, Clause(std::move(lits)));
  }
  const std::vector<Clause> plus(out.closure.begin(), out.closure.end());
  // QH3: resolution steps inside φ_q⁺.
  for (std::size_t i = 0; i < plus.size(); ++i) {
    for (std::size_t j = i + 1; j < plus.size(); ++j) {
      for (Lit a : plus[i]) {
        if (!plus[j].contains(~a)) continue;
        const Lit u = a == plus[i][0] ? plus[i][1] : plus[i][0];
        const Lit w = ~a == plus[j][0] ? plus[j][1] : plus[j][0];
        if (u == w || u == ~w) continue;
        emit(2, Clause{Lit::negative(y(plus[i][0], plus[i][1])),
                       Lit::negative(y(plus[j][0], plus[j][1])), Lit::positive(y(u, w))});
      }
    }
  }
  // QH4: u∨v and u∨¬v give u.
  for (std::size_t i = 0; i < plus.size(); ++i) {
    for (std::size_t j = i + 1; j < plus.size(); ++j) {
      for (Lit u : plus[i]) {
        if (!plus[j].contains(u)) continue;
        const Lit v = u == plus[i][0] ? plus[i][1] : plus[i][0];
        const Lit w = u == plus[j][0] ? plus[j][1] : plus[j][0];
        if (w != ~v) continue;
        emit(3, Clause{Lit::negative(y(plus[i][0], plus[i][1])),
                       Lit::negative(y(plus[j][0], plus[j][1])), u});
      }
    }
  }
  // QH5 and QH6: ⟦u∨v⟧ ⇔ u∨v.
  for (const auto& c : plus) emit(4, Clause{Lit::negative(y(c[0], c[1])), c[0], c[1]});
  for (const auto& c : plus) {
    emit(5, Clause{~c[0], Lit::positive(y(c[0], c[1]))});
    emit(5, Clause{~c[1], Lit::positive(y(c[0], c[1]))});
  }
  std::vector<Var> aux;
  for (Var v = n + 1; v <= next; ++v) aux.push_back(v);
  out.encoding = Encoding(std::move(psi), std::move(aux));
  return out;
}

}  // namespace pcforge
