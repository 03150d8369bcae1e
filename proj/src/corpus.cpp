#include "pcforge/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pcforge/semantics.hpp"

namespace pcforge {

namespace {

// std::uniform_int_distribution is implementation-defined; this keeps corpora
// identical across standard libraries.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r = 0;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

std::uint64_t between(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + below(rng, hi - lo + 1);
}

std::vector<Var> pick_vars(std::mt19937_64& rng, const std::vector<Var>& pool, std::size_t k) {
  std::vector<Var> p = pool;
  for (std::size_t i = 0; i < k; ++i) std::swap(p[i], p[i + below(rng, p.size() - i)]);
  p.resize(k);
  return p;
}

std::vector<Var> range(Var n) {
  std::vector<Var> v(n);
  std::iota(v.begin(), v.end(), Var{1});
  return v;
}

}  // namespace

std::vector<Formula> random_corpus(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Formula> out;
  while (out.size() < options.count) {
    const auto n = static_cast<Var>(between(rng, 1, options.max_vars));
    const auto m = between(rng, 1, options.max_clauses);
    Formula f(n);
    const auto pool = range(n);
    for (std::size_t i = 0; i < m; ++i) {
      const auto w = between(rng, 1, std::min<std::uint64_t>(options.max_width, n));
      std::vector<Lit> lits;
      for (Var v : pick_vars(rng, pool, w)) lits.push_back(Lit::make(v, below(rng, 2) == 1));
      if (options.horn) {
        const auto keep = below(rng, w + 1);  // index of the positive literal, w = none
        for (std::size_t k = 0; k < lits.size(); ++k) {
          lits[k] = Lit::negative(lits[k].var());
          if (k == keep) lits[k] = ~lits[k];
        }
      }
      f.add(Clause(std::move(lits)));
    }
    if (!options.satisfiable_only || is_satisfiable(f)) out.push_back(std::move(f));
  }
  return out;
}

std::vector<Formula> random_function_corpus(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Formula> out;
  while (out.size() < options.count) {
    const auto n = static_cast<Var>(between(rng, 2, options.max_vars));
    Formula f(n);
    std::size_t falsified = 0;
    for (std::uint32_t vec = 0; vec < (1U << n); ++vec) {
      if (below(rng, 2) == 0) continue;
      ++falsified;
      std::vector<Lit> lits;
      for (Var v = 1; v <= n; ++v) lits.push_back(Lit::make(v, (vec >> (v - 1)) & 1U));
      f.add(Clause(std::move(lits)));
    }
    if (falsified == 0 || falsified == (std::size_t{1} << n)) continue;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Formula> random_qhorn_corpus(const QHornCorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Formula> out;
  while (out.size() < options.count) {
    const auto n = static_cast<Var>(between(rng, 2, options.max_vars));
    // Planted valuation in halves: 2 (γ(x)=1), 0 (γ(x)=0) or 1 (γ(x)=½).
    std::vector<int> weight(n + 1, 2);
    std::vector<Var> half;
    std::vector<Var> whole;
    for (Var v = 1; v <= n; ++v) {
      const auto r = below(rng, 3);
      if (r == 0 && half.size() < options.max_half_vars) {
        weight[v] = 1;
        half.push_back(v);
      } else {
        weight[v] = r == 1 ? 0 : 2;
        whole.push_back(v);
      }
    }
    auto heavy = [&](Var v) { return Lit::make(v, weight[v] == 0); };  // weight 1
    auto light = [&](Var v) { return ~heavy(v); };                       // weight 0
    const auto m = between(rng, 2, options.max_clauses);
    Formula f(n);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Lit> lits;
      std::vector<Var> used;
      const bool halves = !half.empty() && (whole.empty() || below(rng, 2) == 0);
      if (halves) {
        const auto k = between(rng, 1, std::min<std::size_t>(2, half.size()));
        for (Var v : pick_vars(rng, half, k)) lits.push_back(Lit::make(v, below(rng, 2) == 1));
      } else {
        const Var v = whole[below(rng, whole.size())];
        lits.push_back(heavy(v));
        used.push_back(v);
      }
      // Weight-0 literals on the remaining whole variables.
      std::vector<Var> rest;
      for (Var v : whole) {
        if (std::find(used.begin(), used.end(), v) == used.end()) rest.push_back(v);
      }
      const auto extra = below(rng, std::min<std::size_t>(2, rest.size()) + 1);
      for (Var v : pick_vars(rng, rest, extra)) lits.push_back(light(v));
      f.add(Clause(std::move(lits)));
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace pcforge
