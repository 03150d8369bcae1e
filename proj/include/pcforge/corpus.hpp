#pragma once

// Seeded random formula corpora. Every generator is a pure function of its
// arguments: the same seed yields the same formulas on every platform.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge {

struct CorpusOptions {
  std::uint64_t seed = 1;
  std::size_t count = 500;
  Var max_vars = 6;
  std::size_t max_clauses = 10;
  std::size_t max_width = 3;
  /// At most one positive literal per clause.
  bool horn = false;
  /// Resample until satisfiable.
  bool satisfiable_only = true;
};

/// Random CNF formulas without tautologies or empty clauses.
std::vector<Formula> random_corpus(const CorpusOptions& options);

/// Random functions given by their full-width CNF (one clause per
/// falsifying vector). Functions are non-constant.
std::vector<Formula> random_function_corpus(const CorpusOptions& options);

struct QHornCorpusOptions {
  std::uint64_t seed = 1;
  std::size_t count = 200;
  Var max_vars = 8;
  /// Upper bound on the number of weight-½ variables of the planted valuation.
  Var max_half_vars = 5;
  std::size_t max_clauses = 12;
};

/// Random formulas built to be q-Horn under a planted valuation.
std::vector<Formula> random_qhorn_corpus(const QHornCorpusOptions& options);

}  // namespace pcforge
