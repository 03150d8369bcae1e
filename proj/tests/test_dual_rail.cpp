#include <doctest.h>

#include "oracles.hpp"
#include "pcforge/deciders.hpp"
#include "pcforge/dual_rail.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/families.hpp"
#include "pcforge/semantics.hpp"

using namespace pcforge;

namespace {

Formula make(int n, const oracle::Cnf& cnf) { return oracle::formula(n, cnf); }

std::set<oracle::Cl> clause_set(const Formula& f) { return oracle::sorted_set(oracle::ints(f)); }

std::set<oracle::Cl> as_sets(const std::vector<PartialAssignment>& v) {
  std::set<oracle::Cl> out;
  for (const auto& a : v) {
    auto c = oracle::ints(a);
    std::sort(c.begin(), c.end());
    out.insert(c);
  }
  return out;
}

}  // namespace

TEST_CASE("dual rail construction") {
  const auto dr = dual_rail(make(2, {{1, 2}}));
  CHECK(dr.map.meta(Lit::positive(2)) == 2);
  CHECK(dr.map.meta(Lit::negative(1)) == 3);
  CHECK(dr.map.literal(4) == Lit::negative(2));
  CHECK(dr.horn.num_vars() == 4);
  CHECK(clause_set(dr.horn) == std::set<oracle::Cl>{{-4, 1}, {-3, 2}, {-3, -1}, {-4, -2}});
  CHECK(clause_set(dual_rail(make(1, {{1}})).horn) == std::set<oracle::Cl>{{1}, {-2, -1}});
  CHECK(dual_rail(gen_gamma(3, GammaVariant::Prime)).horn.is_horn());
  CHECK_THROWS_AS(dual_rail(make(1, {{}})), EmptyClauseError);
}

TEST_CASE("Horn entailment") {
  CHECK(horn_entails(make(3, {{-1, 2}, {-2, 3}}), Clause::from_dimacs({-1, 3})));
  CHECK_FALSE(horn_entails(make(2, {{-1, 2}}), Clause::from_dimacs({2})));
  const auto g = gen_gamma(3, GammaVariant::Prime);
  const auto dr = dual_rail(g);
  for (const auto& c : dual_rail(prime_implicates(g)).horn) CHECK(horn_entails(dr.horn, c));

  oracle::Lcg r{71};
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(r.next(5));
    auto cnf = oracle::random_cnf(r, n, 1 + static_cast<int>(r.next(7)), 3);
    for (auto& c : cnf) {
      bool pos = false;
      for (int& l : c) {
        if (l > 0 && pos) l = -l;
        pos = pos || l > 0;
      }
    }
    const auto q = oracle::random_cnf(r, n, 1, 3)[0];
    CHECK(horn_entails(make(n, cnf), oracle::clause(q)) == oracle::entails(n, cnf, q));
  }
}

TEST_CASE("Horn equivalence and the PC characterization") {
  const Formula g2 = gen_gamma(2, GammaVariant::Prime);
  CHECK(horn_equivalent(dual_rail(g2).horn, dual_rail(prime_implicates(g2)).horn));
  const Formula psi = gen_psi_horn(3);
  CHECK_FALSE(horn_equivalent(dual_rail(psi).horn, dual_rail(prime_implicates(psi)).horn));
  CHECK(horn_equivalent(dual_rail(psi).horn, dual_rail(psi).horn));
  CHECK(pc_via_dual_rail(gen_gamma(3, GammaVariant::Prime)));
  CHECK_FALSE(pc_via_dual_rail(psi));
  CHECK_THROWS_AS(pc_via_dual_rail(make(1, {{1}, {-1}})), UnsatisfiableError);

  oracle::Lcg r{73};
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(r.next(6));
    const auto cnf = oracle::random_cnf(r, n, 1 + static_cast<int>(r.next(9)), 3);
    if (oracle::models(n, cnf).empty()) continue;
    CHECK(pc_via_dual_rail(make(n, cnf)) == oracle::is_pc(n, cnf));
    CHECK(pc_via_dual_rail(prime_implicates(make(n, cnf))));
  }
}

TEST_CASE("closed assignment families") {
  CHECK(as_sets(closed_assignments(make(1, {{1}}))) == std::set<oracle::Cl>{{1}});
  CHECK(as_sets(closed_assignments(Formula(1))) == std::set<oracle::Cl>{{}, {1}, {-1}});

  oracle::Lcg r{79};
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(r.next(5));
    const auto cnf = oracle::random_cnf(r, n, 1 + static_cast<int>(r.next(8)), 3);
    if (oracle::models(n, cnf).empty()) continue;
    const Formula f = make(n, cnf);
    std::set<oracle::Cl> closed, up_closed;
    for (auto alpha : oracle::partials(n)) {
      std::sort(alpha.begin(), alpha.end());
      const std::set<int> as(alpha.begin(), alpha.end());
      std::set<int> d;
      if (oracle::up(n, cnf, alpha, d) && d == as) up_closed.insert(alpha);
      if (oracle::sat_under(n, cnf, alpha) && oracle::sem(n, cnf, alpha) == as) closed.insert(alpha);
    }
    CHECK(as_sets(closed_assignments(f)) == closed);
    CHECK(as_sets(up_closed_assignments(f)) == up_closed);

    const auto dr = dual_rail(f);
    const auto dr_models = oracle::models(2 * n, oracle::ints(dr.horn));
    CHECK(meta_table(up_closed_assignments(f), dr.map).onset() == dr_models);
  }
}
