#include <doctest.h>

#include "oracles.hpp"
#include "pcforge/families.hpp"
#include "pcforge/propagation.hpp"

using namespace pcforge;

namespace {

std::set<int> as_set(const PropagationResult& r) {
  std::set<int> s;
  for (Lit l : r.derived) s.insert(l.to_dimacs());
  return s;
}

}  // namespace

TEST_CASE("chain of unit steps") {
  Formula f(3);
  f.add(Clause::from_dimacs({-1, 2}));
  f.add(Clause::from_dimacs({-2, 3}));
  const auto r = up_closure(f, PartialAssignment::from_dimacs({1}));
  CHECK_FALSE(r.conflict());
  CHECK(as_set(r) == std::set<int>{1, 2, 3});
}

TEST_CASE("immediate conflict yields every literal") {
  Formula f(1);
  f.add(Clause::from_dimacs({1}));
  f.add(Clause::from_dimacs({-1}));
  const auto r = up_closure(f, {});
  CHECK(r.conflict());
  CHECK(as_set(r) == std::set<int>{-1, 1});
  CHECK(r.conflict_clause.has_value());
}

TEST_CASE("a-conjunction on the q-Horn family propagates nothing new") {
  const Formula psi = gen_psi_qhorn(3).formula;
  const auto alpha = PartialAssignment::from_dimacs({4, 5, 6});
  const auto r = up_closure(psi, alpha);
  CHECK_FALSE(r.conflict());
  CHECK(as_set(r) == std::set<int>{4, 5, 6});
}

TEST_CASE("unused variables keep their assignment") {
  Formula f(3);
  f.add(Clause::from_dimacs({1, 2}));
  const auto r = up_closure(f, PartialAssignment::from_dimacs({3}));
  CHECK(as_set(r) == std::set<int>{3});
}

TEST_CASE("propagator is reusable across runs") {
  Formula f(3);
  f.add(Clause::from_dimacs({-1, 2}));
  f.add(Clause::from_dimacs({-1, -2}));
  f.add(Clause::from_dimacs({3}));
  Propagator p(f);
  const Lit a[] = {Lit::positive(1)};
  CHECK_FALSE(p.run(a));
  CHECK(p.run({}));
  CHECK(p.holds(Lit::positive(3)));
  CHECK_FALSE(p.assigned(1));
}

TEST_CASE("up_closure matches naive propagation on random formulas") {
  oracle::Lcg g{11};
  for (int t = 0; t < 150; ++t) {
    const int n = 2 + static_cast<int>(g.next(5));
    const auto cnf = oracle::random_cnf(g, n, 1 + static_cast<int>(g.next(9)), 3);
    const Formula f = oracle::formula(n, cnf);
    for (const auto& alpha : oracle::partials(n)) {
      std::set<int> expected;
      const bool ok = oracle::up(n, cnf, alpha, expected);
      const auto r = up_closure(f, oracle::assignment(alpha));
      REQUIRE(r.conflict() == !ok);
      REQUIRE(as_set(r) == expected);
    }
  }
}
