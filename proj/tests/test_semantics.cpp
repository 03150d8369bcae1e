#include <doctest.h>

#include "oracles.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/families.hpp"
#include "pcforge/semantics.hpp"

using namespace pcforge;

namespace {

Formula make(int n, const oracle::Cnf& cnf) { return oracle::formula(n, cnf); }

std::set<int> as_set(const std::vector<Lit>& lits) {
  std::set<int> s;
  for (Lit l : lits) s.insert(l.to_dimacs());
  return s;
}

std::set<oracle::Cl> clause_set(const Formula& f) { return oracle::sorted_set(oracle::ints(f)); }

}  // namespace

TEST_CASE("model enumeration examples") {
  CHECK(enumerate_models(make(2, {{1}, {2}})).onset() == std::vector<std::uint64_t>{3});
  CHECK(enumerate_models(Formula(2)).onset() == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(enumerate_models(make(2, {{1, 2}, {-1, -2}})).onset() == std::vector<std::uint64_t>{1, 2});
  SemanticsOptions o;
  o.variable_limit = 3;
  CHECK_THROWS_AS(enumerate_models(Formula(4), o), LimitExceeded);
}

TEST_CASE("entailment examples") {
  CHECK(entails(make(3, {{-1, 2}, {-2, 3}}), Clause::from_dimacs({-1, 3})));
  CHECK_FALSE(entails(make(2, {{1, 2}}), Clause::from_dimacs({1})));
  CHECK(entails(gen_psi_qhorn(2).formula, Clause::from_dimacs({-3, -4})));
}

TEST_CASE("semantic closure examples") {
  CHECK(as_set(cl_sem(make(2, {{1, 2}}), PartialAssignment::from_dimacs({-1}))) == std::set<int>{-1, 2});
  CHECK(cl_sem(Formula(1), {}).empty());
  const auto all = cl_sem(gen_psi_qhorn(3).formula, PartialAssignment::from_dimacs({4, 5, 6}));
  CHECK(all.size() == 2 * 9);
}

TEST_CASE("prime implicate examples") {
  const Formula base = make(4, {{-1, 3}, {-2, 4}, {-3, -4}});
  const auto p = prime_implicates(base);
  CHECK(p.size() == 6);
  CHECK(clause_set(p) == std::set<oracle::Cl>{{-1, 3}, {-2, 4}, {-4, -3}, {-4, -1}, {-3, -2}, {-2, -1}});
  CHECK(prime_implicates(gen_psi_horn(3)).size() == 24);
  CHECK(clause_set(prime_implicates(make(3, {{1, 2}, {-2, 3}}))) ==
        std::set<oracle::Cl>{{1, 2}, {-2, 3}, {1, 3}});
  const auto unsat = prime_implicates(make(1, {{1}, {-1}}));
  REQUIRE(unsat.size() == 1);
  CHECK(unsat[0].empty());
}

TEST_CASE("prime implicates match the brute-force oracle") {
  oracle::Lcg g{23};
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(g.next(6));
    const auto cnf = oracle::random_cnf(g, n, static_cast<int>(g.next(8)), 3);
    const auto expected = oracle::primes(n, cnf);
    const auto got = prime_implicates(make(n, cnf));
    REQUIRE(clause_set(got) == expected);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1].size() <= got[i].size());
  }
}

TEST_CASE("closures and satisfiability match the oracle") {
  oracle::Lcg g{29};
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + static_cast<int>(g.next(5));
    const auto cnf = oracle::random_cnf(g, n, static_cast<int>(g.next(8)), 3);
    const Formula f = make(n, cnf);
    const auto models = enumerate_models(f);
    CHECK(models.onset() == oracle::models(n, cnf));
    for (const auto& alpha : oracle::partials(n)) {
      const auto a = oracle::assignment(alpha);
      CHECK(is_satisfiable(f, a) == oracle::sat_under(n, cnf, alpha));
      CHECK(as_set(cl_sem(f, a)) == oracle::sem(n, cnf, alpha));
    }
  }
}

TEST_CASE("equivalence") {
  CHECK_FALSE(equivalent(make(1, {{1}}), make(1, {{-1}})));
  CHECK(equivalent(make(3, {{-1, 2}, {-2, 3}}), make(3, {{-1, 2}, {-2, 3}, {-1, 3}})));
  CHECK_THROWS_AS(equivalent(make(1, {{1}}), make(2, {{1}})), PreconditionError);
  for (unsigned m = 2; m <= 4; ++m) {
    const Formula g = gen_gamma(m, GammaVariant::Base);
    CHECK(equivalent(g, gen_gamma(m, GammaVariant::Prime)));
    CHECK(equivalent(g, gen_gamma(m, GammaVariant::DoublePrime)));
  }
  oracle::Lcg r{31};
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(r.next(4));
    const auto a = oracle::random_cnf(r, n, static_cast<int>(r.next(5)), 2);
    const auto b = oracle::random_cnf(r, n, static_cast<int>(r.next(5)), 2);
    CHECK(equivalent(make(n, a), make(n, b)) == (oracle::models(n, a) == oracle::models(n, b)));
  }
}

TEST_CASE("encoding relation") {
  SUBCASE("q-Horn family companion encoding") {
    const Encoding enc = gen_psi_qhorn_pc(3);
    CHECK(is_encoding_of(enc, enumerate_models(gen_psi_qhorn(3).formula)));
  }
  SUBCASE("parity chain") {
    const Encoding enc = gen_parity(4, ParityMode::Encoding);
    std::vector<std::uint64_t> odd;
    for (std::uint64_t x = 0; x < 16; ++x)
      if (__builtin_popcountll(x) % 2 == 1) odd.push_back(x);
    CHECK(is_encoding_of(enc, FunctionTable({1, 2, 3, 4}, odd)));
  }
  SUBCASE("no aux encodes its own table") {
    const Formula f = make(3, {{1, -2}, {2, 3}});
    CHECK(is_encoding_of(Encoding(f), enumerate_models(f)));
    CHECK_FALSE(is_encoding_of(Encoding(f), enumerate_models(make(3, {{1, -2}}))));
  }
  SUBCASE("projection oracle") {
    oracle::Lcg g{37};
    for (int t = 0; t < 100; ++t) {
      const int n = 2 + static_cast<int>(g.next(4));
      const int k = 1 + static_cast<int>(g.next(static_cast<std::uint32_t>(n - 1)));
      const auto cnf = oracle::random_cnf(g, n, static_cast<int>(g.next(6)), 3);
      std::vector<Var> aux, inputs;
      for (int v = 1; v <= n; ++v) (v > k ? aux : inputs).push_back(static_cast<Var>(v));
      const auto proj = oracle::projected(n, cnf, k);
      const FunctionTable table(inputs, std::vector<std::uint64_t>(proj.begin(), proj.end()));
      CHECK(is_encoding_of(Encoding(make(n, cnf), aux), table));
      CHECK(project_models(make(n, cnf), inputs).onset() == table.onset());
    }
  }
}

TEST_CASE("all partial assignments") {
  CHECK(all_partial_assignments(3).size() == 27);
  CHECK_THROWS_AS(all_partial_assignments(13), LimitExceeded);
}
