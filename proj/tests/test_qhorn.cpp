#include <doctest.h>

#include "oracles.hpp"
#include "pcforge/deciders.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/families.hpp"
#include "pcforge/qhorn.hpp"
#include "pcforge/semantics.hpp"

using namespace pcforge;

namespace {

Formula make(int n, const oracle::Cnf& cnf) { return oracle::formula(n, cnf); }

std::set<oracle::Cl> clause_set(const Formula& f) { return oracle::sorted_set(oracle::ints(f)); }

// Weight of a literal in halves, given positive-literal halves per variable.
int weight(const std::vector<int>& w, int lit) { return lit > 0 ? w[lit] : 2 - w[-lit]; }

bool brute_qhorn(int n, const oracle::Cnf& f) {
  std::vector<int> w(n + 1, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (int v = 1; v <= n; ++v, r /= 3) w[v] = static_cast<int>(r % 3);
    bool ok = true;
    for (const auto& c : f) {
      int s = 0;
      for (int l : c) s += weight(w, l);
      ok = ok && s <= 2;
    }
    if (ok) return true;
  }
  return false;
}

Valuation paper_shape(unsigned n, int ab_halves) {
  Valuation v(3 * n, 1);
  for (Var x = n + 1; x <= 3 * n; ++x) v.set(x, ab_halves);
  return v;
}

}  // namespace

TEST_CASE("recognition examples") {
  const auto two = recognize_qhorn(make(3, {{1, 2}, {-2, 3}, {-1, -3}}));
  REQUIRE(two);
  for (Var v = 1; v <= 3; ++v) CHECK(two->halves(v) == 1);
  CHECK_FALSE(recognize_qhorn(make(3, {{1, 2, 3}, {-1, -2, -3}})).has_value());
  CHECK_THROWS_AS(recognize_qhorn(make(2, {{1, -1, 2}})), TautologyError);
}

TEST_CASE("q-Horn family valuation") {
  for (unsigned n = 2; n <= 6; ++n) {
    const Formula psi = gen_psi_qhorn(n).formula;
    const auto found = recognize_qhorn(psi);
    REQUIRE(found);
    CHECK(found->witnesses(psi));
    CHECK(paper_shape(n, 2).witnesses(psi));
    CHECK_FALSE(paper_shape(n, 0).witnesses(psi));
  }
}

TEST_CASE("recognition matches exhaustive valuation search") {
  oracle::Lcg g{83};
  int positive = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + static_cast<int>(g.next(5));
    const auto cnf = oracle::random_cnf(g, n, 1 + static_cast<int>(g.next(6)), 4);
    const Formula f = make(n, cnf);
    if (f.has_tautology()) continue;
    const auto v = recognize_qhorn(f);
    REQUIRE(v.has_value() == brute_qhorn(n, cnf));
    if (v) {
      ++positive;
      CHECK(v->witnesses(f));
    }
  }
  CHECK(positive > 0);
}

TEST_CASE("normalization") {
  const Formula psi = gen_psi_qhorn(2).formula;
  const auto split = normalize(psi, paper_shape(2, 2));
  CHECK(split.flipped.empty());
  CHECK(split.x2 == std::vector<Var>{1, 2});
  CHECK(split.x1 == std::vector<Var>{3, 4, 5, 6});
  CHECK_THROWS_AS(normalize(psi, paper_shape(2, 0)), PreconditionError);

  const Formula horn = make(3, {{-1, -2, 3}, {-3, 1}});
  const auto h = normalize(horn, Valuation(3, 2));
  CHECK(h.phi2.empty());
  CHECK(h.x2.empty());

  const Formula two = make(3, {{1, 2}, {-2, 3}});
  const auto s = normalize(two, Valuation(3, 1));
  CHECK(s.phi1.empty());
  CHECK(s.phi2.size() == 2);

  const Formula flip = make(2, {{1, 2}});
  Valuation zero(2, 0);
  const auto f = normalize(flip, zero);
  CHECK(f.flipped == std::vector<Var>{1, 2});
  CHECK(clause_set(f.renamed) == std::set<oracle::Cl>{{-2, -1}});
  CHECK(f.rename(f.rename(Lit::positive(1))) == Lit::positive(1));
}

TEST_CASE("Algorithm 1") {
  Formula psi = gen_psi_qhorn(2).formula;
  psi.add(Clause::from_dimacs({3}));
  psi.add(Clause::from_dimacs({4}));
  CHECK(qhorn_sat(normalize(psi, paper_shape(2, 2))) == SatStatus::Unsat);

  CHECK(qhorn_sat(normalize(make(2, {{1, 2}}), Valuation(2, 1))) == SatStatus::Sat);
  CHECK(qhorn_sat(normalize(make(1, {{1}, {-1}}), Valuation(1, 2))) == SatStatus::Unsat);

  oracle::Lcg g{89};
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + static_cast<int>(g.next(6));
    const auto cnf = oracle::random_cnf(g, n, 1 + static_cast<int>(g.next(10)), 3);
    const Formula f = make(n, cnf);
    if (f.has_tautology()) continue;
    const auto v = recognize_qhorn(f);
    if (!v) continue;
    const bool sat = !oracle::models(n, cnf).empty();
    CHECK((qhorn_sat(normalize(f, *v)) == SatStatus::Sat) == sat);
  }
}

TEST_CASE("binary closure") {
  auto closure = [](const Formula& f) { return clause_set(phi_q_plus(normalize(f, Valuation(f.num_vars(), 1)))); };
  CHECK(closure(make(3, {{1, 2}, {-2, 3}})) == std::set<oracle::Cl>{{1, 2}, {-2, 3}, {1, 3}});
  CHECK(closure(make(2, {{1, 2}, {-1, -2}})) == std::set<oracle::Cl>{{1, 2}, {-2, -1}});
  CHECK(closure(make(2, {{1, 2}})) == std::set<oracle::Cl>{{1, 2}});
}

TEST_CASE("compiler") {
  SUBCASE("Horn input is returned unchanged") {
    const Formula horn = make(4, {{-1, -2, 3}, {-3, 4}, {1}});
    const auto c = compile_urc_encoding(horn);
    CHECK(c.encoding.aux().empty());
    CHECK(c.encoding.formula().same_clauses(horn));
    CHECK(c.group_sizes[0] == horn.size());
  }
  SUBCASE("q-Horn family") {
    const Formula psi = gen_psi_qhorn(2).formula;
    DeciderOptions o;
    o.limit = 64;
    CHECK_FALSE(is_urc(psi, o).verdict);
    const auto c = compile_urc_encoding(psi);
    CHECK(is_urc(c.encoding.formula(), o).verdict);
    CHECK(is_encoding_of(c.encoding, enumerate_models(psi)));
    CHECK_FALSE(recognize_qhorn(c.encoding.formula()).has_value());
  }
  SUBCASE("not q-Horn") {
    CHECK_THROWS_AS(compile_urc_encoding(make(3, {{1, 2, 3}, {-1, -2, -3}})), NotQHornError);
  }
  SUBCASE("random inputs against the brute-force oracles") {
    oracle::Lcg g{97};
    int checked = 0;
    for (int t = 0; t < 400 && checked < 40; ++t) {
      const int n = 2 + static_cast<int>(g.next(4));
      const auto cnf = oracle::random_cnf(g, n, 1 + static_cast<int>(g.next(6)), 3);
      const Formula f = make(n, cnf);
      if (f.has_tautology() || !recognize_qhorn(f)) continue;
      const auto c = compile_urc_encoding(f);
      const int total = static_cast<int>(c.encoding.formula().num_vars());
      const std::size_t x2 = c.split.x2.size();
      CHECK(c.encoding.aux().size() <= 2 * x2 * x2);
      if (total > 8) continue;
      ++checked;
      const auto enc = oracle::ints(c.encoding.formula());
      const auto mine = oracle::models(n, cnf);
      CHECK(oracle::projected(total, enc, n) == std::set<std::uint64_t>(mine.begin(), mine.end()));
      CHECK(oracle::is_urc(total, enc));
    }
    CHECK(checked > 10);
  }
}
