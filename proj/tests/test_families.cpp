#include <doctest.h>

#include "oracles.hpp"
#include "pcforge/deciders.hpp"
#include "pcforge/dimacs.hpp"
#include "pcforge/errors.hpp"
#include "pcforge/families.hpp"
#include "pcforge/semantics.hpp"

using namespace pcforge;

namespace {

Formula make(int n, const oracle::Cnf& cnf) { return oracle::formula(n, cnf); }

DeciderOptions wide() {
  DeciderOptions o;
  o.limit = 64;
  return o;
}

}  // namespace

TEST_CASE("Horn cycle family") {
  const Formula psi3 = gen_psi_horn(3);
  CHECK(psi3.size() == 6);
  CHECK(psi3.num_vars() == 7);
  CHECK(oracle::primes(7, oracle::ints(psi3)).size() == 24);
  CHECK(prime_implicates(gen_psi_horn(4)).size() == 56);
  CHECK_THROWS_AS(gen_psi_horn(2), PreconditionError);
}

TEST_CASE("smallest PC representation") {
  const Formula pc3 = gen_psi_horn_pc(3);
  CHECK(pc3.size() == 9);
  CHECK(oracle::is_pc(7, oracle::ints(pc3)));
  CHECK(oracle::models(7, oracle::ints(pc3)) == oracle::models(7, oracle::ints(gen_psi_horn(3))));
  CHECK(gen_psi_horn_pc(4).size() == 15);
  CHECK(is_pc(gen_psi_horn_pc(4), wide()).verdict);
}

TEST_CASE("cycle extension") {
  const Formula ext = gen_cycle_extension(gen_psi_horn_base(3));
  std::vector<Var> map{0, 4, 5, 6, 7, 1, 2, 3};
  CHECK(rename(ext, map, 7).same_clauses(gen_psi_horn(3)));

  CHECK_THROWS_AS(gen_cycle_extension(make(1, {{1}})), PreconditionError);
  CHECK_THROWS_AS(gen_cycle_extension(make(1, {{1}, {-1}})), UnsatisfiableError);
  const Formula units = gen_cycle_extension(make(2, {{1}, {2}}));
  CHECK(oracle::primes(4, oracle::ints(units)).size() == 2 * 2 + 2);
}

TEST_CASE("q-Horn family and its companion set") {
  const auto fam = gen_psi_qhorn(2);
  CHECK(fam.formula.size() == 8);
  std::set<oracle::Cl> u;
  for (const auto& c : fam.u_bar) {
    oracle::Cl cl;
    for (Lit l : c) cl.push_back(l.to_dimacs());
    std::sort(cl.begin(), cl.end());
    u.insert(cl);
  }
  CHECK(u == std::set<oracle::Cl>{{-4, -3}, {-6, -3}, {-5, -4}, {-6, -5}});
  const auto primes = oracle::primes(6, oracle::ints(fam.formula));
  for (const auto& c : u) CHECK(primes.count(c) == 1);
  std::size_t ab_only = 0;
  for (const auto& c : primes) {
    bool only = true;
    for (int l : c) only = only && std::abs(l) > 2;
    ab_only += only ? 1 : 0;
  }
  CHECK(ab_only == u.size());
}

TEST_CASE("PC encoding of the q-Horn family") {
  const Encoding enc = gen_psi_qhorn_pc(2);
  CHECK(enc.formula().size() == 9);
  CHECK(enc.aux().size() == 2);
  const auto psi = oracle::ints(gen_psi_qhorn(2).formula);
  const auto proj = oracle::projected(8, oracle::ints(enc.formula()), 6);
  const auto models = oracle::models(6, psi);
  CHECK(proj == std::set<std::uint64_t>(models.begin(), models.end()));
  CHECK(oracle::is_pc(8, oracle::ints(enc.formula())));
}

TEST_CASE("gamma family") {
  CHECK(even_subsets(3) == std::vector<std::uint32_t>{3, 5, 6});
  CHECK(even_subsets(4).size() == 7);
  CHECK(gen_gamma(3, GammaVariant::Base).size() == 10);
  CHECK(gen_gamma(3, GammaVariant::DoublePrime).size() == 13);
  const Formula g1 = gen_gamma(3, GammaVariant::Prime);
  CHECK(g1.size() == 13);
  CHECK(is_pc(g1, wide()).verdict);
  const Formula g2 = gen_gamma(4, GammaVariant::DoublePrime);
  CHECK(g2.size() == 20);
  CHECK(is_urc(g2, wide()).verdict);
  Formula rest(g2.num_vars());
  const Clause drop = gamma_extra_clause(4, 0b0011);
  for (const auto& c : g2)
    if (c != drop) rest.add(c);
  CHECK(rest.size() == 19);
  CHECK_FALSE(is_urc(rest, wide()).verdict);
  CHECK(gamma_extra_clause(2, 0b11) == Clause::from_dimacs({4, 8}));
  CHECK(gamma_extra_clause(3, 0b011) == Clause::from_dimacs({4, 8, 9}));
}

TEST_CASE("parity") {
  const Encoding cnf = gen_parity(3, ParityMode::Cnf);
  CHECK(cnf.formula().size() == 4);
  CHECK(oracle::primes(3, oracle::ints(cnf.formula())) == oracle::sorted_set(oracle::ints(cnf.formula())));
  const Encoding enc4 = gen_parity(4, ParityMode::Encoding);
  CHECK(enc4.formula().size() == 13);
  CHECK(enc4.aux().size() == 3);
  std::set<std::uint64_t> odd;
  for (std::uint64_t x = 0; x < 16; ++x)
    if (__builtin_popcountll(x) % 2 == 1) odd.insert(x);
  CHECK(oracle::projected(7, oracle::ints(enc4.formula()), 4) == odd);
  const auto m4 = oracle::models(4, oracle::ints(gen_parity(4, ParityMode::Cnf).formula()));
  CHECK(std::set<std::uint64_t>(m4.begin(), m4.end()) == odd);
  CHECK(oracle::is_pc(5, oracle::ints(gen_parity(3, ParityMode::Encoding).formula())));
}

TEST_CASE("generators are deterministic") {
  CHECK(write_dimacs(gen_gamma(4, GammaVariant::DoublePrime)) ==
        write_dimacs(gen_gamma(4, GammaVariant::DoublePrime)));
  CHECK(write_dimacs(gen_psi_qhorn_pc(3)) == write_dimacs(gen_psi_qhorn_pc(3)));
  CHECK(family_names().size() == 10);
}
