#include "pcforge/families.hpp"

#include <bit>

#include "pcforge/errors.hpp"
#include "pcforge/semantics.hpp"

namespace pcforge {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

Lit pos(Var v) { return Lit::positive(v); }
Lit neg(Var v) { return Lit::negative(v); }

void add_cycle(Formula& f, Var first, unsigned m) {
  for (unsigned i = 0; i + 1 < m; ++i) f.add(Clause{neg(first + i), pos(first + i + 1)});
  f.add(Clause{neg(first + m - 1), pos(first)});
}

}  // namespace

Formula gen_psi_horn(unsigned m) {
  require(m >= 3, "psi_horn needs m >= 3");
  auto x = [](unsigned i) { return static_cast<Var>(i); };
  auto y = [m](unsigned i) { return static_cast<Var>(m + i); };
  auto z = [m](unsigned i) { return static_cast<Var>(2 * m - 1 + i); };
  Formula f(3 * m - 2);
  for (unsigned i = 1; i < m; ++i) f.add(Clause{neg(x(i)), neg(y(i)), pos(z(i))});
  std::vector<Lit> last{neg(x(m))};
  for (unsigned i = 1; i < m; ++i) last.push_back(neg(z(i)));
  f.add(Clause(std::move(last)));
  add_cycle(f, 1, m);
  return f;
}

Formula gen_psi_horn_base(unsigned m) {
  require(m >= 3, "psi_horn needs m >= 3");
  Formula f(2 * m - 2);
  for (unsigned i = 1; i < m; ++i) f.add(Clause{neg(i), pos(m - 1 + i)});
  std::vector<Lit> last;
  for (unsigned i = 1; i < m; ++i) last.push_back(neg(m - 1 + i));
  f.add(Clause(std::move(last)));
  return f;
}

Formula gen_psi_horn_pc(unsigned m) {
  const Formula primes = prime_implicates(gen_psi_horn_base(m));
  // Base variables y, z move to m+1.., the cycle takes 1..m.
  Formula f(3 * m - 2);
  add_cycle(f, 1, m);
  for (const auto& c : primes) {
    std::vector<Lit> lits{neg(1)};
    for (Lit l : c) lits.push_back(Lit::make(l.var() + m, l.is_negative()));
    f.add(Clause(std::move(lits)));
  }
  return f;
}

Formula gen_cycle_extension(const Formula& phi) {
  const auto m = static_cast<unsigned>(phi.size());
  require(m >= 2, "cycle extension needs at least two clauses");
  if (!is_satisfiable(phi)) throw UnsatisfiableError();
  const Var n = phi.num_vars();
  Formula f(n + m);
  add_cycle(f, n + 1, m);
  for (unsigned i = 0; i < m; ++i) {
    std::vector<Lit> lits{neg(n + 1 + i)};
    for (Lit l : phi[i]) lits.push_back(l);
    f.add(Clause(std::move(lits)));
  }
  return f;
}

QHornFamily gen_psi_qhorn(unsigned n) {
  require(n >= 2, "psi_qhorn needs n >= 2");
  require(n <= 20, "psi_qhorn companion set limited to n <= 20");
  auto x = [](unsigned i) { return static_cast<Var>(i); };
  auto a = [n](unsigned i) { return static_cast<Var>(n + i); };
  auto b = [n](unsigned i) { return static_cast<Var>(2 * n + i); };
  QHornFamily out{Formula(3 * n), {}};
  Formula& f = out.formula;
  for (unsigned i = 1; i < n; ++i) {
    for (Var s : {a(i), b(i)}) {
      f.add(Clause{neg(s), neg(x(i)), pos(x(i + 1))});
      f.add(Clause{neg(s), pos(x(i)), neg(x(i + 1))});
    }
  }
  for (Var s : {a(n), b(n)}) {
    f.add(Clause{neg(s), neg(x(1)), neg(x(n))});
    f.add(Clause{neg(s), pos(x(1)), pos(x(n))});
  }
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<Lit> lits;
    for (unsigned i = 1; i <= n; ++i) lits.push_back(neg((mask >> (i - 1)) & 1U ? b(i) : a(i)));
    out.u_bar.emplace_back(std::move(lits));
  }
  return out;
}

Encoding gen_psi_qhorn_pc(unsigned n) {
  require(n >= 2, "psi_qhorn_pc needs n >= 2");
  auto x = [](unsigned i) { return static_cast<Var>(i); };
  auto a = [n](unsigned i) { return static_cast<Var>(n + i); };
  auto b = [n](unsigned i) { return static_cast<Var>(2 * n + i); };
  auto c = [n](unsigned i) { return static_cast<Var>(3 * n + i); };
  Formula f(4 * n);
  for (unsigned i = 1; i <= n; ++i) {
    f.add(Clause{neg(a(i)), pos(c(i))});
    f.add(Clause{neg(b(i)), pos(c(i))});
  }
  std::vector<Lit> all_c;
  for (unsigned i = 1; i <= n; ++i) all_c.push_back(neg(c(i)));
  f.add(Clause(std::move(all_c)));
  for (unsigned i = 1; i < n; ++i) {
    f.add(Clause{neg(c(i)), neg(x(i)), pos(x(i + 1))});
    f.add(Clause{neg(c(i)), pos(x(i)), neg(x(i + 1))});
  }
  f.add(Clause{neg(c(n)), neg(x(1)), neg(x(n))});
  f.add(Clause{neg(c(n)), pos(x(1)), pos(x(n))});
  std::vector<Var> aux;
  for (unsigned i = 1; i <= n; ++i) aux.push_back(c(i));
  return Encoding(std::move(f), std::move(aux));
}

std::vector<std::uint32_t> even_subsets(unsigned m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    if (std::popcount(mask) % 2 == 0) out.push_back(mask);
  }
  return out;
}

Clause gamma_extra_clause(unsigned m, std::uint32_t subset) {
  std::vector<Lit> lits;
  for (unsigned i = 1; i <= m; ++i) {
    lits.push_back((subset >> (i - 1)) & 1U ? pos(4 * i) : pos(4 * i - 3));
  }
  return Clause(std::move(lits));
}

Formula gen_gamma(unsigned m, GammaVariant variant) {
  require(m >= 2, "gamma needs m >= 2");
  require(m <= 16, "gamma limited to m <= 16");
  auto a = [](unsigned i) { return static_cast<Var>(4 * i - 3); };
  auto b = [](unsigned i) { return static_cast<Var>(4 * i - 2); };
  auto c = [](unsigned i) { return static_cast<Var>(4 * i - 1); };
  auto d = [](unsigned i) { return static_cast<Var>(4 * i); };
  Formula f(4 * m);
  std::vector<Lit> any_a;
  for (unsigned i = 1; i <= m; ++i) any_a.push_back(pos(a(i)));
  f.add(Clause(std::move(any_a)));
  for (unsigned i = 1; i <= m; ++i) {
    f.add(Clause{neg(a(i)), pos(b(i))});
    f.add(Clause{neg(a(i)), pos(c(i))});
    f.add(Clause{neg(b(i)), neg(c(i)), pos(d(i))});
  }
  if (variant == GammaVariant::Prime) {
    for (unsigned i = 1; i <= m; ++i) f.add(Clause{neg(a(i)), pos(d(i))});
  } else if (variant == GammaVariant::DoublePrime) {
    for (std::uint32_t s : even_subsets(m)) f.add(gamma_extra_clause(m, s));
  }
  return f;
}

Encoding gen_parity(unsigned n, ParityMode mode) {
  require(n >= 2, "parity needs n >= 2");
  if (mode == ParityMode::Cnf) {
    require(n <= 24, "parity CNF limited to n <= 24");
    Formula f(n);
    for (std::uint32_t vec = 0; vec < (1U << n); ++vec) {
      if (std::popcount(vec) % 2 != 0) continue;
      std::vector<Lit> lits;
      for (unsigned i = 1; i <= n; ++i) lits.push_back(Lit::make(i, (vec >> (i - 1)) & 1U));
      f.add(Clause(std::move(lits)));
    }
    return Encoding(std::move(f));
  }
  auto y = [n](unsigned i) { return static_cast<Var>(i == 1 ? 1 : n + i - 1); };
  Formula f(2 * n - 1);
  for (unsigned i = 2; i <= n; ++i) {
    const Var yi = y(i);
    const Var yp = y(i - 1);
    const Var xi = i;
    f.add(Clause{neg(yi), pos(yp), pos(xi)});
    f.add(Clause{neg(yi), neg(yp), neg(xi)});
    f.add(Clause{pos(yi), neg(yp), pos(xi)});
    f.add(Clause{pos(yi), pos(yp), neg(xi)});
  }
  f.add(Clause{pos(y(n))});
  std::vector<Var> aux;
  for (unsigned i = 2; i <= n; ++i) aux.push_back(y(i));
  return Encoding(std::move(f), std::move(aux));
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "psi_horn",    "psi_horn_pc",  "cycle_ext",  "psi_qhorn",  "psi_qhorn_pc",
      "gamma",       "gamma_prime",  "gamma_dprime", "parity_enc", "parity_cnf"};
  return names;
}

}  // namespace pcforge
