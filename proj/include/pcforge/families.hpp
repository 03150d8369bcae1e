#pragma once

// Deterministic generators for the explicit formula families.
//
// Variable numbering:
//   psi_horn(m):      x_i = i, y_i = m + i, z_i = 2m - 1 + i
//   psi_horn_base(m): y_i = i, z_i = m - 1 + i
//   cycle_extension:  fresh x_i = n + i after the n base variables
//   psi_qhorn(n):     x_i = i, a_i = n + i, b_i = 2n + i, (pc) c_i = 3n + i
//   gamma(m):         a_i = 4i - 3, b_i = 4i - 2, c_i = 4i - 1, d_i = 4i
//   parity(n):        x_i = i, chain y_i = n + i - 1 for i >= 2 (y_1 is x_1)

#include <cstdint>
#include <string>
#include <vector>

#include "pcforge/cnf.hpp"

namespace pcforge {

enum class GammaVariant { Base, Prime, DoublePrime };
enum class ParityMode { Cnf, Encoding };

/// (¬x_i∨¬y_i∨z_i), (¬x_m∨¬z_1∨…∨¬z_{m−1}), (¬x_i∨x_{i+1}), (¬x_m∨x_1). m ≥ 3.
Formula gen_psi_horn(unsigned m);
/// (¬y_i∨z_i), (¬z_1∨…∨¬z_{m−1}). m ≥ 3.
Formula gen_psi_horn_base(unsigned m);
/// Cycle clauses plus (¬x_1 ∨ C) for every prime implicate C of the base.
Formula gen_psi_horn_pc(unsigned m);
/// (¬x_i∨x_{i+1}), (¬x_m∨x_1), (¬x_i∨C_i) over the m clauses of φ.
/// Throws PreconditionError for m < 2, UnsatisfiableError.
Formula gen_cycle_extension(const Formula& phi);

struct QHornFamily {
  Formula formula;
  /// One clause per choice of a_i or b_i for every i, by increasing bitmask
  /// (bit i−1 set selects b_i).
  std::vector<Clause> u_bar;
};

QHornFamily gen_psi_qhorn(unsigned n);
Encoding gen_psi_qhorn_pc(unsigned n);

/// Non-empty even subsets of {1..m} as bitmasks (bit i−1 for i), increasing.
std::vector<std::uint32_t> even_subsets(unsigned m);
/// ⋁_{i∉I} a_i ∨ ⋁_{i∈I} d_i.
Clause gamma_extra_clause(unsigned m, std::uint32_t subset);
Formula gen_gamma(unsigned m, GammaVariant variant);

/// Cnf: the 2^{n−1} clauses excluding each even-parity vector (the function
/// x_1 ⊕ … ⊕ x_n = 1). Encoding: the y_i = y_{i−1} ⊕ x_i chain plus (y_n).
Encoding gen_parity(unsigned n, ParityMode mode);

/// Family names accepted by the CLI.
const std::vector<std::string>& family_names();

}  // namespace pcforge
