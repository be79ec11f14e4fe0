#pragma once

// Conversion between the summation form of a stochastic Pauli channel (one
// probability per Pauli) and its product form (one rate per independent
// single-error channel). Capped at 3 qubits: the transform is exponential in
// the qubit count and only small blocks are ever converted.

#include <cstddef>
#include <vector>

#include "qec/pauli.hpp"

namespace qec {

// Distribution over the 4^m Paulis of m <= 3 qubits, indexed by the
// symplectic mask (bit 2q = X on qubit q, bit 2q+1 = Z on qubit q).
struct DiscretePauliChannel {
  int m = 1;
  std::vector<double> p;  // size 4^m, sums to 1

  std::size_t size() const { return p.size(); }
};

// Product of independent channels (1 - eps)[I] + eps [sigma], one per
// non-identity Pauli. Negative rates are legal (flagged, not sampled).
struct ProductForm {
  int m = 1;
  std::vector<double> rates;       // size 4^m; rates[0] unused (identity)
  std::vector<double> betas;       // size 4^m; sum over all entries is 0
  std::vector<int> negative_rates; // masks whose decomposed rate is negative
};

int pauli_to_mask(const PauliString& p);
PauliString mask_to_pauli(int mask, int m);

DiscretePauliChannel make_channel(int m);
void validate_channel(const DiscretePauliChannel& channel);

// Summation form -> product form. Exact; throws InputError if any Walsh
// coefficient alpha_u is <= 0 (complex-rate branch, unsupported).
ProductForm product_form_decompose(const DiscretePauliChannel& channel);

// Product form -> summation form by exhaustive convolution; exact and valid
// for signed rates, which makes it the round-trip oracle for decompose.
DiscretePauliChannel product_form_expand(const ProductForm& rates);
DiscretePauliChannel product_form_expand(int m, const std::vector<double>& rates_by_mask);

}  // namespace qec
