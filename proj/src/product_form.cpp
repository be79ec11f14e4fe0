#include "qec/product_form.hpp"

#include <bit>
#include <cmath>

#include "qec/errors.hpp"

namespace qec {

int pauli_to_mask(const PauliString& p) {
  if (p.num_qubits() > 3) throw InputError("pauli_to_mask: capped at 3 qubits");
  int mask = 0;
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    if (p.x_bit(q)) mask |= 1 << (2 * q);
    if (p.z_bit(q)) mask |= 1 << (2 * q + 1);
  }
  return mask;
}

PauliString mask_to_pauli(int mask, int m) {
  PauliString p(static_cast<std::size_t>(m));
  for (int q = 0; q < m; ++q) {
    p.set_x(q, (mask >> (2 * q)) & 1);
    p.set_z(q, (mask >> (2 * q + 1)) & 1);
  }
  return p;
}

DiscretePauliChannel make_channel(int m) {
  if (m < 1 || m > 3) throw InputError("DiscretePauliChannel: need 1 <= m <= 3");
  DiscretePauliChannel c;
  c.m = m;
  c.p.assign(std::size_t{1} << (2 * m), 0.0);
  c.p[0] = 1.0;
  return c;
}

void validate_channel(const DiscretePauliChannel& channel) {
  if (channel.m < 1 || channel.m > 3 ||
      channel.p.size() != (std::size_t{1} << (2 * channel.m)))
    throw InputError("DiscretePauliChannel: bad size");
  double sum = 0.0;
  for (double v : channel.p) {
    if (v < -1e-12) throw InputError("DiscretePauliChannel: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InputError("DiscretePauliChannel: probabilities must sum to 1");
}

ProductForm product_form_decompose(const DiscretePauliChannel& channel) {
  validate_channel(channel);
  const std::size_t size = channel.p.size();

  // Walsh coefficients alpha_u = sum_sigma (-1)^{u.b(sigma)} p_sigma.
  std::vector<double> alpha(size, 0.0);
  for (std::size_t u = 0; u < size; ++u) {
    double acc = 0.0;
    for (std::size_t b = 0; b < size; ++b)
      acc += (std::popcount(u & b) & 1) ? -channel.p[b] : channel.p[b];
    alpha[u] = acc;
  }
  for (double a : alpha)
    if (a <= 0.0)
      throw InputError("product_form_decompose: channel has a non-positive Walsh "
                       "coefficient (complex-rate branch unsupported)");

  ProductForm out;
  out.m = channel.m;
  out.rates.assign(size, 0.0);
  out.betas.assign(size, 0.0);
  const double norm = 1.0 / static_cast<double>(size);
  for (std::size_t b = 0; b < size; ++b) {
    double beta = 0.0;
    for (std::size_t u = 0; u < size; ++u) {
      const double term = norm * std::log(alpha[u]);
      beta += (std::popcount(u & b) & 1) ? -term : term;
    }
    out.betas[b] = beta;
    if (b != 0) {
      // eps = e^{-beta} sinh(beta)
      out.rates[b] = 0.5 * (1.0 - std::exp(-2.0 * beta));
      if (out.rates[b] < 0.0) out.negative_rates.push_back(static_cast<int>(b));
    }
  }
  return out;
}

DiscretePauliChannel product_form_expand(int m, const std::vector<double>& rates_by_mask) {
  if (m < 1 || m > 3) throw InputError("product_form_expand: need 1 <= m <= 3");
  const std::size_t size = std::size_t{1} << (2 * m);
  if (rates_by_mask.size() != size)
    throw InputError("product_form_expand: rate vector has wrong size");
  DiscretePauliChannel out;
  out.m = m;
  out.p.assign(size, 0.0);
  out.p[0] = 1.0;
  for (std::size_t b = 1; b < size; ++b) {
    const double eps = rates_by_mask[b];
    if (eps == 0.0) continue;
    std::vector<double> next(size, 0.0);
    for (std::size_t t = 0; t < size; ++t)
      next[t] = (1.0 - eps) * out.p[t] + eps * out.p[t ^ b];
    out.p = std::move(next);
  }
  return out;
}

DiscretePauliChannel product_form_expand(const ProductForm& rates) {
  return product_form_expand(rates.m, rates.rates);
}

}  // namespace qec
