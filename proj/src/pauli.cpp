#include "qec/pauli.hpp"

#include <algorithm>
#include <bit>

#include "qec/errors.hpp"

namespace qec {

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), x_((num_qubits + 63) / 64, 0), z_((num_qubits + 63) / 64, 0) {
  if (num_qubits == 0) throw InputError("PauliString: need at least one qubit");
}

PauliString PauliString::identity(std::size_t num_qubits) { return PauliString(num_qubits); }

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, char kind) {
  PauliString p(num_qubits);
  if (qubit >= num_qubits) throw InputError("PauliString: qubit index out of range");
  switch (kind) {
    case 'X':
      p.set_x(qubit, true);
      break;
    case 'Y':
      p.set_x(qubit, true);
      p.set_z(qubit, true);
      break;
    case 'Z':
      p.set_z(qubit, true);
      break;
    default:
      throw InputError("PauliString: kind must be X, Y or Z");
  }
  return p;
}

PauliString PauliString::parse(const std::string& text) {
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I':
        break;
      case 'X':
        p.set_x(q, true);
        break;
      case 'Y':
        p.set_x(q, true);
        p.set_z(q, true);
        break;
      case 'Z':
        p.set_z(q, true);
        break;
      default:
        throw InputError("PauliString: bad character in \"" + text + "\"");
    }
  }
  return p;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (x_[i] | z_[i]) return false;
  return true;
}

int PauliString::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) w += std::popcount(x_[i] | z_[i]);
  return w;
}

void PauliString::clear() {
  std::fill(x_.begin(), x_.end(), 0);
  std::fill(z_.begin(), z_.end(), 0);
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (n_ != other.n_) throw InputError("PauliString: length mismatch in product");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= other.x_[i];
    z_[i] ^= other.z_[i];
  }
  return *this;
}

std::string PauliString::str() const {
  std::string out(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) {
    bool x = x_bit(q), z = z_bit(q);
    if (x && z)
      out[q] = 'Y';
    else if (x)
      out[q] = 'X';
    else if (z)
      out[q] = 'Z';
  }
  return out;
}

int symplectic_product(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw InputError("symplectic_product: length mismatch");
  std::uint64_t acc = 0;
  const auto& ax = a.x_words();
  const auto& az = a.z_words();
  const auto& bx = b.x_words();
  const auto& bz = b.z_words();
  for (std::size_t i = 0; i < ax.size(); ++i)
    acc ^= std::uint64_t(std::popcount(ax[i] & bz[i]) ^ std::popcount(az[i] & bx[i]));
  return static_cast<int>(acc & 1u);
}

PauliString multiply(const PauliString& a, const PauliString& b) { return a * b; }

void Syndrome::set_value(std::size_t i, int v) {
  if (v != 1 && v != -1) throw InputError("Syndrome: values must be +1 or -1");
  if (v == -1)
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  else
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

bool Syndrome::is_trivial() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

Syndrome& Syndrome::operator*=(const Syndrome& other) {
  if (m_ != other.m_) throw InputError("Syndrome: size mismatch in composition");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::vector<int> Syndrome::defects() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < m_; ++i)
    if (bit(i)) out.push_back(static_cast<int>(i));
  return out;
}

ErrorClass compose_classes(const ErrorClass& a, const ErrorClass& b) {
  if (a.logical_label.size() != b.logical_label.size())
    throw InputError("compose_classes: label dimension mismatch");
  ErrorClass out;
  out.syndrome = a.syndrome * b.syndrome;
  out.logical_label.resize(a.logical_label.size());
  for (std::size_t i = 0; i < out.logical_label.size(); ++i)
    out.logical_label[i] = a.logical_label[i] ^ b.logical_label[i];
  return out;
}

std::string class_key(const ErrorClass& c) {
  std::string key;
  key.reserve(c.syndrome.size() + c.logical_label.size() + 1);
  for (std::size_t i = 0; i < c.syndrome.size(); ++i)
    key.push_back(c.syndrome.value(i) < 0 ? '1' : '0');
  key.push_back('|');
  for (auto b : c.logical_label) key.push_back(b ? '1' : '0');
  return key;
}

}  // namespace qec
