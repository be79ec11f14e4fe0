#pragma once

// Phase-free Pauli operators in symplectic binary form, syndromes and error
// classes (coset labels). Phases are dropped throughout: conjugation by a
// Pauli is insensitive to them, so only the X/Z support matters.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qec {

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);

  static PauliString identity(std::size_t num_qubits);
  // kind is one of 'X', 'Y', 'Z'.
  static PauliString single(std::size_t num_qubits, std::size_t qubit, char kind);
  // Parses strings like "IXZY" (qubit 0 first).
  static PauliString parse(const std::string& text);

  std::size_t num_qubits() const { return n_; }
  bool x_bit(std::size_t q) const { return bit(x_, q); }
  bool z_bit(std::size_t q) const { return bit(z_, q); }
  void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

  bool is_identity() const;
  int weight() const;  // number of qubits acted on non-trivially
  void clear();        // reset to the identity

  // Phase-free product: entrywise XOR of the X and Z supports.
  PauliString& operator*=(const PauliString& other);
  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }

  bool operator==(const PauliString& other) const { return n_ == other.n_ && x_ == other.x_ && z_ == other.z_; }
  bool operator!=(const PauliString& other) const { return !(*this == other); }

  std::string str() const;

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

 private:
  static bool bit(const std::vector<std::uint64_t>& w, std::size_t q) {
    return (w[q >> 6] >> (q & 63)) & 1u;
  }
  static void set_bit(std::vector<std::uint64_t>& w, std::size_t q, bool v) {
    if (v)
      w[q >> 6] |= std::uint64_t{1} << (q & 63);
    else
      w[q >> 6] &= ~(std::uint64_t{1} << (q & 63));
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

// 0 if the operators commute, 1 if they anticommute:
// a.x . b.z + a.z . b.x (mod 2).
int symplectic_product(const PauliString& a, const PauliString& b);

// Convenience alias matching the operation vocabulary.
PauliString multiply(const PauliString& a, const PauliString& b);

// Stabilizer-generator eigenvalues, +1/-1 per generator. Bit-packed
// internally (bit set = -1); all external interfaces use +-1.
class Syndrome {
 public:
  Syndrome() = default;
  explicit Syndrome(std::size_t size) : m_(size), words_((size + 63) / 64, 0) {}

  static Syndrome all_plus(std::size_t size) { return Syndrome(size); }

  std::size_t size() const { return m_; }
  int value(std::size_t i) const { return bit(i) ? -1 : +1; }
  void set_value(std::size_t i, int v);
  bool is_trivial() const;

  // Entrywise product of eigenvalues.
  Syndrome& operator*=(const Syndrome& other);
  friend Syndrome operator*(Syndrome a, const Syndrome& b) {
    a *= b;
    return a;
  }

  std::vector<int> defects() const;  // indices reading -1
  const std::vector<std::uint64_t>& defect_words() const { return words_; }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void reset() { std::fill(words_.begin(), words_.end(), 0); }

  bool operator==(const Syndrome& other) const { return m_ == other.m_ && words_ == other.words_; }
  bool operator!=(const Syndrome& other) const { return !(*this == other); }

 private:
  bool bit(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  std::size_t m_ = 0;
  std::vector<std::uint64_t> words_;
};

// Coset label of a Pauli error: the syndrome it triggers plus its
// anticommutation pattern against the logical operators (X block first,
// then Z block). Two errors share an ErrorClass iff they differ by a
// stabilizer element.
struct ErrorClass {
  Syndrome syndrome;
  std::vector<std::uint8_t> logical_label;  // 2k bits

  bool has_logical_error() const {
    for (auto b : logical_label)
      if (b) return true;
    return false;
  }
  bool is_identity() const { return syndrome.is_trivial() && !has_logical_error(); }

  bool operator==(const ErrorClass& other) const {
    return syndrome == other.syndrome && logical_label == other.logical_label;
  }
  bool operator!=(const ErrorClass& other) const { return !(*this == other); }
};

ErrorClass compose_classes(const ErrorClass& a, const ErrorClass& b);

// Stable map key for an ErrorClass.
std::string class_key(const ErrorClass& c);

}  // namespace qec
