#include "qec/code.hpp"

#include <algorithm>

#include "qec/errors.hpp"

namespace qec {

namespace {

// GF(2) rank of the symplectic representation (x block | z block).
std::size_t symplectic_rank(const std::vector<PauliString>& ops, std::size_t n) {
  const std::size_t cols = 2 * n;
  std::vector<std::vector<std::uint8_t>> m(ops.size(), std::vector<std::uint8_t>(cols, 0));
  for (std::size_t r = 0; r < ops.size(); ++r)
    for (std::size_t q = 0; q < n; ++q) {
      m[r][q] = ops[r].x_bit(q);
      m[r][n + q] = ops[r].z_bit(q);
    }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < ops.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < ops.size() && !m[pivot][c]) ++pivot;
    if (pivot == ops.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < ops.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] ^= m[rank][cc];
    ++rank;
  }
  return rank;
}

}  // namespace

void validate_code(const StabilizerCode& code) {
  if (code.n == 0 || code.k == 0 || code.generators.size() != code.n - code.k)
    throw InvariantViolation(code.name + ": generator count must be n - k");
  for (std::size_t i = 0; i < code.generators.size(); ++i)
    for (std::size_t j = i + 1; j < code.generators.size(); ++j)
      if (symplectic_product(code.generators[i], code.generators[j]) != 0)
        throw InvariantViolation(code.name + ": generators do not commute");
  if (symplectic_rank(code.generators, code.n) != code.n - code.k)
    throw InvariantViolation(code.name + ": generators are not independent");
  if (code.logical_x.size() != code.k || code.logical_z.size() != code.k)
    throw InvariantViolation(code.name + ": need k logical X and Z operators");
  for (const auto& gen : code.generators) {
    for (const auto& lx : code.logical_x)
      if (symplectic_product(gen, lx) != 0)
        throw InvariantViolation(code.name + ": logical X anticommutes with a generator");
    for (const auto& lz : code.logical_z)
      if (symplectic_product(gen, lz) != 0)
        throw InvariantViolation(code.name + ": logical Z anticommutes with a generator");
  }
  for (std::size_t i = 0; i < code.k; ++i)
    for (std::size_t j = 0; j < code.k; ++j) {
      int want = (i == j) ? 1 : 0;
      if (symplectic_product(code.logical_x[i], code.logical_z[j]) != want)
        throw InvariantViolation(code.name + ": logical pair anticommutation pattern broken");
    }
  if (code.num_x_checks > code.generators.size())
    throw InvariantViolation(code.name + ": X-check count exceeds generator count");
}

Syndrome syndrome_of(const StabilizerCode& code, const PauliString& error) {
  if (error.num_qubits() != code.n) throw InputError("syndrome_of: error length != n");
  Syndrome s(code.generators.size());
  for (std::size_t i = 0; i < code.generators.size(); ++i)
    if (symplectic_product(code.generators[i], error)) s.flip(i);
  return s;
}

ErrorClass classify_error(const StabilizerCode& code, const PauliString& error) {
  if (error.num_qubits() != code.n) throw InputError("classify_error: error length != n");
  ErrorClass c;
  c.syndrome = syndrome_of(code, error);
  c.logical_label.reserve(2 * code.k);
  for (const auto& lx : code.logical_x)
    c.logical_label.push_back(static_cast<std::uint8_t>(symplectic_product(error, lx)));
  for (const auto& lz : code.logical_z)
    c.logical_label.push_back(static_cast<std::uint8_t>(symplectic_product(error, lz)));
  return c;
}

ErrorClass identity_class(const StabilizerCode& code) {
  ErrorClass c;
  c.syndrome = Syndrome::all_plus(code.generators.size());
  c.logical_label.assign(2 * code.k, 0);
  return c;
}

StabilizerCode build_repetition(int n) {
  if (n < 2) throw InputError("repetition: need n >= 2");
  StabilizerCode code;
  code.n = static_cast<std::size_t>(n);
  code.k = 1;
  code.name = "repetition:" + std::to_string(n);
  // Z-type checks Z_i Z_{i+1}: detect X errors; no X-type checks.
  code.num_x_checks = 0;
  for (int i = 0; i + 1 < n; ++i) {
    PauliString g(code.n);
    g.set_z(i, true);
    g.set_z(i + 1, true);
    code.generators.push_back(g);
  }
  PauliString lx(code.n);
  for (int i = 0; i < n; ++i) lx.set_x(i, true);
  PauliString lz = PauliString::single(code.n, 0, 'Z');
  code.logical_x.push_back(lx);
  code.logical_z.push_back(lz);
  code.distance = 1;  // a single Z is an undetected logical
  validate_code(code);
  return code;
}

StabilizerCode build_steane() {
  StabilizerCode code;
  code.n = 7;
  code.k = 1;
  code.name = "steane";
  code.distance = 3;
  code.num_x_checks = 3;
  // Hamming-code parity sets (0-indexed qubits).
  const std::vector<std::vector<int>> rows = {{3, 4, 5, 6}, {1, 2, 5, 6}, {0, 2, 4, 6}};
  for (const auto& row : rows) {
    PauliString g(code.n);
    for (int q : row) g.set_x(q, true);
    code.generators.push_back(g);
  }
  for (const auto& row : rows) {
    PauliString g(code.n);
    for (int q : row) g.set_z(q, true);
    code.generators.push_back(g);
  }
  PauliString lx(code.n), lz(code.n);
  for (int q = 0; q < 7; ++q) {
    lx.set_x(q, true);
    lz.set_z(q, true);
  }
  code.logical_x.push_back(lx);
  code.logical_z.push_back(lz);
  validate_code(code);
  return code;
}

// Planar surface code on a (2d-1) x (2d-1) grid:
//   (even i, even j)  data qubit        (d^2 of them)
//   (odd i, odd j)    data qubit        ((d-1)^2 of them)
//   (even i, odd j)   X check           (d (d-1))
//   (odd i, even j)   Z check           (d (d-1))
// Rough boundaries for phase flips are the leftmost/rightmost data columns.
StabilizerCode build_surface(int d) {
  if (d < 3 || d % 2 == 0) throw InputError("surface: distance must be odd and >= 3");
  const int span = 2 * d - 1;
  StabilizerCode code;
  code.name = "surface:" + std::to_string(d);
  code.surface_d = d;
  code.k = 1;
  code.distance = d;

  std::vector<std::vector<int>> qubit_at(span, std::vector<int>(span, -1));
  int nq = 0;
  for (int i = 0; i < span; ++i)
    for (int j = 0; j < span; ++j)
      if ((i % 2 == 0 && j % 2 == 0) || (i % 2 == 1 && j % 2 == 1)) qubit_at[i][j] = nq++;
  code.n = static_cast<std::size_t>(nq);  // d^2 + (d-1)^2

  auto make_check = [&](int i, int j, char kind) {
    PauliString g(code.n);
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    for (int t = 0; t < 4; ++t) {
      int ni = i + di[t], nj = j + dj[t];
      if (ni < 0 || ni >= span || nj < 0 || nj >= span) continue;
      int q = qubit_at[ni][nj];
      if (q < 0) continue;
      if (kind == 'X')
        g.set_x(q, true);
      else
        g.set_z(q, true);
    }
    return g;
  };

  for (int i = 0; i < span; i += 2)
    for (int j = 1; j < span; j += 2) code.generators.push_back(make_check(i, j, 'X'));
  code.num_x_checks = code.generators.size();
  for (int i = 1; i < span; i += 2)
    for (int j = 0; j < span; j += 2) code.generators.push_back(make_check(i, j, 'Z'));

  // Logical Z: a horizontal row of Zs crossing left to right (weight d).
  PauliString lz(code.n);
  for (int j = 0; j < span; j += 2) lz.set_z(qubit_at[0][j], true);
  // Logical X: a vertical column of Xs crossing top to bottom (weight d).
  PauliString lx(code.n);
  for (int i = 0; i < span; i += 2) lx.set_x(qubit_at[i][0], true);
  code.logical_z.push_back(lz);
  code.logical_x.push_back(lx);

  code.qubit_boundary.assign(code.n, -1);
  for (int i = 0; i < span; i += 2) {
    code.qubit_boundary[qubit_at[i][0]] = 0;
    code.qubit_boundary[qubit_at[i][span - 1]] = 1;
  }

  validate_code(code);
  return code;
}

StabilizerCode build_code(const std::string& descriptor) {
  if (descriptor == "steane") return build_steane();
  auto colon = descriptor.find(':');
  if (colon != std::string::npos) {
    const std::string head = descriptor.substr(0, colon);
    int value = 0;
    try {
      value = std::stoi(descriptor.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("build_code: bad parameter in \"" + descriptor + "\"");
    }
    if (head == "repetition") return build_repetition(value);
    if (head == "surface") return build_surface(value);
  }
  throw InputError("build_code: unknown descriptor \"" + descriptor + "\"");
}

}  // namespace qec
