#pragma once

// Stabilizer code construction and error classification.
//
// Generator ordering convention: X-type generators first (these detect phase
// flips and form the matching graph for the surface code), Z-type after.

#include <cstddef>
#include <string>
#include <vector>

#include "qec/pauli.hpp"

namespace qec {

struct StabilizerCode {
  std::size_t n = 0;  // physical qubits
  std::size_t k = 0;  // logical qubits
  std::vector<PauliString> generators;  // n - k, X-type first
  std::vector<PauliString> logical_x;   // k
  std::vector<PauliString> logical_z;   // k
  int distance = 0;                     // declared; verified by tests
  std::string name;
  std::size_t num_x_checks = 0;

  // Surface-code geometry (0 / empty for other codes). qubit_boundary[q] is
  // -1 for interior qubits of the phase-flip matching graph, 0/1 for qubits
  // on the left/right rough boundary.
  int surface_d = 0;
  std::vector<int> qubit_boundary;
};

// Accepted descriptors: "repetition:<n>", "steane", "surface:<d>" (odd d >= 3).
StabilizerCode build_code(const std::string& descriptor);

StabilizerCode build_repetition(int n);
StabilizerCode build_steane();
StabilizerCode build_surface(int d);

// Throws InvariantViolation if the generator/logical structure is inconsistent
// (generators commute and are independent, logicals commute with generators,
// logical_x[i] anticommutes with logical_z[j] iff i == j).
void validate_code(const StabilizerCode& code);

// Entry i is -1 iff the error anticommutes with generators[i].
Syndrome syndrome_of(const StabilizerCode& code, const PauliString& error);

// Coset label: syndrome plus anticommutation bits against logical_x then
// logical_z. Two errors map to the same class iff they differ by a stabilizer.
ErrorClass classify_error(const StabilizerCode& code, const PauliString& error);

ErrorClass identity_class(const StabilizerCode& code);

}  // namespace qec
