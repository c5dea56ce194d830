#pragma once

// Phase-free binary-symplectic representation of Pauli operators.
// An n-qubit Pauli maps to (x|z) in F2^{2n}: per qubit I->(0|0), X->(1|0),
// Z->(0|1), Y->(1|1). Global phases are never represented.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdec/gf2.hpp"

namespace qdec {

// Numeric value doubles as the (x, z) bit pair: x = code & 1, z = code >> 1.
enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Z: return 'Z';
    case Pauli::Y: return 'Y';
  }
  return '?';
}

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Z': return Pauli::Z;
    case 'Y': return Pauli::Y;
  }
  throw std::invalid_argument("Pauli: expected one of I, X, Y, Z");
}

// 1 iff the two single-qubit Paulis anticommute (both non-I and different).
inline int pauli_anticommute(Pauli a, Pauli b) {
  const int ax = int(a) & 1, az = int(a) >> 1;
  const int bx = int(b) & 1, bz = int(b) >> 1;
  return (ax & bz) ^ (bx & az);
}

class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : ops_(n, Pauli::I) {}
  explicit PauliString(std::vector<Pauli> ops) : ops_(std::move(ops)) {}

  static PauliString from_string(std::string_view s) {
    std::vector<Pauli> ops;
    ops.reserve(s.size());
    for (char c : s) ops.push_back(pauli_from_char(c));
    return PauliString(std::move(ops));
  }

  std::size_t num_qubits() const { return ops_.size(); }
  Pauli op(std::size_t i) const { return ops_.at(i); }
  void set_op(std::size_t i, Pauli p) { ops_.at(i) = p; }

  bool operator==(const PauliString&) const = default;

  std::string to_string() const {
    std::string s;
    s.reserve(ops_.size());
    for (Pauli p : ops_) s += pauli_char(p);
    return s;
  }

 private:
  std::vector<Pauli> ops_;
};

// Element of F2^{2n} in the (x|z) layout used by check matrices: bit i is
// the X component of qubit i, bit n+i its Z component.
class SymplecticVector {
 public:
  SymplecticVector() = default;
  explicit SymplecticVector(std::size_t n) : n_(n), bits_(2 * n) {}

  static SymplecticVector from_bits(BinaryVector xz) {
    if (xz.size() % 2 != 0) {
      throw std::invalid_argument("SymplecticVector: length must be even");
    }
    SymplecticVector v;
    v.n_ = xz.size() / 2;
    v.bits_ = std::move(xz);
    return v;
  }

  std::size_t num_qubits() const { return n_; }

  bool x_bit(std::size_t i) const { return bits_.get(i); }
  bool z_bit(std::size_t i) const { return bits_.get(n_ + i); }
  void set_x(std::size_t i, bool v) { bits_.set(i, v); }
  void set_z(std::size_t i, bool v) { bits_.set(n_ + i, v); }

  Pauli pauli_at(std::size_t i) const {
    return Pauli(int(x_bit(i)) | (int(z_bit(i)) << 1));
  }

  void set_pauli(std::size_t i, Pauli p) {
    set_x(i, int(p) & 1);
    set_z(i, int(p) >> 1);
  }

  BinaryVector x_part() const {
    BinaryVector v(n_);
    for (std::size_t i = 0; i < n_; ++i) v.set(i, x_bit(i));
    return v;
  }

  BinaryVector z_part() const {
    BinaryVector v(n_);
    for (std::size_t i = 0; i < n_; ++i) v.set(i, z_bit(i));
    return v;
  }

  const BinaryVector& bits() const { return bits_; }

  bool is_zero() const { return bits_.is_zero(); }

  SymplecticVector& operator^=(const SymplecticVector& other) {
    if (other.n_ != n_) {
      throw std::invalid_argument("SymplecticVector: size mismatch");
    }
    bits_ ^= other.bits_;
    return *this;
  }

  friend SymplecticVector operator^(SymplecticVector a,
                                    const SymplecticVector& b) {
    a ^= b;
    return a;
  }

  bool operator==(const SymplecticVector&) const = default;

 private:
  std::size_t n_ = 0;
  BinaryVector bits_;
};

inline SymplecticVector phi(const PauliString& p) {
  SymplecticVector v(p.num_qubits());
  for (std::size_t i = 0; i < p.num_qubits(); ++i) v.set_pauli(i, p.op(i));
  return v;
}

inline PauliString phi_inv(const SymplecticVector& v) {
  PauliString p(v.num_qubits());
  for (std::size_t i = 0; i < v.num_qubits(); ++i) p.set_op(i, v.pauli_at(i));
  return p;
}

// <u,v> = sum_i u_x,i v_z,i + v_x,i u_z,i over F2. Zero iff the represented
// Pauli operators commute.
inline int symplectic_product(const SymplecticVector& u,
                              const SymplecticVector& v) {
  const std::size_t n = u.num_qubits();
  if (v.num_qubits() != n) {
    throw std::invalid_argument("symplectic_product: size mismatch");
  }
  uint64_t acc = 0;
  for (std::size_t off = 0; off < n; off += 64) {
    const std::size_t remaining = n - off;
    // x-half words that straddle the x/z boundary pick up z bits; mask them.
    const uint64_t mask =
        remaining >= 64 ? ~uint64_t{0} : (uint64_t{1} << remaining) - 1;
    const uint64_t ux = u.bits().word_at(off) & mask;
    const uint64_t uz = u.bits().word_at(n + off);
    const uint64_t vx = v.bits().word_at(off) & mask;
    const uint64_t vz = v.bits().word_at(n + off);
    acc ^= (ux & vz) ^ (vx & uz);
  }
  return std::popcount(acc) & 1;
}

// Number of qubits acted on non-trivially.
inline std::size_t pauli_weight(const SymplecticVector& v) {
  const std::size_t n = v.num_qubits();
  std::size_t w = 0;
  for (std::size_t off = 0; off < n; off += 64) {
    uint64_t x = v.bits().word_at(off);
    uint64_t z = v.bits().word_at(n + off);
    const std::size_t remaining = n - off;
    if (remaining < 64) {
      const uint64_t mask = (uint64_t{1} << remaining) - 1;
      x &= mask;
      z &= mask;
    }
    w += std::popcount(x | z);
  }
  return w;
}

}  // namespace qdec
