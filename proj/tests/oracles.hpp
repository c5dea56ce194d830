#pragma once

// Test-only reference implementations, deliberately independent of the
// bit-packed library code: naive integer-matrix F2 arithmetic and a complex
// Pauli-matrix commutator. Used as oracles; keep them obvious, not fast.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qdec/channel.hpp"
#include "qdec/gf2.hpp"
#include "qdec/pauli.hpp"

namespace oracle {

using IntMatrix = std::vector<std::vector<int>>;
using IntVector = std::vector<int>;

inline IntMatrix to_naive(const qdec::BinaryMatrix& m) {
  IntMatrix out(m.rows(), IntVector(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c);
  }
  return out;
}

inline IntVector to_naive(const qdec::BinaryVector& v) {
  IntVector out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.get(i);
  return out;
}

inline qdec::BinaryMatrix from_naive(const IntMatrix& m) {
  if (m.empty()) return qdec::BinaryMatrix();
  qdec::BinaryMatrix out(m.size(), m[0].size());
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m[0].size(); ++c) {
      if (m[r][c]) out.set(r, c, true);
    }
  }
  return out;
}

inline std::size_t naive_rank(IntMatrix m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t j = 0; j < cols; ++j) m[r][j] ^= m[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

inline IntMatrix naive_mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), IntVector(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k]) {
        for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] ^= b[k][j];
      }
    }
  }
  return c;
}

inline qdec::BinaryMatrix random_matrix(std::size_t rows, std::size_t cols,
                                        qdec::RandomStream& rng) {
  qdec::BinaryMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.next_u64() & 1) m.set(r, c, true);
    }
  }
  return m;
}

inline qdec::BinaryVector random_vector(std::size_t len,
                                        qdec::RandomStream& rng) {
  qdec::BinaryVector v(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (rng.next_u64() & 1) v.set(i, true);
  }
  return v;
}

// ---- complex Pauli-matrix oracle ------------------------------------------

using Cx = std::complex<double>;
using CxMatrix = std::vector<std::vector<Cx>>;

inline CxMatrix pauli_matrix(qdec::Pauli p) {
  const Cx i(0.0, 1.0);
  switch (p) {
    case qdec::Pauli::I: return {{1, 0}, {0, 1}};
    case qdec::Pauli::X: return {{0, 1}, {1, 0}};
    case qdec::Pauli::Y: return {{0, -i}, {i, 0}};
    case qdec::Pauli::Z: return {{1, 0}, {0, -1}};
  }
  return {};
}

inline CxMatrix kron(const CxMatrix& a, const CxMatrix& b) {
  const std::size_t ar = a.size(), ac = a[0].size();
  const std::size_t br = b.size(), bc = b[0].size();
  CxMatrix c(ar * br, std::vector<Cx>(ac * bc));
  for (std::size_t i = 0; i < ar; ++i) {
    for (std::size_t j = 0; j < ac; ++j) {
      for (std::size_t k = 0; k < br; ++k) {
        for (std::size_t l = 0; l < bc; ++l) {
          c[i * br + k][j * bc + l] = a[i][j] * b[k][l];
        }
      }
    }
  }
  return c;
}

inline CxMatrix matmul(const CxMatrix& a, const CxMatrix& b) {
  CxMatrix c(a.size(), std::vector<Cx>(b[0].size(), Cx(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[0].size(); ++j) {
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

inline CxMatrix full_matrix(const qdec::PauliString& p) {
  CxMatrix m = pauli_matrix(p.op(0));
  for (std::size_t q = 1; q < p.num_qubits(); ++q) {
    m = kron(m, pauli_matrix(p.op(q)));
  }
  return m;
}

// 0 if the operators commute, 1 if they anticommute.
inline int commutator_oracle(const qdec::PauliString& a,
                             const qdec::PauliString& b) {
  const CxMatrix ma = full_matrix(a), mb = full_matrix(b);
  const CxMatrix ab = matmul(ma, mb), ba = matmul(mb, ma);
  double comm = 0.0, anti = 0.0;
  for (std::size_t i = 0; i < ab.size(); ++i) {
    for (std::size_t j = 0; j < ab.size(); ++j) {
      comm += std::abs(ab[i][j] - ba[i][j]);
      anti += std::abs(ab[i][j] + ba[i][j]);
    }
  }
  if (comm < 1e-9) return 0;
  if (anti < 1e-9) return 1;
  throw std::logic_error("commutator_oracle: neither commutes nor anticommutes");
}

// Phase-free single-qubit multiplication table, spelled out explicitly so
// it shares nothing with the library's bit encoding.
inline qdec::Pauli pauli_product(qdec::Pauli a, qdec::Pauli b) {
  using P = qdec::Pauli;
  if (a == P::I) return b;
  if (b == P::I) return a;
  if (a == b) return P::I;
  // {X,Z} -> Y, {X,Y} -> Z, {Z,Y} -> X
  const bool has_x = a == P::X || b == P::X;
  const bool has_z = a == P::Z || b == P::Z;
  if (has_x && has_z) return P::Y;
  if (has_x) return P::Z;
  return P::X;
}

}  // namespace oracle
