#pragma once

// Stabilizer-code construction and the E (+) S (+) L decomposition of
// F2^{2n}. Check matrices use the (x|z) column layout throughout; CSS codes
// store their X block as rows (H_X | 0) followed by the Z block (0 | H_Z).

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdec/gf2.hpp"
#include "qdec/pauli.hpp"

namespace qdec {

struct CssBlocks {
  BinaryMatrix hx;  // m_X x n
  BinaryMatrix hz;  // m_Z x n
};

struct CssViolation {
  std::size_t hx_row;
  std::size_t hz_row;
};

// Empty result means the symplectic criterion H_X H_Z^T = 0 holds.
inline std::vector<CssViolation> validate_css(const BinaryMatrix& hx,
                                              const BinaryMatrix& hz) {
  if (hx.cols() != hz.cols()) {
    throw std::invalid_argument("validate_css: column count mismatch");
  }
  std::vector<CssViolation> bad;
  for (std::size_t i = 0; i < hx.rows(); ++i) {
    const BinaryVector ri = hx.row(i);
    for (std::size_t j = 0; j < hz.rows(); ++j) {
      if (ri.dot(hz.row(j))) bad.push_back({i, j});
    }
  }
  return bad;
}

// (z|x) from (x|z): right-multiplication by the symplectic form, so that
// <u, v> equals the standard dot product of u with swapped(v).
inline BinaryVector swap_halves(const BinaryVector& v) {
  if (v.size() % 2 != 0) {
    throw std::invalid_argument("swap_halves: length must be even");
  }
  const std::size_t n = v.size() / 2;
  BinaryVector out(v.size());
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, v.get(n + i));
    out.set(n + i, v.get(i));
  }
  return out;
}

inline BinaryMatrix swap_halves(const BinaryMatrix& m) {
  BinaryMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out.set_row(r, swap_halves(m.row(r)));
  }
  return out;
}

// Syndrome of e under check matrix h: bit j = <e, row_j(h)>.
inline BinaryVector syndrome(const BinaryMatrix& h, const SymplecticVector& e) {
  if (h.cols() != e.bits().size()) {
    throw std::invalid_argument("syndrome: dimension mismatch");
  }
  BinaryVector z(h.rows());
  for (std::size_t j = 0; j < h.rows(); ++j) {
    const SymplecticVector row = SymplecticVector::from_bits(h.row(j));
    if (symplectic_product(e, row)) z.set(j, true);
  }
  return z;
}

// 2k generators of the logical subspace: a basis of the symplectic
// orthogonal complement of rowspace(h), taken modulo rowspace(h) and
// row-reduced for a canonical, run-independent result.
inline BinaryMatrix compute_logical_basis(const BinaryMatrix& h) {
  const std::size_t two_n = h.cols();
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const SymplecticVector ri = SymplecticVector::from_bits(h.row(i));
    for (std::size_t j = i + 1; j < h.rows(); ++j) {
      const SymplecticVector rj = SymplecticVector::from_bits(h.row(j));
      if (symplectic_product(ri, rj)) {
        throw std::invalid_argument(
            "compute_logical_basis: check rows do not mutually commute");
      }
    }
  }
  const BinaryMatrix complement = nullspace_basis(swap_halves(h));
  RowSpace stab(h);
  RowSpace collected(two_n);
  std::vector<BinaryVector> residuals;
  for (std::size_t r = 0; r < complement.rows(); ++r) {
    BinaryVector res = stab.reduce(complement.row(r));
    if (res.is_zero()) continue;
    if (collected.insert(res)) residuals.push_back(res);
  }
  if (residuals.empty()) return BinaryMatrix(0, two_n);
  return row_reduce(BinaryMatrix::from_rows(residuals)).reduced;
}

struct ErrorDecomposition {
  SymplecticVector eps;    // detectable component, in rowspace(e_basis)
  SymplecticVector sigma;  // stabilizer component, in rowspace(H)
  SymplecticVector lam;    // logical component, in rowspace(logical_basis)
};

class StabilizerCode {
 public:
  // h is m x 2n with m >= n-k (redundant rows allowed); k is derived from
  // rank, never trusted from the caller.
  static StabilizerCode from_check_matrix(BinaryMatrix h,
                                          std::optional<CssBlocks> css = {}) {
    StabilizerCode code;
    if (h.cols() % 2 != 0) {
      throw std::invalid_argument("StabilizerCode: check matrix needs 2n columns");
    }
    code.n_ = h.cols() / 2;
    code.h_ = std::move(h);
    code.css_ = std::move(css);
    code.logical_basis_ = compute_logical_basis(code.h_);
    code.rank_h_ = rank(code.h_);
    code.k_ = code.n_ - code.rank_h_;
    if (code.logical_basis_.rows() != 2 * code.k_) {
      throw std::logic_error("StabilizerCode: logical basis has wrong size");
    }

    // Canonical bases of S and S+L, then the deterministic completion E.
    const BinaryMatrix s_basis = echelon_basis(code.h_);
    const BinaryMatrix sl_basis =
        echelon_basis(vstack(code.h_, code.logical_basis_));
    if (sl_basis.rows() != code.n_ + code.k_) {
      throw std::logic_error("StabilizerCode: rank(stack(H, L)) != n + k");
    }
    code.e_basis_ = complete_basis(sl_basis, 2 * code.n_);

    // Full basis B = [E; S; L] and the transpose of its inverse, cached so
    // decompositions are a vector-matrix product.
    code.s_basis_ = s_basis;
    BinaryMatrix full = vstack(code.e_basis_, vstack(s_basis, code.logical_basis_));
    RowReduction red = row_reduce(full);
    if (red.pivots.size() != 2 * code.n_) {
      throw std::logic_error("StabilizerCode: E+S+L basis is not full rank");
    }
    code.basis_ = std::move(full);
    code.basis_inv_t_ = red.transform.transposed();
    code.validate();
    return code;
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t num_checks() const { return h_.rows(); }
  std::size_t rank_h() const { return rank_h_; }

  const BinaryMatrix& h() const { return h_; }
  const std::optional<CssBlocks>& css() const { return css_; }
  const BinaryMatrix& logical_basis() const { return logical_basis_; }
  const BinaryMatrix& e_basis() const { return e_basis_; }
  const BinaryMatrix& stabilizer_basis() const { return s_basis_; }

  BinaryVector syndrome_of(const SymplecticVector& e) const {
    return syndrome(h_, e);
  }

  ErrorDecomposition decompose(const SymplecticVector& e) const {
    if (e.num_qubits() != n_) {
      throw std::invalid_argument("decompose: size mismatch");
    }
    const std::size_t dim = 2 * n_;
    const std::size_t ne = e_basis_.rows();
    const std::size_t ns = s_basis_.rows();
    ErrorDecomposition out{SymplecticVector(n_), SymplecticVector(n_),
                           SymplecticVector(n_)};
    BinaryVector eps(dim), sigma(dim), lam(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (!basis_inv_t_.row_dot(j, e.bits())) continue;
      if (j < ne) {
        eps ^= basis_.row(j);
      } else if (j < ne + ns) {
        sigma ^= basis_.row(j);
      } else {
        lam ^= basis_.row(j);
      }
    }
    out.eps = SymplecticVector::from_bits(std::move(eps));
    out.sigma = SymplecticVector::from_bits(std::move(sigma));
    out.lam = SymplecticVector::from_bits(std::move(lam));
    return out;
  }

 private:
  static BinaryMatrix echelon_basis(const BinaryMatrix& m) {
    RowReduction red = row_reduce(m);
    std::vector<BinaryVector> rows;
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      rows.push_back(red.reduced.row(r));
    }
    if (rows.empty()) return BinaryMatrix(0, m.cols());
    return BinaryMatrix::from_rows(rows);
  }

  void validate() const {
    for (std::size_t i = 0; i < h_.rows(); ++i) {
      const SymplecticVector ri = SymplecticVector::from_bits(h_.row(i));
      for (std::size_t j = i + 1; j < h_.rows(); ++j) {
        const SymplecticVector rj = SymplecticVector::from_bits(h_.row(j));
        if (symplectic_product(ri, rj)) {
          throw std::invalid_argument("StabilizerCode: check rows do not commute");
        }
      }
      for (std::size_t l = 0; l < logical_basis_.rows(); ++l) {
        const SymplecticVector rl =
            SymplecticVector::from_bits(logical_basis_.row(l));
        if (symplectic_product(ri, rl)) {
          throw std::logic_error(
              "StabilizerCode: logical operator anticommutes with a check");
        }
      }
    }
  }

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::size_t rank_h_ = 0;
  BinaryMatrix h_;
  std::optional<CssBlocks> css_;
  BinaryMatrix logical_basis_;  // 2k x 2n, canonical
  BinaryMatrix s_basis_;        // (n-k) x 2n echelon basis of rowspace(H)
  BinaryMatrix e_basis_;        // (n-k) x 2n deterministic completion
  BinaryMatrix basis_;          // [E; S; L], full rank 2n
  BinaryMatrix basis_inv_t_;    // transpose of basis_^{-1}
};

inline ErrorDecomposition decompose_error(const StabilizerCode& code,
                                          const SymplecticVector& e) {
  return code.decompose(e);
}

// Toric code on a d x d torus with qubits on edges: n = 2d^2, k = 2.
// Horizontal edge (r,c) -- between vertices (r,c) and (r,c+1) -- has index
// r*d + c; vertical edge (r,c) -- between (r,c) and (r+1,c) -- has index
// d^2 + r*d + c. X checks are vertex stars, Z checks are plaquettes.
inline StabilizerCode build_toric(int d) {
  if (d < 2) throw std::invalid_argument("build_toric: d must be >= 2");
  const std::size_t dd = std::size_t(d);
  const std::size_t n = 2 * dd * dd;
  auto hedge = [dd](std::size_t r, std::size_t c) { return r * dd + c; };
  auto vedge = [dd](std::size_t r, std::size_t c) { return dd * dd + r * dd + c; };

  BinaryMatrix hx(dd * dd, n);
  BinaryMatrix hz(dd * dd, n);
  for (std::size_t r = 0; r < dd; ++r) {
    for (std::size_t c = 0; c < dd; ++c) {
      const std::size_t star = r * dd + c;
      hx.set(star, hedge(r, c), true);
      hx.set(star, hedge(r, (c + dd - 1) % dd), true);
      hx.set(star, vedge(r, c), true);
      hx.set(star, vedge((r + dd - 1) % dd, c), true);

      const std::size_t plaq = r * dd + c;
      hz.set(plaq, hedge(r, c), true);
      hz.set(plaq, hedge((r + 1) % dd, c), true);
      hz.set(plaq, vedge(r, c), true);
      hz.set(plaq, vedge(r, (c + 1) % dd), true);
    }
  }
  if (!validate_css(hx, hz).empty()) {
    throw std::logic_error("build_toric: symplectic criterion violated");
  }

  BinaryMatrix h(2 * dd * dd, 2 * n);
  for (std::size_t r = 0; r < dd * dd; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (hx.get(r, c)) h.set(r, c, true);
      if (hz.get(r, c)) h.set(dd * dd + r, n + c, true);
    }
  }
  return StabilizerCode::from_check_matrix(std::move(h),
                                           CssBlocks{std::move(hx), std::move(hz)});
}

struct GbSpec {
  std::size_t ell = 0;
  std::vector<std::size_t> a_exponents;
  std::vector<std::size_t> b_exponents;
};

// Generalized bicycle code: H_X = [A B], H_Z = [B^T A^T] with A, B the
// circulants of a(x), b(x) over F2[x]/(x^ell - 1). Circulants commute, so
// the symplectic criterion holds by construction; k comes out of the rank.
inline StabilizerCode build_gb(const GbSpec& spec) {
  if (spec.ell == 0 || spec.a_exponents.empty() || spec.b_exponents.empty()) {
    throw std::invalid_argument("build_gb: empty spec");
  }
  for (std::size_t e : spec.a_exponents) {
    if (e >= spec.ell) throw std::invalid_argument("build_gb: a exponent out of range");
  }
  for (std::size_t e : spec.b_exponents) {
    if (e >= spec.ell) throw std::invalid_argument("build_gb: b exponent out of range");
  }
  const std::size_t ell = spec.ell;
  const std::size_t n = 2 * ell;
  auto circulant = [ell](const std::vector<std::size_t>& exps) {
    BinaryMatrix m(ell, ell);
    for (std::size_t r = 0; r < ell; ++r) {
      for (std::size_t e : exps) {
        const std::size_t c = (r + e) % ell;
        m.set(r, c, !m.get(r, c));  // repeated exponents cancel over F2
      }
    }
    return m;
  };
  const BinaryMatrix a = circulant(spec.a_exponents);
  const BinaryMatrix b = circulant(spec.b_exponents);

  BinaryMatrix hx(ell, n), hz(ell, n);
  for (std::size_t r = 0; r < ell; ++r) {
    for (std::size_t c = 0; c < ell; ++c) {
      if (a.get(r, c)) hx.set(r, c, true);
      if (b.get(r, c)) hx.set(r, ell + c, true);
      if (b.get(c, r)) hz.set(r, c, true);
      if (a.get(c, r)) hz.set(r, ell + c, true);
    }
  }
  if (!validate_css(hx, hz).empty()) {
    throw std::logic_error("build_gb: symplectic criterion violated");
  }

  BinaryMatrix h(2 * ell, 2 * n);
  for (std::size_t r = 0; r < ell; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (hx.get(r, c)) h.set(r, c, true);
      if (hz.get(r, c)) h.set(ell + r, n + c, true);
    }
  }
  return StabilizerCode::from_check_matrix(std::move(h),
                                           CssBlocks{std::move(hx), std::move(hz)});
}

// Exhaustive minimum distance; usable only for 2n <= 20. Returns nullopt
// for k = 0 codes (no logical operators exist).
inline std::optional<std::size_t> min_distance_bruteforce(
    const StabilizerCode& code) {
  const std::size_t dim = 2 * code.n();
  if (dim > 20) {
    throw std::invalid_argument("min_distance_bruteforce: instance too large");
  }
  if (code.k() == 0) return std::nullopt;
  RowSpace stab(code.h());
  std::size_t best = dim + 1;
  for (uint64_t bits = 1; bits < (uint64_t{1} << dim); ++bits) {
    BinaryVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if ((bits >> i) & 1) v.set(i, true);
    }
    const SymplecticVector e = SymplecticVector::from_bits(v);
    const std::size_t w = pauli_weight(e);
    if (w >= best) continue;
    if (!code.syndrome_of(e).is_zero()) continue;
    if (stab.contains(e.bits())) continue;
    best = w;
  }
  return best;
}

}  // namespace qdec
