#pragma once

// Outcome classification (Type I/II success and failure), logical
// equivalence, and brute-force degeneracy-set oracles. The enumeration
// routines are exponential in n - k and exist to validate the splitting
// behaviour of appended rows on small codes.

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qdec/codes.hpp"
#include "qdec/ensemble.hpp"
#include "qdec/gf2.hpp"
#include "qdec/pauli.hpp"

namespace qdec {

enum class OutcomeKind {
  TypeISuccess,   // estimate equals the error exactly
  TypeIISuccess,  // estimate differs by a stabilizer
  TypeIFailure,   // flagged: no syndrome-consistent estimate produced
  TypeIIFailure,  // unflagged: syndrome-consistent but logically wrong
};

struct DecodeOutcome {
  OutcomeKind kind = OutcomeKind::TypeIFailure;
  std::optional<SymplecticVector> estimate;
  std::optional<std::size_t> winning_path;
};

// True iff e and est differ by an element of rowspace(H). The rank test is
// the primary route; debug builds cross-check syndrome-consistent pairs
// against commutation with every logical generator.
inline bool logically_equivalent(const StabilizerCode& code,
                                 const SymplecticVector& e,
                                 const SymplecticVector& est) {
  const SymplecticVector diff = e ^ est;
  const bool equivalent = in_rowspace(code.h(), diff.bits());
#ifndef NDEBUG
  if (code.syndrome_of(e) == code.syndrome_of(est)) {
    bool commutes_with_logicals = true;
    for (std::size_t l = 0; l < code.logical_basis().rows(); ++l) {
      const SymplecticVector row =
          SymplecticVector::from_bits(code.logical_basis().row(l));
      if (symplectic_product(diff, row)) {
        commutes_with_logicals = false;
        break;
      }
    }
    // Zero syndrome difference: membership in S is equivalent to commuting
    // with all logicals. The two tests must agree.
    assert(equivalent == commutes_with_logicals);
  }
#endif
  return equivalent;
}

inline DecodeOutcome classify(const StabilizerCode& code,
                              const SymplecticVector& e,
                              const std::optional<SymplecticVector>& estimate,
                              std::optional<std::size_t> winning_path = {}) {
  DecodeOutcome out;
  out.winning_path = winning_path;
  if (!estimate) {
    out.kind = OutcomeKind::TypeIFailure;
    return out;
  }
  if (code.syndrome_of(*estimate) != code.syndrome_of(e)) {
    throw std::invalid_argument(
        "classify: estimate violates the measured syndrome (ensemble bug)");
  }
  out.estimate = estimate;
  if (*estimate == e) {
    out.kind = OutcomeKind::TypeISuccess;
  } else if (logically_equivalent(code, e, *estimate)) {
    out.kind = OutcomeKind::TypeIISuccess;
  } else {
    out.kind = OutcomeKind::TypeIIFailure;
  }
  return out;
}

// Coset label: lam indexes the logical class, eps the syndrome class.
struct DegeneracySetId {
  SymplecticVector lam;
  SymplecticVector eps;
};

// All 2^{n-k} elements of D_{lam,eps} = lam + eps + S.
inline std::vector<SymplecticVector> enumerate_degeneracy_set(
    const StabilizerCode& code, const DegeneracySetId& id) {
  const std::size_t dim = code.n() - code.k();
  if (dim > 16) {
    throw std::invalid_argument("enumerate_degeneracy_set: instance too large");
  }
  if (!in_rowspace(code.logical_basis(), id.lam.bits()) ||
      !in_rowspace(code.e_basis(), id.eps.bits())) {
    throw std::invalid_argument(
        "enumerate_degeneracy_set: id components outside their subspaces");
  }
  const BinaryMatrix& basis = code.stabilizer_basis();
  std::vector<SymplecticVector> out;
  out.reserve(std::size_t{1} << dim);
  SymplecticVector current = id.lam ^ id.eps;
  out.push_back(current);
  // Gray-code walk: one row XOR per element.
  for (uint64_t g = 1; g < (uint64_t{1} << dim); ++g) {
    const int bit = std::countr_zero(g);
    current ^= SymplecticVector::from_bits(basis.row(std::size_t(bit)));
    out.push_back(current);
  }
  return out;
}

struct SplittingReport {
  std::vector<std::size_t> subset_sizes;  // indexed by the delta-bit key g
  std::size_t expected_size = 0;          // 2^{n-k-delta}
  bool balanced = false;                  // all subsets exactly expected_size
};

// Partitions D_{lam,eps} by the vector of symplectic products with the
// embedded splitters. Balanced output (all 2^delta subsets of size
// 2^{n-k-delta}) is the statement of the splitting theorem; a "splitter"
// chosen inside rowspace(H) instead leaves everything in one subset.
inline SplittingReport verify_splitting(const StabilizerCode& code,
                                        const SplitterSet& splitters,
                                        const DegeneracySetId& id) {
  const std::size_t delta = splitters.delta;
  if (delta == 0) {
    throw std::invalid_argument("verify_splitting: need at least one splitter");
  }
  if (code.n() - code.k() < delta) {
    throw std::invalid_argument("verify_splitting: delta exceeds n - k");
  }
  const std::vector<SymplecticVector> embedded = embedded_splitters(splitters);
  const std::vector<SymplecticVector> members =
      enumerate_degeneracy_set(code, id);

  SplittingReport report;
  report.subset_sizes.assign(std::size_t{1} << delta, 0);
  report.expected_size = members.size() >> delta;
  for (const SymplecticVector& e : members) {
    std::size_t key = 0;
    for (std::size_t t = 0; t < delta; ++t) {
      key = (key << 1) | std::size_t(symplectic_product(e, embedded[t]));
    }
    ++report.subset_sizes[key];
  }
  report.balanced = true;
  for (std::size_t size : report.subset_sizes) {
    if (size != report.expected_size) {
      report.balanced = false;
      break;
    }
  }
  return report;
}

}  // namespace qdec
