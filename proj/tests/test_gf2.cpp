#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qdec/channel.hpp"
#include "qdec/codes.hpp"
#include "qdec/gf2.hpp"

using namespace qdec;

TEST_CASE("rank: identity and zero matrices", "[gf2]") {
  REQUIRE(rank(BinaryMatrix::identity(3)) == 3);
  REQUIRE(rank(BinaryMatrix(4, 7)) == 0);
}

TEST_CASE("rank: toric d=2 check matrix", "[gf2]") {
  const StabilizerCode code = build_toric(2);
  REQUIRE(code.h().rows() == 8);
  REQUIRE(code.h().cols() == 16);
  REQUIRE(rank(code.h()) == 6);
  REQUIRE(oracle::naive_rank(oracle::to_naive(code.h())) == 6);
}

TEST_CASE("rank matches transpose rank on random matrices", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 0}, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.next_below(64);
    const std::size_t cols = 1 + rng.next_below(64);
    const BinaryMatrix m = oracle::random_matrix(rows, cols, rng);
    REQUIRE(rank(m) == rank(m.transposed()));
    REQUIRE(rank(m) == oracle::naive_rank(oracle::to_naive(m)));
  }
}

TEST_CASE("row_reduce: identity passthrough", "[gf2]") {
  const BinaryMatrix id = BinaryMatrix::identity(5);
  const RowReduction red = row_reduce(id);
  REQUIRE(red.reduced == id);
  REQUIRE(red.transform == id);
  REQUIRE(red.pivots == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("row_reduce: duplicate rows yield one pivot", "[gf2]") {
  const BinaryMatrix m = BinaryMatrix::from_strings({"1011", "1011"});
  const RowReduction red = row_reduce(m);
  REQUIRE(red.pivots.size() == 1);
  REQUIRE(red.reduced.row(1).is_zero());
  // transform row 1 sums both input rows
  REQUIRE(red.transform.get(1, 0));
  REQUIRE(red.transform.get(1, 1));
}

TEST_CASE("row_reduce: transform * input == reduced", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 1}, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMatrix m = oracle::random_matrix(6, 10, rng);
    const RowReduction red = row_reduce(m);
    REQUIRE(mat_mul(red.transform, m) == red.reduced);
    for (std::size_t i = 1; i < red.pivots.size(); ++i) {
      REQUIRE(red.pivots[i - 1] < red.pivots[i]);
    }
  }
}

TEST_CASE("in_rowspace basics", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 2}, 0);
  const BinaryMatrix m = oracle::random_matrix(5, 12, rng);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    REQUIRE(in_rowspace(m, m.row(r)));
  }
  REQUIRE(in_rowspace(m, BinaryVector(12)));  // empty combination
  REQUIRE_THROWS_AS(in_rowspace(m, BinaryVector(11)), std::invalid_argument);
}

TEST_CASE("in_rowspace iff rank does not grow", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 3}, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryMatrix m = oracle::random_matrix(4 + rng.next_below(8),
                                                 6 + rng.next_below(20), rng);
    const BinaryVector v = oracle::random_vector(m.cols(), rng);
    BinaryMatrix stacked = m;
    stacked.append_row(v);
    const bool member = in_rowspace(m, v);
    REQUIRE(member == (rank(stacked) == rank(m)));
  }
}

TEST_CASE("complete_basis: trivial cases", "[gf2]") {
  REQUIRE(complete_basis(BinaryMatrix(), 3) == BinaryMatrix::identity(3));
  const BinaryMatrix full = BinaryMatrix::identity(4);
  REQUIRE(complete_basis(full, 4).rows() == 0);
}

TEST_CASE("complete_basis rejects dependent input", "[gf2]") {
  const BinaryMatrix dep = BinaryMatrix::from_strings({"110", "110"});
  REQUIRE_THROWS_AS(complete_basis(dep, 3), std::invalid_argument);
}

TEST_CASE("complete_basis: toric d=2 stabilizer+logical span", "[gf2]") {
  const StabilizerCode code = build_toric(2);
  // Canonical bases of S and L stacked: 6 + 4 = 10 independent rows.
  BinaryMatrix sl = vstack(code.stabilizer_basis(), code.logical_basis());
  REQUIRE(rank(sl) == 10);
  const BinaryMatrix completion = complete_basis(sl, 16);
  REQUIRE(completion.rows() == 6);
  REQUIRE(rank(vstack(sl, completion)) == 16);
}

TEST_CASE("complete_basis output always completes to full rank", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 4}, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 4 + rng.next_below(24);
    BinaryMatrix m = oracle::random_matrix(1 + rng.next_below(dim), dim, rng);
    // Reduce to an independent basis first.
    RowSpace space(m);
    std::vector<BinaryVector> basis_rows;
    BinaryMatrix basis(0, dim);
    const RowReduction red = row_reduce(m);
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      basis.append_row(red.reduced.row(r));
    }
    const BinaryMatrix completion = complete_basis(basis, dim);
    REQUIRE(completion.rows() == dim - basis.rows());
    REQUIRE(rank(vstack(basis, completion)) == dim);
  }
}

TEST_CASE("nullspace_basis: identity and zero", "[gf2]") {
  REQUIRE(nullspace_basis(BinaryMatrix::identity(4)).rows() == 0);
  const BinaryMatrix z(3, 5);
  const BinaryMatrix ns = nullspace_basis(z);
  REQUIRE(ns.rows() == 5);
  REQUIRE(rank(ns) == 5);
}

TEST_CASE("nullspace_basis: H_Z block of toric d=2", "[gf2]") {
  const StabilizerCode code = build_toric(2);
  const BinaryMatrix& hz = code.css()->hz;
  const BinaryMatrix ns = nullspace_basis(hz);
  REQUIRE(ns.rows() == hz.cols() - rank(hz));
  for (std::size_t r = 0; r < ns.rows(); ++r) {
    REQUIRE(mat_vec_mul(hz, ns.row(r)).is_zero());
  }
}

TEST_CASE("nullspace_basis: multiply-back on random matrices", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 5}, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMatrix m = oracle::random_matrix(3 + rng.next_below(10),
                                                 4 + rng.next_below(16), rng);
    const BinaryMatrix ns = nullspace_basis(m);
    REQUIRE(ns.rows() == m.cols() - rank(m));
    REQUIRE(rank(ns) == ns.rows());
    for (std::size_t r = 0; r < ns.rows(); ++r) {
      REQUIRE(mat_vec_mul(m, ns.row(r)).is_zero());
    }
  }
}

TEST_CASE("matrix text round-trip pieces", "[gf2]") {
  const BinaryMatrix m = BinaryMatrix::from_strings({"10110", "01101"});
  REQUIRE(m.get(0, 0));
  REQUIRE_FALSE(m.get(0, 1));
  REQUIRE(m.row(1).to_string() == "01101");
  REQUIRE(m.transposed().rows() == 5);
  REQUIRE(m.transposed().get(0, 0));
}

TEST_CASE("mat_mul agrees with the naive oracle", "[gf2]") {
  RandomStream rng = derive_stream({0xC0FFEE, 6}, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t a = 1 + rng.next_below(12);
    const std::size_t b = 1 + rng.next_below(12);
    const std::size_t c = 1 + rng.next_below(12);
    const BinaryMatrix x = oracle::random_matrix(a, b, rng);
    const BinaryMatrix y = oracle::random_matrix(b, c, rng);
    REQUIRE(oracle::to_naive(mat_mul(x, y)) ==
            oracle::naive_mul(oracle::to_naive(x), oracle::to_naive(y)));
  }
}
