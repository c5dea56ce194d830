#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "qdec/channel.hpp"
#include "qdec/pauli.hpp"

using namespace qdec;

namespace {

PauliString random_pauli_string(std::size_t n, RandomStream& rng) {
  PauliString p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.set_op(i, Pauli(rng.next_below(4)));
  }
  return p;
}

}  // namespace

TEST_CASE("phi: definitional cases", "[pauli]") {
  REQUIRE(phi(PauliString::from_string("III")).is_zero());
  const SymplecticVector v = phi(PauliString::from_string("XZ"));
  REQUIRE(v.bits().to_string() == "1001");  // (10|01)
  REQUIRE(phi_inv(SymplecticVector::from_bits(BinaryVector::from_string("1111")))
              .to_string() == "YY");
  REQUIRE(phi_inv(SymplecticVector(4)).to_string() == "IIII");
}

TEST_CASE("phi round-trips with phi_inv", "[pauli]") {
  RandomStream rng = derive_stream({0xBEEF, 0}, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.next_below(24);
    const PauliString p = random_pauli_string(n, rng);
    REQUIRE(phi_inv(phi(p)) == p);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_below(16);
    const BinaryVector bits = oracle::random_vector(2 * n, rng);
    const SymplecticVector v = SymplecticVector::from_bits(bits);
    REQUIRE(phi(phi_inv(v)) == v);
  }
}

TEST_CASE("phi is a homomorphism modulo phase", "[pauli]") {
  RandomStream rng = derive_stream({0xBEEF, 1}, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.next_below(12);
    const PauliString a = random_pauli_string(n, rng);
    const PauliString b = random_pauli_string(n, rng);
    PauliString prod(n);
    for (std::size_t i = 0; i < n; ++i) {
      prod.set_op(i, oracle::pauli_product(a.op(i), b.op(i)));
    }
    REQUIRE(phi(prod) == (phi(a) ^ phi(b)));
  }
}

TEST_CASE("symplectic product: X vs Z anticommute", "[pauli]") {
  const SymplecticVector x = phi(PauliString::from_string("X"));
  const SymplecticVector z = phi(PauliString::from_string("Z"));
  REQUIRE(symplectic_product(x, z) == 1);
}

TEST_CASE("symplectic product: self-product vanishes", "[pauli]") {
  RandomStream rng = derive_stream({0xBEEF, 2}, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_below(20);
    const SymplecticVector u =
        SymplecticVector::from_bits(oracle::random_vector(2 * n, rng));
    REQUIRE(symplectic_product(u, u) == 0);
  }
}

TEST_CASE("symplectic product: XZ vs YY via complex-matrix oracle", "[pauli]") {
  const PauliString a = PauliString::from_string("XZ");
  const PauliString b = PauliString::from_string("YY");
  REQUIRE(oracle::commutator_oracle(a, b) == 0);
  REQUIRE(symplectic_product(phi(a), phi(b)) == 0);
}

TEST_CASE("symplectic product matches commutator oracle on random pairs",
          "[pauli]") {
  RandomStream rng = derive_stream({0xBEEF, 3}, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.next_below(3);  // oracle is 2^n x 2^n
    const PauliString a = random_pauli_string(n, rng);
    const PauliString b = random_pauli_string(n, rng);
    REQUIRE(symplectic_product(phi(a), phi(b)) ==
            oracle::commutator_oracle(a, b));
  }
}

TEST_CASE("symplectic product is bilinear and symmetric", "[pauli]") {
  RandomStream rng = derive_stream({0xBEEF, 4}, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.next_below(20);
    const auto rnd = [&] {
      return SymplecticVector::from_bits(oracle::random_vector(2 * n, rng));
    };
    const SymplecticVector u = rnd(), w = rnd(), v = rnd();
    REQUIRE(symplectic_product(u ^ w, v) ==
            (symplectic_product(u, v) ^ symplectic_product(w, v)));
    REQUIRE(symplectic_product(u, v) == symplectic_product(v, u));
  }
}

TEST_CASE("pauli_weight basics", "[pauli]") {
  REQUIRE(pauli_weight(SymplecticVector(5)) == 0);
  // (10|10) is a single Y
  REQUIRE(pauli_weight(SymplecticVector::from_bits(
              BinaryVector::from_string("1010"))) == 1);
  REQUIRE(pauli_weight(SymplecticVector::from_bits(
              BinaryVector::from_string("1101"))) == 2);
}

TEST_CASE("pauli_weight bounded by Hamming weight", "[pauli]") {
  RandomStream rng = derive_stream({0xBEEF, 5}, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.next_below(100);
    const SymplecticVector v =
        SymplecticVector::from_bits(oracle::random_vector(2 * n, rng));
    const std::size_t pw = pauli_weight(v);
    const std::size_t hw = v.bits().weight();
    REQUIRE(pw <= hw);
    REQUIRE(hw <= 2 * pw);
    // independent recount
    std::size_t direct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (v.pauli_at(i) != Pauli::I) ++direct;
    }
    REQUIRE(pw == direct);
  }
}

TEST_CASE("pauli string text encoding", "[pauli]") {
  REQUIRE(PauliString::from_string("IXYZ").to_string() == "IXYZ");
  REQUIRE_THROWS_AS(PauliString::from_string("A"), std::invalid_argument);
}
