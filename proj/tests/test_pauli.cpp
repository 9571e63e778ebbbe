#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "holocode/pauli.hpp"
#include "holocode/rng.hpp"

using namespace holocode;
using namespace holocode::testing;

namespace {

PauliString random_pauli(size_t n, CounterRng& rng) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.set(q, static_cast<Pauli>(rng.next() & 3));
    }
    p.phase = static_cast<uint8_t>(rng.next() & 3);
    return p;
}

}  // namespace

TEST(Pauli, FromStringRoundTrip) {
    for (const char* s : {"+XZZXI", "-XZZXI", "IIIII", "+iXY", "-iZZ", "YYXZ", "-Y"}) {
        PauliString p = PauliString::from_string(s);
        EXPECT_EQ(PauliString::from_string(p.str()), p) << s;
    }
    EXPECT_EQ(PauliString::from_string("+XZZXI").str(), "XZZXI");
    EXPECT_EQ(PauliString::from_string("-XIX").str(), "-XIX");
}

TEST(Pauli, SingleAndGetSet) {
    PauliString p(4);
    p.set(2, Pauli::Y);
    EXPECT_EQ(p.get(2), Pauli::Y);
    EXPECT_TRUE(p.is_hermitian());
    p.set(2, Pauli::X);
    EXPECT_EQ(p.get(2), Pauli::X);
    EXPECT_TRUE(p.is_hermitian());
    p.set(2, Pauli::I);
    EXPECT_TRUE(p.is_identity_bits());
    EXPECT_EQ(p.phase, 0);
    EXPECT_EQ(PauliString::single(3, 1, Pauli::Z).str(), "IZI");
}

TEST(Pauli, ProductPhaseMatchesDenseExhaustive1Qubit) {
    // every signed single-qubit Pauli pair
    for (int pa = 0; pa < 4; pa++) {
        for (int la = 0; la < 4; la++) {
            for (int pb = 0; pb < 4; pb++) {
                for (int lb = 0; lb < 4; lb++) {
                    PauliString a(1), b(1);
                    a.set(0, static_cast<Pauli>(la));
                    a.phase = static_cast<uint8_t>((a.phase + pa) & 3);
                    b.set(0, static_cast<Pauli>(lb));
                    b.phase = static_cast<uint8_t>((b.phase + pb) & 3);
                    Mat expect = matmul(dense_pauli(a), dense_pauli(b));
                    EXPECT_LT(max_abs_diff(expect, dense_pauli(a * b)), 1e-12)
                        << a.str() << " * " << b.str();
                }
            }
        }
    }
}

TEST(Pauli, ProductMatchesDenseRandom) {
    CounterRng rng(7, 0, 0);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + (rng.next() % 4);
        PauliString a = random_pauli(n, rng);
        PauliString b = random_pauli(n, rng);
        EXPECT_LT(max_abs_diff(matmul(dense_pauli(a), dense_pauli(b)), dense_pauli(a * b)),
                  1e-12);
    }
}

TEST(Pauli, CommutationMatchesDense) {
    CounterRng rng(8, 0, 0);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = 1 + (rng.next() % 3);
        PauliString a = random_pauli(n, rng);
        PauliString b = random_pauli(n, rng);
        Mat ab = matmul(dense_pauli(a), dense_pauli(b));
        Mat ba = matmul(dense_pauli(b), dense_pauli(a));
        bool dense_commute = max_abs_diff(ab, ba) < 1e-12;
        EXPECT_EQ(a.commutes_with(b), dense_commute);
        EXPECT_EQ(PauliString::symplectic_product(a, b) == 0, dense_commute);
    }
}

TEST(Pauli, ConjMatchesDense) {
    CounterRng rng(9, 0, 0);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + (rng.next() % 3);
        PauliString p = random_pauli(n, rng);
        Mat expect = dense_pauli(p);
        for (auto& row : expect) {
            for (auto& v : row) v = std::conj(v);
        }
        EXPECT_LT(max_abs_diff(expect, dense_pauli(p.conj())), 1e-12) << p.str();
    }
}

TEST(Pauli, HermitianMatchesDense) {
    CounterRng rng(10, 0, 0);
    for (int trial = 0; trial < 100; trial++) {
        size_t n = 1 + (rng.next() % 3);
        PauliString p = random_pauli(n, rng);
        Mat d = dense_pauli(p);
        EXPECT_EQ(p.is_hermitian(), max_abs_diff(d, dagger(d)) < 1e-12) << p.str();
    }
}

TEST(Pauli, HermitianSquaresToIdentity) {
    PauliString s = PauliString::from_string("XZZXI");
    PauliString sq = s * s;
    EXPECT_TRUE(sq.is_identity_bits());
    EXPECT_EQ(sq.phase, 0);
    EXPECT_EQ(sq.sign(), +1);
}

TEST(Pauli, WeightAndCountY) {
    PauliString p = PauliString::from_string("XYIZY");
    EXPECT_EQ(p.weight(), 4u);
    EXPECT_EQ(p.count_y(), 2u);
    EXPECT_EQ(PauliString::identity(5).weight(), 0u);
}

TEST(Pauli, TensorMatchesConcatenation) {
    PauliString a = PauliString::from_string("-XY");
    PauliString b = PauliString::from_string("ZI");
    EXPECT_EQ(a.tensor(b).str(), "-XYZI");
}

TEST(Pauli, RestrictedToKeepsPhaseAndOrder) {
    PauliString p = PauliString::from_string("XIZYI");
    p.negate();
    PauliString r = p.restricted_to({0, 2, 3});
    EXPECT_EQ(r.str(), "-XZY");
    PauliString swapped = p.restricted_to({3, 2, 0});
    EXPECT_EQ(swapped.str(), "-YZX");
    EXPECT_THROW(p.restricted_to({0, 1}), std::runtime_error);
}

TEST(Pauli, NegateFlipsSign) {
    PauliString p = PauliString::from_string("XX");
    EXPECT_EQ(p.sign(), +1);
    p.negate();
    EXPECT_EQ(p.sign(), -1);
    EXPECT_EQ(p.str(), "-XX");
}
