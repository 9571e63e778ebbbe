#include <gtest/gtest.h>

#include "holocode/bitmat.hpp"
#include "holocode/check_matrix.hpp"
#include "holocode/rng.hpp"

using namespace holocode;

namespace {

BitMatrix random_matrix(size_t rows, size_t cols, CounterRng& rng, double density = 0.5) {
    BitMatrix m(rows, cols);
    for (size_t i = 0; i < rows; i++) {
        for (size_t j = 0; j < cols; j++) {
            if (rng.uniform01() < density) m.set(i, j, true);
        }
    }
    return m;
}

size_t naive_rank(BitMatrix m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols && rank < m.rows; col++) {
        size_t pivot = SIZE_MAX;
        for (size_t i = rank; i < m.rows; i++) {
            if (m.get(i, col)) {
                pivot = i;
                break;
            }
        }
        if (pivot == SIZE_MAX) continue;
        m.swap_rows(rank, pivot);
        for (size_t i = 0; i < m.rows; i++) {
            if (i != rank && m.get(i, col)) m.xor_rows(i, rank);
        }
        rank++;
    }
    return rank;
}

}  // namespace

TEST(Gf2, RankMatchesNaive) {
    CounterRng rng(11, 0, 0);
    for (int trial = 0; trial < 100; trial++) {
        size_t rows = 1 + (rng.next() % 12);
        size_t cols = 1 + (rng.next() % 20);
        BitMatrix m = random_matrix(rows, cols, rng);
        EXPECT_EQ(rref_rank(m).rank, naive_rank(m));
    }
}

TEST(Gf2, RrefPivotsAreCanonical) {
    CounterRng rng(12, 0, 0);
    for (int trial = 0; trial < 50; trial++) {
        BitMatrix m = random_matrix(6, 10, rng);
        RrefResult r = rref_rank(m);
        ASSERT_EQ(r.pivots.size(), r.rank);
        for (size_t i = 0; i < r.rank; i++) {
            size_t col = r.pivots[i];
            for (size_t row = 0; row < r.reduced.rows; row++) {
                EXPECT_EQ(r.reduced.get(row, col), row == i);
            }
        }
        // pivot columns strictly increase
        for (size_t i = 1; i < r.pivots.size(); i++) {
            EXPECT_LT(r.pivots[i - 1], r.pivots[i]);
        }
    }
}

TEST(Gf2, SameRowSpaceUnderRowOps) {
    CounterRng rng(13, 0, 0);
    for (int trial = 0; trial < 50; trial++) {
        BitMatrix m = random_matrix(5, 12, rng);
        BitMatrix shuffled = m;
        // random invertible row operations preserve the row space
        for (int k = 0; k < 20; k++) {
            size_t a = rng.below(5), b = rng.below(5);
            if (a != b) shuffled.xor_rows(a, b);
        }
        EXPECT_TRUE(same_row_space(m, shuffled));
    }
    BitMatrix a(1, 3), b(1, 3);
    a.set(0, 0, true);
    b.set(0, 1, true);
    EXPECT_FALSE(same_row_space(a, b));
}

TEST(Gf2, SolveRowCombination) {
    CounterRng rng(14, 0, 0);
    for (int trial = 0; trial < 100; trial++) {
        size_t rows = 2 + (rng.next() % 8);
        size_t cols = 2 + (rng.next() % 14);
        BitMatrix m = random_matrix(rows, cols, rng);
        // target: random combination of rows (always solvable)
        std::vector<uint8_t> target(cols, 0);
        for (size_t i = 0; i < rows; i++) {
            if (rng.next() & 1) {
                for (size_t j = 0; j < cols; j++) {
                    target[j] ^= m.get(i, j) ? 1 : 0;
                }
            }
        }
        auto sel = solve_row_combination(m, target);
        ASSERT_TRUE(sel.has_value());
        std::vector<uint8_t> sum(cols, 0);
        for (size_t i = 0; i < rows; i++) {
            if ((*sel)[i]) {
                for (size_t j = 0; j < cols; j++) {
                    sum[j] ^= m.get(i, j) ? 1 : 0;
                }
            }
        }
        EXPECT_EQ(sum, target);
    }

    // unsolvable target
    BitMatrix m(1, 2);
    m.set(0, 0, true);
    EXPECT_FALSE(solve_row_combination(m, {0, 1}).has_value());
}

TEST(Gf2, KernelBasis) {
    CounterRng rng(15, 0, 0);
    for (int trial = 0; trial < 50; trial++) {
        size_t rows = 1 + (rng.next() % 6);
        size_t cols = 1 + (rng.next() % 10);
        BitMatrix m = random_matrix(rows, cols, rng);
        auto kernel = kernel_basis(m);
        EXPECT_EQ(kernel.size(), cols - rref_rank(m).rank);
        for (const auto& k : kernel) {
            // m * k = 0
            for (size_t i = 0; i < rows; i++) {
                int parity = 0;
                for (size_t j = 0; j < cols; j++) {
                    if (m.get(i, j) && k[j]) parity ^= 1;
                }
                EXPECT_EQ(parity, 0);
            }
        }
        // kernel vectors are independent
        if (!kernel.empty()) {
            BitMatrix kb(kernel.size(), cols);
            for (size_t i = 0; i < kernel.size(); i++) {
                for (size_t j = 0; j < cols; j++) {
                    if (kernel[i][j]) kb.set(i, j, true);
                }
            }
            EXPECT_EQ(rref_rank(kb).rank, kernel.size());
        }
    }
}

TEST(Gf2, CheckMatrixTextRoundTrip) {
    CheckMatrix m(5);
    m.push(PauliString::from_string("XZZXI"));
    m.push(PauliString::from_string("IXZZX"));
    CheckMatrix back = CheckMatrix::from_text(m.to_text());
    EXPECT_EQ(back.num_qubits, 5u);
    ASSERT_EQ(back.num_rows(), 2u);
    EXPECT_TRUE(back.rows[0].same_bits(m.rows[0]));
    EXPECT_TRUE(back.rows[1].same_bits(m.rows[1]));
    EXPECT_TRUE(back.same_row_space_as(m));
}

TEST(Rng, DeterministicStreams) {
    CounterRng a(42, 3, 7), b(42, 3, 7), c(42, 3, 8);
    for (int i = 0; i < 100; i++) {
        uint64_t va = a.next();
        EXPECT_EQ(va, b.next());
        EXPECT_NE(va, c.next());  // different substream, astronomically unlikely to collide
    }
}

TEST(Rng, Uniform01AndBelow) {
    CounterRng rng(1, 0, 0);
    for (int i = 0; i < 1000; i++) {
        double u = rng.uniform01();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        EXPECT_LT(rng.below(17), 17u);
    }
    // rough uniformity of below()
    size_t counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 40000; i++) counts[rng.below(4)]++;
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(static_cast<double>(counts[k]), 10000.0, 500.0);
    }
}
