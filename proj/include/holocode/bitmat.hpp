#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace holocode {

// Dense bit matrix over GF(2), 64 columns per word.
class BitMatrix {
  public:
    size_t rows = 0;
    size_t cols = 0;
    std::vector<uint64_t> data;  // row-major, word_cols() words per row

    BitMatrix() = default;
    BitMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * word_cols(c), 0) {}

    static size_t word_cols(size_t c) { return (c + 63) / 64; }
    size_t wc() const { return word_cols(cols); }

    bool get(size_t r, size_t c) const { return (data[r * wc() + (c >> 6)] >> (c & 63)) & 1; }

    void set(size_t r, size_t c, bool v) {
        uint64_t mask = uint64_t(1) << (c & 63);
        if (v) {
            data[r * wc() + (c >> 6)] |= mask;
        } else {
            data[r * wc() + (c >> 6)] &= ~mask;
        }
    }

    uint64_t* row(size_t r) { return data.data() + r * wc(); }
    const uint64_t* row(size_t r) const { return data.data() + r * wc(); }

    void xor_rows(size_t dst, size_t src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (size_t i = 0; i < wc(); i++) {
            d[i] ^= s[i];
        }
    }

    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        uint64_t* ra = row(a);
        uint64_t* rb = row(b);
        for (size_t i = 0; i < wc(); i++) {
            std::swap(ra[i], rb[i]);
        }
    }

    bool row_is_zero(size_t r) const {
        const uint64_t* p = row(r);
        for (size_t i = 0; i < wc(); i++) {
            if (p[i]) return false;
        }
        return true;
    }

    bool operator==(const BitMatrix& o) const {
        return rows == o.rows && cols == o.cols && data == o.data;
    }
};

struct RrefResult {
    BitMatrix reduced;
    size_t rank = 0;
    std::vector<size_t> pivots;        // pivot column per pivot row
    std::vector<size_t> row_order;     // row_order[i] = original index of reduced row i
};

// Reduced row echelon form of m, searching pivots over exactly the listed
// columns in the given order. An empty list means no pivot search at all
// (rank 0). Rows are fully reduced above and below each pivot; the row space
// is preserved. Rows that end up with no pivot among the searched columns may
// still be nonzero on the remaining columns; they sit below the pivot rows.
inline RrefResult rref_rank(const BitMatrix& m, const std::vector<size_t>& columns) {
    RrefResult res;
    res.reduced = m;
    res.row_order.resize(m.rows);
    for (size_t i = 0; i < m.rows; i++) {
        res.row_order[i] = i;
    }
    BitMatrix& a = res.reduced;
    size_t r = 0;
    for (size_t col : columns) {
        if (r >= a.rows) break;
        if (col >= m.cols) {
            throw std::invalid_argument("rref_rank: column index out of range");
        }
        for (size_t i = r; i < a.rows; i++) {
            if (a.get(i, col)) {
                a.swap_rows(r, i);
                std::swap(res.row_order[r], res.row_order[i]);
                for (size_t j = 0; j < a.rows; j++) {
                    if (j != r && a.get(j, col)) {
                        a.xor_rows(j, r);
                    }
                }
                res.pivots.push_back(col);
                r++;
                break;
            }
        }
    }
    res.rank = r;
    return res;
}

// Reduced row echelon form over all columns in natural order.
inline RrefResult rref_rank(const BitMatrix& m) {
    std::vector<size_t> all(m.cols);
    for (size_t c = 0; c < m.cols; c++) all[c] = c;
    return rref_rank(m, all);
}

// Rank of m restricted to the given columns (rank of the column submatrix).
inline size_t rank_on_columns(const BitMatrix& m, const std::vector<size_t>& columns) {
    return rref_rank(m, columns).rank;
}

// Row space comparison: every row of b is in the row space of a and vice versa.
inline bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols != b.cols) return false;
    auto ra = rref_rank(a);
    auto rb = rref_rank(b);
    if (ra.rank != rb.rank) return false;
    // With full reduction the nonzero rows of the RREF are canonical.
    for (size_t i = 0; i < ra.rank; i++) {
        const uint64_t* pa = ra.reduced.row(i);
        const uint64_t* pb = rb.reduced.row(i);
        for (size_t w = 0; w < ra.reduced.wc(); w++) {
            if (pa[w] != pb[w]) return false;
        }
    }
    return true;
}

// Solves x * m = target (x is a row vector selecting rows of m). Returns the
// selector over m's rows, or nullopt if target is outside the row space.
inline std::optional<std::vector<uint8_t>> solve_row_combination(
    const BitMatrix& m, const std::vector<uint8_t>& target) {
    if (target.size() != m.cols) {
        throw std::invalid_argument("solve_row_combination: size mismatch");
    }
    // Augment with an identity tracking block: eliminate [m | I], reduce the
    // target with the same operations, read off the combination.
    BitMatrix aug(m.rows, m.cols + m.rows);
    for (size_t i = 0; i < m.rows; i++) {
        for (size_t w = 0; w < m.wc(); w++) {
            aug.row(i)[w] = m.row(i)[w];
        }
        aug.set(i, m.cols + i, true);
    }
    std::vector<size_t> cols(m.cols);
    for (size_t c = 0; c < m.cols; c++) {
        cols[c] = c;
    }
    auto rr = rref_rank(aug, cols);
    std::vector<uint8_t> t = target;
    std::vector<uint8_t> combo(m.rows, 0);
    for (size_t i = 0; i < rr.rank; i++) {
        size_t pc = rr.pivots[i];
        if (t[pc]) {
            for (size_t c = 0; c < m.cols; c++) {
                t[c] ^= rr.reduced.get(i, c) ? 1 : 0;
            }
            for (size_t j = 0; j < m.rows; j++) {
                combo[j] ^= rr.reduced.get(i, m.cols + j) ? 1 : 0;
            }
        }
    }
    for (size_t c = 0; c < m.cols; c++) {
        if (t[c]) return std::nullopt;
    }
    return combo;
}

// Basis of the kernel {v : v * m^T = 0}, i.e. row vectors v with m * v^T = 0
// when m is read as constraints-by-variables. Variables are m's columns.
inline std::vector<std::vector<uint8_t>> kernel_basis(const BitMatrix& m) {
    auto rr = rref_rank(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : rr.pivots) {
        is_pivot[c] = true;
    }
    std::vector<std::vector<uint8_t>> basis;
    for (size_t free = 0; free < m.cols; free++) {
        if (is_pivot[free]) continue;
        std::vector<uint8_t> v(m.cols, 0);
        v[free] = 1;
        for (size_t i = 0; i < rr.rank; i++) {
            if (rr.reduced.get(i, free)) {
                v[rr.pivots[i]] = 1;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace holocode
