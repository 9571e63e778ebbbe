#pragma once

// Dense complex-matrix reference implementations for small qubit counts.
// Everything here is brute force on 2^n amplitudes and serves as an
// independent oracle for the bit-level stabiliser code paths.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "holocode/pauli.hpp"
#include "holocode/tableau.hpp"

namespace holocode::testing {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

inline Mat zeros(size_t rows, size_t cols) {
    return Mat(rows, std::vector<cplx>(cols, cplx(0, 0)));
}

inline Mat dense_identity(size_t d) {
    Mat m = zeros(d, d);
    for (size_t i = 0; i < d; i++) m[i][i] = 1;
    return m;
}

// Qubit q maps to bit q of the basis index. P = i^phase * prod_q X^x Z^z, so
// P|b> = i^phase * (-1)^{|z & b|} |b xor x>.
inline Mat dense_pauli(const PauliString& p) {
    if (p.num_qubits > 12) {
        throw std::invalid_argument("dense_pauli: too many qubits");
    }
    size_t d = size_t(1) << p.num_qubits;
    uint64_t xmask = 0, zmask = 0;
    for (size_t q = 0; q < p.num_qubits; q++) {
        if (p.x_bit(q)) xmask |= uint64_t(1) << q;
        if (p.z_bit(q)) zmask |= uint64_t(1) << q;
    }
    static const cplx unit[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    Mat m = zeros(d, d);
    for (size_t b = 0; b < d; b++) {
        int par = __builtin_parityll(zmask & b);
        m[b ^ xmask][b] = unit[p.phase] * (par ? cplx(-1, 0) : cplx(1, 0));
    }
    return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    size_t n = a.size(), k = b.size(), m = b[0].size();
    Mat c = zeros(n, m);
    for (size_t i = 0; i < n; i++) {
        for (size_t l = 0; l < k; l++) {
            if (a[i][l] == cplx(0, 0)) continue;
            for (size_t j = 0; j < m; j++) {
                c[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    return c;
}

inline Mat dagger(const Mat& a) {
    Mat c = zeros(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < a[0].size(); j++) {
            c[j][i] = std::conj(a[i][j]);
        }
    }
    return c;
}

inline double max_abs_diff(const Mat& a, const Mat& b) {
    double worst = 0;
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < a[0].size(); j++) {
            worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
        }
    }
    return worst;
}

// Unnormalised projector prod_i (I + g_i)/2 onto the joint +1 eigenspace.
inline Mat stabiliser_projector(const std::vector<PauliString>& generators, size_t num_qubits) {
    size_t d = size_t(1) << num_qubits;
    Mat rho = dense_identity(d);
    for (const auto& g : generators) {
        Mat grho = matmul(dense_pauli(g), rho);
        for (size_t i = 0; i < d; i++) {
            for (size_t j = 0; j < d; j++) {
                rho[i][j] = 0.5 * (rho[i][j] + grho[i][j]);
            }
        }
    }
    return rho;
}

inline double trace_real(const Mat& m) {
    cplx t = 0;
    for (size_t i = 0; i < m.size(); i++) t += m[i][i];
    return t.real();
}

inline Mat normalised_density(const std::vector<PauliString>& generators, size_t num_qubits) {
    Mat rho = stabiliser_projector(generators, num_qubits);
    double t = trace_real(rho);
    if (t <= 1e-12) {
        throw std::runtime_error("normalised_density: inconsistent generator set");
    }
    for (auto& row : rho) {
        for (auto& v : row) v /= t;
    }
    return rho;
}

// State vector of a pure stabiliser state (n independent generators).
inline std::vector<cplx> dense_state(const StabiliserState& st) {
    if (!st.is_pure()) {
        throw std::invalid_argument("dense_state: state is not pure");
    }
    Mat rho = normalised_density(st.generators, st.num_qubits);
    size_t d = rho.size();
    size_t best = 0;
    for (size_t j = 1; j < d; j++) {
        if (rho[j][j].real() > rho[best][best].real()) best = j;
    }
    if (rho[best][best].real() <= 1e-12) {
        throw std::runtime_error("dense_state: zero projector");
    }
    // column `best` of |psi><psi| is psi * conj(psi_best); pick psi_best real
    double norm = std::sqrt(rho[best][best].real());
    std::vector<cplx> psi(d);
    for (size_t i = 0; i < d; i++) {
        psi[i] = rho[i][best] / norm;
    }
    return psi;
}

// Renyi-2 entropy of the region, in bits. Stabiliser spectra are flat, so
// this equals the von Neumann value and is a near-integer.
inline double oracle_region_entropy(const std::vector<PauliString>& generators,
                                    size_t num_qubits, const std::vector<size_t>& region) {
    Mat rho = normalised_density(generators, num_qubits);
    std::vector<size_t> comp;
    {
        std::vector<bool> in_region(num_qubits, false);
        for (size_t q : region) in_region[q] = true;
        for (size_t q = 0; q < num_qubits; q++) {
            if (!in_region[q]) comp.push_back(q);
        }
    }
    size_t da = size_t(1) << region.size();
    size_t dc = size_t(1) << comp.size();
    auto compose = [&](size_t a, size_t c) {
        size_t b = 0;
        for (size_t k = 0; k < region.size(); k++) {
            if ((a >> k) & 1) b |= size_t(1) << region[k];
        }
        for (size_t k = 0; k < comp.size(); k++) {
            if ((c >> k) & 1) b |= size_t(1) << comp[k];
        }
        return b;
    };
    Mat rho_a = zeros(da, da);
    for (size_t a = 0; a < da; a++) {
        for (size_t a2 = 0; a2 < da; a2++) {
            cplx sum = 0;
            for (size_t c = 0; c < dc; c++) {
                sum += rho[compose(a, c)][compose(a2, c)];
            }
            rho_a[a][a2] = sum;
        }
    }
    double purity = 0;
    for (size_t a = 0; a < da; a++) {
        for (size_t a2 = 0; a2 < da; a2++) {
            purity += (rho_a[a][a2] * std::conj(rho_a[a][a2])).real();
        }
    }
    return -std::log2(purity);
}

// Encoding isometry of a code state ordered [boundary][bulk]: V maps the
// 2^k logical space into the 2^nb boundary space, scaled so V^dag V = I.
inline Mat isometry_from_state(const StabiliserState& st, size_t n_boundary) {
    size_t k = st.num_qubits - n_boundary;
    auto psi = dense_state(st);
    size_t db = size_t(1) << n_boundary;
    size_t dk = size_t(1) << k;
    double scale = std::sqrt(static_cast<double>(dk));
    Mat v = zeros(db, dk);
    for (size_t beta = 0; beta < dk; beta++) {
        for (size_t b = 0; b < db; b++) {
            v[b][beta] = scale * psi[b | (beta << n_boundary)];
        }
    }
    return v;
}

}  // namespace holocode::testing
