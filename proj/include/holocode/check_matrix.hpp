#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "holocode/bitmat.hpp"
#include "holocode/pauli.hpp"

namespace holocode {

// A list of signed Pauli rows acting on a fixed number of qubits. Used for
// stabiliser generators, extracted checks, and decoder parity checks.
class CheckMatrix {
  public:
    size_t num_qubits = 0;
    std::vector<PauliString> rows;

    CheckMatrix() = default;
    explicit CheckMatrix(size_t n) : num_qubits(n) {}

    void push(PauliString p) {
        if (p.num_qubits != num_qubits) {
            throw std::invalid_argument("CheckMatrix: row qubit count mismatch");
        }
        rows.push_back(std::move(p));
    }

    size_t num_rows() const { return rows.size(); }

    // Binary symplectic matrix, block layout: columns [0, n) hold x bits,
    // columns [n, 2n) hold z bits. Phases are dropped.
    BitMatrix to_bits() const {
        BitMatrix m(rows.size(), 2 * num_qubits);
        for (size_t i = 0; i < rows.size(); i++) {
            for (size_t q = 0; q < num_qubits; q++) {
                if (rows[i].x_bit(q)) m.set(i, q, true);
                if (rows[i].z_bit(q)) m.set(i, num_qubits + q, true);
            }
        }
        return m;
    }

    size_t rank() const { return rref_rank(to_bits()).rank; }

    bool same_row_space_as(const CheckMatrix& other) const {
        if (num_qubits != other.num_qubits) return false;
        return same_row_space(to_bits(), other.to_bits());
    }

    bool all_commute() const {
        for (size_t i = 0; i < rows.size(); i++) {
            for (size_t j = i + 1; j < rows.size(); j++) {
                if (!rows[i].commutes_with(rows[j])) return false;
            }
        }
        return true;
    }

    // Membership of p's bit pattern in the row space, ignoring signs.
    bool contains_bits(const PauliString& p) const {
        CheckMatrix probe(num_qubits);
        probe.rows.push_back(p);
        BitMatrix target = probe.to_bits();
        std::vector<uint8_t> t(2 * num_qubits);
        for (size_t c = 0; c < 2 * num_qubits; c++) {
            t[c] = target.get(0, c);
        }
        return solve_row_combination(to_bits(), t).has_value();
    }

    // The exact group element matching p's bits, or throws if absent. Signs
    // come out of the actual product of generator rows.
    PauliString element_matching_bits(const PauliString& p) const {
        CheckMatrix probe(num_qubits);
        probe.rows.push_back(p);
        BitMatrix target = probe.to_bits();
        std::vector<uint8_t> t(2 * num_qubits);
        for (size_t c = 0; c < 2 * num_qubits; c++) {
            t[c] = target.get(0, c);
        }
        auto combo = solve_row_combination(to_bits(), t);
        if (!combo) {
            throw std::runtime_error("element_matching_bits: not in the row space");
        }
        PauliString acc = PauliString::identity(num_qubits);
        for (size_t i = 0; i < rows.size(); i++) {
            if ((*combo)[i]) acc *= rows[i];
        }
        return acc;
    }

    // Text format: one header line "m n", then m rows of 2n whitespace
    // separated 0/1 entries, x block first, z block second.
    std::string to_text() const {
        std::ostringstream out;
        out << rows.size() << " " << num_qubits << "\n";
        for (const auto& r : rows) {
            for (size_t q = 0; q < num_qubits; q++) {
                out << (r.x_bit(q) ? 1 : 0) << (q + 1 < num_qubits ? " " : "");
            }
            for (size_t q = 0; q < num_qubits; q++) {
                out << " " << (r.z_bit(q) ? 1 : 0);
            }
            out << "\n";
        }
        return out.str();
    }

    static CheckMatrix from_text(const std::string& text) {
        std::istringstream in(text);
        size_t m = 0, n = 0;
        if (!(in >> m >> n)) {
            throw std::runtime_error("CheckMatrix::from_text: bad header");
        }
        CheckMatrix cm(n);
        for (size_t i = 0; i < m; i++) {
            PauliString p(n);
            for (size_t q = 0; q < 2 * n; q++) {
                int b = 0;
                if (!(in >> b) || (b != 0 && b != 1)) {
                    throw std::runtime_error("CheckMatrix::from_text: bad entry");
                }
                if (b) {
                    size_t qq = q % n;
                    uint64_t mask = uint64_t(1) << (qq & 63);
                    if (q < n) {
                        p.x[qq >> 6] |= mask;
                    } else {
                        p.z[qq >> 6] |= mask;
                    }
                }
            }
            cm.rows.push_back(std::move(p));
        }
        return cm;
    }
};

}  // namespace holocode
