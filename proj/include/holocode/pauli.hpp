#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace holocode {

// Pauli operators in binary symplectic form.
//
// A PauliString stores i^phase * prod_q X_q^x[q] * Z_q^z[q], with the X factor
// written to the left of the Z factor on every qubit. The phase exponent is a
// power of i, kept mod 4. With this convention X*Z = -iY, i.e. the Hermitian
// single-qubit Y is stored as (x=1, z=1, phase=1).
//
// Bits are packed 64 per word, block layout: all x words, then all z words.
// Interleaved (x_1, z_1, x_2, z_2, ...) appears only in import/export code.

enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

class PauliString {
  public:
    size_t num_qubits = 0;
    uint8_t phase = 0;  // exponent of i, mod 4
    std::vector<uint64_t> x;
    std::vector<uint64_t> z;

    PauliString() = default;

    explicit PauliString(size_t n) : num_qubits(n), x(words(n), 0), z(words(n), 0) {}

    static size_t words(size_t n) { return (n + 63) / 64; }

    static PauliString identity(size_t n) { return PauliString(n); }

    // Single-qubit Pauli embedded at position q. The Hermitian sign convention
    // is used: single(n, q, Y) has phase exponent 1 so that it equals +Y.
    static PauliString single(size_t n, size_t q, Pauli p) {
        PauliString r(n);
        r.set(q, p);
        return r;
    }

    // Parses strings like "XZZXI", "-YIXZ", "+ZZ", "iXX", "-iZY".
    static PauliString from_string(const std::string& s) {
        size_t pos = 0;
        uint8_t ph = 0;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') {
                ph = 2;
            }
            pos++;
        }
        if (pos < s.size() && s[pos] == 'i') {
            ph = (ph + 1) & 3;
            pos++;
        }
        PauliString r(s.size() - pos);
        for (size_t q = 0; pos < s.size(); pos++, q++) {
            switch (s[pos]) {
                case 'I':
                case '_':
                    break;
                case 'X':
                    r.set(q, Pauli::X);
                    break;
                case 'Z':
                    r.set(q, Pauli::Z);
                    break;
                case 'Y':
                    r.set(q, Pauli::Y);
                    break;
                default:
                    throw std::invalid_argument("bad Pauli character in '" + s + "'");
            }
        }
        r.phase = (r.phase + ph) & 3;
        return r;
    }

    bool x_bit(size_t q) const { return (x[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(size_t q) const { return (z[q >> 6] >> (q & 63)) & 1; }

    Pauli get(size_t q) const {
        return static_cast<Pauli>((x_bit(q) ? 1 : 0) | (z_bit(q) ? 2 : 0));
    }

    // Sets qubit q to the Hermitian Pauli p, adjusting the phase so the stored
    // operator picks up exactly +p at that site (assumes the site was I).
    void set(size_t q, Pauli p) {
        if (q >= num_qubits) {
            throw std::invalid_argument("qubit index out of range");
        }
        uint64_t mask = uint64_t(1) << (q & 63);
        bool had_y = x_bit(q) && z_bit(q);
        x[q >> 6] &= ~mask;
        z[q >> 6] &= ~mask;
        if (had_y) {
            phase = (phase + 3) & 3;
        }
        if (p == Pauli::X || p == Pauli::Y) {
            x[q >> 6] |= mask;
        }
        if (p == Pauli::Z || p == Pauli::Y) {
            z[q >> 6] |= mask;
        }
        if (p == Pauli::Y) {
            phase = (phase + 1) & 3;
        }
    }

    size_t weight() const {
        size_t w = 0;
        for (size_t i = 0; i < x.size(); i++) {
            w += __builtin_popcountll(x[i] | z[i]);
        }
        return w;
    }

    bool is_identity_bits() const {
        for (size_t i = 0; i < x.size(); i++) {
            if (x[i] | z[i]) {
                return false;
            }
        }
        return true;
    }

    size_t count_y() const {
        size_t w = 0;
        for (size_t i = 0; i < x.size(); i++) {
            w += __builtin_popcountll(x[i] & z[i]);
        }
        return w;
    }

    // Hermitian iff the coefficient in front of the Hermitian base operator
    // (which carries i^count_y by itself) is +-1.
    bool is_hermitian() const { return ((phase - count_y()) & 1) == 0; }

    // +1 or -1 for Hermitian strings.
    int sign() const {
        if (!is_hermitian()) {
            throw std::runtime_error("sign() of a non-Hermitian Pauli string");
        }
        return ((phase - count_y()) & 3) == 0 ? +1 : -1;
    }

    void negate() { phase = (phase + 2) & 3; }

    // Complex conjugate: X, Z are real, Y is imaginary, i^p conjugates to i^-p.
    PauliString conj() const {
        PauliString r = *this;
        r.phase = (4 - phase) & 3;
        return r;
    }

    bool commutes_with(const PauliString& other) const {
        return symplectic_product(*this, other) == 0;
    }

    // Symplectic inner product: 0 if the operators commute, 1 otherwise.
    static int symplectic_product(const PauliString& a, const PauliString& b) {
        if (a.num_qubits != b.num_qubits) {
            throw std::invalid_argument("symplectic_product: qubit count mismatch");
        }
        uint64_t acc = 0;
        for (size_t i = 0; i < a.x.size(); i++) {
            acc ^= (a.x[i] & b.z[i]) ^ (a.z[i] & b.x[i]);
        }
        return __builtin_popcountll(acc) & 1;
    }

    // Group product with exact phase tracking. Moving b's X block past a's Z
    // block contributes (-1)^|a.z & b.x|.
    PauliString operator*(const PauliString& other) const {
        if (num_qubits != other.num_qubits) {
            throw std::invalid_argument("PauliString product: qubit count mismatch");
        }
        PauliString r(num_qubits);
        size_t anti = 0;
        for (size_t i = 0; i < x.size(); i++) {
            anti += __builtin_popcountll(z[i] & other.x[i]);
            r.x[i] = x[i] ^ other.x[i];
            r.z[i] = z[i] ^ other.z[i];
        }
        r.phase = (phase + other.phase + 2 * (anti & 1)) & 3;
        return r;
    }

    PauliString& operator*=(const PauliString& other) {
        *this = *this * other;
        return *this;
    }

    bool operator==(const PauliString& other) const {
        return num_qubits == other.num_qubits && phase == other.phase && x == other.x &&
               z == other.z;
    }
    bool operator!=(const PauliString& other) const { return !(*this == other); }

    // Same x/z bits, phase ignored.
    bool same_bits(const PauliString& other) const {
        return num_qubits == other.num_qubits && x == other.x && z == other.z;
    }

    // Tensor product; other's qubits are appended after ours.
    PauliString tensor(const PauliString& other) const {
        PauliString r(num_qubits + other.num_qubits);
        for (size_t q = 0; q < num_qubits; q++) {
            if (x_bit(q)) r.x[q >> 6] |= uint64_t(1) << (q & 63);
            if (z_bit(q)) r.z[q >> 6] |= uint64_t(1) << (q & 63);
        }
        for (size_t q = 0; q < other.num_qubits; q++) {
            size_t t = num_qubits + q;
            if (other.x_bit(q)) r.x[t >> 6] |= uint64_t(1) << (t & 63);
            if (other.z_bit(q)) r.z[t >> 6] |= uint64_t(1) << (t & 63);
        }
        r.phase = (phase + other.phase) & 3;
        return r;
    }

    // Keeps the qubits listed in `keep`, in that order. The dropped qubits
    // must all be identity (the phase is carried over unchanged).
    PauliString restricted_to(const std::vector<size_t>& keep) const {
        PauliString r(keep.size());
        std::vector<bool> kept(num_qubits, false);
        for (size_t j = 0; j < keep.size(); j++) {
            kept[keep[j]] = true;
            Pauli p = get(keep[j]);
            if (p != Pauli::I) {
                uint64_t mask = uint64_t(1) << (j & 63);
                if (p == Pauli::X || p == Pauli::Y) r.x[j >> 6] |= mask;
                if (p == Pauli::Z || p == Pauli::Y) r.z[j >> 6] |= mask;
            }
        }
        for (size_t q = 0; q < num_qubits; q++) {
            if (!kept[q] && get(q) != Pauli::I) {
                throw std::runtime_error("restricted_to: dropped qubit has support");
            }
        }
        r.phase = phase;
        return r;
    }

    std::string str() const {
        std::string s;
        size_t yc = count_y();
        switch ((phase - yc) & 3) {
            case 0:
                break;
            case 1:
                s += "i";
                break;
            case 2:
                s += "-";
                break;
            case 3:
                s += "-i";
                break;
        }
        for (size_t q = 0; q < num_qubits; q++) {
            s += "IXZY"[static_cast<int>(get(q))];
        }
        return s;
    }
};

}  // namespace holocode
