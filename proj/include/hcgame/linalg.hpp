#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcgame {

using Complex = std::complex<double>;

/// Operator-level tolerance (squares, commutators, constraint residuals).
inline constexpr double kOperatorTol = 1e-9;
/// Tolerance on discarded imaginary parts of expectation values.
inline constexpr double kImagTol = 1e-10;
/// Hermiticity tolerance.
inline constexpr double kHermitianTol = 1e-12;
/// Largest total entry count of a dense matrix (a 4096 x 4096 operator).
inline constexpr size_t kMaxMatrixEntries = size_t{1} << 24;
/// Largest statevector length.
inline constexpr size_t kMaxStateLength = size_t{1} << 24;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(size_t dim) : dim_(dim), data_(checked_entries(dim)) {}

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : ComplexMatrix(rows.size()) {
        size_t r = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_) {
                throw std::invalid_argument("matrix literal is not square");
            }
            size_t c = 0;
            for (const Complex& v : row) {
                (*this)(r, c++) = v;
            }
            r++;
        }
    }

    static ComplexMatrix identity(size_t dim) {
        ComplexMatrix m(dim);
        for (size_t k = 0; k < dim; k++) {
            m(k, k) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> d) {
        ComplexMatrix m(d.size());
        for (size_t k = 0; k < d.size(); k++) {
            m(k, k) = d[k];
        }
        return m;
    }

    size_t dim() const { return dim_; }
    Complex& operator()(size_t r, size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(size_t r, size_t c) const { return data_[r * dim_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (size_t r = 0; r < dim_; r++) {
            for (size_t c = 0; c < dim_; c++) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same(o);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same(o);
        for (size_t k = 0; k < data_.size(); k++) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (Complex& v : data_) {
            v *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same(b);
        const size_t n = a.dim_;
        ComplexMatrix out(n);
        for (size_t r = 0; r < n; r++) {
            for (size_t k = 0; k < n; k++) {
                const Complex v = a(r, k);
                if (v == Complex{}) {
                    continue;
                }
                for (size_t c = 0; c < n; c++) {
                    out(r, c) += v * b(k, c);
                }
            }
        }
        return out;
    }

    /// Largest entrywise modulus of (a - b).
    friend double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.require_same(b);
        double worst = 0;
        for (size_t k = 0; k < a.data_.size(); k++) {
            worst = std::max(worst, std::abs(a.data_[k] - b.data_[k]));
        }
        return worst;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

   private:
    static size_t checked_entries(size_t dim) {
        if (dim == 0 || dim > 4096 || dim * dim > kMaxMatrixEntries) {
            throw std::length_error("matrix dimension " + std::to_string(dim) + " outside supported range");
        }
        return dim * dim;
    }

    void require_same(const ComplexMatrix& o) const {
        if (o.dim_ != dim_) {
            throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(dim_) + " vs " +
                                        std::to_string(o.dim_));
        }
    }

    size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Dense amplitude vector.
class StateVector {
   public:
    StateVector() = default;
    explicit StateVector(size_t dim) : amps_(check_length(dim)) {}
    explicit StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) { check_length(amps_.size()); }

    size_t dim() const { return amps_.size(); }
    Complex& operator[](size_t k) { return amps_[k]; }
    const Complex& operator[](size_t k) const { return amps_[k]; }
    std::span<const Complex> amplitudes() const { return amps_; }

    double norm() const {
        double s = 0;
        for (const Complex& a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    bool is_unit(double tol = kHermitianTol) const { return std::abs(norm() - 1.0) <= tol; }

    StateVector& operator+=(const StateVector& o) {
        require_same(o);
        for (size_t k = 0; k < amps_.size(); k++) {
            amps_[k] += o.amps_[k];
        }
        return *this;
    }
    StateVector& operator*=(Complex s) {
        for (Complex& a : amps_) {
            a *= s;
        }
        return *this;
    }

    /// <this|other>.
    Complex inner(const StateVector& o) const {
        require_same(o);
        Complex s{};
        for (size_t k = 0; k < amps_.size(); k++) {
            s += std::conj(amps_[k]) * o.amps_[k];
        }
        return s;
    }

   private:
    static size_t check_length(size_t n) {
        if (n == 0 || n > kMaxStateLength) {
            throw std::length_error("state length " + std::to_string(n) + " outside supported range");
        }
        return n;
    }

    void require_same(const StateVector& o) const {
        if (o.dim() != dim()) {
            throw std::invalid_argument("state dimension mismatch");
        }
    }

    std::vector<Complex> amps_;
};

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

/// Kronecker product; a acts on the more significant index.
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const size_t n = a.dim() * b.dim();
    if (n > 4096 || n * n > kMaxMatrixEntries) {
        throw std::length_error("tensor product exceeds the dense matrix cap");
    }
    ComplexMatrix out(n);
    for (size_t ar = 0; ar < a.dim(); ar++) {
        for (size_t ac = 0; ac < a.dim(); ac++) {
            const Complex v = a(ar, ac);
            for (size_t br = 0; br < b.dim(); br++) {
                for (size_t bc = 0; bc < b.dim(); bc++) {
                    out(ar * b.dim() + br, ac * b.dim() + bc) = v * b(br, bc);
                }
            }
        }
    }
    return out;
}

inline StateVector apply(const ComplexMatrix& m, const StateVector& psi) {
    if (m.dim() != psi.dim()) {
        throw std::invalid_argument("operator and state dimensions differ");
    }
    StateVector out(psi.dim());
    for (size_t r = 0; r < m.dim(); r++) {
        Complex s{};
        for (size_t c = 0; c < m.dim(); c++) {
            s += m(r, c) * psi[c];
        }
        out[r] = s;
    }
    return out;
}

/// Real <psi|M|psi> for Hermitian M.
inline double expectation(const ComplexMatrix& m, const StateVector& psi) {
    if (!is_hermitian(m)) {
        throw std::invalid_argument("expectation requires a Hermitian operator");
    }
    const Complex v = psi.inner(apply(m, psi));
    if (std::abs(v.imag()) > kImagTol) {
        throw std::domain_error("expectation has imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

/// M^k by repeated squaring; M^0 = I.
inline ComplexMatrix matpow(const ComplexMatrix& m, unsigned k) {
    if (k > 64) {
        throw std::invalid_argument("matpow exponent capped at 64");
    }
    ComplexMatrix result = ComplexMatrix::identity(m.dim());
    ComplexMatrix base = m;
    while (k > 0) {
        if (k & 1U) {
            result = result * base;
        }
        k >>= 1U;
        if (k > 0) {
            base = base * base;
        }
    }
    return result;
}

/// Hermitian with M^2 = I.
inline bool is_reflection(const ComplexMatrix& m) {
    return is_hermitian(m) && max_abs_diff(m * m, ComplexMatrix::identity(m.dim())) <= kOperatorTol;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

/// Applies a 2x2 operator to qubit `q` (1-based, qubit 1 most significant) of an
/// n-qubit state without forming the full operator.
inline StateVector apply_single_qubit(const ComplexMatrix& u, const StateVector& psi, int n, int q) {
    if (u.dim() != 2) {
        throw std::invalid_argument("single-qubit operator must be 2x2");
    }
    if (psi.dim() != (size_t{1} << n) || q < 1 || q > n) {
        throw std::invalid_argument("qubit index or state length inconsistent");
    }
    const size_t stride = size_t{1} << (n - q);
    StateVector out(psi.dim());
    for (size_t k = 0; k < psi.dim(); k++) {
        if (k & stride) {
            continue;
        }
        const Complex a0 = psi[k];
        const Complex a1 = psi[k | stride];
        out[k] = u(0, 0) * a0 + u(0, 1) * a1;
        out[k | stride] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return out;
}

/// Embeds a 2x2 operator at qubit q of an n-qubit register as a dense 2^n matrix.
inline ComplexMatrix embed_single_qubit(const ComplexMatrix& u, int n, int q) {
    ComplexMatrix out = q == 1 ? u : ComplexMatrix::identity(2);
    for (int k = 2; k <= n; k++) {
        out = tensor(out, k == q ? u : ComplexMatrix::identity(2));
    }
    return out;
}

}  // namespace hcgame
