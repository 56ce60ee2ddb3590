#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace opradius {

using Complex = std::complex<double>;

/// Largest supported dimension. Jacobi sweeps are O(n^3).
inline constexpr std::size_t kMaxDimension = 64;

/**
 * Dense square complex matrix, row-major. Stand-in for a bounded operator on
 * a finite-dimensional Hilbert space.
 *
 * Every constructed Matrix has 1 <= n <= kMaxDimension and finite entries.
 */
class Matrix {
public:
    /// n x n zero matrix.
    explicit Matrix(std::size_t n);

    /// Takes ownership of row-major entries; data.size() must be n*n.
    Matrix(std::size_t n, std::vector<Complex> data);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Complex> entries);
    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_;
    std::vector<Complex> data_;
};

Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(Complex c, const Matrix& a);
Matrix mul(const Matrix& a, const Matrix& b);
/// Conjugate transpose.
Matrix adjoint(const Matrix& a);

inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return subtract(a, b); }
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }
inline Matrix operator*(Complex c, const Matrix& a) { return scale(c, a); }

/// Re(T) = (T + T*)/2 and Im(T) = (T - T*)/(2i); both Hermitian, T = Re + i Im.
struct CartesianParts {
    Matrix re;
    Matrix im;
};

CartesianParts cartesian_parts(const Matrix& t);

Complex trace(const Matrix& a);
/// Hilbert-Schmidt norm, sqrt(tr(A*A)).
double frobenius_norm(const Matrix& a);
double max_abs_entry(const Matrix& a);

/// ||A - A*||_F <= rel_tol * ||A||_F (with the zero matrix Hermitian).
bool is_hermitian(const Matrix& a, double rel_tol = 1e-12);

/// Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi.
/// Throws InvalidInput if H is not Hermitian within 1e-12 * ||H||_F and
/// NumericalError if 100 sweeps do not converge.
std::vector<double> hermitian_eigenvalues(const Matrix& h);

struct HermitianEigen {
    std::vector<double> values; // ascending
    Matrix vectors;             // column k belongs to values[k]
};

HermitianEigen hermitian_eigen(const Matrix& h);

/// Ascending singular values, sqrt of the eigenvalues of A*A with tiny
/// negative round-off clamped to zero.
std::vector<double> singular_values(const Matrix& a);

namespace detail {

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiRelTol = 1e-13;

/**
 * In-place cyclic Jacobi on an n x n Hermitian row-major buffer. On return
 * the diagonal of `a` holds the (unsorted) eigenvalues. If `vectors` is
 * non-empty it must hold n*n entries and is overwritten with the unitary
 * whose columns are the eigenvectors. Returns the sweep count.
 *
 * The caller guarantees the buffer is exactly Hermitian with real diagonal.
 */
int jacobi_hermitian(std::span<Complex> a, std::size_t n, std::span<Complex> vectors = {});

} // namespace detail

} // namespace opradius
