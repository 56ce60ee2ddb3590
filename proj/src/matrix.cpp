#include "opradius/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opradius/errors.hpp"

namespace opradius {

namespace {

void check_dimension(std::size_t n) {
    if (n < 1 || n > kMaxDimension) {
        throw DimensionError("matrix dimension " + std::to_string(n) + " outside [1, " +
                             std::to_string(kMaxDimension) + "]");
    }
}

void check_finite(std::span<const Complex> data) {
    for (const Complex& z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidInput("matrix entry is not finite");
        }
    }
}

void check_same_size(const Matrix& a, const Matrix& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()) + ")");
    }
}

Matrix checked(Matrix m) {
    check_finite(m.data());
    return m;
}

/// (H + H*)/2 with an exactly real diagonal.
Matrix symmetrized(const Matrix& h) {
    const std::size_t n = h.size();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = Complex(h(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            out(i, j) = v;
            out(j, i) = std::conj(v);
        }
    }
    return out;
}

void require_hermitian(const Matrix& h) {
    if (!is_hermitian(h, 1e-12)) {
        throw InvalidInput("matrix is not Hermitian within 1e-12 relative tolerance");
    }
}

} // namespace

Matrix::Matrix(std::size_t n) : n_(n) {
    check_dimension(n);
    data_.assign(n * n, Complex(0.0, 0.0));
}

Matrix::Matrix(std::size_t n, std::vector<Complex> data) : n_(n), data_(std::move(data)) {
    check_dimension(n);
    if (data_.size() != n * n) {
        throw DimensionError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                             std::to_string(n * n));
    }
    check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> entries) {
    Matrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    check_finite(m.data());
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t n = rows.size();
    std::vector<Complex> data;
    data.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw DimensionError("from_rows: matrix is not square");
        }
        data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(n, std::move(data));
}

Matrix add(const Matrix& a, const Matrix& b) {
    check_same_size(a, b, "add");
    Matrix out(a.size());
    auto o = out.data();
    auto x = a.data();
    auto y = b.data();
    for (std::size_t k = 0; k < o.size(); ++k) {
        o[k] = x[k] + y[k];
    }
    return checked(std::move(out));
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    check_same_size(a, b, "subtract");
    Matrix out(a.size());
    auto o = out.data();
    auto x = a.data();
    auto y = b.data();
    for (std::size_t k = 0; k < o.size(); ++k) {
        o[k] = x[k] - y[k];
    }
    return checked(std::move(out));
}

Matrix scale(Complex c, const Matrix& a) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw InvalidInput("scale: scalar is not finite");
    }
    Matrix out(a.size());
    auto o = out.data();
    auto x = a.data();
    for (std::size_t k = 0; k < o.size(); ++k) {
        o[k] = c * x[k];
    }
    return checked(std::move(out));
}

Matrix mul(const Matrix& a, const Matrix& b) {
    check_same_size(a, b, "mul");
    const std::size_t n = a.size();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return checked(std::move(out));
}

Matrix adjoint(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

CartesianParts cartesian_parts(const Matrix& t) {
    const std::size_t n = t.size();
    Matrix re(n);
    Matrix im(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex tij = t(i, j);
            const Complex tji = std::conj(t(j, i));
            re(i, j) = 0.5 * (tij + tji);
            // (x - y) / (2i) = -i (x - y) / 2
            const Complex d = 0.5 * (tij - tji);
            im(i, j) = Complex(d.imag(), -d.real());
        }
    }
    return {std::move(re), std::move(im)};
}

Complex trace(const Matrix& a) {
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a(i, i);
    }
    return s;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) {
        s += std::norm(z);
    }
    if (s >= 1e-280 || (s == 0.0 && max_abs_entry(a) == 0.0)) {
        return std::sqrt(s);
    }
    // Squares underflowed; rescale by a power of two.
    const int e = std::ilogb(max_abs_entry(a));
    double r = 0.0;
    for (const Complex& z : a.data()) {
        r += std::norm(std::ldexp(1.0, -e) * z);
    }
    return std::ldexp(std::sqrt(r), e);
}

double max_abs_entry(const Matrix& a) {
    double m = 0.0;
    for (const Complex& z : a.data()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

bool is_hermitian(const Matrix& a, double rel_tol) {
    const std::size_t n = a.size();
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            diff += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    return std::sqrt(diff) <= rel_tol * frobenius_norm(a);
}

namespace detail {

int jacobi_hermitian(std::span<Complex> a, std::size_t n, std::span<Complex> vectors) {
    const bool want_vectors = !vectors.empty();
    if (want_vectors) {
        std::fill(vectors.begin(), vectors.end(), Complex(0.0, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            vectors[i * n + i] = 1.0;
        }
    }

    double total = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) {
        total += std::norm(a[k]);
    }
    const double threshold = kJacobiRelTol * std::sqrt(total);

    double off = 0.0;
    for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
        off = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                off += std::norm(a[i * n + j]);
            }
        }
        off = std::sqrt(2.0 * off);
        if (off <= threshold) {
            return sweep;
        }
        if (sweep == kJacobiMaxSweeps) {
            break;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a[p * n + q];
                const double r = std::abs(apq);
                if (r == 0.0) {
                    continue;
                }
                const Complex phase_conj = std::conj(apq) / r;
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();

                // Real symmetric rotation on [[app, r], [r, aqq]] after the
                // phase change diag(1, conj(phase)).
                const double theta = (aqq - app) / (2.0 * r);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex g_qp = -s * phase_conj; // G(q, p)
                const Complex g_qq = c * phase_conj;  // G(q, q)

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const Complex akp = a[k * n + p];
                    const Complex akq = a[k * n + q];
                    const Complex nkp = c * akp + akq * g_qp;
                    const Complex nkq = s * akp + akq * g_qq;
                    a[k * n + p] = nkp;
                    a[k * n + q] = nkq;
                    a[p * n + k] = std::conj(nkp);
                    a[q * n + k] = std::conj(nkq);
                }
                a[p * n + p] = Complex(app - t * r, 0.0);
                a[q * n + q] = Complex(aqq + t * r, 0.0);
                a[p * n + q] = Complex(0.0, 0.0);
                a[q * n + p] = Complex(0.0, 0.0);

                if (want_vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const Complex vkp = vectors[k * n + p];
                        const Complex vkq = vectors[k * n + q];
                        vectors[k * n + p] = c * vkp + vkq * g_qp;
                        vectors[k * n + q] = s * vkp + vkq * g_qq;
                    }
                }
            }
        }
    }
    const double residual = total > 0.0 ? off / std::sqrt(total) : off;
    throw NumericalError("Jacobi eigensolver did not converge after " + std::to_string(kJacobiMaxSweeps) +
                             " sweeps (relative off-diagonal mass " + std::to_string(residual) + ")",
                         residual);
}

} // namespace detail

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
    require_hermitian(h);
    Matrix work = symmetrized(h);
    const std::size_t n = work.size();
    detail::jacobi_hermitian(work.data(), n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = work(i, i).real();
    }
    std::sort(values.begin(), values.end());
    return values;
}

HermitianEigen hermitian_eigen(const Matrix& h) {
    require_hermitian(h);
    Matrix work = symmetrized(h);
    const std::size_t n = work.size();
    Matrix vectors(n);
    detail::jacobi_hermitian(work.data(), n, vectors.data());

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return work(x, x).real() < work(y, y).real(); });

    HermitianEigen out{std::vector<double>(n), Matrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = work(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) = vectors(i, order[k]);
        }
    }
    return out;
}

std::vector<double> singular_values(const Matrix& a) {
    const Matrix gram = mul(adjoint(a), a);
    std::vector<double> values = hermitian_eigenvalues(gram);
    const double floor = -1e-12 * std::max(frobenius_norm(gram), 1e-300);
    for (double& v : values) {
        if (v < 0.0) {
            if (v < floor) {
                throw NumericalError("A*A has a significantly negative eigenvalue", v);
            }
            v = 0.0;
        }
        v = std::sqrt(v);
    }
    return values;
}

} // namespace opradius
