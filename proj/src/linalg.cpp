#include "isomono/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace isomono {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::lower_toeplitz(const cvec& first_column) {
    const int n = static_cast<int>(first_column.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) m(i, j) = first_column[i - j];
    return m;
}

cvec ComplexMatrix::apply(const cvec& x) const {
    cvec y(static_cast<size_t>(rows_), 0.0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (cplx a : data_) m = std::max(m, std::abs(a));
    return m;
}

double ComplexMatrix::inf_norm() const {
    double m = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        m = std::max(m, s);
    }
    return m;
}

double inf_norm(const cvec& v) {
    double m = 0.0;
    for (cplx a : v) m = std::max(m, std::abs(a));
    return m;
}

LUDecomposition lu_decompose(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw Error("LU decomposition needs a square matrix");
    const int n = a.rows();
    LUDecomposition f{a, std::vector<int>(static_cast<size_t>(n)), 1};
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    const double floor = 1e-12 * a.max_abs();
    ComplexMatrix& m = f.lu;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > best) {
                best = std::abs(m(i, k));
                p = i;
            }
        }
        if (best <= floor || best == 0.0)
            throw SingularMatrixError("singular matrix at pivot " + std::to_string(k), k);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        for (int i = k + 1; i < n; ++i) {
            cplx l = m(i, k) / m(k, k);
            m(i, k) = l;
            for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    return f;
}

cvec lu_solve(const LUDecomposition& f, const cvec& b) {
    const int n = f.lu.rows();
    cvec x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

cvec dense_solve(const ComplexMatrix& a, const cvec& b) {
    if ((int)b.size() != a.rows()) throw Error("right-hand side size mismatch");
    if (a.rows() == 0) return {};
    return lu_solve(lu_decompose(a), b);
}

cplx determinant(const ComplexMatrix& a) {
    if (a.rows() == 0) return 1.0;
    LUDecomposition f;
    try {
        f = lu_decompose(a);
    } catch (const SingularMatrixError&) {
        return 0.0;
    }
    cplx d = static_cast<double>(f.sign);
    for (int i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

cvec lower_toeplitz_solve(const cvec& first_column, const cvec& rhs, double tol_sep) {
    const size_t n = rhs.size();
    if (first_column.size() != n) throw Error("Toeplitz column and right-hand side differ in size");
    if (n == 0) return {};
    if (std::abs(first_column[0]) <= tol_sep)
        throw RamifiedPoleError("leading entry of the Toeplitz system vanishes");
    cvec x(n);
    for (size_t i = 0; i < n; ++i) {
        cplx s = rhs[i];
        for (size_t j = 0; j < i; ++j) s -= first_column[i - j] * x[j];
        x[i] = s / first_column[0];
    }
    return x;
}

}  // namespace isomono
