#pragma once

#include "isomono/types.hpp"

namespace isomono {

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i * cols_ + j)]; }
    cplx operator()(int i, int j) const { return data_[static_cast<size_t>(i * cols_ + j)]; }
    const cvec& entries() const { return data_; }

    static ComplexMatrix identity(int n);
    static ComplexMatrix lower_toeplitz(const cvec& first_column);

    cvec apply(const cvec& x) const;
    double max_abs() const;
    double inf_norm() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    cvec data_;
};

struct LUDecomposition {
    ComplexMatrix lu;
    std::vector<int> perm;
    int sign = 1;
};

// Partial pivoting; throws SingularMatrixError when a pivot falls below 1e-12 * max|A|.
LUDecomposition lu_decompose(const ComplexMatrix& a);
cvec lu_solve(const LUDecomposition& f, const cvec& b);

cvec dense_solve(const ComplexMatrix& a, const cvec& b);
cplx determinant(const ComplexMatrix& a);

// Forward substitution for the lower-triangular Toeplitz matrix with the given first column.
cvec lower_toeplitz_solve(const cvec& first_column, const cvec& rhs, double tol_sep = 1e-8);

double inf_norm(const cvec& v);

}  // namespace isomono
