#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isomono {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

struct Tolerances {
    double sep = 1e-8;       // distinctness of poles, nodes and leading times
    double res = 1e-10;      // residue-sum constraint
    double trim = 1e-13;     // relative coefficient trimming
    double fd_eps = 1e-6;    // finite-difference step
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a rational function is evaluated at one of its poles.
class PoleEvaluationError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, int pivot)
        : Error(what), pivot_index(pivot) {}
    int pivot_index;
};

// Leading times of a pole coincide, so the Toeplitz systems are singular.
class RamifiedPoleError : public Error {
public:
    using Error::Error;
};

class NodeCollisionError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace isomono
