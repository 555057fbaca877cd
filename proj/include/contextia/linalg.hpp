// linalg.hpp: dense complex matrices, Hermitian eigensolver, projections and
// the projection lattice (meet / join).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace contextia {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Numerical thresholds shared by every public operation. `projection` bounds
// the max-entry residuals of P^2 - P and P - P*; `rank` decides whether an
// eigenvalue (or squared singular value) counts as nonzero.
struct Tolerances {
    double projection = 1e-10;
    double rank = 1e-8;
};

// Throws ValidationError unless M is square, non-empty and finite.
void require_square_finite(const ComplexMatrix& M, const char* what);

double max_abs(const ComplexMatrix& M);
double hermitian_defect(const ComplexMatrix& M); // max |M - M*|
bool is_hermitian(const ComplexMatrix& M, double tol);
bool is_unitary(const ComplexMatrix& U, double tol);

class UnitVector {
public:
    // Throws ValidationError when | ||v|| - 1 | > tol.
    explicit UnitVector(ComplexVector v, const Tolerances& tol = {});

    // Rescales a nonzero vector to unit length.
    static UnitVector normalized(const ComplexVector& v);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

private:
    ComplexVector amplitudes_;
};

class Projection {
public:
    // Validates P^2 = P = P* within tol.projection and every eigenvalue within
    // tol.projection of {0, 1}. Rank counts eigenvalues near 1.
    explicit Projection(ComplexMatrix matrix, const Tolerances& tol = {});

    static Projection zero(std::size_t dim);
    static Projection identity(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    std::size_t rank() const { return rank_; }
    double tol() const { return tol_; }
    const ComplexMatrix& matrix() const { return matrix_; }

    // I - P
    Projection complement() const;

    // Orthonormal basis of the range, one column per dimension (dim x rank).
    ComplexMatrix range_basis() const;

private:
    Projection(ComplexMatrix matrix, std::size_t rank, double tol);

    ComplexMatrix matrix_;
    std::size_t rank_ = 0;
    double tol_ = 1e-10;
};

class DensityState {
public:
    // Hermitian, positive semidefinite and unit trace, all within tol.projection.
    explicit DensityState(ComplexMatrix matrix, const Tolerances& tol = {});

    static DensityState pure(const UnitVector& v);
    static DensityState maximally_mixed(std::size_t dim);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix& matrix() const { return matrix_; }

private:
    ComplexMatrix matrix_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;   // ascending
    ComplexMatrix eigenvectors;        // column k pairs with eigenvalues[k]
    int sweeps = 0;
};

// Cyclic Jacobi on a Hermitian matrix. Stops when the off-diagonal Frobenius
// norm drops below 1e-13 * max(1, ||H||_F) or after 100 sweeps.
EigenDecomposition hermitian_eigen(const ComplexMatrix& H, const Tolerances& tol = {});

// Outer product v v*.
Projection rank1_projection(const UnitVector& v, const Tolerances& tol = {});

// Projection onto an orthonormal column set.
Projection projection_onto(const ComplexMatrix& orthonormal_columns, const Tolerances& tol = {});

// Orthonormalizes the columns of A (modified Gram-Schmidt, two passes),
// dropping columns whose residual norm^2 falls below tol.rank.
ComplexMatrix orthonormal_columns(const ComplexMatrix& A, const Tolerances& tol = {});

// P ∧ Q: projection onto range(P) ∩ range(Q), from the null space of the
// stacked system B_P x = B_Q y.
Projection projection_meet(const Projection& P, const Projection& Q, const Tolerances& tol = {});

// P ∨ Q = I - ((I - P) ∧ (I - Q)).
Projection projection_join(const Projection& P, const Projection& Q, const Tolerances& tol = {});

// Operator order A <= B, checked on the spectrum of B - A.
bool operator_leq(const ComplexMatrix& A, const ComplexMatrix& B, const Tolerances& tol = {});

// Tr(rho M) for Hermitian M; throws if the imaginary residue exceeds 1e-12.
double state_value(const DensityState& rho, const ComplexMatrix& M, const Tolerances& tol = {});

} // namespace contextia
