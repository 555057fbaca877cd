#include "contextia/linalg.hpp"

#include "contextia/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace contextia {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-13;
constexpr double kImaginaryResidue = 1e-12;

std::string describe(double x)
{
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

double off_diagonal_norm(const ComplexMatrix& A)
{
    double sum = 0.0;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (i != j) sum += std::norm(A(i, j));
    return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing A(p,q). The rotation is a phase on
// column q (making A(p,q) real) followed by the classical real rotation.
void rotate(ComplexMatrix& A, ComplexMatrix& V, Eigen::Index p, Eigen::Index q)
{
    const Complex apq = A(p, q);
    const double mag = std::abs(apq);
    if (mag < 1e-300) return;

    const Complex u = apq / mag;
    const Complex uc = std::conj(u);
    const double app = A(p, p).real();
    const double aqq = A(q, q).real();

    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // A <- A G,  G = [[c, s], [-s conj(u), c conj(u)]] on (p, q)
    for (Eigen::Index k = 0; k < A.rows(); ++k) {
        const Complex akp = A(k, p);
        const Complex akq = A(k, q);
        A(k, p) = c * akp - s * uc * akq;
        A(k, q) = s * akp + c * uc * akq;
    }
    // A <- G* A
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
        const Complex apk = A(p, k);
        const Complex aqk = A(q, k);
        A(p, k) = c * apk - s * u * aqk;
        A(q, k) = s * apk + c * u * aqk;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = A(p, p).real();
    A(q, q) = A(q, q).real();

    for (Eigen::Index k = 0; k < V.rows(); ++k) {
        const Complex vkp = V(k, p);
        const Complex vkq = V(k, q);
        V(k, p) = c * vkp - s * uc * vkq;
        V(k, q) = s * vkp + c * uc * vkq;
    }
}

void require_same_dim(const Projection& P, const Projection& Q, const char* op)
{
    if (P.dim() != Q.dim())
        throw ValidationError(std::string(op) + ": dimension mismatch (" + std::to_string(P.dim()) + " vs " +
                              std::to_string(Q.dim()) + ")");
}

} // namespace

void require_square_finite(const ComplexMatrix& M, const char* what)
{
    if (M.rows() == 0 || M.rows() != M.cols())
        throw ValidationError(std::string(what) + ": matrix must be square and non-empty (got " +
                              std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + ")");
    for (Eigen::Index j = 0; j < M.cols(); ++j)
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag()))
                throw ValidationError(std::string(what) + ": non-finite entry at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
}

double max_abs(const ComplexMatrix& M)
{
    return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

double hermitian_defect(const ComplexMatrix& M)
{
    return max_abs(M - M.adjoint());
}

bool is_hermitian(const ComplexMatrix& M, double tol)
{
    return M.rows() == M.cols() && hermitian_defect(M) <= tol;
}

bool is_unitary(const ComplexMatrix& U, double tol)
{
    if (U.rows() != U.cols()) return false;
    const auto n = U.rows();
    return max_abs(U.adjoint() * U - ComplexMatrix::Identity(n, n)) <= tol;
}

// ---------------------------------------------------------------- UnitVector

UnitVector::UnitVector(ComplexVector v, const Tolerances& tol)
    : amplitudes_(std::move(v))
{
    if (amplitudes_.size() == 0) throw ValidationError("UnitVector: empty vector");
    if (!amplitudes_.allFinite()) throw ValidationError("UnitVector: non-finite amplitude");
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > tol.projection)
        throw ValidationError("UnitVector: norm " + describe(norm) + " is not 1");
}

UnitVector UnitVector::normalized(const ComplexVector& v)
{
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("UnitVector: cannot normalize a zero vector");
    return UnitVector(v / norm);
}

// ---------------------------------------------------------------- Projection

Projection::Projection(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)), tol_(tol.projection)
{
    require_square_finite(matrix_, "Projection");
    const double herm = hermitian_defect(matrix_);
    if (herm > tol.projection)
        throw ValidationError("Projection: not self-adjoint, max |P - P*| = " + describe(herm));
    const double idem = max_abs(matrix_ * matrix_ - matrix_);
    if (idem > tol.projection)
        throw ValidationError("Projection: not idempotent, max |P^2 - P| = " + describe(idem));

    const auto eig = hermitian_eigen(matrix_, tol);
    for (double lambda : eig.eigenvalues) {
        const bool near_zero = std::abs(lambda) <= tol.projection;
        const bool near_one = std::abs(lambda - 1.0) <= tol.projection;
        if (!near_zero && !near_one)
            throw ValidationError("Projection: eigenvalue " + describe(lambda) + " not within tol of {0, 1}");
        if (near_one) ++rank_;
    }
}

Projection::Projection(ComplexMatrix matrix, std::size_t rank, double tol)
    : matrix_(std::move(matrix)), rank_(rank), tol_(tol)
{
}

Projection Projection::zero(std::size_t dim)
{
    if (dim == 0) throw ValidationError("Projection::zero: dim must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    return Projection(ComplexMatrix::Zero(n, n), 0, Tolerances{}.projection);
}

Projection Projection::identity(std::size_t dim)
{
    if (dim == 0) throw ValidationError("Projection::identity: dim must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    return Projection(ComplexMatrix::Identity(n, n), dim, Tolerances{}.projection);
}

Projection Projection::complement() const
{
    const auto n = matrix_.rows();
    ComplexMatrix c = ComplexMatrix::Identity(n, n) - matrix_;
    return Projection(std::move(c), dim() - rank_, tol_);
}

ComplexMatrix Projection::range_basis() const
{
    const auto n = matrix_.rows();
    if (rank_ == 0) return ComplexMatrix(n, 0);
    if (rank_ == dim()) return ComplexMatrix::Identity(n, n);
    const auto eig = hermitian_eigen(matrix_);
    // ascending order: the top `rank_` eigenvectors span the range
    return eig.eigenvectors.rightCols(static_cast<Eigen::Index>(rank_));
}

// -------------------------------------------------------------- DensityState

DensityState::DensityState(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix))
{
    require_square_finite(matrix_, "DensityState");
    const double herm = hermitian_defect(matrix_);
    if (herm > tol.projection)
        throw ValidationError("DensityState: not Hermitian, max |rho - rho*| = " + describe(herm));
    const Complex tr = matrix_.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol.projection)
        throw ValidationError("DensityState: trace " + describe(tr.real()) + " is not 1");
    const auto eig = hermitian_eigen(matrix_, tol);
    if (eig.eigenvalues.front() < -tol.projection)
        throw ValidationError("DensityState: negative eigenvalue " + describe(eig.eigenvalues.front()));
}

DensityState DensityState::pure(const UnitVector& v)
{
    return DensityState(v.amplitudes() * v.amplitudes().adjoint());
}

DensityState DensityState::maximally_mixed(std::size_t dim)
{
    if (dim == 0) throw ValidationError("DensityState::maximally_mixed: dim must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityState(ComplexMatrix::Identity(n, n) / static_cast<double>(dim));
}

// -------------------------------------------------------------- operations

EigenDecomposition hermitian_eigen(const ComplexMatrix& H, const Tolerances& tol)
{
    require_square_finite(H, "hermitian_eigen");
    const double scale = std::max(1.0, max_abs(H));
    const double asym = hermitian_defect(H);
    if (asym > tol.projection * scale)
        throw ValidationError("hermitian_eigen: input is not Hermitian, max asymmetry |H - H*| = " + describe(asym));

    const auto n = H.rows();
    ComplexMatrix A = 0.5 * (H + H.adjoint());
    ComplexMatrix V = ComplexMatrix::Identity(n, n);
    const double target = kOffDiagonalTarget * std::max(1.0, A.norm());

    int sweeps = 0;
    while (sweeps < kMaxSweeps && off_diagonal_norm(A) >= target) {
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                rotate(A, V, p, q);
        ++sweeps;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return A(a, a).real() < A(b, b).real(); });

    EigenDecomposition out;
    out.sweeps = sweeps;
    out.eigenvalues.reserve(static_cast<std::size_t>(n));
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues.push_back(A(src, src).real());
        out.eigenvectors.col(k) = V.col(src);
    }
    return out;
}

Projection rank1_projection(const UnitVector& v, const Tolerances& tol)
{
    // re-check the norm against this call's tolerance
    UnitVector checked(v.amplitudes(), tol);
    return Projection(checked.amplitudes() * checked.amplitudes().adjoint(), tol);
}

Projection projection_onto(const ComplexMatrix& W, const Tolerances& tol)
{
    if (W.cols() == 0) return Projection::zero(static_cast<std::size_t>(W.rows()));
    return Projection(W * W.adjoint(), tol);
}

ComplexMatrix orthonormal_columns(const ComplexMatrix& A, const Tolerances& tol)
{
    ComplexMatrix Q(A.rows(), A.cols());
    Eigen::Index kept = 0;
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
        ComplexVector v = A.col(j);
        const double original = std::max(1.0, v.squaredNorm());
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index k = 0; k < kept; ++k)
                v -= Q.col(k) * Q.col(k).dot(v);
        const double residual = v.squaredNorm();
        if (residual < tol.rank * original) continue;
        Q.col(kept++) = v / std::sqrt(residual);
    }
    return Q.leftCols(kept);
}

Projection projection_meet(const Projection& P, const Projection& Q, const Tolerances& tol)
{
    require_same_dim(P, Q, "projection_meet");
    const auto n = static_cast<Eigen::Index>(P.dim());
    if (P.rank() == 0 || Q.rank() == 0) return Projection::zero(P.dim());
    if (P.rank() == P.dim()) return Q;
    if (Q.rank() == Q.dim()) return P;

    const ComplexMatrix BP = P.range_basis();
    const ComplexMatrix BQ = Q.range_basis();
    const auto p = BP.cols();
    const auto q = BQ.cols();

    ComplexMatrix stacked(n, p + q);
    stacked << BP, -BQ;
    const ComplexMatrix gram = stacked.adjoint() * stacked;
    const auto eig = hermitian_eigen(gram, tol);

    // null directions (x, y) of [B_P, -B_Q] give common vectors B_P x = B_Q y
    ComplexMatrix common(n, p + q);
    Eigen::Index found = 0;
    for (Eigen::Index k = 0; k < p + q; ++k) {
        if (eig.eigenvalues[static_cast<std::size_t>(k)] > tol.rank) break;
        const ComplexVector z = eig.eigenvectors.col(k);
        common.col(found++) = BP * z.head(p) + BQ * z.tail(q);
    }
    return projection_onto(orthonormal_columns(common.leftCols(found), tol), tol);
}

Projection projection_join(const Projection& P, const Projection& Q, const Tolerances& tol)
{
    require_same_dim(P, Q, "projection_join");
    return projection_meet(P.complement(), Q.complement(), tol).complement();
}

bool operator_leq(const ComplexMatrix& A, const ComplexMatrix& B, const Tolerances& tol)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw ValidationError("operator_leq: dimension mismatch");
    const auto eig = hermitian_eigen(B - A, tol);
    return eig.eigenvalues.front() >= -tol.projection * std::max<double>(1.0, static_cast<double>(A.rows()));
}

double state_value(const DensityState& rho, const ComplexMatrix& M, const Tolerances& tol)
{
    require_square_finite(M, "state_value");
    if (static_cast<std::size_t>(M.rows()) != rho.dim())
        throw ValidationError("state_value: state has dim " + std::to_string(rho.dim()) + ", operator has dim " +
                              std::to_string(M.rows()));
    const double scale = std::max(1.0, max_abs(M));
    const double asym = hermitian_defect(M);
    if (asym > tol.projection * scale)
        throw ValidationError("state_value: operator is not Hermitian, max |M - M*| = " + describe(asym));
    const Complex value = (rho.matrix() * M).trace();
    if (std::abs(value.imag()) > kImaginaryResidue * scale)
        throw ValidationError("state_value: imaginary residue " + describe(value.imag()));
    return value.real();
}

} // namespace contextia
