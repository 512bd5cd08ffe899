#include "lgsim/state.h"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "lgsim/ensemble.h"
#include "lgsim/errors.h"

namespace lgsim {

double min_eigenvalue(const Matrix4c &m) {
    const Matrix4c herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

TwoQubitState TwoQubitState::from_matrix(const Matrix4c &m) {
    if (!m.allFinite()) {
        throw ContractError("density matrix has non-finite entries");
    }
    const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > kHermitianTolerance) {
        std::ostringstream os;
        os << "density matrix not Hermitian (max |rho - rho^dagger| = " << herm_err << ")";
        throw ContractError(os.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) {
        std::ostringstream os;
        os << "density matrix trace " << tr.real() << " differs from 1";
        throw ContractError(os.str());
    }
    const double lambda = min_eigenvalue(m);
    if (lambda < -kPsdTolerance) {
        std::ostringstream os;
        os << "density matrix not positive semidefinite (min eigenvalue " << lambda << ")";
        throw ContractError(os.str());
    }
    return TwoQubitState(m);
}

TwoQubitState TwoQubitState::diagonal(const PopulationVector &pops) {
    Matrix4c m = Matrix4c::Zero();
    for (Eigen::Index i = 0; i < 4; ++i) {
        m(i, i) = pops[static_cast<std::size_t>(i)];
    }
    return TwoQubitState(m);
}

TwoQubitState TwoQubitState::basis_state(Spin system, Spin ancilla) {
    Matrix4c m = Matrix4c::Zero();
    const auto i = static_cast<Eigen::Index>(basis::index(system, ancilla));
    m(i, i) = 1.0;
    return TwoQubitState(m);
}

std::array<double, 4> TwoQubitState::populations() const {
    return {population(0), population(1), population(2), population(3)};
}

TwoQubitState TwoQubitState::evolved(const GateMatrix &gate) const {
    const Matrix4c &u = gate.matrix();
    return TwoQubitState(u * rho_ * u.adjoint());
}

bool TwoQubitState::is_diagonal(double tol) const {
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            if (r != c && std::abs(rho_(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

GateMatrix GateMatrix::from_matrix(const Matrix4c &m) {
    if (!m.allFinite()) {
        throw ContractError("gate matrix has non-finite entries");
    }
    const double err = (m.adjoint() * m - Matrix4c::Identity()).cwiseAbs().maxCoeff();
    if (err > kUnitaryTolerance) {
        std::ostringstream os;
        os << "gate matrix not unitary (max |U^dagger U - I| = " << err << ")";
        throw ContractError(os.str());
    }
    return GateMatrix(m);
}

GateMatrix GateMatrix::identity() { return GateMatrix(Matrix4c::Identity()); }

Matrix2c GateMatrix::block(std::size_t i, std::size_t j) const {
    const auto a = static_cast<Eigen::Index>(i);
    const auto b = static_cast<Eigen::Index>(j);
    Matrix2c out;
    out << u_(a, a), u_(a, b), u_(b, a), u_(b, b);
    return out;
}

}  // namespace lgsim
