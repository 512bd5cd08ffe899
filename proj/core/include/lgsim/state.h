#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace lgsim {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;

/// Two-level label shared by the primary system and the ancilla.
/// The dichotomic observable is Q(up) = +1, Q(down) = -1.
enum class Spin : unsigned char { down = 0, up = 1 };

constexpr int q_value(Spin s) noexcept { return s == Spin::up ? +1 : -1; }

/// Global basis ordering is |system, ancilla> over (dd, du, ud, uu).
/// The system spin is the high bit of the index, the ancilla spin the low bit.
namespace basis {
constexpr std::size_t dd = 0;
constexpr std::size_t du = 1;
constexpr std::size_t ud = 2;
constexpr std::size_t uu = 3;

constexpr std::size_t index(Spin system, Spin ancilla) noexcept {
    return (static_cast<std::size_t>(system) << 1) | static_cast<std::size_t>(ancilla);
}
constexpr Spin system_of(std::size_t i) noexcept { return (i & 2) ? Spin::up : Spin::down; }
constexpr Spin ancilla_of(std::size_t i) noexcept { return (i & 1) ? Spin::up : Spin::down; }
}  // namespace basis

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

class PopulationVector;

/// 4x4 density matrix over |system>|ancilla>. Instances always satisfy:
/// Hermitian and unit trace within 1e-12, eigenvalues >= -1e-10.
class TwoQubitState {
   public:
    /// Validates and wraps `m`. Throws ContractError on any invariant violation.
    static TwoQubitState from_matrix(const Matrix4c &m);

    /// Diagonal state with the given populations.
    static TwoQubitState diagonal(const PopulationVector &pops);

    /// Pure basis state |system, ancilla>.
    static TwoQubitState basis_state(Spin system, Spin ancilla);

    const Matrix4c &matrix() const noexcept { return rho_; }

    double population(std::size_t i) const { return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(); }
    std::array<double, 4> populations() const;

    /// rho -> U rho U^dagger. Unitary evolution keeps every invariant, so no
    /// revalidation happens here.
    TwoQubitState evolved(const class GateMatrix &gate) const;

    bool is_diagonal(double tol = 0.0) const;

   private:
    explicit TwoQubitState(const Matrix4c &m) : rho_(m) {}
    Matrix4c rho_;
};

/// 4x4 unitary acting on |system>|ancilla>.
class GateMatrix {
   public:
    /// Throws ContractError unless U^dagger U = I within 1e-10.
    static GateMatrix from_matrix(const Matrix4c &m);
    static GateMatrix identity();

    const Matrix4c &matrix() const noexcept { return u_; }

    /// this * other, i.e. `other` is applied first.
    GateMatrix then_after(const GateMatrix &other) const { return GateMatrix(u_ * other.u_); }

    /// 2x2 block of rows/cols {i, j}.
    Matrix2c block(std::size_t i, std::size_t j) const;

   private:
    explicit GateMatrix(const Matrix4c &m) : u_(m) {}
    Matrix4c u_;
};

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const Matrix4c &m);

}  // namespace lgsim
