#pragma once

#include "sqwg/coefficients.hpp"
#include "sqwg/errors.hpp"
#include "sqwg/operators.hpp"

#include <array>
#include <string>
#include <vector>

namespace sqwg {

// Resonant coherent drive injected through the waveguide.
struct DriveSpec {
    double rabi = 0.0;  // Rabi frequency Omega_R, rate units
    double alpha = 0.0; // drive phase, rad
};

// Master-equation generator acting on column-stacked density matrices.
struct Liouvillian {
    Mat matrix; // 4^n x 4^n
    int n_emitters = 0;
    CoefficientSet coeffs;
    SqueezingSpec spec;
    DriveSpec drive;
    bool has_drive = false;

    [[nodiscard]] Eigen::Index dim() const { return matrix.rows(); }
};

// Hamiltonian (dipole-dipole shift) part: -i sum_{i != j} Lambda_ij [S_i^+ S_j^-, .].
Mat hamiltonian_part(const CoefficientSet& coeffs);

// The three dissipator families: (1+N) and N one-photon terms plus the
// M two-photon terms with phase e^{2ikR} e^{-i theta} on the S^+S^+ branch.
Mat dissipative_part(const CoefficientSet& coeffs, const SqueezingSpec& spec);

Liouvillian build_generator(const CoefficientSet& coeffs, const SqueezingSpec& spec);

// dрho/dt = -i[V, rho] + L rho with V = (Omega/2) e^{-i alpha} sum_i e^{-i k0z r_i} sigma_i^- + H.c.
Liouvillian add_drive(const Liouvillian& gen, const DriveSpec& drive, const EmitterArray& emitters,
                      double k0z);

// Dissipator coefficient matrix over the jump basis {S_i^+} then {S_i^-}.
// The stored entries are the phase-free real symmetric core; the squeezing
// phase enters as a diagonal unitary similarity and is kept separately.
struct HMatrix {
    Eigen::MatrixXd entries;      // 2n x 2n real symmetric
    Eigen::VectorXd eigenvalues;  // ascending
    cplx phase{1.0, 0.0};         // e^{2ikR} e^{-i theta}
    int n_emitters = 0;
};

HMatrix h_matrix(const CoefficientSet& coeffs, const SqueezingSpec& spec);

// Closed-form h eigenvalues for two emitters with r1 + r2 = 0.
std::array<double, 4> zeta_closed_form(const CoefficientSet& coeffs);

struct LindbladTerm {
    double rate;
    Mat jump;
};

// Eigen-decompose h into rates and jump operators; throws NegativeRate when a
// rate is below -tol (non-completely-positive input).
std::vector<LindbladTerm> lindblad_diagonalize(const HMatrix& h, double tol = 1e-9);

// Rebuild the dissipator superoperator sum_k zeta_k (A rho A^+ - 1/2 {A^+A, rho}).
Mat dissipator_from_terms(const std::vector<LindbladTerm>& terms);

// Binary dump: 8-byte magic "SQWGLIO1", uint64 LE dimension, then dim^2
// little-endian complex doubles in column-major order.
void dump_liouvillian(const std::string& path, const Liouvillian& gen);
Mat load_liouvillian_matrix(const std::string& path);

} // namespace sqwg
