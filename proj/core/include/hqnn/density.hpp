#pragma once

#include "hqnn/statevector.hpp"

#include <complex>
#include <span>
#include <vector>

namespace hqnn {

/// Reduced density matrix over m qubits; 2^m x 2^m, row-major.
class DensityMatrix {
  public:
    explicit DensityMatrix(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return dim_; }

    std::complex<double> &at(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const std::complex<double> &at(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    double trace_real() const;

    /// max |A[i][j] - conj(A[j][i])| over all pairs.
    double hermiticity_violation() const;

    /// Eigenvalues in ascending order, via cyclic Jacobi rotations on a
    /// working copy. Throws NumericError if the sweep limit is exceeded.
    std::vector<double> eigenvalues() const;

    /// -sum_i lambda_i log2(lambda_i), with 0 log 0 = 0. Eigenvalues in
    /// [-1e-6, 0] are clamped to 0; anything below -1e-6 raises NumericError.
    double von_neumann_entropy_bits() const;

  private:
    int num_qubits_;
    std::size_t dim_;
    std::vector<std::complex<double>> entries_;
};

/// Traces out all but the first m qubits (indices 0..m-1, the low index
/// bits). Requires 1 <= m < Q.
DensityMatrix partial_trace_keep_first(const StateVector &psi, int m);

/// Traces out all but the last m qubits (indices Q-m..Q-1).
DensityMatrix partial_trace_keep_last(const StateVector &psi, int m);

/// Entropy in bits from a spectrum; shared clamping rules with
/// DensityMatrix::von_neumann_entropy_bits.
double entropy_bits_from_eigenvalues(std::span<const double> eigenvalues);

} // namespace hqnn
