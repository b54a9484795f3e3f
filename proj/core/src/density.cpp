#include "hqnn/density.hpp"

#include "hqnn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hqnn {

DensityMatrix::DensityMatrix(int num_qubits)
    : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits) {
    if (num_qubits < 1 || num_qubits > StateVector::kMaxQubits) {
        throw ConfigError("density matrix qubit count out of range: " +
                          std::to_string(num_qubits));
    }
    entries_.assign(dim_ * dim_, {0.0, 0.0});
}

double DensityMatrix::trace_real() const {
    double tr = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        tr += at(i, i).real();
    }
    return tr;
}

double DensityMatrix::hermiticity_violation() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
        }
    }
    return worst;
}

namespace {

// One cyclic Jacobi pass for a Hermitian matrix held in `a` (row-major,
// n x n). Each rotation zeroes a[p][q] with the unitary
//   U[p][p] = c, U[p][q] = -s e^{i phi}, U[q][p] = s e^{-i phi}, U[q][q] = c
// where e^{i phi} is the phase of a[p][q] and tan(2t) = 2|a[p][q]|/(a_pp - a_qq).
void jacobi_rotate(std::vector<std::complex<double>> &a, std::size_t n,
                   std::size_t p, std::size_t q) {
    const std::complex<double> apq = a[p * n + q];
    const double g = std::abs(apq);
    if (g == 0.0) {
        return;
    }
    const std::complex<double> phase = apq / g;
    const double app = a[p * n + p].real();
    const double aqq = a[q * n + q].real();
    const double t = 0.5 * std::atan2(2.0 * g, app - aqq);
    const double c = std::cos(t);
    const double s = std::sin(t);

    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) {
            continue;
        }
        const std::complex<double> akp = a[k * n + p];
        const std::complex<double> akq = a[k * n + q];
        const std::complex<double> nkp = akp * c + akq * s * std::conj(phase);
        const std::complex<double> nkq = -akp * s * phase + akq * c;
        a[k * n + p] = nkp;
        a[k * n + q] = nkq;
        a[p * n + k] = std::conj(nkp);
        a[q * n + k] = std::conj(nkq);
    }
    const double npp = c * c * app + 2.0 * c * s * g + s * s * aqq;
    const double nqq = s * s * app - 2.0 * c * s * g + c * c * aqq;
    a[p * n + p] = npp;
    a[q * n + q] = nqq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

double off_diagonal_norm(const std::vector<std::complex<double>> &a,
                         std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                sum += std::norm(a[i * n + j]);
            }
        }
    }
    return std::sqrt(sum);
}

} // namespace

std::vector<double> DensityMatrix::eigenvalues() const {
    std::vector<std::complex<double>> a = entries_;
    const std::size_t n = dim_;

    double scale = 0.0;
    for (const auto &e : a) {
        scale += std::norm(e);
    }
    scale = std::sqrt(scale);
    const double tol = 1e-14 * std::max(scale, 1.0);

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (off_diagonal_norm(a, n) > tol) {
        if (++sweep > kMaxSweeps) {
            throw NumericError("Jacobi eigensolver did not converge in " +
                               std::to_string(kMaxSweeps) + " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                jacobi_rotate(a, n, p, q);
            }
        }
    }

    std::vector<double> eigs(n);
    for (std::size_t i = 0; i < n; ++i) {
        eigs[i] = a[i * n + i].real();
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

double entropy_bits_from_eigenvalues(std::span<const double> eigenvalues) {
    double entropy = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -1e-6) {
            throw NumericError("density matrix eigenvalue below -1e-6: " +
                               std::to_string(lambda));
        }
        if (lambda <= 0.0) {
            continue; // clamped to 0; 0 log 0 = 0
        }
        entropy -= lambda * std::log2(lambda);
    }
    return std::max(entropy, 0.0);
}

double DensityMatrix::von_neumann_entropy_bits() const {
    const std::vector<double> eigs = eigenvalues();
    return entropy_bits_from_eigenvalues(eigs);
}

DensityMatrix partial_trace_keep_first(const StateVector &psi, int m) {
    const int q = psi.num_qubits();
    if (m < 1 || m >= q) {
        throw std::out_of_range("subsystem size m must satisfy 1 <= m < Q");
    }
    DensityMatrix rho(m);
    const std::size_t da = std::size_t{1} << m;
    const std::size_t db = std::size_t{1} << (q - m);
    const auto amps = psi.amplitudes();
    for (std::size_t e = 0; e < db; ++e) {
        const std::size_t base = e << m;
        for (std::size_t i = 0; i < da; ++i) {
            const std::complex<double> ai = amps[base | i];
            for (std::size_t j = 0; j < da; ++j) {
                rho.at(i, j) += ai * std::conj(amps[base | j]);
            }
        }
    }
    return rho;
}

DensityMatrix partial_trace_keep_last(const StateVector &psi, int m) {
    const int q = psi.num_qubits();
    if (m < 1 || m >= q) {
        throw std::out_of_range("subsystem size m must satisfy 1 <= m < Q");
    }
    DensityMatrix rho(m);
    const int low = q - m;
    const std::size_t da = std::size_t{1} << m;
    const std::size_t db = std::size_t{1} << low;
    const auto amps = psi.amplitudes();
    for (std::size_t e = 0; e < db; ++e) {
        for (std::size_t i = 0; i < da; ++i) {
            const std::complex<double> ai = amps[(i << low) | e];
            for (std::size_t j = 0; j < da; ++j) {
                rho.at(i, j) += ai * std::conj(amps[(j << low) | e]);
            }
        }
    }
    return rho;
}

} // namespace hqnn
