#pragma once

// Test-only oracles, deliberately independent of the library code paths they
// check. The eigensolver is a hand-rolled cyclic Jacobi iteration (not Eigen)
// so the Schmidt-number cross-check exercises two unrelated algorithms.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace oracles {

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, descending.
std::vector<double> hermitian_eigenvalues(Eigen::MatrixXcd a, int max_sweeps = 60);

// Schmidt number of an amplitude matrix via the F F^dagger kernel
// eigendecomposition (normalizes internally).
double schmidt_number_via_eigen_kernel(const Eigen::MatrixXcd& f);

// Deterministic pseudo-random complex matrix with entries in the unit square.
Eigen::MatrixXcd random_complex_matrix(int rows, int cols, unsigned seed);

// Random density matrix rho = G G^dagger / Tr(G G^dagger).
Eigen::MatrixXcd random_density_matrix(int n, unsigned seed);

// Discretized correlated two-Gaussian amplitude
// f(x, y) = exp(-(x+y)^2/(4 a^2)) exp(-(x-y)^2/(4 b^2)) on [-span, span]^2.
Eigen::MatrixXcd correlated_gaussian(int n, double a, double b, double span);

// Its analytic Schmidt number: K = (1 + mu)/(1 - mu), mu = ((a-b)/(a+b))^2.
double correlated_gaussian_schmidt_number(double a, double b);

// O(N^4) direct evaluation of the centred 2-D DFT used by the temporal
// module: g(k,l) = scale * sum_{mn} F(m,n) exp(-i (nu_m t_k + nu_n t_l)).
Eigen::MatrixXcd direct_centered_dft(const Eigen::MatrixXcd& padded, double dwe, double dwo);

}  // namespace oracles
