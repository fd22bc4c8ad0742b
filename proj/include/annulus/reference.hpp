#pragma once

#include <complex>

namespace annulus::reference {

using cplx = std::complex<double>;

/// wp by direct summation over the period lattice of A_r: symmetric boxes with
/// edges at half cells, scaled by 1 and 3, combined by Richardson
/// extrapolation to remove the leading 1/size^2 truncation term.
/// Independent of the q-series path; intended as a cross-check.
cplx lattice_wp(double r, cplx z, int n0 = 14);

/// Diagonal Szegő kernel of A_r by plain summation over |n| <= n_max.
double kernel_direct(double r, double rho, int n_max);

}  // namespace annulus::reference
