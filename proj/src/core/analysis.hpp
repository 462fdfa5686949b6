#ifndef SLSEM_ANALYSIS_HPP
#define SLSEM_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "operators.hpp"

namespace slsem {

// Modified-equation truncation coefficients a_m of dQ/dt = sum_m a_m d^m Q/dx^m,
// with the dimensionless series coefficients b_m of log g = sum b_m (i theta)^m;
// a_m = b_m dx^m / dt. a_1 = -a for consistent schemes.
struct MEReport {
    int degree = 0;
    NodeKind kind = NodeKind::Chebyshev;
    double cfl = 0.0;
    OmegaSpec omega;
    double dx = 0.0;
    double waveSpeed = 0.0;
    double dt = 0.0;
    int terms = 0;                // truncation order M
    std::vector<double> a;        // a[m], m = 0..M (a[0] unused, kept 0)
    std::vector<double> b;        // b[m], m = 0..M
    std::string notes;            // documented coefficient comparisons, if any
};

enum class DispersionMode { ExactSymbol, MeTruncated };

std::string toString(DispersionMode mode);

struct DispersionSample {
    double theta = 0.0;        // kappa * dx
    double reKstarDx = 0.0;    // dispersion: compare against theta
    double imKstarDx = 0.0;    // < 0 means damping
    DispersionMode mode = DispersionMode::ExactSymbol;
    int terms = 0;             // ME truncation order for MeTruncated rows
};

enum class BoundaryModel { Periodic, ZeroNeighbor };

std::string toString(BoundaryModel bc);

struct SpectrumReport {
    std::vector<double> cfls;
    std::vector<ComplexVector> eigenvalues;  // P+1 per sweep point, sorted
    std::vector<double> maxAbs;
    std::optional<double> mergePoint;        // first cfl with a complex pair
};

// One-step symbol g(theta) = sum_j c_j exp(i delta_j theta).
Complex symbol(const CenterStencil& st, double theta);

// Largest |g| over the principal band theta in (0, pi]: 4096-point grid plus
// golden-section refinement around the discrete maximum. The stencil offsets
// are fractional multiples of dx, so g is not 2pi-periodic; |g(-theta)|=|g(theta)|
// makes (0, pi] the full Nyquist band of the element-center lattice.
double maxAbsSymbol(const CenterStencil& st);

// ME coefficients from the truncated logarithm of the one-step symbol:
// g(theta) = sum_n G_n (i theta)^n with G_n = sum_j c_j delta_j^n / n!.
MEReport mea(const CenterStencil& st, const Discretization& disc, int terms);

// The unique omega with a_2(omega) = 0; a_2 is affine in omega for P >= 1.
double zeroDiffusionOmega(int degree, NodeKind kind, double alpha, double cfl,
                          CflReference ref);

// Bisection (to 1e-5 in the Courant number) for the largest stable cfl under
// the test max|g| <= 1 + 1e-10. The bracket must straddle the transition.
double vnStabilityLimit(int degree, NodeKind kind, double alpha, OmegaSpec omega,
                        CflReference ref, double bracketLo, double bracketHi);

// Effective wavenumber curve. ExactSymbol: kstar*dx = (i/nu) Log g with the
// principal branch continuity-tracked along the grid. MeTruncated:
// kstar*dx = (i/nu) sum_{m=1..M} b_m (i theta)^m.
std::vector<DispersionSample> dispersionCurve(const CenterStencil& st,
                                              const Discretization& disc,
                                              const std::vector<double>& thetas,
                                              DispersionMode mode, int terms);

// Eigenvalues of the periodic or zero-neighbor recursion matrix per cfl.
SpectrumReport spectrumSweep(int degree, NodeKind kind, double alpha, OmegaSpec omega,
                             CflReference ref, BoundaryModel bc,
                             const std::vector<double>& cfls);

// max over theta_e of the spectral radius of
// G(theta_e) = N_prev e^{-i theta_e} + N_self + N_next e^{+i theta_e}.
double blockSymbolRadius(const ElementOperators& ops, const std::vector<double>& thetaGrid);

// Spectral radius of the complex block symbol at a single theta_e, via the
// 2n x 2n real embedding [[Re, -Im], [Im, Re]].
double blockSymbolRadiusAt(const ElementOperators& ops, double thetaE);

} // namespace slsem

#endif
