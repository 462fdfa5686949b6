#ifndef SLSEM_OPERATORS_HPP
#define SLSEM_OPERATORS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "linalg.hpp"

namespace slsem {

enum class CflReference { MinSpacing, Element };

std::string toString(CflReference ref);

// Flux-correction factor: either a numeric omega or the upwind tag, which
// resolves to omega = 1/nu (interface weights (1, 0)).
struct OmegaSpec {
    bool upwind = false;
    double value = 0.0;

    static OmegaSpec makeUpwind() { return OmegaSpec{true, 0.0}; }
    static OmegaSpec numeric(double v) { return OmegaSpec{false, v}; }
};

// Element width, wave speed, time step and Courant bookkeeping.
// nu = a*dt/dx with dt = cfl*d_min*dx/a (min_spacing) or cfl*dx/a (element).
class Discretization {
public:
    Discretization(double waveSpeed, double elementWidth, double cfl,
                   CflReference ref, OmegaSpec omega, double dMin);

    double waveSpeed() const { return a_; }
    double elementWidth() const { return dx_; }
    double cfl() const { return cfl_; }
    CflReference cflReference() const { return ref_; }
    OmegaSpec omegaSpec() const { return omega_; }
    double dMin() const { return dMin_; }

    double nu() const { return nu_; }
    double dt() const { return nu_ * dx_ / a_; }

    // Numeric omega actually in effect: 1/nu under the upwind tag.
    double resolvedOmega() const;

    // Returns a copy with nu overridden directly (shortened landing steps).
    Discretization withNu(double nu) const;

private:
    double a_;
    double dx_;
    double cfl_;
    CflReference ref_;
    OmegaSpec omega_;
    double dMin_;
    double nu_;
};

// Interface rule G(Q^l, Q^r) = w_l*Q^l + w_r*Q^r with w_{l,r} = (1 +- omega*nu)/2;
// the upwind tag gives exactly (1, 0).
std::pair<double, double> interfaceWeights(const Discretization& disc);

// Updated value at the element center, expressed as offsets (in units of dx)
// and weights over the three-element neighborhood.
struct CenterStencil {
    std::vector<double> deltas;
    std::vector<double> weights;
    // provenance
    int degree = 0;
    NodeKind kind = NodeKind::Chebyshev;
    double cfl = 0.0;
    OmegaSpec omega;
    double nu = 0.0;

    std::size_t size() const { return deltas.size(); }
};

// One element's exact one-step update:
//   Q^{k,n+1} = N_prev Q^{k-1,n} + N_self Q^{k,n} + N_next Q^{k+1,n}.
// Assembled once per (NodeSet, Discretization); immutable afterwards.
class ElementOperators {
public:
    ElementOperators(NodeSet nodes, Discretization disc, bool pureUpwindInterface = false);

    const NodeSet& nodeSet() const { return nodes_; }
    const Discretization& discretization() const { return disc_; }

    const Matrix& V() const { return v_; }
    const Matrix& Vstar() const { return vstar_; }
    const Matrix& X() const { return x_; }
    const Matrix& A() const { return a_; }
    const Matrix& prev() const { return nPrev_; }
    const Matrix& self() const { return nSelf_; }
    const Matrix& next() const { return nNext_; }
    double condVstar() const { return condVstar_; }

    // N_prev + N_self + N_next: single-element periodic recursion matrix.
    Matrix periodicOperator() const;
    // N_self alone: zero-neighbor model problem.
    const Matrix& zeroNeighborOperator() const { return nSelf_; }

    CenterStencil centerStencil() const;

private:
    NodeSet nodes_;
    Discretization disc_;
    Matrix v_, vstar_, x_, a_;
    Matrix nPrev_, nSelf_, nNext_;
    // Row of the center update over the P+3 constraints, and the constraint
    // sensitivities, kept for the stencil extraction.
    std::vector<double> centerRow_;
    Matrix sPrev_, sSelf_, sNext_;
    double condVstar_ = 0.0;
};

} // namespace slsem

#endif
