#include "operators.hpp"

#include <cmath>
#include <limits>
#include <tuple>

namespace slsem {

std::string toString(CflReference ref) {
    return ref == CflReference::MinSpacing ? "min_spacing" : "element";
}

Discretization::Discretization(double waveSpeed, double elementWidth, double cfl,
                               CflReference ref, OmegaSpec omega, double dMin)
    : a_(waveSpeed), dx_(elementWidth), cfl_(cfl), ref_(ref), omega_(omega), dMin_(dMin) {
    if (!(a_ > 0.0)) throw InvalidArgumentError("wave speed must be positive");
    if (!(dx_ > 0.0)) throw InvalidArgumentError("element width must be positive");
    if (cfl_ < 0.0) throw InvalidArgumentError("cfl must be nonnegative");
    if (!(dMin_ > 0.0)) throw InvalidArgumentError("minimum node spacing must be positive");
    nu_ = (ref_ == CflReference::MinSpacing) ? cfl_ * dMin_ : cfl_;
}

double Discretization::resolvedOmega() const {
    if (!omega_.upwind) return omega_.value;
    if (nu_ == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / nu_;
}

Discretization Discretization::withNu(double nu) const {
    Discretization d = *this;
    d.nu_ = nu;
    d.cfl_ = (ref_ == CflReference::MinSpacing) ? nu / dMin_ : nu;
    return d;
}

std::pair<double, double> interfaceWeights(const Discretization& disc) {
    if (disc.omegaSpec().upwind) return {1.0, 0.0};
    const double on = disc.omegaSpec().value * disc.nu();
    return {(1.0 + on) / 2.0, (1.0 - on) / 2.0};
}

namespace {

std::vector<double> rowTimes(const std::vector<double>& row, const Matrix& m) {
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const double w = row[r];
        if (w == 0.0) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] += w * m(r, c);
    }
    return out;
}

std::vector<double> scaled(std::vector<double> v, double s) {
    for (double& x : v) x *= s;
    return v;
}

} // namespace

ElementOperators::ElementOperators(NodeSet nodes, Discretization disc, bool pureUpwindInterface)
    : nodes_(std::move(nodes)), disc_(disc) {
    const std::size_t n = nodes_.count();  // P+1
    const double nu = disc_.nu();

    v_ = vandermonde(nodes_.nodes, n);
    std::vector<double> advected = nodes_.nodes;
    for (double& chi : advected) chi += nu;
    vstar_ = vandermonde(advected, n);

    Matrix vstarInv;
    try {
        vstarInv = inverse(vstar_);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("advected Vandermonde matrix is singular: advection shift too large for the node set");
    }
    condVstar_ = vstar_.norm1() * vstarInv.norm1();

    const Matrix projection = v_ * vstarInv;  // nodal Q* = R Q^n

    // Edge traces of the advected interpolant.
    const Matrix vRight = vandermonde({0.5}, n);
    const Matrix vLeft = vandermonde({-0.5}, n);
    std::vector<double> traceRight(n), traceLeft(n);
    for (std::size_t c = 0; c < n; ++c) {
        double tr = 0.0, tl = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            tr += vRight(0, k) * vstarInv(k, c);
            tl += vLeft(0, k) * vstarInv(k, c);
        }
        traceRight[c] = tr;
        traceLeft[c] = tl;
    }

    double wl, wr;
    if (pureUpwindInterface) {
        wl = 1.0;
        wr = 0.0;
    } else {
        std::tie(wl, wr) = interfaceWeights(disc_);
    }

    // Constraint coordinates: both interfaces plus the P+1 nodes.
    std::vector<double> chiB;
    chiB.reserve(n + 2);
    chiB.push_back(-0.5);
    chiB.insert(chiB.end(), nodes_.nodes.begin(), nodes_.nodes.end());
    chiB.push_back(0.5);
    x_ = vandermonde(chiB, n);
    a_ = x_.transposed() * x_;

    Matrix aInv;
    try {
        aInv = inverse(a_);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("normal-equation matrix is singular: degenerate constraint geometry");
    }
    const Matrix lsq = aInv * x_.transposed();  // F: coefficients from constraints

    // Constraint sensitivities to the three neighbor vectors.
    sPrev_ = Matrix(n + 2, n);
    sSelf_ = Matrix(n + 2, n);
    sNext_ = Matrix(n + 2, n);
    for (std::size_t c = 0; c < n; ++c) {
        sPrev_(0, c) = wl * traceRight[c];
        sSelf_(0, c) = wr * traceLeft[c];
        for (std::size_t m = 0; m < n; ++m) sSelf_(m + 1, c) = projection(m, c);
        sSelf_(n + 1, c) = wl * traceRight[c];
        sNext_(n + 1, c) = wr * traceLeft[c];
    }

    const Matrix vf = v_ * lsq;
    nPrev_ = vf * sPrev_;
    nSelf_ = vf * sSelf_;
    nNext_ = vf * sNext_;

    // Center-value row v(0)*F over the P+3 constraints.
    const Matrix vCenter = vandermonde({0.0}, n);
    centerRow_.assign(n + 2, 0.0);
    for (std::size_t c = 0; c < n + 2; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += vCenter(0, k) * lsq(k, c);
        centerRow_[c] = acc;
    }
}

Matrix ElementOperators::periodicOperator() const {
    return nPrev_ + nSelf_ + nNext_;
}

CenterStencil ElementOperators::centerStencil() const {
    const std::size_t n = nodes_.count();
    const std::vector<double> wPrev = rowTimes(centerRow_, sPrev_);
    const std::vector<double> wSelf = rowTimes(centerRow_, sSelf_);
    const std::vector<double> wNext = rowTimes(centerRow_, sNext_);

    CenterStencil st;
    st.degree = nodes_.degree;
    st.kind = nodes_.kind;
    st.cfl = disc_.cfl();
    st.omega = disc_.omegaSpec();
    st.nu = disc_.nu();

    auto push = [&st](double delta, double weight) {
        if (std::abs(weight) < 1e-14) return;
        st.deltas.push_back(delta);
        st.weights.push_back(weight);
    };
    for (std::size_t m = 0; m < n; ++m) push(nodes_.nodes[m] - 1.0, wPrev[m]);
    for (std::size_t m = 0; m < n; ++m) push(nodes_.nodes[m], wSelf[m]);
    for (std::size_t m = 0; m < n; ++m) push(nodes_.nodes[m] + 1.0, wNext[m]);
    return st;
}

} // namespace slsem
