#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace slsem {

std::string toString(DispersionMode mode) {
    return mode == DispersionMode::ExactSymbol ? "exact_symbol" : "me_truncated";
}

std::string toString(BoundaryModel bc) {
    return bc == BoundaryModel::Periodic ? "periodic" : "zero_neighbor";
}

Complex symbol(const CenterStencil& st, double theta) {
    Complex g(0.0, 0.0);
    for (std::size_t j = 0; j < st.size(); ++j)
        g += st.weights[j] * std::polar(1.0, st.deltas[j] * theta);
    return g;
}

namespace {

constexpr int kThetaGridPoints = 4096;

double absSymbol(const CenterStencil& st, double theta) {
    return std::abs(symbol(st, theta));
}

// Golden-section maximization of |g| on [lo, hi].
double refineMax(const CenterStencil& st, double lo, double hi) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = absSymbol(st, c), fd = absSymbol(st, d);
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = absSymbol(st, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = absSymbol(st, d);
        }
    }
    return std::max(fc, fd);
}

} // namespace

double maxAbsSymbol(const CenterStencil& st) {
    double best = 0.0;
    int bestIdx = 1;
    for (int i = 1; i <= kThetaGridPoints; ++i) {
        const double theta = M_PI * static_cast<double>(i) / kThetaGridPoints;
        const double v = absSymbol(st, theta);
        if (v > best) {
            best = v;
            bestIdx = i;
        }
    }
    const double lo = M_PI * static_cast<double>(std::max(1, bestIdx - 1)) / kThetaGridPoints;
    const double hi = M_PI * static_cast<double>(std::min(kThetaGridPoints, bestIdx + 1)) / kThetaGridPoints;
    return std::max(best, refineMax(st, lo, hi));
}

MEReport mea(const CenterStencil& st, const Discretization& disc, int terms) {
    if (terms < 2) throw InvalidArgumentError("mea requires at least 2 terms");

    TruncatedSeries g(static_cast<std::size_t>(terms));
    double factorial = 1.0;
    for (int n = 0; n <= terms; ++n) {
        if (n > 0) factorial *= n;
        double acc = 0.0;
        for (std::size_t j = 0; j < st.size(); ++j)
            acc += st.weights[j] * std::pow(st.deltas[j], n);
        g[static_cast<std::size_t>(n)] = acc / factorial;
    }
    const TruncatedSeries logg = seriesLog(g);

    MEReport rep;
    rep.degree = st.degree;
    rep.kind = st.kind;
    rep.cfl = st.cfl;
    rep.omega = st.omega;
    rep.dx = disc.elementWidth();
    rep.waveSpeed = disc.waveSpeed();
    rep.dt = disc.dt();
    rep.terms = terms;
    rep.b.assign(static_cast<std::size_t>(terms) + 1, 0.0);
    rep.a.assign(static_cast<std::size_t>(terms) + 1, 0.0);
    double dxPow = 1.0;
    for (int m = 1; m <= terms; ++m) {
        dxPow *= rep.dx;
        rep.b[static_cast<std::size_t>(m)] = logg[static_cast<std::size_t>(m)];
        rep.a[static_cast<std::size_t>(m)] = logg[static_cast<std::size_t>(m)] * dxPow / rep.dt;
    }
    if (st.degree == 0) {
        // The three-point update's diffusion term is dx^2/dt*(1/6 - nu^2/2); the
        // equivalent bound matches the von Neumann limit 1/sqrt(3).
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "P=0 diffusion coefficient dx^2/dt*(1/6 - nu^2/2) = %.12g at nu = %.12g",
                      rep.dx * rep.dx / rep.dt * (1.0 / 6.0 - st.nu * st.nu / 2.0), st.nu);
        rep.notes = buf;
    }
    return rep;
}

namespace {

double diffusionCoefficient(int degree, NodeKind kind, double alpha, double cfl,
                            CflReference ref, OmegaSpec omega) {
    const NodeSet nodes = makeNodes(degree, kind, alpha);
    // dx = 1, a = 1: b_2/dt is the diffusion coefficient up to the fixed dx^2 scale.
    const Discretization disc(1.0, 1.0, cfl, ref, omega, nodes.dMin);
    const ElementOperators ops(nodes, disc);
    const MEReport rep = mea(ops.centerStencil(), disc, 4);
    return rep.a[2];
}

} // namespace

double zeroDiffusionOmega(int degree, NodeKind kind, double alpha, double cfl,
                          CflReference ref) {
    if (degree < 1)
        throw DegenerateDependenceError("zero-diffusion omega is undefined for P=0: the omega dependence is degenerate");
    const double a2at0 = diffusionCoefficient(degree, kind, alpha, cfl, ref, OmegaSpec::numeric(0.0));
    const double a2at1 = diffusionCoefficient(degree, kind, alpha, cfl, ref, OmegaSpec::numeric(1.0));
    const double slope = a2at1 - a2at0;
    if (std::abs(slope) < 1e-14)
        throw DegenerateDependenceError("diffusion coefficient does not depend on omega at this configuration");
    const double omegaStar = -a2at0 / slope;
    const double residual = diffusionCoefficient(degree, kind, alpha, cfl, ref, OmegaSpec::numeric(omegaStar));
    if (std::abs(residual) > 1e-9 * std::abs(slope))
        throw NoConvergenceError("zero-diffusion omega verification failed: a_2 is not affine in omega here");
    return omegaStar;
}

double vnStabilityLimit(int degree, NodeKind kind, double alpha, OmegaSpec omega,
                        CflReference ref, double bracketLo, double bracketHi) {
    if (!(bracketLo > 0.0) || !(bracketHi > bracketLo))
        throw BracketInvalidError("vn bracket must satisfy 0 < lo < hi");
    const NodeSet nodes = makeNodes(degree, kind, alpha);
    auto unstable = [&](double cfl) {
        const Discretization disc(1.0, 1.0, cfl, ref, omega, nodes.dMin);
        const ElementOperators ops(nodes, disc);
        return maxAbsSymbol(ops.centerStencil()) > 1.0 + 1e-10;
    };
    if (unstable(bracketLo))
        throw BracketInvalidError("vn bracket lower end is already unstable");
    if (!unstable(bracketHi))
        throw BracketInvalidError("vn bracket upper end is still stable");
    double lo = bracketLo, hi = bracketHi;
    while (hi - lo > 1e-5) {
        const double mid = 0.5 * (lo + hi);
        (unstable(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<DispersionSample> dispersionCurve(const CenterStencil& st,
                                              const Discretization& disc,
                                              const std::vector<double>& thetas,
                                              DispersionMode mode, int terms) {
    const double nu = disc.nu();
    if (!(nu > 0.0)) throw InvalidArgumentError("dispersion requires nu > 0");

    std::vector<DispersionSample> out;
    out.reserve(thetas.size());

    if (mode == DispersionMode::MeTruncated) {
        if (terms < 2) throw InvalidArgumentError("me_truncated dispersion requires terms >= 2");
        const MEReport rep = mea(st, disc, terms);
        for (const double theta : thetas) {
            Complex acc(0.0, 0.0);
            Complex itheta(0.0, theta);
            Complex p(1.0, 0.0);
            for (int m = 1; m <= terms; ++m) {
                p *= itheta;
                acc += rep.b[static_cast<std::size_t>(m)] * p;
            }
            const Complex kstar = Complex(0.0, 1.0) * acc / nu;
            out.push_back({theta, kstar.real(), kstar.imag(), mode, terms});
        }
        return out;
    }

    // Exact symbol with grid-continuation of the complex logarithm.
    double prevPhase = 0.0;
    bool first = true;
    for (const double theta : thetas) {
        const Complex g = symbol(st, theta);
        const double mag = std::abs(g);
        if (mag < 1e-14)
            throw BranchFailureError("symbol magnitude vanished on the dispersion grid");
        double phase = std::arg(g);
        if (!first) {
            while (phase - prevPhase > M_PI) phase -= 2.0 * M_PI;
            while (phase - prevPhase < -M_PI) phase += 2.0 * M_PI;
        }
        first = false;
        prevPhase = phase;
        // kstar*dx = (i/nu)(ln|g| + i*phase) = (-phase + i ln|g|)/nu
        out.push_back({theta, -phase / nu, std::log(mag) / nu, mode, 0});
    }
    return out;
}

SpectrumReport spectrumSweep(int degree, NodeKind kind, double alpha, OmegaSpec omega,
                             CflReference ref, BoundaryModel bc,
                             const std::vector<double>& cfls) {
    for (std::size_t i = 0; i + 1 < cfls.size(); ++i)
        if (!(cfls[i] < cfls[i + 1]))
            throw InvalidArgumentError("spectrum sweep requires an increasing cfl grid");

    const NodeSet nodes = makeNodes(degree, kind, alpha);
    SpectrumReport rep;
    rep.cfls = cfls;
    rep.eigenvalues.reserve(cfls.size());
    rep.maxAbs.reserve(cfls.size());

    for (const double cfl : cfls) {
        try {
            const Discretization disc(1.0, 1.0, cfl, ref, omega, nodes.dMin);
            const ElementOperators ops(nodes, disc);
            const Matrix m = (bc == BoundaryModel::Periodic) ? ops.periodicOperator()
                                                             : ops.zeroNeighborOperator();
            ComplexVector eigs = eigenvalues(m);
            double mx = 0.0;
            bool complexPair = false;
            for (const Complex& l : eigs) {
                mx = std::max(mx, std::abs(l));
                if (std::abs(l.imag()) > 1e-8 * (1.0 + std::abs(l))) complexPair = true;
            }
            if (complexPair && !rep.mergePoint) rep.mergePoint = cfl;
            rep.eigenvalues.push_back(std::move(eigs));
            rep.maxAbs.push_back(mx);
        } catch (const Error& e) {
            char buf[192];
            std::snprintf(buf, sizeof buf, "%s (at cfl = %.12g)", e.what(), cfl);
            throw NoConvergenceError(buf);
        }
    }
    return rep;
}

double blockSymbolRadiusAt(const ElementOperators& ops, double thetaE) {
    const Matrix& p = ops.prev();
    const Matrix& s = ops.self();
    const Matrix& nx = ops.next();
    const std::size_t n = s.rows();
    const double c = std::cos(thetaE), si = std::sin(thetaE);

    // G = p e^{-i t} + s + nx e^{+i t}; embed as [[Re, -Im], [Im, Re]].
    Matrix em(2 * n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t cidx = 0; cidx < n; ++cidx) {
            const double re = p(r, cidx) * c + s(r, cidx) + nx(r, cidx) * c;
            const double im = -p(r, cidx) * si + nx(r, cidx) * si;
            em(r, cidx) = re;
            em(r + n, cidx + n) = re;
            em(r, cidx + n) = -im;
            em(r + n, cidx) = im;
        }
    }
    const ComplexVector eigs = eigenvalues(em);
    return eigs.empty() ? 0.0 : std::abs(eigs.front());
}

double blockSymbolRadius(const ElementOperators& ops, const std::vector<double>& thetaGrid) {
    double best = 0.0;
    for (const double t : thetaGrid) best = std::max(best, blockSymbolRadiusAt(ops, t));
    return best;
}

} // namespace slsem
