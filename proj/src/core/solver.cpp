#include "solver.hpp"

#include <cmath>

namespace slsem {

namespace {
constexpr double kDivergenceGuard = 1e12;
constexpr double kTwoPi = 2.0 * M_PI;
} // namespace

Mesh makeMesh(int elements, NodeSet nodes) {
    if (elements < 1) throw InvalidArgumentError("mesh requires at least one element");
    Mesh mesh;
    mesh.elements = elements;
    mesh.dx = 1.0 / static_cast<double>(elements);
    mesh.nodes = std::move(nodes);
    return mesh;
}

SimState initSine(const Mesh& mesh) {
    SimState s;
    s.t = 0.0;
    s.stepCount = 0;
    s.q.assign(static_cast<std::size_t>(mesh.elements),
               std::vector<double>(mesh.nodes.count(), 0.0));
    for (int k = 0; k < mesh.elements; ++k)
        for (std::size_t m = 0; m < mesh.nodes.count(); ++m)
            s.q[static_cast<std::size_t>(k)][m] = std::sin(kTwoPi * mesh.nodeCoord(k, static_cast<int>(m)));
    return s;
}

SimState step(const SimState& state, const Mesh& mesh, const ElementOperators& ops) {
    const int K = mesh.elements;
    const std::size_t n = mesh.nodes.count();
    SimState out;
    out.t = state.t + ops.discretization().dt();
    out.stepCount = state.stepCount + 1;
    out.q.assign(static_cast<std::size_t>(K), std::vector<double>(n, 0.0));

    const Matrix& np = ops.prev();
    const Matrix& ns = ops.self();
    const Matrix& nn = ops.next();
    for (int k = 0; k < K; ++k) {
        const std::vector<double>& qm = state.q[static_cast<std::size_t>((k - 1 + K) % K)];
        const std::vector<double>& q0 = state.q[static_cast<std::size_t>(k)];
        const std::vector<double>& qp = state.q[static_cast<std::size_t>((k + 1) % K)];
        std::vector<double>& dst = out.q[static_cast<std::size_t>(k)];
        for (std::size_t r = 0; r < n; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < n; ++c)
                acc += np(r, c) * qm[c] + ns(r, c) * q0[c] + nn(r, c) * qp[c];
            if (!(std::abs(acc) <= kDivergenceGuard))
                throw DivergenceDetectedError("solution magnitude exceeded 1e12");
            dst[r] = acc;
        }
    }
    return out;
}

const std::vector<std::pair<double, double>>& gaussLegendre16() {
    // Newton iteration on P_16; nodes/weights mapped from [-1,1] to [-1/2,1/2].
    static const std::vector<std::pair<double, double>> table = [] {
        constexpr int n = 16;
        std::vector<std::pair<double, double>> out(n);
        for (int i = 0; i < n / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * pp * pp);
            out[static_cast<std::size_t>(i)] = {x / 2.0, w / 2.0};
            out[static_cast<std::size_t>(n - 1 - i)] = {-x / 2.0, w / 2.0};
        }
        return out;
    }();
    return table;
}

double l2Error(const SimState& state, const Mesh& mesh,
               const std::function<double(double)>& exact) {
    const Matrix v = vandermonde(mesh.nodes.nodes, mesh.nodes.count());
    const LuFactors lu(v);
    double acc = 0.0;
    for (int k = 0; k < mesh.elements; ++k) {
        const std::vector<double> coeffs = lu.solve(state.q[static_cast<std::size_t>(k)]);
        for (const auto& [chi, w] : gaussLegendre16()) {
            const double x = mesh.center(k) + chi * mesh.dx;
            const double diff = evalMonomial(coeffs, chi) - exact(x);
            acc += w * diff * diff * mesh.dx;
        }
    }
    return std::sqrt(acc);
}

double nodalRmsError(const SimState& state, const Mesh& mesh,
                     const std::function<double(double)>& exact) {
    double acc = 0.0;
    std::size_t count = 0;
    for (int k = 0; k < mesh.elements; ++k) {
        for (std::size_t m = 0; m < mesh.nodes.count(); ++m) {
            const double diff = state.q[static_cast<std::size_t>(k)][m] -
                                exact(mesh.nodeCoord(k, static_cast<int>(m)));
            acc += diff * diff;
            ++count;
        }
    }
    return std::sqrt(acc / static_cast<double>(count));
}

double totalMass(const SimState& state, const Mesh& mesh) {
    const Matrix v = vandermonde(mesh.nodes.nodes, mesh.nodes.count());
    const LuFactors lu(v);
    double acc = 0.0;
    for (int k = 0; k < mesh.elements; ++k) {
        const std::vector<double> coeffs = lu.solve(state.q[static_cast<std::size_t>(k)]);
        // integral of chi^m over [-1/2, 1/2]: 0 for odd m, 2^{-m}/(m+1) for even m.
        double integral = 0.0;
        for (std::size_t m = 0; m < coeffs.size(); m += 2)
            integral += coeffs[m] / (std::pow(2.0, static_cast<double>(m)) * (static_cast<double>(m) + 1.0));
        acc += integral * mesh.dx;
    }
    return acc;
}

RunReport run(const RunConfig& config) {
    if (!(config.tEnd >= 0.0)) throw InvalidArgumentError("t_end must be nonnegative");

    const NodeSet nodes = makeNodes(config.degree, config.kind, config.alpha);
    const Mesh mesh = makeMesh(config.elements, nodes);
    const Discretization disc(config.waveSpeed, mesh.dx, config.cfl, config.cflRef,
                              config.omega, nodes.dMin);

    RunReport rep;
    rep.config = config;
    rep.mesh = mesh;
    rep.dt = disc.dt();
    rep.nu = disc.nu();
    rep.resolvedOmega = disc.resolvedOmega();
    rep.dMin = nodes.dMin;

    SimState state = initSine(mesh);
    const auto normOf = [&](const SimState& s) {
        return l2Error(s, mesh, [](double) { return 0.0; });
    };
    rep.initialNorm = normOf(state);
    rep.normHistory.emplace_back(state.t, rep.initialNorm);

    if (config.tEnd > 0.0) {
        const ElementOperators ops(nodes, disc);
        rep.condVstar = ops.condVstar();
        const double dt = disc.dt();
        const auto nFull = static_cast<std::int64_t>(std::floor(config.tEnd / dt + 1e-12));
        try {
            for (std::int64_t i = 0; i < nFull; ++i) {
                state = step(state, mesh, ops);
                rep.normHistory.emplace_back(state.t, normOf(state));
            }
            const double remainder = config.tEnd - static_cast<double>(nFull) * dt;
            if (remainder > 1e-12 * std::max(1.0, config.tEnd)) {
                const Discretization shortDisc =
                    disc.withNu(config.waveSpeed * remainder / mesh.dx);
                const ElementOperators shortOps(nodes, shortDisc);
                state = step(state, mesh, shortOps);
                rep.normHistory.emplace_back(state.t, normOf(state));
            }
            state.t = config.tEnd;  // exact landing
        } catch (const DivergenceDetectedError&) {
            rep.diverged = true;
        }
    }

    const double a = config.waveSpeed;
    const double tEndActual = rep.diverged ? state.t : config.tEnd;
    const auto exact = [a, tEndActual](double x) { return std::sin(kTwoPi * (x - a * tEndActual)); };
    rep.steps = state.stepCount;
    rep.l2Error = l2Error(state, mesh, exact);
    rep.nodalRmsError = nodalRmsError(state, mesh, exact);
    rep.mass = totalMass(state, mesh);
    rep.finalNorm = normOf(state);
    rep.finalState = std::move(state);
    return rep;
}

ConvergenceTable convergenceStudy(RunConfig base, const std::vector<int>& elementCounts) {
    if (elementCounts.size() < 2)
        throw InvalidArgumentError("convergence study requires at least two element counts");
    ConvergenceTable table;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const int K : elementCounts) {
        base.elements = K;
        const RunReport rep = run(base);
        table.rows.push_back({K, rep.l2Error, rep.nodalRmsError});
        const double x = std::log(1.0 / static_cast<double>(K));
        const double y = std::log(rep.l2Error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(elementCounts.size());
    table.estimatedOrder = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return table;
}

} // namespace slsem
