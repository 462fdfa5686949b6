#ifndef SLSEM_SOLVER_HPP
#define SLSEM_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "analysis.hpp"
#include "operators.hpp"

namespace slsem {

// Periodic K-element mesh on [0, 1]; dx = 1/K.
struct Mesh {
    int elements = 0;
    double dx = 0.0;
    NodeSet nodes;

    double center(int k) const { return (k + 0.5) * dx; }
    double nodeCoord(int k, int m) const { return center(k) + nodes.nodes[static_cast<std::size_t>(m)] * dx; }
};

Mesh makeMesh(int elements, NodeSet nodes);

struct SimState {
    double t = 0.0;
    std::int64_t stepCount = 0;
    std::vector<std::vector<double>> q;  // K x (P+1)
};

struct RunConfig {
    int degree = 1;
    NodeKind kind = NodeKind::Chebyshev;
    double alpha = 0.0;
    int elements = 10;
    double cfl = 0.1;
    CflReference cflRef = CflReference::MinSpacing;
    OmegaSpec omega = OmegaSpec::makeUpwind();
    double tEnd = 1.0;
    double waveSpeed = 1.0;
};

struct RunReport {
    RunConfig config;
    double dt = 0.0;
    double nu = 0.0;
    double resolvedOmega = 0.0;
    double dMin = 0.0;
    double condVstar = 0.0;
    std::int64_t steps = 0;
    double l2Error = 0.0;
    double nodalRmsError = 0.0;
    double mass = 0.0;
    double initialNorm = 0.0;
    double finalNorm = 0.0;
    bool diverged = false;
    std::vector<std::pair<double, double>> normHistory;  // (t, L2 norm)
    SimState finalState;
    Mesh mesh;
};

SimState initSine(const Mesh& mesh);

// One step of Q'[k] = N_prev Q[k-1] + N_self Q[k] + N_next Q[k+1] (indices mod K).
// Throws DivergenceDetectedError when any |Q| exceeds 1e12.
SimState step(const SimState& state, const Mesh& mesh, const ElementOperators& ops);

// Quadrature L2 norm of the difference against a reference function, via
// per-element monomial reconstruction and 16-point Gauss-Legendre.
double l2Error(const SimState& state, const Mesh& mesh,
               const std::function<double(double)>& exact);

double nodalRmsError(const SimState& state, const Mesh& mesh,
                     const std::function<double(double)>& exact);

// Element-integrated total of Q (exact for the polynomial representation).
double totalMass(const SimState& state, const Mesh& mesh);

// Advances the sine initial condition to tEnd; n_full = floor(tEnd/dt) whole
// steps plus one shortened, re-assembled step landing exactly on tEnd.
// Errors against q(x, tEnd) = sin(2 pi (x - a tEnd)).
RunReport run(const RunConfig& config);

struct ConvergenceRow {
    int elements = 0;
    double l2Error = 0.0;
    double nodalRms = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double estimatedOrder = 0.0;  // least-squares slope of log(error) vs log(1/K)
};

ConvergenceTable convergenceStudy(RunConfig base, const std::vector<int>& elementCounts);

// 16-point Gauss-Legendre nodes/weights on [-1/2, 1/2].
const std::vector<std::pair<double, double>>& gaussLegendre16();

} // namespace slsem

#endif
