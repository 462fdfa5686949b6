#include "slsem.h"

#include <cmath>
#include <cstring>
#include <string>

#include "../core/analysis.hpp"
#include "../core/solver.hpp"

namespace {

thread_local std::string g_lastError;

void setError(const std::string& msg) { g_lastError = msg; }

slsem_status classify(const std::exception& e) {
    using namespace slsem;
    setError(e.what());
    if (dynamic_cast<const SingularMatrixError*>(&e)) return SLSEM_ERR_SINGULAR_MATRIX;
    if (dynamic_cast<const NoConvergenceError*>(&e)) return SLSEM_ERR_NO_CONVERGENCE;
    if (dynamic_cast<const InconsistentSymbolError*>(&e)) return SLSEM_ERR_INCONSISTENT_SYMBOL;
    if (dynamic_cast<const DegenerateDependenceError*>(&e)) return SLSEM_ERR_DEGENERATE_DEPENDENCE;
    if (dynamic_cast<const BracketInvalidError*>(&e)) return SLSEM_ERR_BRACKET_INVALID;
    if (dynamic_cast<const BranchFailureError*>(&e)) return SLSEM_ERR_BRANCH_FAILURE;
    if (dynamic_cast<const DivergenceDetectedError*>(&e)) return SLSEM_ERR_DIVERGENCE;
    if (dynamic_cast<const InvalidArgumentError*>(&e)) return SLSEM_ERR_INVALID_ARGUMENT;
    return SLSEM_ERR_INTERNAL;
}

template <typename Fn>
slsem_status guarded(Fn&& fn) {
    try {
        fn();
        return SLSEM_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        setError("unknown error");
        return SLSEM_ERR_INTERNAL;
    }
}

slsem::NodeKind toKind(slsem_nodes_kind kind) {
    switch (kind) {
        case SLSEM_NODES_CHEBYSHEV: return slsem::NodeKind::Chebyshev;
        case SLSEM_NODES_UNIFORM: return slsem::NodeKind::Uniform;
        case SLSEM_NODES_ALPHA: return slsem::NodeKind::SymmetricAlpha;
    }
    throw slsem::InvalidArgumentError("unknown node kind");
}

slsem::CflReference toRef(slsem_cfl_ref ref) {
    return ref == SLSEM_CFL_MIN_SPACING ? slsem::CflReference::MinSpacing
                                        : slsem::CflReference::Element;
}

slsem::OmegaSpec toOmega(int isUpwind, double value) {
    return isUpwind ? slsem::OmegaSpec::makeUpwind() : slsem::OmegaSpec::numeric(value);
}

void requireArg(bool ok, const char* what) {
    if (!ok) throw slsem::InvalidArgumentError(what);
}

} // namespace

struct slsem_scheme {
    slsem::NodeSet nodes;
    slsem::Discretization disc;
    slsem::ElementOperators ops;
    slsem::CenterStencil stencil;

    slsem_scheme(slsem::NodeSet n, slsem::Discretization d)
        : nodes(std::move(n)), disc(d), ops(nodes, disc), stencil(ops.centerStencil()) {}
};

struct slsem_sim {
    slsem::RunConfig config;
    slsem::RunReport report;
    bool hasRun = false;
};

extern "C" {

const char* slsem_last_error(void) { return g_lastError.c_str(); }

const char* slsem_status_name(slsem_status status) {
    switch (status) {
        case SLSEM_OK: return "ok";
        case SLSEM_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case SLSEM_ERR_SINGULAR_MATRIX: return "singular_matrix";
        case SLSEM_ERR_NO_CONVERGENCE: return "no_convergence";
        case SLSEM_ERR_INCONSISTENT_SYMBOL: return "inconsistent_symbol";
        case SLSEM_ERR_DEGENERATE_DEPENDENCE: return "degenerate_dependence";
        case SLSEM_ERR_BRACKET_INVALID: return "bracket_invalid";
        case SLSEM_ERR_BRANCH_FAILURE: return "branch_failure";
        case SLSEM_ERR_DIVERGENCE: return "divergence_detected";
        case SLSEM_ERR_INTERNAL: return "internal";
    }
    return "?";
}

const char* slsem_version(void) { return "1.0.0"; }

slsem_status slsem_scheme_create(const slsem_config* config, slsem_scheme** out) {
    return guarded([&] {
        requireArg(config != nullptr && out != nullptr, "null pointer argument");
        auto nodes = slsem::makeNodes(config->degree, toKind(config->nodes), config->alpha);
        slsem::Discretization disc(config->wave_speed, config->element_width, config->cfl,
                                   toRef(config->cfl_ref),
                                   toOmega(config->omega_is_upwind, config->omega), nodes.dMin);
        *out = new slsem_scheme(std::move(nodes), disc);
    });
}

void slsem_scheme_destroy(slsem_scheme* scheme) { delete scheme; }

int slsem_scheme_degree(const slsem_scheme* scheme) { return scheme->nodes.degree; }
double slsem_scheme_nu(const slsem_scheme* scheme) { return scheme->disc.nu(); }
double slsem_scheme_dt(const slsem_scheme* scheme) { return scheme->disc.dt(); }
double slsem_scheme_d_min(const slsem_scheme* scheme) { return scheme->nodes.dMin; }
double slsem_scheme_resolved_omega(const slsem_scheme* scheme) {
    return scheme->disc.resolvedOmega();
}
double slsem_scheme_cond_vstar(const slsem_scheme* scheme) { return scheme->ops.condVstar(); }

slsem_status slsem_scheme_nodes(const slsem_scheme* scheme, double* out) {
    return guarded([&] {
        requireArg(scheme != nullptr && out != nullptr, "null pointer argument");
        std::memcpy(out, scheme->nodes.nodes.data(), scheme->nodes.count() * sizeof(double));
    });
}

slsem_status slsem_scheme_matrix(const slsem_scheme* scheme, slsem_matrix_which which,
                                 double* out) {
    return guarded([&] {
        requireArg(scheme != nullptr && out != nullptr, "null pointer argument");
        const slsem::Matrix m = [&] {
            switch (which) {
                case SLSEM_MATRIX_PREV: return scheme->ops.prev();
                case SLSEM_MATRIX_SELF: return scheme->ops.self();
                case SLSEM_MATRIX_NEXT: return scheme->ops.next();
                case SLSEM_MATRIX_PERIODIC: return scheme->ops.periodicOperator();
            }
            throw slsem::InvalidArgumentError("unknown matrix selector");
        }();
        std::memcpy(out, m.data().data(), m.data().size() * sizeof(double));
    });
}

slsem_status slsem_scheme_eigenvalues(const slsem_scheme* scheme, slsem_bc bc, double* re,
                                      double* im) {
    return guarded([&] {
        requireArg(scheme != nullptr && re != nullptr && im != nullptr, "null pointer argument");
        const slsem::Matrix m = (bc == SLSEM_BC_PERIODIC) ? scheme->ops.periodicOperator()
                                                          : scheme->ops.zeroNeighborOperator();
        const slsem::ComplexVector eigs = slsem::eigenvalues(m);
        for (std::size_t i = 0; i < eigs.size(); ++i) {
            re[i] = eigs[i].real();
            im[i] = eigs[i].imag();
        }
    });
}

int slsem_scheme_stencil_size(const slsem_scheme* scheme) {
    return static_cast<int>(scheme->stencil.size());
}

slsem_status slsem_scheme_stencil(const slsem_scheme* scheme, double* deltas, double* weights) {
    return guarded([&] {
        requireArg(scheme != nullptr && deltas != nullptr && weights != nullptr,
                   "null pointer argument");
        std::memcpy(deltas, scheme->stencil.deltas.data(),
                    scheme->stencil.size() * sizeof(double));
        std::memcpy(weights, scheme->stencil.weights.data(),
                    scheme->stencil.size() * sizeof(double));
    });
}

slsem_status slsem_scheme_symbol(const slsem_scheme* scheme, double theta, double* re,
                                 double* im) {
    return guarded([&] {
        requireArg(scheme != nullptr && re != nullptr && im != nullptr, "null pointer argument");
        const slsem::Complex g = slsem::symbol(scheme->stencil, theta);
        *re = g.real();
        *im = g.imag();
    });
}

slsem_status slsem_scheme_max_abs_symbol(const slsem_scheme* scheme, double* out) {
    return guarded([&] {
        requireArg(scheme != nullptr && out != nullptr, "null pointer argument");
        *out = slsem::maxAbsSymbol(scheme->stencil);
    });
}

slsem_status slsem_mea(const slsem_scheme* scheme, int terms, double* a, double* b) {
    return guarded([&] {
        requireArg(scheme != nullptr && a != nullptr && b != nullptr, "null pointer argument");
        const slsem::MEReport rep = slsem::mea(scheme->stencil, scheme->disc, terms);
        std::memcpy(a, rep.a.data(), rep.a.size() * sizeof(double));
        std::memcpy(b, rep.b.data(), rep.b.size() * sizeof(double));
    });
}

slsem_status slsem_zero_diffusion_omega(int degree, slsem_nodes_kind nodes, double alpha,
                                        double cfl, slsem_cfl_ref cfl_ref, double* out) {
    return guarded([&] {
        requireArg(out != nullptr, "null pointer argument");
        *out = slsem::zeroDiffusionOmega(degree, toKind(nodes), alpha, cfl, toRef(cfl_ref));
    });
}

slsem_status slsem_vn_stability_limit(int degree, slsem_nodes_kind nodes, double alpha,
                                      int omega_is_upwind, double omega,
                                      slsem_cfl_ref cfl_ref, double bracket_lo,
                                      double bracket_hi, double* out) {
    return guarded([&] {
        requireArg(out != nullptr, "null pointer argument");
        *out = slsem::vnStabilityLimit(degree, toKind(nodes), alpha,
                                       toOmega(omega_is_upwind, omega), toRef(cfl_ref),
                                       bracket_lo, bracket_hi);
    });
}

slsem_status slsem_dispersion(const slsem_scheme* scheme, const double* thetas, int count,
                              slsem_dispersion_mode mode, int terms, double* re_out,
                              double* im_out) {
    return guarded([&] {
        requireArg(scheme != nullptr && thetas != nullptr && re_out != nullptr &&
                       im_out != nullptr && count > 0,
                   "invalid dispersion arguments");
        const std::vector<double> grid(thetas, thetas + count);
        const auto samples = slsem::dispersionCurve(
            scheme->stencil, scheme->disc, grid,
            mode == SLSEM_DISPERSION_EXACT_SYMBOL ? slsem::DispersionMode::ExactSymbol
                                                  : slsem::DispersionMode::MeTruncated,
            terms);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            re_out[i] = samples[i].reKstarDx;
            im_out[i] = samples[i].imKstarDx;
        }
    });
}

slsem_status slsem_spectrum_sweep(int degree, slsem_nodes_kind nodes, double alpha,
                                  int omega_is_upwind, double omega, slsem_cfl_ref cfl_ref,
                                  slsem_bc bc, const double* cfls, int count, double* re_out,
                                  double* im_out, double* merge_point, int* has_merge) {
    return guarded([&] {
        requireArg(cfls != nullptr && re_out != nullptr && im_out != nullptr &&
                       merge_point != nullptr && has_merge != nullptr && count > 0,
                   "invalid spectrum arguments");
        const std::vector<double> grid(cfls, cfls + count);
        const slsem::SpectrumReport rep = slsem::spectrumSweep(
            degree, toKind(nodes), alpha, toOmega(omega_is_upwind, omega), toRef(cfl_ref),
            bc == SLSEM_BC_PERIODIC ? slsem::BoundaryModel::Periodic
                                    : slsem::BoundaryModel::ZeroNeighbor,
            grid);
        const std::size_t width = static_cast<std::size_t>(degree) + 1;
        for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
            for (std::size_t j = 0; j < width; ++j) {
                re_out[i * width + j] = rep.eigenvalues[i][j].real();
                im_out[i * width + j] = rep.eigenvalues[i][j].imag();
            }
        }
        *has_merge = rep.mergePoint.has_value() ? 1 : 0;
        *merge_point = rep.mergePoint.value_or(0.0);
    });
}

slsem_status slsem_block_symbol_radius(const slsem_scheme* scheme, const double* thetas,
                                       int count, double* out) {
    return guarded([&] {
        requireArg(scheme != nullptr && thetas != nullptr && out != nullptr && count > 0,
                   "invalid block symbol arguments");
        const std::vector<double> grid(thetas, thetas + count);
        *out = slsem::blockSymbolRadius(scheme->ops, grid);
    });
}

slsem_status slsem_sim_create(const slsem_config* config, int elements, slsem_sim** out) {
    return guarded([&] {
        requireArg(config != nullptr && out != nullptr, "null pointer argument");
        requireArg(elements >= 1, "simulation requires at least one element");
        slsem::RunConfig rc;
        rc.degree = config->degree;
        rc.kind = toKind(config->nodes);
        rc.alpha = config->alpha;
        rc.elements = elements;
        rc.cfl = config->cfl;
        rc.cflRef = toRef(config->cfl_ref);
        rc.omega = toOmega(config->omega_is_upwind, config->omega);
        rc.waveSpeed = config->wave_speed;
        // Validate eagerly so config errors surface at creation.
        slsem::makeNodes(rc.degree, rc.kind, rc.alpha);
        auto sim = new slsem_sim();
        sim->config = rc;
        *out = sim;
    });
}

void slsem_sim_destroy(slsem_sim* sim) { delete sim; }

slsem_status slsem_sim_run(slsem_sim* sim, double t_end, slsem_run_report* report) {
    return guarded([&] {
        requireArg(sim != nullptr && report != nullptr, "null pointer argument");
        sim->config.tEnd = t_end;
        sim->report = slsem::run(sim->config);
        sim->hasRun = true;
        const slsem::RunReport& r = sim->report;
        report->dt = r.dt;
        report->nu = r.nu;
        report->resolved_omega = r.resolvedOmega;
        report->d_min = r.dMin;
        report->cond_vstar = r.condVstar;
        report->steps = r.steps;
        report->l2_error = r.l2Error;
        report->nodal_rms_error = r.nodalRmsError;
        report->mass = r.mass;
        report->initial_norm = r.initialNorm;
        report->final_norm = r.finalNorm;
        report->diverged = r.diverged ? 1 : 0;
    });
}

int slsem_sim_node_count(const slsem_sim* sim) {
    if (!sim->hasRun) return 0;
    return sim->report.mesh.elements * static_cast<int>(sim->report.mesh.nodes.count());
}

slsem_status slsem_sim_solution(const slsem_sim* sim, double* x, double* q, double* q_exact) {
    return guarded([&] {
        requireArg(sim != nullptr && x != nullptr && q != nullptr && q_exact != nullptr,
                   "null pointer argument");
        requireArg(sim->hasRun, "simulation has not been run");
        const slsem::RunReport& r = sim->report;
        std::size_t idx = 0;
        const double t = r.finalState.t;
        const double a = r.config.waveSpeed;
        for (int k = 0; k < r.mesh.elements; ++k) {
            for (std::size_t m = 0; m < r.mesh.nodes.count(); ++m) {
                const double xc = r.mesh.nodeCoord(k, static_cast<int>(m));
                x[idx] = xc;
                q[idx] = r.finalState.q[static_cast<std::size_t>(k)][m];
                q_exact[idx] = std::sin(2.0 * M_PI * (xc - a * t));
                ++idx;
            }
        }
    });
}

int slsem_sim_history_size(const slsem_sim* sim) {
    if (!sim->hasRun) return 0;
    return static_cast<int>(sim->report.normHistory.size());
}

slsem_status slsem_sim_history(const slsem_sim* sim, double* t, double* norm) {
    return guarded([&] {
        requireArg(sim != nullptr && t != nullptr && norm != nullptr, "null pointer argument");
        requireArg(sim->hasRun, "simulation has not been run");
        for (std::size_t i = 0; i < sim->report.normHistory.size(); ++i) {
            t[i] = sim->report.normHistory[i].first;
            norm[i] = sim->report.normHistory[i].second;
        }
    });
}

slsem_status slsem_convergence_study(const slsem_config* config, const int* element_counts,
                                     int count, double t_end, double* errs, double* nodal_rms,
                                     double* order) {
    return guarded([&] {
        requireArg(config != nullptr && element_counts != nullptr && errs != nullptr &&
                       nodal_rms != nullptr && order != nullptr && count >= 2,
                   "invalid convergence arguments");
        slsem::RunConfig rc;
        rc.degree = config->degree;
        rc.kind = toKind(config->nodes);
        rc.alpha = config->alpha;
        rc.cfl = config->cfl;
        rc.cflRef = toRef(config->cfl_ref);
        rc.omega = toOmega(config->omega_is_upwind, config->omega);
        rc.waveSpeed = config->wave_speed;
        rc.tEnd = t_end;
        const std::vector<int> ks(element_counts, element_counts + count);
        const slsem::ConvergenceTable table = slsem::convergenceStudy(rc, ks);
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            errs[i] = table.rows[i].l2Error;
            nodal_rms[i] = table.rows[i].nodalRms;
        }
        *order = table.estimatedOrder;
    });
}

} // extern "C"
