#include "sptz2/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sptz2/error.hpp"
#include "sptz2/linalg.hpp"

namespace sptz2::reflection {

namespace {

struct GaugeAttempt {
    std::optional<GaugeSolution> solution;
    ErrorCode failure = ErrorCode::NotSameState;
    std::string message;
    double measure = 0.0; ///< 1 − |λ| for NotSameState, deviation otherwise
};

GaugeAttempt attempt_gauge(const mps::MpsTuple &v, const mps::MpsTuple &w, const Config &cfg) {
    if(v.d() != w.d() || v.k() != w.k())
        fail(ErrorCode::InvalidTuple, "gauge_solve needs tuples of equal d and k");

    auto peripheral = linalg::peripheral_eigs(mps::mixed_transfer_operator(v.matrices(), w.matrices()), cfg.tol.mixed);
    const auto &dominant = peripheral.front();
    double radius        = std::abs(dominant.value);

    GaugeAttempt out;
    if(radius < 1.0 - cfg.tol.mixed) {
        out.failure = ErrorCode::NotSameState;
        out.measure = 1.0 - radius;
        out.message = "mixed transfer spectral radius " + std::to_string(radius) + " < 1";
        return out;
    }

    linalg::PolarResult polar;
    try {
        polar = linalg::polar_unitary(dominant.matrix, cfg.tol.mixed);
    } catch(const Error &e) {
        out.failure = ErrorCode::NotUnitaryMultiple;
        out.measure = 1.0;
        out.message = e.what();
        return out;
    }
    if(polar.deviation > cfg.tol.mixed) {
        out.failure = ErrorCode::NotUnitaryMultiple;
        out.measure = polar.deviation;
        out.message = "mixed eigenmatrix deviates from a unitary multiple by " + std::to_string(polar.deviation);
        return out;
    }

    ComplexMatrix u = polar.unitary.adjoint();
    Complex phase   = dominant.value / radius;
    double residual = 0.0;
    for(Index mu = 0; mu < v.d(); ++mu) residual = std::max(residual, (u * v[mu] - phase * w[mu] * u).norm());
    if(residual > cfg.tol.gauge) {
        out.failure = ErrorCode::GaugeRelationFailed;
        out.measure = residual;
        out.message = "gauge relation residual " + std::to_string(residual);
        return out;
    }
    out.solution = GaugeSolution{std::move(u), phase, residual, polar.deviation, radius};
    return out;
}

} // namespace

ReflectedTuple reflected_tuple(const mps::MpsTuple &v, const mps::InvariantState &state, const Config &cfg) {
    auto eig      = linalg::herm_eig(state.rho, cfg.tol.herm);
    const Index k = v.k();
    ComplexMatrix basis = eig.vectors.rowwise().reverse();
    RealVector lambda   = eig.values.reverse();
    if(lambda(k - 1) <= cfg.tol.rank)
        fail(ErrorCode::NotFaithful, "smallest eigenvalue of ρ is " + std::to_string(lambda(k - 1)));

    // In the ρ-eigenbasis c is entrywise conjugation, so (c v c)* = vᵀ.
    auto sqrt_lambda     = lambda.cwiseSqrt().cast<Complex>().eval();
    auto inv_sqrt_lambda = lambda.cwiseSqrt().cwiseInverse().cast<Complex>().eval();

    // A blocked index stands for a word of sites; reflection reads that word backwards.
    const Index site_d = v.site_dimension(), sites = v.sites_per_symbol();
    mps::RawTuple v_eig, tilde_eig, tilde;
    for(Index mu = 0; mu < v.d(); ++mu) v_eig.push_back(basis.adjoint() * v[mu] * basis);
    for(Index mu = 0; mu < v.d(); ++mu) {
        const ComplexMatrix &a = v_eig[static_cast<std::size_t>(mps::reversed_symbol(mu, site_d, sites))];
        ComplexMatrix t        = inv_sqrt_lambda.asDiagonal() * a.transpose() * sqrt_lambda.asDiagonal();
        tilde.push_back(basis * t * basis.adjoint());
        tilde_eig.push_back(std::move(t));
    }
    auto wrap = [&](mps::RawTuple m) {
        return mps::MpsTuple::from_normalized(std::move(m), cfg.tol.norm).with_sites(site_d, sites);
    };
    return {wrap(std::move(tilde)), wrap(std::move(tilde_eig)), wrap(std::move(v_eig)), std::move(basis),
            std::move(lambda)};
}

GaugeSolution gauge_solve(const mps::MpsTuple &v, const mps::MpsTuple &w, const Config &cfg) {
    auto attempt = attempt_gauge(v, w, cfg);
    if(!attempt.solution) fail(attempt.failure, attempt.message);
    return *attempt.solution;
}

ReflectionEvidence reflection_invariant(const mps::MpsTuple &v, const mps::InvariantState &state,
                                        const mps::PrimitivityCertificate &cert, const Config &cfg) {
    auto reflected = reflected_tuple(v, state, cfg);
    auto attempt   = attempt_gauge(v, reflected.tilde, cfg);

    Index window = cfg.reflection_window ? static_cast<Index>(cfg.reflection_window)
                                         : 2 * cert.injectivity_length.value_or(1);
    while(window > 1) {
        try {
            mps::window_dimension(v.d(), window, cfg.window_cap);
            break;
        } catch(const Error &) {
            --window;
        }
    }

    double mismatch = 0.0;
    for(Index l = 1; l <= window; ++l) {
        auto m   = mps::marginal(v, state, l, cfg);
        mismatch = std::max(mismatch, (mps::reverse_sites(m.matrix, v.site_dimension(), l * v.sites_per_symbol()) -
                                       m.matrix)
                                          .norm());
    }

    ReflectionEvidence out{};
    out.via_gauge         = attempt.solution.has_value();
    out.gauge_residual    = out.via_gauge ? attempt.solution->relation_residual : attempt.measure;
    out.gauge_failure     = attempt.message;
    out.via_marginals     = mismatch <= cfg.tol.marginal;
    out.marginal_residual = mismatch;
    out.window            = window;
    out.gauge             = attempt.solution;
    out.invariant         = out.via_gauge;

    if(out.via_gauge != out.via_marginals)
        fail(ErrorCode::Inconclusive, "gauge route says " + std::string(out.via_gauge ? "invariant" : "not invariant") +
                                          " (" + (out.via_gauge ? "residual " + std::to_string(out.gauge_residual)
                                                                : attempt.message) +
                                          ") but marginal reversal up to l=" + std::to_string(window) +
                                          " gives mismatch " + std::to_string(mismatch));
    return out;
}

ReflectionEvidence reflection_invariant(const mps::MpsTuple &v, const Config &cfg) {
    auto cert = mps::primitivity(v, cfg);
    if(!cert.is_primitive) fail(ErrorCode::NotPrimitive, "reflection invariance is only certified for primitive tuples");
    return reflection_invariant(v, mps::invariant_state(v, cfg), cert, cfg);
}

IndexReport z2_index(const mps::RawTuple &raw, const Config &cfg) {
    auto tuple = [&] {
        try {
            return mps::normalize(raw, cfg);
        } catch(const Error &e) {
            if(e.code() == ErrorCode::NotNormalizable) fail(ErrorCode::NotPrimitive, e.what());
            throw;
        }
    }();
    return z2_index(tuple, cfg);
}

IndexReport z2_index(const mps::MpsTuple &tuple, const Config &cfg) {
    auto cert = mps::primitivity(tuple, cfg);
    if(!cert.is_primitive)
        fail(ErrorCode::NotPrimitive, std::to_string(cert.peripheral_count) + " peripheral eigenvalue(s), span dimension " +
                                          std::to_string(cert.span_dimension) + " of " +
                                          std::to_string(tuple.k() * tuple.k()));

    auto state    = mps::invariant_state(tuple, cfg);
    auto evidence = reflection_invariant(tuple, state, cert, cfg);
    if(!evidence.invariant)
        fail(ErrorCode::NotReflectionInvariant, evidence.gauge_failure + "; reflected-marginal mismatch " +
                                                    std::to_string(evidence.marginal_residual));

    auto reflected      = reflected_tuple(tuple, state, cfg);
    GaugeSolution gauge = *evidence.gauge;
    ComplexMatrix u_eig = reflected.basis.adjoint() * gauge.unitary * reflected.basis;

    double sym     = (u_eig.transpose() - u_eig).norm();
    double antisym = (u_eig.transpose() + u_eig).norm();
    double u_norm  = u_eig.norm();
    if(std::min(sym, antisym) > cfg.tol.index || std::max(sym, antisym) < 0.5 * u_norm)
        fail(ErrorCode::AmbiguousSymmetry, "‖Uᵀ − U‖ = " + std::to_string(sym) + ", ‖Uᵀ + U‖ = " + std::to_string(antisym));
    Sign zeta = sign_of(sym < antisym);

    double phase_sq  = std::abs(gauge.phase * gauge.phase - 1.0);
    double commute   = (gauge.unitary * state.rho * gauge.unitary.adjoint() - state.rho).norm();
    ComplexMatrix id = ComplexMatrix::Identity(tuple.k(), tuple.k());
    double theta_sq  = (u_eig.adjoint() * u_eig.transpose() - double(to_int(zeta)) * id).norm();
    if(phase_sq > cfg.tol.index)
        fail(ErrorCode::IndexInvariantViolated, "|e^{2it} − 1| = " + std::to_string(phase_sq));
    if(commute > cfg.tol.index)
        fail(ErrorCode::IndexInvariantViolated, "‖UρU† − ρ‖ = " + std::to_string(commute));

    return {zeta,     tuple,            std::move(state), cert,    std::move(reflected), std::move(evidence),
            gauge,    std::move(u_eig), sym,              antisym, phase_sq,             commute,
            theta_sq};
}

} // namespace sptz2::reflection
