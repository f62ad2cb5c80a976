#include <gtest/gtest.h>

#include <functional>

#include "sptz2/error.hpp"
#include "sptz2/reflection.hpp"
#include "sptz2/zoo.hpp"
#include "testing.hpp"

using namespace sptz2;
namespace tst = sptz2::testing;

namespace {

ErrorCode code_of(const std::function<void()> &f) {
    try {
        f();
    } catch(const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an sptz2::Error";
    return ErrorCode::InvalidSpec;
}

mps::MpsTuple aklt() { return mps::MpsTuple::from_normalized(zoo::aklt()); }

// |tr(a† b)| / (‖a‖‖b‖) close to 1 means b is a phase multiple of a.
double overlap(const ComplexMatrix &a, const ComplexMatrix &b) {
    return std::abs((a.adjoint() * b).trace()) / (a.norm() * b.norm());
}

} // namespace

TEST(ReflectedTuple, AkltIsTranspose) {
    auto v = aklt();
    auto r = reflection::reflected_tuple(v, mps::invariant_state(v));
    for(Index mu = 0; mu < 3; ++mu) EXPECT_LE((r.tilde[mu] - v[mu].transpose()).norm(), 1e-12);
    EXPECT_LE((r.rho_diag - RealVector::Constant(2, 0.5)).norm(), 1e-12);
}

TEST(ReflectedTuple, ScalarIsItself) {
    auto v = mps::normalize(zoo::product({0.6, Complex(0, 0.8)}));
    auto r = reflection::reflected_tuple(v, mps::invariant_state(v));
    for(Index mu = 0; mu < 2; ++mu) EXPECT_LE(std::abs(r.tilde[mu](0, 0) - v[mu](0, 0)), 1e-14);
}

TEST(ReflectedTuple, IsNormalizedWithSameInvariantState) {
    tst::Rng rng(31);
    for(int trial = 0; trial < 5; ++trial) {
        auto v  = mps::normalize(tst::random_tuple(rng, 3, 3));
        auto st = mps::invariant_state(v);
        auto r  = reflection::reflected_tuple(v, st);
        EXPECT_LE(r.tilde.normalization_residual(), 1e-10);
        EXPECT_LE((mps::invariant_state(r.tilde).rho - st.rho).norm(), 1e-9);
        // diagonal eigenbasis representation
        ComplexMatrix diag = r.basis.adjoint() * st.rho * r.basis;
        EXPECT_LE((diag - ComplexMatrix(r.rho_diag.cast<Complex>().asDiagonal())).norm(), 1e-10);
        for(Index i = 1; i < r.rho_diag.size(); ++i) EXPECT_GE(r.rho_diag(i - 1), r.rho_diag(i));
    }
}

TEST(ReflectedTuple, Involution) {
    tst::Rng rng(32);
    for(int trial = 0; trial < 5; ++trial) {
        auto v     = mps::normalize(tst::random_tuple(rng, 2, 3));
        auto once  = reflection::reflected_tuple(v, mps::invariant_state(v)).tilde;
        auto twice = reflection::reflected_tuple(once, mps::invariant_state(once)).tilde;
        for(Index mu = 0; mu < 2; ++mu) EXPECT_LE((twice[mu] - v[mu]).norm(), 1e-8);
    }
}

TEST(ReflectedTuple, BlockedTupleReflectsSiteWords) {
    tst::Rng rng(33);
    auto v       = mps::normalize(tst::random_tuple(rng, 2, 3));
    auto st      = mps::invariant_state(v);
    auto tilde   = reflection::reflected_tuple(v, st).tilde;
    auto blocked = mps::block(v, 2);
    auto btilde  = reflection::reflected_tuple(blocked, mps::invariant_state(blocked)).tilde;
    for(Index a = 0; a < 2; ++a)
        for(Index b = 0; b < 2; ++b) EXPECT_LE((btilde[a * 2 + b] - tilde[a] * tilde[b]).norm(), 1e-9);
    EXPECT_EQ(btilde.sites_per_symbol(), 2);
}

TEST(ReflectedTuple, NaiveBlockReversalIsNotAReflection) {
    // Forgetting the block structure reverses blocks but not the sites inside them.
    auto blocked = mps::block(aklt(), 2);
    auto plain   = mps::MpsTuple::from_normalized({blocked.matrices().begin(), blocked.matrices().end()});
    EXPECT_EQ(plain.sites_per_symbol(), 1);
    EXPECT_EQ(code_of([&] { reflection::z2_index(plain); }), ErrorCode::NotReflectionInvariant);
}

TEST(GaugeSolve, IdentityGauge) {
    auto v = aklt();
    auto g = reflection::gauge_solve(v, v);
    EXPECT_LE(g.relation_residual, 1e-12);
    EXPECT_NEAR(std::abs(g.phase - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(overlap(g.unitary, ComplexMatrix::Identity(2, 2)), 1.0, 1e-12);
    EXPECT_NEAR(g.mixed_radius, 1.0, 1e-12);
}

TEST(GaugeSolve, RecoversConjugation) {
    tst::Rng rng(34);
    for(int trial = 0; trial < 5; ++trial) {
        auto v          = mps::normalize(tst::random_tuple(rng, 3, 3));
        ComplexMatrix w = tst::random_unitary(rng, 3);
        Complex phase   = std::polar(1.0, 0.3 + trial);
        auto g_tuple    = mps::MpsTuple::from_normalized(
            tst::conjugate({v.matrices().begin(), v.matrices().end()}, w, phase));
        auto g = reflection::gauge_solve(v, g_tuple);
        EXPECT_LE(g.relation_residual, 1e-9);
        EXPECT_NEAR(std::abs(g.phase - std::conj(phase)), 0.0, 1e-9);
        EXPECT_NEAR(overlap(g.unitary, w), 1.0, 1e-9);
        EXPECT_LE((g.unitary.adjoint() * g.unitary - ComplexMatrix::Identity(3, 3)).norm(), 1e-10);
    }
}

TEST(GaugeSolve, DifferentStatesRejected) {
    auto v     = aklt();
    auto other = mps::normalize(zoo::deformed_aklt(0.5));
    auto code  = code_of([&] { reflection::gauge_solve(v, other); });
    EXPECT_TRUE(code == ErrorCode::NotSameState || code == ErrorCode::NotUnitaryMultiple) << to_string(code);
}

TEST(GaugeSolve, ShapeMismatch) {
    EXPECT_EQ(code_of([] { reflection::gauge_solve(aklt(), mps::normalize(zoo::product({1.0, 1.0, 1.0}))); }),
              ErrorCode::InvalidTuple);
}

TEST(ReflectionInvariant, AkltBothRoutes) {
    auto ev = reflection::reflection_invariant(aklt());
    EXPECT_TRUE(ev.invariant);
    EXPECT_TRUE(ev.via_gauge);
    EXPECT_TRUE(ev.via_marginals);
    EXPECT_LE(ev.marginal_residual, 1e-12);
    EXPECT_TRUE(ev.gauge.has_value());
}

TEST(ReflectionInvariant, Product) {
    EXPECT_TRUE(reflection::reflection_invariant(mps::normalize(zoo::product({0.6, 0.8}))).invariant);
}

TEST(ReflectionInvariant, BreakerIsNotInvariant) {
    auto ev = reflection::reflection_invariant(mps::normalize(zoo::aklt_breaker(0.25)));
    EXPECT_FALSE(ev.invariant);
    EXPECT_FALSE(ev.via_gauge);
    EXPECT_FALSE(ev.via_marginals);
    EXPECT_GT(ev.marginal_residual, 1e-4);
    EXPECT_FALSE(ev.gauge_failure.empty());
}

TEST(ReflectionInvariant, MarginalsAgreeWithBruteForceReversal) {
    tst::Rng rng(35);
    auto v  = mps::normalize(tst::random_tuple(rng, 2, 3));
    auto st = mps::invariant_state(v);
    auto ev = reflection::reflection_invariant(v);
    double worst = 0.0;
    for(Index l = 1; l <= ev.window; ++l) {
        ComplexMatrix w = tst::marginal_oracle({v.matrices().begin(), v.matrices().end()}, st.rho, l);
        std::vector<Index> image;
        for(Index i = l - 1; i >= 0; --i) image.push_back(i);
        ComplexMatrix p = tst::site_permutation(2, l, image);
        worst           = std::max(worst, (p * w * p.adjoint() - w).norm());
    }
    EXPECT_NEAR(ev.marginal_residual, worst, 1e-9);
    EXPECT_FALSE(ev.invariant);
}

TEST(Z2Index, AkltIsMinusOne) {
    auto rep = reflection::z2_index(zoo::aklt());
    EXPECT_EQ(rep.zeta, Sign::minus);
    EXPECT_LE(rep.antisym_residual, 1e-10);
    EXPECT_NEAR(rep.sym_residual, 2.0 * std::sqrt(2.0), 1e-9);
    EXPECT_LE(rep.phase_sq_residual, 1e-10);
    EXPECT_LE(rep.rho_commute_residual, 1e-10);
    EXPECT_LE(rep.theta_sq_residual, 1e-10);
    EXPECT_NEAR(std::abs(rep.gauge.phase + 1.0), 0.0, 1e-10);
}

TEST(Z2Index, ProductIsPlusOne) {
    auto rep = reflection::z2_index(zoo::product({Complex(0.6, 0.0), Complex(0.0, 0.8)}));
    EXPECT_EQ(rep.zeta, Sign::plus);
}

TEST(Z2Index, DeformedAkltKeepsIndex) {
    for(double s : {-0.5, 0.0, 0.5, 1.5}) EXPECT_EQ(reflection::z2_index(zoo::deformed_aklt(s)).zeta, Sign::minus);
}

TEST(Z2Index, Errors) {
    EXPECT_EQ(code_of([] { reflection::z2_index(zoo::ghz()); }), ErrorCode::NotPrimitive);
    EXPECT_EQ(code_of([] { reflection::z2_index(zoo::aklt_breaker(0.25)); }), ErrorCode::NotReflectionInvariant);
    tst::Rng rng(36);
    auto generic = tst::random_tuple(rng, 2, 3);
    EXPECT_EQ(code_of([&] { reflection::z2_index(generic); }), ErrorCode::NotReflectionInvariant);
}

TEST(Z2Index, RandomInvariantTuplesBothSigns) {
    tst::Rng rng(37);
    for(Sign zeta : {Sign::plus, Sign::minus}) {
        for(Index k : {2, 4}) {
            for(int trial = 0; trial < 4; ++trial) {
                auto rep = reflection::z2_index(tst::random_reflection_invariant(rng, 3, k, zeta));
                EXPECT_EQ(rep.zeta, zeta) << "k " << k << " trial " << trial;
                EXPECT_LE(std::min(rep.sym_residual, rep.antisym_residual), 1e-8);
                EXPECT_LE(rep.theta_sq_residual, 1e-8);
            }
        }
    }
}

TEST(Z2Index, GaugeInvariance) {
    tst::Rng rng(38);
    for(Sign zeta : {Sign::plus, Sign::minus}) {
        auto raw = tst::random_reflection_invariant(rng, 2, 4, zeta);
        for(int trial = 0; trial < 4; ++trial) {
            ComplexMatrix w = tst::random_unitary(rng, 4);
            auto rep        = reflection::z2_index(tst::conjugate(raw, w, std::polar(1.0, 1.1 * trial)));
            EXPECT_EQ(rep.zeta, zeta);
        }
    }
}

TEST(Z2Index, BlockingInvariance) {
    for(Index b : {2, 3}) {
        auto rep = reflection::z2_index(mps::block(aklt(), b));
        EXPECT_EQ(rep.zeta, Sign::minus) << b;
        EXPECT_TRUE(rep.reflection.via_marginals);
    }
    tst::Rng rng(39);
    for(Sign zeta : {Sign::plus, Sign::minus}) {
        auto v = mps::normalize(tst::random_reflection_invariant(rng, 3, 2, zeta));
        for(Index b : {2, 3}) EXPECT_EQ(reflection::z2_index(mps::block(v, b)).zeta, zeta);
    }
}

TEST(Z2Index, Deterministic) {
    auto a = reflection::z2_index(zoo::deformed_aklt(0.3));
    auto b = reflection::z2_index(zoo::deformed_aklt(0.3));
    EXPECT_EQ(a.gauge.unitary, b.gauge.unitary);
    EXPECT_EQ(a.sym_residual, b.sym_residual);
}
