#include <gtest/gtest.h>

#include <functional>

#include "sptz2/error.hpp"
#include "sptz2/modular.hpp"
#include "sptz2/reflection.hpp"
#include "sptz2/zoo.hpp"
#include "testing.hpp"

using namespace sptz2;
namespace tst = sptz2::testing;
using modular::BipartiteVector;

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

ComplexMatrix random_symmetric(tst::Rng &rng, Index m, Index rank, Sign sigma) {
    if(sigma == Sign::plus) {
        ComplexMatrix b = tst::random_complex(rng, m, rank);
        return b * b.transpose();
    }
    ComplexMatrix a = tst::random_complex(rng, m, m);
    ComplexMatrix anti = a - a.transpose();
    if(rank >= m) return anti;
    // Skew matrices of rank 2p: B J Bᵀ with J block-symplectic.
    ComplexMatrix b = tst::random_complex(rng, m, rank);
    ComplexMatrix j = ComplexMatrix::Zero(rank, rank);
    for(Index i = 0; i + 1 < rank; i += 2) {
        j(i, i + 1) = 1.0;
        j(i + 1, i) = -1.0;
    }
    return b * j * b.transpose();
}

void expect_identities(const modular::ModularReport &rep, double tol) {
    EXPECT_LE(rep.residuals.s_action, tol);
    EXPECT_LE(rep.residuals.j_square, tol);
    EXPECT_LE(rep.residuals.delta_fix, tol);
    EXPECT_LE(rep.residuals.j_fix, tol);
    EXPECT_LE(rep.residuals.delta_formula, tol);
    EXPECT_LE(rep.residuals.j_formula, tol);
    EXPECT_LE(rep.residuals.max_identity(), tol);
}

} // namespace

TEST(BipartiteVector, Construction) {
    EXPECT_EQ(code_of([] { BipartiteVector::normalized(ComplexMatrix::Zero(2, 2)); }), ErrorCode::ZeroVector);
    EXPECT_EQ(code_of([] { BipartiteVector::normalized(ComplexMatrix::Ones(2, 3)); }), ErrorCode::NotSquare);
    EXPECT_EQ(code_of([] { BipartiteVector::from_unit(ComplexMatrix::Identity(2, 2)); }), ErrorCode::NotUnitVector);
    auto v = BipartiteVector::normalized(2.0 * ComplexMatrix::Identity(2, 2));
    EXPECT_NEAR(v.coefficients().norm(), 1.0, 1e-15);
}

TEST(BipartiteVector, VectorIndexIsLeftMajor) {
    ComplexMatrix c(2, 2);
    c << 1, 2, 3, 4;
    auto v          = BipartiteVector::normalized(c);
    ComplexVector x = v.as_vector() * std::sqrt(30.0);
    // Ω = Σ M_{jl} e_j ⊗ e_l, so entry j·m + l is M_{jl}.
    EXPECT_NEAR(std::abs(x(1) - 2.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(x(2) - 3.0), 0.0, 1e-12);
    ComplexVector e0(2), e1(2);
    e0 << 1, 0;
    e1 << 0, 1;
    ComplexVector k = (tst::kron({e0, e1}) + 2.0 * tst::kron({e1, e1}));
    ComplexMatrix kc(2, 2);
    kc << 0, 1, 0, 2;
    EXPECT_LE((BipartiteVector::normalized(kc).as_vector() - k / std::sqrt(5.0)).norm(), 1e-14);
}

TEST(Schmidt, BellState) {
    auto sd = modular::schmidt(BipartiteVector::normalized(ComplexMatrix::Identity(2, 2)));
    EXPECT_EQ(sd.support_dim, 2);
    EXPECT_NEAR(sd.lambda(0), 0.5, 1e-14);
    EXPECT_NEAR(sd.lambda(1), 0.5, 1e-14);
    EXPECT_LE(sd.reconstruction_residual, 1e-14);
}

TEST(Schmidt, RandomReconstruction) {
    tst::Rng rng(41);
    for(Index m = 2; m <= 6; ++m) {
        auto omega = BipartiteVector::normalized(tst::random_complex(rng, m, m));
        auto sd    = modular::schmidt(omega);
        EXPECT_LE(sd.reconstruction_residual, 1e-12);
        EXPECT_NEAR(sd.lambda.sum(), 1.0, 1e-12);
        // λ are the eigenvalues of M M†
        auto eig = linalg::herm_eig(linalg::hermitian_part(omega.coefficients() * omega.coefficients().adjoint()));
        for(Index i = 0; i < m; ++i) EXPECT_NEAR(sd.lambda(i), eig.values(m - 1 - i), 1e-12);
        EXPECT_LE((sd.u * sd.right_basis - sd.left_basis).norm(), 1e-12);
        EXPECT_LE((sd.right_basis.adjoint() * sd.right_basis - ComplexMatrix::Identity(m, m)).norm(), 1e-12);
    }
}

TEST(Schmidt, RankDeficient) {
    tst::Rng rng(42);
    ComplexMatrix b = tst::random_complex(rng, 5, 2), c = tst::random_complex(rng, 2, 5);
    auto sd         = modular::schmidt(BipartiteVector::normalized(b * c));
    EXPECT_EQ(sd.support_dim, 2);
    EXPECT_LE(sd.reconstruction_residual, 1e-12);
}

TEST(SwapSign, Examples) {
    ComplexMatrix singlet(2, 2);
    singlet << 0, 1, -1, 0;
    EXPECT_EQ(modular::swap_sign(BipartiteVector::normalized(ComplexMatrix::Identity(3, 3))), Sign::plus);
    EXPECT_EQ(modular::swap_sign(BipartiteVector::normalized(singlet)), Sign::minus);
    ComplexMatrix generic(2, 2);
    generic << 1, 2, 0, 1;
    EXPECT_FALSE(modular::swap_sign(BipartiteVector::normalized(generic)).has_value());
}

TEST(ModularData, BellAndSinglet) {
    auto bell = modular::modular_data(BipartiteVector::normalized(ComplexMatrix::Identity(2, 2)));
    EXPECT_EQ(bell.sigma, Sign::plus);
    EXPECT_EQ(bell.kappa, Sign::plus);
    expect_identities(bell, 1e-12);

    ComplexMatrix singlet(2, 2);
    singlet << 0, 1, -1, 0;
    auto s = modular::modular_data(BipartiteVector::normalized(singlet));
    EXPECT_EQ(s.sigma, Sign::minus);
    EXPECT_EQ(s.kappa, Sign::minus);
    expect_identities(s, 1e-12);
    ASSERT_TRUE(s.residuals.u_relation.has_value());
    EXPECT_LE(*s.residuals.u_relation, 1e-12);
}

TEST(ModularData, StandardFormVectorHasPlusKappa) {
    RealVector lambda(3);
    lambda << 0.5, 0.3, 0.2;
    ComplexMatrix m = lambda.cwiseSqrt().cast<Complex>().asDiagonal();
    auto rep        = modular::modular_data(BipartiteVector::from_unit(m));
    EXPECT_EQ(rep.kappa, Sign::plus);
    EXPECT_LE((rep.lambda - lambda).norm(), 1e-14);
    expect_identities(rep, 1e-10);
}

TEST(ModularData, GenericVectorSatisfiesIdentities) {
    tst::Rng rng(43);
    for(Index m = 2; m <= 5; ++m) {
        auto rep = modular::modular_data(BipartiteVector::normalized(tst::random_complex(rng, m, m)));
        expect_identities(rep, 1e-8);
        EXPECT_FALSE(rep.sigma.has_value());
        EXPECT_FALSE(rep.residuals.u_relation.has_value());
    }
}

TEST(ModularData, KappaEqualsSigmaFullRank) {
    tst::Rng rng(44);
    for(Sign sigma : {Sign::plus, Sign::minus}) {
        for(Index m = 2; m <= 7; ++m) {
            if(sigma == Sign::minus && m % 2 == 1) continue; // odd skew matrices are singular
            auto rep = modular::modular_data(BipartiteVector::normalized(random_symmetric(rng, m, m, sigma)));
            ASSERT_TRUE(rep.sigma.has_value()) << m;
            ASSERT_TRUE(rep.kappa.has_value()) << m;
            EXPECT_EQ(*rep.sigma, sigma);
            EXPECT_EQ(*rep.kappa, sigma);
            EXPECT_LE(rep.residuals.theta_square, 1e-8);
            ASSERT_TRUE(rep.residuals.u_relation.has_value());
            EXPECT_LE(*rep.residuals.u_relation, 1e-8);
            expect_identities(rep, 1e-8);
        }
    }
}

TEST(ModularData, KappaEqualsSigmaRankDeficient) {
    tst::Rng rng(45);
    for(Sign sigma : {Sign::plus, Sign::minus}) {
        for(Index m = 3; m <= 6; ++m) {
            auto rep = modular::modular_data(BipartiteVector::normalized(random_symmetric(rng, m, 2, sigma)));
            EXPECT_EQ(rep.support_dim, 2);
            EXPECT_EQ(rep.sigma, sigma);
            EXPECT_EQ(rep.kappa, sigma);
            expect_identities(rep, 1e-8);
        }
    }
}

TEST(ModularData, SeedChangesPanelNotResult) {
    tst::Rng rng(46);
    auto omega = BipartiteVector::normalized(random_symmetric(rng, 4, 4, Sign::plus));
    Config a, b;
    b.seed   = 99;
    auto ra  = modular::modular_data(omega, a);
    auto ra2 = modular::modular_data(omega, a);
    auto rb  = modular::modular_data(omega, b);
    EXPECT_EQ(ra.residuals.s_action, ra2.residuals.s_action);
    EXPECT_EQ(ra.kappa, rb.kappa);
    EXPECT_LE(rb.residuals.max_identity(), 1e-8);
}

TEST(BondVector, MatchesIndexForZooAndRandomTuples) {
    std::vector<mps::RawTuple> inputs{zoo::aklt(), zoo::product({0.6, 0.8}), zoo::deformed_aklt(0.4)};
    tst::Rng rng(47);
    inputs.push_back(tst::random_reflection_invariant(rng, 3, 4, Sign::plus));
    inputs.push_back(tst::random_reflection_invariant(rng, 3, 4, Sign::minus));
    for(const auto &raw : inputs) {
        auto index = reflection::z2_index(raw);
        auto omega = modular::bond_vector(index);
        auto rep   = modular::modular_data(omega);
        EXPECT_EQ(rep.sigma, index.zeta);
        EXPECT_EQ(rep.kappa, index.zeta);
        expect_identities(rep, 1e-8);
        // The Schmidt weights of the bond vector are the eigenvalues of ρ.
        EXPECT_LE((rep.lambda - index.reflected.rho_diag).norm(), 1e-10);
    }
}

TEST(BondVector, ShapeMismatch) {
    EXPECT_EQ(code_of([] { modular::bond_vector(ComplexMatrix::Identity(2, 2), RealVector::Ones(3)); }),
              ErrorCode::NotSquare);
}
