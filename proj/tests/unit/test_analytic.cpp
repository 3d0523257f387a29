#include "helpers.hpp"

#include "cmv/analytic.hpp"
#include "cmv/weyl.hpp"

using namespace cmv;
using namespace th;

TEST_CASE("Herglotz evaluation") {
    const AtomicMeasure one(2, {{1.0, eye(2)}}, Mat::Zero(2, 2));
    CHECK(diff(herglotz_eval(one, 0.0), eye(2)) < 1e-15);
    CHECK(diff(herglotz_eval(one, 0.0).real().cast<cplx>(), one.total_mass()) < 1e-15);
    CHECK(herglotz_eval(AtomicMeasure(2), cplx(0.3, 0.1)).norm() == 0.0);
    CHECK(std::abs(lebesgue_herglotz_quadrature(cplx(0.3, 0.2)) - 1.0) < 1e-10);
    CHECK(diff(herglotz_eval(lebesgue_atoms(2, 2048), cplx(0.3, 0.2)), eye(2)) < 1e-10);
    try {
        herglotz_eval(one, 1.0);
        FAIL("expected ZAtAtom");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZAtAtom);
    }
}

TEST_CASE("measure validation") {
    CHECK_THROWS_AS(AtomicMeasure(1, {{cplx(0.5, 0.0), eye(1)}}, Mat::Zero(1, 1)), Error);
    CHECK_THROWS_AS(AtomicMeasure(1, {{1.0, -eye(1)}}, Mat::Zero(1, 1)), Error);
    CHECK_THROWS_AS(AtomicMeasure(1, {}, scalar(I1)), Error);
}

TEST_CASE("random Herglotz functions are Caratheodory") {
    Rng rng(3);
    std::uniform_real_distribution<double> u(0.0, 2 * pi);
    for (int m : {1, 2, 3}) {
        std::vector<Atom> atoms;
        for (int j = 0; j < 6; ++j) {
            const Mat a = random_with_norm(m, 0.9, rng);
            atoms.push_back({std::polar(1.0, u(rng)), a * a.adjoint()});
        }
        const Mat c = random_with_norm(m, 0.5, rng);
        const AtomicMeasure mu(m, atoms, c + c.adjoint());
        std::vector<FunctionSample> samples;
        for (int i = 1; i <= 5; ++i)
            for (int j = 0; j < 8; ++j) {
                const cplx z = std::polar(0.9 * i / 5, 2 * pi * j / 8 + 0.1);
                samples.push_back({z, herglotz_eval(mu, z)});
            }
        const ValidityReport r = is_caratheodory(samples);
        CHECK(r.valid);
        CHECK(r.min_values.size() == samples.size());
        // Cayley images are contractions on the disk.
        std::vector<FunctionSample> phis;
        for (const FunctionSample& s : samples) phis.push_back({s.z, cayley(s.F)});
        CHECK(is_schur(phis).valid);
    }
}

TEST_CASE("validity predicates") {
    const std::vector<FunctionSample> pos{{0.2, eye(2)}}, neg{{0.2, -eye(2)}};
    CHECK(is_caratheodory(pos).valid);
    CHECK_FALSE(is_caratheodory(neg).valid);
    CHECK(is_caratheodory(neg).worst == doctest::Approx(-1.0));
    CHECK(is_schur({{0.1, 0.5 * eye(2)}}).valid);
    CHECK_FALSE(is_schur({{0.1, 1.5 * eye(2)}}).valid);
}

TEST_CASE("Cayley transforms") {
    CHECK(cayley(eye(2)).norm() < 1e-15);
    Rng rng(4);
    for (int i = 0; i < 30; ++i) {
        const int m = 1 + i % 3;
        const Mat phi = random_with_norm(m, 0.95, rng);
        const Mat F = inverse_cayley(phi);
        CHECK(diff(cayley(F), phi) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (F + F.adjoint()));
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        const Mat G = eye(m) + random_with_norm(m, 0.5, rng);
        CHECK(diff(inverse_cayley(cayley(G)), G) / G.norm() < 1e-12);
    }
    CHECK_THROWS_AS(cayley(-eye(2)), Error);
    CHECK_THROWS_AS(inverse_cayley(eye(2)), Error);
}

TEST_CASE("reflection") {
    const FunctionSample r = reflect(FunctionSample{0.5, eye(2)});
    CHECK(std::abs(r.z - 2.0) < 1e-15);
    CHECK(diff(r.F, -eye(2)) == 0.0);
    // An i C shift is anti-Hermitian, so it survives the reflection unchanged.
    const Mat c = scalar(0.7);
    const FunctionSample shifted = reflect(FunctionSample{cplx(0.2, 0.3), eye(1) + I1 * c});
    CHECK(diff(shifted.F, -eye(1) + I1 * c) < 1e-15);

    const VerblunskySequence s = random_seq(2, -30, 30, 6);
    Rng rng(6);
    const Mat g = random_unitary(2, rng);
    std::vector<FunctionSample> inside;
    for (int j = 0; j < 12; ++j) {
        const cplx z = std::polar(0.3 + 0.05 * j, 0.5 * j);
        inside.push_back({z, m_function(s, 0, g, z, Side::Plus)});
    }
    for (const FunctionSample& o : reflect(inside))
        CHECK(diff(o.F, m_function(s, 0, g, o.z, Side::Plus)) / o.F.norm() < 1e-9);
}
