#include "helpers.hpp"

#include "modgl2/asymptotics.hpp"
#include "modgl2/error.hpp"
#include "modgl2/principal_series.hpp"

#include <doctest.h>

#include <random>

using namespace modgl2;
using modgl2::testing::L;
using modgl2::testing::S;

namespace {

// Max row sum of the full multiplication matrix, every row visited.
Rational brute_operator_norm(const GrothendieckRing& ring, const RingElement& v)
{
    const auto& params = ring.params();
    std::vector<Rational> rows(static_cast<std::size_t>(params.basis_size()));
    for (int b = 0; b < params.q(); ++b)
        for (int y = 0; y < params.modulus(); ++y) {
            auto col = ring.multiply(v, L(params, b, y));
            for (const auto& t : col.terms())
                rows[label_index(params, t.label)] += abs(t.coeff);
        }
    Rational best = 0;
    for (const auto& r : rows)
        if (r > best)
            best = r;
    return best;
}

} // namespace

TEST_CASE("s_alpha examples")
{
    FieldParams q3(3, 1);
    GrothendieckRing ring(q3);
    Asymptotics as(ring);
    CHECK(as.s_alpha(1).element == (L(q3, 1, 0) + L(q3, 1, 1)) * fraction(1, 4));
    CHECK(as.s_alpha(0).element == (L(q3, 0, 0) + L(q3, 0, 1) + L(q3, 2, 0) + L(q3, 2, 1)) * fraction(1, 8));
    CHECK(as.s_alpha(-1).alpha == 1);
}

TEST_CASE("s_alpha invariants")
{
    for (auto [p, f] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {2, 3}}) {
        FieldParams params(p, f);
        GrothendieckRing ring(params);
        Asymptotics as(ring);
        const int q = params.q();
        for (int i = 0; i < params.modulus(); ++i) {
            auto s = as.s_alpha(i);
            CHECK(dimension(s.element) == 1);
            CHECK(central_character(s.element) == i);
            for (int n = 0; n < q; ++n)
                for (int m = 0; m < params.modulus(); ++m) {
                    Rational expected = params.reduce(n + 2 * m) == i ? Rational(omega(params, n), q * q - 1) : 0;
                    expected.canonicalize();
                    CHECK(s.element.coefficient(n, m) == expected);
                }
            // twist laws
            for (int j = 0; j < params.modulus(); ++j)
                CHECK(det_twist(s.element, j) == as.s_alpha(i + 2 * j).element);
            for (int j = 0; j < f; ++j)
                CHECK(frobenius_twist(s.element, j) == as.s_alpha(params.theta_residue(i, j)).element);
        }
    }
}

TEST_CASE("norm examples")
{
    FieldParams q3(3, 1), q9(3, 2);
    GrothendieckRing r3(q3), r9(q9);
    Asymptotics a3(r3), a9(r9);
    CHECK(a3.operator_norm(r3.unit()) == 1);
    CHECK(a9.operator_norm(r9.unit()) == 1);
    CHECK(a3.norm_S_1(S(q3, 2, 1)) == 1);
    CHECK(a9.norm_S_1(S(q9, 7, 3, -2)) == 2);
    CHECK(a9.norm_L_inf(L(q9, 7, 0) - L(q9, 2, 1, 3)) == 3);
    CHECK(a3.operator_norm(r3.zero()) == 0);
}

TEST_CASE("norm axioms on random elements")
{
    std::mt19937_64 rng(99);
    for (auto [p, f] : {std::pair{3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        FieldParams params(p, f);
        GrothendieckRing ring(params);
        Asymptotics as(ring);
        const Rational M = as.change_of_basis_l1();
        for (int trial = 0; trial < 12; ++trial) {
            auto v = testing::random_element(params, rng, 4);
            auto w = testing::random_element(params, rng, 4);
            auto nv = as.operator_norm(v);
            CHECK(nv == brute_operator_norm(ring, v));
            CHECK(as.operator_norm(ring.multiply(v, w)) <= nv * as.operator_norm(w));
            CHECK(as.operator_norm(v + w) <= nv + as.operator_norm(w));
            CHECK(as.operator_norm(det_twist(v, 3)) == nv);
            for (int j = 0; j < f; ++j)
                CHECK(as.operator_norm(frobenius_twist(v, j)) == nv);
            CHECK(as.norm_L_inf(v) <= nv);
            CHECK(as.norm_S_1(v) <= M * nv);
        }
    }
}

TEST_CASE("constants: regression values")
{
    FieldParams q2(2, 1), q3(3, 1), q9(3, 2);
    GrothendieckRing r2(q2), r3(q3), r9(q9);

    auto c2 = Asymptotics(r2).compute_constants();
    CHECK(c2.A >= 8);
    CHECK(c2.A == 24);

    auto c3 = Asymptotics(r3).compute_constants();
    CHECK(c3.params.h() == 1);
    CHECK(c3.max_norm == 16);
    CHECK(c3.A == 240);
    CHECK(c3.M_upper == 6);
    CHECK(c3.C_r(1) == 695520);
    CHECK(c3.C == c3.M_upper * c3.C_r(1));
    CHECK(c3.C == 4173120);

    auto c9 = Asymptotics(r9).compute_constants();
    CHECK(c9.max_norm == 160);
    CHECK(c9.A == 15840);
    CHECK(c9.M_upper == 120);
    CHECK(c9.C == Rational("34348093452288000"));
    auto c9h4 = Asymptotics(r9).compute_constants(4);
    CHECK(c9h4.params.h() == 4);
    CHECK(c9h4.C == c9h4.M_upper * c9h4.C_r(4));
}

TEST_CASE("constants are identical with fresh and imported structure constants")
{
    FieldParams params(2, 2);
    GrothendieckRing fresh(params);
    auto a = Asymptotics(fresh).compute_constants();
    GrothendieckRing warm(params);
    REQUIRE(warm.import_structure_constants(fresh.export_structure_constants()));
    auto b = Asymptotics(warm).compute_constants();
    CHECK(a.A == b.A);
    CHECK(a.M_upper == b.M_upper);
    CHECK(a.C == b.C);
}

TEST_CASE("residual examples")
{
    FieldParams q3(3, 1), q5(5, 1);
    GrothendieckRing r3(q3), r5(q5);
    Asymptotics a3(r3), a5(r5);
    CHECK(a3.residual(a3.s_alpha(1).element * 5).is_zero());
    CHECK(a3.residual(L(q3, 1, 0)) == L(q3, 1, 0, fraction(1, 2)) - L(q3, 1, 1, fraction(1, 2)));
    CHECK(a3.residual(r3.zero()).is_zero());
    CHECK_THROWS_AS(a3.residual(L(q3, 0, 0) + L(q3, 1, 0)), NotHomogeneous);
    auto c5 = a5.compute_constants();
    for (std::int64_t k = 0; k <= 300; ++k)
        CHECK(a5.operator_norm(a5.residual(r5.reduce_symm({k, 0, 0}))) <= c5.A);
}

TEST_CASE("theorem bound examples")
{
    FieldParams q3(3, 1), q9(3, 2);
    GrothendieckRing r3(q3), r9(q9);
    Asymptotics a3(r3), a9(r9);
    auto c3 = a3.compute_constants();

    std::vector<SymmFactor> trivial{{0, 0, 0}};
    auto rep = a3.check_theorem_bound(r3.unit(), trivial, c3);
    CHECK(rep.lhs == a3.operator_norm(r3.unit() - a3.s_alpha(0).element));
    CHECK(rep.satisfied());

    for (std::int64_t k = 0; k <= 2000; ++k) {
        std::vector<SymmFactor> fac{{k, 0, 0}};
        auto r = a3.check_theorem_bound(L(q3, 1, 0), fac, c3);
        CHECK_MESSAGE(r.satisfied(), "k=" << k);
    }

    auto c9 = a9.compute_constants();
    for (std::int64_t k = 0; k <= 200; k += 5) {
        std::vector<SymmFactor> fac{{k, 0, 0}, {k, 0, 1}};
        auto r = a9.check_theorem_bound(L(q9, 1, 0), fac, c9);
        CHECK(r.corollary_applicable);
        CHECK_MESSAGE(r.satisfied(), "k=" << k);
    }

    std::vector<SymmFactor> three{{3, 0, 0}, {4, 0, 0}};
    auto r = a3.check_theorem_bound(L(q3, 1, 0), three, c3);
    CHECK_FALSE(r.corollary_applicable);  // more factors than h = 1

    std::vector<SymmFactor> none;
    CHECK_THROWS_AS(a3.check_theorem_bound(L(q3, 1, 0), none, c3), ValidationError);
    CHECK_THROWS_AS(a3.check_theorem_bound(L(q3, 0, 0) + L(q3, 1, 0), trivial, c3), NotHomogeneous);
    CHECK_THROWS_AS(a3.check_theorem_bound(L(q3, 1, 0), trivial, c9), ValidationError);
}

TEST_CASE("t_shift examples")
{
    FieldParams q3(3, 1), q9(3, 2), q8(2, 3);
    GrothendieckRing r3(q3), r9(q9), r8(q8);
    Asymptotics a3(r3), a9(r9), a8(r8);
    CHECK(a3.t_shift(0, 4) == 0);
    CHECK(a3.t_shift(5, 10) == 0);
    CHECK(a9.t_shift(1, 1) == 1);
    CHECK(a9.t_shift_candidates(1, 1) == std::vector<int>{1, 5});
    for (int j = 0; j < 3; ++j)
        for (std::int64_t k = 0; k < 40; ++k)
            CHECK(a8.t_shift_candidates(j, k).size() == 1);
}

TEST_CASE("Frobenius shift stays within 2A for both choices of t")
{
    FieldParams params(3, 2);
    GrothendieckRing ring(params);
    Asymptotics as(ring);
    auto c = as.compute_constants();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::int64_t k = static_cast<std::int64_t>(rng() % 2001);
        int j = static_cast<int>(rng() % 2);
        auto ts = as.t_shift_candidates(j, k);
        CHECK(ts.size() == 2);
        for (int t : ts)
            CHECK(as.check_frobenius_shift(k, j, t, c).satisfied);
    }
}

TEST_CASE("multiplicity estimate examples")
{
    FieldParams q3(3, 1);
    GrothendieckRing ring(q3);
    Asymptotics as(ring);
    CHECK(as.multiplicity_estimate(1, 0, 8, 1) == 2);
    CHECK(as.multiplicity_estimate(0, 0, 8, 1) == 0);
    CHECK(as.exact_multiplicity(ring.reduce_symm({4, 0, 0}), 0, 1) == 1);
}

TEST_CASE("h = 1: multiplicity error stays within the r = 1 bound")
{
    FieldParams params(3, 1);
    GrothendieckRing ring(params);
    Asymptotics as(ring);
    auto c = as.compute_constants();
    for (std::int64_t k = 0; k <= 1000; ++k) {
        auto v = ring.reduce_symm({k, 0, 0});
        int alpha = *central_character(v);
        for (int n = 0; n < 3; ++n)
            for (int m = 0; m < 2; ++m) {
                Rational err = abs(as.exact_multiplicity(v, n, m) - as.multiplicity_estimate(n, m, k + 1, alpha));
                CHECK(err <= c.C_r(1));
            }
    }
}
