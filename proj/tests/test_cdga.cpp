#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rht/cdga.hpp"
#include "rht/parse.hpp"

using namespace rht;

namespace {

/* free ^(x2, y3) with dy = x^2: the standard 2-sphere model */
DGAlgebra sphere2_model()
{
    DGAlgebra a(AlgebraKind::SullivanFree, {{"x", 2}, {"y", 3}});
    a.set_differential("y", normal_form(a, {{0, 2}}, Scalar(1)));
    a.finalize();
    return a;
}

/* ^x2/(x^(n+1)) with zero differential: H*(CP^n) */
DGAlgebra cp_algebra(int n)
{
    DGAlgebra a(AlgebraKind::FiniteDimensional, {{"x", 2}});
    a.add_relation(normal_form(a, {{0, n + 1}}, Scalar(1)));
    a.finalize();
    return a;
}

Element random_homogeneous(const DGAlgebra& alg, int degree, std::mt19937& rng)
{
    std::uniform_int_distribution<int> val(-3, 3);
    Element e;
    for (const auto& m : alg.basis_of_degree(degree))
        e.add_term(m, Scalar(val(rng)));
    return e;
}

}  // namespace

TEST_CASE("normal form commutes even past odd with sign +1")
{
    DGAlgebra a(AlgebraKind::SullivanFree, {{"x", 2}, {"y", 3}});
    a.finalize();
    CHECK(parse_element(a, "y*x") == parse_element(a, "x*y"));
}

TEST_CASE("odd generators anticommute")
{
    DGAlgebra a(AlgebraKind::SullivanFree, {{"u", 3}, {"v", 3}});
    a.finalize();
    CHECK(parse_element(a, "v*u") == -parse_element(a, "u*v"));
}

TEST_CASE("monomial power relations truncate directly")
{
    auto a = cp_algebra(2); /* x^3 = 0 */
    CHECK(parse_element(a, "x^3").is_zero());
    CHECK(parse_element(a, "x^2*x").is_zero());
    CHECK(!parse_element(a, "x^2").is_zero());
}

TEST_CASE("odd generator squares vanish")
{
    DGAlgebra a(AlgebraKind::SullivanFree, {{"u", 3}, {"v", 5}});
    a.finalize();
    CHECK(parse_element(a, "u*u").is_zero());
    CHECK(parse_element(a, "v^2").is_zero());
    CHECK(parse_element(a, "u*v*u").is_zero());
}

TEST_CASE("triangular polynomial relation reduces the lead monomial")
{
    DGAlgebra a(AlgebraKind::FiniteDimensional, {{"p", 2}, {"q", 2}});
    a.add_relation(parse_element(a, "p^2 + q^2"));
    a.finalize();
    CHECK(parse_element(a, "p^2") == parse_element(a, "-q^2"));
    CHECK(parse_element(a, "p^2*q") == parse_element(a, "-q^3"));
    CHECK(parse_element(a, "p^4") == parse_element(a, "q^4"));
    /* the staircase basis never contains reducible monomials */
    for (const auto& m : a.basis_of_degree(4))
        CHECK(m[0] <= 1);
}

TEST_CASE("non-triangular relation sets are rejected")
{
    DGAlgebra a(AlgebraKind::FiniteDimensional, {{"p", 2}, {"q", 2}});
    a.add_relation(parse_element(a, "p^2 + q^2"));
    a.add_relation(parse_element(a, "p^2*q + q^3"));
    CHECK_THROWS_AS(a.finalize(), SpecParseError);
}

TEST_CASE("unknown generator fails to parse")
{
    auto a = sphere2_model();
    CHECK_THROWS_AS(parse_element(a, "x*z"), SpecParseError);
}

TEST_CASE("basis of fixed degree")
{
    DGAlgebra a(AlgebraKind::FiniteDimensional, {{"x", 2}});
    a.add_relation(parse_element(a, "x^4"));
    a.finalize();
    CHECK(a.basis_of_degree(4).size() == 1); /* {x^2} */
    CHECK(a.basis_of_degree(1).empty());
    CHECK(a.basis_of_degree(8).empty());

    auto s2 = sphere2_model();
    CHECK(s2.basis_of_degree(5).size() == 1); /* {x*y} */
    CHECK(s2.basis_of_degree(1).empty());
}

TEST_CASE("graded commutativity on random homogeneous pairs")
{
    auto s2 = sphere2_model();
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int da = 2 + static_cast<int>(rng() % 6);
        int db = 2 + static_cast<int>(rng() % 6);
        Element x = random_homogeneous(s2, da, rng);
        Element y = random_homogeneous(s2, db, rng);
        int sign = (da * db) % 2 == 0 ? 1 : -1;
        CHECK(s2.mul(x, y) == s2.mul(y, x).scaled(Scalar(sign)));
    }
}

TEST_CASE("Leibniz rule on random homogeneous pairs")
{
    auto s2 = sphere2_model();
    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        int da = 2 + static_cast<int>(rng() % 5);
        int db = 2 + static_cast<int>(rng() % 5);
        Element x = random_homogeneous(s2, da, rng);
        Element y = random_homogeneous(s2, db, rng);
        Element lhs = s2.d(s2.mul(x, y));
        Element rhs = s2.mul(s2.d(x), y) +
                      s2.mul(x, s2.d(y)).scaled(Scalar(da % 2 == 0 ? 1 : -1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("d squares to zero on every basis monomial in a window")
{
    auto s2 = sphere2_model();
    for (int n = 0; n <= 12; ++n)
        for (const auto& m : s2.basis_of_degree(n))
            CHECK(s2.d(s2.d(s2.monomial_element(m))).is_zero());
}

TEST_CASE("the suspension derivation on the 2-sphere loop algebra")
{
    /* total algebra of the loop model, zero differential: S has offset -1,
     * Sx = xb, Sy = yb, S(xb) = S(yb) = 0 */
    DGAlgebra t(AlgebraKind::SullivanFree, {{"x", 2}, {"y", 3}, {"xb", 1}, {"yb", 2}});
    t.finalize();
    ExtendedDerivation s(identity_morphism(t),
                         {parse_element(t, "xb"), parse_element(t, "yb"), t.zero(), t.zero()},
                         -1);
    CHECK(s.eval(parse_element(t, "x*y")) == parse_element(t, "xb*y + x*yb"));
    CHECK(s.eval(parse_element(t, "x^2")) == parse_element(t, "2*x*xb"));
    /* S^2 = 0 on generators */
    for (std::size_t i = 0; i < t.gen_count(); ++i)
        CHECK(s.eval(s.eval(t.generator_element(i))).is_zero());
}

TEST_CASE("zero generator values extend to the zero derivation")
{
    auto s2 = sphere2_model();
    ExtendedDerivation z(identity_morphism(s2), {s2.zero(), s2.zero()}, 1);
    for (int n = 0; n <= 8; ++n)
        for (const auto& m : s2.basis_of_degree(n))
            CHECK(z.eval(s2.monomial_element(m)).is_zero());
}

TEST_CASE("the differential is the extension of its generator values")
{
    auto s2 = sphere2_model();
    ExtendedDerivation dd(identity_morphism(s2),
                          {s2.d_of_generator(0), s2.d_of_generator(1)}, 1);
    for (int n = 0; n <= 10; ++n)
        for (const auto& m : s2.basis_of_degree(n))
            CHECK(dd.eval(s2.monomial_element(m)) == s2.d(s2.monomial_element(m)));
}

TEST_CASE("extended derivations obey the twisted Leibniz rule")
{
    auto s2 = sphere2_model();
    auto h_s2 = cp_algebra(1);
    AlgebraMorphism phi{s2, h_s2, {parse_element(h_s2, "x"), h_s2.zero()}};
    validate_morphism(phi);

    /* a phi-derivation of homological degree 1 (offset -1): x -> 0, y -> x */
    ExtendedDerivation th(phi, {h_s2.zero(), parse_element(h_s2, "x")}, -1);
    std::mt19937 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        int da = 2 + static_cast<int>(rng() % 5);
        int db = 2 + static_cast<int>(rng() % 5);
        for (const auto& ma : s2.basis_of_degree(da))
            for (const auto& mb : s2.basis_of_degree(db)) {
                Element a = s2.monomial_element(ma), b = s2.monomial_element(mb);
                Element lhs = th.eval(s2.mul(a, b));
                Element rhs = h_s2.mul(th.eval(a), apply(phi, b)) +
                              h_s2.mul(apply(phi, a), th.eval(b))
                                  .scaled(Scalar((-1 * da) % 2 == 0 ? 1 : -1));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("cohomology of the 2-sphere model")
{
    auto s2 = sphere2_model();
    auto h = cohomology(s2, 0, 8);
    std::vector<std::size_t> want{1, 0, 1, 0, 0, 0, 0, 0, 0};
    for (int n = 0; n <= 8; ++n)
        CHECK(h.betti(n) == want[static_cast<std::size_t>(n)]);
}

TEST_CASE("zero differential gives Betti = basis count")
{
    DGAlgebra a(AlgebraKind::SullivanFree, {{"x", 2}, {"u", 3}});
    a.finalize();
    /* d = 0 */
    auto h = cohomology(a, 0, 9);
    for (int n = 0; n <= 9; ++n)
        CHECK(h.betti(n) == a.basis_of_degree(n).size());
}

TEST_CASE("cohomology of truncated polynomial algebras")
{
    for (int nk = 1; nk <= 4; ++nk) {
        auto a = cp_algebra(nk);
        auto h = cohomology(a, 0, 2 * nk + 2);
        for (int n = 0; n <= 2 * nk + 2; ++n) {
            std::size_t want = (n % 2 == 0 && n <= 2 * nk) ? 1 : 0;
            CHECK(h.betti(n) == want);
        }
    }
}

TEST_CASE("quasi-isomorphism verification")
{
    auto s2 = sphere2_model();
    auto h_s2 = cp_algebra(1); /* H*(S^2) = ^x/(x^2) */
    AlgebraMorphism phi{s2, h_s2, {parse_element(h_s2, "x"), h_s2.zero()}};
    validate_morphism(phi);
    CHECK(verify_quasi_iso(phi, 0, 8).ok);

    CHECK(verify_quasi_iso(identity_morphism(s2), 0, 8).ok);

    AlgebraMorphism zero_map{s2, h_s2, {h_s2.zero(), h_s2.zero()}};
    validate_morphism(zero_map);
    auto rep = verify_quasi_iso(zero_map, 0, 8);
    CHECK(!rep.ok);
    CHECK(!rep.by_degree[2].bijective);
    CHECK(rep.by_degree[0].bijective);
}

TEST_CASE("morphism validation rejects non-chain maps")
{
    auto s2 = sphere2_model();
    /* x -> x, y -> 0 into itself: f(dy) = x^2 but d(f y) = 0 */
    AlgebraMorphism bad{s2, s2, {parse_element(s2, "x"), s2.zero()}};
    CHECK_THROWS_AS(validate_morphism(bad), SpecParseError);
}

TEST_CASE("finite dimensionality and top degree")
{
    auto cp3 = cp_algebra(3);
    CHECK(cp3.finite_dimensional());
    CHECK(cp3.top_degree() == 6);

    auto s2 = sphere2_model();
    CHECK(!s2.finite_dimensional());

    DGAlgebra odd(AlgebraKind::SullivanFree, {{"u", 3}});
    odd.finalize();
    CHECK(odd.finite_dimensional());
    CHECK(odd.top_degree() == 3);
}

TEST_CASE("mixed-degree accessor fails where homogeneity is required")
{
    auto s2 = sphere2_model();
    Element mixed = parse_element(s2, "x + x^2");
    CHECK(!s2.is_homogeneous(mixed));
    CHECK_THROWS_AS(s2.degree_of(mixed), std::logic_error);
}

TEST_CASE("d^2 != 0 is rejected at finalize")
{
    DGAlgebra bad(AlgebraKind::SullivanFree, {{"x", 2}, {"y", 3}, {"z", 4}});
    bad.set_differential("y", normal_form(bad, {{0, 2}}, Scalar(1)));
    /* dz = x*y, so d^2 z = x^3 != 0 */
    bad.set_differential("z", normal_form(bad, {{0, 1}, {1, 1}}, Scalar(1)));
    CHECK_THROWS_AS(bad.finalize(), BrokenComplexError);
}
