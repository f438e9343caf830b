#include "rht/catalog.hpp"

#include "rht/parse.hpp"

namespace rht {

namespace {

/* H*(S^n) together with its minimal model */
SpaceModel sphere(int n, const std::string& gen)
{
    SpaceModel s;
    s.name = "s" + std::to_string(n);
    s.description = "S^" + std::to_string(n);
    if (n % 2 == 1) {
        DGAlgebra a(AlgebraKind::SullivanFree, {{gen, n}});
        a.finalize();
        s.algebra = a;
        s.sullivan = a;
        s.phi = identity_morphism(a);
    } else {
        DGAlgebra a(AlgebraKind::FiniteDimensional, {{gen, n}});
        a.add_relation(parse_element(a, gen + "^2"));
        a.finalize();
        std::string odd = gen == "y" ? "z" : "y";
        DGAlgebra v(AlgebraKind::SullivanFree, {{gen, n}, {odd, 2 * n - 1}});
        v.set_differential(odd, parse_element(v, gen + "^2"));
        v.finalize();
        s.algebra = a;
        s.sullivan = v;
        s.phi = AlgebraMorphism{v, a, {parse_element(a, gen), a.zero()}};
    }
    s.pd = make_pd(s.algebra);
    return s;
}

/* H*(CP^n) = ^x/(x^{n+1}) with model (^(x, y), dy = x^{n+1}) */
SpaceModel projective(int n, const std::string& gen)
{
    SpaceModel s;
    s.name = "cp" + std::to_string(n);
    s.description = "CP^" + std::to_string(n);
    DGAlgebra a(AlgebraKind::FiniteDimensional, {{gen, 2}});
    a.add_relation(parse_element(a, gen + "^" + std::to_string(n + 1)));
    a.finalize();
    std::string odd = gen == "y" ? "z" : "y";
    DGAlgebra v(AlgebraKind::SullivanFree, {{gen, 2}, {odd, 2 * n + 1}});
    v.set_differential(odd, parse_element(v, gen + "^" + std::to_string(n + 1)));
    v.finalize();
    s.algebra = a;
    s.sullivan = v;
    s.phi = AlgebraMorphism{v, a, {parse_element(a, gen), a.zero()}};
    s.pd = make_pd(s.algebra);
    return s;
}

SpaceModel product_of_spheres(int p, int q)
{
    SpaceModel s;
    s.name = "s" + std::to_string(p) + "xs" + std::to_string(q);
    s.description = "S^" + std::to_string(p) + " x S^" + std::to_string(q);
    DGAlgebra a(AlgebraKind::FiniteDimensional, {{"a", p}, {"b", q}});
    a.add_relation(parse_element(a, "a^2"));
    a.add_relation(parse_element(a, "b^2"));
    a.finalize();
    DGAlgebra v(AlgebraKind::SullivanFree,
                {{"a", p}, {"b", q}, {"u", 2 * p - 1}, {"w", 2 * q - 1}});
    v.set_differential("u", parse_element(v, "a^2"));
    v.set_differential("w", parse_element(v, "b^2"));
    v.finalize();
    s.algebra = a;
    s.sullivan = v;
    s.phi = AlgebraMorphism{v, a,
                            {parse_element(a, "a"), parse_element(a, "b"), a.zero(), a.zero()}};
    s.pd = make_pd(s.algebra);
    return s;
}

}  // namespace

Catalog::Catalog()
{
    for (int n = 2; n <= 7; ++n) {
        SpaceModel s = sphere(n, "x");
        spaces_.emplace(s.name, s);
    }
    for (int n = 1; n <= 4; ++n) {
        SpaceModel s = projective(n, "x");
        spaces_.emplace(s.name, s);
    }
    spaces_.emplace("s2xs2", product_of_spheres(2, 2));
    spaces_.emplace("s2xs4", product_of_spheres(2, 4));

    /* inclusions CP^n -> CP^{n+k}: f maps the big model onto the small one */
    for (int n = 1; n <= 3; ++n)
        for (int m = n + 1; m <= 4; ++m) {
            MapModel mm;
            mm.name = "cp" + std::to_string(n) + "_in_cp" + std::to_string(m);
            mm.description = "inclusion CP^" + std::to_string(n) + " -> CP^" + std::to_string(m) +
                             ", f(x) = y";
            mm.big = projective(m, "x");
            mm.small = projective(n, "y");
            mm.small.name = mm.name + ".small";
            mm.f = AlgebraMorphism{mm.big.algebra, mm.small.algebra,
                                   {parse_element(mm.small.algebra, "y")}};
            maps_.emplace(mm.name, mm);
        }

    /* degree-d self maps of spheres and projective spaces */
    auto self_map = [](const SpaceModel& s, const std::string& suffix, const std::string& img,
                       const std::string& desc) {
        MapModel mm;
        mm.name = s.name + suffix;
        mm.description = desc;
        mm.big = s;
        mm.small = s;
        mm.f = AlgebraMorphism{s.algebra, s.algebra, {parse_element(s.algebra, img)}};
        return mm;
    };
    for (int n = 2; n <= 7; ++n)
        for (int d = 1; d <= 3; ++d) {
            SpaceModel s = sphere(n, "x");
            MapModel mm = self_map(s, "_deg" + std::to_string(d), std::to_string(d) + "*x",
                                   "self map of S^" + std::to_string(n) + " with x -> " +
                                       std::to_string(d) + "x");
            maps_.emplace(mm.name, mm);
        }
    for (int n = 1; n <= 4; ++n)
        for (int d = 1; d <= 3; ++d) {
            SpaceModel s = projective(n, "x");
            MapModel mm = self_map(s, "_deg" + std::to_string(d), std::to_string(d) + "*x",
                                   "self map of CP^" + std::to_string(n) + " with x -> " +
                                       std::to_string(d) + "x");
            maps_.emplace(mm.name, mm);
        }

    /* S^2 x S^4 self maps with separate projection degrees */
    auto product_map = [this](int d1, int d2) {
        SpaceModel s = product_of_spheres(2, 4);
        MapModel mm;
        mm.name = "s2xs4_deg" + std::to_string(d1) + "x" + std::to_string(d2);
        mm.description = "self map of S^2 x S^4 with a -> " + std::to_string(d1) + "a, b -> " +
                         std::to_string(d2) + "b";
        mm.big = s;
        mm.small = s;
        mm.f = AlgebraMorphism{
            s.algebra, s.algebra,
            {parse_element(s.algebra, std::to_string(d1) + "*a"),
             parse_element(s.algebra, std::to_string(d2) + "*b")}};
        maps_.emplace(mm.name, mm);
    };
    product_map(1, 1);
    product_map(2, 3);
    product_map(0, 1); /* model-level degree zero: gates the splitting */

    /* swap of the two factors of S^2 x S^2 */
    {
        SpaceModel s = product_of_spheres(2, 2);
        MapModel mm;
        mm.name = "s2xs2_swap";
        mm.description = "factor swap of S^2 x S^2, a <-> b";
        mm.big = s;
        mm.small = s;
        mm.f = AlgebraMorphism{s.algebra, s.algebra,
                               {parse_element(s.algebra, "b"), parse_element(s.algebra, "a")}};
        maps_.emplace(mm.name, mm);
    }

    /* collapse S^2 x S^2 -> S^4: x -> a*b, a degree-one map between
     * 4-manifolds with a nontrivial complement Z */
    {
        MapModel mm;
        mm.name = "s2xs2_to_s4";
        mm.description = "collapse S^2 x S^2 -> S^4, f(x) = a*b";
        mm.big = sphere(4, "x");
        mm.small = product_of_spheres(2, 2);
        mm.f = AlgebraMorphism{mm.big.algebra, mm.small.algebra,
                               {parse_element(mm.small.algebra, "a*b")}};
        maps_.emplace(mm.name, mm);
    }

    for (auto& [name, s] : spaces_)
        validate_morphism(s.phi);
    for (auto& [name, m] : maps_) {
        validate_morphism(m.big.phi);
        validate_morphism(m.small.phi);
        validate_morphism(m.f);
    }
}

std::vector<std::pair<std::string, std::string>> Catalog::names() const
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [n, s] : spaces_)
        out.emplace_back(n, "space: " + s.description);
    for (const auto& [n, m] : maps_)
        out.emplace_back(n, "map: " + m.description);
    return out;
}

const SpaceModel& Catalog::space(const std::string& name) const
{
    auto it = spaces_.find(name);
    if (it == spaces_.end())
        throw SpecParseError("unknown catalog space '" + name + "'");
    return it->second;
}

const MapModel& Catalog::map(const std::string& name) const
{
    auto it = maps_.find(name);
    if (it == maps_.end())
        throw SpecParseError("unknown catalog map '" + name + "'");
    return it->second;
}

std::pair<int, int> default_window(int formal_dim)
{
    return {-formal_dim, 2 * formal_dim + 4};
}

}  // namespace rht
