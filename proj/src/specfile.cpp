#include "rht/specfile.hpp"

#include <sstream>

#include "rht/parse.hpp"

namespace rht {

namespace {

DGAlgebra algebra_from_json(const nlohmann::json& j)
{
    if (!j.contains("generators") || !j.at("generators").is_array())
        throw SpecParseError("spec needs a 'generators' array");
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) {
        if (!g.contains("name") || !g.contains("degree"))
            throw SpecParseError("each generator needs 'name' and 'degree'");
        gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>()});
    }
    bool has_relations = j.contains("relations") && !j.at("relations").empty();
    DGAlgebra a(has_relations ? AlgebraKind::FiniteDimensional : AlgebraKind::SullivanFree,
                std::move(gens));
    if (has_relations)
        for (const auto& r : j.at("relations"))
            a.add_relation(parse_element(a, r.get<std::string>()));
    if (j.contains("differential"))
        for (const auto& [name, poly] : j.at("differential").items())
            a.set_differential(name, parse_element(a, poly.get<std::string>()));
    a.finalize();
    return a;
}

Scalar scalar_from_json(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Scalar(j.get<long long>());
    if (j.is_string())
        return parse_scalar(j.get<std::string>());
    throw SpecParseError("rational values must be integers or strings like \"3/4\"");
}

ExpVec monomial_from_string(const DGAlgebra& a, const std::string& text)
{
    Element e = parse_element(a, text);
    if (e.terms.size() != 1 || e.terms.begin()->second != 1)
        throw SpecParseError("'" + text + "' is not a plain monomial");
    return e.terms.begin()->first;
}

std::vector<Element> images_from_json(const DGAlgebra& source, const DGAlgebra& target,
                                      const nlohmann::json& j)
{
    std::vector<Element> images(source.gen_count(), Element{});
    std::vector<bool> seen(source.gen_count(), false);
    for (const auto& [name, poly] : j.items()) {
        int gi = source.generator_index(name);
        if (gi < 0)
            throw SpecParseError("image given for an unknown generator '" + name + "'");
        images[static_cast<std::size_t>(gi)] = parse_element(target, poly.get<std::string>());
        seen[static_cast<std::size_t>(gi)] = true;
    }
    for (std::size_t i = 0; i < source.gen_count(); ++i)
        if (!seen[i])
            throw SpecParseError("missing image for generator '" +
                                 source.generators()[i].name + "'");
    return images;
}

}  // namespace

SpaceSpec SpaceSpec::from_model(const SpaceModel& m)
{
    return SpaceSpec{m.algebra, m.pd, m.sullivan, m.phi};
}

PDStructure SpaceSpec::require_pd() const
{
    if (pd)
        return *pd;
    if (!algebra.finite_dimensional())
        throw HypothesisError("this command needs a Poincare duality structure");
    return make_pd(algebra);
}

std::pair<DGAlgebra, AlgebraMorphism> SpaceSpec::require_sullivan() const
{
    if (sullivan && phi)
        return {*sullivan, *phi};
    if (algebra.kind() == AlgebraKind::SullivanFree)
        return {algebra, identity_morphism(algebra)};
    throw HypothesisError("this command needs a sullivan_model in the spec");
}

MapSpec MapSpec::from_model(const MapModel& m)
{
    return MapSpec{SpaceSpec::from_model(m.big), SpaceSpec::from_model(m.small), m.f};
}

SpaceSpec parse_space_spec(const nlohmann::json& j)
{
    SpaceSpec s;
    s.algebra = algebra_from_json(j);

    if (j.contains("orientation")) {
        const auto& o = j.at("orientation");
        if (!o.contains("degree") || !o.contains("volume_monomial"))
            throw SpecParseError("orientation needs 'degree' and 'volume_monomial'");
        Scalar value = o.contains("value") ? scalar_from_json(o.at("value")) : Scalar(1);
        s.pd = make_pd(s.algebra, o.at("degree").get<int>(),
                       monomial_from_string(s.algebra, o.at("volume_monomial").get<std::string>()),
                       value);
    }

    if (j.contains("sullivan_model")) {
        const auto& sm = j.at("sullivan_model");
        DGAlgebra v = algebra_from_json(sm);
        if (!sm.contains("images"))
            throw SpecParseError("sullivan_model needs 'images' onto the algebra");
        AlgebraMorphism phi{v, s.algebra, images_from_json(v, s.algebra, sm.at("images"))};
        validate_morphism(phi);
        s.sullivan = std::move(v);
        s.phi = std::move(phi);
    }
    return s;
}

bool json_is_map_spec(const nlohmann::json& j)
{
    return j.contains("morphism");
}

MapSpec parse_map_spec(const nlohmann::json& j)
{
    if (!json_is_map_spec(j))
        throw SpecParseError("map commands need a top-level 'morphism' object");
    const auto& mj = j.at("morphism");
    if (!mj.contains("source") || !mj.contains("target") || !mj.contains("images"))
        throw SpecParseError("morphism needs 'source', 'target' and 'images'");
    MapSpec m;
    m.big = parse_space_spec(mj.at("source"));
    m.small = parse_space_spec(mj.at("target"));
    m.f = AlgebraMorphism{m.big.algebra, m.small.algebra,
                          images_from_json(m.big.algebra, m.small.algebra, mj.at("images"))};
    validate_morphism(m.f);
    return m;
}

namespace {

nlohmann::ordered_json algebra_to_json(const DGAlgebra& a)
{
    nlohmann::ordered_json j;
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto& g : a.generators())
        j["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
    if (!a.relations().empty()) {
        j["relations"] = nlohmann::ordered_json::array();
        for (const auto& r : a.relations())
            j["relations"].push_back(element_str(a, r));
    }
    nlohmann::ordered_json d = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < a.gen_count(); ++i)
        if (!a.d_of_generator(i).is_zero())
            d[a.generators()[i].name] = element_str(a, a.d_of_generator(i));
    if (!d.empty())
        j["differential"] = d;
    return j;
}

}  // namespace

nlohmann::ordered_json space_spec_to_json(const SpaceSpec& s)
{
    nlohmann::ordered_json j = algebra_to_json(s.algebra);
    if (s.pd) {
        auto basis = s.algebra.basis_of_degree(s.pd->formal_dim);
        nlohmann::ordered_json o;
        o["degree"] = s.pd->formal_dim;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (s.pd->orientation[i] == 0)
                continue;
            Element m;
            m.add_term(basis[i], Scalar(1));
            o["volume_monomial"] = element_str(s.algebra, m);
            o["value"] = scalar_str(s.pd->orientation[i]);
        }
        j["orientation"] = o;
    }
    if (s.sullivan && s.phi) {
        nlohmann::ordered_json sm = algebra_to_json(*s.sullivan);
        nlohmann::ordered_json images = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < s.sullivan->gen_count(); ++i)
            images[s.sullivan->generators()[i].name] =
                element_str(s.algebra, s.phi->images[i]);
        sm["images"] = images;
        j["sullivan_model"] = sm;
    }
    return j;
}

nlohmann::ordered_json map_spec_to_json(const MapSpec& m)
{
    nlohmann::ordered_json images = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < m.big.algebra.gen_count(); ++i)
        images[m.big.algebra.generators()[i].name] =
            element_str(m.small.algebra, m.f.images[i]);
    nlohmann::ordered_json j;
    j["morphism"] = {{"source", space_spec_to_json(m.big)},
                     {"target", space_spec_to_json(m.small)},
                     {"images", images}};
    return j;
}

std::string content_digest(std::string_view content)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace rht
