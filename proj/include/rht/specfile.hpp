#ifndef RHT_SPECFILE_HPP
#define RHT_SPECFILE_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "rht/catalog.hpp"

namespace rht {

/* A space presentation loaded from JSON: the algebra, an optional
 * orientation and an optional Sullivan model mapping onto it. */
struct SpaceSpec {
    DGAlgebra algebra;
    std::optional<PDStructure> pd;
    std::optional<DGAlgebra> sullivan;
    std::optional<AlgebraMorphism> phi;

    static SpaceSpec from_model(const SpaceModel& m);
    /* the PD structure, defaulting the orientation when absent */
    PDStructure require_pd() const;
    /* the Sullivan model, falling back to a free algebra itself */
    std::pair<DGAlgebra, AlgebraMorphism> require_sullivan() const;
};

struct MapSpec {
    SpaceSpec big;   /* source algebra A, models M */
    SpaceSpec small; /* target algebra B, models N */
    AlgebraMorphism f;

    static MapSpec from_model(const MapModel& m);
};

SpaceSpec parse_space_spec(const nlohmann::json& j);
MapSpec parse_map_spec(const nlohmann::json& j);
/* accepts either a bare space spec or {"morphism": {...}} */
bool json_is_map_spec(const nlohmann::json& j);

nlohmann::ordered_json space_spec_to_json(const SpaceSpec& s);
nlohmann::ordered_json map_spec_to_json(const MapSpec& m);

/* FNV-1a over the input bytes, for the report digest */
std::string content_digest(std::string_view content);

}  // namespace rht

#endif
