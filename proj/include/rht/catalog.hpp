#ifndef RHT_CATALOG_HPP
#define RHT_CATALOG_HPP

#include <map>
#include <string>
#include <vector>

#include "rht/poincare.hpp"

namespace rht {

/* A Poincare duality model together with a Sullivan model of the same space. */
struct SpaceModel {
    std::string name;
    std::string description;
    DGAlgebra algebra; /* finite-dimensional PD model */
    PDStructure pd;
    DGAlgebra sullivan;   /* (^V, d) */
    AlgebraMorphism phi;  /* ^V -> algebra, a quasi-isomorphism */
};

/* A cdga model f : A -> B of a map N -> M, where A models M and B models N. */
struct MapModel {
    std::string name;
    std::string description;
    SpaceModel big;   /* M side; the source algebra A */
    SpaceModel small; /* N side; the target algebra B */
    AlgebraMorphism f;
};

class Catalog {
public:
    Catalog();

    std::vector<std::pair<std::string, std::string>> names() const;
    bool has_space(const std::string& name) const { return spaces_.count(name) != 0; }
    bool has_map(const std::string& name) const { return maps_.count(name) != 0; }
    const SpaceModel& space(const std::string& name) const;
    const MapModel& map(const std::string& name) const;
    const std::map<std::string, SpaceModel>& spaces() const { return spaces_; }
    const std::map<std::string, MapModel>& maps() const { return maps_; }

private:
    std::map<std::string, SpaceModel> spaces_;
    std::map<std::string, MapModel> maps_;
};

/* cochain window covering every catalog identity: [-m, 2m+4] */
std::pair<int, int> default_window(int formal_dim);

}  // namespace rht

#endif
