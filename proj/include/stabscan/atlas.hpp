#pragma once

#include "stabscan/driver.hpp"

#include <map>
#include <string>
#include <vector>

namespace stabscan {

struct CellInfo {
    std::string key;
    CellRep rep;
    std::vector<ObjectId> stables;
    int distance = 0;
    int chamber = -1;
};

struct WallInfo {
    std::string key;  // heart key
    Heart heart;      // heart.a is the lower simple in cell_a
    int cell_a = -1;  // cell where heart.a has the lower phase
    int cell_b = -1;  // the other side; -1 for frontier walls
    bool true_wall = false;
    bool frontier = false;
};

struct ChamberInfo {
    std::vector<int> cells;  // in chain order
    std::vector<std::string> stable_names;
};

struct BoundaryPoint {
    std::string name;
    std::vector<std::string> walls;  // heart keys ending at this point
};

struct ExcludedPoint {
    std::string name;
    std::string reason;
};

struct ExchangeEdge {
    int from, to;  // indices into ChamberAtlas::walls (hearts)
    std::string label;
};

struct ChamberAtlas {
    std::string driver;
    int depth = 0;
    std::vector<CellInfo> cells;
    std::map<std::string, int> cell_index;
    std::vector<WallInfo> walls;
    std::map<std::string, int> wall_index;
    std::vector<ChamberInfo> chambers;
    std::vector<std::pair<int, int>> speiser;  // cell pairs, one per internal wall
    std::vector<int> speiser_wall;             // wall index of each Speiser edge
    std::vector<ExchangeEdge> exchange;
    std::vector<bool> exchange_interior;       // per wall/heart: all four tilts recorded
    std::vector<BoundaryPoint> boundary;
    std::vector<ExcludedPoint> excluded;

    int seed() const { return 0; }
    std::vector<std::vector<int>> speiser_adjacency() const;
    std::vector<int> exchange_degree() const;
    bool speiser_is_tree() const;
};

ChamberAtlas scan(const CategoryModel& d, int depth);

struct WallArc {
    Vec2<double> endpoint_a;  // dual direction of the charges with Z(a) = 0
    Vec2<double> endpoint_b;
    double length = 0.0;      // the whole real equator has length 1
    bool monotone = true;
};

// throws std::domain_error if the two classes are proportional
WallArc wall_arc(const KClass& a, const KClass& b, const InnerProductQ& ip = identity_ip());
WallArc wall_arc(const CategoryModel& d, const Heart& h, const InnerProductQ& ip = identity_ip());

std::string graphviz_speiser(const ChamberAtlas& a);
std::string graphviz_exchange(const ChamberAtlas& a);

}  // namespace stabscan
