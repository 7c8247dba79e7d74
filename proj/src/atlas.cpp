#include "stabscan/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stabscan {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

ChamberAtlas scan(const CategoryModel& d, int depth) {
    if (depth < 1) throw std::invalid_argument("scan depth must be at least 1");
    ChamberAtlas at;
    at.driver = d.name();
    at.depth = depth;

    std::set<std::string> tracked;
    for (const auto& o : d.enumerate(depth)) tracked.insert(o.name);
    auto admissible = [&](const CellRep& w) { return tracked.count(w.lo.name) && tracked.count(w.hi.name); };

    auto add_cell = [&](const CellRep& rep, int dist) {
        CellInfo c;
        c.key = d.cell_key(rep, depth);
        c.rep = rep;
        c.stables = d.stable_set(rep, depth);
        c.distance = dist;
        at.cell_index[c.key] = static_cast<int>(at.cells.size());
        at.cells.push_back(std::move(c));
        return static_cast<int>(at.cells.size()) - 1;
    };

    Heart seed = d.seed_heart();
    add_cell({seed.a, seed.b}, 0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int ci = queue.front();
        queue.pop_front();
        const CellRep rep = at.cells[ci].rep;
        const int dist = at.cells[ci].distance;
        for (const auto& w : d.windows(rep, depth)) {
            if (!admissible(w)) continue;
            std::string hk = d.heart_key(w.heart());
            if (at.wall_index.count(hk)) continue;
            CellRep other = w.reversed();
            std::string ok = d.cell_key(other, depth);
            WallInfo wall;
            wall.key = hk;
            wall.heart = w.heart();
            wall.cell_a = ci;
            wall.true_wall = d.true_wall(w.heart());
            auto it = at.cell_index.find(ok);
            if (it != at.cell_index.end()) {
                wall.cell_b = it->second;
            } else if (dist + 1 <= depth) {
                wall.cell_b = add_cell(other, dist + 1);
                queue.push_back(wall.cell_b);
            } else {
                wall.frontier = true;
            }
            at.wall_index[hk] = static_cast<int>(at.walls.size());
            if (!wall.frontier) {
                at.speiser.emplace_back(wall.cell_a, wall.cell_b);
                at.speiser_wall.push_back(static_cast<int>(at.walls.size()));
            }
            at.walls.push_back(std::move(wall));
        }
    }

    // exchange graph on recorded hearts
    at.exchange_interior.assign(at.walls.size(), true);
    for (int i = 0; i < static_cast<int>(at.walls.size()); ++i) {
        const Heart h = at.walls[i].heart;
        for (const ObjectId& s : {h.a, h.b}) {
            for (TiltDir dir : {TiltDir::Right, TiltDir::Left}) {
                Heart t = d.tilt(h, s, dir, depth);
                auto it = at.wall_index.find(d.heart_key(t));
                if (it == at.wall_index.end()) {
                    at.exchange_interior[i] = false;
                    continue;
                }
                if (dir == TiltDir::Right) at.exchange.push_back({i, it->second, "R:" + s.name});
            }
        }
    }

    // chambers: merge across walls without extensions
    UnionFind uf(static_cast<int>(at.cells.size()));
    for (std::size_t e = 0; e < at.speiser.size(); ++e)
        if (!at.walls[at.speiser_wall[e]].true_wall) uf.unite(at.speiser[e].first, at.speiser[e].second);
    std::map<int, int> root_to_chamber;
    std::vector<std::vector<int>> local(at.cells.size());
    for (std::size_t e = 0; e < at.speiser.size(); ++e) {
        if (at.walls[at.speiser_wall[e]].true_wall) continue;
        local[at.speiser[e].first].push_back(at.speiser[e].second);
        local[at.speiser[e].second].push_back(at.speiser[e].first);
    }
    for (int c = 0; c < static_cast<int>(at.cells.size()); ++c) {
        int r = uf.find(c);
        if (!root_to_chamber.count(r)) {
            root_to_chamber[r] = static_cast<int>(at.chambers.size());
            at.chambers.emplace_back();
        }
        at.cells[c].chamber = root_to_chamber[r];
    }
    std::vector<std::vector<int>> members(at.chambers.size());
    for (int c = 0; c < static_cast<int>(at.cells.size()); ++c) members[at.cells[c].chamber].push_back(c);
    for (std::size_t k = 0; k < at.chambers.size(); ++k) {
        auto& m = members[k];
        int start = m.front();
        for (int c : m)
            if (local[c].size() <= 1 && (local[start].size() > 1 || at.cells[c].distance < at.cells[start].distance))
                start = c;
        std::vector<int> chain{start};
        std::set<int> seen{start};
        int cur = start;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int n : local[cur])
                if (!seen.count(n)) {
                    chain.push_back(n);
                    seen.insert(n);
                    cur = n;
                    moved = true;
                    break;
                }
        }
        at.chambers[k].cells = chain;
        std::set<std::string> names;
        for (const auto& o : at.cells[start].stables) names.insert(o.name);
        at.chambers[k].stable_names.assign(names.begin(), names.end());
    }

    // boundary points
    std::map<std::string, int> bidx;
    for (const auto& w : at.walls) {
        for (const ObjectId& s : {w.heart.a, w.heart.b}) {
            if (!d.heart_simple_candidate(s.name)) continue;
            auto it = bidx.find(s.name);
            if (it == bidx.end()) {
                bidx[s.name] = static_cast<int>(at.boundary.size());
                at.boundary.push_back({s.name, {}});
                it = bidx.find(s.name);
            }
            at.boundary[it->second].walls.push_back(w.key);
        }
    }
    for (const auto& o : d.enumerate(depth))
        if (auto r = d.exclusion_reason(o.name)) at.excluded.push_back({o.name, *r});
    return at;
}

std::vector<std::vector<int>> ChamberAtlas::speiser_adjacency() const {
    std::vector<std::vector<int>> adj(cells.size());
    for (const auto& [a, b] : speiser) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

std::vector<int> ChamberAtlas::exchange_degree() const {
    std::vector<int> deg(walls.size(), 0);
    for (const auto& e : exchange) {
        deg[e.from]++;
        deg[e.to]++;
    }
    return deg;
}

bool ChamberAtlas::speiser_is_tree() const {
    if (cells.empty()) return false;
    if (speiser.size() + 1 != cells.size()) return false;
    auto adj = speiser_adjacency();
    std::vector<bool> seen(cells.size(), false);
    std::deque<int> q{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int n : adj[v])
            if (!seen[n]) {
                seen[n] = true;
                ++count;
                q.push_back(n);
            }
    }
    return count == cells.size();
}

WallArc wall_arc(const KClass& a, const KClass& b, const InnerProductQ& ip) {
    Mat2<Rational> B;
    B << Rational(a(0)), Rational(b(0)), Rational(a(1)), Rational(b(1));
    if (det2(B) == Rational(0)) throw std::domain_error("wall_arc: proportional classes");
    Mat2<Rational> Bi = inverse2(B);
    // real charges with Z(a) = x, Z(b) = y, x, y >= 0 are the functionals (x, y) B^{-1}
    Vec2<Rational> fa = Bi.row(1).transpose();  // x = 0: kills a
    Vec2<Rational> fb = Bi.row(0).transpose();  // y = 0: kills b
    Mat2<Rational> Gi = inverse2(ip.gram);
    double ab = to_double(fa.dot(Gi * fb));
    double aa = to_double(fa.dot(Gi * fa));
    double bb = to_double(fb.dot(Gi * fb));
    double c = std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
    WallArc w;
    Vec2<double> ea(to_double(fa(0)), to_double(fa(1)));
    Vec2<double> eb(to_double(fb(0)), to_double(fb(1)));
    w.endpoint_a = ea.normalized();
    w.endpoint_b = eb.normalized();
    w.length = std::acos(c) / (2.0 * PI);
    w.monotone = true;  // the sweep is a straight segment in the dual plane
    return w;
}

WallArc wall_arc(const CategoryModel& d, const Heart& h, const InnerProductQ& ip) {
    return wall_arc(d.kclass(h.a), d.kclass(h.b), ip);
}

namespace {
std::string quote(const std::string& s) { return "\"" + s + "\""; }
}  // namespace

std::string graphviz_speiser(const ChamberAtlas& a) {
    std::ostringstream os;
    os << "graph speiser {\n";
    for (const auto& c : a.cells) os << "  " << quote(c.key) << ";\n";
    for (const auto& [x, y] : a.speiser) os << "  " << quote(a.cells[x].key) << " -- " << quote(a.cells[y].key) << ";\n";
    os << "}\n";
    return os.str();
}

std::string graphviz_exchange(const ChamberAtlas& a) {
    std::ostringstream os;
    os << "digraph exchange {\n";
    for (const auto& w : a.walls) os << "  " << quote(w.key) << ";\n";
    for (const auto& e : a.exchange)
        os << "  " << quote(a.walls[e.from].key) << " -> " << quote(a.walls[e.to].key) << " [label="
           << quote(e.label) << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace stabscan
