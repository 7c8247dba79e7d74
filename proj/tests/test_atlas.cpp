#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabscan/atlas.hpp"
#include "stabscan/json_io.hpp"

#include <cmath>
#include <set>

using namespace stabscan;

namespace {

std::set<std::string> boundary_names(const ChamberAtlas& at) {
    std::set<std::string> out;
    for (const auto& b : at.boundary) out.insert(b.name);
    return out;
}

int t_index(const std::string& n) { return std::stoi(n.substr(2)); }

// brute force, whole equator = 1: sweep Z = -(x,y) M^{-1} for x/y in (0,inf) and add up the turning angle
double arc_oracle(const KClass& a, const KClass& b) {
    Mat2<double> M;
    M.col(0) = a.cast<double>();
    M.col(1) = b.cast<double>();
    Mat2<double> Mi = M.inverse();
    auto point = [&](double t) {
        Eigen::RowVector2d v(std::cos(t), std::sin(t));
        return Eigen::RowVector2d(-v * Mi);
    };
    const int N = 200000;
    double total = 0;
    Eigen::RowVector2d prev = point(1e-9);
    for (int i = 1; i <= N; ++i) {
        double t = (PI / 2) * i / N;
        if (i == N) t -= 1e-9;
        Eigen::RowVector2d cur = point(t);
        total += std::atan2(prev(0) * cur(1) - prev(1) * cur(0), prev.dot(cur));
        prev = cur;
    }
    return std::abs(total) / (2 * PI);
}

}  // namespace

TEST_CASE("a2 atlas") {
    auto d = driver_a2();
    for (int depth : {3, 4, 5}) {
        ChamberAtlas at = scan(*d, depth);
        CAPTURE(depth);
        CHECK(at.chambers.size() == 4);
        CHECK(boundary_names(at) == std::set<std::string>{"s", "e", "t"});
        CHECK(at.speiser_is_tree());
        CHECK(at.cells.size() == static_cast<std::size_t>(1 + 3 * depth));
        auto adj = at.speiser_adjacency();
        CHECK(adj[0].size() == 3);
        int triple = 0;
        for (const auto& c : at.chambers) {
            if (c.stable_names.size() == 3) ++triple;
            // three rays, each a chain of `depth` cells
            if (c.stable_names.size() == 2) CHECK(c.cells.size() == static_cast<std::size_t>(depth));
        }
        CHECK(triple == 1);
        for (std::size_t v = 1; v < adj.size(); ++v) CHECK(adj[v].size() <= 2);
        auto deg = at.exchange_degree();
        for (std::size_t w = 0; w < at.walls.size(); ++w)
            if (at.exchange_interior[w]) CHECK(deg[w] == 4);
    }
}

TEST_CASE("ginzburg a2 atlas is a trivalent tree ball") {
    auto d = driver_ginzburg_a2();
    ChamberAtlas at = scan(*d, 4);
    CHECK(at.cells.size() == 1 + 3 + 6 + 12 + 24);
    CHECK(at.chambers.size() == at.cells.size());
    CHECK(at.speiser_is_tree());
    std::vector<int> per_layer(5, 0);
    for (const auto& c : at.cells) {
        REQUIRE(c.distance <= 4);
        per_layer[c.distance]++;
        CHECK(c.stables.size() == 3);
    }
    CHECK(per_layer == std::vector<int>{1, 3, 6, 12, 24});
    auto adj = at.speiser_adjacency();
    for (std::size_t v = 0; v < at.cells.size(); ++v) {
        if (at.cells[v].distance < 4) CHECK(adj[v].size() == 3);
        if (at.cells[v].distance == 4) CHECK(adj[v].size() == 1);
        CHECK(d->windows(at.cells[v].rep, 4).size() == 3);
    }
    // T_s on charges has eigenvalues +1 and -1
    Mat2<double> m = d->twist_matrix("T_s").cast<double>();
    CHECK(m.trace() == doctest::Approx(0.0));
    CHECK(m.determinant() == doctest::Approx(-1.0));
}

TEST_CASE("lambda210 speiser graph is the truncated comb") {
    auto d = driver_lambda210();
    for (int depth : {2, 3, 4, 5}) {
        CAPTURE(depth);
        ChamberAtlas at = scan(*d, depth);
        // label every cell by a comb vertex without looking at the Speiser edges
        std::map<int, std::pair<int, int>> label;
        for (const auto& ch : at.chambers) {
            std::vector<int> idx;
            for (const auto& n : ch.stable_names)
                if (n.rfind("t_", 0) == 0) idx.push_back(t_index(n));
            REQUIRE(!idx.empty());
            int m = *std::max_element(idx.begin(), idx.end());
            if (ch.stable_names.size() == 3) {
                REQUIRE(ch.cells.size() == 1);
                label[ch.cells[0]] = {m, 0};
            } else {
                for (std::size_t k = 0; k < ch.cells.size(); ++k) label[ch.cells[k]] = {m, static_cast<int>(k) + 1};
            }
        }
        REQUIRE(label.size() == at.cells.size());
        std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> got, want;
        for (const auto& [a, b] : at.speiser) {
            auto la = label[a], lb = label[b];
            got.insert({std::min(la, lb), std::max(la, lb)});
        }
        // ball of radius depth around (0,0) in Z x N with the comb edges
        auto inside = [&](int m, int n) { return std::abs(m) + n <= depth; };
        std::set<std::pair<int, int>> verts;
        for (int m = -depth; m <= depth; ++m)
            for (int n = 0; inside(m, n); ++n) {
                verts.insert({m, n});
                if (inside(m + 1, 0) && n == 0) want.insert({{m, 0}, {m + 1, 0}});
                if (inside(m, n + 1)) want.insert({{m, n}, {m, n + 1}});
            }
        std::set<std::pair<int, int>> labels;
        for (const auto& [c, l] : label) labels.insert(l);
        CHECK(labels == verts);
        CHECK(got == want);
        CHECK(at.cells.size() == static_cast<std::size_t>((depth + 1) * (depth + 1)));
        CHECK(at.speiser_is_tree());
    }
}

TEST_CASE("lambda210 boundary points") {
    auto at = scan(*driver_lambda210(), 3);
    std::set<std::string> want{"s"};
    for (int n = -3; n <= 3; ++n) want.insert("t_" + std::to_string(n));
    CHECK(boundary_names(at) == want);
}

TEST_CASE("p1 boundary and exclusion") {
    auto d = driver_p1();
    for (int depth : {2, 3, 4}) {
        ChamberAtlas at = scan(*d, depth);
        std::set<std::string> want;
        for (int k = -depth; k <= depth; ++k) want.insert("O(" + std::to_string(k) + ")");
        CHECK(boundary_names(at) == want);
        REQUIRE(at.excluded.size() == 1);
        CHECK(at.excluded[0].name == "O_x");
        CHECK(!at.excluded[0].reason.empty());
        CHECK(at.speiser_is_tree());
    }
    ChamberAtlas at = scan(*d, 3);
    CHECK(at.cells.size() == 19);
    CHECK(at.chambers.size() == 7);
}

TEST_CASE("atlas consistency") {
    for (const auto& n : driver_names()) {
        auto d = make_driver(n);
        for (int depth = 1; depth <= 4; ++depth) {
            ChamberAtlas at = scan(*d, depth);
            CAPTURE(n);
            CAPTURE(depth);
            CHECK(at.speiser_is_tree());
            // one wall per Speiser edge, shared by its two cells
            REQUIRE(at.speiser.size() == at.speiser_wall.size());
            for (std::size_t i = 0; i < at.speiser.size(); ++i) {
                const WallInfo& w = at.walls[at.speiser_wall[i]];
                auto [a, b] = at.speiser[i];
                CHECK(std::set<int>{a, b} == std::set<int>{w.cell_a, w.cell_b});
                CHECK_FALSE(w.frontier);
            }
            // true walls end at the boundary points of their simples
            std::map<std::string, std::set<std::string>> ends;
            for (const auto& b : at.boundary) ends[b.name] = {b.walls.begin(), b.walls.end()};
            for (const auto& w : at.walls) {
                CHECK(w.true_wall == d->true_wall(w.heart));
                if (!w.true_wall) continue;
                for (const auto& s : {w.heart.a.name, w.heart.b.name})
                    if (ends.count(s)) CHECK(ends[s].count(w.key));
            }
            // chambers are chains
            for (const auto& ch : at.chambers)
                for (std::size_t k = 1; k < ch.cells.size(); ++k) {
                    auto adj = at.speiser_adjacency();
                    const auto& nb = adj[ch.cells[k - 1]];
                    CHECK(std::find(nb.begin(), nb.end(), ch.cells[k]) != nb.end());
                }
        }
    }
}

TEST_CASE("scans are deterministic") {
    for (const auto& n : driver_names()) {
        auto d = make_driver(n);
        CHECK(atlas_json(scan(*d, 3)).dump() == atlas_json(scan(*d, 3)).dump());
    }
}

TEST_CASE("wall arc lengths") {
    CHECK(wall_arc(KClass(1, 0), KClass(0, 1)).length == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(wall_arc(KClass(1, 0), KClass(0, 1)).length == doctest::Approx(arc_oracle(KClass(1, 0), KClass(0, 1))).epsilon(1e-6));
    CHECK(wall_arc(KClass(1, 0), KClass(1, 1)).length == doctest::Approx(arc_oracle(KClass(1, 0), KClass(1, 1))).epsilon(1e-6));
    CHECK(wall_arc(KClass(2, 1), KClass(-1, 3)).length == doctest::Approx(arc_oracle(KClass(2, 1), KClass(-1, 3))).epsilon(1e-6));
    for (auto [a, b] : std::vector<std::pair<KClass, KClass>>{{KClass(1, 0), KClass(0, 1)},
                                                                {KClass(1, 0), KClass(1, 1)},
                                                                {KClass(2, -1), KClass(1, 4)}}) {
        CHECK(wall_arc(a, b).length == doctest::Approx(wall_arc(b, a).length));
        // the opposite sign sweeps the complementary arc
        CHECK(wall_arc(a, b).length + wall_arc(a, KClass(-b)).length == doctest::Approx(0.5).epsilon(1e-10));
    }
    // a2 triple cell: its three walls and their complements fill the equator
    auto d = driver_a2();
    Heart h = d->seed_heart();
    for (const auto& ip : {identity_ip(), cartan_ip()}) {
        double total = 0;
        for (const auto& w : d->windows({h.a, h.b}, 4)) {
            KClass a = d->kclass(w.lo), b = d->kclass(w.hi);
            total += wall_arc(a, b, ip).length + wall_arc(a, KClass(-b), ip).length;
        }
        CHECK(total == doctest::Approx(1.5).epsilon(1e-10));
    }
    // each of the three walls is a sixth under the Cartan form
    for (const auto& w : d->windows({h.a, h.b}, 4)) CHECK(wall_arc(*d, w.heart(), cartan_ip()).length == doctest::Approx(1.0 / 6));
    CHECK_THROWS_AS(wall_arc(KClass(1, 1), KClass(2, 2)), std::domain_error);
}

TEST_CASE("graphviz export") {
    auto at = scan(*driver_a2(), 2);
    auto g = graphviz_speiser(at);
    CHECK(g.find("graph") != std::string::npos);
    CHECK(graphviz_exchange(at).find("graph") != std::string::npos);
}
