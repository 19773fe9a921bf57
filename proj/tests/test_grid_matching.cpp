#include "doctest.h"
#include "galaxies/grid_matching.hpp"

#include <random>
#include <set>

using namespace galaxies;

namespace {

SquaredGridGraph random_even_graph(std::mt19937& rng, int max_v) {
    std::uniform_int_distribution<int> nv(1, max_v), coord(0, 4);
    SquaredGridGraph g;
    std::set<std::pair<int, int>> used;
    int n = nv(rng);
    int guard = 0;
    while (static_cast<int>(g.vertices.size()) < n && guard++ < 300) {
        int x = 2 * coord(rng), y = 2 * coord(rng);
        // Mix parities inside the even class: (odd,odd) also has even sum.
        if (coord(rng) % 2 == 0) { x += 1; y += 1; }
        if (used.insert({x, y}).second) g.vertices.push_back({x, y});
    }
    return g;
}

}  // namespace

TEST_CASE("parity split keeps every edge") {
    SquaredGridGraph g{{{0, 0}, {1, 0}}};
    auto [ev, od] = parity_split(g);
    CHECK(ev.vertices == std::vector<Cell>{{0, 0}});
    CHECK(od.vertices == std::vector<Cell>{{1, 0}});
    CHECK(ev.edges().empty());
    CHECK(od.edges().empty());

    SquaredGridGraph g2{{{0, 0}, {2, 0}, {1, 1}}};
    auto [e2, o2] = parity_split(g2);
    CHECK(e2.edges().size() == 1);
    CHECK(o2.edges().empty());
}

TEST_CASE("edge counts are preserved by parity split (random)") {
    std::mt19937 rng(10);
    for (int i = 0; i < 100; ++i) {
        SquaredGridGraph g;
        std::set<std::pair<int, int>> used;
        std::uniform_int_distribution<int> c(0, 9);
        for (int j = 0; j < 50; ++j) {
            int x = c(rng), y = c(rng);
            if (used.insert({x, y}).second) g.vertices.push_back({x, y});
        }
        auto [ev, od] = parity_split(g);
        CHECK(ev.edges().size() + od.edges().size() == g.edges().size());
    }
}

TEST_CASE("edges_cross basics") {
    GridEdge h{{0, 0}, {2, 0}};
    CHECK(edges_cross(h, {{1, -1}, {1, 1}}));        // perpendicular, shared midpoint
    CHECK_FALSE(edges_cross(h, {{0, 2}, {2, 2}}));   // parallel
    CHECK_FALSE(edges_cross(h, {{4, 0}, {6, 0}}));   // collinear disjoint
    CHECK_THROWS_AS(edges_cross(h, {{2, 0}, {4, 0}}), std::invalid_argument);
}

TEST_CASE("edges_cross symmetric and equals the midpoint rule on one parity class") {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> c(0, 6);
    int seen_cross = 0;
    for (int i = 0; i < 2000; ++i) {
        // Two random even-class edges.
        auto mk = [&]() {
            Cell u{2 * c(rng), 2 * c(rng)};
            if (c(rng) % 2 == 0) { u.x += 1; u.y += 1; }  // odd-odd is also even class
            bool horiz = c(rng) % 2 == 0;
            Cell v = horiz ? Cell{u.x + 2, u.y} : Cell{u.x, u.y + 2};
            return GridEdge{u, v};
        };
        GridEdge a = mk(), b = mk();
        if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) continue;
        bool cross = edges_cross(a, b);
        CHECK(cross == edges_cross(b, a));
        Cell ma{(a.u.x + a.v.x) / 2, (a.u.y + a.v.y) / 2};
        Cell mb{(b.u.x + b.v.x) / 2, (b.u.y + b.v.y) / 2};
        bool perp = (a.u.x == a.v.x) != (b.u.x == b.v.x);
        CHECK(cross == (perp && ma == mb));
        seen_cross += cross ? 1 : 0;
    }
    CHECK(seen_cross > 0);
}

TEST_CASE("graph_to_puzzle on a forced edge") {
    SquaredGridGraph g{{{0, 0}, {2, 0}}};
    Board b = graph_to_puzzle(g);
    CHECK(b.width == 3);
    CHECK(b.height == 1);
    REQUIRE(b.centers.size() == 1);  // only the odd middle cell is centered
    auto out = count_solutions(b, ShapeClass::Unit3);
    CHECK(out.count == 1);
}

TEST_CASE("single vertex converts to an unsat 1x1 board") {
    SquaredGridGraph g{{{0, 0}}};
    Board b = graph_to_puzzle(g);
    CHECK(b.width == 1);
    CHECK(b.height == 1);
    CHECK(b.centers.empty());
    CHECK(solve(b, ShapeClass::Unit3).status == SolveStatus::Unsat);
    CHECK_FALSE(solve_matching(g).matching.has_value());
}

TEST_CASE("four corners of a 2-square: two matchings, two solutions") {
    SquaredGridGraph g{{{0, 0}, {2, 0}, {0, 2}, {2, 2}}};
    auto cnt = count_matchings(g);
    CHECK(cnt.count == 2);
    Board b = graph_to_puzzle(g);
    CHECK(count_solutions(b, ShapeClass::Unit3).count == 2);
}

TEST_CASE("odd vertex count has no matching") {
    SquaredGridGraph g{{{0, 0}, {2, 0}, {4, 0}}};
    CHECK_FALSE(solve_matching(g).matching.has_value());
    CHECK(count_matchings(g).count == 0);
}

TEST_CASE("round trip graph -> puzzle -> graph") {
    std::mt19937 rng(8);
    for (int i = 0; i < 50; ++i) {
        SquaredGridGraph g = random_even_graph(rng, 10);
        Board b = graph_to_puzzle(g);
        SquaredGridGraph back = puzzle_to_graph(b);
        // Translation-normalize both to compare.
        auto norm = [](SquaredGridGraph gr) {
            int mx = gr.vertices[0].x, my = gr.vertices[0].y;
            for (auto& v : gr.vertices) { mx = std::min(mx, v.x); my = std::min(my, v.y); }
            mx -= ((mx % 2) + 2) % 2;
            my -= ((my % 2) + 2) % 2;
            for (auto& v : gr.vertices) { v.x -= mx; v.y -= my; }
            std::sort(gr.vertices.begin(), gr.vertices.end());
            return gr;
        };
        REQUIRE_FALSE(back.vertices.empty());
        CHECK(norm(g).vertices == norm(back).vertices);
    }
}

TEST_CASE("board with an empty odd cell is rejected") {
    Board b;
    b.width = 2;
    b.height = 1;
    b.centers = {{1, 1, false}};  // cell (1,0) empty at odd position
    CHECK_THROWS_AS(puzzle_to_graph(b), std::invalid_argument);
}

TEST_CASE("matching equivalence with unit3 solving (lemma-scale randoms)") {
    std::mt19937 rng(21);
    for (int i = 0; i < 120; ++i) {
        SquaredGridGraph g = random_even_graph(rng, 12);
        auto m = solve_matching(g);
        REQUIRE(m.complete);
        Board b = graph_to_puzzle(g);
        auto s = solve(b, ShapeClass::Unit3);
        CHECK(m.matching.has_value() == (s.status == SolveStatus::Sat));
        auto cm = count_matchings(g);
        auto cs = count_solutions(b, ShapeClass::Unit3);
        REQUIRE(cm.complete);
        REQUIRE(cs.complete);
        CHECK(cm.count == cs.count);
    }
}

TEST_CASE("graph file round trip") {
    SquaredGridGraph g{{{0, 0}, {2, 4}, {-2, 6}}};
    SquaredGridGraph h = parse_graph("c comment\n" + serialize_graph(g));
    CHECK(h.vertices == g.vertices);
    CHECK_THROWS_AS(parse_graph("0 0\n0 0\n"), ParseError);
}
