#include "galaxies/grid_matching.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace galaxies {

namespace {

GridEdge make_edge(Cell a, Cell b) {
    if (b < a) std::swap(a, b);
    return {a, b};
}

}  // namespace

std::vector<GridEdge> SquaredGridGraph::edges() const {
    std::set<std::pair<int, int>> vs;
    for (const Cell& v : vertices) vs.insert({v.x, v.y});
    std::vector<GridEdge> out;
    for (const Cell& v : vertices) {
        if (vs.count({v.x + 2, v.y})) out.push_back(make_edge(v, {v.x + 2, v.y}));
        if (vs.count({v.x, v.y + 2})) out.push_back(make_edge(v, {v.x, v.y + 2}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<SquaredGridGraph, SquaredGridGraph> parity_split(const SquaredGridGraph& g) {
    SquaredGridGraph even, odd;
    for (const Cell& v : g.vertices)
        (((v.x + v.y) % 2 + 2) % 2 == 0 ? even : odd).vertices.push_back(v);
    return {even, odd};
}

bool edges_cross(const GridEdge& e1, const GridEdge& e2) {
    if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v)
        throw std::invalid_argument("edges_cross: edges share an endpoint");
    // Open axis-aligned segments of length 2. Work in doubled coordinates to
    // stay integral: segment from 2u to 2v.
    auto seg = [](const GridEdge& e) {
        return std::array<int, 4>{2 * e.u.x, 2 * e.u.y, 2 * e.v.x, 2 * e.v.y};
    };
    auto s1 = seg(e1), s2 = seg(e2);
    auto overlap_open = [](int a0, int a1, int b0, int b1) {
        if (a0 > a1) std::swap(a0, a1);
        if (b0 > b1) std::swap(b0, b1);
        return std::max(a0, b0) < std::min(a1, b1);
    };
    const bool h1 = s1[1] == s1[3], h2 = s2[1] == s2[3];
    if (h1 && h2) {
        if (s1[1] != s2[1]) return false;
        return overlap_open(s1[0], s1[2], s2[0], s2[2]);
    }
    if (!h1 && !h2) {
        if (s1[0] != s2[0]) return false;
        return overlap_open(s1[1], s1[3], s2[1], s2[3]);
    }
    const auto& h = h1 ? s1 : s2;
    const auto& v = h1 ? s2 : s1;
    int hx0 = std::min(h[0], h[2]), hx1 = std::max(h[0], h[2]);
    int vy0 = std::min(v[1], v[3]), vy1 = std::max(v[1], v[3]);
    // Open intersection: strict on both spans.
    return v[0] > hx0 && v[0] < hx1 && h[1] > vy0 && h[1] < vy1;
}

Board graph_to_puzzle(const SquaredGridGraph& g) {
    if (g.vertices.empty()) throw std::invalid_argument("graph_to_puzzle: empty vertex set");
    for (const Cell& v : g.vertices)
        if (((v.x + v.y) % 2 + 2) % 2 != 0)
            throw std::invalid_argument("graph_to_puzzle: vertex at odd position");

    int minx = g.vertices[0].x, maxx = minx, miny = g.vertices[0].y, maxy = miny;
    for (const Cell& v : g.vertices) {
        minx = std::min(minx, v.x);
        maxx = std::max(maxx, v.x);
        miny = std::min(miny, v.y);
        maxy = std::max(maxy, v.y);
    }
    // Translate by an even vector so position parity is preserved.
    auto floor_even = [](int v) { return v - (((v % 2) + 2) % 2); };
    const int ox = floor_even(minx), oy = floor_even(miny);

    Board board;
    board.width = maxx - ox + 1;
    board.height = maxy - oy + 1;
    std::set<std::pair<int, int>> vs;
    for (const Cell& v : g.vertices) vs.insert({v.x - ox, v.y - oy});
    for (int y = 0; y < board.height; ++y)
        for (int x = 0; x < board.width; ++x) {
            const bool even = (x + y) % 2 == 0;
            if (even && vs.count({x, y})) continue;  // vertices are the empty spots
            board.centers.push_back({2 * x + 1, 2 * y + 1, false});
        }
    return board;
}

SquaredGridGraph puzzle_to_graph(const Board& b) {
    std::set<std::pair<int, int>> centered;
    for (const Center& c : b.centers) {
        if (c.kind() != CenterKind::CellCenter)
            throw std::invalid_argument("puzzle_to_graph: board has a non-cell center");
        centered.insert({(c.a - 1) / 2, (c.b - 1) / 2});
    }
    SquaredGridGraph g;
    for (int y = 0; y < b.height; ++y)
        for (int x = 0; x < b.width; ++x) {
            if (centered.count({x, y})) continue;
            if ((x + y) % 2 != 0)
                throw std::invalid_argument("puzzle_to_graph: empty cell at odd position");
            g.vertices.push_back({x, y});
        }
    return g;
}

// ---------------------------------------------------------------------------
// Backtracking matcher.

namespace {

struct Matcher {
    std::vector<Cell> verts;                   // sorted
    std::vector<std::vector<int>> neighbors;   // by vertex index, ascending
    std::vector<int> mate;
    std::vector<GridEdge> chosen;
    long long nodes = 0;
    bool budget_hit = false;
    const SearchBudget* budget = nullptr;

    explicit Matcher(const SquaredGridGraph& g) {
        verts = g.vertices;
        std::sort(verts.begin(), verts.end());
        std::map<std::pair<int, int>, int> index;
        for (size_t i = 0; i < verts.size(); ++i) index[{verts[i].x, verts[i].y}] = static_cast<int>(i);
        neighbors.resize(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) {
            const Cell v = verts[i];
            const std::array<Cell, 4> cand{{{v.x + 2, v.y}, {v.x - 2, v.y}, {v.x, v.y + 2}, {v.x, v.y - 2}}};
            for (const Cell& w : cand) {
                auto it = index.find({w.x, w.y});
                if (it != index.end()) neighbors[i].push_back(it->second);
            }
            std::sort(neighbors[i].begin(), neighbors[i].end());
        }
        mate.assign(verts.size(), -1);
    }

    // On one parity class crossing reduces to sharing a midpoint; the
    // general segment predicate keeps this correct for any vertex set.
    bool crosses_chosen(const GridEdge& e) const {
        for (const GridEdge& c : chosen)
            if (edges_cross(e, c)) return true;
        return false;
    }

    template <class Sink>
    bool rec(size_t from, Sink&& sink) {
        if (budget && budget->max_nodes && nodes >= *budget->max_nodes) {
            budget_hit = true;
            return true;
        }
        size_t i = from;
        while (i < verts.size() && mate[i] != -1) ++i;
        if (i == verts.size()) return sink(chosen);
        for (int j : neighbors[i]) {
            if (mate[j] != -1 || static_cast<size_t>(j) < i) continue;
            GridEdge e = make_edge(verts[i], verts[j]);
            if (crosses_chosen(e)) continue;
            ++nodes;
            mate[i] = j;
            mate[j] = static_cast<int>(i);
            chosen.push_back(e);
            bool go = rec(i + 1, sink);
            chosen.pop_back();
            mate[i] = mate[j] = -1;
            if (!go || budget_hit) return go;
        }
        return true;
    }
};

}  // namespace

MatchingOutcome solve_matching(const SquaredGridGraph& g, const SearchBudget& budget) {
    Matcher m(g);
    m.budget = &budget;
    MatchingOutcome out;
    m.rec(0, [&](const std::vector<GridEdge>& edges) {
        out.matching = Matching{edges};
        return false;
    });
    out.node_count = m.nodes;
    out.complete = !m.budget_hit || out.matching.has_value();
    return out;
}

MatchingCount count_matchings(const SquaredGridGraph& g, const SearchBudget& budget) {
    Matcher m(g);
    m.budget = &budget;
    MatchingCount out;
    m.rec(0, [&](const std::vector<GridEdge>&) {
        ++out.count;
        return !(budget.max_solutions && out.count >= *budget.max_solutions);
    });
    out.node_count = m.nodes;
    out.complete = !m.budget_hit;
    if (budget.max_solutions && out.count >= *budget.max_solutions) out.complete = false;
    return out;
}

// ---------------------------------------------------------------------------
// Files.

SquaredGridGraph parse_graph(const std::string& text) {
    SquaredGridGraph g;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == '#') continue;
        int x = 0, y = 0;
        std::istringstream vs(line);
        if (!(vs >> x >> y)) throw ParseError("expected 'x y' vertex line", line_no);
        std::string rest;
        if (vs >> rest) throw ParseError("trailing tokens after vertex", line_no);
        if (!seen.insert({x, y}).second) throw ParseError("duplicate vertex", line_no);
        g.vertices.push_back({x, y});
    }
    return g;
}

std::string serialize_graph(const SquaredGridGraph& g) {
    std::ostringstream out;
    for (const Cell& v : g.vertices) out << v.x << ' ' << v.y << '\n';
    return out.str();
}

std::string serialize_matching(const Matching& m) {
    std::ostringstream out;
    for (const GridEdge& e : m.edges)
        out << e.u.x << ' ' << e.u.y << ' ' << e.v.x << ' ' << e.v.y << '\n';
    return out.str();
}

}  // namespace galaxies
