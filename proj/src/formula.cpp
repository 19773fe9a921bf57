#include "galaxies/formula.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "json.hpp"

namespace galaxies {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

}  // namespace

Formula parse_formula(const std::string& text) {
    auto lines = split_lines(text);
    Formula f;
    bool header_seen = false;
    int expected_clauses = 0;
    for (size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        std::istringstream in(lines[li]);
        std::string first;
        if (!(in >> first)) continue;
        if (first == "c") continue;
        if (!header_seen) {
            std::string fmt;
            if (first != "p" || !(in >> fmt) || fmt != "1in3")
                throw ParseError("expected header 'p 1in3 <num_vars> <num_clauses>'", line_no);
            if (!(in >> f.num_vars >> expected_clauses) || f.num_vars < 0 || expected_clauses < 0)
                throw ParseError("bad variable/clause counts in header", line_no);
            header_seen = true;
            continue;
        }
        std::vector<int> lits;
        int v = 0;
        std::istringstream cin(lines[li]);
        while (cin >> v) lits.push_back(v);
        if (!cin.eof()) throw ParseError("expected integers only in clause line", line_no);
        if (lits.empty() || lits.back() != 0)
            throw ParseError("clause line must end with 0", line_no);
        lits.pop_back();
        if (lits.size() != 3)
            throw ParseError("clause has " + std::to_string(lits.size()) + " literals, expected 3",
                             line_no);
        Clause clause;
        std::set<int> vars_used;
        for (int i = 0; i < 3; ++i) {
            int lit = lits[i];
            if (lit == 0) throw ParseError("literal 0 inside clause", line_no);
            int var = std::abs(lit);
            if (var > f.num_vars)
                throw ParseError("variable " + std::to_string(var) + " out of range", line_no);
            if (!vars_used.insert(var).second)
                throw ParseError("variable " + std::to_string(var) + " repeated within a clause",
                                 line_no);
            clause[i] = {var, lit < 0};
        }
        f.clauses.push_back(clause);
    }
    if (!header_seen) throw ParseError("missing 'p 1in3' header", 1);
    if (static_cast<int>(f.clauses.size()) != expected_clauses)
        throw ParseError("header announced " + std::to_string(expected_clauses) + " clauses, found " +
                             std::to_string(f.clauses.size()),
                         1);
    return f;
}

std::string serialize_formula(const Formula& f) {
    std::ostringstream out;
    out << "p 1in3 " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const Clause& c : f.clauses) {
        for (const Literal& l : c) out << (l.negated ? -l.var : l.var) << ' ';
        out << "0\n";
    }
    return out.str();
}

bool clause_satisfied(const Clause& c, const Assignment& a) {
    int truths = 0;
    for (const Literal& l : c)
        if (a.value(l.var) != l.negated) ++truths;
    return truths == 1;
}

bool formula_satisfied(const Formula& f, const Assignment& a) {
    for (const Clause& c : f.clauses)
        if (!clause_satisfied(c, a)) return false;
    return true;
}

std::vector<Assignment> one_in_three_models(const Formula& f) {
    if (f.num_vars > 24)
        throw std::invalid_argument("one_in_three_models: more than 24 variables");
    std::vector<Assignment> models;
    const uint32_t total = 1u << f.num_vars;
    for (uint32_t m = 0; m < total; ++m) {
        Assignment a;
        a.values.resize(f.num_vars);
        for (int i = 0; i < f.num_vars; ++i)
            a.values[i] = (m >> (f.num_vars - 1 - i)) & 1u;  // variable 1 most significant
        if (formula_satisfied(f, a)) models.push_back(std::move(a));
    }
    return models;
}

// ---------------------------------------------------------------------------
// Layout validation.

namespace {

// Expands a polyline to the full set of lattice points it passes through;
// returns nullopt when a segment is not axis-aligned.
std::optional<std::vector<Cell>> expand_polyline(const std::vector<Cell>& pts) {
    if (pts.empty()) return std::vector<Cell>{};
    std::vector<Cell> out{pts[0]};
    for (size_t i = 1; i < pts.size(); ++i) {
        Cell a = pts[i - 1], b = pts[i];
        if (a.x != b.x && a.y != b.y) return std::nullopt;
        if (a == b) return std::nullopt;
        int dx = (b.x > a.x) - (b.x < a.x);
        int dy = (b.y > a.y) - (b.y < a.y);
        Cell cur = a;
        while (!(cur == b)) {
            cur = {cur.x + dx, cur.y + dy};
            out.push_back(cur);
        }
    }
    return out;
}

}  // namespace

LayoutReport validate_layout(const Formula& f, const Layout& l) {
    LayoutReport rep;
    auto issue = [&](std::string m) { rep.issues.push_back({std::move(m)}); };

    if (static_cast<int>(l.var_anchors.size()) != f.num_vars)
        issue("layout has " + std::to_string(l.var_anchors.size()) + " variable anchors, formula has " +
              std::to_string(f.num_vars));
    if (l.clause_anchors.size() != f.clauses.size())
        issue("layout has " + std::to_string(l.clause_anchors.size()) + " clause anchors, formula has " +
              std::to_string(f.clauses.size()));

    auto inside = [&](Cell p) { return p.x >= 0 && p.x < l.grid_w && p.y >= 0 && p.y < l.grid_h; };

    std::set<std::pair<int, int>> anchor_set;
    auto add_anchor = [&](Cell p, const std::string& what) {
        if (!inside(p)) issue(what + " outside the coarse grid");
        if (!anchor_set.insert({p.x, p.y}).second) issue("anchors collide at (" + std::to_string(p.x) + "," + std::to_string(p.y) + ")");
    };
    for (size_t i = 0; i < l.var_anchors.size(); ++i)
        add_anchor(l.var_anchors[i], "variable anchor x" + std::to_string(i + 1));
    for (size_t i = 0; i < l.clause_anchors.size(); ++i)
        add_anchor(l.clause_anchors[i], "clause anchor " + std::to_string(i + 1));

    // Which (clause, slot) pairs carry a route.
    std::set<std::pair<int, int>> routed;
    std::vector<std::vector<Cell>> expanded;
    std::vector<const Route*> kept;
    for (const Route& r : l.routes) {
        std::string tag = "route clause " + std::to_string(r.clause + 1) + " slot " + std::to_string(r.slot);
        if (r.clause < 0 || r.clause >= static_cast<int>(f.clauses.size())) {
            issue(tag + ": clause index out of range");
            continue;
        }
        if (r.slot < 1 || r.slot > 3) {
            issue(tag + ": slot out of range");
            continue;
        }
        if (!routed.insert({r.clause, r.slot}).second) issue(tag + ": duplicate route");
        auto exp = expand_polyline(r.points);
        if (!exp) {
            issue(tag + ": not an axis-aligned polyline");
            continue;
        }
        for (Cell p : *exp)
            if (!inside(p)) { issue(tag + ": leaves the coarse grid"); break; }
        std::set<std::pair<int, int>> uniq;
        for (Cell p : *exp)
            if (!uniq.insert({p.x, p.y}).second) { issue(tag + ": self-intersecting"); break; }
        if (!exp->empty()) {
            if (static_cast<size_t>(r.clause) < l.clause_anchors.size() &&
                !(exp->front() == l.clause_anchors[r.clause]))
                issue(tag + ": does not start at the clause anchor");
            int var = f.clauses[r.clause][r.slot - 1].var;
            if (var - 1 < static_cast<int>(l.var_anchors.size()) &&
                !(exp->back() == l.var_anchors[var - 1]))
                issue(tag + ": does not end at variable x" + std::to_string(var) + "'s anchor");
            for (size_t i = 1; i + 1 < exp->size(); ++i)
                if (anchor_set.count({(*exp)[i].x, (*exp)[i].y})) {
                    issue(tag + ": passes through an anchor");
                    break;
                }
        } else {
            issue(tag + ": empty route");
        }
        expanded.push_back(std::move(*exp));
        kept.push_back(&r);
    }

    for (size_t i = 0; i < f.clauses.size(); ++i)
        for (int slot = 1; slot <= 3; ++slot)
            if (!routed.count({static_cast<int>(i), slot}))
                issue("unrouted literal: clause " + std::to_string(i + 1) + " slot " + std::to_string(slot));

    // Pairwise vertex-disjointness away from shared anchors.
    for (size_t i = 0; i < expanded.size(); ++i) {
        std::set<std::pair<int, int>> pts;
        for (Cell p : expanded[i]) pts.insert({p.x, p.y});
        for (size_t j = i + 1; j < expanded.size(); ++j) {
            for (Cell p : expanded[j]) {
                if (!pts.count({p.x, p.y})) continue;
                bool shared_anchor = anchor_set.count({p.x, p.y}) &&
                                     (p == expanded[i].front() || p == expanded[i].back()) &&
                                     (p == expanded[j].front() || p == expanded[j].back());
                if (!shared_anchor) {
                    rep.issues.push_back({"route crossing: clause " + std::to_string(kept[i]->clause + 1) +
                                          " slot " + std::to_string(kept[i]->slot) + " and clause " +
                                          std::to_string(kept[j]->clause + 1) + " slot " +
                                          std::to_string(kept[j]->slot) + " share (" +
                                          std::to_string(p.x) + "," + std::to_string(p.y) + ")"});
                    break;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Tiny-instance layout search.

namespace {

struct RouterGrid {
    int w = 0, h = 0;
    std::vector<char> blocked;

    bool inside(Cell p) const { return p.x >= 0 && p.x < w && p.y >= 0 && p.y < h; }
    char& at(Cell p) { return blocked[p.y * w + p.x]; }
    char at(Cell p) const { return blocked[p.y * w + p.x]; }
};

// Deterministic BFS shortest path; endpoints exempt from blocking.
std::optional<std::vector<Cell>> bfs_route(const RouterGrid& g, Cell from, Cell to) {
    if (!g.inside(from) || !g.inside(to)) return std::nullopt;
    std::vector<int> prev(g.w * g.h, -2);
    std::deque<Cell> q{from};
    prev[from.y * g.w + from.x] = -1;
    const std::array<Cell, 4> dirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    while (!q.empty()) {
        Cell p = q.front();
        q.pop_front();
        if (p == to) break;
        for (const Cell& d : dirs) {
            Cell np{p.x + d.x, p.y + d.y};
            if (!g.inside(np)) continue;
            int ni = np.y * g.w + np.x;
            if (prev[ni] != -2) continue;
            if (g.at(np) && !(np == to)) continue;
            prev[ni] = p.y * g.w + p.x;
            q.push_back(np);
        }
    }
    if (prev[to.y * g.w + to.x] == -2) return std::nullopt;
    std::vector<Cell> path;
    int cur = to.y * g.w + to.x;
    while (cur != -1) {
        path.push_back({cur % g.w, cur / g.w});
        cur = prev[cur];
    }
    std::reverse(path.begin(), path.end());
    return path;
}

// Collapses a unit-step path into polyline corner points.
std::vector<Cell> corners_of(const std::vector<Cell>& path) {
    std::vector<Cell> out;
    for (size_t i = 0; i < path.size(); ++i) {
        if (i == 0 || i + 1 == path.size()) {
            out.push_back(path[i]);
            continue;
        }
        Cell a = path[i - 1], b = path[i], c = path[i + 1];
        if ((b.x - a.x != c.x - b.x) || (b.y - a.y != c.y - b.y)) out.push_back(b);
    }
    return out;
}

}  // namespace

Layout auto_layout(const Formula& f) {
    const int n = f.num_vars, k = static_cast<int>(f.clauses.size());
    if (n + k > 10) throw std::invalid_argument("auto_layout: num_vars + num_clauses > 10");

    Layout layout;
    if (n == 0 && k == 0) return layout;

    const int side = 4 * (n + k);
    layout.grid_w = side;
    layout.grid_h = side;
    const int mid_y = side / 2;

    layout.var_anchors.clear();
    for (int i = 0; i < n; ++i) layout.var_anchors.push_back({2 + 4 * i, mid_y});

    // Clause anchors live above or below the variable row; the search walks
    // deterministic combinations of (side, column) per clause and keeps the
    // first configuration whose three routes per clause all embed disjointly.
    const int max_col = std::max(n, k);
    std::vector<int> col_idx(k), side_idx(k);

    auto try_config = [&](const std::vector<int>& cols, const std::vector<int>& sides)
        -> std::optional<Layout> {
        Layout cand = layout;
        cand.clause_anchors.clear();
        std::set<std::pair<int, int>> used_anchor;
        for (auto& va : cand.var_anchors) used_anchor.insert({va.x, va.y});
        for (int j = 0; j < k; ++j) {
            Cell a{2 + 4 * cols[j], sides[j] ? mid_y + 4 : mid_y - 4};
            if (!used_anchor.insert({a.x, a.y}).second) return std::nullopt;
            cand.clause_anchors.push_back(a);
        }
        RouterGrid grid{side, side, std::vector<char>(side * side, 0)};
        for (auto& p : used_anchor) grid.blocked[p.second * side + p.first] = 1;
        for (int j = 0; j < k; ++j) {
            for (int slot = 1; slot <= 3; ++slot) {
                int var = f.clauses[j][slot - 1].var;
                auto path = bfs_route(grid, cand.clause_anchors[j], cand.var_anchors[var - 1]);
                if (!path) return std::nullopt;
                for (Cell p : *path) grid.at(p) = 1;  // keep later routes off this one
                Route r;
                r.clause = j;
                r.slot = slot;
                r.points = corners_of(*path);
                cand.routes.push_back(std::move(r));
            }
        }
        if (!validate_layout(f, cand).ok()) return std::nullopt;
        return cand;
    };

    // Configuration sweep: column tuples in mixed-radix order, sides in
    // binary order. Bounded by the n + k <= 10 precondition.
    std::vector<int> cols(k, 0);
    for (;;) {
        bool distinct = true;
        std::set<int> seen(cols.begin(), cols.end());
        distinct = seen.size() == cols.size();
        if (distinct) {
            for (int smask = 0; smask < (1 << k); ++smask) {
                std::vector<int> sides(k);
                for (int j = 0; j < k; ++j) sides[j] = (smask >> j) & 1;
                if (auto got = try_config(cols, sides)) return *got;
            }
        }
        int pos = k - 1;
        while (pos >= 0) {
            if (++cols[pos] < max_col) break;
            cols[pos--] = 0;
        }
        if (pos < 0) break;
    }
    throw std::runtime_error("auto_layout: no layout found within the grid bound; provide one explicitly");
}

// ---------------------------------------------------------------------------
// Layout JSON files.

Layout parse_layout(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("layout JSON: ") + e.what(), 1);
    }
    try {
        Layout l;
        l.grid_w = j.at("grid").at(0).get<int>();
        l.grid_h = j.at("grid").at(1).get<int>();
        std::map<int, Cell> vars;
        for (auto& [key, val] : j.at("vars").items()) {
            if (key.size() < 2 || key[0] != 'x') throw ParseError("variable key must look like 'x3'", 1);
            vars[std::stoi(key.substr(1))] = {val.at(0).get<int>(), val.at(1).get<int>()};
        }
        for (auto& [idx, cell] : vars) {
            if (idx != static_cast<int>(l.var_anchors.size()) + 1)
                throw ParseError("variable anchors must cover x1..xn", 1);
            l.var_anchors.push_back(cell);
        }
        for (auto& c : j.at("clauses")) l.clause_anchors.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
        if (j.contains("routes"))
            for (auto& r : j.at("routes")) {
                Route route;
                route.clause = r.at("clause").get<int>() - 1;
                route.slot = r.at("slot").get<int>();
                for (auto& p : r.at("points")) route.points.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
                l.routes.push_back(std::move(route));
            }
        return l;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("layout JSON: ") + e.what(), 1);
    }
}

std::string serialize_layout(const Layout& l) {
    nlohmann::json j;
    j["grid"] = {l.grid_w, l.grid_h};
    j["vars"] = nlohmann::json::object();
    for (size_t i = 0; i < l.var_anchors.size(); ++i)
        j["vars"]["x" + std::to_string(i + 1)] = {l.var_anchors[i].x, l.var_anchors[i].y};
    j["clauses"] = nlohmann::json::array();
    for (const Cell& c : l.clause_anchors) j["clauses"].push_back({c.x, c.y});
    j["routes"] = nlohmann::json::array();
    for (const Route& r : l.routes) {
        nlohmann::json jr;
        jr["clause"] = r.clause + 1;
        jr["slot"] = r.slot;
        jr["points"] = nlohmann::json::array();
        for (const Cell& p : r.points) jr["points"].push_back({p.x, p.y});
        j["routes"].push_back(std::move(jr));
    }
    return j.dump(1) + "\n";
}

}  // namespace galaxies
