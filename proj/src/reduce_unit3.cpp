#include "galaxies/reduce_unit3.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace galaxies {

Board disks_to_board(const DiskLayout& d, int width, int height) {
    Board board;
    board.width = width;
    board.height = height;

    std::set<std::pair<int, int>> disks;
    for (const Cell& c : d.disks) {
        if (c.x < 1 || c.x >= width - 1 || c.y < 1 || c.y >= height - 1)
            throw std::invalid_argument("disk (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                                        ") violates the 1-cell margin");
        if (!disks.insert({c.x, c.y}).second)
            throw std::invalid_argument("duplicate disk");
    }

    // Midpoints of potential edges (disk pairs at cell distance 2).
    std::set<std::pair<int, int>> midpoints;
    for (const auto& [x, y] : disks) {
        if (disks.count({x + 2, y})) midpoints.insert({x + 1, y});
        if (disks.count({x, y + 2})) midpoints.insert({x, y + 1});
    }
    for (const auto& m : midpoints)
        if (disks.count(m))
            throw std::invalid_argument("potential edge midpoint (" + std::to_string(m.first) + "," +
                                        std::to_string(m.second) +
                                        ") coincides with a disk: overlapping edges are ambiguous");

    // Centers: derived midpoints plus fillers on every other non-disk cell.
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            if (disks.count({x, y})) continue;
            board.centers.push_back({2 * x + 1, 2 * y + 1, false});
        }
    board.check_invariants();
    return board;
}

// ---------------------------------------------------------------------------
// Gadget patterns.

namespace {

constexpr int kScale = 32;  // cells per coarse layout unit

struct PortSpec {
    Cell approach{};          // unit vector pointing away from the clause
    std::vector<Cell> path;   // theta path interior, s-side first
    std::vector<Cell> mate[2];  // loop mating disks per variant, traversal order
    bool flippable = false;     // variant B present
};

struct ClauseSpec {
    Cell hub_s{}, hub_t{};
    PortSpec ports[3];
};

Cell parse_dir(const std::string& tok) {
    if (tok == "N") return {0, 1};
    if (tok == "S") return {0, -1};
    if (tok == "E") return {1, 0};
    if (tok == "W") return {-1, 0};
    throw std::runtime_error("clause fixture: bad approach direction " + tok);
}

std::vector<Cell> parse_cells(const std::vector<std::string>& toks, size_t from) {
    std::vector<Cell> out;
    for (size_t i = from; i + 1 < toks.size(); i += 2)
        out.push_back({std::stoi(toks[i]), std::stoi(toks[i + 1])});
    return out;
}

ClauseSpec load_clause_spec() {
    GadgetPattern p = load_gadget("unit3/clause.txt");
    ClauseSpec spec;
    auto hubs = p.meta_cells("hub");
    if (hubs.size() != 2) throw std::runtime_error("clause fixture: expected 2 hubs");
    spec.hub_s = hubs[0];
    spec.hub_t = hubs[1];
    auto range = p.meta.equal_range("port");
    for (auto it = range.first; it != range.second; ++it) {
        const auto& v = it->second;
        int idx = std::stoi(v[0]) - 1;
        if (idx < 0 || idx > 2) throw std::runtime_error("clause fixture: bad port index");
        const std::string& what = v[1];
        if (what == "approach") spec.ports[idx].approach = parse_dir(v[2]);
        else if (what == "path") spec.ports[idx].path = parse_cells(v, 2);
        else if (what == "mateA") spec.ports[idx].mate[0] = parse_cells(v, 2);
        else if (what == "mateB") { spec.ports[idx].mate[1] = parse_cells(v, 2); spec.ports[idx].flippable = true; }
        else throw std::runtime_error("clause fixture: unknown port field " + what);
    }
    for (PortSpec& p : spec.ports)
        if (!p.flippable) p.mate[1] = p.mate[0];
    return spec;
}

// Disk-space pose transform. Rotation values 4..7 mirror in x first, then
// rotate by rot-4 quarter turns; dx/dy translate in cell units.
Cell xform(const Pose& pose, Cell c) {
    int x = c.x, y = c.y;
    if (pose.rot >= 4) x = -x;
    switch (((pose.rot % 4) + 4) % 4) {
        case 0: break;
        case 1: { int t = x; x = -y; y = t; } break;
        case 2: x = -x; y = -y; break;
        case 3: { int t = x; x = y; y = -t; } break;
    }
    return {x + pose.dx, y + pose.dy};
}

Cell xform_dir(const Pose& pose, Cell d) {
    Cell o = xform(pose, {0, 0});
    Cell p = xform(pose, d);
    return {p.x - o.x, p.y - o.y};
}

}  // namespace

std::vector<Cell> emit_gadget_unit3(const Unit3Gadget& g) {
    std::vector<Cell> out;
    switch (g.kind) {
        case Unit3GadgetKind::VariableLoop: {
            if (g.extent < 0) throw std::invalid_argument("variable loop extent must be >= 0");
            GadgetPattern p = load_gadget("unit3/variable_loop.txt");
            auto base = p.cells_with('*');
            int stretch_col = 4;
            auto it = p.meta.find("stretch_column");
            if (it != p.meta.end()) stretch_col = std::stoi(it->second[0]);
            for (Cell c : base) {
                Cell d = c;
                if (d.x >= stretch_col) d.x += 4 * g.extent;  // move the closing column out
                out.push_back(d);
            }
            // Each extent step lengthens both strands by two disks.
            for (int e = 0; e < g.extent; ++e) {
                out.push_back({stretch_col + 4 * e, 0});
                out.push_back({stretch_col + 2 + 4 * e, 0});
                out.push_back({stretch_col + 4 * e, 4});
                out.push_back({stretch_col + 2 + 4 * e, 4});
            }
            break;
        }
        case Unit3GadgetKind::Negation: {
            GadgetPattern p = load_gadget("unit3/negation.txt");
            out = p.cells_with('*');
            break;
        }
        case Unit3GadgetKind::Clause: {
            ClauseSpec spec = load_clause_spec();
            out.push_back(spec.hub_s);
            out.push_back(spec.hub_t);
            for (const PortSpec& port : spec.ports)
                for (Cell c : port.path) out.push_back(c);
            break;
        }
    }
    for (Cell& c : out) c = xform(g.pose, c);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Compilation.

namespace {

struct DirInfo {
    static int index(Cell d) {
        if (d == Cell{0, 1}) return 0;   // N
        if (d == Cell{1, 0}) return 1;   // E
        if (d == Cell{0, -1}) return 2;  // S
        if (d == Cell{-1, 0}) return 3;  // W
        throw std::runtime_error("not a unit direction");
    }
};

Cell perp_left(Cell d) { return {-d.y, d.x}; }

// Appends the lattice points every 2 cells along an axis-aligned polyline,
// including the first point, excluding repeats at corners.
void emit_along(std::vector<Cell>& out, const std::vector<Cell>& pts) {
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Cell a = pts[i], b = pts[i + 1];
        int dx = (b.x > a.x) - (b.x < a.x), dy = (b.y > a.y) - (b.y < a.y);
        if ((a.x != b.x && a.y != b.y) || (std::abs(b.x - a.x) + std::abs(b.y - a.y)) % 2 != 0)
            throw std::runtime_error("tour: bad polyline segment");
        Cell cur = a;
        while (!(cur == b)) {
            if (out.empty() || !(out.back() == cur)) out.push_back(cur);
            cur = {cur.x + 2 * dx, cur.y + 2 * dy};
        }
    }
    if (out.empty() || !(out.back() == pts.back())) out.push_back(pts.back());
}

// Laterally offsets an axis-aligned polyline; side +1 is travel-left.
std::vector<Cell> offset_polyline(const std::vector<Cell>& pts, int side, int dist) {
    std::vector<Cell> dirs;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        Cell a = pts[i], b = pts[i + 1];
        dirs.push_back({(b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y)});
    }
    std::vector<Cell> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        Cell din = i > 0 ? dirs[i - 1] : dirs[0];
        Cell dout = i + 1 < pts.size() ? dirs[i] : dirs.back();
        Cell nin = perp_left(din), nout = perp_left(dout);
        if (din == dout) {
            out.push_back({pts[i].x + side * dist * nin.x, pts[i].y + side * dist * nin.y});
        } else {
            // Rectilinear corner: combine the two offset lines.
            Cell p = pts[i];
            Cell q{p.x + side * dist * (nin.x + nout.x), p.y + side * dist * (nin.y + nout.y)};
            out.push_back(q);
        }
    }
    return out;
}

struct PlacedPort {
    int clause = 0;
    int slot = 0;                 // 1..3
    int port = 0;                 // 0..2 pattern port index
    bool negated = false;
    bool flippable = false;
    Cell away{};                  // board-space stub direction away from the clause
    std::vector<Cell> mate[2];    // posed mating disks per variant
    std::vector<Cell> path;       // posed theta path
    std::vector<Cell> entry_pts[2], exit_pts[2];  // socket polylines
    int variant = 0;
};

struct PlacedClause {
    Pose pose;
    Cell s{}, t{};
    PlacedPort* port_for_slot[3] = {nullptr, nullptr, nullptr};
};

// Socket polylines per port in pattern-local coordinates (variant A and B).
// Entry runs outer -> disk adjacent to mate[0]; exit runs from the disk
// after mate.back() -> outer. Derived from the transcription geometry.
struct SocketLocal {
    std::vector<Cell> entry[2], exit[2];
};

SocketLocal socket_local(int port) {
    SocketLocal s;
    switch (port) {
        case 0:  // approach S
            s.entry[0] = {{-3, -13}, {-3, -1}};
            s.exit[0] = {{1, -5}, {1, -13}};
            s.entry[1] = {{3, -13}, {3, -5}};
            s.exit[1] = {{7, -1}, {7, -13}};
            break;
        case 1:  // approach W (no variant B)
            s.entry[0] = {{-13, 3}, {-3, 3}};
            s.exit[0] = {{1, 7}, {-13, 7}};
            s.entry[1] = s.entry[0];
            s.exit[1] = s.exit[0];
            break;
        case 2:  // approach N
            s.entry[0] = {{9, 15}, {9, 11}};
            s.exit[0] = {{13, 7}, {13, 15}};
            s.entry[1] = {{11, 15}, {11, 3}};
            s.exit[1] = {{9, -3}, {15, -3}, {15, 15}};
            break;
    }
    return s;
}

long long longitudinal(Cell p, Cell dir) { return static_cast<long long>(p.x) * dir.x + static_cast<long long>(p.y) * dir.y; }
long long lateral(Cell p, Cell dir) { Cell n = perp_left(dir); return static_cast<long long>(p.x) * n.x + static_cast<long long>(p.y) * n.y; }

}  // namespace

Unit3Compilation compile_unit3(const Formula& f, const Layout& l) {
    auto report = validate_layout(f, l);
    if (!report.ok())
        throw std::invalid_argument("compile_unit3: invalid layout: " + report.issues[0].message);

    ClauseSpec spec = load_clause_spec();

    auto scaled = [&](Cell coarse) {
        return Cell{coarse.x * kScale + kScale / 2, coarse.y * kScale + kScale / 2};
    };

    // Routes sorted per clause slot and per variable.
    std::map<std::pair<int, int>, const Route*> route_of;
    for (const Route& r : l.routes) route_of[{r.clause, r.slot}] = &r;

    // --- Clause placement: match route departure directions to port
    // approach directions over rotations and mirroring.
    std::vector<PlacedClause> clauses(f.clauses.size());
    std::vector<std::vector<PlacedPort>> clause_ports(f.clauses.size());
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        Cell anchor = scaled(l.clause_anchors[c]);
        Cell depart[3];
        for (int slot = 1; slot <= 3; ++slot) {
            const Route* r = route_of[{static_cast<int>(c), slot}];
            Cell a = r->points[0], b = r->points[1];
            depart[slot - 1] = {(b.x > a.x) - (b.x < a.x), (b.y > a.y) - (b.y < a.y)};
        }
        bool placed = false;
        for (int rot = 0; rot < 8 && !placed; ++rot) {
            Pose pose{anchor.x, anchor.y, rot};
            Cell pdir[3];
            for (int p = 0; p < 3; ++p) pdir[p] = xform_dir(pose, spec.ports[p].approach);
            // Find a slot->port bijection matching directions.
            int assign[3] = {-1, -1, -1};
            bool ok = true;
            for (int slot = 0; slot < 3 && ok; ++slot) {
                assign[slot] = -1;
                for (int p = 0; p < 3; ++p) {
                    bool used = false;
                    for (int s2 = 0; s2 < slot; ++s2) used |= assign[s2] == p;
                    if (!used && pdir[p] == depart[slot]) { assign[slot] = p; break; }
                }
                ok = assign[slot] >= 0;
            }
            if (!ok) continue;
            placed = true;
            clauses[c].pose = pose;
            clauses[c].s = xform(pose, spec.hub_s);
            clauses[c].t = xform(pose, spec.hub_t);
            clause_ports[c].resize(3);
            for (int slot = 0; slot < 3; ++slot) {
                PlacedPort& pp = clause_ports[c][slot];
                pp.clause = static_cast<int>(c);
                pp.slot = slot + 1;
                pp.port = assign[slot];
                pp.negated = f.clauses[c][slot].negated;
                pp.flippable = spec.ports[assign[slot]].flippable;
                pp.away = depart[slot];
                SocketLocal sock = socket_local(assign[slot]);
                for (Cell m : spec.ports[assign[slot]].path) pp.path.push_back(xform(pose, m));
                for (int v = 0; v < 2; ++v) {
                    for (Cell m : spec.ports[assign[slot]].mate[v]) pp.mate[v].push_back(xform(pose, m));
                    for (Cell m : sock.entry[v]) pp.entry_pts[v].push_back(xform(pose, m));
                    for (Cell m : sock.exit[v]) pp.exit_pts[v].push_back(xform(pose, m));
                }
            }
        }
        if (!placed)
            throw std::runtime_error("compile_unit3: routing congestion: clause " + std::to_string(c + 1) +
                                     " route directions admit no clause orientation");
    }

    // --- Per-variable tours.
    struct Leg {
        PlacedPort* port;
        std::vector<Cell> center;  // scaled centerline, anchor -> clause
    };
    std::vector<std::vector<Leg>> var_legs(f.num_vars + 1);
    for (size_t c = 0; c < f.clauses.size(); ++c)
        for (int slot = 0; slot < 3; ++slot) {
            const Route* r = route_of[{static_cast<int>(c), slot + 1}];
            Leg leg;
            leg.port = &clause_ports[c][slot];
            for (auto it = r->points.rbegin(); it != r->points.rend(); ++it)
                leg.center.push_back(scaled(*it));
            var_legs[f.clauses[c][slot].var].push_back(std::move(leg));
        }

    // Builds one variable's tour as an ordered disk cycle for the current
    // port variants. Also reports the probe pair (first two disks).
    auto build_tour = [&](int var) -> std::vector<Cell> {
        auto& legs = var_legs[var];
        if (legs.empty()) {
            // Variable unused by any clause: a standalone loop still encodes
            // two states so counts track the oracle.
            Cell a = scaled(l.var_anchors[var - 1]);
            std::vector<Cell> loop;
            for (Cell c : std::vector<Cell>{{-3, -3}, {-1, -3}, {1, -3}, {3, -3}, {3, -1}, {3, 1},
                                            {3, 3}, {1, 3}, {-1, 3}, {-3, 3}, {-3, 1}, {-3, -1}})
                loop.push_back({a.x + c.x, a.y + c.y});
            return loop;
        }
        // Sort legs by departure direction (N,E,S,W order) for determinism.
        std::sort(legs.begin(), legs.end(), [&](const Leg& a, const Leg& b) {
            Cell da{(a.center[1].x > a.center[0].x) - (a.center[1].x < a.center[0].x),
                    (a.center[1].y > a.center[0].y) - (a.center[1].y < a.center[0].y)};
            Cell db{(b.center[1].x > b.center[0].x) - (b.center[1].x < b.center[0].x),
                    (b.center[1].y > b.center[0].y) - (b.center[1].y < b.center[0].y)};
            return DirInfo::index(da) < DirInfo::index(db);
        });

        Cell anchor = scaled(l.var_anchors[var - 1]);
        std::vector<Cell> tour;

        // Square ring of radius 5 around the anchor, clockwise from NE; legs
        // start their rails on this ring so arcs can stitch them.
        const std::vector<Cell> ring{
            {1, 5},   {3, 5},   {5, 5},   {5, 3},   {5, 1},   {5, -1},  {5, -3},
            {5, -5},  {3, -5},  {1, -5},  {-1, -5}, {-3, -5}, {-5, -5}, {-5, -3},
            {-5, -1}, {-5, 1},  {-5, 3},  {-5, 5},  {-3, 5},  {-1, 5}};
        auto ring_index = [&](Cell p) {
            for (size_t i = 0; i < ring.size(); ++i)
                if (Cell{anchor.x + ring[i].x, anchor.y + ring[i].y} == p) return static_cast<int>(i);
            return -1;
        };

        struct BuiltLeg {
            std::vector<Cell> out_disks;   // ring start .. mate/socket end
            std::vector<Cell> back_disks;  // socket .. ring end
            Cell ring_start{}, ring_end{};
        };
        std::vector<BuiltLeg> built;
        for (Leg& leg : legs) {
            PlacedPort& pp = *leg.port;
            int v = pp.variant;
            // Cut the centerline 25 cells before the clause anchor so rail
            // ends land on the disk lattice.
            std::vector<Cell> center = leg.center;
            Cell cend = center.back();
            Cell prev = center[center.size() - 2];
            Cell din{(cend.x > prev.x) - (cend.x < prev.x), (cend.y > prev.y) - (cend.y < prev.y)};
            center.back() = {cend.x - 25 * din.x, cend.y - 25 * din.y};
            // Rails: left (+) and right (-) of travel, starting on the ring.
            Cell d0{(center[1].x > center[0].x) - (center[1].x < center[0].x),
                    (center[1].y > center[0].y) - (center[1].y < center[0].y)};
            auto railL = offset_polyline(center, +1, 3);
            auto railR = offset_polyline(center, -1, 3);
            railL[0] = {railL[0].x + 5 * d0.x, railL[0].y + 5 * d0.y};
            railR[0] = {railR[0].x + 5 * d0.x, railR[0].y + 5 * d0.y};

            // Arrival direction at the clause must match the stub direction.
            Cell away = pp.away;  // path cut end heading toward the clause is -away
            // Connect rails to sockets: order by lateral coordinate against
            // the travel direction (-away is the travel direction here).
            Cell travel{-away.x, -away.y};
            const std::vector<Cell>& entry_pts = pp.entry_pts[v];
            const std::vector<Cell>& exit_pts = pp.exit_pts[v];
            Cell entry_outer = entry_pts.front();
            Cell exit_outer = exit_pts.back();

            long long latL = lateral(railL.back(), travel), latR = lateral(railR.back(), travel);
            long long latE = lateral(entry_outer, travel), latX = lateral(exit_outer, travel);
            bool left_is_entry = (latL <= latR) == (latE <= latX);
            const std::vector<Cell>& out_rail = left_is_entry ? railL : railR;
            const std::vector<Cell>& back_rail = left_is_entry ? railR : railL;

            // Connector from a rail end to a socket outer point: run along
            // travel to the socket outer's longitudinal line, then lateral.
            auto connector = [&](Cell rail_end, Cell outer, int stagger) {
                long long lon_o = longitudinal(outer, travel);
                Cell mid1{rail_end.x + travel.x * static_cast<int>(lon_o - longitudinal(rail_end, travel) - stagger),
                          rail_end.y + travel.y * static_cast<int>(lon_o - longitudinal(rail_end, travel) - stagger)};
                Cell mid2{mid1.x + (outer.x - mid1.x) * std::abs(perp_left(travel).x),
                          mid1.y + (outer.y - mid1.y) * std::abs(perp_left(travel).y)};
                // mid2 shares the lateral line of outer; then advance to outer.
                return std::vector<Cell>{rail_end, mid1, mid2, outer};
            };

            BuiltLeg bl;
            // Outbound: ring -> rail -> connector -> entry socket -> mate.
            std::vector<Cell> outbound_pts = out_rail;
            auto conn_in = connector(out_rail.back(), entry_outer, 2);
            outbound_pts.insert(outbound_pts.end(), conn_in.begin() + 1, conn_in.end());
            outbound_pts.insert(outbound_pts.end(), entry_pts.begin() + 1, entry_pts.end());
            emit_along(bl.out_disks, outbound_pts);
            for (Cell m : pp.mate[v]) bl.out_disks.push_back(m);

            // Return: exit socket -> connector -> rail (reversed to anchor).
            std::vector<Cell> ret_pts = exit_pts;
            auto conn_out = connector(back_rail.back(), exit_outer, 8);
            ret_pts.insert(ret_pts.end(), {conn_out[2], conn_out[1], conn_out[0]});
            std::vector<Cell> back_rail_rev(back_rail.rbegin(), back_rail.rend());
            ret_pts.insert(ret_pts.end(), back_rail_rev.begin() + 1, back_rail_rev.end());
            emit_along(bl.back_disks, ret_pts);

            bl.ring_start = bl.out_disks.front();
            bl.ring_end = bl.back_disks.back();
            if (ring_index(bl.ring_start) < 0 || ring_index(bl.ring_end) < 0)
                throw std::runtime_error("compile_unit3: routing congestion: leg does not start on the anchor ring");
            built.push_back(std::move(bl));
        }

        // Stitch legs with clockwise ring arcs.
        std::vector<Cell> cycle;
        for (size_t i = 0; i < built.size(); ++i) {
            cycle.insert(cycle.end(), built[i].out_disks.begin(), built[i].out_disks.end());
            cycle.insert(cycle.end(), built[i].back_disks.begin(), built[i].back_disks.end());
            const BuiltLeg& next = built[(i + 1) % built.size()];
            int from = ring_index(built[i].ring_end);
            int to = ring_index(next.ring_start);
            for (int k = (from + 1) % 20; k != to; k = (k + 1) % 20)
                cycle.push_back({anchor.x + ring[k].x, anchor.y + ring[k].y});
        }
        return cycle;
    };

    // Two passes: measure parities with variant A, flip mismatched ports to
    // variant B, rebuild, and verify.
    Unit3Compilation comp;
    std::vector<std::vector<Cell>> tours(f.num_vars + 1);
    for (int pass = 0; pass < 2; ++pass) {
        bool all_ok = true;
        for (int var = 1; var <= f.num_vars; ++var) {
            tours[var] = build_tour(var);
            const auto& cyc = tours[var];
            if (cyc.size() % 2 != 0)
                throw std::runtime_error("compile_unit3: internal: odd tour length");
            auto edge_class = [&](Cell a, Cell b) -> int {
                for (size_t i = 0; i < cyc.size(); ++i) {
                    Cell u = cyc[i], v = cyc[(i + 1) % cyc.size()];
                    if ((u == a && v == b) || (u == b && v == a)) return static_cast<int>(i % 2);
                }
                return -1;
            };
            int probe_class = 0;  // edge (cyc[0], cyc[1]) has class 0 by construction
            for (Leg& leg : var_legs[var]) {
                PlacedPort& pp = *leg.port;
                int v = pp.variant;
                // beta = the mate edge crossed by the path's unshifted edge.
                // Identify it by midpoint against the theta path edges.
                std::vector<Cell> chain;
                chain.push_back(clauses[pp.clause].s);
                for (Cell c : pp.path[v]) chain.push_back(c);
                chain.push_back(clauses[pp.clause].t);
                std::set<std::pair<int, int>> unshifted_mids, shifted_mids;
                for (size_t k = 0; k + 1 < chain.size(); ++k) {
                    auto mid = std::make_pair((chain[k].x + chain[k + 1].x) / 2,
                                              (chain[k].y + chain[k + 1].y) / 2);
                    (k % 2 == 1 ? unshifted_mids : shifted_mids).insert(mid);
                }
                int beta_class = -1;
                bool found = false;
                for (size_t m = 0; m + 1 < pp.mate[v].size(); ++m) {
                    Cell a = pp.mate[v][m], b = pp.mate[v][m + 1];
                    auto mid = std::make_pair((a.x + b.x) / 2, (a.y + b.y) / 2);
                    if (unshifted_mids.count(mid)) {
                        beta_class = edge_class(a, b);
                        found = true;
                    }
                }
                if (!found || beta_class < 0)
                    throw std::runtime_error("compile_unit3: internal: port beta edge not located");
                bool want_equal = !pp.negated;  // positive literal: beta class == probe class
                bool is_equal = beta_class == probe_class;
                if (is_equal != want_equal) {
                    if (pass == 1)
                        throw std::runtime_error("compile_unit3: routing congestion: port parity unsatisfiable");
                    pp.variant = 1 - pp.variant;
                    all_ok = false;
                }
            }
        }
        if (all_ok) break;
    }

    // --- Assemble the board.
    std::vector<Cell> disks;
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        disks.push_back(clauses[c].s);
        disks.push_back(clauses[c].t);
        for (int slot = 0; slot < 3; ++slot) {
            PlacedPort& pp = clause_ports[c][slot];
            for (Cell p : pp.path[pp.variant]) disks.push_back(p);
        }
    }
    for (int var = 1; var <= f.num_vars; ++var)
        disks.insert(disks.end(), tours[var].begin(), tours[var].end());

    // Audit: the only distance-2 pairs must be intended edges, and shared
    // midpoints must be the designed crossings.
    {
        std::set<std::pair<int, int>> dset;
        for (Cell d : disks)
            if (!dset.insert({d.x, d.y}).second)
                throw std::runtime_error("compile_unit3: routing congestion: disk collision at (" +
                                         std::to_string(d.x) + "," + std::to_string(d.y) + ")");
        std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> intended;
        auto add_edge = [&](Cell a, Cell b) {
            auto pa = std::make_pair(a.x, a.y), pb = std::make_pair(b.x, b.y);
            intended.insert(pa < pb ? std::make_pair(pa, pb) : std::make_pair(pb, pa));
        };
        std::set<std::pair<int, int>> cross_mids;
        for (size_t c = 0; c < f.clauses.size(); ++c) {
            for (int slot = 0; slot < 3; ++slot) {
                PlacedPort& pp = clause_ports[c][slot];
                std::vector<Cell> chain;
                chain.push_back(clauses[c].s);
                for (Cell p : pp.path[pp.variant]) chain.push_back(p);
                chain.push_back(clauses[c].t);
                for (size_t k = 0; k + 1 < chain.size(); ++k) add_edge(chain[k], chain[k + 1]);
                for (size_t m = 0; m + 1 < pp.mate[pp.variant].size(); ++m) {
                    Cell a = pp.mate[pp.variant][m], b = pp.mate[pp.variant][m + 1];
                    cross_mids.insert({(a.x + b.x) / 2, (a.y + b.y) / 2});
                }
            }
        }
        for (int var = 1; var <= f.num_vars; ++var) {
            const auto& cyc = tours[var];
            for (size_t i = 0; i < cyc.size(); ++i) add_edge(cyc[i], cyc[(i + 1) % cyc.size()]);
        }
        std::map<std::pair<int, int>, int> mid_use;
        for (Cell d : disks) {
            for (Cell n : {Cell{d.x + 2, d.y}, Cell{d.x, d.y + 2}}) {
                if (!dset.count({n.x, n.y})) continue;
                auto pa = std::make_pair(d.x, d.y), pb = std::make_pair(n.x, n.y);
                auto key = pa < pb ? std::make_pair(pa, pb) : std::make_pair(pb, pa);
                if (!intended.count(key))
                    throw std::runtime_error("compile_unit3: routing congestion: unintended adjacency near (" +
                                             std::to_string(d.x) + "," + std::to_string(d.y) + ")");
                mid_use[{(d.x + n.x) / 2, (d.y + n.y) / 2}]++;
            }
        }
        for (auto& [mid, uses] : mid_use)
            if (uses > 1 && (uses != 2 || !cross_mids.count(mid)))
                throw std::runtime_error("compile_unit3: routing congestion: unintended crossing at (" +
                                         std::to_string(mid.first) + "," + std::to_string(mid.second) + ")");
    }

    // Translate to a 1-cell margin.
    int minx = disks[0].x, miny = disks[0].y, maxx = minx, maxy = miny;
    for (Cell d : disks) {
        minx = std::min(minx, d.x);
        miny = std::min(miny, d.y);
        maxx = std::max(maxx, d.x);
        maxy = std::max(maxy, d.y);
    }
    const int ox = minx - 2, oy = miny - 2;
    DiskLayout dl;
    for (Cell d : disks) dl.disks.push_back({d.x - ox, d.y - oy});
    comp.board = disks_to_board(dl, maxx - ox + 3, maxy - oy + 3);

    for (int var = 1; var <= f.num_vars; ++var) {
        Unit3Probe probe;
        probe.var = var;
        probe.disk_a = {tours[var][0].x - ox, tours[var][0].y - oy};
        probe.disk_b = {tours[var][1].x - ox, tours[var][1].y - oy};
        probe.joined_means_true = true;
        comp.probes.push_back(probe);

        Unit3PlacedGadget pg;
        pg.kind = Unit3GadgetKind::VariableLoop;
        pg.index = var;
        for (Cell d : tours[var]) pg.disks.push_back({d.x - ox, d.y - oy});
        comp.manifest.push_back(std::move(pg));
    }
    for (size_t c = 0; c < f.clauses.size(); ++c) {
        Unit3PlacedGadget pg;
        pg.kind = Unit3GadgetKind::Clause;
        pg.index = static_cast<int>(c);
        pg.disks.push_back({clauses[c].s.x - ox, clauses[c].s.y - oy});
        pg.disks.push_back({clauses[c].t.x - ox, clauses[c].t.y - oy});
        for (int slot = 0; slot < 3; ++slot)
            for (Cell p : clause_ports[c][slot].path[clause_ports[c][slot].variant])
                pg.disks.push_back({p.x - ox, p.y - oy});
        comp.manifest.push_back(std::move(pg));
    }
    return comp;
}

Assignment decode_unit3(const Unit3Compilation& c, const Solution& s) {
    Verdict v = verify(c.board, s, ShapeClass::Unit3);
    if (!v.valid) throw std::invalid_argument("decode_unit3: solution is not Unit3-valid");
    Assignment a;
    int max_var = 0;
    for (const Unit3Probe& p : c.probes) max_var = std::max(max_var, p.var);
    a.values.assign(max_var, 0);
    for (const Unit3Probe& p : c.probes) {
        if (!c.board.in_bounds(p.disk_a) || !c.board.in_bounds(p.disk_b))
            throw std::runtime_error("decode_unit3: probe outside board (compiler bug)");
        bool joined = s.owner[c.board.cell_index(p.disk_a)] == s.owner[c.board.cell_index(p.disk_b)];
        a.values[p.var - 1] = (joined == p.joined_means_true) ? 1 : 0;
    }
    return a;
}

}  // namespace galaxies
