#include "galaxies/board.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace galaxies {

std::vector<Cell> Board::incident_cells(const Center& c) const {
    // In doubled coordinates cell (x,y) occupies the closed square
    // [2x, 2x+2] x [2y, 2y+2]. Interior positions touch 1, 2 or 4 cells.
    std::vector<int> xs, ys;
    if (c.a % 2 != 0) {
        xs.push_back((c.a - 1) / 2);
    } else {
        xs.push_back(c.a / 2 - 1);
        xs.push_back(c.a / 2);
    }
    if (c.b % 2 != 0) {
        ys.push_back((c.b - 1) / 2);
    } else {
        ys.push_back(c.b / 2 - 1);
        ys.push_back(c.b / 2);
    }
    std::vector<Cell> out;
    for (int y : ys)
        for (int x : xs) out.push_back({x, y});
    return out;
}

void Board::check_invariants() const {
    if (width < 0 || height < 0) throw std::invalid_argument("negative board dimensions");
    std::set<std::pair<int, int>> seen;
    for (const Center& c : centers) {
        if (!(c.a > 0 && c.a < 2 * width && c.b > 0 && c.b < 2 * height))
            throw std::invalid_argument("center (" + std::to_string(c.a) + "," +
                                        std::to_string(c.b) + ") outside open doubled rectangle");
        if (!seen.insert({c.a, c.b}).second)
            throw std::invalid_argument("duplicate center at (" + std::to_string(c.a) + "," +
                                        std::to_string(c.b) + ")");
    }
    if (cell_count() > 0 && centers.empty())
        throw std::invalid_argument("nonempty board has no centers");
}

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Symmetry: return "symmetry";
        case Rule::Containment: return "containment";
        case Rule::Uniqueness: return "uniqueness";
        case Rule::Connectivity: return "connectivity";
        case Rule::Shape: return "shape";
    }
    return "?";
}

namespace {

bool is_full_rectangle(const Board& board, const std::vector<Cell>& cells, int& w, int& h) {
    int minx = cells[0].x, maxx = cells[0].x, miny = cells[0].y, maxy = cells[0].y;
    for (const Cell& c : cells) {
        minx = std::min(minx, c.x);
        maxx = std::max(maxx, c.x);
        miny = std::min(miny, c.y);
        maxy = std::max(maxy, c.y);
    }
    w = maxx - minx + 1;
    h = maxy - miny + 1;
    return static_cast<long long>(w) * h == static_cast<long long>(cells.size());
}

}  // namespace

Verdict verify(const Board& board, const Solution& sol, ShapeClass shapes) {
    const int n = board.cell_count();
    if (static_cast<int>(sol.owner.size()) != n)
        throw std::invalid_argument("owner map is not total over the board");
    const int k = static_cast<int>(board.centers.size());
    for (int v : sol.owner)
        if (v < 0 || v >= k) throw std::invalid_argument("owner map references invalid center index");

    Verdict out;
    auto flag = [&](int g, Rule r, Cell w, std::string d) {
        out.valid = false;
        out.violations.push_back({g, r, w, std::move(d)});
    };

    std::vector<std::vector<Cell>> galaxy(k);
    for (int i = 0; i < n; ++i) galaxy[sol.owner[i]].push_back(board.cell_at(i));

    for (int g = 0; g < k; ++g) {
        const Center& c = board.centers[g];

        // Containment: every cell incident to the center belongs to it.
        for (Cell p : board.incident_cells(c)) {
            if (!board.in_bounds(p) || sol.owner[board.cell_index(p)] != g) {
                flag(g, Rule::Containment, p, "cell incident to center not in its galaxy");
            }
        }

        // Symmetry: the galaxy maps to itself under 180-degree rotation.
        for (Cell p : galaxy[g]) {
            Cell q = rotate_cell(p, c);
            if (!board.in_bounds(q) || sol.owner[board.cell_index(q)] != g) {
                flag(g, Rule::Symmetry, p, "rotation image not in the same galaxy");
                break;
            }
        }

        // Uniqueness: no galaxy holds the full incident set of a foreign center.
        for (int other = 0; other < k; ++other) {
            if (other == g) continue;
            auto inc = board.incident_cells(board.centers[other]);
            bool all = !inc.empty();
            for (Cell p : inc)
                if (!board.in_bounds(p) || sol.owner[board.cell_index(p)] != g) { all = false; break; }
            if (all) flag(g, Rule::Uniqueness, inc[0], "galaxy contains another center");
        }

        // Connectivity (4-neighborhood) unless the board allows otherwise.
        if (!board.allow_disconnected && !galaxy[g].empty()) {
            std::vector<int> stack{board.cell_index(galaxy[g][0])};
            std::set<int> seen{stack[0]};
            while (!stack.empty()) {
                Cell p = board.cell_at(stack.back());
                stack.pop_back();
                const std::array<Cell, 4> nb{{{p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}}};
                for (Cell q : nb) {
                    if (!board.in_bounds(q)) continue;
                    int qi = board.cell_index(q);
                    if (sol.owner[qi] == g && seen.insert(qi).second) stack.push_back(qi);
                }
            }
            if (seen.size() != galaxy[g].size())
                flag(g, Rule::Connectivity, galaxy[g][0], "galaxy is not 4-connected");
        }

        // Shape class restrictions.
        if (shapes != ShapeClass::Any && !galaxy[g].empty()) {
            int w = 0, h = 0;
            if (!is_full_rectangle(board, galaxy[g], w, h)) {
                flag(g, Rule::Shape, galaxy[g][0], "galaxy is not a rectangle");
            } else if (shapes == ShapeClass::Unit3) {
                const bool ok = (w == 1 && h == 1) || (w == 1 && h == 3) || (w == 3 && h == 1);
                if (!ok)
                    flag(g, Rule::Shape, galaxy[g][0],
                         std::to_string(w) + "x" + std::to_string(h) + " not in {1x1,1x3,3x1}");
            }
        }
    }
    return out;
}

Picture picture_of(const Board& board, const Solution& sol) {
    Picture pic;
    pic.width = board.width;
    pic.height = board.height;
    pic.black.assign(board.cell_count(), 0);
    for (int i = 0; i < board.cell_count(); ++i)
        pic.black[i] = board.centers[sol.owner[i]].black ? 1 : 0;
    return pic;
}

// ---------------------------------------------------------------------------
// Text formats.

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

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, int line_no) {
    size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(tok, &pos);
    } catch (...) {
        throw ParseError("expected integer, got '" + tok + "'", line_no);
    }
    if (pos != tok.size()) throw ParseError("expected integer, got '" + tok + "'", line_no);
    return v;
}

}  // namespace

Board parse_board(const std::string& text) {
    auto lines = split_lines(text);
    Board board;
    bool header_seen = false;
    for (size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0] == "c" || toks[0][0] == '#') continue;
        if (!header_seen) {
            if (toks[0] != "galaxies" || toks.size() < 3 || toks.size() > 4)
                throw ParseError("expected header 'galaxies <width> <height> [disconnected]'", line_no);
            board.width = parse_int(toks[1], line_no);
            board.height = parse_int(toks[2], line_no);
            if (board.width <= 0 || board.height <= 0)
                throw ParseError("board dimensions must be positive", line_no);
            if (toks.size() == 4) {
                if (toks[3] != "disconnected")
                    throw ParseError("unknown header flag '" + toks[3] + "'", line_no);
                board.allow_disconnected = true;
            }
            header_seen = true;
            continue;
        }
        if (toks.size() < 2 || toks.size() > 3)
            throw ParseError("expected center line '<a> <b> [black]'", line_no);
        Center c;
        c.a = parse_int(toks[0], line_no);
        c.b = parse_int(toks[1], line_no);
        if (toks.size() == 3) {
            if (toks[2] != "black") throw ParseError("unknown center flag '" + toks[2] + "'", line_no);
            c.black = true;
        }
        if (!(c.a > 0 && c.a < 2 * board.width && c.b > 0 && c.b < 2 * board.height))
            throw ParseError("center out of range", line_no);
        board.centers.push_back(c);
    }
    if (!header_seen) throw ParseError("missing 'galaxies' header", 1);
    try {
        board.check_invariants();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }
    return board;
}

std::string serialize_board(const Board& board) {
    std::ostringstream out;
    out << "galaxies " << board.width << ' ' << board.height;
    if (board.allow_disconnected) out << " disconnected";
    out << '\n';
    for (const Center& c : board.centers) {
        out << c.a << ' ' << c.b;
        if (c.black) out << " black";
        out << '\n';
    }
    return out.str();
}

Solution parse_solution(const Board& board, const std::string& text) {
    auto lines = split_lines(text);
    Solution sol;
    sol.owner.reserve(board.cell_count());
    int rows = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        auto toks = tokens_of(lines[i]);
        if (toks.empty() || toks[0] == "c" || toks[0][0] == '#') continue;
        if (rows >= board.height) throw ParseError("too many solution rows", line_no);
        if (static_cast<int>(toks.size()) != board.width)
            throw ParseError("expected " + std::to_string(board.width) + " owners, got " +
                                 std::to_string(toks.size()),
                             line_no);
        for (const auto& t : toks) {
            int v = parse_int(t, line_no);
            if (v < 0 || v >= static_cast<int>(board.centers.size()))
                throw ParseError("owner index " + std::to_string(v) + " out of range", line_no);
            sol.owner.push_back(v);
        }
        ++rows;
    }
    if (rows != board.height) throw ParseError("expected " + std::to_string(board.height) + " rows", 1);
    return sol;
}

std::string serialize_solution(const Board& board, const Solution& sol) {
    std::ostringstream out;
    for (int y = 0; y < board.height; ++y) {
        for (int x = 0; x < board.width; ++x) {
            if (x) out << ' ';
            out << sol.owner[y * board.width + x];
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Rendering.

namespace {

// The ascii canvas has one character slot per doubled coordinate, so a
// center at (a,b) is drawn exactly at canvas position (a,b).
std::string render_ascii(const Board& board, const Solution* sol) {
    const int cw = 2 * board.width + 1, ch = 2 * board.height + 1;
    std::vector<std::string> canvas(ch, std::string(cw, ' '));

    auto owner_at = [&](int x, int y) -> int {
        if (x < 0 || x >= board.width || y < 0 || y >= board.height) return -1;
        return sol ? sol->owner[y * board.width + x] : -2;
    };
    auto border_v = [&](int gx, int y) {  // vertical border at doubled x = 2*gx
        return owner_at(gx - 1, y) != owner_at(gx, y);
    };
    auto border_h = [&](int x, int gy) {
        return owner_at(x, gy - 1) != owner_at(x, gy);
    };

    for (int y = 0; y < board.height; ++y)
        for (int gx = 0; gx <= board.width; ++gx)
            canvas[2 * y + 1][2 * gx] = border_v(gx, y) ? '|' : ' ';
    for (int gy = 0; gy <= board.height; ++gy)
        for (int x = 0; x < board.width; ++x)
            canvas[2 * gy][2 * x + 1] = border_h(x, gy) ? '-' : ' ';
    for (int gy = 0; gy <= board.height; ++gy)
        for (int gx = 0; gx <= board.width; ++gx) {
            bool any = (gx < board.width && border_h(gx, gy)) ||
                       (gx > 0 && border_h(gx - 1, gy)) ||
                       (gy < board.height && border_v(gx, gy)) ||
                       (gy > 0 && border_v(gx, gy - 1));
            canvas[2 * gy][2 * gx] = any ? '+' : ' ';
        }
    for (const Center& c : board.centers) canvas[c.b][c.a] = c.black ? '@' : 'o';

    std::string out;
    for (int y = 0; y < ch; ++y) {
        out += canvas[y];
        out += '\n';
    }
    return out;
}

constexpr int kSvgCell = 32;

std::string render_svg(const Board& board, const Solution* sol) {
    std::ostringstream out;
    const int W = board.width * kSvgCell, H = board.height * kSvgCell;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";

    std::optional<Picture> pic;
    if (sol) pic = picture_of(board, *sol);
    for (int y = 0; y < board.height; ++y)
        for (int x = 0; x < board.width; ++x) {
            const char* fill = (pic && pic->at({x, y})) ? "#444444" : "#ffffff";
            out << "  <rect x=\"" << x * kSvgCell << "\" y=\"" << y * kSvgCell << "\" width=\""
                << kSvgCell << "\" height=\"" << kSvgCell << "\" fill=\"" << fill << "\"/>\n";
        }

    // Thin interior grid.
    for (int gx = 1; gx < board.width; ++gx)
        out << "  <line x1=\"" << gx * kSvgCell << "\" y1=\"0\" x2=\"" << gx * kSvgCell
            << "\" y2=\"" << H << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    for (int gy = 1; gy < board.height; ++gy)
        out << "  <line x1=\"0\" y1=\"" << gy * kSvgCell << "\" x2=\"" << W << "\" y2=\""
            << gy * kSvgCell << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";

    // Galaxy boundaries (and the outer frame) with the thick stroke.
    auto edge = [&](int x1, int y1, int x2, int y2) {
        out << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
            << "\" stroke=\"#000000\" stroke-width=\"3\"/>\n";
    };
    if (sol) {
        for (int y = 0; y < board.height; ++y)
            for (int gx = 1; gx < board.width; ++gx)
                if (sol->owner[y * board.width + gx - 1] != sol->owner[y * board.width + gx])
                    edge(gx * kSvgCell, y * kSvgCell, gx * kSvgCell, (y + 1) * kSvgCell);
        for (int gy = 1; gy < board.height; ++gy)
            for (int x = 0; x < board.width; ++x)
                if (sol->owner[(gy - 1) * board.width + x] != sol->owner[gy * board.width + x])
                    edge(x * kSvgCell, gy * kSvgCell, (x + 1) * kSvgCell, gy * kSvgCell);
    }
    edge(0, 0, W, 0);
    edge(W, 0, W, H);
    edge(W, H, 0, H);
    edge(0, H, 0, 0);

    for (const Center& c : board.centers) {
        const double cx = c.a * (kSvgCell / 2.0), cy = c.b * (kSvgCell / 2.0);
        out << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"6\" fill=\""
            << (c.black ? "#000000" : "#ffffff") << "\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render(const Board& board, const Solution* sol, RenderFormat fmt) {
    if (sol && static_cast<int>(sol->owner.size()) != board.cell_count())
        throw std::invalid_argument("render: solution is not total");
    return fmt == RenderFormat::Ascii ? render_ascii(board, sol) : render_svg(board, sol);
}

}  // namespace galaxies
