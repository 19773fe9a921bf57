#include "galaxies/gadget_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace galaxies {

std::vector<Cell> GadgetPattern::cells_with(char ch) const {
    std::vector<Cell> out;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (rows[y][x] == ch) out.push_back({x, y});
    return out;
}

std::vector<Center> GadgetPattern::listed_centers() const {
    std::vector<Center> out;
    auto range = meta.equal_range("center");
    for (auto it = range.first; it != range.second; ++it) {
        const auto& v = it->second;
        if (v.size() < 2) throw ParseError("meta center needs 'a b'", 1);
        Center c{std::stoi(v[0]), std::stoi(v[1]), v.size() > 2 && v[2] == "black"};
        out.push_back(c);
    }
    return out;
}

std::vector<Cell> GadgetPattern::meta_cells(const std::string& key) const {
    std::vector<Cell> out;
    auto range = meta.equal_range(key);
    for (auto it = range.first; it != range.second; ++it) {
        const auto& v = it->second;
        if (v.size() < 2) throw ParseError("meta " + key + " needs 'x y'", 1);
        out.push_back({std::stoi(v[0]), std::stoi(v[1])});
    }
    return out;
}

GadgetPattern parse_gadget(const std::string& text) {
    GadgetPattern p;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    int rows_left = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (rows_left > 0) {
            if (static_cast<int>(line.size()) != p.width)
                throw ParseError("grid row has wrong width", line_no);
            p.rows.push_back(line);
            --rows_left;
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "c") continue;
        if (key == "meta") {
            std::string name, tok;
            if (!(ls >> name)) throw ParseError("meta line without key", line_no);
            std::vector<std::string> vals;
            while (ls >> tok) vals.push_back(tok);
            p.meta.insert({name, vals});
            continue;
        }
        if (key == "grid") {
            if (!(ls >> p.width >> p.height) || p.width <= 0 || p.height <= 0)
                throw ParseError("grid line needs positive dimensions", line_no);
            rows_left = p.height;
            continue;
        }
        throw ParseError("unknown directive '" + key + "'", line_no);
    }
    if (rows_left != 0) throw ParseError("missing or truncated grid", line_no);
    return p;
}

std::string serialize_gadget(const GadgetPattern& p) {
    std::ostringstream out;
    for (const auto& [key, vals] : p.meta) {
        out << "meta " << key;
        for (const auto& v : vals) out << ' ' << v;
        out << '\n';
    }
    out << "grid " << p.width << ' ' << p.height << '\n';
    for (const auto& r : p.rows) out << r << '\n';
    return out.str();
}

std::string gadget_dir() {
    if (const char* env = std::getenv("GALAXIES_GADGET_DIR")) return env;
#ifdef GALAXIES_GADGET_DIR
    return GALAXIES_GADGET_DIR;
#else
    return "gadgets";
#endif
}

GadgetPattern load_gadget(const std::string& relative_path) {
    const std::string path = gadget_dir() + "/" + relative_path;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gadget fixture " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_gadget(buf.str());
}

std::pair<int, int> pose_point(const Pose& p, int a, int b) {
    int ra = a, rb = b;
    switch (((p.rot % 4) + 4) % 4) {
        case 0: break;
        case 1: ra = -b; rb = a; break;   // 90 degrees counterclockwise
        case 2: ra = -a; rb = -b; break;
        case 3: ra = b; rb = -a; break;
    }
    return {ra + p.dx, rb + p.dy};
}

Cell pose_cell(const Pose& p, Cell c) {
    // A cell transforms via its doubled middle point.
    auto [a, b] = pose_point(p, 2 * c.x + 1, 2 * c.y + 1);
    return {(a - 1) / 2, (b - 1) / 2};
}

}  // namespace galaxies
