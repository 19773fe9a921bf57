#include "galaxies/solver.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace galaxies {

namespace {

// One candidate galaxy: a center index plus its sorted cell-index set.
struct Candidate {
    int center = -1;
    std::vector<int> cells;
};

bool candidate_less(const Candidate& lhs, const Candidate& rhs) {
    if (lhs.cells.size() != rhs.cells.size()) return lhs.cells.size() < rhs.cells.size();
    if (lhs.cells != rhs.cells) return lhs.cells < rhs.cells;
    return lhs.center < rhs.center;
}

class Search {
  public:
    Search(const Board& board, ShapeClass shapes, const SearchBudget& budget)
        : board_(board), shapes_(shapes), budget_(budget), n_(board.cell_count()) {
        owner_.assign(n_, -1);
        incident_owner_.assign(n_, -1);
        placed_.assign(board_.centers.size(), 0);
        root_ok_ = true;
        for (size_t c = 0; c < board_.centers.size(); ++c) {
            auto inc = board_.incident_cells(board_.centers[c]);
            incidents_.push_back({});
            for (Cell p : inc) {
                if (!board_.in_bounds(p)) { root_ok_ = false; continue; }
                int i = board_.cell_index(p);
                incidents_.back().push_back(i);
                if (incident_owner_[i] != -1) root_ok_ = false;  // two centers share a cell
                incident_owner_[i] = static_cast<int>(c);
            }
        }
        build_reach_index();
    }

    // Runs the search, invoking sink for each solution found; sink returns
    // false to stop early. Returns false when the node budget was exhausted.
    template <class Sink>
    bool run(Sink&& sink) {
        if (!root_ok_) return true;
        if (n_ == 0) {
            Solution s;
            sink(s);
            return true;
        }
        return dfs(0, sink) && !budget_hit_;
    }

    long long nodes() const { return nodes_; }
    bool budget_hit() const { return budget_hit_; }

  private:
    // Candidate galaxies may never include a cell incident to a foreign
    // center: that center's own galaxy must contain it.
    bool blocked_for(int cell, int center) const {
        return owner_[cell] != -1 ||
               (incident_owner_[cell] != -1 && incident_owner_[cell] != center);
    }

    void build_reach_index() {
        reach_.assign(n_, {});
        for (size_t c = 0; c < board_.centers.size(); ++c) {
            const Center& ctr = board_.centers[c];
            // Any symmetric galaxy lies inside the maximal board-clipped
            // rectangle symmetric about its center.
            int wmax = std::min(ctr.a, 2 * board_.width - ctr.a);
            int hmax = std::min(ctr.b, 2 * board_.height - ctr.b);
            if (shapes_ == ShapeClass::Unit3) {
                wmax = std::min(wmax, 3);
                hmax = std::min(hmax, 3);
            }
            int x0 = (ctr.a - wmax) / 2, x1 = (ctr.a + wmax) / 2;  // [x0, x1)
            int y0 = (ctr.b - hmax) / 2, y1 = (ctr.b + hmax) / 2;
            for (int y = y0; y < y1; ++y)
                for (int x = x0; x < x1; ++x)
                    reach_[y * board_.width + x].push_back(static_cast<int>(c));
        }
    }

    void gen_unit3(int cell, int center, std::vector<Candidate>& out) const {
        const Center& ctr = board_.centers[center];
        if (ctr.kind() != CenterKind::CellCenter) return;  // 1x1/1x3/3x1 need a cell center
        const int cx = (ctr.a - 1) / 2, cy = (ctr.b - 1) / 2;
        const std::array<std::array<Cell, 3>, 3> shapes{{
            {{{cx, cy}, {cx, cy}, {cx, cy}}},
            {{{cx - 1, cy}, {cx, cy}, {cx + 1, cy}}},
            {{{cx, cy - 1}, {cx, cy}, {cx, cy + 1}}},
        }};
        const std::array<int, 3> sizes{1, 3, 3};
        for (int s = 0; s < 3; ++s) {
            Candidate cand;
            cand.center = center;
            bool ok = true, has = false;
            for (int i = 0; i < sizes[s]; ++i) {
                Cell p = shapes[s][i];
                if (!board_.in_bounds(p)) { ok = false; break; }
                int idx = board_.cell_index(p);
                if (blocked_for(idx, center)) { ok = false; break; }
                if (idx == cell) has = true;
                cand.cells.push_back(idx);
            }
            if (ok && has) {
                std::sort(cand.cells.begin(), cand.cells.end());
                out.push_back(std::move(cand));
            }
        }
    }

    void gen_rect(int cell, int center, std::vector<Candidate>& out) const {
        const Center& ctr = board_.centers[center];
        const Cell p = board_.cell_at(cell);
        const int dx = std::abs(2 * p.x + 1 - ctr.a), dy = std::abs(2 * p.y + 1 - ctr.b);
        const int wmax = std::min(ctr.a, 2 * board_.width - ctr.a);
        const int hmax = std::min(ctr.b, 2 * board_.height - ctr.b);
        for (int w = dx + 1; w <= wmax; w += 2) {
            const int x0 = (ctr.a - w) / 2, x1 = (ctr.a + w) / 2;
            bool any_h = false;
            for (int h = dy + 1; h <= hmax; h += 2) {
                const int y0 = (ctr.b - h) / 2, y1 = (ctr.b + h) / 2;
                bool ok = true;
                for (int y = y0; y < y1 && ok; ++y)
                    for (int x = x0; x < x1; ++x)
                        if (blocked_for(y * board_.width + x, center)) { ok = false; break; }
                if (!ok) break;  // rectangles about a fixed center are nested in h
                any_h = true;
                Candidate cand;
                cand.center = center;
                cand.cells.reserve(static_cast<size_t>(w) * h / 1);
                for (int y = y0; y < y1; ++y)
                    for (int x = x0; x < x1; ++x) cand.cells.push_back(y * board_.width + x);
                std::sort(cand.cells.begin(), cand.cells.end());
                out.push_back(std::move(cand));
            }
            if (!any_h && dy + 1 <= hmax) break;  // widening only adds blocked cells
        }
    }

    // Enumerates connected 180-symmetric cell sets about the center. Cells
    // come in orbits {q, mirror(q)}; connected supersets of the incident
    // seed are generated once each via the banned-frontier scheme.
    void gen_any(int cell, int center, std::vector<Candidate>& out) {
        const Center& ctr = board_.centers[center];
        const Cell p = board_.cell_at(cell);
        const Cell mp = rotate_cell(p, ctr);
        if (!board_.in_bounds(mp)) return;
        if (blocked_for(board_.cell_index(mp), center) || blocked_for(cell, center)) return;

        std::vector<int> seed;
        for (int i : incidents_[center]) {
            if (blocked_for(i, center)) return;
            seed.push_back(i);
        }
        std::sort(seed.begin(), seed.end());
        seed.erase(std::unique(seed.begin(), seed.end()), seed.end());

        std::vector<char> in_set(n_, 0), banned(n_, 0);
        std::vector<int> set_cells = seed;
        for (int i : seed) in_set[i] = 1;

        auto orbit_of = [&](int idx) -> std::optional<std::pair<int, int>> {
            Cell q = board_.cell_at(idx);
            Cell mq = rotate_cell(q, ctr);
            if (!board_.in_bounds(mq)) return std::nullopt;
            int mi = board_.cell_index(mq);
            if (blocked_for(idx, center) || blocked_for(mi, center)) return std::nullopt;
            return std::make_pair(std::min(idx, mi), std::max(idx, mi));
        };

        auto emit = [&]() {
            if (!in_set[cell]) return;
            Candidate cand;
            cand.center = center;
            cand.cells = set_cells;
            std::sort(cand.cells.begin(), cand.cells.end());
            out.push_back(std::move(cand));
        };

        // Recursive enumeration; every extension step costs a node so the
        // budget also bounds candidate generation on open boards.
        auto frontier_orbits = [&]() {
            std::vector<std::pair<int, int>> fr;
            for (int i : set_cells) {
                Cell q = board_.cell_at(i);
                const std::array<Cell, 4> nb{{{q.x + 1, q.y}, {q.x - 1, q.y}, {q.x, q.y + 1}, {q.x, q.y - 1}}};
                for (Cell r : nb) {
                    if (!board_.in_bounds(r)) continue;
                    int ri = board_.cell_index(r);
                    if (in_set[ri] || banned[ri]) continue;
                    auto orb = orbit_of(ri);
                    if (!orb || in_set[orb->first] || banned[orb->first] || banned[orb->second])
                        continue;
                    fr.push_back(*orb);
                }
            }
            std::sort(fr.begin(), fr.end());
            fr.erase(std::unique(fr.begin(), fr.end()), fr.end());
            return fr;
        };

        std::function<void()> grow = [&]() {
            emit();
            if (budget_.max_nodes && nodes_ >= *budget_.max_nodes) { budget_hit_ = true; return; }
            auto fr = frontier_orbits();
            std::vector<int> banned_here;
            for (const auto& orb : fr) {
                if (budget_hit_) break;
                ++nodes_;
                const size_t save = set_cells.size();
                in_set[orb.first] = 1;
                set_cells.push_back(orb.first);
                if (orb.second != orb.first) {
                    in_set[orb.second] = 1;
                    set_cells.push_back(orb.second);
                }
                grow();
                while (set_cells.size() > save) {
                    in_set[set_cells.back()] = 0;
                    set_cells.pop_back();
                }
                banned[orb.first] = banned[orb.second] = 1;
                banned_here.push_back(orb.first);
                banned_here.push_back(orb.second);
            }
            for (int i : banned_here) banned[i] = 0;
        };
        grow();
    }

    std::vector<Candidate> candidates_for(int cell) {
        std::vector<Candidate> out;
        for (int c : reach_[cell]) {
            if (placed_[c]) continue;
            switch (shapes_) {
                case ShapeClass::Unit3: gen_unit3(cell, c, out); break;
                case ShapeClass::Rect: gen_rect(cell, c, out); break;
                case ShapeClass::Any: gen_any(cell, c, out); break;
            }
        }
        std::sort(out.begin(), out.end(), candidate_less);
        return out;
    }

    void place(const Candidate& cand) {
        for (int i : cand.cells) owner_[i] = cand.center;
        placed_[cand.center] = 1;
        covered_ += static_cast<int>(cand.cells.size());
    }
    void unplace(const Candidate& cand) {
        for (int i : cand.cells) owner_[i] = -1;
        placed_[cand.center] = 0;
        covered_ -= static_cast<int>(cand.cells.size());
    }

    // Returns false when the sink asked to stop.
    template <class Sink>
    bool dfs(int hint, Sink&& sink) {
        // Forced placements (single candidate) are applied iteratively; the
        // local trail is undone before returning.
        std::vector<Candidate> trail;
        auto unwind = [&]() {
            for (auto it = trail.rbegin(); it != trail.rend(); ++it) unplace(*it);
        };

        for (;;) {
            if (budget_.max_nodes && nodes_ >= *budget_.max_nodes) {
                budget_hit_ = true;
                unwind();
                return true;
            }
            int cell = hint;
            while (cell < n_ && owner_[cell] != -1) ++cell;
            if (cell == n_) {
                Solution s;
                s.owner = owner_;
                bool go = sink(s);
                unwind();
                return go;
            }
            hint = cell;
            auto cands = candidates_for(cell);
            if (budget_hit_) { unwind(); return true; }
            if (cands.empty()) {
                unwind();
                return true;
            }
            if (cands.size() == 1) {
                ++nodes_;
                place(cands[0]);
                trail.push_back(std::move(cands[0]));
                continue;
            }
            for (const Candidate& cand : cands) {
                ++nodes_;
                place(cand);
                bool go = dfs(hint, sink);
                unplace(cand);
                if (!go || budget_hit_) { unwind(); return go; }
            }
            unwind();
            return true;
        }
    }

    const Board& board_;
    ShapeClass shapes_;
    SearchBudget budget_;
    int n_ = 0;
    bool root_ok_ = true;
    bool budget_hit_ = false;
    long long nodes_ = 0;
    int covered_ = 0;
    std::vector<int> owner_;
    std::vector<int> incident_owner_;
    std::vector<char> placed_;
    std::vector<std::vector<int>> incidents_;
    std::vector<std::vector<int>> reach_;
};

}  // namespace

SolveOutcome solve(const Board& board, ShapeClass shapes, const SearchBudget& budget) {
    Search search(board, shapes, budget);
    SolveOutcome out;
    search.run([&](const Solution& s) {
        out.solution = s;
        return false;  // first solution suffices
    });
    out.node_count = search.nodes();
    if (out.solution) {
        out.status = SolveStatus::Sat;
    } else if (search.budget_hit()) {
        out.status = SolveStatus::BudgetExceeded;
    } else {
        out.status = SolveStatus::Unsat;
    }
    return out;
}

CountOutcome count_solutions(const Board& board, ShapeClass shapes, const SearchBudget& budget) {
    CountOutcome out;
    Search search(board, shapes, budget);
    bool finished = search.run([&](const Solution&) {
        ++out.count;
        return !(budget.max_solutions && out.count >= *budget.max_solutions);
    });
    out.node_count = search.nodes();
    out.complete = finished;
    return out;
}

EnumerateOutcome enumerate_solutions(const Board& board, ShapeClass shapes,
                                     const SearchBudget& budget) {
    EnumerateOutcome out;
    Search search(board, shapes, budget);
    bool finished = search.run([&](const Solution& s) {
        out.solutions.push_back(s);
        return !(budget.max_solutions &&
                 static_cast<long long>(out.solutions.size()) >= *budget.max_solutions);
    });
    out.node_count = search.nodes();
    out.complete = finished;
    return out;
}

AnotherOutcome another_solution(const Board& board, ShapeClass shapes, const Solution& given,
                                const SearchBudget& budget) {
    Verdict v = verify(board, given, shapes);
    if (!v.valid) throw std::invalid_argument("another_solution: given solution is not valid");
    AnotherOutcome out;
    Search search(board, shapes, budget);
    bool finished = search.run([&](const Solution& s) {
        if (s == given) return true;
        out.solution = s;
        return false;
    });
    out.node_count = search.nodes();
    out.complete = finished || out.solution.has_value();
    return out;
}

// ---------------------------------------------------------------------------
// Independent oracle.

namespace {

bool mask_symmetric(const Board& board, uint32_t mask, const Center& c) {
    for (int i = 0; i < board.cell_count(); ++i) {
        if (!(mask & (1u << i))) continue;
        Cell m = rotate_cell(board.cell_at(i), c);
        if (!board.in_bounds(m)) return false;
        if (!(mask & (1u << board.cell_index(m)))) return false;
    }
    return true;
}

bool mask_connected(const Board& board, uint32_t mask) {
    if (mask == 0) return true;
    int start = 0;
    while (!(mask & (1u << start))) ++start;
    uint32_t seen = 1u << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        Cell p = board.cell_at(stack.back());
        stack.pop_back();
        const std::array<Cell, 4> nb{{{p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}}};
        for (Cell q : nb) {
            if (!board.in_bounds(q)) continue;
            int qi = board.cell_index(q);
            if ((mask & (1u << qi)) && !(seen & (1u << qi))) {
                seen |= 1u << qi;
                stack.push_back(qi);
            }
        }
    }
    return seen == mask;
}

bool mask_shape_ok(const Board& board, uint32_t mask, ShapeClass shapes) {
    if (shapes == ShapeClass::Any) return true;
    int minx = board.width, maxx = -1, miny = board.height, maxy = -1, cnt = 0;
    for (int i = 0; i < board.cell_count(); ++i) {
        if (!(mask & (1u << i))) continue;
        Cell p = board.cell_at(i);
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
        ++cnt;
    }
    int w = maxx - minx + 1, h = maxy - miny + 1;
    if (w * h != cnt) return false;
    if (shapes == ShapeClass::Unit3)
        return (w == 1 && h == 1) || (w == 1 && h == 3) || (w == 3 && h == 1);
    return true;
}

}  // namespace

long long naive_count(const Board& board, ShapeClass shapes) {
    const int n = board.cell_count();
    if (n > 12) throw std::invalid_argument("naive_count: board larger than 12 cells");
    if (n == 0) return 1;

    const uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);
    std::vector<std::vector<uint32_t>> options;
    for (const Center& c : board.centers) {
        uint32_t inc = 0;
        bool ok = true;
        for (Cell p : board.incident_cells(c)) {
            if (!board.in_bounds(p)) { ok = false; break; }
            inc |= 1u << board.cell_index(p);
        }
        std::vector<uint32_t> opts;
        if (ok) {
            for (uint32_t m = 1; m <= full; ++m) {
                if ((m & inc) != inc) continue;
                if (!mask_symmetric(board, m, c)) continue;
                if (!board.allow_disconnected && !mask_connected(board, m)) continue;
                if (!mask_shape_ok(board, m, shapes)) continue;
                opts.push_back(m);
            }
        }
        options.push_back(std::move(opts));
    }

    long long count = 0;
    std::vector<size_t> pick(board.centers.size(), 0);
    std::function<void(size_t, uint32_t)> rec = [&](size_t c, uint32_t used) {
        if (c == options.size()) {
            if (used == full) ++count;
            return;
        }
        for (uint32_t m : options[c])
            if ((m & used) == 0) rec(c + 1, used | m);
    };
    rec(0, 0);
    return count;
}

}  // namespace galaxies
