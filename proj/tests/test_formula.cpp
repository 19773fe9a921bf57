#include "doctest.h"
#include "galaxies/formula.hpp"

#include <algorithm>
#include <random>

using namespace galaxies;

TEST_CASE("parse single positive clause") {
    Formula f = parse_formula("p 1in3 3 1\n1 2 3 0\n");
    CHECK(f.num_vars == 3);
    REQUIRE(f.clauses.size() == 1);
    CHECK(f.clauses[0][0] == Literal{1, false});
    CHECK(f.clauses[0][1] == Literal{2, false});
    CHECK(f.clauses[0][2] == Literal{3, false});
}

TEST_CASE("parse transcribes signs and order") {
    Formula f = parse_formula("c comment\np 1in3 4 2\n1 2 3 0\n-1 -2 4 0\n");
    CHECK(f.num_vars == 4);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[1][0] == Literal{1, true});
    CHECK(f.clauses[1][2] == Literal{4, false});
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_formula("p 1in3 2 1\n1 -2 0\n"), ParseError);      // arity 2
    CHECK_THROWS_AS(parse_formula("p 1in3 2 1\n1 2 3 0\n"), ParseError);     // var out of range
    CHECK_THROWS_AS(parse_formula("p 1in3 2 1\n1 -1 2 0\n"), ParseError);    // repeated variable
    CHECK_THROWS_AS(parse_formula("p 1in3 2 1\n1 1 2 0\n"), ParseError);     // repeated variable
    CHECK_THROWS_AS(parse_formula("p cnf 2 1\n1 2 0\n"), ParseError);        // wrong format tag
    CHECK_THROWS_AS(parse_formula("p 1in3 3 2\n1 2 3 0\n"), ParseError);     // clause count mismatch
}

TEST_CASE("oracle: single positive clause has the three one-hot models") {
    Formula f = parse_formula("p 1in3 3 1\n1 2 3 0\n");
    auto models = one_in_three_models(f);
    REQUIRE(models.size() == 3);
    // Lexicographic: 001, 010, 100.
    CHECK(models[0].values == std::vector<uint8_t>{0, 0, 1});
    CHECK(models[1].values == std::vector<uint8_t>{0, 1, 0});
    CHECK(models[2].values == std::vector<uint8_t>{1, 0, 0});
}

TEST_CASE("oracle: empty conjunction is satisfied by all assignments") {
    Formula f;
    f.num_vars = 2;
    CHECK(one_in_three_models(f).size() == 4);
}

TEST_CASE("oracle self-consistency against a second filter") {
    // Second, independently coded filter: count satisfied-with-exactly-one
    // literals by explicit counting over each clause.
    std::mt19937 rng(3);
    for (int iter = 0; iter < 200; ++iter) {
        std::uniform_int_distribution<int> nv(3, 8), nc(0, 5);
        Formula f;
        f.num_vars = nv(rng);
        int k = nc(rng);
        for (int j = 0; j < k; ++j) {
            std::vector<int> vars(f.num_vars);
            for (int i = 0; i < f.num_vars; ++i) vars[i] = i + 1;
            std::shuffle(vars.begin(), vars.end(), rng);
            Clause c;
            for (int s = 0; s < 3; ++s) c[s] = {vars[s], std::uniform_int_distribution<int>(0, 1)(rng) == 1};
            f.clauses.push_back(c);
        }
        long long slow = 0;
        for (uint32_t m = 0; m < (1u << f.num_vars); ++m) {
            bool all_ok = true;
            for (const Clause& c : f.clauses) {
                int t = 0;
                for (const Literal& l : c) {
                    bool val = (m >> (l.var - 1)) & 1u;
                    if (l.negated) val = !val;
                    t += val ? 1 : 0;
                }
                if (t != 1) { all_ok = false; break; }
            }
            if (all_ok) ++slow;
        }
        CHECK(static_cast<long long>(one_in_three_models(f).size()) == slow);
    }
}

TEST_CASE("oracle invariance under clause permutation") {
    Formula f = parse_formula("p 1in3 4 2\n1 2 3 0\n-1 -2 4 0\n");
    Formula g = f;
    std::swap(g.clauses[0], g.clauses[1]);
    CHECK(one_in_three_models(f) == one_in_three_models(g));
}

TEST_CASE("oracle bound") {
    Formula f;
    f.num_vars = 25;
    CHECK_THROWS_AS(one_in_three_models(f), std::invalid_argument);
}

TEST_CASE("auto_layout produces a valid layout for a single clause") {
    Formula f = parse_formula("p 1in3 3 1\n1 2 3 0\n");
    Layout l = auto_layout(f);
    CHECK(validate_layout(f, l).ok());
    CHECK(l.routes.size() == 3);
}

TEST_CASE("auto_layout handles two clauses sharing variables") {
    Formula f = parse_formula("p 1in3 4 2\n1 2 3 0\n-1 -2 4 0\n");
    Layout l = auto_layout(f);
    CHECK(validate_layout(f, l).ok());
}

TEST_CASE("auto_layout rejects oversized instances and vacuous input") {
    Formula big;
    big.num_vars = 9;
    big.clauses.resize(2);
    CHECK_THROWS_AS(auto_layout(big), std::invalid_argument);
    Formula empty;
    Layout l = auto_layout(empty);
    CHECK(l.var_anchors.empty());
    CHECK(validate_layout(empty, l).ok());
}

TEST_CASE("validate_layout flags crossings and missing routes") {
    Formula f = parse_formula("p 1in3 3 1\n1 2 3 0\n");
    Layout l = auto_layout(f);
    SUBCASE("valid layout -> empty report") { CHECK(validate_layout(f, l).ok()); }
    SUBCASE("dropping a route is reported") {
        l.routes.pop_back();
        auto rep = validate_layout(f, l);
        REQUIRE_FALSE(rep.ok());
        bool unrouted = false;
        for (auto& i : rep.issues) unrouted |= i.message.find("unrouted literal") != std::string::npos;
        CHECK(unrouted);
    }
    SUBCASE("two routes sharing a non-anchor point are reported") {
        // Reroute slot 1 straight through slot 2's territory by cloning points.
        Layout bad = l;
        bad.routes[0].points = bad.routes[1].points;
        auto rep = validate_layout(f, bad);
        CHECK_FALSE(rep.ok());
    }
}

TEST_CASE("layout JSON round trip") {
    Formula f = parse_formula("p 1in3 4 2\n1 2 3 0\n-1 -2 4 0\n");
    Layout l = auto_layout(f);
    Layout again = parse_layout(serialize_layout(l));
    CHECK(again.grid_w == l.grid_w);
    CHECK(again.var_anchors == l.var_anchors);
    CHECK(again.clause_anchors == l.clause_anchors);
    REQUIRE(again.routes.size() == l.routes.size());
    for (size_t i = 0; i < l.routes.size(); ++i) {
        CHECK(again.routes[i].clause == l.routes[i].clause);
        CHECK(again.routes[i].slot == l.routes[i].slot);
        CHECK(again.routes[i].points == l.routes[i].points);
    }
    CHECK(validate_layout(f, again).ok());
}

TEST_CASE("formula file round trip") {
    Formula f = parse_formula("p 1in3 4 2\n1 -2 3 0\n-1 -2 4 0\n");
    Formula g = parse_formula(serialize_formula(f));
    CHECK(g.num_vars == f.num_vars);
    REQUIRE(g.clauses.size() == f.clauses.size());
    for (size_t i = 0; i < f.clauses.size(); ++i) CHECK(g.clauses[i] == f.clauses[i]);
}
