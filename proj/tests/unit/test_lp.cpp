#include <doctest.h>

#include "asymsched/errors.hpp"
#include "asymsched/lp.hpp"
#include "asymsched/lprelax.hpp"

using namespace asymsched;

TEST_CASE("[lp] simplex solves a small bounded program") {
    // min -x - 2y  s.t.  x + y <= 4, x <= 3, y <= 2  ->  x=2? no: y=2, x=2.
    LinearProgram lp;
    int x = lp.add_var("x", Rational(3));
    int y = lp.add_var("y", Rational(2));
    lp.objective[x] = Rational(-1);
    lp.objective[y] = Rational(-2);
    lp.rows.push_back({{{x, Rational(1)}, {y, Rational(1)}}, Rel::Le, Rational(4), "cap"});
    auto res = solve_simplex(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.values[x] == Rational(2));
    CHECK(res.values[y] == Rational(2));
    CHECK(res.objective == Rational(-6));
}

TEST_CASE("[lp] simplex handles equalities and >= rows") {
    // min x + y  s.t.  x + y >= 3, x - y = 1  ->  x=2, y=1.
    LinearProgram lp;
    int x = lp.add_var("x");
    int y = lp.add_var("y");
    lp.objective[x] = Rational(1);
    lp.objective[y] = Rational(1);
    lp.rows.push_back({{{x, Rational(1)}, {y, Rational(1)}}, Rel::Ge, Rational(3), "ge"});
    lp.rows.push_back({{{x, Rational(1)}, {y, Rational(-1)}}, Rel::Eq, Rational(1), "eq"});
    auto res = solve_simplex(lp);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.values[x] == Rational(2));
    CHECK(res.values[y] == Rational(1));
}

TEST_CASE("[lp] simplex reports infeasible and unbounded programs") {
    LinearProgram infeasible;
    int x = infeasible.add_var("x", Rational(1));
    infeasible.rows.push_back({{{x, Rational(1)}}, Rel::Ge, Rational(2), "impossible"});
    CHECK(solve_simplex(infeasible).status == LpStatus::Infeasible);

    LinearProgram unbounded;
    int z = unbounded.add_var("z");
    unbounded.objective[z] = Rational(-1);
    CHECK(solve_simplex(unbounded).status == LpStatus::Unbounded);
}

TEST_CASE("[lp] simplex stays exact on awkward fractions") {
    // min x s.t. 3x >= 1  ->  x = 1/3 exactly.
    LinearProgram lp;
    int x = lp.add_var("x");
    lp.objective[x] = Rational(1);
    lp.rows.push_back({{{x, Rational(3)}}, Rel::Ge, Rational(1), "r"});
    auto res = solve_simplex(lp);
    CHECK(res.values[x] == Rational(1, 3));
}

TEST_CASE("[lp] build_mip row structure on a two-task chain") {
    auto inst = make_chain_instance({2}, {Rational(2), Rational(1)});
    auto mip = build_mip(inst);
    int pairs = 0, caps = 0, edges = 0, roots = 0, deadlines = 0;
    for (const auto& row : mip.program.rows) {
        if (row.label.rfind("pair", 0) == 0) ++pairs;
        if (row.label.rfind("cap", 0) == 0) ++caps;
        if (row.label.rfind("edge", 0) == 0) ++edges;
        if (row.label.rfind("root", 0) == 0) ++roots;
        if (row.label.rfind("deadline", 0) == 0) ++deadlines;
    }
    CHECK(pairs == 2);
    CHECK(edges == 1);
    CHECK(roots == 1);
    CHECK(caps == 2);
    CHECK(deadlines == 2);
    CHECK(mip.program.rows.size() == 8);
    // x and y are binary in the MIP; the relaxation clears the markers.
    CHECK(mip.program.integral[mip.x_var[0]]);
    auto relaxed = relax(mip);
    CHECK(!relaxed.program.integral[relaxed.x_var[0]]);
}

TEST_CASE("[lp] build_mip row structure on edge-free and diamond graphs") {
    Instance loose;
    loose.graph = std::make_shared<TaskGraph>(TaskGraph::validate_dag(3, {}));
    loose.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    auto mip = build_mip(loose);
    int edges = 0, roots = 0;
    for (const auto& row : mip.program.rows) {
        if (row.label.rfind("edge", 0) == 0) ++edges;
        if (row.label.rfind("root", 0) == 0) ++roots;
    }
    CHECK(edges == 0);
    CHECK(roots == 3);

    Instance diamond;
    diamond.graph = std::make_shared<TaskGraph>(
        TaskGraph::validate_dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
    diamond.machines =
        std::make_shared<MachineConfig>(std::vector<Rational>{Rational(2), Rational(1)});
    auto dm = build_mip(diamond);
    edges = roots = 0;
    for (const auto& row : dm.program.rows) {
        if (row.label.rfind("edge", 0) == 0) ++edges;
        if (row.label.rfind("root", 0) == 0) ++roots;
    }
    CHECK(edges == 4);
    CHECK(roots == 1);

    MachineConfig sym({Rational(1), Rational(1)});
    Instance bad = loose;
    bad.machines = std::make_shared<MachineConfig>(sym);
    CHECK_THROWS_AS(build_mip(bad), NotTwoSpeed);
}

TEST_CASE("[lp] worked relaxation: single chain of 5, s=2, m=2") {
    auto inst = make_chain_instance({5}, {Rational(2), Rational(1)});
    auto sol = solve_lp(inst);
    CHECK(sol.d == Rational(5, 2));
    for (const auto& x : sol.x) CHECK(x == Rational(1));
}

TEST_CASE("[lp] worked relaxation: chains (4,4), s=2, m=2") {
    auto inst = make_chain_instance({4, 4}, {Rational(2), Rational(1)});
    auto sol = solve_lp(inst);
    CHECK(sol.d == Rational(8, 3));
    REQUIRE(sol.chain_x.has_value());
    CHECK((*sol.chain_x)[0] == Rational(2, 3));
    CHECK((*sol.chain_x)[1] == Rational(2, 3));
}

TEST_CASE("[lp] single task on a fast-only machine") {
    auto inst = make_chain_instance({1}, {Rational(2)});
    auto sol = solve_lp(inst);
    CHECK(sol.d == Rational(1, 2));
    CHECK(sol.x[0] == Rational(1));
}

TEST_CASE("[lp] size guard") {
    auto inst = make_chain_instance({5}, {Rational(2), Rational(1)});
    CHECK_THROWS_AS(solve_lp(inst, 4), SizeLimitExceeded);
}

TEST_CASE("[lp] chain-reduced optimum equals the full relaxation") {
    for (auto lengths : std::vector<std::vector<int>>{{5}, {4, 4}, {3, 3, 2, 2}, {6, 1}, {2, 2, 2}}) {
        for (long s : {2L, 3L}) {
            auto inst = make_chain_instance(lengths, {Rational(s), Rational(1), Rational(1)});
            auto sol = solve_lp(inst);
            CHECK(chain_reduced_optimum(inst) == sol.d);
        }
    }
}
