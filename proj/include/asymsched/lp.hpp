#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asymsched/rational.hpp"

namespace asymsched {

// Small dense exact-rational LP solver. All variables are >= 0; optional
// upper bounds are handled internally. Two-phase simplex with Bland's rule,
// so no cycling and fully deterministic output.

enum class Rel { Le, Eq, Ge };

struct LinRow {
    std::map<int, Rational> coeffs;
    Rel rel;
    Rational rhs;
    std::string label;
};

struct LinearProgram {
    std::vector<std::string> var_names;
    std::vector<std::optional<Rational>> upper;  // per variable; lower bound is 0
    std::vector<bool> integral;                  // MIP markers; ignored by the solver
    std::vector<LinRow> rows;
    std::vector<Rational> objective;             // minimized

    int add_var(std::string name, std::optional<Rational> up = std::nullopt,
                bool is_integral = false);
    int num_vars() const { return static_cast<int>(var_names.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
    LpStatus status;
    Rational objective;
    std::vector<Rational> values;
};

SimplexResult solve_simplex(const LinearProgram& lp);

}  // namespace asymsched
