#include "asymsched/lp.hpp"

#include <algorithm>

#include "asymsched/errors.hpp"

namespace asymsched {

int LinearProgram::add_var(std::string name, std::optional<Rational> up, bool is_integral) {
    var_names.push_back(std::move(name));
    upper.push_back(std::move(up));
    integral.push_back(is_integral);
    objective.push_back(Rational(0));
    return num_vars() - 1;
}

namespace {

// Dense two-phase tableau. Row layout: structural vars, then slack/surplus,
// then artificials, then rhs. The cost row holds reduced costs; its rhs cell
// holds minus the current objective value.
class Tableau {
public:
    Tableau(const LinearProgram& lp) {
        n_struct_ = lp.num_vars();
        std::vector<LinRow> rows = lp.rows;
        for (int j = 0; j < n_struct_; ++j)
            if (lp.upper[j])
                rows.push_back(LinRow{{{j, Rational(1)}}, Rel::Le, *lp.upper[j], "ub"});
        m_ = static_cast<int>(rows.size());

        int n_slack = 0;
        for (const auto& row : rows)
            if (row.rel != Rel::Eq) ++n_slack;
        // Worst case every row needs an artificial.
        cols_ = n_struct_ + n_slack + m_;
        t_.assign(m_ + 1, std::vector<Rational>(cols_ + 1, Rational(0)));
        basis_.assign(m_, -1);
        is_artificial_.assign(cols_, false);

        int next_slack = n_struct_;
        int next_art = n_struct_ + n_slack;
        for (int i = 0; i < m_; ++i) {
            Rel rel = rows[i].rel;
            Rational rhs = rows[i].rhs;
            Rational sign(1);
            if (rhs.sign() < 0) {
                sign = Rational(-1);
                rhs = -rhs;
                rel = rel == Rel::Le ? Rel::Ge : (rel == Rel::Ge ? Rel::Le : Rel::Eq);
            }
            for (const auto& [j, c] : rows[i].coeffs) t_[i][j] = c * sign;
            t_[i][cols_] = rhs;
            if (rel == Rel::Le) {
                t_[i][next_slack] = Rational(1);
                basis_[i] = next_slack++;
            } else if (rel == Rel::Ge) {
                t_[i][next_slack++] = Rational(-1);
                is_artificial_[next_art] = true;
                t_[i][next_art] = Rational(1);
                basis_[i] = next_art++;
            } else {
                is_artificial_[next_art] = true;
                t_[i][next_art] = Rational(1);
                basis_[i] = next_art++;
            }
        }
        used_cols_ = next_art;  // slacks may be fewer than reserved artificials
    }

    LpStatus run(const std::vector<Rational>& objective) {
        // Phase 1: minimize the artificial sum.
        std::vector<Rational> phase1(used_cols_, Rational(0));
        for (int j = 0; j < used_cols_; ++j)
            if (is_artificial_[j]) phase1[j] = Rational(1);
        set_cost_row(phase1, /*ban_artificials=*/false);
        if (pivot_loop(false) == LpStatus::Unbounded)
            throw LpInfeasible("phase 1 unbounded; malformed program");
        if (t_[m_][cols_] != Rational(0)) return LpStatus::Infeasible;
        purge_artificials();

        // Phase 2.
        std::vector<Rational> cost(used_cols_, Rational(0));
        for (int j = 0; j < n_struct_ && j < used_cols_; ++j) cost[j] = objective[j];
        set_cost_row(cost, /*ban_artificials=*/true);
        return pivot_loop(true);
    }

    Rational objective_value() const { return -t_[m_][cols_]; }

    std::vector<Rational> values() const {
        std::vector<Rational> out(n_struct_, Rational(0));
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_struct_) out[basis_[i]] = t_[i][cols_];
        return out;
    }

private:
    void set_cost_row(const std::vector<Rational>& cost, bool ban_artificials) {
        ban_artificials_ = ban_artificials;
        for (int j = 0; j <= cols_; ++j) t_[m_][j] = Rational(0);
        for (int j = 0; j < used_cols_; ++j) t_[m_][j] = cost[j];
        // Reduce against the current basis.
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (int j = 0; j <= cols_; ++j) t_[m_][j] -= cb * t_[i][j];
        }
    }

    LpStatus pivot_loop(bool detect_unbounded) {
        for (;;) {
            // Bland: entering column = smallest index with negative reduced cost.
            int enter = -1;
            for (int j = 0; j < used_cols_; ++j) {
                if (ban_artificials_ && is_artificial_[j]) continue;
                if (t_[m_][j].sign() < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return LpStatus::Optimal;

            int leave = -1;
            Rational best_ratio(0);
            for (int i = 0; i < m_; ++i) {
                if (t_[i][enter].sign() <= 0) continue;
                Rational ratio = t_[i][cols_] / t_[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) {
                if (detect_unbounded) return LpStatus::Unbounded;
                throw LpInfeasible("no leaving row in phase 1");
            }
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        Rational inv = Rational(1) / t_[row][col];
        for (int j = 0; j <= cols_; ++j) t_[row][j] *= inv;
        for (int i = 0; i <= m_; ++i) {
            if (i == row) continue;
            const Rational factor = t_[i][col];
            if (factor.is_zero()) continue;
            for (int j = 0; j <= cols_; ++j) t_[i][j] -= factor * t_[row][j];
        }
        basis_[row] = col;
    }

    // After phase 1 at value zero, pivot basic artificials out on any
    // non-artificial column (degenerate pivots at rhs 0); fully zero rows are
    // redundant and simply retired by leaving the artificial basic at zero.
    void purge_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (!is_artificial_[basis_[i]]) continue;
            for (int j = 0; j < used_cols_; ++j) {
                if (is_artificial_[j]) continue;
                if (!t_[i][j].is_zero()) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    int n_struct_ = 0, m_ = 0, cols_ = 0, used_cols_ = 0;
    bool ban_artificials_ = false;
    std::vector<std::vector<Rational>> t_;
    std::vector<int> basis_;
    std::vector<bool> is_artificial_;
};

}  // namespace

SimplexResult solve_simplex(const LinearProgram& lp) {
    for (const auto& row : lp.rows)
        for (const auto& [j, c] : row.coeffs)
            if (j < 0 || j >= lp.num_vars()) throw InvalidSpec("row references unknown variable");

    Tableau tab(lp);
    LpStatus status = tab.run(lp.objective);
    SimplexResult result;
    result.status = status;
    if (status == LpStatus::Optimal) {
        result.values = tab.values();
        result.objective = Rational(0);
        for (int j = 0; j < lp.num_vars(); ++j)
            result.objective += lp.objective[j] * result.values[j];
    }
    return result;
}

}  // namespace asymsched
