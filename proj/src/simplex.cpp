#include "taxoprob/simplex.hpp"

#include "taxoprob/errors.hpp"

#include <optional>

namespace taxoprob::lp {

namespace {

enum class ColumnKind { Original, Slack, Artificial };

class Tableau {
public:
    explicit Tableau(const Problem& problem) : num_original_(problem.num_vars)
    {
        // Normalise every row to a non-negative right-hand side. A >= row with
        // zero rhs is negated into a <= row so its slack can start basic.
        struct Row {
            std::vector<Rational> coeffs;
            Sense sense;
            Rational rhs;
        };
        std::vector<Row> rows;
        rows.reserve(problem.constraints.size());
        for (const auto& c : problem.constraints) {
            if (c.coeffs.size() != problem.num_vars)
                throw InternalError("constraint width does not match variable count");
            Row row{c.coeffs, c.sense, c.rhs};
            bool negate = row.rhs < 0 || (row.sense == Sense::GreaterEqual && row.rhs == 0);
            if (negate) {
                for (auto& a : row.coeffs)
                    a = -a;
                row.rhs = -row.rhs;
                if (row.sense == Sense::LessEqual)
                    row.sense = Sense::GreaterEqual;
                else if (row.sense == Sense::GreaterEqual)
                    row.sense = Sense::LessEqual;
            }
            rows.push_back(std::move(row));
        }

        kinds_.assign(num_original_, ColumnKind::Original);
        std::vector<std::size_t> slack_col(rows.size(), kNone);
        std::vector<std::size_t> artificial_col(rows.size(), kNone);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].sense != Sense::Equal) {
                slack_col[i] = kinds_.size();
                kinds_.push_back(ColumnKind::Slack);
            }
            if (rows[i].sense != Sense::LessEqual) {
                artificial_col[i] = kinds_.size();
                kinds_.push_back(ColumnKind::Artificial);
            }
        }
        width_ = kinds_.size();

        table_.resize(rows.size());
        basis_.resize(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto& t = table_[i];
            t.assign(width_ + 1, Rational(0));
            for (std::size_t j = 0; j < num_original_; ++j)
                t[j] = rows[i].coeffs[j];
            if (slack_col[i] != kNone)
                t[slack_col[i]] = rows[i].sense == Sense::LessEqual ? 1 : -1;
            if (artificial_col[i] != kNone) {
                t[artificial_col[i]] = 1;
                basis_[i] = artificial_col[i];
            } else {
                basis_[i] = slack_col[i];
            }
            t[width_] = rows[i].rhs;
        }
    }

    /// Phase one. Returns false when the constraints are infeasible.
    bool make_feasible()
    {
        std::vector<Rational> cost(width_, Rational(0));
        bool any_artificial = false;
        for (std::size_t j = 0; j < width_; ++j) {
            if (kinds_[j] == ColumnKind::Artificial) {
                cost[j] = -1;
                any_artificial = true;
            }
        }
        if (!any_artificial)
            return true;
        load_objective(cost);
        if (!optimise(/*allow_artificial=*/true))
            throw InternalError("phase one reported an unbounded objective");
        if (objective_[width_] < 0)
            return false;
        drive_out_artificials();
        return true;
    }

    /// Phase two. Returns false when the objective is unbounded.
    bool maximise(const std::vector<Rational>& original_cost)
    {
        std::vector<Rational> cost(width_, Rational(0));
        for (std::size_t j = 0; j < num_original_; ++j)
            cost[j] = original_cost[j];
        load_objective(cost);
        return optimise(/*allow_artificial=*/false);
    }

    [[nodiscard]] const Rational& objective_value() const { return objective_[width_]; }

    [[nodiscard]] std::vector<Rational> primal() const
    {
        std::vector<Rational> x(num_original_, Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < num_original_)
                x[basis_[i]] = table_[i][width_];
        return x;
    }

    [[nodiscard]] std::size_t pivots() const { return pivots_; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    // objective_[j] = sum_i cost[basis_i] * T[i][j] - cost[j]; last entry is the value.
    void load_objective(const std::vector<Rational>& cost)
    {
        objective_.assign(width_ + 1, Rational(0));
        for (std::size_t j = 0; j < width_; ++j)
            objective_[j] = -cost[j];
        for (std::size_t i = 0; i < table_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0)
                continue;
            for (std::size_t j = 0; j <= width_; ++j)
                if (sgn(table_[i][j]) != 0)
                    objective_[j] += cb * table_[i][j];
        }
    }

    // Bland's rule; returns false on unboundedness.
    bool optimise(bool allow_artificial)
    {
        for (;;) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < width_; ++j) {
                if (!allow_artificial && kinds_[j] == ColumnKind::Artificial)
                    continue;
                if (sgn(objective_[j]) < 0) {
                    entering = j;
                    break;
                }
            }
            if (!entering)
                return true;

            const std::size_t col = *entering;
            std::optional<std::size_t> leaving;
            for (std::size_t i = 0; i < table_.size(); ++i) {
                if (sgn(table_[i][col]) <= 0)
                    continue;
                if (!leaving) {
                    leaving = i;
                    continue;
                }
                const auto& best = table_[*leaving];
                // rhs_i / a_i  vs  rhs_best / a_best, both pivots positive
                int cmp = cmp_ratio(table_[i][width_], table_[i][col], best[width_], best[col]);
                if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[*leaving]))
                    leaving = i;
            }
            if (!leaving)
                return false;
            pivot(*leaving, col);
        }
    }

    static int cmp_ratio(const Rational& rhs_a, const Rational& a, const Rational& rhs_b, const Rational& b)
    {
        Rational left = rhs_a * b;
        Rational right = rhs_b * a;
        return cmp(left, right);
    }

    void pivot(std::size_t row, std::size_t col)
    {
        ++pivots_;
        auto& prow = table_[row];
        const Rational inv = 1 / prow[col];
        std::vector<std::size_t> nonzero;
        nonzero.reserve(width_ + 1);
        for (std::size_t j = 0; j <= width_; ++j) {
            if (sgn(prow[j]) != 0) {
                prow[j] *= inv;
                nonzero.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<Rational>& target) {
            if (sgn(target[col]) == 0)
                return;
            const Rational factor = target[col];
            for (std::size_t j : nonzero)
                target[j] -= factor * prow[j];
        };
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (i != row)
                eliminate(table_[i]);
        eliminate(objective_);
        basis_[row] = col;
    }

    void drive_out_artificials()
    {
        for (std::size_t i = 0; i < table_.size();) {
            if (kinds_[basis_[i]] != ColumnKind::Artificial) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < width_; ++j) {
                if (kinds_[j] != ColumnKind::Artificial && sgn(table_[i][j]) != 0) {
                    col = j;
                    break;
                }
            }
            if (col) {
                pivot(i, *col);
                ++i;
            } else {
                // Redundant row: only artificials remain and its rhs is zero.
                table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::size_t num_original_;
    std::size_t width_ = 0;
    std::vector<ColumnKind> kinds_;
    std::vector<std::vector<Rational>> table_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> objective_;
    std::size_t pivots_ = 0;
};

} // namespace

Solution solve(const Problem& problem)
{
    Tableau tableau(problem);
    Solution solution;
    if (!tableau.make_feasible()) {
        solution.status = Status::Infeasible;
        solution.pivots = tableau.pivots();
        return solution;
    }
    std::vector<Rational> cost = problem.objective;
    cost.resize(problem.num_vars, Rational(0));
    if (!problem.maximize)
        for (auto& c : cost)
            c = -c;
    if (!tableau.maximise(cost)) {
        solution.status = Status::Unbounded;
        solution.pivots = tableau.pivots();
        return solution;
    }
    solution.status = Status::Optimal;
    solution.value = problem.maximize ? tableau.objective_value() : Rational(-tableau.objective_value());
    solution.x = tableau.primal();
    solution.pivots = tableau.pivots();
    return solution;
}

bool feasible(const Problem& problem)
{
    Tableau tableau(problem);
    return tableau.make_feasible();
}

struct FeasibleRegion::Impl {
    Tableau tableau;
    std::size_t num_vars;
};

FeasibleRegion::FeasibleRegion(const Problem& problem)
    : impl_(std::make_unique<Impl>(Impl{Tableau(problem), problem.num_vars}))
{
    feasible_ = impl_->tableau.make_feasible();
}

FeasibleRegion::~FeasibleRegion() = default;
FeasibleRegion::FeasibleRegion(FeasibleRegion&&) noexcept = default;
FeasibleRegion& FeasibleRegion::operator=(FeasibleRegion&&) noexcept = default;

Solution FeasibleRegion::optimise(const std::vector<Rational>& objective, bool maximize) const
{
    Solution solution;
    if (!feasible_) {
        solution.status = Status::Infeasible;
        return solution;
    }
    Tableau tableau = impl_->tableau;
    std::vector<Rational> cost = objective;
    cost.resize(impl_->num_vars, Rational(0));
    if (!maximize)
        for (auto& c : cost)
            c = -c;
    if (!tableau.maximise(cost)) {
        solution.status = Status::Unbounded;
        solution.pivots = tableau.pivots();
        return solution;
    }
    solution.status = Status::Optimal;
    solution.value = maximize ? tableau.objective_value() : Rational(-tableau.objective_value());
    solution.x = tableau.primal();
    solution.pivots = tableau.pivots();
    return solution;
}

} // namespace taxoprob::lp
