#ifndef LOCSOC_SOLVER_HPP_
#define LOCSOC_SOLVER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "locsoc/network.hpp"
#include "locsoc/types.hpp"

namespace locsoc {

/// How to repair a column whose sum is zero (e.g. a friendless user).
enum class ZeroColumnPolicy {
    Uniform,  // replace with the uniform column 1/rows
    SelfLoop, // put mass 1 on the diagonal entry
    DropNode, // reject the input
};

/// Sparse column-stochastic matrix in CSC layout. Columns repaired under the
/// uniform policy are stored implicitly and folded into multiply(). The
/// matrix-vector product accumulates in ascending column/row order, so
/// results are reproducible run to run.
class ColumnStochasticMatrix {
public:
    using Column = std::vector<std::pair<std::uint32_t, double>>;

    /// Normalizes every column of `columns` (entries need not sum to 1).
    /// DropNode with a zero column present throws InputError naming the
    /// column index; SelfLoop on a zero column whose diagonal entry does not
    /// exist (col >= rows) throws InputError.
    static ColumnStochasticMatrix from_columns(std::uint32_t rows,
                                               std::vector<Column> columns,
                                               ZeroColumnPolicy policy);

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return static_cast<std::uint32_t>(col_ptr_.size()) - 1; }

    /// y = A * x. Requires x.size() == cols(), y.size() == rows().
    void multiply(std::span<const double> x, std::span<double> y) const;

    /// Entry lookup, including the implicit 1/rows of uniform-repaired
    /// columns. Intended for tests and small matrices.
    double coefficient(std::uint32_t row, std::uint32_t col) const;

    std::span<const std::uint32_t> uniform_columns() const { return uniform_cols_; }

private:
    std::uint32_t rows_ = 0;
    std::vector<std::size_t> col_ptr_{0};
    std::vector<std::uint32_t> row_idx_;
    std::vector<double> values_;
    std::vector<std::uint32_t> uniform_cols_;
};

/// The three column-stochastic operators of the mutual-reinforcement model.
struct StochasticOperators {
    ColumnStochasticMatrix social;             // from X, |U| x |U|
    ColumnStochasticMatrix user_from_location; // from Y, |U| x |L|
    ColumnStochasticMatrix location_from_user; // from Y^T, |L| x |U|
    ZeroColumnPolicy policy = ZeroColumnPolicy::Uniform;
};

struct SolverConfig {
    double alpha = 0.5;      // weight of the social-network term
    double tolerance = 1e-5; // max-norm difference of consecutive kappa
    std::uint32_t max_iterations = 200;
    ZeroColumnPolicy zero_column_policy = ZeroColumnPolicy::Uniform;

    void validate() const;
};

/// Per-location sociality (vector kappa), aligned to the location order of
/// the UserLocationNetwork the operators came from.
struct SocialityScores {
    std::vector<double> values;
    std::uint32_t iterations_used = 0;
    bool converged = false;
};

/// Per-user social influence (vector eta), aligned to user order.
struct InfluenceScores {
    std::vector<double> values;
};

/// Per-sweep diagnostics; also feeds the run manifest.
struct SolveTrace {
    std::vector<double> kappa_max_diff;
    std::vector<double> eta_sum;
    std::vector<double> kappa_sum;
    bool mass_conserving_policy = true; // only the uniform policy guarantees it
};

struct SolveResult {
    SocialityScores sociality;
    InfluenceScores influence;
    SolveTrace trace;
};

/// Column-normalizes X, Y and Y^T. The networks must share user ordering.
StochasticOperators normalize(const SocialNetwork& social,
                              const UserLocationNetwork& ul,
                              ZeroColumnPolicy policy = ZeroColumnPolicy::Uniform);

/// Fixed point of
///   eta   <- alpha * Xbar * eta + (1 - alpha) * Ybar * kappa
///   kappa <- YTbar * eta
/// from uniform starting vectors, stopping when the max-norm difference of
/// consecutive kappa drops below the tolerance. Update order within a sweep
/// is exactly eta-then-kappa.
SolveResult solve(const StochasticOperators& ops, const SolverConfig& config);

/// Top-k (token, score) pairs, descending by score, ties broken by token.
/// k larger than the population returns everything.
std::vector<std::pair<std::string, double>> rank(std::span<const double> scores,
                                                 std::span<const std::string> tokens,
                                                 std::size_t k);

} // namespace locsoc

#endif // LOCSOC_SOLVER_HPP_
