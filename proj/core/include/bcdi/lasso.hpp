#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bcdi {

/// Real linear map with an adjoint. Implementations may keep scratch space,
/// so a single instance is not meant to be shared across threads.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;
    [[nodiscard]] virtual std::size_t rows() const = 0;
    [[nodiscard]] virtual std::size_t cols() const = 0;
    virtual void apply(std::span<const double> x, std::span<double> y) const = 0;
    virtual void apply_adjoint(std::span<const double> y, std::span<double> x) const = 0;
};

/// Row-major dense matrix.
class DenseOperator final : public LinearOperator {
public:
    DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> values);

    [[nodiscard]] std::size_t rows() const override { return rows_; }
    [[nodiscard]] std::size_t cols() const override { return cols_; }
    void apply(std::span<const double> x, std::span<double> y) const override;
    void apply_adjoint(std::span<const double> y, std::span<double> x) const override;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
};

struct LassoOptions {
    double alpha = 2e-4;
    std::size_t max_iterations = 5000;
    /// Stop once an accepted step lowers the objective by less than this fraction.
    double convergence_tol = 1e-8;
};

struct SparseSolution {
    std::vector<double> x;
    /// Objective after each iteration; never increases.
    std::vector<double> objective_trace;
    std::size_t nnz = 0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Magnitude below which a coefficient counts as zero in SparseSolution::nnz.
inline constexpr double kNonzeroThreshold = 1e-12;

/// Minimizes |K x - y|^2 + alpha |x|_1 with monotone accelerated proximal
/// gradient steps (backtracking on the Lipschitz estimate, momentum restart
/// whenever a step would raise the objective). Starts from x = 0.
SparseSolution lasso_solve(const LinearOperator& op, std::span<const double> y, const LassoOptions& options);

/// Largest squared singular value of `op`, by power iteration from a fixed start vector.
double estimate_operator_norm_squared(const LinearOperator& op, std::size_t iterations = 50);

double soft_threshold(double value, double threshold);

} // namespace bcdi
