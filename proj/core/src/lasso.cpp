#include "bcdi/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bcdi/error.hpp"
#include "bcdi/random.hpp"

namespace bcdi {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

double l1_norm(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) {
        sum += std::abs(v);
    }
    return sum;
}

} // namespace

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    require(values_.size() == rows_ * cols_, "dense operator payload does not match its shape");
}

void DenseOperator::apply(std::span<const double> x, std::span<double> y) const {
    require(x.size() == cols_ && y.size() == rows_, "operator dimension mismatch");
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* row = values_.data() + r * cols_;
        y[r] = std::inner_product(row, row + cols_, x.begin(), 0.0);
    }
}

void DenseOperator::apply_adjoint(std::span<const double> y, std::span<double> x) const {
    require(x.size() == cols_ && y.size() == rows_, "operator dimension mismatch");
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* row = values_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) {
            x[c] += row[c] * y[r];
        }
    }
}

double soft_threshold(double value, double threshold) {
    if (value > threshold) {
        return value - threshold;
    }
    if (value < -threshold) {
        return value + threshold;
    }
    return 0.0;
}

double estimate_operator_norm_squared(const LinearOperator& op, std::size_t iterations) {
    std::vector<double> v(op.cols());
    std::vector<double> w(op.rows());
    SplitMix64 rng(0x4E4F524DULL);
    for (double& e : v) {
        e = rng.uniform() - 0.5;
    }
    double lambda = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        const double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        if (norm == 0.0) {
            return 0.0;
        }
        for (double& e : v) {
            e /= norm;
        }
        op.apply(v, w);
        lambda = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
        op.apply_adjoint(w, v);
    }
    return lambda;
}

SparseSolution lasso_solve(const LinearOperator& op, std::span<const double> y, const LassoOptions& options) {
    require(op.rows() == y.size(), "measurement vector does not match the operator");
    require(options.alpha >= 0.0, "alpha must be non-negative");
    require(options.convergence_tol > 0.0, "convergence tolerance must be positive");
    for (double v : y) {
        if (!std::isfinite(v)) {
            throw InvalidInput("measurements contain non-finite values");
        }
    }

    const std::size_t n = op.cols();
    const std::size_t m = op.rows();
    const double alpha = options.alpha;

    std::vector<double> x(n, 0.0), x_prev(n, 0.0), z(n), v(n, 0.0), grad(n);
    std::vector<double> kx(m, 0.0), kx_prev(m, 0.0), kz(m), kv(m, 0.0), residual(m);

    auto data_term = [&](std::span<const double> k_of) { return squared_distance(k_of, y); };

    // Lipschitz constant of the gradient of |Kx - y|^2 is 2 |K|^2.
    double lipschitz = std::max(2.0 * estimate_operator_norm_squared(op), 1e-300);

    SparseSolution out;
    double objective = data_term(kx);
    double t = 1.0;

    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        for (std::size_t i = 0; i < m; ++i) {
            residual[i] = kv[i] - y[i];
        }
        op.apply_adjoint(residual, grad);
        for (double& g : grad) {
            g *= 2.0;
        }
        const double f_v = data_term(kv);

        double f_z = 0.0;
        for (;;) {
            const double step = 1.0 / lipschitz;
            double linear = 0.0;
            double quad = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = soft_threshold(v[i] - step * grad[i], alpha * step);
                const double d = z[i] - v[i];
                linear += grad[i] * d;
                quad += d * d;
            }
            op.apply(z, kz);
            f_z = data_term(kz);
            // Relative slack absorbs rounding in the sufficient-decrease test.
            const double bound = f_v + linear + 0.5 * lipschitz * quad;
            if (f_z <= bound + 1e-12 * std::max(1.0, std::abs(bound))) {
                break;
            }
            lipschitz *= 2.0;
        }

        const double objective_z = f_z + alpha * l1_norm(z);
        const double previous = objective;
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const bool accepted = objective_z <= objective;
        if (accepted) {
            x_prev.swap(x);
            kx_prev.swap(kx);
            x = z;
            kx = kz;
            objective = objective_z;
            const double w = (t - 1.0) / t_next;
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = x[i] + w * (x[i] - x_prev[i]);
            }
            for (std::size_t i = 0; i < m; ++i) {
                kv[i] = kx[i] + w * (kx[i] - kx_prev[i]);
            }
            t = t_next;
        } else {
            // Momentum overshot: restart from the current iterate.
            v = x;
            kv = kx;
            t = 1.0;
        }
        out.objective_trace.push_back(objective);
        out.iterations = it + 1;

        if (accepted && previous - objective <= options.convergence_tol * previous) {
            out.converged = true;
            break;
        }
    }

    out.nnz = static_cast<std::size_t>(
        std::count_if(x.begin(), x.end(), [](double e) { return std::abs(e) > kNonzeroThreshold; }));
    out.x = std::move(x);
    return out;
}

} // namespace bcdi
