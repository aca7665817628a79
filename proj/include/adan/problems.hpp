#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "adan/dense_vector.hpp"
#include "adan/rng.hpp"

namespace adan {

/// Binary-labelled samples backing the logistic and MLP objectives.
struct Dataset {
    std::vector<DenseVector> features;
    std::vector<double> labels;  // each 0 or 1
    std::uint64_t seed = 0;

    std::size_t size() const { return features.size(); }
    std::size_t dim() const { return features.empty() ? 0 : features.front().size(); }
};

/// Seed-deterministic synthetic classification data: x ~ N(0, scale^2 I),
/// labels Bernoulli(sigmoid(<x, theta*>)) for a hidden theta*.
Dataset make_blob_dataset(std::size_t dim, std::size_t count, std::uint64_t seed,
                          double feature_scale = 1.0, double signal = 3.0);

/// Columnar text format: one sample per line, comma-separated features,
/// last field the label.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

/// An objective with exact value and gradient, optional per-sample
/// oracles for minibatch gradients, and smoothness metadata.
struct Problem {
    std::string name;
    std::int64_t dim = 0;
    std::function<double(const DenseVector&)> eval;
    std::function<DenseVector(const DenseVector&)> grad;

    std::size_t sample_count = 0;  // 0 when minibatch mode is unsupported
    std::function<double(const DenseVector&, const std::vector<std::size_t>&)> batch_eval;
    std::function<DenseVector(const DenseVector&, const std::vector<std::size_t>&)> batch_grad;

    std::optional<double> L_exact;     // exact gradient-Lipschitz constant
    std::optional<double> L_hint;      // analytic upper bound when known
    std::optional<double> f_star_hint;
};

/// f(theta) = 1/2 <theta, A theta> with diagonal A, eigenvalues
/// log-spaced ascending in [1, kappa]; L = kappa exactly, f* = 0.
Problem make_quadratic(std::int64_t d, double kappa);

/// Sum of uncoupled 2-D Rosenbrock terms; global minimizer at all-ones.
Problem make_rosenbrock(std::int64_t d);

/// Mean cross-entropy of a linear logit over the dataset.
Problem make_logistic(Dataset dataset);

/// One-hidden-layer tanh network with sigmoid output, mean cross-entropy;
/// gradients by hand-written backprop.
Problem make_mlp(std::int64_t hidden, Dataset dataset);

enum class NoiseKind { none, gaussian, minibatch };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::none;
    double sigma = 0.0;      // gaussian: E ||g - grad||^2 = sigma^2
    std::int64_t batch = 0;  // minibatch: samples per step
};

struct GradSample {
    DenseVector g;
    double loss = 0.0;
    /// Exact gradient at the query point when the sampling mode computes
    /// it anyway (none/gaussian); empty for minibatch sampling.
    DenseVector g_exact;
    bool has_exact = false;
};

/// Unbiased stochastic gradient plus the matching loss estimate. Gaussian
/// noise is spread across coordinates (per-coordinate std sigma/sqrt(d));
/// minibatch draws indices uniformly with replacement, except that a
/// batch covering the whole dataset degenerates to the exact gradient.
GradSample sample_grad_loss(const Problem& p, const DenseVector& theta, const NoiseSpec& noise,
                            SeededRng& rng);
DenseVector sample_grad(const Problem& p, const DenseVector& theta, const NoiseSpec& noise,
                        SeededRng& rng);

/// Clamp each coordinate to [-c_inf, c_inf]; enforces the bounded-linf
/// gradient premise at the problem boundary.
DenseVector clip_elementwise(const DenseVector& g, double c_inf);

/// Exact for problems carrying L_exact; otherwise the max of
/// ||grad(x)-grad(y)|| / ||x-y|| over sampled pairs within the region —
/// a lower estimate that is nondecreasing in the pair count.
double estimate_L(const Problem& p, double region_radius, SeededRng& rng, int pairs = 64);

}  // namespace adan
