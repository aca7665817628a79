#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adan/dense_vector.hpp"

// Optimizer state machines driven through a two-phase oracle protocol:
// query_point() names where the caller must evaluate the gradient,
// *_step() consumes that gradient and advances the state. AGD extrapolates
// its query point; AGD-II, Adan, SGD-M and AdamW query the current iterate.

namespace adan {

// ---------------------------------------------------------------- AGD

/// Nesterov momentum in its extrapolated-gradient form:
///   g_k = grad f(theta_k - eta * alpha * m_{k-1})
///   m_k = alpha * m_{k-1} + g_k
///   theta_{k+1} = theta_k - eta * m_k
struct AgdState {
    DenseVector theta;
    DenseVector m;  // zero before the first step
    double eta = 0.0;
    double alpha = 0.0;
    std::int64_t k = 0;
};

AgdState make_agd(DenseVector theta0, double eta, double alpha);

/// Extrapolated point theta - eta * alpha * m at which the caller must
/// evaluate the gradient before calling agd_step.
DenseVector agd_query(const AgdState& s);

void agd_step(AgdState& s, const DenseVector& g);

// ------------------------------------------------------------- AGD-II

/// Same dynamics rewritten to query the current iterate, with a
/// gradient-difference correction:
///   mbar_k = alpha * mbar_{k-1} + g_k + alpha * (g_k - g_{k-1})
///   thetabar_{k+1} = thetabar_k - eta * mbar_k
struct Agd2State {
    DenseVector theta;
    DenseVector m;
    /// Gradient seen by the previous step. Unset before the first step,
    /// in which case the correction term vanishes (prev_grad = g). The
    /// equivalence checker instead primes this with a zero vector so the
    /// first step applies (1 + alpha) * g.
    std::optional<DenseVector> prev_grad;
    double eta = 0.0;
    double alpha = 0.0;
    std::int64_t k = 0;
};

Agd2State make_agd2(DenseVector theta0, double eta, double alpha);
void agd2_step(Agd2State& s, const DenseVector& g);

/// thetabar = theta - eta * alpha * m_prev, the change of variables that
/// carries an AGD iterate onto the AGD-II trajectory.
DenseVector map_agd_to_agd2(const DenseVector& theta, const DenseVector& m_prev, double eta,
                            double alpha);

// ---------------------------------------------------------------- Adan

struct AdanHyper {
    double beta1 = 0.02;
    double beta2 = 0.08;
    double beta3 = 0.01;
    double eps = 1e-8;         // preconditioner floor
    double eta = 1e-3;
    double weight_decay = 0.02;  // lambda, decoupled
    double mu = 0.0;             // decay-schedule rate, lambda_k = lambda * (1-mu)^k
    bool debias = true;
    std::int64_t restart_period = 0;  // 0 = disabled
    double clip_global_norm = 0.0;    // tau, 0 = disabled (applied by the runner)
};

/// Per-step byproducts needed by the certificate checkers: the update
/// direction u and preconditioner n actually applied (de-biased when the
/// de-bias strategy is on), and the weight-decay coefficient used.
struct AdanStepInfo {
    DenseVector u;
    DenseVector n_used;
    double lambda = 0.0;
};

struct AdanState {
    DenseVector theta;
    DenseVector m;  // first moment
    DenseVector v;  // gradient-difference moment
    DenseVector n;  // second moment, elementwise >= 0
    std::optional<DenseVector> prev_grad;
    std::int64_t k = 0;
    /// Current lambda_k, advanced multiplicatively so that consecutive
    /// values satisfy lambda_{k+1} = (1-mu) * lambda_k exactly.
    double lambda_k = 0.0;
    AdanHyper hyper;
};

AdanState make_adan(DenseVector theta0, const AdanHyper& hyper);

/// One Adan step with gradient g evaluated at the current theta:
///   m <- (1-b1) m + b1 g
///   v <- (1-b2) v + b2 (g - g_prev)
///   n <- (1-b3) n + b3 (g + (1-b2)(g - g_prev))^2
///   u  = m + (1-b1) v
///   theta <- (theta - eta * u / (sqrt(n) + eps)) / (1 + eta * lambda_k)
/// At k = 0 the gradient difference is taken as zero.
void adan_step(AdanState& s, const DenseVector& g, AdanStepInfo* info = nullptr);

/// lambda * (1-mu)^k
double decay_lambda(double lambda, double mu, std::int64_t k);

/// moment / (1 - (1-beta)^k) for k >= 1 completed updates.
DenseVector debias_correct(const DenseVector& moment, double beta, std::int64_t k);

/// Zeroes m, v, n and clears prev_grad every R steps (k > 0, k % R == 0).
void restart_if_due(AdanState& s, std::int64_t restart_period);

/// Rescales g so its l2 norm is at most tau.
DenseVector clip_global(const DenseVector& g, double tau);

// ----------------------------------------------------------- schedules

/// sqrt scaling rule: lr = sqrt(bs / 256) * 6.25e-3.
double lr_for_batch(std::int64_t bs);

struct Schedule {
    double base_lr = 6.25e-3;
    std::int64_t base_batch = 256;
    /// (batch size, warmup epochs), ascending in batch size.
    std::vector<std::pair<std::int64_t, std::int64_t>> warmup_table;
    /// When false, untabulated batch sizes are an error; when true,
    /// warmup is interpolated geometrically in log-batch (clamped to the
    /// table's endpoints outside its range).
    bool interpolate = false;

    static Schedule paper_preset();
};

std::int64_t warmup_for_batch(const Schedule& sched, std::int64_t bs);

// ----------------------------------------------------------- baselines

/// Heavy-ball SGD: m <- momentum * m + g; theta <- theta - eta * m.
struct SgdmState {
    DenseVector theta;
    DenseVector m;
    double eta = 0.0;
    double momentum = 0.0;
    std::int64_t k = 0;
};

SgdmState make_sgdm(DenseVector theta0, double eta, double momentum);
void sgdm_step(SgdmState& s, const DenseVector& g);

/// Adam with decoupled weight decay; the decay multiplies theta by
/// (1 - eta * lambda) before the adaptive step.
struct AdamwState {
    DenseVector theta;
    DenseVector m;
    DenseVector v;
    double eta = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;
    bool debias = true;
    std::int64_t k = 0;
};

AdamwState make_adamw(DenseVector theta0, double eta, double beta1 = 0.9, double beta2 = 0.999,
                      double eps = 1e-8, double weight_decay = 0.0, bool debias = true);
void adamw_step(AdamwState& s, const DenseVector& g);

}  // namespace adan
