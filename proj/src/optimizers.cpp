#include "adan/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adan {

// ---------------------------------------------------------------- AGD

AgdState make_agd(DenseVector theta0, double eta, double alpha) {
    AgdState s;
    s.m = DenseVector::zeros(theta0.size());
    s.theta = std::move(theta0);
    s.eta = eta;
    s.alpha = alpha;
    return s;
}

DenseVector agd_query(const AgdState& s) {
    DenseVector q(s.theta.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = s.theta[i] - s.eta * s.alpha * s.m[i];
    return q;
}

void agd_step(AgdState& s, const DenseVector& g) {
    require_same_length(s.theta, g, "agd_step");
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.m[i] = s.alpha * s.m[i] + g[i];
        s.theta[i] -= s.eta * s.m[i];
    }
    ++s.k;
}

// ------------------------------------------------------------- AGD-II

Agd2State make_agd2(DenseVector theta0, double eta, double alpha) {
    Agd2State s;
    s.m = DenseVector::zeros(theta0.size());
    s.theta = std::move(theta0);
    s.eta = eta;
    s.alpha = alpha;
    return s;
}

void agd2_step(Agd2State& s, const DenseVector& g) {
    require_same_length(s.theta, g, "agd2_step");
    const DenseVector& pg = s.prev_grad ? *s.prev_grad : g;
    require_same_length(g, pg, "agd2_step");
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.m[i] = s.alpha * s.m[i] + (g[i] + s.alpha * (g[i] - pg[i]));
        s.theta[i] -= s.eta * s.m[i];
    }
    s.prev_grad = g;
    ++s.k;
}

DenseVector map_agd_to_agd2(const DenseVector& theta, const DenseVector& m_prev, double eta,
                            double alpha) {
    require_same_length(theta, m_prev, "map_agd_to_agd2");
    DenseVector r(theta.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = theta[i] - eta * alpha * m_prev[i];
    return r;
}

// ---------------------------------------------------------------- Adan

AdanState make_adan(DenseVector theta0, const AdanHyper& hyper) {
    if (hyper.mu < 0.0 || hyper.mu >= 1.0) {
        throw std::domain_error("make_adan: mu must lie in [0, 1)");
    }
    AdanState s;
    const std::size_t d = theta0.size();
    s.theta = std::move(theta0);
    s.m = DenseVector::zeros(d);
    s.v = DenseVector::zeros(d);
    s.n = DenseVector::zeros(d);
    s.lambda_k = hyper.weight_decay;
    s.hyper = hyper;
    return s;
}

void adan_step(AdanState& s, const DenseVector& g, AdanStepInfo* info) {
    require_same_length(s.theta, g, "adan_step");
    if (!all_finite(g)) throw std::domain_error("adan_step: non-finite gradient");

    const AdanHyper& h = s.hyper;
    const DenseVector& pg = s.prev_grad ? *s.prev_grad : g;  // zero difference at k = 0
    const double lambda = s.lambda_k;

    const std::size_t d = g.size();
    DenseVector u(d), n_used(d);
    const double bc1 = 1.0 - std::pow(1.0 - h.beta1, static_cast<double>(s.k + 1));
    const double bc2 = 1.0 - std::pow(1.0 - h.beta2, static_cast<double>(s.k + 1));
    const double bc3 = 1.0 - std::pow(1.0 - h.beta3, static_cast<double>(s.k + 1));

    for (std::size_t i = 0; i < d; ++i) {
        const double diff = g[i] - pg[i];
        s.m[i] = (1.0 - h.beta1) * s.m[i] + h.beta1 * g[i];
        s.v[i] = (1.0 - h.beta2) * s.v[i] + h.beta2 * diff;
        const double w = g[i] + (1.0 - h.beta2) * diff;
        s.n[i] = (1.0 - h.beta3) * s.n[i] + h.beta3 * w * w;

        double mi = s.m[i], vi = s.v[i], ni = s.n[i];
        if (h.debias) {
            mi /= bc1;
            vi /= bc2;
            ni /= bc3;
        }
        u[i] = mi + (1.0 - h.beta1) * vi;
        n_used[i] = ni;
        s.theta[i] = (s.theta[i] - h.eta * u[i] / (std::sqrt(ni) + h.eps)) /
                     (1.0 + h.eta * lambda);
    }

    if (info) {
        info->u = std::move(u);
        info->n_used = std::move(n_used);
        info->lambda = lambda;
    }
    s.prev_grad = g;
    s.lambda_k = lambda * (1.0 - h.mu);
    ++s.k;
}

double decay_lambda(double lambda, double mu, std::int64_t k) {
    if (mu < 0.0 || mu >= 1.0) throw std::domain_error("decay_lambda: mu must lie in [0, 1)");
    if (k < 0) throw std::domain_error("decay_lambda: k must be nonnegative");
    return lambda * std::pow(1.0 - mu, static_cast<double>(k));
}

DenseVector debias_correct(const DenseVector& moment, double beta, std::int64_t k) {
    if (k < 1) throw std::domain_error("debias_correct: undefined before the first update");
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("debias_correct: beta not in (0, 1)");
    const double c = 1.0 - std::pow(1.0 - beta, static_cast<double>(k));
    return scale(moment, 1.0 / c);
}

void restart_if_due(AdanState& s, std::int64_t restart_period) {
    if (restart_period <= 0) return;
    if (s.k > 0 && s.k % restart_period == 0) {
        const std::size_t d = s.theta.size();
        s.m = DenseVector::zeros(d);
        s.v = DenseVector::zeros(d);
        s.n = DenseVector::zeros(d);
        s.prev_grad.reset();
    }
}

DenseVector clip_global(const DenseVector& g, double tau) {
    if (!(tau > 0.0)) throw std::domain_error("clip_global: tau must be positive");
    const double norm = l2_norm(g);
    if (norm <= tau) return g;
    return scale(g, tau / norm);
}

// ----------------------------------------------------------- schedules

double lr_for_batch(std::int64_t bs) {
    if (bs < 1) throw std::domain_error("lr_for_batch: batch size must be >= 1");
    return std::sqrt(static_cast<double>(bs) / 256.0) * 6.25e-3;
}

Schedule Schedule::paper_preset() {
    Schedule s;
    s.warmup_table = {{1024, 20}, {2048, 40}, {4096, 60}, {8192, 100}, {16384, 160}, {32768, 200}};
    return s;
}

std::int64_t warmup_for_batch(const Schedule& sched, std::int64_t bs) {
    if (bs < 1) throw std::domain_error("warmup_for_batch: batch size must be >= 1");
    if (sched.warmup_table.empty()) throw std::domain_error("warmup_for_batch: empty table");
    for (const auto& [b, w] : sched.warmup_table) {
        if (b == bs) return w;
    }
    if (!sched.interpolate) {
        throw std::domain_error("warmup_for_batch: batch size " + std::to_string(bs) +
                                " not tabulated (strict mode)");
    }
    const auto& t = sched.warmup_table;
    if (bs <= t.front().first) return t.front().second;
    if (bs >= t.back().first) return t.back().second;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (bs > t[i].first && bs < t[i + 1].first) {
            const double x = (std::log(static_cast<double>(bs)) -
                              std::log(static_cast<double>(t[i].first))) /
                             (std::log(static_cast<double>(t[i + 1].first)) -
                              std::log(static_cast<double>(t[i].first)));
            const double w = std::exp(std::log(static_cast<double>(t[i].second)) +
                                      x * (std::log(static_cast<double>(t[i + 1].second)) -
                                           std::log(static_cast<double>(t[i].second))));
            return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(w)));
        }
    }
    throw std::logic_error("warmup_for_batch: table not ascending");
}

// ----------------------------------------------------------- baselines

SgdmState make_sgdm(DenseVector theta0, double eta, double momentum) {
    SgdmState s;
    s.m = DenseVector::zeros(theta0.size());
    s.theta = std::move(theta0);
    s.eta = eta;
    s.momentum = momentum;
    return s;
}

void sgdm_step(SgdmState& s, const DenseVector& g) {
    require_same_length(s.theta, g, "sgdm_step");
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.m[i] = s.momentum * s.m[i] + g[i];
        s.theta[i] -= s.eta * s.m[i];
    }
    ++s.k;
}

AdamwState make_adamw(DenseVector theta0, double eta, double beta1, double beta2, double eps,
                      double weight_decay, bool debias) {
    AdamwState s;
    const std::size_t d = theta0.size();
    s.theta = std::move(theta0);
    s.m = DenseVector::zeros(d);
    s.v = DenseVector::zeros(d);
    s.eta = eta;
    s.beta1 = beta1;
    s.beta2 = beta2;
    s.eps = eps;
    s.weight_decay = weight_decay;
    s.debias = debias;
    return s;
}

void adamw_step(AdamwState& s, const DenseVector& g) {
    require_same_length(s.theta, g, "adamw_step");
    const double t = static_cast<double>(s.k + 1);
    const double bc1 = 1.0 - std::pow(s.beta1, t);
    const double bc2 = 1.0 - std::pow(s.beta2, t);
    for (std::size_t i = 0; i < g.size(); ++i) {
        s.m[i] = s.beta1 * s.m[i] + (1.0 - s.beta1) * g[i];
        s.v[i] = s.beta2 * s.v[i] + (1.0 - s.beta2) * g[i] * g[i];
        double mi = s.m[i], vi = s.v[i];
        if (s.debias) {
            mi /= bc1;
            vi /= bc2;
        }
        s.theta[i] *= 1.0 - s.eta * s.weight_decay;
        s.theta[i] -= s.eta * mi / (std::sqrt(vi) + s.eps);
    }
    ++s.k;
}

}  // namespace adan
