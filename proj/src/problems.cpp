#include "adan/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace adan {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
    if (z > 0.0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

}  // namespace

Dataset make_blob_dataset(std::size_t dim, std::size_t count, std::uint64_t seed,
                          double feature_scale, double signal) {
    SeededRng rng(seed);
    DenseVector truth(dim);
    const double s = signal / std::sqrt(static_cast<double>(dim));
    for (std::size_t j = 0; j < dim; ++j) truth[j] = s * rng.normal();

    Dataset ds;
    ds.seed = seed;
    ds.features.reserve(count);
    ds.labels.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        DenseVector x = rng.normal_vector(dim, feature_scale);
        const double p = sigmoid(dot(x, truth));
        ds.labels.push_back(rng.uniform() < p ? 1.0 : 0.0);
        ds.features.push_back(std::move(x));
    }
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
    char buf[64];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = 0; j < ds.features[i].size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.features[i][j]);
            out << buf << ',';
        }
        std::snprintf(buf, sizeof(buf), "%.17g", ds.labels[i]);
        out << buf << '\n';
    }
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
    Dataset ds;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(std::stod(tok));
        if (fields.size() < 2) throw std::runtime_error("load_dataset: malformed line");
        ds.labels.push_back(fields.back());
        fields.pop_back();
        ds.features.emplace_back(std::move(fields));
        if (ds.features.back().size() != ds.features.front().size()) {
            throw std::runtime_error("load_dataset: inconsistent feature count");
        }
    }
    return ds;
}

Problem make_quadratic(std::int64_t d, double kappa) {
    if (d < 1) throw std::domain_error("make_quadratic: d must be >= 1");
    if (kappa < 1.0) throw std::domain_error("make_quadratic: kappa must be >= 1");
    auto diag = std::make_shared<std::vector<double>>(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < d; ++i) {
        (*diag)[static_cast<std::size_t>(i)] =
            d == 1 ? kappa
                   : std::pow(kappa, static_cast<double>(i) / static_cast<double>(d - 1));
    }
    Problem p;
    p.name = "quadratic";
    p.dim = d;
    p.eval = [diag](const DenseVector& th) {
        double acc = 0.0;
        for (std::size_t i = 0; i < th.size(); ++i) acc += (*diag)[i] * th[i] * th[i];
        return 0.5 * acc;
    };
    p.grad = [diag](const DenseVector& th) {
        DenseVector g(th.size());
        for (std::size_t i = 0; i < th.size(); ++i) g[i] = (*diag)[i] * th[i];
        return g;
    };
    p.L_exact = kappa;
    p.L_hint = kappa;
    p.f_star_hint = 0.0;
    return p;
}

Problem make_rosenbrock(std::int64_t d) {
    if (d < 2 || d % 2 != 0) throw std::domain_error("make_rosenbrock: d must be even and >= 2");
    Problem p;
    p.name = "rosenbrock";
    p.dim = d;
    p.eval = [](const DenseVector& th) {
        double acc = 0.0;
        for (std::size_t j = 0; j + 1 < th.size(); j += 2) {
            const double a = 1.0 - th[j];
            const double b = th[j + 1] - th[j] * th[j];
            acc += a * a + 100.0 * b * b;
        }
        return acc;
    };
    p.grad = [](const DenseVector& th) {
        DenseVector g(th.size());
        for (std::size_t j = 0; j + 1 < th.size(); j += 2) {
            const double b = th[j + 1] - th[j] * th[j];
            g[j] = -2.0 * (1.0 - th[j]) - 400.0 * th[j] * b;
            g[j + 1] = 200.0 * b;
        }
        return g;
    };
    p.f_star_hint = 0.0;
    return p;
}

Problem make_logistic(Dataset dataset) {
    if (dataset.size() == 0) throw std::domain_error("make_logistic: empty dataset");
    if (dataset.labels.size() != dataset.features.size()) {
        throw std::invalid_argument("make_logistic: feature count differs from label count");
    }
    auto ds = std::make_shared<Dataset>(std::move(dataset));
    const std::size_t d = ds->dim();
    const std::size_t n = ds->size();

    auto batch_eval = [ds](const DenseVector& th, const std::vector<std::size_t>& idx) {
        if (idx.empty()) throw std::domain_error("logistic: empty batch");
        double acc = 0.0;
        for (std::size_t i : idx) {
            const double y = 2.0 * ds->labels[i] - 1.0;
            acc += softplus(-y * dot(ds->features[i], th));
        }
        return acc / static_cast<double>(idx.size());
    };
    auto batch_grad = [ds, d](const DenseVector& th, const std::vector<std::size_t>& idx) {
        if (idx.empty()) throw std::domain_error("logistic: empty batch");
        DenseVector g(d);
        for (std::size_t i : idx) {
            const double y = 2.0 * ds->labels[i] - 1.0;
            const double coef = -y * sigmoid(-y * dot(ds->features[i], th));
            for (std::size_t j = 0; j < d; ++j) g[j] += coef * ds->features[i][j];
        }
        const double inv = 1.0 / static_cast<double>(idx.size());
        for (std::size_t j = 0; j < d; ++j) g[j] *= inv;
        return g;
    };

    Problem p;
    p.name = "logistic";
    p.dim = static_cast<std::int64_t>(d);
    p.sample_count = n;
    p.eval = [batch_eval, n](const DenseVector& th) { return batch_eval(th, all_indices(n)); };
    p.grad = [batch_grad, n](const DenseVector& th) { return batch_grad(th, all_indices(n)); };
    p.batch_eval = batch_eval;
    p.batch_grad = batch_grad;

    // Hessian(theta) <= (1/4n) X^T X; power-iterate the dominant eigenvalue
    // with a small safety factor so the hint is a usable upper bound.
    {
        std::vector<double> M(d * d, 0.0);
        const double inv = 1.0 / (4.0 * static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            const DenseVector& x = ds->features[i];
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = 0; b < d; ++b) M[a * d + b] += inv * x[a] * x[b];
            }
        }
        std::vector<double> vcur(d, 1.0 / std::sqrt(static_cast<double>(d)));
        double lam = 0.0;
        for (int it = 0; it < 300; ++it) {
            std::vector<double> w(d, 0.0);
            for (std::size_t a = 0; a < d; ++a) {
                for (std::size_t b = 0; b < d; ++b) w[a] += M[a * d + b] * vcur[b];
            }
            double nn = 0.0;
            for (double c : w) nn += c * c;
            nn = std::sqrt(nn);
            if (nn == 0.0) break;
            lam = nn;
            for (std::size_t a = 0; a < d; ++a) vcur[a] = w[a] / nn;
        }
        p.L_hint = 1.05 * lam;
    }
    return p;
}

Problem make_mlp(std::int64_t hidden, Dataset dataset) {
    if (hidden < 1) throw std::domain_error("make_mlp: hidden must be >= 1");
    if (dataset.size() == 0) throw std::domain_error("make_mlp: empty dataset");
    auto ds = std::make_shared<Dataset>(std::move(dataset));
    const std::size_t in = ds->dim();
    const std::size_t h = static_cast<std::size_t>(hidden);
    const std::size_t dim = h * in + h + h + 1;  // W1, b1, w2, b2

    // theta layout: W1 row-major (h x in), then b1, then w2, then b2.
    auto batch_eval = [ds, in, h](const DenseVector& th, const std::vector<std::size_t>& idx) {
        if (idx.empty()) throw std::domain_error("mlp: empty batch");
        const double* W1 = th.data();
        const double* b1 = W1 + h * in;
        const double* w2 = b1 + h;
        const double b2 = w2[h];
        double acc = 0.0;
        std::vector<double> a(h);
        for (std::size_t i : idx) {
            const DenseVector& x = ds->features[i];
            double z2 = b2;
            for (std::size_t r = 0; r < h; ++r) {
                double z1 = b1[r];
                for (std::size_t c = 0; c < in; ++c) z1 += W1[r * in + c] * x[c];
                a[r] = std::tanh(z1);
                z2 += w2[r] * a[r];
            }
            acc += softplus(z2) - ds->labels[i] * z2;
        }
        return acc / static_cast<double>(idx.size());
    };
    auto batch_grad = [ds, in, h, dim](const DenseVector& th,
                                       const std::vector<std::size_t>& idx) {
        if (idx.empty()) throw std::domain_error("mlp: empty batch");
        const double* W1 = th.data();
        const double* b1 = W1 + h * in;
        const double* w2 = b1 + h;
        const double b2 = w2[h];
        DenseVector g(dim);
        double* gW1 = g.data();
        double* gb1 = gW1 + h * in;
        double* gw2 = gb1 + h;
        double* gb2 = gw2 + h;
        std::vector<double> a(h);
        for (std::size_t i : idx) {
            const DenseVector& x = ds->features[i];
            double z2 = b2;
            for (std::size_t r = 0; r < h; ++r) {
                double z1 = b1[r];
                for (std::size_t c = 0; c < in; ++c) z1 += W1[r * in + c] * x[c];
                a[r] = std::tanh(z1);
                z2 += w2[r] * a[r];
            }
            const double dz2 = sigmoid(z2) - ds->labels[i];
            *gb2 += dz2;
            for (std::size_t r = 0; r < h; ++r) {
                gw2[r] += dz2 * a[r];
                const double dz1 = dz2 * w2[r] * (1.0 - a[r] * a[r]);
                gb1[r] += dz1;
                for (std::size_t c = 0; c < in; ++c) gW1[r * in + c] += dz1 * x[c];
            }
        }
        const double inv = 1.0 / static_cast<double>(idx.size());
        for (std::size_t j = 0; j < dim; ++j) g[j] *= inv;
        return g;
    };

    const std::size_t n = ds->size();
    Problem p;
    p.name = "mlp";
    p.dim = static_cast<std::int64_t>(dim);
    p.sample_count = n;
    p.eval = [batch_eval, n](const DenseVector& th) { return batch_eval(th, all_indices(n)); };
    p.grad = [batch_grad, n](const DenseVector& th) { return batch_grad(th, all_indices(n)); };
    p.batch_eval = batch_eval;
    p.batch_grad = batch_grad;
    return p;
}

GradSample sample_grad_loss(const Problem& p, const DenseVector& theta, const NoiseSpec& noise,
                            SeededRng& rng) {
    GradSample out;
    switch (noise.kind) {
        case NoiseKind::none:
            out.g = p.grad(theta);
            out.loss = p.eval(theta);
            return out;
        case NoiseKind::gaussian: {
            out.g = p.grad(theta);
            out.loss = p.eval(theta);
            const double percoord = noise.sigma / std::sqrt(static_cast<double>(out.g.size()));
            for (std::size_t i = 0; i < out.g.size(); ++i) out.g[i] += percoord * rng.normal();
            return out;
        }
        case NoiseKind::minibatch: {
            if (!p.batch_grad) {
                throw std::domain_error("sample_grad: problem '" + p.name +
                                        "' has no minibatch oracle");
            }
            if (noise.batch < 1) throw std::domain_error("sample_grad: empty batch");
            const std::size_t n = p.sample_count;
            std::vector<std::size_t> idx;
            if (static_cast<std::size_t>(noise.batch) >= n) {
                idx = all_indices(n);
            } else {
                idx.reserve(static_cast<std::size_t>(noise.batch));
                for (std::int64_t i = 0; i < noise.batch; ++i) idx.push_back(rng.uniform_index(n));
            }
            out.g = p.batch_grad(theta, idx);
            out.loss = p.batch_eval(theta, idx);
            return out;
        }
    }
    throw std::logic_error("sample_grad: unknown noise kind");
}

DenseVector sample_grad(const Problem& p, const DenseVector& theta, const NoiseSpec& noise,
                        SeededRng& rng) {
    return sample_grad_loss(p, theta, noise, rng).g;
}

DenseVector clip_elementwise(const DenseVector& g, double c_inf) {
    if (!(c_inf > 0.0)) throw std::domain_error("clip_elementwise: bound must be positive");
    DenseVector r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = std::clamp(g[i], -c_inf, c_inf);
    return r;
}

double estimate_L(const Problem& p, double region_radius, SeededRng& rng, int pairs) {
    if (p.L_exact) return *p.L_exact;
    const std::size_t d = static_cast<std::size_t>(p.dim);
    const double s = region_radius / std::sqrt(static_cast<double>(d));
    double best = 0.0;
    for (int t = 0; t < pairs; ++t) {
        DenseVector x = rng.normal_vector(d, s);
        DenseVector y = rng.normal_vector(d, s);
        const double dist = l2_norm(sub(x, y));
        if (dist == 0.0) continue;
        const double ratio = l2_norm(sub(p.grad(x), p.grad(y))) / dist;
        best = std::max(best, ratio);
    }
    return best;
}

}  // namespace adan
