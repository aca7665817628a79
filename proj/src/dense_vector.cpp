#include "adan/dense_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace adan {

void require_same_length(const DenseVector& a, const DenseVector& b, const std::string& op) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(op + ": length mismatch (" + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()) + ")");
    }
}

DenseVector add(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "add");
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

DenseVector sub(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "sub");
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

DenseVector scale(const DenseVector& a, double s) {
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

DenseVector hadamard(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "hadamard");
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
    return r;
}

DenseVector elementwise_div(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "elementwise_div");
    DenseVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] == 0.0) {
            throw std::domain_error("elementwise_div: zero denominator at index " +
                                    std::to_string(i));
        }
        r[i] = a[i] / b[i];
    }
    return r;
}

double weighted_norm_sq(const DenseVector& x, const DenseVector& n, double eps) {
    require_same_length(x, n, "weighted_norm_sq");
    if (!(eps > 0.0)) throw std::domain_error("weighted_norm_sq: eps must be positive");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (n[i] < 0.0) {
            throw std::domain_error("weighted_norm_sq: negative weight at index " +
                                    std::to_string(i));
        }
        acc += (std::sqrt(n[i]) + eps) * x[i] * x[i];
    }
    return acc;
}

double dot(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Norms norms(const DenseVector& x) {
    Norms r;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sumsq += x[i] * x[i];
        double a = std::fabs(x[i]);
        if (a > r.linf) r.linf = a;
    }
    r.l2 = std::sqrt(sumsq);
    return r;
}

double l2_norm(const DenseVector& x) { return norms(x).l2; }
double linf_norm(const DenseVector& x) { return norms(x).linf; }

bool all_finite(const DenseVector& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) return false;
    }
    return true;
}

}  // namespace adan
