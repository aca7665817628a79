#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace adan {

/// Fixed-length vector of 64-bit reals. Length is set at construction;
/// all binary operations require equal lengths. Reductions run in
/// index-ascending order so results are bit-reproducible across runs.
class DenseVector {
public:
    DenseVector() = default;
    explicit DenseVector(std::size_t d, double fill = 0.0) : elems_(d, fill) {}
    explicit DenseVector(std::vector<double> elems) : elems_(std::move(elems)) {}

    static DenseVector zeros(std::size_t d) { return DenseVector(d, 0.0); }
    static DenseVector ones(std::size_t d) { return DenseVector(d, 1.0); }

    std::size_t size() const { return elems_.size(); }
    double& operator[](std::size_t i) { return elems_[i]; }
    const double& operator[](std::size_t i) const { return elems_[i]; }

    double* data() { return elems_.data(); }
    const double* data() const { return elems_.data(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool operator==(const DenseVector& o) const { return elems_ == o.elems_; }

private:
    std::vector<double> elems_;
};

struct Norms {
    double l2 = 0.0;
    double linf = 0.0;
};

void require_same_length(const DenseVector& a, const DenseVector& b, const std::string& op);

DenseVector add(const DenseVector& a, const DenseVector& b);
DenseVector sub(const DenseVector& a, const DenseVector& b);
DenseVector scale(const DenseVector& a, double s);

/// result[i] = a[i] * b[i]
DenseVector hadamard(const DenseVector& a, const DenseVector& b);

/// result[i] = a[i] / b[i]; any zero denominator is a domain error naming the index.
DenseVector elementwise_div(const DenseVector& a, const DenseVector& b);

/// <x, (sqrt(n) + eps) o x> for n >= 0 elementwise, eps > 0.
double weighted_norm_sq(const DenseVector& x, const DenseVector& n, double eps);

double dot(const DenseVector& a, const DenseVector& b);
Norms norms(const DenseVector& x);
double l2_norm(const DenseVector& x);
double linf_norm(const DenseVector& x);

bool all_finite(const DenseVector& x);

}  // namespace adan
