#include "grushin/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "grushin/vecops.hpp"

namespace grushin {

SparseOperator SparseOperator::from_triplets(
    int n, std::vector<std::tuple<int, int, double>> triplets) {
    std::sort(triplets.begin(), triplets.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });
    SparseOperator A;
    A.n_ = n;
    A.row_ptr_.assign(n + 1, 0);
    for (std::size_t t = 0; t < triplets.size();) {
        auto [r, c, v] = triplets[t++];
        if (r < 0 || r >= n || c < 0 || c >= n)
            throw std::out_of_range("SparseOperator: triplet index out of range");
        while (t < triplets.size() && std::get<0>(triplets[t]) == r &&
               std::get<1>(triplets[t]) == c)
            v += std::get<2>(triplets[t++]);
        A.col_.push_back(c);
        A.val_.push_back(v);
        ++A.row_ptr_[r + 1];
    }
    for (int r = 0; r < n; ++r) A.row_ptr_[r + 1] += A.row_ptr_[r];
    return A;
}

void SparseOperator::multiply(std::span<const double> x, std::span<double> y) const {
    if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
        throw std::invalid_argument("SparseOperator::multiply: dimension mismatch");
    for (int r = 0; r < n_; ++r) {
        double s = 0.0;
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            s += val_[p] * x[col_[p]];
        y[r] = s;
    }
}

std::vector<double> SparseOperator::multiply(std::span<const double> x) const {
    std::vector<double> y(n_);
    multiply(x, y);
    return y;
}

double SparseOperator::inner(std::span<const double> x, std::span<const double> y) const {
    std::vector<double> Ay = multiply(y);
    return dot(x, Ay);
}

double SparseOperator::diagonal(int i) const {
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
        if (col_[p] == i) return val_[p];
    return 0.0;
}

std::vector<double> SparseOperator::diagonal() const {
    std::vector<double> d(n_);
    for (int i = 0; i < n_; ++i) d[i] = diagonal(i);
    return d;
}

double SparseOperator::symmetry_error() const {
    double scale = 0.0;
    for (double v : val_) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int r = 0; r < n_; ++r) {
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
            int c = col_[p];
            double mirror = 0.0;
            for (int q = row_ptr_[c]; q < row_ptr_[c + 1]; ++q)
                if (col_[q] == r) { mirror = val_[q]; break; }
            worst = std::max(worst, std::abs(val_[p] - mirror));
        }
    }
    return worst / scale;
}

} // namespace grushin
