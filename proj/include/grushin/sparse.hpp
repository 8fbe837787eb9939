#pragma once

#include <span>
#include <vector>

namespace grushin {

// Symmetric sparse matrix in CSR form.  Assembled once, applied many times;
// all mutation happens through from_triplets.
class SparseOperator {
public:
    SparseOperator() = default;

    // Duplicate (row,col) entries are summed.
    static SparseOperator from_triplets(
        int n, std::vector<std::tuple<int, int, double>> triplets);

    int size() const { return n_; }
    std::size_t nonzeros() const { return val_.size(); }

    void multiply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> multiply(std::span<const double> x) const;

    // x^T A y
    double inner(std::span<const double> x, std::span<const double> y) const;

    double diagonal(int i) const;
    std::vector<double> diagonal() const;

    // max over stored pairs of |a_ij - a_ji| / max|a|; 0 for empty.
    double symmetry_error() const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (int r = 0; r < n_; ++r)
            for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
                fn(r, col_[p], val_[p]);
    }

private:
    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_;
    std::vector<double> val_;
};

} // namespace grushin
