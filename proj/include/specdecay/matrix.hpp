#ifndef SPECDECAY_MATRIX_HPP
#define SPECDECAY_MATRIX_HPP

#include "specdecay/cplx.hpp"
#include "specdecay/precision.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace specdecay {

// Dense complex matrix, column-major (the SVD and the operator builds are
// column algorithms).
class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t rows, std::size_t cols, mpfr_prec_t prec)
        : rows_(rows), cols_(cols), prec_(prec) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("ComplexMatrix: empty dimension");
        data_.reserve(rows * cols);
        for (std::size_t i = 0; i < rows * cols; ++i) data_.emplace_back(prec);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    mpfr_prec_t prec() const { return prec_; }

    Cplx& at(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const Cplx& at(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    Cplx* col(std::size_t j) { return &data_[j * rows_]; }
    const Cplx* col(std::size_t j) const { return &data_[j * rows_]; }

    bool all_finite() const {
        for (const auto& z : data_)
            if (!z.is_finite()) return false;
        return true;
    }

    static ComplexMatrix identity(std::size_t n, mpfr_prec_t prec) {
        ComplexMatrix m(n, n, prec);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i).re = Real(1L, prec);
        return m;
    }

    // Copy at a (possibly different) working precision.
    ComplexMatrix at_precision(mpfr_prec_t p) const {
        ComplexMatrix m(rows_, cols_, p);
        for (std::size_t j = 0; j < cols_; ++j)
            for (std::size_t i = 0; i < rows_; ++i) {
                m.at(i, j).re = Real(p);
                mpfr_set(m.at(i, j).re.raw(), at(i, j).re.raw(), MPFR_RNDN);
                m.at(i, j).im = Real(p);
                mpfr_set(m.at(i, j).im.raw(), at(i, j).im.raw(), MPFR_RNDN);
            }
        return m;
    }

    // Submatrix dropping the first `k` rows and columns.
    ComplexMatrix drop_leading(std::size_t k) const {
        if (k >= rows_ || k >= cols_) throw std::invalid_argument("drop_leading: nothing left");
        ComplexMatrix m(rows_ - k, cols_ - k, prec_);
        for (std::size_t j = k; j < cols_; ++j)
            for (std::size_t i = k; i < rows_; ++i) m.at(i - k, j - k) = at(i, j);
        return m;
    }

    // Largest |entry| above the diagonal (strictly), as a cheap triangularity gauge.
    Real max_strict_upper_abs() const {
        Real m = bound(0.0);
        for (std::size_t j = 1; j < cols_; ++j)
            for (std::size_t i = 0; i < j && i < rows_; ++i) m = max(m, bound_abs(at(i, j)));
        return m;
    }

    static Real bound_abs(const Cplx& z) {
        Real r(kBoundPrec);
        mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDU);
        return r;
    }

  private:
    std::size_t rows_, cols_;
    mpfr_prec_t prec_;
    std::vector<Cplx> data_;
};

}  // namespace specdecay

#endif
