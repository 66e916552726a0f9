#pragma once

#include <cassert>
#include <cstddef>
#include <numeric>
#include <vector>

namespace ordsec {

/// Dense row-major n x n matrix.
template <class T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) {
        assert(i < n_ && j < n_);
        return data_[i * n_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        assert(i < n_ && j < n_);
        return data_[i * n_ + j];
    }

    T row_sum(std::size_t i) const {
        return std::accumulate(data_.begin() + i * n_, data_.begin() + (i + 1) * n_, T{});
    }
    T total() const { return std::accumulate(data_.begin(), data_.end(), T{}); }

    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<T> data_;
};

}  // namespace ordsec
