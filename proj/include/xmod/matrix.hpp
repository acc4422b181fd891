#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "xmod/error.hpp"
#include "xmod/integer.hpp"

namespace xmod {

// Dense row-major integer matrix.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        IntMatrix m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw DomainError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_)
            throw DomainError("matrix dimension mismatch in product");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& v = a(i, k);
                if (v == 0)
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += v * b(k, j);
            }
        return c;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != cols_)
            throw DomainError("vector length mismatch");
        std::vector<Int> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0)
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

// Row-compressed sparse integer matrix; entries within a row are sorted by
// column and nonzero.
class SparseIntMatrix {
  public:
    using Entry = std::pair<std::size_t, Int>;

    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const std::vector<Entry>& row(std::size_t i) const { return rows_[i]; }

    // Accumulates into (i, j); call normalize() once all entries are in.
    void add(std::size_t i, std::size_t j, const Int& v) {
        if (i >= rows_.size() || j >= cols_)
            throw DomainError("sparse entry out of range");
        rows_[i].emplace_back(j, v);
    }

    void normalize() {
        for (auto& r : rows_) {
            std::sort(r.begin(), r.end(),
                      [](const Entry& a, const Entry& b) { return a.first < b.first; });
            std::vector<Entry> merged;
            for (auto& e : r) {
                if (!merged.empty() && merged.back().first == e.first)
                    merged.back().second += e.second;
                else
                    merged.push_back(std::move(e));
            }
            std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
            r = std::move(merged);
        }
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : rows_)
            n += r.size();
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    IntMatrix to_dense() const {
        IntMatrix m(rows_.size(), cols_);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (const auto& [j, v] : rows_[i])
                m(i, j) = v;
        return m;
    }

    std::vector<Int> apply(const std::vector<Int>& v) const {
        if (v.size() != cols_)
            throw DomainError("vector length mismatch");
        std::vector<Int> out(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (const auto& [j, a] : rows_[i])
                out[i] += a * v[j];
        return out;
    }

    SparseIntMatrix scaled(const Int& s) const {
        SparseIntMatrix m = *this;
        for (auto& r : m.rows_)
            for (auto& e : r)
                e.second *= s;
        m.normalize();
        return m;
    }

    friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        if (a.cols_ != b.rows())
            throw DomainError("matrix dimension mismatch in product");
        SparseIntMatrix c(a.rows(), b.cols_);
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (const auto& [k, v] : a.rows_[i])
                for (const auto& [j, w] : b.rows_[k])
                    c.rows_[i].emplace_back(j, v * w);
        c.normalize();
        return c;
    }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b) {
        return a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

  private:
    std::size_t cols_ = 0;
    std::vector<std::vector<Entry>> rows_;
};

} // namespace xmod
