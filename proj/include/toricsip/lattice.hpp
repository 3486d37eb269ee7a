#ifndef TORICSIP_LATTICE_HPP
#define TORICSIP_LATTICE_HPP

// Exact integer vectors and matrices, the cost order >_c, the conformal
// order, and integer kernel bases. Everything else in the library is built
// on the types in this header.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toricsip/errors.hpp"

namespace toricsip {

using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

inline int sign(const Integer& x) { return x.sign(); }

}  // namespace detail

// Dense vector of arbitrary-precision integers. The dimension is fixed at
// construction; entries may be modified in place.
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : entries_(n) {}
  explicit IntVector(std::vector<Integer> entries) : entries_(std::move(entries)) {}
  IntVector(std::initializer_list<long long> values) {
    entries_.reserve(values.size());
    for (long long v : values) entries_.emplace_back(v);
  }

  static IntVector unit(std::size_t n, std::size_t i) {
    IntVector e(n);
    e[i] = 1;
    return e;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  Integer& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  auto begin() { return entries_.begin(); }
  auto end() { return entries_.end(); }
  const std::vector<Integer>& entries() const { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Integer& x) { return x.is_zero(); });
  }
  bool is_nonnegative() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Integer& x) { return x.sign() >= 0; });
  }

  IntVector& operator+=(const IntVector& o) {
    detail::require_same_size(size(), o.size(), "IntVector +=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  IntVector& operator-=(const IntVector& o) {
    detail::require_same_size(size(), o.size(), "IntVector -=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  IntVector& operator*=(const Integer& k) {
    for (auto& x : entries_) x *= k;
    return *this;
  }

  friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
  friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
  friend IntVector operator*(const Integer& k, IntVector a) { return a *= k; }
  friend IntVector operator-(IntVector a) {
    for (auto& x : a.entries_) x = -x;
    return a;
  }

  friend bool operator==(const IntVector& a, const IntVector& b) {
    return a.entries_ == b.entries_;
  }
  // Plain lexicographic comparison; used for canonical storage, not as a
  // term order.
  friend bool operator<(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                        b.entries_.begin(), b.entries_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const IntVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i];
    }
    return os << ')';
  }

 private:
  std::vector<Integer> entries_;
};

inline Integer dot(const IntVector& a, const IntVector& b) {
  detail::require_same_size(a.size(), b.size(), "dot");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

inline Integer norm1(const IntVector& a) {
  Integer s = 0;
  for (const auto& x : a) s += abs(x);
  return s;
}

// Componentwise a <= b.
inline bool leq(const IntVector& a, const IntVector& b) {
  detail::require_same_size(a.size(), b.size(), "leq");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

// First nonzero entry positive (the zero vector is left alone).
inline IntVector sign_normalized(IntVector v) {
  for (const auto& x : v) {
    if (x.sign() != 0) {
      if (x.sign() < 0) v = -std::move(v);
      break;
    }
  }
  return v;
}

struct SignSplit {
  IntVector positive;
  IntVector negative;
};

inline SignSplit sign_split(const IntVector& v) {
  SignSplit s{IntVector(v.size()), IntVector(v.size())};
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].sign() > 0) {
      s.positive[i] = v[i];
    } else if (v[i].sign() < 0) {
      s.negative[i] = -v[i];
    }
  }
  return s;
}

// a ⊑ b: same sign in every coordinate and |a_i| <= |b_i|.
inline bool conforms(const IntVector& a, const IntVector& b) {
  detail::require_same_size(a.size(), b.size(), "conforms");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int sa = a[i].sign();
    if (sa == 0) continue;
    const int sb = b[i].sign();
    if (sa != sb) return false;
    if (sa > 0 ? a[i] > b[i] : a[i] < b[i]) return false;
  }
  return true;
}

// Deduplicated, canonically ordered set of vectors. Used for generating
// sets, Gröbner bases, test sets and Graver bases alike.
class VectorSet {
 public:
  VectorSet() = default;
  explicit VectorSet(std::vector<IntVector> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }
  VectorSet(std::initializer_list<IntVector> items)
      : VectorSet(std::vector<IntVector>(items)) {}

  bool insert(IntVector v) {
    auto it = std::lower_bound(items_.begin(), items_.end(), v);
    if (it != items_.end() && *it == v) return false;
    items_.insert(it, std::move(v));
    return true;
  }
  bool contains(const IntVector& v) const {
    return std::binary_search(items_.begin(), items_.end(), v);
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const IntVector& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<IntVector>& items() const { return items_; }

  friend bool operator==(const VectorSet& a, const VectorSet& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<IntVector> items_;
};

// Rectangular matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      detail::require_same_size(r.size(), cols_, "IntMatrix row");
      for (long long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      detail::require_same_size(rows[i].size(), cols, "IntMatrix row");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(std::vector<Integer>(data_.begin() + i * cols_,
                                          data_.begin() + (i + 1) * cols_));
  }
  IntVector column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntVector operator*(const IntVector& v) const {
    detail::require_same_size(cols_, v.size(), "IntMatrix * IntVector");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Integer s = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const Integer& a = data_[i * cols_ + j];
        if (!a.is_zero() && !v[j].is_zero()) s += a * v[j];
      }
      out[i] = std::move(s);
    }
    return out;
  }

  bool in_kernel(const IntVector& v) const { return (*this * v).is_zero(); }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Total order on N^n: x >_c y iff c·x > c·y, or the dot products tie and the
// first nonzero entry of x - y (scanning coordinates in tie-break priority
// order) is positive. The default priority is left to right. Costs must be
// non-negative so that the order is a well-order and Buchberger completion
// terminates.
class CostOrder {
 public:
  CostOrder() = default;
  explicit CostOrder(IntVector cost) : CostOrder(std::move(cost), {}) {}
  CostOrder(IntVector cost, std::vector<std::size_t> priority)
      : cost_(std::move(cost)), priority_(std::move(priority)) {
    for (const auto& c : cost_) {
      if (c.sign() < 0) {
        throw PreconditionError("CostOrder: cost vector must be non-negative");
      }
    }
    if (priority_.empty()) {
      priority_.resize(cost_.size());
      std::iota(priority_.begin(), priority_.end(), std::size_t{0});
    }
    std::vector<std::size_t> check = priority_;
    std::sort(check.begin(), check.end());
    for (std::size_t i = 0; i < check.size(); ++i) {
      if (check[i] != i || check.size() != cost_.size()) {
        throw PreconditionError("CostOrder: tie-break priority is not a permutation");
      }
    }
  }

  // Order in which coordinate `first` is compared before all others; used
  // for the elimination orders of the toric saturation.
  static CostOrder elimination(std::size_t n, std::size_t first) {
    std::vector<std::size_t> priority{first};
    for (std::size_t i = 0; i < n; ++i) {
      if (i != first) priority.push_back(i);
    }
    return CostOrder(IntVector::unit(n, first), std::move(priority));
  }

  const IntVector& cost() const { return cost_; }
  const std::vector<std::size_t>& priority() const { return priority_; }
  std::size_t dimension() const { return cost_.size(); }

  // Sign of a direction t = x - y: greater iff x >_c y. Translation
  // invariance of >_c means this is all any comparison needs.
  std::strong_ordering direction(const IntVector& t) const {
    detail::require_same_size(t.size(), cost_.size(), "CostOrder");
    const Integer d = dot(cost_, t);
    if (d.sign() != 0) return d.sign() > 0 ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
    for (std::size_t i : priority_) {
      const int s = t[i].sign();
      if (s != 0) return s > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
  }

  std::strong_ordering compare(const IntVector& u, const IntVector& v) const {
    detail::require_same_size(u.size(), cost_.size(), "CostOrder::compare");
    detail::require_same_size(v.size(), cost_.size(), "CostOrder::compare");
    if (!u.is_nonnegative() || !v.is_nonnegative()) {
      throw PreconditionError("CostOrder::compare: operands must be non-negative");
    }
    return direction(u - v);
  }

  friend bool operator==(const CostOrder& a, const CostOrder& b) {
    return a.cost_ == b.cost_ && a.priority_ == b.priority_;
  }

 private:
  IntVector cost_;
  std::vector<std::size_t> priority_;
};

// Lattice basis of {v in Z^n : A v = 0}, computed by unimodular column
// reduction of A (carrying the transformation alongside), followed by a
// greedy pairwise size reduction of the resulting basis.
inline std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<IntVector> work(n);  // columns of A
  std::vector<IntVector> trans(n);  // columns of the unimodular transform
  for (std::size_t j = 0; j < n; ++j) {
    work[j] = a.column(j);
    trans[j] = IntVector::unit(n, j);
  }

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < m && pivot < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t k = pivot; k < n; ++k) {
        if (work[k][i].is_zero()) continue;
        if (best == n || abs(work[k][i]) < abs(work[best][i])) best = k;
      }
      if (best == n) break;  // row already zero on the free columns
      std::swap(work[pivot], work[best]);
      std::swap(trans[pivot], trans[best]);
      bool cleared = true;
      for (std::size_t k = pivot + 1; k < n; ++k) {
        if (work[k][i].is_zero()) continue;
        const Integer q = work[k][i] / work[pivot][i];
        work[k] -= q * work[pivot];
        trans[k] -= q * trans[pivot];
        if (!work[k][i].is_zero()) cleared = false;
      }
      if (cleared) {
        ++pivot;
        break;
      }
    }
  }

  std::vector<IntVector> basis(trans.begin() + static_cast<std::ptrdiff_t>(pivot), trans.end());

  // Size reduction: replace b_i by b_i ± b_j while that shrinks its 1-norm.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        const Integer base = norm1(basis[i]);
        IntVector plus = basis[i] + basis[j];
        if (norm1(plus) < base) {
          basis[i] = std::move(plus);
          changed = true;
          continue;
        }
        IntVector minus = basis[i] - basis[j];
        if (norm1(minus) < base) {
          basis[i] = std::move(minus);
          changed = true;
        }
      }
    }
  }
  for (auto& b : basis) b = sign_normalized(std::move(b));
  return basis;
}

// Rank over the rationals, by fraction-free elimination.
inline std::size_t rank(const IntMatrix& a) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t k = r + 1; k < rows.size(); ++k) {
      if (rows[k][col].is_zero()) continue;
      const Integer f = rows[k][col];
      const Integer g = rows[r][col];
      rows[k] = g * rows[k] - f * rows[r];
    }
    ++r;
  }
  return r;
}

}  // namespace toricsip

#endif  // TORICSIP_LATTICE_HPP
