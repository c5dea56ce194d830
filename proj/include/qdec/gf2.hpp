#pragma once

// Bit-packed dense linear algebra over F2. Rows are stored as arrays of
// 64-bit words, LSB-first within a word. Everything is value-semantic and
// exact; there are no tolerances anywhere in this header.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdec {

namespace detail {

inline std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace detail

class BinaryVector {
 public:
  BinaryVector() = default;

  explicit BinaryVector(std::size_t len)
      : len_(len), words_(detail::words_for(len), 0) {}

  static BinaryVector from_words(std::size_t len, std::vector<uint64_t> words) {
    if (words.size() != detail::words_for(len)) {
      throw std::invalid_argument("BinaryVector: word count mismatch");
    }
    BinaryVector v;
    v.len_ = len;
    v.words_ = std::move(words);
    if (len & 63) {
      v.words_.back() &= (uint64_t{1} << (len & 63)) - 1;
    }
    return v;
  }

  // Parses a contiguous 0/1 string, e.g. "010110".
  static BinaryVector from_string(std::string_view s) {
    BinaryVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BinaryVector: expected 0/1 string");
      }
    }
    return v;
  }

  std::size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value) {
    check_index(i);
    const uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) {
    check_index(i);
    words_[i >> 6] ^= uint64_t{1} << (i & 63);
  }

  BinaryVector& operator^=(const BinaryVector& other) {
    if (other.len_ != len_) {
      throw std::invalid_argument("BinaryVector: length mismatch in xor");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= other.words_[w];
    }
    return *this;
  }

  friend BinaryVector operator^(BinaryVector a, const BinaryVector& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BinaryVector&) const = default;

  std::size_t weight() const {
    std::size_t w = 0;
    for (uint64_t word : words_) w += std::popcount(word);
    return w;
  }

  bool is_zero() const {
    for (uint64_t word : words_) {
      if (word != 0) return false;
    }
    return true;
  }

  // Standard inner product <u,v> over F2 (not the symplectic one).
  int dot(const BinaryVector& other) const {
    if (other.len_ != len_) {
      throw std::invalid_argument("BinaryVector: length mismatch in dot");
    }
    uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  const std::vector<uint64_t>& words() const { return words_; }

  // Word starting at an arbitrary bit offset; bits past the end read as 0.
  uint64_t word_at(std::size_t bit_offset) const {
    const std::size_t w = bit_offset >> 6;
    const unsigned shift = bit_offset & 63;
    if (w >= words_.size()) return 0;
    uint64_t lo = words_[w] >> shift;
    if (shift != 0 && w + 1 < words_.size()) {
      lo |= words_[w + 1] << (64 - shift);
    }
    return lo;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= len_) throw std::out_of_range("BinaryVector: index out of range");
  }

  std::size_t len_ = 0;
  std::vector<uint64_t> words_;
};

class BinaryMatrix {
 public:
  BinaryMatrix() = default;

  BinaryMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(detail::words_for(cols)),
        words_(rows * stride_, 0) {}

  static BinaryMatrix identity(std::size_t n) {
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BinaryMatrix from_rows(const std::vector<BinaryVector>& rows) {
    if (rows.empty()) return BinaryMatrix();
    BinaryMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
  }

  static BinaryMatrix from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BinaryVector> vs;
    vs.reserve(rows.size());
    for (auto s : rows) vs.push_back(BinaryVector::from_string(s));
    return from_rows(vs);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    check(r, c);
    return (words_[r * stride_ + (c >> 6)] >> (c & 63)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool value) {
    check(r, c);
    const uint64_t mask = uint64_t{1} << (c & 63);
    uint64_t& w = words_[r * stride_ + (c >> 6)];
    if (value) {
      w |= mask;
    } else {
      w &= ~mask;
    }
  }

  BinaryVector row(std::size_t r) const {
    if (r >= rows_) throw std::out_of_range("BinaryMatrix: row out of range");
    BinaryVector v(cols_);
    copy_row_words(r, v);
    return v;
  }

  void set_row(std::size_t r, const BinaryVector& v) {
    if (r >= rows_) throw std::out_of_range("BinaryMatrix: row out of range");
    if (v.size() != cols_) {
      throw std::invalid_argument("BinaryMatrix: row length mismatch");
    }
    for (std::size_t w = 0; w < stride_; ++w) {
      words_[r * stride_ + w] = v.words()[w];
    }
  }

  void append_row(const BinaryVector& v) {
    if (rows_ == 0 && cols_ == 0) {
      *this = BinaryMatrix(0, v.size());
    }
    if (v.size() != cols_) {
      throw std::invalid_argument("BinaryMatrix: row length mismatch");
    }
    words_.resize(words_.size() + stride_, 0);
    ++rows_;
    set_row(rows_ - 1, v);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < stride_; ++w) {
      std::swap(words_[a * stride_ + w], words_[b * stride_ + w]);
    }
  }

  // row dst ^= row src
  void xor_row_into(std::size_t src, std::size_t dst) {
    for (std::size_t w = 0; w < stride_; ++w) {
      words_[dst * stride_ + w] ^= words_[src * stride_ + w];
    }
  }

  void xor_into_row(std::size_t r, const BinaryVector& v) {
    if (v.size() != cols_) {
      throw std::invalid_argument("BinaryMatrix: row length mismatch");
    }
    for (std::size_t w = 0; w < stride_; ++w) {
      words_[r * stride_ + w] ^= v.words()[w];
    }
  }

  bool row_is_zero(std::size_t r) const {
    for (std::size_t w = 0; w < stride_; ++w) {
      if (words_[r * stride_ + w] != 0) return false;
    }
    return true;
  }

  bool operator==(const BinaryMatrix&) const = default;

  BinaryMatrix transposed() const {
    BinaryMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) t.set(c, r, true);
      }
    }
    return t;
  }

  // <row r, v> over F2
  int row_dot(std::size_t r, const BinaryVector& v) const {
    if (v.size() != cols_) {
      throw std::invalid_argument("BinaryMatrix: length mismatch in row_dot");
    }
    uint64_t acc = 0;
    for (std::size_t w = 0; w < stride_; ++w) {
      acc ^= words_[r * stride_ + w] & v.words()[w];
    }
    return std::popcount(acc) & 1;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      s += row(r).to_string();
      s += '\n';
    }
    return s;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw std::out_of_range("BinaryMatrix: index out of range");
    }
  }

  void copy_row_words(std::size_t r, BinaryVector& v) const {
    auto& dst = const_cast<std::vector<uint64_t>&>(v.words());
    for (std::size_t w = 0; w < stride_; ++w) {
      dst[w] = words_[r * stride_ + w];
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<uint64_t> words_;
};

inline BinaryMatrix vstack(const BinaryMatrix& top, const BinaryMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) {
    throw std::invalid_argument("vstack: column count mismatch");
  }
  BinaryMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) out.set_row(r, top.row(r));
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    out.set_row(top.rows() + r, bottom.row(r));
  }
  return out;
}

inline BinaryMatrix mat_mul(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul: inner dimension mismatch");
  }
  BinaryMatrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.get(r, k)) c.xor_into_row(r, b.row(k));
    }
  }
  return c;
}

inline BinaryVector mat_vec_mul(const BinaryMatrix& m, const BinaryVector& v) {
  if (m.cols() != v.size()) {
    throw std::invalid_argument("mat_vec_mul: dimension mismatch");
  }
  BinaryVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row_dot(r, v)) out.set(r, true);
  }
  return out;
}

struct RowReduction {
  BinaryMatrix reduced;              // reduced row-echelon form
  std::vector<std::size_t> pivots;   // pivot columns, strictly increasing
  BinaryMatrix transform;            // transform * input == reduced
};

// Full RREF with row-operation tracking: transform * m == reduced.
inline RowReduction row_reduce(const BinaryMatrix& m) {
  RowReduction out;
  out.reduced = m;
  out.transform = BinaryMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && !out.reduced.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    out.reduced.swap_rows(r, pivot);
    out.transform.swap_rows(r, pivot);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && out.reduced.get(i, c)) {
        out.reduced.xor_row_into(r, i);
        out.transform.xor_row_into(r, i);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

// Incremental row-space accumulator. Rows are kept in echelon form keyed by
// pivot column, so membership tests and rank growth checks are O(rank).
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  explicit RowSpace(const BinaryMatrix& m) : cols_(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) insert(m.row(r));
  }

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  // Reduces v against the current basis; returns the residual.
  BinaryVector reduce(BinaryVector v) const {
    if (v.size() != cols_) {
      throw std::invalid_argument("RowSpace: length mismatch");
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v.get(pivots_[i])) v ^= rows_[i];
    }
    return v;
  }

  bool contains(const BinaryVector& v) const { return reduce(v).is_zero(); }

  // Inserts v if it enlarges the space. Returns true when rank grew.
  bool insert(const BinaryVector& v) {
    BinaryVector res = reduce(v);
    if (res.is_zero()) return false;
    std::size_t pivot = 0;
    while (!res.get(pivot)) ++pivot;
    rows_.push_back(res);
    pivots_.push_back(pivot);
    return true;
  }

 private:
  std::size_t cols_;
  std::vector<BinaryVector> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const BinaryMatrix& m) {
  RowSpace space(m);
  return space.rank();
}

inline bool in_rowspace(const BinaryMatrix& m, const BinaryVector& v) {
  if (v.size() != m.cols()) {
    throw std::invalid_argument("in_rowspace: length mismatch");
  }
  RowSpace space(m);
  return space.contains(v);
}

// Completes an independent set of rows to a basis of F2^ambient_dim using
// standard unit vectors at non-pivot columns, in increasing column order.
inline BinaryMatrix complete_basis(const BinaryMatrix& basis,
                                   std::size_t ambient_dim) {
  if (basis.rows() > 0 && basis.cols() != ambient_dim) {
    throw std::invalid_argument("complete_basis: column count != ambient_dim");
  }
  RowReduction red = row_reduce(basis);
  if (red.pivots.size() != basis.rows()) {
    throw std::invalid_argument("complete_basis: input rows are dependent");
  }
  BinaryMatrix out(ambient_dim - basis.rows(), ambient_dim);
  std::size_t next = 0;
  std::size_t pi = 0;
  for (std::size_t c = 0; c < ambient_dim; ++c) {
    if (pi < red.pivots.size() && red.pivots[pi] == c) {
      ++pi;
      continue;
    }
    out.set(next++, c, true);
  }
  return out;
}

// Basis of {v : m v^T = 0}, one row per non-pivot column of the RREF.
inline BinaryMatrix nullspace_basis(const BinaryMatrix& m) {
  RowReduction red = row_reduce(m);
  const std::size_t r = red.pivots.size();
  BinaryMatrix out(m.cols() - r, m.cols());
  std::size_t next = 0;
  std::size_t pi = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (pi < red.pivots.size() && red.pivots[pi] == c) {
      ++pi;
      continue;
    }
    out.set(next, c, true);
    for (std::size_t i = 0; i < r; ++i) {
      if (red.reduced.get(i, c)) out.set(next, red.pivots[i], true);
    }
    ++next;
  }
  return out;
}

}  // namespace qdec
