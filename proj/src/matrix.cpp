#include "diffalg/matrix.hpp"

#include <sstream>

#include "diffalg/errors.hpp"

namespace diffalg {

Mat::Mat(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  a_.assign(rows_ * cols_, ring_->zero());
}

Mat Mat::identity(const RingPtr& r, std::size_t n) {
  Mat m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = r->one();
  return m;
}

Mat Mat::zero(const RingPtr& r, std::size_t rows, std::size_t cols) {
  return Mat(r, rows, cols);
}

Mat Mat::unit(const RingPtr& r, std::size_t n, std::size_t i, std::size_t j) {
  Mat m(r, n, n);
  m.at(i, j) = r->one();
  return m;
}

namespace {
void check_shape(const Mat& a, const Mat& b, bool for_mul) {
  if (a.ring().get() != b.ring().get())
    fail("RingMismatch", "matrices live over different rings");
  if (for_mul ? (a.cols() != b.rows())
              : (a.rows() != b.rows() || a.cols() != b.cols()))
    fail("ShapeMismatch", "matrix shapes are incompatible");
}
}  // namespace

Mat Mat::operator+(const Mat& o) const {
  check_shape(*this, o, false);
  Mat r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_shape(*this, o, false);
  Mat r = *this;
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& e : r.a_) e = -e;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  check_shape(*this, o, true);
  Mat r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
    }
  return r;
}

Mat Mat::operator*(const RingElem& s) const {
  Mat r = *this;
  for (auto& e : r.a_) e = e * s;
  return r;
}

Mat Mat::operator*(const Rat& s) const {
  Mat r = *this;
  for (auto& e : r.a_) e = e * s;
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (a_[k] != o.a_[k]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& e : a_)
    if (!e.is_zero()) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::kron(const Mat& o) const {
  if (ring_.get() != o.ring_.get())
    fail("RingMismatch", "matrices live over different rings");
  Mat r(ring_, rows_ * o.rows_, cols_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero()) continue;
      for (std::size_t p = 0; p < o.rows_; ++p)
        for (std::size_t q = 0; q < o.cols_; ++q)
          r.at(i * o.rows_ + p, j * o.cols_ + q) = at(i, j) * o.at(p, q);
    }
  return r;
}

RingElem Mat::trace() const {
  if (rows_ != cols_) fail("ShapeMismatch", "trace of a non-square matrix");
  RingElem t = ring_->zero();
  for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
  return t;
}

Mat Mat::d() const {
  Mat r = *this;
  for (auto& e : r.a_) e = e.d();
  return r;
}

Mat Mat::commutator(const Mat& o) const { return *this * o - o * *this; }

RingElem Mat::det() const {
  if (rows_ != cols_)
    fail("ShapeMismatch", "determinant of a non-square matrix");
  if (rows_ == 0) return ring_->one();
  if (rows_ == 1) return at(0, 0);
  // cofactor expansion along the first row
  RingElem acc = ring_->zero();
  for (std::size_t j = 0; j < cols_; ++j) {
    if (at(0, j).is_zero()) continue;
    Mat minor(ring_, rows_ - 1, cols_ - 1);
    for (std::size_t i = 1; i < rows_; ++i) {
      std::size_t jj = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (k == j) continue;
        minor.at(i - 1, jj++) = at(i, k);
      }
    }
    RingElem term = at(0, j) * minor.det();
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

std::optional<Mat> Mat::inverse() const {
  if (rows_ != cols_) fail("ShapeMismatch", "inverse of a non-square matrix");
  RingElem dt = det();
  auto dinv = dt.inverse();
  if (!dinv) return std::nullopt;
  std::size_t n = rows_;
  Mat adj(ring_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat minor(ring_, n - 1, n - 1);
      std::size_t ii = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t jj = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(ii, jj++) = at(r, c);
        }
        ++ii;
      }
      RingElem cof = minor.det();
      if ((i + j) % 2 == 1) cof = -cof;
      adj.at(j, i) = cof;  // transposed placement
    }
  return adj * *dinv;
}

std::optional<RingElem> Mat::as_scalar() const {
  if (rows_ != cols_ || rows_ == 0) return std::nullopt;
  const RingElem& c = at(0, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j ? at(i, i) != c : !at(i, j).is_zero()) return std::nullopt;
    }
  return c;
}

Mat Mat::map(const RingHom& h) const {
  Mat r(h.target(), rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = h.apply(at(i, j));
  return r;
}

Mat Mat::promote_to(const RingPtr& target) const {
  Mat r(target, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r.at(i, j) = promote(at(i, j), target);
  return r;
}

std::vector<RingElem> Mat::vec() const {
  std::vector<RingElem> v;
  v.reserve(a_.size());
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

Mat Mat::unvec(const RingPtr& r, const std::vector<RingElem>& v,
               std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    fail("ShapeMismatch", "vector length does not match matrix shape");
  Mat m(r, rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = v[j * rows + i];
  return m;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << at(i, j).to_string();
  }
  os << "]";
  return os.str();
}

std::optional<std::vector<RingElem>> solve_rat_system(
    std::vector<std::vector<Rat>> m, std::vector<RingElem> b,
    const RingPtr& ring) {
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows ? m[0].size() : 0;
  std::vector<long> pivot_row_of_col(ncols, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t pr = row;
    while (pr < nrows && m[pr][col] == 0) ++pr;
    if (pr == nrows) continue;
    std::swap(m[row], m[pr]);
    std::swap(b[row], b[pr]);
    Rat inv = Rat(1) / m[row][col];
    for (auto& c : m[row]) c *= inv;
    b[row] = b[row] * inv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] -= f * m[row][c];
      b[r] = b[r] - b[row] * f;
    }
    pivot_row_of_col[col] = static_cast<long>(row);
    ++row;
  }
  for (std::size_t r = row; r < nrows; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  std::vector<RingElem> x(ncols, ring->zero());
  for (std::size_t c = 0; c < ncols; ++c)
    if (pivot_row_of_col[c] >= 0) x[c] = b[pivot_row_of_col[c]];
  return x;
}

}  // namespace diffalg
