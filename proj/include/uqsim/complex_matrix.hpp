#ifndef UQSIM_COMPLEX_MATRIX_HPP
#define UQSIM_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace uqsim {

using Complex = std::complex<double>;

// Small dense complex matrix, row-major.  The simulator only ever needs
// 2x2, 4x4 and 4x1/1x4 shapes; all binary operations check shapes and
// throw std::invalid_argument on mismatch.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Complex* data() { return a_.data(); }
  const Complex* data() const { return a_.data(); }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(Complex factor) const;

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;

  // max_ij |a_ij - b_ij|
  double max_abs_diff(const ComplexMatrix& other) const;
  bool is_hermitian(double tol) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

// Kronecker product of two 2x2 matrices; the left factor acts on the
// first (signal) qubit in the |signal,idler> index convention.
ComplexMatrix tensor2(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace uqsim

#endif
