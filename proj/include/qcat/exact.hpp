#pragma once

// Exact integer / rational linear algebra and integer polynomials.
// Everything here is desk-scale (matrices up to 8x8, polynomial degree <= 8),
// so we prioritize exactness and canonical forms over speed.

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct DegreeTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator*(const Int& c) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  std::vector<Int> apply(const std::vector<Int>& v) const;
  Int trace() const;
  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

/// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}
  explicit RatMatrix(const IntMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  /// In-place reduced row echelon form; returns the rank.
  int rref();

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

/// Basis (rows) of the rational kernel of m, in reduced echelon form.
RatMatrix rational_kernel(const RatMatrix& m);
/// Reduced-echelon basis (rows) of the row span of m.
RatMatrix row_space(const RatMatrix& m);

/// Smith normal form over Z: U*A*V = D with U,V unimodular, D diagonal
/// with d_i | d_{i+1}.
struct SmithForm {
  IntMatrix u, d, v;
};
SmithForm smith_normal_form(const IntMatrix& a);

/// Integer polynomial sum_k c[k] x^k; c.back() != 0 unless zero polynomial.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);
  static IntPolynomial from_ll(std::initializer_list<long long> coeffs);

  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& operator[](int k) const { return c_[k]; }
  bool is_zero() const { return c_.empty(); }
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  Rat eval(const Rat& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  IntPolynomial derivative() const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;

  /// Exact division; nullopt if o does not divide *this.
  std::optional<IntPolynomial> divide_exact(const IntPolynomial& o) const;

  /// Coefficients reversed: x^deg * p(1/x), normalized to positive leading coeff.
  IntPolynomial reversal() const;
  bool palindromic_up_to_sign() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  std::vector<Int> c_;
};

/// Characteristic polynomial det(xI - A), exact (Faddeev-LeVerrier).
IntPolynomial char_poly(const IntMatrix& a);

/// Factorization into irreducible factors over Z (monic up to sign), sorted
/// canonically; the product of factors times the content equals p.
/// Throws DegreeTooLarge above degree 8.
struct IntFactorization {
  Int content;  // integer content including sign of the leading coefficient
  std::vector<IntPolynomial> factors;
};
IntFactorization factor_over_Z(const IntPolynomial& p);

/// Complex roots, Newton-polished; degree <= 8.
std::vector<std::complex<double>> poly_roots(const IntPolynomial& p);

/// Real algebraic number: an irreducible minimal polynomial together with an
/// isolating rational interval (sign change at the endpoints) and a cached
/// double approximation.
struct AlgebraicReal {
  IntPolynomial minpoly;
  Rat lo, hi;
  double approx = 0.0;

  /// Bisect the isolating interval until hi-lo <= eps.
  void refine(const Rat& eps);
};

/// Isolating-interval construction around a numeric root guess of an
/// irreducible factor; `sep` bounds the distance to the nearest other root.
AlgebraicReal make_algebraic_real(const IntPolynomial& minpoly, double guess, double sep);

double to_double(const Rat& x);
Rat rat_from_string(const std::string& s);
/// Nearest rational with denominator 2^bits (exact dyadic snap).
Rat rat_from_double_dyadic(double x, int bits = 40);

}  // namespace qcat
