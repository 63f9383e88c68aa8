#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>

#include "octoslice/errors.hpp"

namespace octoslice {

inline constexpr double kEpsIm = 1e-12;
inline constexpr double kUnitTol = 1e-12;
inline constexpr double kUnitNormalizeTol = 1e-9;

// e_l * e_m = sign * e_index.
struct SignedBasis {
  int sign;
  int index;
  friend constexpr bool operator==(const SignedBasis&, const SignedBasis&) = default;
};

namespace detail {

struct ProductTable {
  std::array<std::array<int, 8>, 8> sign{};
  std::array<std::array<int, 8>, 8> index{};
};

constexpr ProductTable build_product_table() {
  constexpr int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 7, 6}, {2, 4, 6},
                                 {2, 5, 7}, {3, 4, 7}, {3, 6, 5}};
  ProductTable t{};
  for (int l = 0; l < 8; ++l) {
    t.sign[0][l] = 1;
    t.index[0][l] = l;
    t.sign[l][0] = 1;
    t.index[l][0] = l;
  }
  for (int l = 1; l < 8; ++l) {
    t.sign[l][l] = -1;
    t.index[l][l] = 0;
  }
  for (const auto& tr : triples) {
    for (int r = 0; r < 3; ++r) {
      const int a = tr[r], b = tr[(r + 1) % 3], c = tr[(r + 2) % 3];
      t.sign[a][b] = 1;
      t.index[a][b] = c;
      t.sign[b][a] = -1;
      t.index[b][a] = c;
    }
  }
  return t;
}

inline constexpr ProductTable kTable = build_product_table();

}  // namespace detail

constexpr SignedBasis basis_product(int l, int m) {
  if (l < 0 || l > 7 || m < 0 || m > 7) throw PreconditionError("basis index out of range");
  return {detail::kTable.sign[l][m], detail::kTable.index[l][m]};
}

class Octonion {
 public:
  using Coeffs = std::array<double, 8>;

  constexpr Octonion() = default;
  // Rejects non-finite coefficients.
  explicit Octonion(const Coeffs& c);
  Octonion(std::initializer_list<double> c);

  static constexpr Octonion basis(int l) {
    Octonion x;
    x.c_[static_cast<std::size_t>(l)] = 1.0;
    return x;
  }
  static constexpr Octonion real(double a) {
    Octonion x;
    x.c_[0] = a;
    return x;
  }

  constexpr double operator[](int l) const { return c_[static_cast<std::size_t>(l)]; }
  constexpr const Coeffs& coeffs() const { return c_; }

  constexpr double re() const { return c_[0]; }
  constexpr Octonion im() const {
    Octonion x = *this;
    x.c_[0] = 0.0;
    return x;
  }
  constexpr Octonion conj() const {
    Octonion x = *this;
    for (std::size_t l = 1; l < 8; ++l) x.c_[l] = -x.c_[l];
    return x;
  }
  constexpr double norm2() const {
    double s = 0.0;
    for (double v : c_) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }
  double im_norm() const { return std::sqrt(im().norm2()); }
  Octonion inv() const;
  bool is_finite() const;

  constexpr Octonion operator-() const {
    Octonion x = *this;
    for (double& v : x.c_) v = -v;
    return x;
  }
  constexpr Octonion& operator+=(const Octonion& o) {
    for (std::size_t l = 0; l < 8; ++l) c_[l] += o.c_[l];
    return *this;
  }
  constexpr Octonion& operator-=(const Octonion& o) {
    for (std::size_t l = 0; l < 8; ++l) c_[l] -= o.c_[l];
    return *this;
  }
  constexpr Octonion& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }
  constexpr Octonion& operator/=(double s) {
    for (double& v : c_) v /= s;
    return *this;
  }

  friend constexpr Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend constexpr Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend constexpr Octonion operator*(Octonion a, double s) { return a *= s; }
  friend constexpr Octonion operator*(double s, Octonion a) { return a *= s; }
  friend constexpr Octonion operator/(Octonion a, double s) { return a /= s; }
  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;

  // Octonion product. `a * b * c` groups as `(a * b) * c`; spell out every
  // other grouping with explicit parentheses.
  friend constexpr Octonion operator*(const Octonion& a, const Octonion& b) {
    Octonion r;
    for (int l = 0; l < 8; ++l) {
      const double al = a.c_[static_cast<std::size_t>(l)];
      if (al == 0.0) continue;
      for (int m = 0; m < 8; ++m) {
        const double bm = b.c_[static_cast<std::size_t>(m)];
        if (bm == 0.0) continue;
        r.c_[static_cast<std::size_t>(detail::kTable.index[l][m])] +=
            detail::kTable.sign[l][m] * al * bm;
      }
    }
    return r;
  }

 private:
  Coeffs c_{};
};

inline constexpr Octonion mul(const Octonion& a, const Octonion& b) { return a * b; }

double dot(const Octonion& a, const Octonion& b);
double distance(const Octonion& a, const Octonion& b);
double angle_between(const Octonion& a, const Octonion& b);
std::string to_string(const Octonion& x);

struct ComplexPoint {
  double alpha = 0.0;
  double beta = 0.0;

  constexpr ComplexPoint conj() const { return {alpha, -beta}; }
  friend constexpr bool operator==(const ComplexPoint&, const ComplexPoint&) = default;
};

double distance(const ComplexPoint& a, const ComplexPoint& b);

// Point of the imaginary 6-sphere.
class UnitImaginary {
 public:
  UnitImaginary() = default;
  // Normalizes inputs within kUnitNormalizeTol of unit length; rejects others
  // and any nonzero real part.
  explicit UnitImaginary(const std::array<double, 7>& c);
  explicit UnitImaginary(const Octonion& x);

  static UnitImaginary basis(int l);
  // Im(x)/|Im(x)|; DomainError below eps_im.
  static UnitImaginary of(const Octonion& x, double eps_im = kEpsIm);
  // Normalizes an arbitrary nonzero imaginary vector.
  static UnitImaginary normalized(const Octonion& x);

  const Octonion& as_octonion() const { return v_; }
  double operator[](int l) const { return v_[l]; }
  std::array<double, 7> components() const;
  UnitImaginary operator-() const;
  friend bool operator==(const UnitImaginary&, const UnitImaginary&) = default;

 private:
  Octonion v_ = Octonion::basis(1);
};

inline UnitImaginary unit_imaginary_of(const Octonion& x, double eps_im = kEpsIm) {
  return UnitImaginary::of(x, eps_im);
}

double dot(const UnitImaginary& a, const UnitImaginary& b);
double angle_between(const UnitImaginary& a, const UnitImaginary& b);

// α + β·i.
inline Octonion tau(const UnitImaginary& i, const ComplexPoint& z) {
  return Octonion::real(z.alpha) + z.beta * i.as_octonion();
}

// Re(x) + i|Im(x)|.
ComplexPoint slice_coordinate(const Octonion& x);

using QuatCoords = std::array<double, 4>;

// Orthonormal pair (I, J) spanning the quaternion slice {1, I, J, IJ}.
class OrthoPair {
 public:
  OrthoPair(const UnitImaginary& i, const UnitImaginary& j);

  const UnitImaginary& i() const { return i_; }
  const UnitImaginary& j() const { return j_; }
  const UnitImaginary& ij() const { return ij_; }
  // Basis element k of the slice: e0, I, J, IJ.
  Octonion unit(int k) const;
  Octonion embed(const QuatCoords& q) const;
  QuatCoords project(const Octonion& x) const;

 private:
  UnitImaginary i_, j_, ij_;
};

struct CdSplit {
  Octonion p;
  Octonion q;
};

// x = p + l·q with p, q in the quaternion slice of `pair`.
CdSplit cd_split(const Octonion& x, const OrthoPair& pair, const UnitImaginary& l);

}  // namespace octoslice
