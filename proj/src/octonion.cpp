#include "octoslice/octonion.hpp"

#include <algorithm>
#include <sstream>

namespace octoslice {

Octonion::Octonion(const Coeffs& c) : c_(c) {
  if (!is_finite()) throw DomainError("octonion coefficient is not finite");
}

Octonion::Octonion(std::initializer_list<double> c) {
  if (c.size() > 8) throw PreconditionError("octonion takes at most 8 coefficients");
  std::copy(c.begin(), c.end(), c_.begin());
  if (!is_finite()) throw DomainError("octonion coefficient is not finite");
}

Octonion Octonion::inv() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw DomainError("zero has no inverse");
  return conj() / n2;
}

bool Octonion::is_finite() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return std::isfinite(v); });
}

double dot(const Octonion& a, const Octonion& b) {
  double s = 0.0;
  for (int l = 0; l < 8; ++l) s += a[l] * b[l];
  return s;
}

double distance(const Octonion& a, const Octonion& b) { return (a - b).norm(); }

double angle_between(const Octonion& a, const Octonion& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DomainError("angle with a zero octonion is undefined");
  return std::acos(std::clamp(dot(a, b) / (na * nb), -1.0, 1.0));
}

std::string to_string(const Octonion& x) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (int l = 0; l < 8; ++l) os << (l ? "," : "") << x[l];
  os << ']';
  return os.str();
}

double distance(const ComplexPoint& a, const ComplexPoint& b) {
  return std::hypot(a.alpha - b.alpha, a.beta - b.beta);
}

UnitImaginary::UnitImaginary(const std::array<double, 7>& c) {
  Octonion::Coeffs full{};
  std::copy(c.begin(), c.end(), full.begin() + 1);
  *this = UnitImaginary(Octonion(full));
}

UnitImaginary::UnitImaginary(const Octonion& x) {
  if (x.re() != 0.0) throw PreconditionError("unit imaginary must have zero real part");
  const double n = x.norm();
  if (std::abs(n - 1.0) > kUnitNormalizeTol)
    throw PreconditionError("vector is not a unit imaginary (norm " + std::to_string(n) + ")");
  v_ = x / n;
}

UnitImaginary UnitImaginary::basis(int l) {
  if (l < 1 || l > 7) throw PreconditionError("imaginary basis index must be 1..7");
  return UnitImaginary(Octonion::basis(l));
}

UnitImaginary UnitImaginary::of(const Octonion& x, double eps_im) {
  const Octonion im = x.im();
  const double n = im.norm();
  if (!(n > eps_im)) throw DomainError("imaginary part below threshold");
  UnitImaginary u;
  u.v_ = im / n;
  return u;
}

UnitImaginary UnitImaginary::normalized(const Octonion& x) {
  if (x.re() != 0.0) throw PreconditionError("unit imaginary must have zero real part");
  return of(x, 0.0);
}

std::array<double, 7> UnitImaginary::components() const {
  std::array<double, 7> c{};
  for (int l = 1; l < 8; ++l) c[static_cast<std::size_t>(l - 1)] = v_[l];
  return c;
}

UnitImaginary UnitImaginary::operator-() const {
  UnitImaginary u;
  u.v_ = -v_;
  return u;
}

double dot(const UnitImaginary& a, const UnitImaginary& b) {
  return dot(a.as_octonion(), b.as_octonion());
}

double angle_between(const UnitImaginary& a, const UnitImaginary& b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

ComplexPoint slice_coordinate(const Octonion& x) { return {x.re(), x.im_norm()}; }

OrthoPair::OrthoPair(const UnitImaginary& i, const UnitImaginary& j) : i_(i), j_(j) {
  if (std::abs(dot(i, j)) > kUnitTol) throw PreconditionError("pair units are not orthogonal");
  ij_ = UnitImaginary::normalized(i.as_octonion() * j.as_octonion());
}

Octonion OrthoPair::unit(int k) const {
  switch (k) {
    case 0: return Octonion::real(1.0);
    case 1: return i_.as_octonion();
    case 2: return j_.as_octonion();
    case 3: return ij_.as_octonion();
    default: throw PreconditionError("quaternion slice index must be 0..3");
  }
}

Octonion OrthoPair::embed(const QuatCoords& q) const {
  return Octonion::real(q[0]) + q[1] * i_.as_octonion() + q[2] * j_.as_octonion() +
         q[3] * ij_.as_octonion();
}

QuatCoords OrthoPair::project(const Octonion& x) const {
  return {x.re(), dot(x, i_.as_octonion()), dot(x, j_.as_octonion()), dot(x, ij_.as_octonion())};
}

CdSplit cd_split(const Octonion& x, const OrthoPair& pair, const UnitImaginary& l) {
  for (int k = 1; k < 4; ++k)
    if (std::abs(dot(l.as_octonion(), pair.unit(k))) > kUnitTol)
      throw PreconditionError("splitting unit is not orthogonal to the quaternion slice");
  const Octonion p = pair.embed(pair.project(x));
  // l(l r) = -r by alternativity, so q = -(l r).
  const Octonion q = -(l.as_octonion() * (x - p));
  return {p, q};
}

}  // namespace octoslice
