#pragma once

// Abs-normal forms of piecewise-affine maps f: R^n -> R^m.
//
//   z    = c + Z x + L |z|
//   f(x) = b + J x + Y |z|
//
// with L strictly lower triangular, so z is produced by one forward sweep.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "absnorm/linalg.h"

namespace absnorm {

/// A caller asked for an operation whose shape requirement (m = n, m = 1)
/// the form does not meet.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AbsNormalForm {
 public:
  AbsNormalForm() = default;

  /// Validates dimensions, finiteness and strict lower triangularity of L.
  /// n is the column count of Z and J, which must agree; an s = 0 form
  /// still carries n through a 0 x n Z.
  AbsNormalForm(Vector c, Vector b, Matrix Z, Matrix L, Matrix J, Matrix Y);

  std::size_t n() const { return n_; }
  std::size_t m() const { return b_.size(); }
  std::size_t s() const { return c_.size(); }

  const Vector& c() const { return c_; }
  const Vector& b() const { return b_; }
  const Matrix& Z() const { return Z_; }
  const Matrix& L() const { return L_; }
  const Matrix& J() const { return J_; }
  const Matrix& Y() const { return Y_; }

  bool operator==(const AbsNormalForm&) const = default;

 private:
  std::size_t n_ = 0;
  Vector c_, b_;
  Matrix Z_, L_, J_, Y_;
};

/// Derived quantities that move the strictly lower triangular coupling out
/// of the switching equation:
///
///   c = (I-L0)^-1 c0       b = b0 + Y0 c
///   L = (I-L0)^-1 (I+L0)   Y = Y0 (I + L)
///   Z = (I-L0)^-1 Z0       J = J0 + Y0 Z
///
/// Every member has the shape of its namesake in the source form.
struct AuxiliaryQuantities {
  Vector c;
  Vector b;
  Matrix L;  // unit lower triangular
  Matrix Z;
  Matrix Y;
  Matrix J;
};

/// Available when m = n and the auxiliary J is nonsingular:
///   c = c_aux - Z_aux J_aux^-1 b_aux,  S = L_aux - Z_aux J_aux^-1 Y_aux.
struct ReducedData {
  Vector c;
  Matrix S;
};

/// Positive/negative parts of a switching vector: z = u - w, |z| = u + w.
struct SignDecomposition {
  Vector z;
  Vector u;
  Vector w;
};

SignDecomposition sign_decomposition(std::span<const double> z);

Vector switching_vector(const AbsNormalForm& form, std::span<const double> x);
Vector evaluate(const AbsNormalForm& form, std::span<const double> x);

AuxiliaryQuantities auxiliary(const AbsNormalForm& form);

/// Throws ShapeError unless m = n; empty when J_aux is singular.
std::optional<ReducedData> reduced(const AbsNormalForm& form,
                                   const AuxiliaryQuantities& aux);

/// Same Z, L, J, Y with c and b zeroed.  For m = 1 this encodes the horizon
/// (recession) function of f.
AbsNormalForm horizon(const AbsNormalForm& form);

bool is_simply_switched(const AbsNormalForm& form);

enum class InstancePreset { kExample63, kExample64 };

/// Random root-finding instance with s = n: c, b, Y standard normal rounded to
/// integers, J = I, Z = 0, L with ones on the first subdiagonal.  Both presets
/// share this recipe.
AbsNormalForm random_instance(std::size_t n, std::uint64_t seed,
                              InstancePreset preset);

/// f(x) = |...||1000 x1| + 1000 x2| + ... + 1000 xn| + 1.
AbsNormalForm nested_abs_instance(std::size_t n);

}  // namespace absnorm
