#include <doctest.h>

#include <cmath>

#include "absnorm/anf.h"
#include "forms.h"

using namespace absnorm;

namespace {

void check_close(const Matrix& a, const Matrix& b, double tol) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) CHECK(std::abs(a(i, j) - b(i, j)) <= tol);
}

void check_close(const Vector& a, const Vector& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("construction validates shapes") {
  CHECK_NOTHROW(testforms::nested_scalar());
  CHECK_THROWS_AS(AbsNormalForm({1}, {0}, Matrix{{1}}, Matrix{{1}}, Matrix{{1}}, Matrix{{1}}),
                  StructureError);
  CHECK_THROWS_AS(AbsNormalForm({1, 2}, {0}, Matrix{{1}}, Matrix{{0}}, Matrix{{1}}, Matrix{{1}}),
                  DimensionError);
  CHECK_THROWS_AS(
      AbsNormalForm({1}, {0}, Matrix{{1, 0}}, Matrix{{0}}, Matrix{{1}}, Matrix{{1}}),
      DimensionError);
  CHECK_THROWS_AS(
      AbsNormalForm({NAN}, {0}, Matrix{{1}}, Matrix{{0}}, Matrix{{1}}, Matrix{{1}}),
      std::invalid_argument);
  const AbsNormalForm f = testforms::nested_scalar();
  CHECK(f.n() == 1);
  CHECK(f.m() == 1);
  CHECK(f.s() == 3);
}

TEST_CASE("switching vector and evaluation") {
  const AbsNormalForm f = testforms::nested_scalar();
  CHECK(switching_vector(f, Vector{0}) == Vector{4, 3, -8});
  CHECK(evaluate(f, Vector{0}) == Vector{51});
  CHECK(evaluate(f, Vector{8.0 / 7.0})[0] == doctest::Approx(11));
  const Vector root = evaluate(testforms::planar_root(), Vector{0, -0.5});
  CHECK(root == Vector{0, 0});
  CHECK(switching_vector(testforms::planar_root(), Vector{0, -0.5}) == Vector{2, 0.5});
  CHECK(evaluate(testforms::three_term_min(), Vector{0, 0.5, -3}) == Vector{0});
  CHECK_THROWS_AS(evaluate(f, Vector{0, 0}), DimensionError);
}

TEST_CASE("affine form without switching variables") {
  const AbsNormalForm f({}, {1, -2}, Matrix(0, 2), Matrix(0, 0), Matrix{{2, 0}, {1, 3}},
                        Matrix(2, 0));
  CHECK(f.s() == 0);
  CHECK(f.n() == 2);
  CHECK(evaluate(f, Vector{1, 1}) == Vector{3, 2});
  const auto aux = auxiliary(f);
  CHECK(aux.J == f.J());
  CHECK(aux.b == f.b());
}

TEST_CASE("sign decomposition") {
  const auto d = sign_decomposition(Vector{2, -3, 0});
  CHECK(d.u == Vector{2, 0, 0});
  CHECK(d.w == Vector{0, 3, 0});
  CHECK(d.z == Vector{2, -3, 0});
}

TEST_CASE("auxiliary quantities of the nested scalar function") {
  const auto aux = auxiliary(testforms::nested_scalar());
  CHECK(aux.c == Vector{4, 3, -8});
  CHECK(aux.Z == Matrix{{3}, {6}, {7}});
  CHECK(aux.L == Matrix{{1, 0, 0}, {4, 1, 0}, {0, 0, 1}});
  CHECK(aux.b == Vector{-45});
  CHECK(aux.J == Matrix{{49}});
  CHECK(aux.Y == Matrix{{4, 2, 12}});
}

TEST_CASE("reduced data matches exact fractions") {
  const AbsNormalForm f = testforms::nested_scalar();
  const auto red = reduced(f, auxiliary(f));
  REQUIRE(red);
  check_close(red->c, Vector{331.0 / 49, 417.0 / 49, -11.0 / 7}, 1e-12);
  check_close(red->S,
              Matrix{{37.0 / 49, -6.0 / 49, -36.0 / 49},
                     {172.0 / 49, 37.0 / 49, -72.0 / 49},
                     {-4.0 / 7, -2.0 / 7, -5.0 / 7}},
              1e-12);
}

TEST_CASE("reduced data matches printed rounded values") {
  const AbsNormalForm f = testforms::nested_scalar();
  const auto red = reduced(f, auxiliary(f));
  REQUIRE(red);
  check_close(red->c, Vector{6.8, 8.5, -1.6}, 0.05);
  check_close(red->S, Matrix{{0.76, -0.12, -0.74}, {3.50, 0.76, -1.50}, {-0.57, -0.28, -0.71}},
              0.05);
}

TEST_CASE("planar root auxiliary quantities") {
  const AbsNormalForm f = testforms::planar_root();
  const auto aux = auxiliary(f);
  CHECK(aux.c == Vector{2, 1});
  CHECK(aux.b == Vector{0, 1});
  CHECK(aux.L == Matrix{{1, 0}, {2, 1}});
  CHECK(aux.Z == Matrix{{1, 0}, {1, 1}});
  CHECK(aux.Y == Matrix{{2, 2}, {2, 0}});
  CHECK(aux.J == Matrix{{1, 0}, {1, 2}});
  const auto red = reduced(f, aux);
  REQUIRE(red);
  check_close(red->c, Vector{2, 0.5}, 1e-12);
  check_close(red->S, Matrix{{-1, -2}, {0, 0}}, 1e-12);
}

TEST_CASE("reduced data needs m = n and a nonsingular J_aux") {
  const AbsNormalForm nested = nested_abs_instance(2);
  CHECK_THROWS_AS(reduced(nested, auxiliary(nested)), ShapeError);
  const AbsNormalForm sing({0}, {0}, Matrix{{1}}, Matrix{{0}}, Matrix{{1}}, Matrix{{-1}});
  CHECK_FALSE(reduced(sing, auxiliary(sing)).has_value());
}

TEST_CASE("horizon form zeroes the offsets") {
  const AbsNormalForm h = horizon(testforms::kinked_line());
  CHECK(h.c() == Vector{0, 0});
  CHECK(h.b() == Vector{0});
  CHECK(evaluate(h, Vector{1})[0] == doctest::Approx(3));
  CHECK(evaluate(h, Vector{-1})[0] == doctest::Approx(1));
  const AbsNormalForm h2 = horizon(testforms::nested_scalar());
  CHECK(evaluate(h2, Vector{1})[0] == doctest::Approx(49));
  CHECK(evaluate(h2, Vector{-1})[0] == doctest::Approx(47));
}

TEST_CASE("simply switched detection") {
  CHECK(is_simply_switched(testforms::neg_abs()));
  CHECK_FALSE(is_simply_switched(testforms::nested_scalar()));
}

TEST_CASE("random instance recipe") {
  const AbsNormalForm a = random_instance(5, 7, InstancePreset::kExample63);
  CHECK(a.n() == 5);
  CHECK(a.m() == 5);
  CHECK(a.s() == 5);
  CHECK(a.J() == Matrix::identity(5));
  CHECK(a.Z() == Matrix::zeros(5, 5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(a.L()(i, j) == (i == j + 1 ? 1.0 : 0.0));
  for (double v : a.c()) CHECK(v == std::round(v));
  CHECK(a == random_instance(5, 7, InstancePreset::kExample63));
  CHECK_FALSE(a == random_instance(5, 8, InstancePreset::kExample63));
  CHECK(a == random_instance(5, 7, InstancePreset::kExample64));
  CHECK_THROWS(random_instance(0, 1, InstancePreset::kExample63));
}

TEST_CASE("nested absolute value instance") {
  const AbsNormalForm f = nested_abs_instance(3);
  CHECK(f.c() == Vector{0, 0, 0});
  CHECK(f.b() == Vector{1});
  CHECK(f.Z() == scale(Matrix::identity(3), 1000));
  CHECK(f.J() == Matrix::zeros(1, 3));
  CHECK(f.Y() == Matrix{{0, 0, 1}});
  // | | |1000 x1| + 1000 x2 | + 1000 x3 | + 1
  CHECK(evaluate(f, Vector{0.001, -0.002, 0.003})[0] == doctest::Approx(5));
  const auto aux = auxiliary(f);
  CHECK(aux.L == Matrix{{1, 0, 0}, {2, 1, 0}, {2, 2, 1}});
  CHECK(aux.Y == Matrix{{2, 2, 2}});
  CHECK(aux.J == Matrix{{1000, 1000, 1000}});
  CHECK(aux.b == Vector{1});
}
