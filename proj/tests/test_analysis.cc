#include <doctest.h>

#include <cmath>

#include "absnorm/analysis.h"
#include "forms.h"

using namespace absnorm;

TEST_CASE("P-matrix test") {
  CHECK(is_p_matrix(Matrix::identity(3)));
  CHECK_FALSE(is_p_matrix(Matrix{{0, 1}, {1, 0}}));
  CHECK(is_p_matrix(Matrix{{1, -3}, {0, 1}}));
  CHECK(is_p_matrix(Matrix(0, 0)));
  const AbsNormalForm f = testforms::nested_scalar();
  CHECK_FALSE(is_p_matrix(reduced(f, auxiliary(f))->S));
  CHECK_THROWS_AS(is_p_matrix(Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(is_p_matrix(Matrix::identity(kPMatrixLimit + 1)), std::invalid_argument);
}

TEST_CASE("positive definite sufficient test") {
  CHECK(is_positive_definite_sufficient(scale(Matrix::identity(2), 2)));
  CHECK_FALSE(is_positive_definite_sufficient(Matrix{{1, -3}, {0, 1}}));
  CHECK_FALSE(is_positive_definite_sufficient(scale(Matrix::identity(2), -1)));
  // Skew parts do not matter.
  CHECK(is_positive_definite_sufficient(Matrix{{1, 5}, {-5, 1}}));
}

TEST_CASE("strategy and method names") {
  CHECK(parse_root_strategy("legacy-mlcp") == RootStrategy::kLegacyMlcp);
  CHECK(parse_root_strategy("legacy_lcp") == RootStrategy::kLegacyLcp);
  CHECK_FALSE(parse_root_strategy("newton").has_value());
  CHECK(to_string(RootStrategy::kAuto) == "auto");
  CHECK(parse_minimize_method("lpcc") == MinimizeMethod::kLpcc);
  CHECK_FALSE(parse_minimize_method("nlp").has_value());
}

TEST_CASE("root pipeline auto picks the LCP") {
  const PipelineReport r = root_pipeline(testforms::planar_root());
  CHECK(r.formulation == "root-lcp");
  CHECK(r.nonsingular.at("J_aux"));
  CHECK_FALSE(r.nonsingular.at("J"));
  REQUIRE(r.outcome.solved());
  CHECK(r.verified);
  CHECK((*r.outcome.x)[0] == doctest::Approx(0));
  CHECK((*r.outcome.x)[1] == doctest::Approx(-0.5));
  CHECK(r.residuals.at("f_inf") <= 1e-9);
  CHECK(r.wall_time_s >= 0);
}

TEST_CASE("root pipeline auto falls back to the MLCP") {
  const PipelineReport r = root_pipeline(nested_abs_instance(3));
  CHECK(r.formulation == "root-mlcp");
  CHECK(r.outcome.status == SolveStatus::kNoSolutionProved);
  CHECK_FALSE(r.verified);
}

TEST_CASE("root pipeline mlcp on a root-free function") {
  const PipelineReport r = root_pipeline(testforms::nested_scalar(), RootStrategy::kMlcp);
  CHECK(r.outcome.status == SolveStatus::kNoSolutionProved);
}

TEST_CASE("root pipeline legacy strategies") {
  CHECK_THROWS_AS(root_pipeline(nested_abs_instance(4), RootStrategy::kLegacyMlcp),
                  PreconditionError);
  CHECK_THROWS_AS(root_pipeline(nested_abs_instance(1), RootStrategy::kLegacyMlcp),
                  PreconditionError);
  CHECK_THROWS_AS(root_pipeline(testforms::planar_root(), RootStrategy::kLegacyLcp),
                  PreconditionError);
  CHECK_THROWS_AS(root_pipeline(nested_abs_instance(3), RootStrategy::kLcp), PreconditionError);
  const AbsNormalForm g = random_instance(4, 3, InstancePreset::kExample63);
  for (RootStrategy s : {RootStrategy::kLegacyMlcp, RootStrategy::kLegacyLcp, RootStrategy::kLcp,
                         RootStrategy::kMlcp}) {
    const PipelineReport r = root_pipeline(g, s);
    CHECK(r.verified);
  }
}

TEST_CASE("existence of minimum") {
  CHECK(existence_of_minimum(testforms::nested_scalar()).verdict == Existence::kExists);
  CHECK(existence_of_minimum(testforms::three_term_min()).verdict == Existence::kExists);
  const ExistenceReport neg = existence_of_minimum(testforms::neg_abs());
  CHECK(neg.verdict == Existence::kNotExists);
  REQUIRE(neg.outcome.x);
  CHECK((*neg.outcome.x)[0] == doctest::Approx(1));
  CHECK_THROWS_AS(existence_of_minimum(testforms::planar_root()), ShapeError);
  EnumerationOptions tight;
  tight.limit = 2;
  CHECK(existence_of_minimum(testforms::nested_scalar(), tight).verdict ==
        Existence::kIndeterminate);
}

TEST_CASE("minimize pipeline") {
  const PipelineReport milp = minimize_pipeline(testforms::three_term_min(), MinimizeMethod::kMilp);
  REQUIRE(milp.outcome.solved());
  CHECK(std::abs(*milp.outcome.objective) <= 1e-7);
  CHECK(milp.verified);
  CHECK(milp.existence == Existence::kExists);

  const PipelineReport lpcc =
      minimize_pipeline(testforms::nested_scalar(), MinimizeMethod::kLpcc);
  REQUIRE(lpcc.outcome.solved());
  CHECK(*lpcc.outcome.objective == doctest::Approx(11));
  CHECK((*lpcc.outcome.x)[0] == doctest::Approx(8.0 / 7.0));

  const PipelineReport none = minimize_pipeline(testforms::neg_abs());
  CHECK(none.existence == Existence::kNotExists);
  CHECK(none.outcome.status == SolveStatus::kUnbounded);
  CHECK_FALSE(none.outcome.objective.has_value());

  const PipelineReport skipped =
      minimize_pipeline(testforms::neg_abs(), MinimizeMethod::kLpcc, false);
  CHECK_FALSE(skipped.existence.has_value());
  CHECK(skipped.outcome.status == SolveStatus::kUnbounded);

  CHECK_THROWS_AS(minimize_pipeline(testforms::planar_root()), ShapeError);
}

TEST_CASE("minimize pipeline on the nested absolute value") {
  for (MinimizeMethod m : {MinimizeMethod::kLpcc, MinimizeMethod::kMilp}) {
    const PipelineReport r = minimize_pipeline(nested_abs_instance(5), m);
    REQUIRE(r.outcome.solved());
    CHECK(*r.outcome.objective == doctest::Approx(1));
    CHECK(r.verified);
  }
}

TEST_CASE("minimizers on the kinked line") {
  // minimum 17 at x = -3
  const PipelineReport a = minimize_pipeline(testforms::kinked_line(), MinimizeMethod::kLpcc);
  const PipelineReport b = minimize_pipeline(testforms::kinked_line(), MinimizeMethod::kMilp);
  REQUIRE(a.outcome.solved());
  REQUIRE(b.outcome.solved());
  CHECK(*a.outcome.objective == doctest::Approx(17));
  CHECK(*b.outcome.objective == doctest::Approx(17));
  CHECK((*a.outcome.x)[0] == doctest::Approx(-3));
}
