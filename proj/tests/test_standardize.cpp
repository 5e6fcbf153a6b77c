#include <cmath>

#include "doctest.h"
#include "varsel/errors.hpp"
#include "varsel/standardize.hpp"

using varsel::ColumnKind;
using varsel::Dataset;

namespace {

Dataset simple() {
  Dataset d;
  d.X.resize(3, 2);
  d.X << 1, 10,
         2, 30,
         3, 20;
  d.y.resize(3);
  d.y << 4, 7, 10;
  d.columns = {{"a", ColumnKind::base, false, {}},
               {"b", ColumnKind::base, false, {}}};
  return d;
}

}  // namespace

TEST_CASE("column (1,2,3) becomes (-1,0,1): its sample SD is exactly 1") {
  const auto s = standardize(simple());
  CHECK(s.Z(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(s.Z(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.Z(2, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.centers[0] == doctest::Approx(2.0));
  CHECK(s.scales[0] == doctest::Approx(1.0));
  CHECK(s.y_center == doctest::Approx(7.0));
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(s.Z.col(j).mean()) < 1e-10);
    const double sd = std::sqrt(s.Z.col(j).squaredNorm() / 2.0);
    CHECK(sd == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(std::abs(s.yc.mean()) < 1e-10);
}

TEST_CASE("standardizing already-standardized data is the identity") {
  const auto s1 = standardize(simple());
  Dataset d2;
  d2.X = s1.Z;
  d2.y = s1.yc;
  d2.columns = s1.columns;
  const auto s2 = standardize(d2);
  CHECK((s2.Z - s1.Z).cwiseAbs().maxCoeff() < 1e-10);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(s2.scales[j] - 1.0) < 1e-10);
    CHECK(std::abs(s2.centers[j]) < 1e-10);
  }
}

TEST_CASE("zero-variance column is rejected by name") {
  Dataset d = simple();
  d.X.col(1).setConstant(5.0);
  try {
    standardize(d);
    FAIL("expected ZeroVarianceError");
  } catch (const varsel::ZeroVarianceError& e) {
    CHECK(std::string(e.what()).find("'b'") != std::string::npos);
  }
}

TEST_CASE("lenient variant zeroes a constant column instead of throwing") {
  Dataset d = simple();
  d.X.col(1).setConstant(5.0);
  const auto s = standardize_lenient(d);
  CHECK(s.scales[1] == 1.0);
  CHECK(s.Z.col(1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.Z.col(0).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("apply_standardization reproduces training rows exactly") {
  const Dataset d = simple();
  const auto s = standardize(d);
  const Eigen::MatrixXd replay = apply_standardization(s, d.X);
  CHECK((replay - s.Z).cwiseAbs().maxCoeff() < 1e-12);

  // A validation case equal to a training case standardizes identically.
  Eigen::MatrixXd one_row = d.X.row(1);
  const Eigen::MatrixXd z = apply_standardization(s, one_row);
  CHECK((z - s.Z.row(1)).cwiseAbs().maxCoeff() < 1e-12);

  Eigen::MatrixXd wrong(1, 3);
  wrong.setZero();
  CHECK_THROWS_AS(apply_standardization(s, wrong), varsel::DataError);
}
