#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qtc/transform.hpp"

using qtc::facewise_product;
using qtc::Index;
using qtc::mode3_transform;
using qtc::qt_identity;
using qtc::qt_product;
using qtc::Quaternion;
using qtc::QuaternionMatrix;
using qtc::QuaternionTensor;
using qtc::TransformDirection;
using qtc::TransformSpec;
using QT = QuaternionTensor<double>;
using Spec = TransformSpec<double>;

TEST_CASE("tensor norm accumulates entry moduli") {
  QT t(2, 2, 2);
  t.set(0, 0, 0, {3, 4, 0, 0});
  t.set(1, 1, 1, {0, 0, 0, 2});
  CHECK(t.squaredNorm() == doctest::Approx(29.0));
  CHECK(t.l1Norm() == doctest::Approx(7.0));
}

TEST_CASE("mode-3 transform: identity, isometry, inverse pair") {
  std::mt19937_64 rng(101);
  const QT t = QT::Random(4, 3, 5, rng);

  const QT same = mode3_transform(t, Spec::identity(5), TransformDirection::Forward);
  CHECK((same - t).norm() == 0.0);

  const Spec dct = Spec::dct(5);
  const QT hat = mode3_transform(t, dct, TransformDirection::Forward);
  CHECK(hat.norm() == doctest::Approx(t.norm()).epsilon(1e-10));
  const QT back = mode3_transform(hat, dct, TransformDirection::Inverse);
  CHECK((back - t).norm() <= 1e-10 * t.norm());

  // random invertible transform
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(5, 5);
  m += 5.0 * Eigen::MatrixXd::Identity(5, 5);
  const Spec spec = Spec::fromMatrix(m);
  const QT round =
      mode3_transform(mode3_transform(t, spec, TransformDirection::Forward), spec,
                      TransformDirection::Inverse);
  CHECK((round - t).norm() <= 1e-10 * t.norm());

  CHECK_THROWS_AS(mode3_transform(t, Spec::dct(4), TransformDirection::Forward),
                  qtc::DimensionMismatch);
}

TEST_CASE("DCT-II matrix is orthonormal") {
  for (Index n : {1, 2, 7, 16}) {
    const Eigen::MatrixXd c = qtc::dct_matrix<double>(n);
    CHECK((c * c.transpose() - Eigen::MatrixXd::Identity(n, n)).norm() <=
          1e-10 * std::sqrt(double(n)));
  }
}

TEST_CASE("facewise product against the naive per-slice oracle") {
  std::mt19937_64 rng(103);
  const QT a = QT::Random(2, 3, 4, rng), b = QT::Random(3, 2, 4, rng);
  const QT got = facewise_product(a, b);
  for (Index k = 0; k < 4; ++k) {
    const auto slow = oracle::naive_matmul(a.slice(k), b.slice(k));
    CHECK((got.slice(k) - slow).norm() <= 1e-12 * (slow.norm() + 1));
  }

  // identity slices act as the unit, zero annihilates
  QT id(3, 3, 4);
  for (Index k = 0; k < 4; ++k) id.slice(k) = QuaternionMatrix<double>::Identity(3);
  CHECK((facewise_product(id, b) - b).norm() <= 1e-14);
  CHECK(facewise_product(a, QT::Zero(3, 2, 4)).norm() == 0.0);

  CHECK_THROWS_AS(facewise_product(a, QT::Zero(2, 2, 4)), qtc::DimensionMismatch);
  CHECK_THROWS_AS(facewise_product(a, QT::Zero(3, 2, 5)), qtc::DimensionMismatch);
}

TEST_CASE("qt product reduces to the facewise product under the identity transform") {
  std::mt19937_64 rng(107);
  const QT a = QT::Random(3, 2, 4, rng), b = QT::Random(2, 5, 4, rng);
  const Spec id = Spec::identity(4);
  CHECK((qt_product(a, b, id) - facewise_product(a, b)).norm() <= 1e-12);
}

TEST_CASE("qt identity is a two-sided unit") {
  std::mt19937_64 rng(109);
  const Spec spec = Spec::dct(4);
  const QT a = QT::Random(3, 5, 4, rng);
  const QT left = qt_identity(3, 4, spec), right = qt_identity(5, 4, spec);
  CHECK((qt_product(left, a, spec) - a).norm() <= 1e-10 * a.norm());
  CHECK((qt_product(a, right, spec) - a).norm() <= 1e-10 * a.norm());
}

TEST_CASE("qt product is associative") {
  std::mt19937_64 rng(113);
  const Spec spec = Spec::dct(3);
  for (int it = 0; it < 10; ++it) {
    const QT a = QT::Random(2, 2, 3, rng), b = QT::Random(2, 2, 3, rng),
             c = QT::Random(2, 2, 3, rng);
    const QT lhs = qt_product(qt_product(a, b, spec), c, spec);
    const QT rhs = qt_product(a, qt_product(b, c, spec), spec);
    CHECK((lhs - rhs).norm() <= 1e-10 * (rhs.norm() + 1));
  }
}

TEST_CASE("tensor adjoint reverses the qt product") {
  std::mt19937_64 rng(127);
  const Spec spec = Spec::dct(4);
  const QT a = QT::Random(3, 2, 4, rng), b = QT::Random(2, 5, 4, rng);
  const QT lhs = qt_product(a, b, spec).adjoint();
  const QT rhs = qt_product(b.adjoint(), a.adjoint(), spec);
  CHECK((lhs - rhs).norm() <= 1e-10 * (rhs.norm() + 1));
}

TEST_CASE("pure tensors stay pure under real mode products") {
  std::mt19937_64 rng(131);
  QT t = QT::Random(3, 3, 3, rng);
  for (Index k = 0; k < 3; ++k) t.slice(k).p().real().setZero();  // make pure
  const QT hat = mode3_transform(t, Spec::dct(3), TransformDirection::Forward);
  for (Index k = 0; k < 3; ++k) CHECK(hat.slice(k).p().real().norm() == 0.0);
}

TEST_CASE("singular transform matrix is rejected") {
  Eigen::MatrixXd sing = Eigen::MatrixXd::Zero(3, 3);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(Spec::fromMatrix(sing), qtc::DimensionMismatch);
}
