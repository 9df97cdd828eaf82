#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qtc/quaternion.hpp"

using qtc::Quaternion;
using Q = Quaternion<double>;

namespace {

Q random_quaternion(std::mt19937_64& rng) {
  return {qtc::uniform_symmetric(rng), qtc::uniform_symmetric(rng), qtc::uniform_symmetric(rng),
          qtc::uniform_symmetric(rng)};
}

}  // namespace

TEST_CASE("unit relations of the imaginary basis") {
  CHECK(qmul(Q::i(), Q::j()) == Q::k());
  CHECK(qmul(Q::j(), Q::k()) == Q::i());
  CHECK(qmul(Q::k(), Q::i()) == Q::j());
  CHECK(qmul(Q::j(), Q::i()) == -Q::k());
  CHECK(qmul(Q::i(), Q::i()) == -Q::one());
  CHECK(qmul(Q::j(), Q::j()) == -Q::one());
  CHECK(qmul(Q::k(), Q::k()) == -Q::one());
  // i j k = -1
  CHECK(qmul(qmul(Q::i(), Q::j()), Q::k()) == -Q::one());
}

TEST_CASE("identity element and conjugation") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    const Q q = random_quaternion(rng);
    CHECK(qmul(Q::one(), q) == q);
    CHECK(qmul(q, Q::one()) == q);
    const Q qq = qmul(q.conjugate(), q);
    CHECK(qq.w == doctest::Approx(q.squaredNorm()).epsilon(1e-12));
    CHECK(std::abs(qq.x) <= 1e-12 * q.squaredNorm());
    CHECK(std::abs(qq.y) <= 1e-12 * q.squaredNorm());
    CHECK(std::abs(qq.z) <= 1e-12 * q.squaredNorm());
  }
}

TEST_CASE("product is associative and anti-commutative in general") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    const Q a = random_quaternion(rng), b = random_quaternion(rng), c = random_quaternion(rng);
    const Q left = qmul(qmul(a, b), c), right = qmul(a, qmul(b, c));
    CHECK((left - right).norm() <= 1e-12 * (a.norm() * b.norm() * c.norm() + 1));
    // distributivity
    const Q d1 = qmul(a, b + c), d2 = qmul(a, b) + qmul(a, c);
    CHECK((d1 - d2).norm() <= 1e-12 * (a.norm() * (b.norm() + c.norm()) + 1));
  }
}

TEST_CASE("scalar complex adjoint is multiplicative") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    const Q p = random_quaternion(rng), q = random_quaternion(rng);
    const Eigen::Matrix2cd lhs = oracle::scalar_adjoint(qmul(p, q));
    const Eigen::Matrix2cd rhs = oracle::scalar_adjoint(p) * oracle::scalar_adjoint(q);
    CHECK((lhs - rhs).norm() <= 1e-12 * (rhs.norm() + 1));
  }
}

TEST_CASE("modulus properties") {
  std::mt19937_64 rng(17);
  CHECK(Q::zero().norm() == 0.0);
  for (int it = 0; it < 100; ++it) {
    const Q p = random_quaternion(rng), q = random_quaternion(rng);
    CHECK(p.norm() >= 0.0);
    // |pq| = |p||q|
    CHECK(qmul(p, q).norm() == doctest::Approx(p.norm() * q.norm()).epsilon(1e-12));
    const Q inv = q.inverse();
    CHECK((qmul(q, inv) - Q::one()).norm() <= 1e-12);
  }
}

TEST_CASE("soft threshold shrinks the modulus and keeps the direction") {
  const Q q{0, 3, 0, 4};  // modulus 5
  const Q s = q_soft_threshold(q, 2.0);
  CHECK(s.norm() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.x / s.norm() == doctest::Approx(3.0 / 5.0).epsilon(1e-14));
  CHECK(s.z / s.norm() == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
  CHECK(q_soft_threshold(q, 5.0) == Q::zero());
  CHECK(q_soft_threshold(q, 7.5) == Q::zero());
  CHECK(q_soft_threshold(Q::zero(), 0.0) == Q::zero());
}

TEST_CASE("soft threshold minimizes tau |a| + |a - q|^2 / 2 along the ray") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 50; ++it) {
    const Q q = random_quaternion(rng);
    const double tau = 1.5 * qtc::uniform_unit(rng);
    const Q got = q_soft_threshold(q, tau);
    const double m = q.norm();
    // grid search along the direction q/|q| (the minimizer is radial)
    double best = tau * 0.0 + 0.5 * m * m;  // a = 0
    for (double t = 1e-4; t <= m + 1.0; t += 1e-4)
      best = std::min(best, tau * t + 0.5 * (t - m) * (t - m));
    const double ours = tau * got.norm() + 0.5 * (got - q).squaredNorm();
    CHECK(ours <= best + 1e-6);
  }
}

TEST_CASE("soft threshold is non-expansive") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 200; ++it) {
    const Q a = random_quaternion(rng), b = random_quaternion(rng);
    const double tau = 2.0 * qtc::uniform_unit(rng);
    const double lhs = (q_soft_threshold(a, tau) - q_soft_threshold(b, tau)).norm();
    CHECK(lhs <= (a - b).norm() + 1e-12);
  }
}

TEST_CASE("Cayley-Dickson parts round trip") {
  const Q q{1.5, -2.0, 0.25, 4.0};
  CHECK(Q::fromParts(q.p(), q.q()) == q);
  CHECK(q.p() == std::complex<double>(1.5, -2.0));
  CHECK(q.q() == std::complex<double>(0.25, 4.0));
  CHECK(q.isPure() == false);
  CHECK(Q{0, 1, 2, 3}.isPure());
}
