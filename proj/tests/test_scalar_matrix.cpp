#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qpa/matrix.hpp"

using namespace qpa;

namespace {

// Independent rank oracle: fraction-free Bareiss elimination over bigint.
// Used to cross-check rref-based ranks without sharing any code path.
std::size_t bareiss_rank(std::vector<std::vector<bigint>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  bigint prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

DenseMatrix random_int_matrix(Field f, std::size_t rows, std::size_t cols,
                              std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-4, 4);
  DenseMatrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = f.from_int(dist(rng));
  return m;
}

std::vector<std::vector<bigint>> to_bigint_rows(const DenseMatrix& m) {
  std::vector<std::vector<bigint>> out(m.rows, std::vector<bigint>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      out[i][j] = bigint(boost::multiprecision::numerator(m.at(i, j).value()));
  return out;
}

}  // namespace

TEST_CASE("field parsing and validation") {
  REQUIRE(Field::parse("Q").is_rationals());
  REQUIRE(Field::parse("Fp:5").characteristic() == 5);
  REQUIRE(Field::parse("Fp:2").characteristic() == 2);
  REQUIRE_THROWS_AS(Field::parse("Fp:4"), error);
  REQUIRE_THROWS_AS(Field::parse("Fp:1"), error);
  REQUIRE_THROWS_AS(Field::parse("Fp:91"), error);  // 7 * 13
  REQUIRE_THROWS_AS(Field::parse("R"), error);
  REQUIRE_THROWS_AS(Field::parse("Fp:"), error);
  REQUIRE_THROWS_AS(Field::parse("Fp:x"), error);
}

TEST_CASE("rational scalar arithmetic and literals") {
  Field q = Field::rationals();
  Scalar a = q.from_string("3/4");
  Scalar b = q.from_string("-2");
  REQUIRE((a * b).str() == "-3/2");
  REQUIRE((a + b).str() == "-5/4");
  REQUIRE((a / b).str() == "-3/8");
  REQUIRE((b - b).is_zero());
  REQUIRE(q.from_string("6/8").str() == "3/4");
  REQUIRE(q.from_string("+5").str() == "5");
  REQUIRE_THROWS_AS(q.from_string("1/0"), error);
  REQUIRE_THROWS_AS(q.from_string("1.5"), error);
  REQUIRE_THROWS_AS(q.from_string("a"), error);
  REQUIRE_THROWS_AS(q.from_string("1/"), error);
  REQUIRE_THROWS_AS(a / q.zero(), error);
}

TEST_CASE("prime field arithmetic") {
  Field f7 = Field::prime_field(7);
  Scalar three = f7.from_int(3);
  Scalar inv = f7.one() / three;
  REQUIRE((three * inv).is_one());
  REQUIRE(inv.str() == "5");
  REQUIRE(f7.from_int(-1).str() == "6");
  REQUIRE(f7.from_string("1/2").str() == "4");
  REQUIRE_THROWS_AS(f7.from_string("1/7"), error);
  Field q = Field::rationals();
  REQUIRE_THROWS_AS(q.one() + f7.one(), error);
}

TEST_CASE("rref basic cases") {
  Field q = Field::rationals();
  RrefResult r = rref(identity(q, 2));
  REQUIRE(r.rank == 2);
  REQUIRE(r.pivot_cols == std::vector<std::size_t>{0, 1});
  REQUIRE(r.reduced == identity(q, 2));

  DenseMatrix z(q, 3, 4);
  REQUIRE(rref(z).rank == 0);
  REQUIRE(kernel_basis(z).rows == 4);
  REQUIRE(kernel_basis(identity(q, 3)).rows == 0);
}

TEST_CASE("solve basic cases") {
  Field q = Field::rationals();
  DenseMatrix rhs(q, 2, 1);
  rhs.at(0, 0) = q.from_int(5);
  rhs.at(1, 0) = q.from_int(-1);
  auto x = solve(identity(q, 2), rhs);
  REQUIRE(x);
  REQUIRE(*x == rhs);

  // 1x1 zero matrix, nonzero rhs: inconsistent.
  DenseMatrix zero(q, 1, 1), one(q, 1, 1);
  one.at(0, 0) = q.one();
  REQUIRE_FALSE(solve(zero, one).has_value());
}

TEST_CASE("intersect_rowspaces basic cases") {
  Field q = Field::rationals();
  DenseMatrix e1(q, 1, 3), e12(q, 2, 3), e2(q, 1, 3);
  e1.at(0, 0) = q.one();
  e12.at(0, 0) = q.one();
  e12.at(1, 1) = q.one();
  e2.at(0, 1) = q.one();
  REQUIRE(same_rowspace(intersect_rowspaces(e1, e12), e1));
  REQUIRE(intersect_rowspaces(e1, e2).rows == 0);
}

TEST_CASE("elimination properties on random matrices") {
  std::mt19937 rng(20240817);
  for (Field f : {Field::rationals(), Field::prime_field(5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 7);
      DenseMatrix m = random_int_matrix(f, dim(rng), dim(rng), rng);
      RrefResult r = rref(m);

      // rank + nullity = column count
      DenseMatrix k = kernel_basis(m);
      REQUIRE(r.rank + k.rows == m.cols);

      // kernel rows really are killed
      if (k.rows > 0) REQUIRE(matmul(m, transpose(k)).is_zero());

      // rref is idempotent
      REQUIRE(rref(r.reduced).reduced == r.reduced);

      // solve returns an exact solution whenever one is planted
      DenseMatrix planted = random_int_matrix(f, m.cols, 2, rng);
      DenseMatrix rhs = matmul(m, planted);
      auto x = solve(m, rhs);
      REQUIRE(x);
      REQUIRE(matmul(m, *x) == rhs);
    }
  }
}

TEST_CASE("rank agrees with fraction-free oracle") {
  std::mt19937 rng(7151);
  Field q = Field::rationals();
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 8);
    DenseMatrix m = random_int_matrix(q, dim(rng), dim(rng), rng);
    REQUIRE(rank(m) == bareiss_rank(to_bigint_rows(m)));
  }
}

TEST_CASE("rank over F_p equals rank over Q on integer matrices when no pivot collapses") {
  std::mt19937 rng(99);
  Field q = Field::rationals();
  for (long p : {5L, 7L, 11L}) {
    Field fp = Field::prime_field(p);
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 6);
      std::size_t rows = dim(rng), cols = dim(rng);
      DenseMatrix mq(q, rows, cols), mp(fp, rows, cols);
      std::uniform_int_distribution<int> dist(-2, 2);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          int v = dist(rng);
          mq.at(i, j) = q.from_int(v);
          mp.at(i, j) = fp.from_int(v);
        }
      // Reduction can only lose rank, never gain it.
      REQUIRE(rank(mp) <= rank(mq));
    }
  }
}

TEST_CASE("intersection dimension formula on random subspaces") {
  std::mt19937 rng(4242);
  Field q = Field::rationals();
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::size_t n = dim(rng) + 2;
    DenseMatrix a = random_int_matrix(q, dim(rng), n, rng);
    DenseMatrix b = random_int_matrix(q, dim(rng), n, rng);
    DenseMatrix cap = intersect_rowspaces(a, b);
    // dim(A∩B) = dim A + dim B - dim(A+B)
    REQUIRE(rank(cap) + rank(vstack(a, b)) == rank(a) + rank(b));
    REQUIRE(cap.rows == rank(cap));
    for (std::size_t i = 0; i < cap.rows; ++i) {
      DenseMatrix row(q, 1, n);
      for (std::size_t j = 0; j < n; ++j) row.at(0, j) = cap.at(i, j);
      REQUIRE(in_rowspace(a, row));
      REQUIRE(in_rowspace(b, row));
    }
  }
}

TEST_CASE("matrix inverse") {
  Field q = Field::rationals();
  DenseMatrix m(q, 2, 2);
  m.at(0, 0) = q.from_int(2);
  m.at(0, 1) = q.from_int(1);
  m.at(1, 0) = q.from_int(1);
  m.at(1, 1) = q.from_int(1);
  auto inv = inverse(m);
  REQUIRE(inv);
  REQUIRE(matmul(m, *inv) == identity(q, 2));
  DenseMatrix sing(q, 2, 2);
  sing.at(0, 0) = q.one();
  sing.at(1, 0) = q.one();
  REQUIRE_FALSE(inverse(sing).has_value());
}
