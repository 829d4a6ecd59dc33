#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "polyiso/error.hpp"
#include "polyiso/polytope.hpp"
#include "polyiso/simplex_slicing.hpp"

using namespace polyiso;

namespace {

long long binomial(int n, int k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The sliced simplex: a_i . x <= 0 for i < n and a_n . x <= N.
SlicePiece whole_simplex(const RegularSimplexFrame& frame, int slices) {
  const int n = frame.n;
  SlicePiece piece;
  for (int skip = 0; skip <= n; ++skip) {
    Eigen::MatrixXd lhs(n, n);
    Eigen::VectorXd rhs(n);
    int r = 0;
    for (int i = 0; i <= n; ++i) {
      if (i == skip) continue;
      lhs.row(r) = frame.normals[i].transpose();
      rhs(r++) = i == n ? slices : 0.0;
    }
    piece.vertices.push_back(lhs.fullPivLu().solve(rhs));
  }
  piece.volume = convex_volume(piece.vertices);
  return piece;
}

int sum(const std::vector<int>& k) {
  int s = 0;
  for (int x : k) s += x;
  return s;
}

}  // namespace

TEST_CASE("frame Gram matrix is (n+1) I - J") {
  for (int n = 1; n <= 4; ++n) {
    const auto frame = build_frame(n);
    REQUIRE(static_cast<int>(frame.normals.size()) == n + 1);
    Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      total += frame.normals[i];
      for (int j = 0; j <= n; ++j)
        CHECK(std::abs(frame.normals[i].dot(frame.normals[j]) - (i == j ? n : -1.0)) <= 1e-12);
    }
    CHECK(total.norm() <= 1e-12);
  }
  const auto one = build_frame(1);
  CHECK(std::abs(one.normals[0](0) * one.normals[1](0) + 1.0) <= 1e-15);
  CHECK_THROWS_AS(build_frame(5), Error);
}

TEST_CASE("piece inventories match lattice counts") {
  // Inventory for small N: tetrahedra plus one octahedron.
  const auto p22 = enumerate_pieces(2, 2);
  CHECK(p22.size() == 4);
  const auto p32 = enumerate_pieces(3, 2);
  REQUIRE(p32.size() == 5);
  std::map<int, int> by_sum;
  for (const auto& p : p32) ++by_sum[sum(p.k)];
  CHECK(by_sum[3] == 4);
  CHECK(by_sum[2] == 1);
  for (const auto& p : p32) CHECK(p.vertices.size() == (sum(p.k) == 2 ? 6u : 4u));

  // Triangular lattice: N(N+1)/2 upright and N(N-1)/2 inverted triangles.
  for (int slices = 2; slices <= 8; ++slices) {
    const auto frame = build_frame(2);
    const SlicePiece whole = whole_simplex(frame, slices);
    int upright = 0, inverted = 0;
    for (const auto& p : enumerate_pieces(frame, slices)) {
      if (congruent_shape(p, whole)) ++upright;
      else ++inverted;
      CHECK(p.vertices.size() == 3);
    }
    CHECK(upright == slices * (slices + 1) / 2);
    CHECK(inverted == slices * (slices - 1) / 2);
  }
  // Tetrahedral lattice: C(N+2,3) upright, C(N+1,3) octahedra, C(N,3) inverted.
  for (int slices = 2; slices <= 6; ++slices) {
    const auto frame = build_frame(3);
    const SlicePiece whole = whole_simplex(frame, slices);
    int upright = 0, octahedra = 0, inverted = 0;
    for (const auto& p : enumerate_pieces(frame, slices)) {
      if (p.vertices.size() == 6) ++octahedra;
      else if (congruent_shape(p, whole)) ++upright;
      else ++inverted;
    }
    CHECK(upright == binomial(slices + 2, 3));
    CHECK(octahedra == binomial(slices + 1, 3));
    CHECK(inverted == binomial(slices, 3));
  }
}

TEST_CASE("pieces partition the simplex") {
  for (int n = 1; n <= 4; ++n) {
    const auto frame = build_frame(n);
    for (int slices : {2, 3, 5}) {
      double total = 0.0;
      for (const auto& p : enumerate_pieces(frame, slices)) total += p.volume;
      CHECK(std::abs(total - whole_simplex(frame, slices).volume) <= 1e-9);
    }
  }
}

TEST_CASE("shape classes coincide with sum(k) and number at most n") {
  for (int n = 1; n <= 4; ++n) {
    const auto frame = build_frame(n);
    for (int slices = 2; slices <= (n == 4 ? 6 : 10); ++slices) {
      const auto pieces = enumerate_pieces(frame, slices);
      const auto classes = classify_shapes(pieces);
      CHECK(classes.well_separated);
      CHECK(static_cast<int>(classes.representative.size()) <= n);
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const int s = shape_class(pieces[i]);
        CHECK(s >= 1);
        CHECK(s <= n);
        for (std::size_t j = i + 1; j < pieces.size(); ++j)
          CHECK((classes.class_of[i] == classes.class_of[j]) == (s == shape_class(pieces[j])));
      }
      // Representative is the lexicographically smallest k of its class.
      for (std::size_t i = 0; i < pieces.size(); ++i)
        CHECK_FALSE(pieces[i].k < pieces[static_cast<std::size_t>(classes.representative[classes.class_of[i]])].k);
    }
  }
}

TEST_CASE("equal sum(k) pieces are exact translates") {
  const auto pieces = enumerate_pieces(3, 4);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (sum(pieces[i].k) != sum(pieces[j].k)) continue;
      REQUIRE(pieces[i].vertices.size() == pieces[j].vertices.size());
      // Centroid shift, then every vertex must have a partner.
      Eigen::VectorXd shift = Eigen::VectorXd::Zero(3);
      for (std::size_t v = 0; v < pieces[i].vertices.size(); ++v)
        shift += pieces[j].vertices[v] - pieces[i].vertices[v];
      shift /= static_cast<double>(pieces[i].vertices.size());
      for (const auto& v : pieces[i].vertices) {
        double best = 1e300;
        for (const auto& w : pieces[j].vertices) best = std::min(best, (v + shift - w).norm());
        CHECK(best <= 1e-12);
      }
    }
}

TEST_CASE("shape_class values") {
  const auto frame = build_frame(2);
  CHECK(shape_class(make_piece(frame, {0, 0, 1})) == 1);
  CHECK(shape_class(make_piece(frame, {0, 1, 1})) == 2);
  for (const auto& p : enumerate_pieces(3, 4)) {
    const int s = shape_class(p);
    CHECK((s >= 1 && s <= 3));
  }
  const SlicePiece empty = make_piece(frame, {0, 0, 0});
  CHECK(empty.empty());
  try {
    shape_class(empty);
    FAIL("expected EmptyPiece");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPiece);
  }
}

TEST_CASE("generators translate pieces by a_i") {
  const auto frame2 = build_frame(2);
  const SlicePiece base = make_piece(frame2, {0, 0, 1});
  CHECK(translate_piece(frame2, base, 0).k == std::vector<int>{-2, 1, 2});

  std::mt19937_64 rng(8);
  for (int n = 2; n <= 4; ++n) {
    const auto frame = build_frame(n);
    for (const auto& piece : enumerate_pieces(frame, 3)) {
      for (int g = 0; g <= n; ++g) {
        const SlicePiece moved = translate_piece(frame, piece, g);
        CHECK(sum(moved.k) == sum(piece.k));
        CHECK(std::abs(moved.volume - piece.volume) <= 1e-12);
        REQUIRE(moved.vertices.size() == piece.vertices.size());
        // Hausdorff distance between the vertex sets of S_k' and S_k + a_g.
        for (const auto& v : piece.vertices) {
          double best = 1e300;
          for (const auto& w : moved.vertices) best = std::min(best, (v + frame.normals[g] - w).norm());
          CHECK(best <= 1e-12);
        }
        // Pointwise membership.
        Eigen::VectorXd lo = piece.vertices[0], hi = piece.vertices[0];
        for (const auto& v : piece.vertices) {
          lo = lo.cwiseMin(v);
          hi = hi.cwiseMax(v);
        }
        std::uniform_real_distribution<double> u(0, 1);
        for (int s = 0; s < 20; ++s) {
          Eigen::VectorXd x(n);
          for (int c = 0; c < n; ++c) x(c) = lo(c) - 0.1 + (hi(c) - lo(c) + 0.2) * u(rng);
          CHECK(in_piece(frame, piece.k, x) == in_piece(frame, moved.k, x + frame.normals[g]));
        }
      }
    }
  }
}

TEST_CASE("congruence uses translation and homothety only") {
  const auto frame = build_frame(2);
  const auto pieces = enumerate_pieces(frame, 3);
  for (const auto& p : pieces) CHECK(congruent_shape(p, p));
  const SlicePiece up = make_piece(frame, {1, 1, 0});
  const SlicePiece down = make_piece(frame, {1, 1, -1});
  REQUIRE_FALSE(up.empty());
  REQUIRE_FALSE(down.empty());
  CHECK(sum(up.k) != sum(down.k));
  CHECK_FALSE(congruent_shape(up, down));
  CHECK(congruent_shape(up, make_piece(frame, {2, 1, -1})));
  // A homothetic copy of the whole simplex matches the small upright pieces.
  CHECK(congruent_shape(up, whole_simplex(frame, 7)));
}
