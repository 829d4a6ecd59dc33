#include "polyiso/simplex_slicing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyiso/error.hpp"
#include "polyiso/polytope.hpp"

namespace polyiso {
namespace {

constexpr double kFeasTol = 1e-9;

int sum_of(const std::vector<int>& k) { return std::accumulate(k.begin(), k.end(), 0); }

}  // namespace

RegularSimplexFrame build_frame(int n) {
  if (n < 1) throw Error(ErrorKind::BadArgument, "simplex dimension must be >= 1");
  if (n > 4) throw Error(ErrorKind::DimensionTooHigh, "simplex slicing supports n <= 4");
  // Project the standard basis of R^{n+1} onto the hyperplane sum x = 0 and
  // express it in the Helmert basis of that hyperplane, scaled by sqrt(n+1).
  RegularSimplexFrame frame;
  frame.n = n;
  const double scale = std::sqrt(n + 1.0);
  for (int i = 0; i <= n; ++i) {
    Eigen::VectorXd a(n);
    for (int k = 1; k <= n; ++k) {
      double entry = 0.0;
      if (i < k) entry = 1.0;
      else if (i == k) entry = -static_cast<double>(k);
      a(k - 1) = scale * entry / std::sqrt(k * (k + 1.0));
    }
    frame.normals.push_back(a);
  }
  return frame;
}

bool in_piece(const RegularSimplexFrame& frame, const std::vector<int>& k, const Eigen::VectorXd& x) {
  for (int i = 0; i <= frame.n; ++i) {
    const double s = frame.normals[i].dot(x);
    if (!(s > -k[i] && s < -k[i] + 1)) return false;
  }
  return true;
}

SlicePiece make_piece(const RegularSimplexFrame& frame, std::vector<int> k) {
  const int n = frame.n;
  if (static_cast<int>(k.size()) != n + 1) throw Error(ErrorKind::BadArgument, "k must have n+1 entries");
  SlicePiece piece;
  piece.k = std::move(k);

  // Vertices: intersect n bounding hyperplanes with distinct normals, keep the feasible ones.
  Eigen::MatrixXd lhs(n, n);
  Eigen::VectorXd rhs(n);
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<int> rows;
    for (int i = 0; i <= n; ++i)
      if (i != skip) rows.push_back(i);
    for (int r = 0; r < n; ++r) lhs.row(r) = frame.normals[rows[r]].transpose();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
    for (int sides = 0; sides < (1 << n); ++sides) {
      for (int r = 0; r < n; ++r) rhs(r) = -piece.k[rows[r]] + ((sides >> r) & 1);
      const Eigen::VectorXd x = lu.solve(rhs);
      bool feasible = true;
      for (int i = 0; i <= n && feasible; ++i) {
        const double s = frame.normals[i].dot(x);
        feasible = s >= -piece.k[i] - kFeasTol && s <= -piece.k[i] + 1 + kFeasTol;
      }
      if (!feasible) continue;
      const bool seen = std::any_of(piece.vertices.begin(), piece.vertices.end(),
                                    [&](const Eigen::VectorXd& v) { return (v - x).norm() < kFeasTol; });
      if (!seen) piece.vertices.push_back(x);
    }
  }
  std::sort(piece.vertices.begin(), piece.vertices.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  if (static_cast<int>(piece.vertices.size()) >= n + 1) piece.volume = convex_volume(piece.vertices);
  return piece;
}

std::vector<SlicePiece> enumerate_pieces(const RegularSimplexFrame& frame, int slices) {
  if (slices < 2) throw Error(ErrorKind::BadArgument, "need N >= 2 slices");
  const int n = frame.n;
  // k_i in [1, N] for the first n normals; the last index was flipped to 1 - k,
  // so it runs over [1 - N, 0].
  std::vector<int> lo(n + 1, 1), hi(n + 1, slices);
  lo[n] = 1 - slices;
  hi[n] = 0;
  std::vector<SlicePiece> pieces;
  std::vector<int> k = lo;
  while (true) {
    const int total = sum_of(k);
    if (total > 0 && total < n + 1) {
      SlicePiece piece = make_piece(frame, k);
      if (!piece.empty()) pieces.push_back(std::move(piece));
    }
    int pos = n;
    while (pos >= 0 && k[pos] == hi[pos]) {
      k[pos] = lo[pos];
      --pos;
    }
    if (pos < 0) break;
    ++k[pos];
  }
  return pieces;
}

std::vector<SlicePiece> enumerate_pieces(int n, int slices) { return enumerate_pieces(build_frame(n), slices); }

int shape_class(const SlicePiece& piece) {
  const int total = sum_of(piece.k);
  const int n = static_cast<int>(piece.k.size()) - 1;
  if (piece.empty() || total <= 0 || total >= n + 1) throw Error(ErrorKind::EmptyPiece, "piece is empty");
  return total;
}

SlicePiece translate_piece(const RegularSimplexFrame& frame, const SlicePiece& piece, int generator) {
  if (generator < 0 || generator > frame.n) throw Error(ErrorKind::BadArgument, "generator index out of range");
  std::vector<int> k = piece.k;
  for (int i = 0; i <= frame.n; ++i) k[i] += (i == generator) ? -frame.n : 1;
  return make_piece(frame, std::move(k));
}

bool congruent_shape(const SlicePiece& a, const SlicePiece& b) {
  if (a.vertices.size() != b.vertices.size() || a.vertices.empty()) return false;
  auto normalize = [](const std::vector<Eigen::VectorXd>& verts) {
    Eigen::VectorXd center = Eigen::VectorXd::Zero(verts.front().size());
    for (const auto& v : verts) center += v;
    center /= static_cast<double>(verts.size());
    double diameter = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j) diameter = std::max(diameter, (verts[i] - verts[j]).norm());
    std::vector<Eigen::VectorXd> out;
    for (const auto& v : verts) out.push_back((v - center) / diameter);
    return out;
  };
  const auto na = normalize(a.vertices);
  const auto nb = normalize(b.vertices);
  std::vector<bool> used(nb.size(), false);
  for (const auto& p : na) {
    bool matched = false;
    for (std::size_t j = 0; j < nb.size(); ++j) {
      if (!used[j] && (p - nb[j]).norm() <= 1e-9) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

double simplex_volume(const RegularSimplexFrame& frame) {
  std::vector<int> k(frame.n + 1, 1);
  k[frame.n] = 0;
  return make_piece(frame, std::move(k)).volume;
}

ShapeClasses classify_shapes(const std::vector<SlicePiece>& pieces) {
  ShapeClasses classes;
  classes.class_of.assign(pieces.size(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    int match = -1;
    for (std::size_t c = 0; c < classes.representative.size(); ++c) {
      if (congruent_shape(pieces[i], pieces[classes.representative[c]])) {
        if (match >= 0) classes.well_separated = false;
        else match = static_cast<int>(c);
      }
    }
    if (match < 0) {
      match = static_cast<int>(classes.representative.size());
      classes.representative.push_back(static_cast<int>(i));
    }
    classes.class_of[i] = match;
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    int& rep = classes.representative[classes.class_of[i]];
    if (pieces[i].k < pieces[rep].k) rep = static_cast<int>(i);
  }
  return classes;
}

}  // namespace polyiso
