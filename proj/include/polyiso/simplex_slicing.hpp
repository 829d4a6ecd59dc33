#pragma once

#include <vector>

#include <Eigen/Dense>

namespace polyiso {

/// Unit-normal frame of a regular simplex in R^n, scaled so that
/// a_i . a_i = n, a_i . a_j = -1 (i != j), and sum a_i = 0.
struct RegularSimplexFrame {
  int n = 0;
  std::vector<Eigen::VectorXd> normals;
};

RegularSimplexFrame build_frame(int n);

/// Cell S_k = { x : -k_i < a_i . x < -k_i + 1 for all i } of the slicing
/// arrangement. The original simplex is S_(1,...,1,0).
struct SlicePiece {
  std::vector<int> k;
  std::vector<Eigen::VectorXd> vertices;
  double volume = 0.0;

  bool empty() const { return volume <= 0.0; }
};

/// Builds S_k with its vertex set and volume (possibly empty).
SlicePiece make_piece(const RegularSimplexFrame& frame, std::vector<int> k);

/// Whether x lies in the open cell S_k.
bool in_piece(const RegularSimplexFrame& frame, const std::vector<int>& k, const Eigen::VectorXd& x);

/// Pieces of the simplex sliced by N equally spaced hyperplanes parallel to
/// each face, in the rescaled frame, ordered lexicographically by k.
std::vector<SlicePiece> enumerate_pieces(const RegularSimplexFrame& frame, int slices);
std::vector<SlicePiece> enumerate_pieces(int n, int slices);

/// Sum of k; determines the shape of a nonempty piece.
int shape_class(const SlicePiece& piece);

/// Translate by a_{generator}: k_generator -= n, every other entry += 1.
/// `generator` is zero-based.
SlicePiece translate_piece(const RegularSimplexFrame& frame, const SlicePiece& piece, int generator);

/// Same shape up to translation and positive homothety (no rotation).
bool congruent_shape(const SlicePiece& a, const SlicePiece& b);

/// Volume of the unsliced simplex.
double simplex_volume(const RegularSimplexFrame& frame);

struct ShapeClasses {
  /// Class label per piece, labels ordered by first appearance.
  std::vector<int> class_of;
  /// Index of the class representative (lexicographically smallest k).
  std::vector<int> representative;
  /// Every piece matched exactly one representative.
  bool well_separated = true;
};

/// Groups pieces into congruence classes by comparison with class representatives.
ShapeClasses classify_shapes(const std::vector<SlicePiece>& pieces);

}  // namespace polyiso
