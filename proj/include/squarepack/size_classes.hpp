#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace squarepack {

class InvalidHeight : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConstantsInconsistent : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Size class of an input square: large (> 1/2), medium (1/4, 1/2], or
/// subclass k of the squares with height <= 1/4. Sub(0) is the small class,
/// Sub(k >= 1) the very small subclasses.
struct SizeClass {
  enum class Kind { large, medium, sub };

  Kind kind = Kind::sub;
  int sub = 0;

  static constexpr SizeClass large() { return {Kind::large, -1}; }
  static constexpr SizeClass medium() { return {Kind::medium, -1}; }
  static constexpr SizeClass subclass(int k) { return {Kind::sub, k}; }

  bool is_large() const { return kind == Kind::large; }
  bool is_medium() const { return kind == Kind::medium; }
  bool is_small() const { return kind == Kind::sub && sub == 0; }
  bool is_very_small() const { return kind == Kind::sub && sub >= 1; }

  /// "large", "medium", "c0", "c1", ...
  std::string name() const;

  bool operator==(const SizeClass&) const = default;
};

struct ClassParams {
  int k = 0;
  double max_height = 0.0;
  double ratio = 0.0;
  double min_height = 0.0;  // max_height * ratio, exclusive lower bound
};

/// Packing ratio r_k.
double class_ratio(int k);

/// (h_k, r_k, h_k * r_k). Each h_k is the double nearest the exact product of
/// the ratios, memoized once, so
/// h_{k+1} == class_params(k).min_height bit for bit.
ClassParams class_params(int k);

/// Deepest subclass index in the memoized table; below it heights are
/// smaller than 1e-15 and classify() refuses them.
int max_subclass();

/// Unique class whose half-open interval (lower, upper] contains `height`.
/// Throws InvalidHeight for height <= 0, > 1, NaN, or below the table.
SizeClass classify(double height);

/// Exclusive lower / inclusive upper height bound of a class. The large
/// class is (1/2, 1].
double class_lower(const SizeClass& c);
double class_upper(const SizeClass& c);

struct RatioMargin {
  int k = 0;
  /// Guaranteed closed-column density minus 1/2.
  double margin = 0.0;
};

/// Checks r_1^2 >= 1/2 (two-square columns) and r_k - h_k r_k^2 / (1/4) > 1/2
/// for k in [2, last_k]. Throws ConstantsInconsistent on a non-positive margin.
std::vector<RatioMargin> validate_ratios(int last_k = 12);

enum class BufferGroup { b0_b3_row, b1_b2_b4plus_row };

/// Horizontal extent of a buffer row: h_3 + 1/4 for the b3/b0 row and
/// h_1 + h_2 + h_4 / (1 - r_{3+}) for the b1/b2/b4+ row.
double buffer_span(BufferGroup which);

/// Length of a vertical column (the height of one primary row).
inline constexpr double kColumnLength = 0.25;

}  // namespace squarepack
