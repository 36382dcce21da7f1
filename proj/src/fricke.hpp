#pragma once

// Hyperbolic structures on the once-punctured torus in trace coordinates.
// A point is a triple (x, y, z) = (tr A, tr B, tr AB) on the Markov cubic
// x^2 + y^2 + z^2 = xyz with x, y, z > 2.

#include <array>
#include <string>
#include <vector>

#include "words.hpp"

namespace curvelab {

struct FrickePoint {
  double x = 3;
  double y = 3;
  double z = 3;
};

// |x^2 + y^2 + z^2 - xyz| relative to max(1, xyz).
double markov_residual(const FrickePoint& p);
// Throws DomainError unless the residual is below 1e-9 and every trace exceeds 2.
void validate(const FrickePoint& p);

struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;
  double trace() const { return a + d; }
  double det() const { return a * d - b * c; }
};
Mat2 operator*(const Mat2& m, const Mat2& n);
Mat2 inverse(const Mat2& m);

struct Holonomy {
  Mat2 A;
  Mat2 B;
};
Holonomy holonomy(const FrickePoint& p);

struct LengthReport {
  std::string word;
  double length = 0;
  double trace = 0;          // may overflow to +-inf for long words
  double log_abs_trace = 0;  // always finite
};

// Throws DomainError for the trivial word and for |trace| <= 2 + 1e-9.
LengthReport geodesic_length(const Word& w, const FrickePoint& p);
double collar_width(double length);

// Global chart of the locus: x = 2 cosh L, y = 2 coth L cosh(s + L/2), z = 2 coth L cosh(s - L/2).
struct ChartPoint {
  double L = 1;
  double s = 0;
};
FrickePoint from_chart(const ChartPoint& c);
ChartPoint to_chart(const FrickePoint& p);

enum class MinimizeStatus { converged, diverged, budget };

struct MinimizeOptions {
  std::vector<FrickePoint> seeds{{3, 3, 3}, {3, 3, 6}};
  int max_iterations = 300;
  double gradient_tolerance = 1e-6;
};

struct MinimizeResult {
  MinimizeStatus status = MinimizeStatus::budget;
  FrickePoint point;
  double value = 0;
  double gradient_norm = 0;  // finite-difference, along the locus
  int iterations = 0;
};

// Minimizes the total length of the given words over the locus.
MinimizeResult minimize_length(const std::vector<Word>& words, const MinimizeOptions& options = {});
MinimizeResult minimize_length(const CyclicWord& gamma, const MinimizeOptions& options = {});

// Finite-difference gradient norm of total length along the locus at p.
double tangent_gradient_norm(const std::vector<Word>& words, const FrickePoint& p);

// Minimizer of l(a) + l(b).
FrickePoint rose_minimizer();

// max over {a, b, ab, aB} of |log(l_p / l_q)|.
double distance_proxy(const FrickePoint& p, const FrickePoint& q);

// Shortest length over primitive, non-peripheral classes of length <= max_length.
double systole_proxy(const FrickePoint& p, int max_length);

const char* to_string(MinimizeStatus s);

}  // namespace curvelab
