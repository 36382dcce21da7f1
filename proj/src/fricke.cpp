#include "fricke.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "errors.hpp"
#include "jet.hpp"

namespace curvelab {

namespace {

constexpr double kParabolicSlack = 1e-9;
constexpr double kBoxLow = 2 + 1e-6;
constexpr double kBoxHigh = 1e6;

bool in_box(const FrickePoint& p) {
  for (double t : {p.x, p.y, p.z})
    if (!(t > kBoxLow && t < kBoxHigh)) return false;
  return true;
}

template <class T>
struct M2 {
  T a, b, c, d;
};

template <class T>
M2<T> mul(const M2<T>& m, const M2<T>& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

long double value_of(long double t) { return t; }
long double value_of(const Jet2& t) { return t.v; }

template <class T>
M2<T> scale_down(const M2<T>& m, int e) {
  const double f = std::ldexp(1.0, -e);
  return {f * m.a, f * m.b, f * m.c, f * m.d};
}

// The four letter matrices A, A^-1, B, B^-1, indexed by letter_index.  The
// basepoint sits where the axes of A and B cross, which keeps long products
// well conditioned: A is diagonal and B symmetric.
template <class T>
std::array<M2<T>, 4> letter_matrices(const T& x, const T& y, const T& z) {
  using std::sqrt;
  const T sh = sqrt(0.25 * x * x - T(1.0));  // sinh of half the translation length of A
  const T e = 0.5 * x + sh;
  const T ie = 0.5 * x - sh;
  const T ish = reciprocal(sh);
  const T tilt = 0.5 * (z - 0.5 * x * y) * ish;
  const T b11 = 0.5 * y + tilt;
  const T b22 = 0.5 * y - tilt;
  return {M2<T>{e, T(0.0), T(0.0), ie}, M2<T>{ie, T(0.0), T(0.0), e}, M2<T>{b11, ish, ish, b22},
          M2<T>{b22, -ish, -ish, b11}};
}

template <class T>
struct ScaledTrace {
  T trace;          // scaled trace
  double log_scale;  // natural log of the scale factor
};

template <class T>
ScaledTrace<T> scaled_trace(const Word& w, const std::array<M2<T>, 4>& mats) {
  M2<T> m = mats[static_cast<std::size_t>(letter_index(w[0]))];
  int exponent = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    m = mul(m, mats[static_cast<std::size_t>(letter_index(w[i]))]);
    const long double big = std::max(std::max(std::abs(value_of(m.a)), std::abs(value_of(m.b))),
                                     std::max(std::abs(value_of(m.c)), std::abs(value_of(m.d))));
    if (big > 1e64L) {
      int e;
      std::frexp(static_cast<double>(big), &e);
      m = scale_down(m, e);
      exponent += e;
    }
  }
  return {m.a + m.d, exponent * std::log(2.0)};
}

// 2 arccosh(|t| / 2) with t = t' e^lambda.
template <class T>
T length_from_trace(const ScaledTrace<T>& st) {
  using std::abs, std::log, std::sqrt;
  const T ta = abs(st.trace);
  const double lam = st.log_scale;
  const long double log_abs = lam + std::log(value_of(ta));
  if (!(log_abs > std::log(2 + kParabolicSlack))) throw DomainError("peripheral or elliptic class: |trace| <= 2");
  const double tail = std::exp(-2 * lam);
  return 2.0 * (T(lam) + log(0.5 * ta + sqrt(0.25 * ta * ta - T(tail))));
}

Word checked(const Word& w) {
  if (w.empty()) throw DomainError("length of the trivial word");
  if (w.rank_used() > 2) throw UsageError("trace coordinates cover rank-2 words only");
  return w;
}

template <class T>
T total_length(const std::vector<Word>& words, const T& L, const T& s) {
  using std::cosh, std::sinh;
  const T x = 2.0 * cosh(L);
  const T ct = cosh(L) / sinh(L);
  const T y = 2.0 * ct * cosh(s + 0.5 * L);
  const T z = 2.0 * ct * cosh(s - 0.5 * L);
  const auto mats = letter_matrices(x, y, z);
  T sum(0.0);
  for (const Word& w : words) sum = sum + length_from_trace(scaled_trace(w, mats));
  return sum;
}

// Partial derivatives of (x, y, z) with respect to (L, s).
std::array<std::array<double, 2>, 3> chart_jacobian(const ChartPoint& c) {
  const Jet2 L = Jet2::variable(c.L, 0);
  const Jet2 s = Jet2::variable(c.s, 1);
  const Jet2 ct = cosh(L) / sinh(L);
  const Jet2 comps[3] = {2.0 * cosh(L), 2.0 * ct * cosh(s + 0.5 * L), 2.0 * ct * cosh(s - 0.5 * L)};
  std::array<std::array<double, 2>, 3> j{};
  for (int i = 0; i < 3; ++i)
    j[static_cast<std::size_t>(i)] = {static_cast<double>(comps[i].g[0]), static_cast<double>(comps[i].g[1])};
  return j;
}

// sqrt(g^T (J^T J)^-1 g): norm of the gradient along the locus in ambient coordinates.
double tangent_norm(const ChartPoint& c, double g0, double g1) {
  const auto J = chart_jacobian(c);
  double m00 = 0, m01 = 0, m11 = 0;
  for (const auto& row : J) {
    m00 += row[0] * row[0];
    m01 += row[0] * row[1];
    m11 += row[1] * row[1];
  }
  const double det = m00 * m11 - m01 * m01;
  const double q = (m11 * g0 * g0 - 2 * m01 * g0 * g1 + m00 * g1 * g1) / det;
  return std::sqrt(std::max(0.0, q));
}

double fd_tangent_norm(const std::vector<Word>& words, const ChartPoint& c) {
  const double h = 1e-4;
  // Extended precision: long products of unbalanced matrices lose digits to cancellation.
  auto f = [&](double L, double s) {
    return total_length<long double>(words, static_cast<long double>(L), static_cast<long double>(s));
  };
  auto d5 = [&](auto&& shift) {
    return (-shift(2 * h) + 8 * shift(h) - 8 * shift(-h) + shift(-2 * h)) / (12 * h);
  };
  const double gL = d5([&](double t) { return f(c.L + t, c.s); });
  const double gs = d5([&](double t) { return f(c.L, c.s + t); });
  return tangent_norm(c, gL, gs);
}

struct Run {
  MinimizeStatus status;
  ChartPoint at;
  double value;
  int iterations;
};

Run newton(const std::vector<Word>& words, ChartPoint c, const MinimizeOptions& opt) {
  auto eval = [&](const ChartPoint& q) {
    return total_length(words, Jet2::variable(q.L, 0), Jet2::variable(q.s, 1));
  };
  auto value = [&](const ChartPoint& q) -> std::optional<long double> {
    try {
      const long double v = total_length<long double>(words, q.L, q.s);
      if (std::isfinite(v)) return v;
    } catch (const DomainError&) {
    }
    return std::nullopt;
  };
  Jet2 f = eval(c);
  long double fv = total_length<long double>(words, c.L, c.s);
  for (int it = 0; it < opt.max_iterations; ++it) {
    const double g0 = static_cast<double>(f.g[0]), g1 = static_cast<double>(f.g[1]);
    const double gnorm = tangent_norm(c, g0, g1);
    if (gnorm < 1e-3 * opt.gradient_tolerance) return {MinimizeStatus::converged, c, static_cast<double>(fv), it};
    // The double-precision jets can stall short of that; the extended-precision check decides.
    if (it % 10 == 9 && fd_tangent_norm(words, c) < 1e-2 * opt.gradient_tolerance)
      return {MinimizeStatus::converged, c, static_cast<double>(fv), it};
    double h00 = static_cast<double>(f.h[0]), h01 = static_cast<double>(f.h[1]), h11 = static_cast<double>(f.h[2]);
    // Shift the Hessian until it is safely positive definite.
    const double tr = h00 + h11;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (h00 - h11) * (h00 - h11) + h01 * h01));
    const double min_eig = 0.5 * tr - disc;
    const double floor = 1e-8 * (1 + std::abs(tr));
    if (min_eig < floor) {
      const double shift = floor - min_eig + 1e-3 * (1 + std::abs(tr));
      h00 += shift;
      h11 += shift;
    }
    const double det = h00 * h11 - h01 * h01;
    const double p0 = -(h11 * g0 - h01 * g1) / det;
    const double p1 = -(-h01 * g0 + h00 * g1) / det;
    const double slope = g0 * p0 + g1 * p1;
    double step = 1;
    bool accepted = false;
    ChartPoint trial = c;
    long double trial_value = fv;
    for (int back = 0; back < 60; ++back, step *= 0.5) {
      trial = {c.L + step * p0, c.s + step * p1};
      const auto v = value(trial);
      if (v && *v < fv && *v <= fv + 1e-4 * step * slope) {
        accepted = true;
        trial_value = *v;
        break;
      }
    }
    if (!accepted) {
      // No descent left at machine precision; accept the point if it is stationary enough.
      const double fd = fd_tangent_norm(words, c);
      return {fd < opt.gradient_tolerance ? MinimizeStatus::converged : MinimizeStatus::budget, c,
              static_cast<double>(fv), it};
    }
    if (!in_box(from_chart(trial))) return {MinimizeStatus::diverged, trial, static_cast<double>(trial_value), it + 1};
    c = trial;
    f = eval(c);
    fv = trial_value;
  }
  return {MinimizeStatus::budget, c, static_cast<double>(fv), opt.max_iterations};
}

}  // namespace

double markov_residual(const FrickePoint& p) {
  const double xyz = p.x * p.y * p.z;
  return std::abs(p.x * p.x + p.y * p.y + p.z * p.z - xyz) / std::max(1.0, std::abs(xyz));
}

void validate(const FrickePoint& p) {
  if (!(p.x > 2 && p.y > 2 && p.z > 2)) throw DomainError("Fricke traces must exceed 2");
  if (!(markov_residual(p) < 1e-9)) throw DomainError("point is off the Markov cubic");
}

Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

Mat2 inverse(const Mat2& m) {
  const double det = m.det();
  return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

Holonomy holonomy(const FrickePoint& p) {
  validate(p);
  const auto m = letter_matrices(p.x, p.y, p.z);
  return {{m[0].a, m[0].b, m[0].c, m[0].d}, {m[2].a, m[2].b, m[2].c, m[2].d}};
}

LengthReport geodesic_length(const Word& w, const FrickePoint& p) {
  validate(p);
  const Word ww = checked(reduce(w));
  const auto st = scaled_trace(ww, letter_matrices(p.x, p.y, p.z));
  LengthReport r;
  r.word = w.str();
  r.log_abs_trace = st.log_scale + std::log(std::abs(st.trace));
  r.trace = st.trace * std::exp(st.log_scale);
  r.length = length_from_trace(st);
  return r;
}

double collar_width(double length) {
  if (!(length > 0)) throw DomainError("collar width needs a positive length");
  return std::asinh(1 / std::sinh(length / 2));
}

FrickePoint from_chart(const ChartPoint& c) {
  const double ct = std::cosh(c.L) / std::sinh(c.L);
  return {2 * std::cosh(c.L), 2 * ct * std::cosh(c.s + c.L / 2), 2 * ct * std::cosh(c.s - c.L / 2)};
}

ChartPoint to_chart(const FrickePoint& p) {
  validate(p);
  const double L = std::acosh(p.x / 2);
  const double t = (p.y - p.z) / ((p.y + p.z) * std::tanh(L / 2));
  if (!(std::abs(t) < 1)) throw DomainError("point lies outside the chart");
  return {L, std::atanh(t)};
}

MinimizeResult minimize_length(const std::vector<Word>& words, const MinimizeOptions& options) {
  if (words.empty()) throw UsageError("nothing to minimize");
  std::vector<Word> ws;
  for (const Word& w : words) ws.push_back(checked(reduce(w)));
  if (options.seeds.empty()) throw UsageError("minimization needs a seed");
  std::optional<Run> best;
  std::optional<Run> fallback;
  for (const FrickePoint& seed : options.seeds) {
    const Run run = newton(ws, to_chart(seed), options);
    if (run.status == MinimizeStatus::converged) {
      if (!best || run.value < best->value) best = run;
    } else if (!fallback || run.status == MinimizeStatus::diverged) {
      fallback = run;
    }
  }
  const Run& run = best ? *best : *fallback;
  MinimizeResult out;
  out.status = run.status;
  out.point = from_chart(run.at);
  out.value = run.value;
  out.iterations = run.iterations;
  if (run.status != MinimizeStatus::diverged) {
    out.gradient_norm = fd_tangent_norm(ws, run.at);
    if (run.status == MinimizeStatus::converged && !(out.gradient_norm < options.gradient_tolerance))
      out.status = MinimizeStatus::budget;
  }
  return out;
}

MinimizeResult minimize_length(const CyclicWord& gamma, const MinimizeOptions& options) {
  return minimize_length(std::vector<Word>{gamma.word()}, options);
}

double tangent_gradient_norm(const std::vector<Word>& words, const FrickePoint& p) {
  std::vector<Word> ws;
  for (const Word& w : words) ws.push_back(checked(reduce(w)));
  return fd_tangent_norm(ws, to_chart(p));
}

FrickePoint rose_minimizer() {
  static const FrickePoint cached = [] {
    const MinimizeResult r = minimize_length({Word::parse("a"), Word::parse("b")}, {{{3, 3, 3}}, 300, 1e-6});
    if (r.status != MinimizeStatus::converged) throw std::logic_error("rose length failed to converge");
    return r.point;
  }();
  return cached;
}

double distance_proxy(const FrickePoint& p, const FrickePoint& q) {
  double worst = 0;
  for (const char* w : {"a", "b", "ab", "aB"}) {
    const Word word = Word::parse(w);
    worst = std::max(worst, std::abs(std::log(geodesic_length(word, p).length / geodesic_length(word, q).length)));
  }
  return worst;
}

double systole_proxy(const FrickePoint& p, int max_length) {
  if (max_length < 2) throw UsageError("systole proxy needs max_length >= 2");
  validate(p);
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= max_length; ++n) {
    for (const CyclicWord& c : cyclic_words_of_length(2, n)) {
      if (primitive_root(c).power != 1) continue;
      const auto st = scaled_trace(c.word(), letter_matrices(p.x, p.y, p.z));
      if (st.log_scale + std::log(std::abs(st.trace)) <= std::log(2 + kParabolicSlack)) continue;  // peripheral
      best = std::min(best, length_from_trace(st));
    }
  }
  return best;
}

const char* to_string(MinimizeStatus s) {
  switch (s) {
    case MinimizeStatus::converged:
      return "converged";
    case MinimizeStatus::diverged:
      return "diverged";
    case MinimizeStatus::budget:
      return "budget";
  }
  return "unknown";
}

}  // namespace curvelab
