#include "jointboost/numerics.hpp"

#include "jointboost/types.hpp"

#include <cmath>
#include <limits>

namespace jointboost {

std::uint64_t split_mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t substream) {
  const std::uint64_t a = split_mix64(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return split_mix64(a ^ (0x6a09e667f3bcc908ULL * (substream + 1)));
}

// Brent's localmin (Algorithms for Minimization without Derivatives, 1973)
// applied to -f.
ScalarMax maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          double xtol, int max_iter) {
  if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: empty interval");
  if (!(xtol > 0.0)) throw std::invalid_argument("maximize_scalar: xtol must be positive");

  int evals = 0;
  auto g = [&](double x) {
    const double v = f(x);
    ++evals;
    if (!std::isfinite(v))
      throw numeric_error("non-finite objective value at x = " + std::to_string(x));
    return -v;
  };

  const double golden = 0.3819660112501051;  // (3 - sqrt(5)) / 2
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());

  double a = lo, b = hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = g(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;

  for (int iter = 0; iter < max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol = eps * std::abs(x) + xtol;
    if (std::abs(x - m) <= 2.0 * tol - 0.5 * (b - a)) break;

    double p = 0.0, q = 0.0, r = 0.0;
    bool take_golden = true;
    if (std::abs(e) > tol) {
      // Try a parabolic step through x, w, v.
      r = (x - w) * (fx - fv);
      q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        double u = x + d;
        if (u - a < 2.0 * tol || b - u < 2.0 * tol) d = (x < m) ? tol : -tol;
        take_golden = false;
      }
    }
    if (take_golden) {
      e = (x < m) ? b - x : a - x;
      d = golden * e;
    }

    const double u = (std::abs(d) >= tol) ? x + d : x + (d > 0.0 ? tol : -tol);
    const double fu = g(u);

    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }

  return {x, -fx, evals};
}

}  // namespace jointboost
