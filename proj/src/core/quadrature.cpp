#include "wmlab/core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wmlab/core/error.hpp"

namespace wmlab {

namespace {

constexpr std::size_t kMaxPanels = 4000;

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Globally adaptive GK15: always split the panel with the largest error
// estimate until the total meets max(abs, rel * |value|).
QuadratureResult integrate_one(const std::function<double(double)>& f, double a, double b,
                               QuadratureTolerance tol) {
  QuadratureResult out;
  if (a == b) return out;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  std::function<double(double)> g = f;
  double ta = a, tb = b;
  if (std::isinf(b)) {
    // x = a + t / (1 - t)
    g = [&f, a](double t) {
      const double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
    ta = 0.0;
    tb = 1.0;
  }
  auto panel = [&](double lo, double hi) {
    Panel p{lo, hi, 0.0, 0.0, 0.0};
    p.value = GK::integrate(g, lo, hi, 0, 0.0, &p.error, &p.l1);
    return p;
  };
  std::priority_queue<Panel> queue;
  queue.push(panel(ta, tb));
  double value = queue.top().value, error = queue.top().error;
  while (error > std::max(tol.abs, tol.rel * std::abs(value)) && queue.size() < kMaxPanels) {
    const Panel worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    queue.pop();
    const Panel left = panel(worst.a, mid), right = panel(mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to drop the drift of the running updates.
  out.value = out.error = out.l1 = 0.0;
  while (!queue.empty()) {
    out.value += queue.top().value;
    out.error += queue.top().error;
    out.l1 += queue.top().l1;
    queue.pop();
  }
  if (!std::isfinite(out.value)) {
    throw ConvergenceError("quadrature produced a non-finite value");
  }
  return out;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           QuadratureTolerance tol) {
  return integrate_piecewise(f, a, b, {}, tol);
}

QuadratureResult integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                                     std::span<const double> breakpoints,
                                     QuadratureTolerance tol) {
  std::vector<double> cuts{a};
  for (double c : breakpoints) {
    if (c > a && c < b) cuts.push_back(c);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);

  QuadratureResult total;
  QuadratureTolerance piece = tol;
  piece.abs /= double(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    QuadratureResult part = integrate_one(f, cuts[i], cuts[i + 1], piece);
    total.value += part.value;
    total.error += part.error;
    total.l1 += part.l1;
  }
  const double allowed = std::max(tol.abs, tol.rel * std::abs(total.value));
  if (total.error > allowed) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge: error estimate "
        << total.error << " > " << allowed;
    throw ConvergenceError(msg.str());
  }
  return total;
}

}  // namespace wmlab
