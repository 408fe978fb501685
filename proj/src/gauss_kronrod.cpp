#include "stqm/gauss_kronrod.hpp"

#include <algorithm>
#include <cmath>

namespace stqm {

namespace {

// 15-point Kronrod abscissae (nonnegative half) with the embedded 7-point
// Gauss rule on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
  std::complex<double> kronrod{0.0, 0.0};
  double error = 0.0;
};

PanelResult gk15_panel(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  std::complex<double> gauss{0.0, 0.0};
  std::complex<double> kronrod{0.0, 0.0};
  for (int k = 0; k < 8; ++k) {
    const double dx = half * kXgk[k];
    std::complex<double> pair;
    if (k == 7) {
      pair = f(mid);
    } else {
      pair = f(mid - dx) + f(mid + dx);
    }
    kronrod += kWgk[k] * pair;
    if (k % 2 == 1) gauss += kWg[k / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return PanelResult{kronrod, std::abs(kronrod - gauss)};
}

void refine(const std::function<std::complex<double>(double)>& f, double a, double b,
            const PanelResult& panel, double tol, int depth, int max_depth, QuadResult& acc) {
  if (panel.error <= tol || depth >= max_depth) {
    acc.value += panel.kronrod;
    acc.error_estimate += panel.error;
    return;
  }
  const double mid = 0.5 * (a + b);
  const PanelResult left = gk15_panel(f, a, mid);
  const PanelResult right = gk15_panel(f, mid, b);
  acc.evaluations += 30;
  refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth, acc);
  refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth, acc);
}

}  // namespace

QuadResult integrate_gk15(const std::function<std::complex<double>(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
  QuadResult acc;
  const PanelResult whole = gk15_panel(f, a, b);
  acc.evaluations = 15;
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole.kronrod));
  refine(f, a, b, whole, tol, 0, max_depth, acc);
  return acc;
}

}  // namespace stqm
