#include "abcom/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace abcom {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae; even indices are the Kronrod extension,
// odd indices plus the centre form the embedded 7-point Gauss rule.
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

struct Segment {
  double lo, hi;
  double value;
  double error;
};

Segment kronrod15(const std::function<double(double)>& f, double lo, double hi) {
  const double centr = 0.5 * (lo + hi);
  const double hlgth = 0.5 * (hi - lo);

  double fv1[7], fv2[7];
  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(resk);

  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    fv1[jtw] = f(centr - absc);
    fv2[jtw] = f(centr + absc);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::fabs(fv1[jtw]) + std::fabs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    fv1[jtwm1] = f(centr - absc);
    fv2[jtwm1] = f(centr + absc);
    const double fsum = fv1[jtwm1] + fv2[jtwm1];
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::fabs(fv1[jtwm1]) + std::fabs(fv2[jtwm1]));
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
  }

  const double dhlgth = std::fabs(hlgth);
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  abserr = std::max(abserr, 50.0 * kEps * resabs);

  return {lo, hi, resk * hlgth, abserr};
}

}  // namespace

double regularized_lower_gamma(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a) || !(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("regularized_lower_gamma requires a > 0 and x >= 0");
  }
  if (x == 0.0) return 0.0;

  if (x < a + 1.0) {
    // series representation of P(a, x)
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * kEps) {
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
      }
    }
    throw NumericalError("incomplete gamma series did not converge");
  }

  // continued fraction for Q(a, x), P = 1 - Q
  const double fpmin = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  bool converged = false;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError("incomplete gamma continued fraction did not converge");
  }
  const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be > 0");
  }
  if (spec.max_subdivisions < 1) {
    throw std::invalid_argument("max_subdivisions must be >= 1");
  }
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("quadrature bounds must be finite with lo <= hi");
  }
  if (lo == hi) return {0.0, 0.0, 0};

  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  segs.push_back(kronrod15(f, lo, hi));

  for (int split = 0;; ++split) {
    double total = 0.0;
    double toterr = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      toterr += segs[i].error;
      if (segs[i].error > segs[worst].error) worst = i;
    }
    if (!std::isfinite(total)) {
      throw NumericalError("quadrature integrand produced non-finite values");
    }
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::fabs(total));
    if (toterr <= target) {
      return {total, toterr, static_cast<int>(segs.size())};
    }
    if (split >= spec.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge: error=" << toterr
          << " target=" << target << " intervals=" << segs.size();
      throw NumericalError(msg.str());
    }
    const Segment w = segs[worst];
    const double mid = 0.5 * (w.lo + w.hi);
    if (mid <= w.lo || mid >= w.hi) {
      std::ostringstream msg;
      msg << "adaptive quadrature interval collapsed at [" << w.lo << ", "
          << w.hi << "] with error=" << w.error;
      throw NumericalError(msg.str());
    }
    segs[worst] = kronrod15(f, w.lo, mid);
    segs.push_back(kronrod15(f, mid, w.hi));
  }
}

}  // namespace abcom
