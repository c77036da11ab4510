#include "riemann.hpp"

#include <cmath>

#include "error.hpp"

namespace lig {

namespace {

// log f_plus(b), written with log1p so that small b keeps full precision.
double log_fplus(double b) { return b > 0.0 ? std::log1p(b + std::sqrt(b * b + 2.0 * b)) : 0.0; }

struct Curves {
  const Eos& eos;

  double a(double b) const { return -0.5 * log_fplus(2.0 * eos.K() * b); }
  double c(double b) const { return eos.half_root() * log_fplus(b); }
  double s1r(double b) const { return a(b) - c(b); }
  double s1s(double b) const { return a(b) + c(b); }
  double s2r(double b) const { return a(b) + c(b); }
  double s2s(double b) const { return a(b) - c(b); }
};

// Bisection for g(beta) = target, g decreasing with g(0) = 0 and target <= 0.
template <class G>
double invert(const G& g, double target, const RiemannOptions& opt, double tol) {
  if (target >= 0.0) return 0.0;
  int k = 5;
  double hi = 1e5;
  while (g(hi) > target) {
    hi *= 10.0;
    if (++k > 300) throw Error(Errc::no_convergence, "wave curve bracket search diverged");
  }
  double lo = hi / 10.0;
  --k;
  while (g(lo) <= target) {
    hi = lo;
    if (--k < -20) {
      lo = 0.0;
      break;
    }
    lo /= 10.0;
  }
  if (std::fabs(g(hi) - target) < tol) return hi;
  for (int it = 0; it < opt.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (std::fabs(gm - target) < tol || !(lo < mid && mid < hi)) return mid;
    if (gm > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw Error(Errc::no_convergence, "wave curve bisection did not converge");
}

template <class G>
double invert(const G& g, double target, const RiemannOptions& opt) {
  return invert(g, target, opt, opt.eps);
}

Wave rarefaction(double beta) {
  Wave w;
  w.kind = WaveKind::rarefaction;
  w.beta = beta;
  return w;
}

Wave shock(double beta) {
  Wave w;
  w.kind = WaveKind::shock;
  w.beta = beta;
  return w;
}

}  // namespace

double f_pm(double beta, Sign sign) {
  if (beta <= 0.0) return 1.0;
  const double fp = 1.0 + beta + std::sqrt(beta * beta + 2.0 * beta);
  // f_plus * f_minus = 1 exactly; the reciprocal avoids cancellation in f_minus.
  return sign == Sign::plus ? fp : 1.0 / fp;
}

double beta_of(double v, double vl, const Eos& eos) {
  const double sig = eos.sigma();
  const double d = v - vl;
  return (1.0 + sig) * (1.0 + sig) / (2.0 * sig) * d * d /
         ((1.0 - v) * (1.0 + v) * (1.0 - vl) * (1.0 + vl));
}

WaveCurvePoint wave_curve(int family, WaveKind kind, double beta, const Eos& eos) {
  if (kind == WaveKind::rarefaction) {
    return family == 1 ? WaveCurvePoint{beta, beta, 0.0} : WaveCurvePoint{beta, 0.0, beta};
  }
  const Curves cv{eos};
  if (family == 1) return {beta, cv.s1r(beta), cv.s1s(beta)};
  return {beta, cv.s2r(beta), cv.s2s(beta)};
}

double rest_shock_speed(double f, const Eos& eos) {
  const double sig = eos.sigma();
  return std::sqrt((f + sig) / (f + 1.0 / sig));
}

Region classify_region(Invariants ul, Invariants ur, const Eos& eos, const RiemannOptions& opt) {
  const double dr = ur.r - ul.r;
  const double ds = ur.s - ul.s;
  if (dr >= 0.0 && ds >= 0.0) return Region::IV;
  if (dr < 0.0 && ds >= 0.0) return Region::III;
  if (dr >= 0.0 && ds < 0.0) return Region::I;
  // Both shock curves from U_L run through this quadrant. U_R right of the 2-shock curve
  // belongs to R1S2, above the 1-shock curve to S1R2; only the wedge between is S1S2.
  const Curves cv{eos};
  const double b2 = invert([&](double b) { return cv.s2s(b); }, ds, opt);
  if (cv.s2r(b2) <= dr) return Region::I;
  const double b1 = invert([&](double b) { return cv.s1r(b); }, dr, opt);
  if (cv.s1s(b1) <= ds) return Region::III;
  return Region::II;
}

WaveFan solve_middle_state(Fluid ul, Fluid ur, const Eos& eos, const RiemannOptions& opt) {
  if (!is_valid(ul) || !is_valid(ur)) {
    throw Error(Errc::nonphysical_input, "Riemann states must have rho > 0 and |v| < 1");
  }
  if (!(opt.eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  WaveFan fan;
  fan.left = ul;
  fan.right = ur;
  const Invariants il = to_invariants(ul, eos);
  const Invariants ir = to_invariants(ur, eos);
  const Curves cv{eos};
  const double dr = ir.r - il.r;
  const double ds = ir.s - il.s;

  if (dr == 0.0 && ds == 0.0) {
    fan.region = Region::IV;
    fan.middle = ul;
    fan.wave1 = rarefaction(0.0);
    fan.wave2 = rarefaction(0.0);
    wave_speeds(fan, eos);
    return fan;
  }

  fan.region = classify_region(il, ir, eos, opt);
  switch (fan.region) {
    case Region::IV:
      fan.middle = from_invariants({ir.r, il.s}, eos);
      fan.wave1 = rarefaction(dr);
      fan.wave2 = rarefaction(ds);
      break;
    case Region::III: {
      const double b1 = invert([&](double b) { return cv.s1r(b); }, dr, opt);
      const double sm = il.s + cv.s1s(b1);
      fan.middle = from_invariants({ir.r, sm}, eos);
      fan.wave1 = shock(b1);
      fan.wave2 = rarefaction(ir.s - sm);
      break;
    }
    case Region::I: {
      const double b2 = invert([&](double b) { return cv.s2s(b); }, ds, opt);
      const double rstar = il.r + cv.s2r(b2);
      fan.middle = from_invariants({il.r + (ir.r - rstar), il.s}, eos);
      fan.wave1 = rarefaction(ir.r - rstar);
      fan.wave2 = shock(b2);
      break;
    }
    case Region::II: {
      // Each shock curve is tangent to one axis (S1s and S2r are O(beta^{3/2})), so beta2 is
      // recovered from the s-equation through the dominant S2s and the bisection runs on the
      // r-residual. The 1-shock parameter ends where S1s alone reaches s_R.
      double lo = 0.0;
      double hi = invert([&](double b) { return cv.s1s(b); }, ds, opt, 0.0);
      auto residual = [&](double b1, double& b2) {
        b2 = invert([&](double b) { return cv.s2s(b); }, ds - cv.s1s(b1), opt, 1e-3 * opt.eps);
        return il.r + cv.s1r(b1) + cv.s2r(b2) - ir.r;
      };
      double b2 = 0.0;
      const double h_lo = residual(lo, b2);
      const double h_hi = il.r + cv.s1r(hi) - ir.r;
      if ((h_hi > 0.0) == (h_lo > 0.0) && std::fabs(h_hi) >= opt.eps) {
        throw Error(Errc::no_convergence, "two-shock residual does not change sign");
      }
      double b1 = lo;
      double h = h_lo;
      // Narrow the bracket a decade at a time; hi can be astronomically large as sigma -> 1.
      for (double a = 0.1 * hi; a > 1e-300 && std::fabs(h_hi) >= opt.eps; a *= 0.1) {
        const double ha = residual(a, b2);
        if ((ha > 0.0) == (h_lo > 0.0)) {
          lo = a;
          b1 = a;
          h = ha;
          break;
        }
        hi = a;
      }
      int it = 0;
      for (; it < opt.max_iter && std::fabs(h) >= opt.eps; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(lo < mid && mid < hi)) break;
        b1 = mid;
        h = residual(b1, b2);
        if ((h > 0.0) == (h_lo > 0.0)) {
          lo = b1;
        } else {
          hi = b1;
        }
      }
      if (std::fabs(h) >= opt.eps && it == opt.max_iter) {
        throw Error(Errc::no_convergence, "two-shock bisection did not converge");
      }
      fan.middle = from_invariants({il.r + cv.s1r(b1), il.s + cv.s1s(b1)}, eos);
      fan.wave1 = shock(b1);
      fan.wave2 = shock(b2);
      break;
    }
  }
  wave_speeds(fan, eos);
  return fan;
}

void wave_speeds(WaveFan& fan, const Eos& eos) {
  Wave& w1 = fan.wave1;
  Wave& w2 = fan.wave2;
  if (w1.kind == WaveKind::shock) {
    // The 1-family moves left in the rest frame of the state ahead of it.
    const double s = lorentz_compose(fan.left.v, -rest_shock_speed(f_pm(w1.beta, Sign::plus), eos));
    w1.lo = w1.hi = s;
  } else {
    w1.lo = eigenvalues(fan.left, eos).first;
    w1.hi = eigenvalues(fan.middle, eos).first;
  }
  if (w2.kind == WaveKind::shock) {
    const double s = lorentz_compose(fan.middle.v, rest_shock_speed(f_pm(w2.beta, Sign::minus), eos));
    w2.lo = w2.hi = s;
  } else {
    w2.lo = eigenvalues(fan.middle, eos).second;
    w2.hi = eigenvalues(fan.right, eos).second;
  }
}

Fluid sample(const WaveFan& fan, double xi, const Eos& eos) {
  const Wave& w1 = fan.wave1;
  const Wave& w2 = fan.wave2;
  if (xi < w1.lo) return fan.left;
  if (w1.kind == WaveKind::rarefaction && xi <= w1.hi) {
    const double v = v_from_lambda1(xi, eos);
    const double s = to_invariants(fan.left, eos).s;
    return {partial_density(s, Branch::s, v, eos), v};
  }
  if (xi < w2.lo) return fan.middle;
  if (w2.kind == WaveKind::rarefaction && xi <= w2.hi) {
    const double v = v_from_lambda2(xi, eos);
    const double r = to_invariants(fan.right, eos).r;
    return {partial_density(r, Branch::r, v, eos), v};
  }
  return fan.right;
}

Fluid sample(Fluid ul, Fluid ur, double xi, const Eos& eos, const RiemannOptions& opt) {
  return sample(solve_middle_state(ul, ur, eos, opt), xi, eos);
}

}  // namespace lig
