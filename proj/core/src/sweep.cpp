#include "triple_couple/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "triple_couple/parallel.hpp"
#include "triple_couple/rng.hpp"
#include "triple_couple/sampling.hpp"

namespace triple_couple {

void SweepSpec::validate() const {
  if (n_values.empty()) throw std::invalid_argument("sweep: no n values");
  for (std::size_t n : n_values)
    if (n == 0 || n % 3 != 0) throw std::invalid_argument("sweep: n must be a positive multiple of 3");
  if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) throw std::invalid_argument("sweep: grid value outside [0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep: grid must be strictly increasing");
  }
  if (trials == 0) throw std::invalid_argument("sweep: trials must be positive");
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t g = spec.grid.size();
  const std::size_t per_n = g * spec.trials;
  std::vector<Decision> decisions(spec.n_values.size() * per_n, Decision::kNo);

  parallel_for(decisions.size(), spec.jobs, [&](std::size_t task) {
    const std::size_t ni = task / per_n;
    const std::size_t gi = (task % per_n) / spec.trials;
    const std::size_t t = task % spec.trials;
    Rng rng(RngSpec{spec.master_seed, ni}.child(gi).child(t));
    const std::size_t n = spec.n_values[ni];
    const double x = spec.grid[gi];
    decisions[task] = spec.model == SweepModel::kGraph
                          ? triangle_factor(sample_gnp(n, x, rng), spec.timeout).decision
                          : perfect_matching_3uniform(sample_h3(n, x, rng), spec.timeout).decision;
  });

  SweepResult out;
  for (std::size_t ni = 0; ni < spec.n_values.size(); ++ni) {
    std::vector<SweepPoint> column;
    for (std::size_t gi = 0; gi < g; ++gi) {
      SweepPoint pt;
      pt.n = spec.n_values[ni];
      pt.x = spec.grid[gi];
      pt.trials = spec.trials;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        const Decision d = decisions[ni * per_n + gi * spec.trials + t];
        pt.successes += d == Decision::kYes;
        pt.timeouts += d == Decision::kTimeout;
      }
      column.push_back(pt);
    }
    const Thresholds th = theoretical_thresholds(spec.n_values[ni]);
    CrossingFit fit =
        fit_crossing(column, spec.model == SweepModel::kGraph ? th.p_star : th.pi_star);
    fit.n = spec.n_values[ni];
    out.fits.push_back(std::move(fit));
    out.points.insert(out.points.end(), column.begin(), column.end());
  }
  return out;
}

CrossingFit fit_crossing(const std::vector<SweepPoint>& column, double theoretical) {
  CrossingFit fit;
  fit.theoretical = theoretical;
  if (!column.empty()) fit.n = column.front().n;

  std::vector<SweepPoint> pts;
  for (const SweepPoint& p : column) {
    if (p.decided() == 0) {
      fit.warnings.push_back("all trials timed out at x=" + std::to_string(p.x) + "; column unusable");
      continue;
    }
    if (p.x <= 0.0) {
      fit.warnings.push_back("x=0 column excluded from the log-scale fit");
      continue;
    }
    pts.push_back(p);
  }
  if (pts.size() < 2) {
    fit.warnings.push_back("fewer than two usable columns");
    if (!pts.empty()) fit.hull_low = fit.hull_high = pts.front().x;
    return fit;
  }

  // Leading all-failure and trailing all-success columns carry no location
  // information beyond bounding the crossing.
  std::size_t lo = 0;
  while (lo + 1 < pts.size() && pts[lo].successes == 0 && pts[lo + 1].successes == 0) ++lo;
  std::size_t hi = pts.size() - 1;
  while (hi > 0 && pts[hi].successes == pts[hi].decided() &&
         pts[hi - 1].successes == pts[hi - 1].decided())
    --hi;
  fit.hull_low = pts[std::min(lo, hi)].x;
  fit.hull_high = pts[std::max(lo, hi)].x;
  if (lo > 0 || hi + 1 < pts.size()) fit.warnings.push_back("degenerate columns shrink the grid hull");

  const bool all_zero = std::all_of(pts.begin(), pts.end(), [](const SweepPoint& p) { return p.successes == 0; });
  const bool all_one = std::all_of(pts.begin(), pts.end(), [](const SweepPoint& p) { return p.successes == p.decided(); });
  if (all_zero || all_one) {
    fit.warnings.push_back(all_zero ? "no successes at any grid point" : "all trials succeed at every grid point");
    return fit;
  }

  double xbar = 0.0, total = 0.0;
  for (const SweepPoint& p : pts) {
    xbar += std::log(p.x) * static_cast<double>(p.decided());
    total += static_cast<double>(p.decided());
  }
  xbar /= total;

  const auto loglik = [&](double a, double b) {
    double ll = 0.0;
    for (const SweepPoint& p : pts) {
      const double eta = a + b * (std::log(p.x) - xbar);
      const double k = static_cast<double>(p.successes);
      const double m = static_cast<double>(p.decided());
      // log sigmoid(eta) = -log1p(exp(-eta)), computed stably
      const double lp = eta >= 0 ? -std::log1p(std::exp(-eta)) : eta - std::log1p(std::exp(eta));
      const double lq = lp - eta;
      ll += k * lp + (m - k) * lq;
    }
    return ll;
  };

  double a = 0.0, b = 1.0;
  bool separated = false;
  const double span = std::log(pts.back().x) - std::log(pts.front().x);
  for (int iter = 0; iter < 200; ++iter) {
    double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
    for (const SweepPoint& p : pts) {
      const double d = std::log(p.x) - xbar;
      const double mu = 1.0 / (1.0 + std::exp(-(a + b * d)));
      const double m = static_cast<double>(p.decided());
      const double r = static_cast<double>(p.successes) - m * mu;
      const double w = m * mu * (1.0 - mu);
      g0 += r;
      g1 += r * d;
      h00 += w;
      h01 += w * d;
      h11 += w * d * d;
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 1e-300)) {
      separated = true;
      break;
    }
    double da = (h11 * g0 - h01 * g1) / det;
    double db = (h00 * g1 - h01 * g0) / det;
    const double before = loglik(a, b);
    double step = 1.0;
    while (step > 1e-8 && loglik(a + step * da, b + step * db) < before - 1e-12) step *= 0.5;
    a += step * da;
    b += step * db;
    if (span > 0 && std::abs(b) * span > 200.0) {
      separated = true;
      break;
    }
    if (std::abs(step * da) < 1e-10 && std::abs(step * db) < 1e-10) break;
  }

  if (separated) {
    fit.warnings.push_back("successes and failures are separated; crossing taken at the hull midpoint");
    fit.crossing = std::sqrt(fit.hull_low * fit.hull_high);
    fit.slope = std::numeric_limits<double>::infinity();
  } else {
    fit.slope = b;
    if (b <= 0.0) fit.warnings.push_back("fitted slope is not positive");
    fit.crossing = std::exp(xbar - a / b);
  }
  if (fit.crossing < fit.hull_low || fit.crossing > fit.hull_high) {
    fit.warnings.push_back("crossing clamped to the grid hull");
    fit.crossing = std::clamp(fit.crossing, fit.hull_low, fit.hull_high);
  }
  fit.usable = b > 0.0 || separated;
  fit.ratio = theoretical > 0.0 ? fit.crossing / theoretical : 0.0;
  return fit;
}

bool monotone_within(const std::vector<SweepPoint>& column, double sigmas) {
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i].decided() == 0) continue;
    for (std::size_t j = i + 1; j < column.size(); ++j) {
      if (column[j].decided() == 0) continue;
      const double ri = column[i].rate(), rj = column[j].rate();
      const double var = ri * (1 - ri) / static_cast<double>(column[i].decided()) +
                         rj * (1 - rj) / static_cast<double>(column[j].decided());
      if (ri - rj > sigmas * std::sqrt(var) + 1e-12) return false;
    }
  }
  return true;
}

}  // namespace triple_couple
