// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "masub/validation.h"

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "masub/coordinator.h"
#include "masub/mirror.h"
#include "masub/multilinear.h"
#include "masub/regret.h"
#include "masub/surrogate.h"

namespace masub {
namespace {

// Times a suite and fills in the bookkeeping fields.
class SuiteTimer {
 public:
  explicit SuiteTimer(PropertyReport& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~SuiteTimer() {
    report_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
  }

  // Records one case; `violation` > 0 means it failed by that much.
  void Case(double violation) {
    ++report_.cases;
    if (violation > 0.0) {
      ++report_.failures;
      report_.max_violation = std::max(report_.max_violation, violation);
    }
  }

 private:
  PropertyReport& report_;
  std::chrono::steady_clock::time_point start_;
};

double Uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * UniformUnit(rng);
}

int UniformInt(Rng& rng, int lo, int hi) {
  return lo + UniformIndex(rng, hi - lo + 1);
}

std::vector<double> RandomPoint(int n, Rng& rng) {
  std::vector<double> x(n);
  for (double& v : x) v = UniformUnit(rng);
  return x;
}

// Random point of {b >= 0, sum b <= 1} with positive entries.
std::vector<double> RandomSubSimplex(int m, Rng& rng) {
  std::vector<double> u(m);
  double total = 0.0;
  for (double& v : u) {
    v = 1e-3 + UniformUnit(rng);
    total += v;
  }
  const double mass = Uniform(rng, 0.05, 1.0);
  for (double& v : u) v *= mass / total;
  return u;
}

PropertyReport Named(std::string name) {
  PropertyReport report;
  report.name = std::move(name);
  return report;
}

double Scale(double c) { return ApproximationFactor(c); }

std::string Format(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Oracles.

double NaiveMultilinear(const SetFunction& f, std::span<const double> x) {
  const int n = f.ground_size();
  if (static_cast<int>(x.size()) != n || n > 20) {
    throw Error(ErrorCode::kCapability, "naive multilinear needs n <= 20");
  }
  double total = 0.0;
  std::vector<int> set;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double p = 1.0;
    set.clear();
    for (int a = 0; a < n; ++a) {
      if (mask & (1u << a)) {
        p *= x[a];
        set.push_back(a);
      } else {
        p *= 1.0 - x[a];
      }
    }
    if (p != 0.0) total += p * f.Value(set);
  }
  return total;
}

void GaussLegendre(int k, std::vector<double>& nodes,
                   std::vector<double>& weights) {
  nodes.assign(k, 0.0);
  weights.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    // Newton on P_k from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

double SurrogateDirectional(const SetFunction& f, std::span<const double> x,
                            std::span<const double> d, double c) {
  const int n = f.ground_size();
  static constexpr int kPanels = 4;
  static constexpr int kPoints = 16;
  std::vector<double> nodes;
  std::vector<double> weights;
  GaussLegendre(kPoints, nodes, weights);
  double total = 0.0;
  std::vector<double> zx(n);
  for (int panel = 0; panel < kPanels; ++panel) {
    const double lo = static_cast<double>(panel) / kPanels;
    const double half = 0.5 / kPanels;
    for (int q = 0; q < kPoints; ++q) {
      const double z = lo + half * (nodes[q] + 1.0);
      for (int a = 0; a < n; ++a) zx[a] = z * x[a];
      double dir = 0.0;
      for (int a = 0; a < n; ++a) {
        if (d[a] == 0.0) continue;
        const double keep = zx[a];
        zx[a] = 1.0;
        const double hi = NaiveMultilinear(f, zx);
        zx[a] = 0.0;
        const double lo_val = NaiveMultilinear(f, zx);
        zx[a] = keep;
        dir += d[a] * (hi - lo_val);
      }
      total += half * weights[q] * std::exp(c * (z - 1.0)) * dir;
    }
  }
  return total;
}

std::vector<double> NumericEntropicMinimizer(std::span<const double> y,
                                             std::span<const double> z) {
  const size_t m = y.size();
  // Coordinate minimizer for a fixed multiplier: the derivative
  // z_i + ln(b / y_i) + lambda is increasing in b; bisect on log b.
  auto coordinate = [&](size_t i, double lambda) {
    auto derivative = [&](double log_b) {
      return z[i] + log_b - std::log(y[i]) + lambda;
    };
    if (derivative(0.0) <= 0.0) return 1.0;
    double lo = -745.0;
    double hi = 0.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (derivative(mid) > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return std::exp(0.5 * (lo + hi));
  };
  auto total = [&](double lambda, std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < m; ++i) {
      b[i] = coordinate(i, lambda);
      s += b[i];
    }
    return s;
  };
  std::vector<double> b(m);
  if (total(0.0, b) <= 1.0) return b;
  double lo = 0.0;
  double hi = 1.0;
  while (total(hi, b) > 1.0) hi *= 2.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15 * std::max(1.0, hi);
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (total(mid, b) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  total(hi, b);
  return b;
}

double ProjectionKktResidual(std::span<const double> v,
                             std::span<const double> b) {
  const size_t m = v.size();
  double sum = 0.0;
  double primal = 0.0;
  for (size_t i = 0; i < m; ++i) {
    sum += b[i];
    primal = std::max({primal, -b[i], b[i] - 1.0});
  }
  primal = std::max(primal, sum - 1.0);
  std::vector<double> candidates = {0.0};
  for (size_t i = 0; i < m; ++i) {
    if (b[i] > 0.0 && b[i] < 1.0) candidates.push_back(v[i] - b[i]);
    if (b[i] <= 0.0) candidates.push_back(v[i]);
    if (b[i] >= 1.0) candidates.push_back(v[i] - 1.0);
  }
  double best = INFINITY;
  for (double lambda : candidates) {
    if (lambda < 0.0) continue;
    double r = primal;
    for (size_t i = 0; i < m; ++i) {
      if (b[i] > 0.0 && b[i] < 1.0) {
        r = std::max(r, std::abs(v[i] - b[i] - lambda));
      } else if (b[i] <= 0.0) {
        r = std::max(r, v[i] - lambda);
      } else {
        r = std::max(r, lambda - (v[i] - 1.0));
      }
    }
    r = std::max(r, lambda * std::max(0.0, 1.0 - sum));
    best = std::min(best, r);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Suites.

PropertyReport CheckSetFunctionFamilies(int instances, std::uint64_t seed) {
  PropertyReport report = Named(
      "set-function families are normalized, monotone, "
      "submodular");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 1);
  for (int k = 0; k < instances; ++k) {
    const auto f = RandomMixedFamily(UniformInt(rng, 1, 10), rng);
    const SpotCheckReport spot = SpotCheckSetFunction(*f, 200, rng);
    timer.Case(spot.ok() ? 0.0 : std::max(spot.worst_violation, 1e-300));
  }
  return report;
}

PropertyReport CheckMultilinearProperties(int instances, std::uint64_t seed) {
  PropertyReport report = Named(
      "multilinear extension: naive agreement, "
      "affine coordinates, antitone gradient, MC mean");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 2);
  for (int k = 0; k < instances; ++k) {
    const int n = UniformInt(rng, 1, 8);
    const auto f = RandomMixedFamily(n, rng);
    std::vector<double> x = RandomPoint(n, rng);
    const ExactExtension ext(*f);
    const double fx = ext.Value(x);
    const double tol = 1e-12 * std::max(1.0, std::abs(fx));

    timer.Case(std::abs(fx - NaiveMultilinear(*f, x)) - tol);

    const int i = UniformIndex(rng, n);
    const double t = UniformUnit(rng);
    std::vector<double> xi = x;
    xi[i] = 0.0;
    const double f0 = ext.Value(xi);
    xi[i] = 1.0;
    const double f1 = ext.Value(xi);
    xi[i] = t;
    timer.Case(std::abs(ext.Value(xi) - ((1.0 - t) * f0 + t * f1)) - tol);

    std::vector<double> y = x;
    for (double& v : y) v += (1.0 - v) * UniformUnit(rng);
    const std::vector<double> gx = ext.Gradient(x);
    const std::vector<double> gy = ext.Gradient(y);
    double worst = 0.0;
    for (int a = 0; a < n; ++a) worst = std::max(worst, gy[a] - gx[a]);
    timer.Case(worst - 1e-12);

    const MonteCarloEstimate mc = MultilinearMc(*f, x, 4000, rng);
    const double band = 4.0 * mc.sample_std / std::sqrt(4000.0) + tol;
    timer.Case(std::abs(mc.mean - fx) - band);
  }
  return report;
}

PropertyReport CheckCurvatureRange(int instances, std::uint64_t seed) {
  PropertyReport report = Named(
      "curvature lies in [0, 1], is 0 for modular "
      "functions and sampling never exceeds it");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 3);
  for (int k = 0; k < instances; ++k) {
    const int n = UniformInt(rng, 1, 8);
    const auto f = RandomMixedFamily(n, rng);
    const CurvatureResult exact = Curvature(*f, {});
    timer.Case(std::max(-exact.value, exact.value - 1.0));
    if (f->name() == "modular") timer.Case(std::abs(exact.value) - 1e-12);
    CurvatureOptions sampled;
    sampled.threshold = 0;
    sampled.sample_budget = 50;
    const CurvatureResult lower = Curvature(*f, sampled, &rng);
    timer.Case(lower.value - exact.value - 1e-12);
    timer.Case(lower.lower_bound ? 0.0 : 1.0);
  }
  return report;
}

PropertyReport CheckSurrogateInequalityProperty(int instances,
                                                std::uint64_t seed) {
  PropertyReport report = Named(
      "surrogate inequality <y-x, grad F^s(x)> >= "
      "scale F(y) - F(x)");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 4);
  double min_slack = INFINITY;
  double max_gap = 0.0;
  int families[3] = {0, 0, 0};
  for (int k = 0; k < instances; ++k) {
    const int n = UniformInt(rng, 1, 8);
    const auto f = RandomMixedFamily(n, rng);
    const std::string family = f->name();
    families[family == "modular" ? 0 : family == "coverage" ? 1 : 2]++;
    const double c = Curvature(*f, {}).value;
    const std::vector<double> x = RandomPoint(n, rng);
    const std::vector<double> y = RandomPoint(n, rng);
    std::vector<double> d(n);
    for (int a = 0; a < n; ++a) d[a] = y[a] - x[a];
    const double lhs = SurrogateDirectional(*f, x, d, c);
    const double rhs =
        Scale(c) * NaiveMultilinear(*f, y) - NaiveMultilinear(*f, x);
    min_slack = std::min(min_slack, lhs - rhs);
    timer.Case(rhs - 1e-9 - lhs);
    // The library's quadrature must agree with the reference.
    const SurrogateInequality lib = CheckSurrogateInequality(*f, x, y, c);
    const double gap = std::abs(lib.lhs - lhs);
    max_gap = std::max(max_gap, gap);
    timer.Case(gap - 1e-8 * std::max(1.0, std::abs(lhs)));
    timer.Case(lib.holds ? 0.0 : 1.0);
  }
  report.detail =
      "families modular/coverage/facility = " + std::to_string(families[0]) +
      "/" + std::to_string(families[1]) + "/" + std::to_string(families[2]) +
      ", min slack = " + Format(min_slack) +
      ", max library gap = " + Format(max_gap);
  return report;
}

PropertyReport CheckEstimatorUnbiasedness(int instances, int draws,
                                          std::uint64_t seed) {
  PropertyReport report = Named("surrogate gradient estimator is unbiased");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 5);
  double worst_sigmas = 0.0;
  for (int k = 0; k < instances; ++k) {
    const int n = UniformInt(rng, 2, 8);
    const auto f = RandomMixedFamily(n, rng);
    const double c = Curvature(*f, {}).value;
    const std::vector<double> x = RandomPoint(n, rng);
    std::vector<double> mean(n, 0.0);
    std::vector<double> m2(n, 0.0);
    for (int s = 1; s <= draws; ++s) {
      const GradientEstimate g = EstimateSurrogateGradient(*f, x, c, rng);
      for (int a = 0; a < n; ++a) {
        const double delta = g.values[a] - mean[a];
        mean[a] += delta / s;
        m2[a] += delta * (g.values[a] - mean[a]);
      }
    }
    for (int a = 0; a < n; ++a) {
      std::vector<double> e(n, 0.0);
      e[a] = 1.0;
      const double exact = SurrogateDirectional(*f, x, e, c);
      const double se = std::sqrt(m2[a] / (draws - 1)) / std::sqrt(draws);
      const double err = std::abs(mean[a] - exact);
      if (se > 1e-9) worst_sigmas = std::max(worst_sigmas, err / se);
      timer.Case(err - (4.0 * se + 1e-12));
    }
  }
  report.detail =
      "worst deviation = " + Format(worst_sigmas) + " standard errors";
  return report;
}

PropertyReport CheckEntropicClosedForm(int instances, std::uint64_t seed) {
  PropertyReport report =
      Named("entropic closed form matches a numeric minimizer");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 6);
  int clipped = 0;
  int normalized = 0;
  for (int k = 0; k < instances; ++k) {
    const int m = UniformInt(rng, 1, 10);
    std::vector<double> y = RandomSubSimplex(m, rng);
    if (k % 7 == 0) y[UniformIndex(rng, m)] *= 1e-6;
    // Alternate gradient scales so both branches are hit often.
    const double spread = (k % 2 == 0) ? 0.5 : 4.0;
    std::vector<double> g(m);
    for (double& v : g) v = Uniform(rng, -spread, spread);
    const double eta = Uniform(rng, 0.05, 2.0);
    const std::vector<double> closed = EntropicUpdate(y, g, eta);
    std::vector<double> z(m);
    double raw = 0.0;
    for (int i = 0; i < m; ++i) {
      z[i] = -eta * g[i];
      raw += y[i] * std::exp(eta * g[i]);
    }
    (raw <= 1.0 ? clipped : normalized)++;
    const std::vector<double> numeric = NumericEntropicMinimizer(y, z);
    double err = 0.0;
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      err = std::max(err, std::abs(closed[i] - numeric[i]));
      sum += closed[i];
    }
    timer.Case(err - 1e-6);
    timer.Case(sum - 1.0 - 1e-12);
  }
  const int min_branch = std::max(1, instances / 10);
  timer.Case(clipped >= min_branch ? 0.0 : 1.0);
  timer.Case(normalized >= min_branch ? 0.0 : 1.0);
  report.detail = "branches sum<=1 / sum>1 = " + std::to_string(clipped) +
                  " / " + std::to_string(normalized);
  return report;
}

PropertyReport CheckEuclideanProjection(int instances, std::uint64_t seed) {
  PropertyReport report = Named(
      "capped-simplex projection: KKT residual and "
      "dominance over feasible points");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 7);
  double worst_kkt = 0.0;
  for (int k = 0; k < instances; ++k) {
    const int m = UniformInt(rng, 1, 10);
    const double spread = (k % 3 == 0) ? 0.4 : 1.5;
    std::vector<double> v(m);
    for (double& x : v) x = Uniform(rng, -spread, spread) + 0.3;
    const std::vector<double> b = ProjectCappedSimplex(v);
    const double kkt = ProjectionKktResidual(v, b);
    worst_kkt = std::max(worst_kkt, kkt);
    timer.Case(kkt - 1e-10);

    auto dist2 = [&v](const std::vector<double>& p) {
      double s = 0.0;
      for (size_t i = 0; i < v.size(); ++i) s += (p[i] - v[i]) * (p[i] - v[i]);
      return s;
    };
    const double ours = dist2(b);
    double best_other = INFINITY;
    auto consider = [&](const std::vector<double>& p) {
      best_other = std::min(best_other, dist2(p));
    };
    if (m <= 3) {
      // Grid with step 1/20 over the feasible region.
      std::vector<int> idx(m, 0);
      while (true) {
        std::vector<double> p(m);
        int total = 0;
        for (int i = 0; i < m; ++i) {
          p[i] = idx[i] / 20.0;
          total += idx[i];
        }
        if (total <= 20) consider(p);
        int pos = 0;
        while (pos < m && ++idx[pos] > 20) idx[pos++] = 0;
        if (pos == m) break;
      }
    }
    for (int s = 0; s < 300; ++s) consider(RandomSubSimplex(m, rng));
    for (int i = 0; i < m; ++i) {
      std::vector<double> e(m, 0.0);
      e[i] = 1.0;
      consider(e);
    }
    consider(std::vector<double>(m, 0.0));
    timer.Case(ours - best_other - 1e-12);
  }
  report.detail = "worst KKT residual = " + Format(worst_kkt);
  return report;
}

PropertyReport CheckRoundingProperty(int instances, std::uint64_t seed) {
  PropertyReport report = Named(
      "independent per-agent rounding dominates the "
      "multilinear extension");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 8);
  double min_slack = INFINITY;
  for (int k = 0; k < instances; ++k) {
    const int agents = UniformInt(rng, 1, 3);
    std::vector<int> sizes(agents);
    for (int& s : sizes) s = UniformInt(rng, 1, 3);
    const GroundSet ground = GroundSet::FromBlockSizes(sizes);
    const auto f = RandomMixedFamily(ground.size(), rng);
    std::vector<BeliefVector> beliefs(agents, BeliefVector(ground.size(), 0.0));
    BeliefVector combined(ground.size(), 0.0);
    for (int i = 0; i < agents; ++i) {
      const auto block = ground.block(i);
      const std::vector<double> part =
          RandomSubSimplex(static_cast<int>(block.size()), rng);
      for (size_t j = 0; j < block.size(); ++j) {
        beliefs[i][block[j]] = part[j];
        combined[block[j]] = part[j];
      }
      // Off-block entries are ignored by the rounding; fill them with noise.
      for (int a = 0; a < ground.size(); ++a) {
        if (ground.owner(a) != i) beliefs[i][a] = UniformUnit(rng);
      }
    }
    const RoundingCheck check = VerifyRoundingInequality(*f, ground, beliefs);
    const double naive = NaiveMultilinear(*f, combined);
    min_slack = std::min(min_slack, check.lhs - check.rhs);
    timer.Case(check.rhs - 1e-9 - check.lhs);
    timer.Case(std::abs(check.rhs - naive) -
               1e-12 * std::max(1.0, std::abs(naive)));
  }
  report.detail = "min slack = " + Format(min_slack);
  return report;
}

PropertyReport CheckWeightMatrices(int instances, std::uint64_t seed) {
  PropertyReport report = Named(
      "Metropolis weights are symmetric doubly stochastic "
      "with beta < 1 matching an SVD oracle");
  SuiteTimer timer(report);
  Rng rng = MakeStream(seed, 9);
  for (int k = 0; k < instances; ++k) {
    const int n = UniformInt(rng, 2, 12);
    const double degree = Uniform(rng, 1.0, n - 0.5);
    const Graph graph = GenerateRandomGraph(n, std::min(degree, n - 1e-9), rng);
    const CommNetwork net = BuildMetropolisWeights(graph);
    const Eigen::MatrixXd& w = net.weights();
    double worst = (w - w.transpose()).cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::abs(w.row(i).sum() - 1.0));
      worst = std::max(worst, std::abs(w.col(i).sum() - 1.0));
      for (int j = 0; j < n; ++j) {
        worst = std::max(worst, -w(i, j));
        if (i != j && !graph.HasEdge(i, j)) worst = std::max(worst, w(i, j));
      }
    }
    timer.Case(worst - 1e-12);
    const Eigen::MatrixXd centered =
        w - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    const double oracle =
        Eigen::JacobiSVD<Eigen::MatrixXd>(centered).singularValues()(0);
    timer.Case(std::abs(oracle - net.beta()) - 1e-10);
    timer.Case(net.beta() < 1.0 ? 0.0 : 1.0);
  }
  return report;
}

PropertyReport CheckConsensusBound(const CommNetwork& network,
                                   const std::string& label, int horizon,
                                   double eta, std::uint64_t seed) {
  PropertyReport report = Named(
      "consensus error below 3 sqrt(N) G eta / (1 - beta) "
      "on " +
      label);
  SuiteTimer timer(report);
  const int agents = network.size();
  Rng rng = MakeStream(seed, 10);
  const GroundSet ground =
      GroundSet::FromBlockSizes(std::vector<int>(agents, 3));
  const FacilityLocation f = RandomFacilityLocation(ground.size(), 8, rng);
  const double c = 1.0;
  const double g_bound = Scale(c) * MaxSingletonValue(f);
  const double bound = 3.0 * std::sqrt(static_cast<double>(agents)) * g_bound *
                       eta / (1.0 - network.beta());
  double worst_ratio = 0.0;
  for (Algorithm algo : {Algorithm::kMaOsma, Algorithm::kMaOsea}) {
    CoordinatorOptions options;
    options.curvature = c;
    options.step = StepSchedule::Constant(eta);
    options.gamma = DefaultMixing(horizon);
    CoordinatorState state = InitCoordinatorState(ground, options, seed);
    const double floor = options.gamma / ground.size();
    for (int t = 1; t <= horizon; ++t) {
      // Feasibility is asserted inside the round (kValidation on failure).
      const RoundOutcome out = algo == Algorithm::kMaOsma
                                   ? MaOsmaRound(state, f, network)
                                   : MaOseaRound(state, f, network);
      worst_ratio = std::max(worst_ratio, out.max_consensus_error / bound);
      timer.Case(out.max_consensus_error - bound);
      if (algo == Algorithm::kMaOsea) {
        double lowest = INFINITY;
        for (const AgentDiagnostics& a : out.agents) {
          lowest = std::min(lowest, a.min_aggregate);
        }
        timer.Case(floor * (1.0 - 1e-12) - lowest);
      }
    }
  }
  report.detail = "beta = " + Format(network.beta()) +
                  ", bound = " + Format(bound) +
                  ", worst error / bound = " + Format(worst_ratio);
  return report;
}

std::vector<PropertyReport> RunTheorySuites(std::uint64_t seed) {
  std::vector<PropertyReport> reports;
  reports.push_back(CheckSetFunctionFamilies(200, seed));
  reports.push_back(CheckMultilinearProperties(200, seed));
  reports.push_back(CheckCurvatureRange(100, seed));
  reports.push_back(CheckSurrogateInequalityProperty(100, seed));
  reports.push_back(CheckEstimatorUnbiasedness(20, 100000, seed));
  reports.push_back(CheckEntropicClosedForm(500, seed));
  reports.push_back(CheckEuclideanProjection(1000, seed));
  reports.push_back(CheckRoundingProperty(200, seed));
  reports.push_back(CheckWeightMatrices(100, seed));
  const int n = 8;
  reports.push_back(
      CheckConsensusBound(BuildCompleteWeights(n), "complete", 300, 0.1, seed));
  reports.push_back(CheckConsensusBound(BuildMetropolisWeights(RingGraph(n)),
                                        "ring", 300, 0.1, seed));
  reports.push_back(CheckConsensusBound(BuildMetropolisWeights(PathGraph(n)),
                                        "path", 300, 0.1, seed));
  return reports;
}

}  // namespace masub
