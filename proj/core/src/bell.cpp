#include "spinbell/bell.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace spinbell {

namespace {

const double kSqrt3 = std::sqrt(3.0);

std::vector<Eigen::Matrix2d> measurement_ops(const std::vector<double>& thetas) {
  std::vector<Eigen::Matrix2d> ops;
  ops.reserve(thetas.size());
  for (double t : thetas) ops.push_back(measurement_operator(t));
  return ops;
}

// kron over sites of sigma_x (bit set) / sigma_z (bit clear); site 1 = MSB.
const std::vector<Matrix>& pauli_products(int n_sites) {
  static std::vector<std::vector<Matrix>> cache(13);
  auto& products = cache[n_sites];
  if (products.empty()) {
    Eigen::Matrix2d sx, sz;
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    const int count = 1 << n_sites;
    products.reserve(count);
    for (int mask = 0; mask < count; ++mask) {
      std::vector<Eigen::Matrix2d> locals(n_sites);
      for (int n = 0; n < n_sites; ++n) {
        locals[n] = (mask >> (n_sites - 1 - n)) & 1 ? sx : sz;
      }
      products.push_back(tensor_chain(locals));
    }
  }
  return products;
}

// Any state's correlation function is multilinear in (sin, cos) per
// site: Q(theta) = sum_S c_S prod_{n in S} sin(theta_n) prod_{n not in S}
// cos(theta_n). Extracting the 2^N coefficients once per state turns
// every optimizer evaluation into pure trigonometry.
struct CorrelationPoly {
  int n_sites;
  std::vector<double> coeffs;  // indexed by sin-site bitmask, site 1 = MSB

  static CorrelationPoly from_state(const DensityOperator& state) {
    CorrelationPoly poly;
    poly.n_sites = 0;
    long d = state.rows();
    while ((1L << poly.n_sites) < d) ++poly.n_sites;
    if ((1L << poly.n_sites) != d) {
      throw std::invalid_argument("state dimension is not a power of two");
    }
    const auto& products = pauli_products(poly.n_sites);
    poly.coeffs.resize(products.size());
    for (std::size_t s = 0; s < products.size(); ++s) {
      poly.coeffs[s] = state.cwiseProduct(products[s]).sum();
    }
    return poly;
  }

  static CorrelationPoly from_pure_state(const Vector& v) {
    CorrelationPoly poly;
    poly.n_sites = 0;
    while ((1L << poly.n_sites) < v.size()) ++poly.n_sites;
    const auto& products = pauli_products(poly.n_sites);
    poly.coeffs.resize(products.size());
    for (std::size_t s = 0; s < products.size(); ++s) {
      poly.coeffs[s] = v.dot(products[s] * v);
    }
    return poly;
  }
};

// Signed sum over setting tuples of the polynomial evaluated at the
// per-tuple angle selection; optionally accumulates d/dangle.
double eval_bell_poly(const CorrelationPoly& poly, const BellExpression& expr,
                      const std::vector<double>& flat_angles,
                      std::vector<double>* grad = nullptr) {
  const int n = expr.n_sites;
  const int tuples = 1 << n;
  double sn[12][2], cs[12][2];
  for (int site = 0; site < n; ++site) {
    for (int s = 0; s < 2; ++s) {
      sn[site][s] = std::sin(flat_angles[2 * site + s]);
      cs[site][s] = std::cos(flat_angles[2 * site + s]);
    }
  }
  if (grad) grad->assign(2 * n, 0.0);
  double total = 0.0;
  for (int t = 0; t < tuples; ++t) {
    const double sign = expr.signs[t];
    int setting[12];
    for (int site = 0; site < n; ++site) setting[site] = (t >> (n - 1 - site)) & 1;
    for (std::size_t mask = 0; mask < poly.coeffs.size(); ++mask) {
      const double c = poly.coeffs[mask];
      if (c == 0.0) continue;
      double factor[12];
      double prod = 1.0;
      for (int site = 0; site < n; ++site) {
        const int s = setting[site];
        factor[site] = (mask >> (n - 1 - site)) & 1 ? sn[site][s] : cs[site][s];
        prod *= factor[site];
      }
      total += sign * c * prod;
      if (grad) {
        for (int site = 0; site < n; ++site) {
          double rest = 1.0;
          for (int m = 0; m < n; ++m) {
            if (m != site) rest *= factor[m];
          }
          const int s = setting[site];
          const double dfactor = (mask >> (n - 1 - site)) & 1 ? cs[site][s]
                                                              : -sn[site][s];
          (*grad)[2 * site + s] += sign * c * dfactor * rest;
        }
      }
    }
  }
  return total;
}

std::vector<double> flatten(const BellSettings& settings) {
  std::vector<double> x;
  x.reserve(2 * settings.angles.size());
  for (const auto& site : settings.angles) {
    x.push_back(site[0]);
    x.push_back(site[1]);
  }
  return x;
}

BellSettings unflatten(const std::vector<double>& x, int n_sites) {
  BellSettings s;
  s.angles.resize(n_sites);
  for (int site = 0; site < n_sites; ++site) {
    s.angles[site] = {x[2 * site], x[2 * site + 1]};
  }
  return s;
}

struct AscentResult {
  double value;
  std::vector<double> x;
  int iterations;
  bool converged;
};

// Gradient ascent with backtracking line search. The trial step is the
// Barzilai-Borwein spectral step from the previous accepted move, which
// adapts to the local curvature and reaches tight gradient tolerances
// in far fewer iterations than a fixed-step scheme.
template <typename F, typename G>
AscentResult ascend(const F& objective, const G& gradient,
                    std::vector<double> x, const OptimizerConfig& config) {
  double fx = objective(x);
  if (!std::isfinite(fx)) {
    throw std::runtime_error("maximize_bell: non-finite objective");
  }
  std::vector<double> g, g_prev, x_prev, trial(x.size());
  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    g = gradient(x);
    double gnorm2 = 0.0;
    for (double gi : g) gnorm2 += gi * gi;
    if (std::sqrt(gnorm2) < config.tolerance) {
      return {fx, x, iter, true};
    }
    double step = 0.5;
    if (!x_prev.empty()) {
      // BB1 step: (s.s)/(s.y) with s = x - x_prev, y = g_prev - g
      double ss = 0.0, sy = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double s = x[i] - x_prev[i];
        ss += s * s;
        sy += s * (g_prev[i] - g[i]);
      }
      if (sy > 1e-300) step = std::min(ss / sy, 1e3);
    }
    x_prev = x;
    g_prev = g;
    bool accepted = false;
    while (step > 1e-15) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + step * g[i];
      const double ft = objective(trial);
      if (!std::isfinite(ft)) {
        throw std::runtime_error("maximize_bell: non-finite objective");
      }
      if (ft >= fx + 1e-4 * step * gnorm2) {
        x = trial;
        fx = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // Line search stalled at machine precision; treat as converged.
      return {fx, x, iter, true};
    }
  }
  return {fx, x, iter, false};
}

}  // namespace

BellExpression zukowski_brukner_n4() {
  // Sign per setting tuple, order Q_1111 .. Q_2222.
  return BellExpression{
      4,
      {+1, -1, -1, -1, -1, -1, -1, +1, -1, -1, -1, +1, -1, +1, +1, +1},
      4.0};
}

BellExpression chsh_n2() {
  return BellExpression{2, {+1, +1, +1, -1}, 2.0};
}

std::string BellExpression::to_json() const {
  nlohmann::json doc;
  doc["n_sites"] = n_sites;
  doc["classical_bound"] = classical_bound;
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t t = 0; t < signs.size(); ++t) {
    std::string tuple;
    for (int site = 0; site < n_sites; ++site) {
      tuple += ((t >> (n_sites - 1 - site)) & 1) ? '2' : '1';
    }
    terms.push_back({{"settings", tuple}, {"sign", signs[t]}});
  }
  doc["terms"] = terms;
  return doc.dump(2);
}

double correlation(const DensityOperator& state,
                   const std::vector<double>& thetas) {
  const long dim = 1L << thetas.size();
  if (state.rows() != dim || state.cols() != dim) {
    throw std::invalid_argument("correlation: state/angle dimension mismatch");
  }
  auto ops = measurement_ops(thetas);
  return state.cwiseProduct(tensor_chain(ops)).sum();
}

std::vector<double> correlation_gradient(const DensityOperator& state,
                                         const std::vector<double>& thetas) {
  const long dim = 1L << thetas.size();
  if (state.rows() != dim || state.cols() != dim) {
    throw std::invalid_argument("correlation_gradient: dimension mismatch");
  }
  auto ops = measurement_ops(thetas);
  std::vector<double> grad(thetas.size());
  for (std::size_t n = 0; n < thetas.size(); ++n) {
    auto derivative_ops = ops;
    const double s = std::sin(thetas[n]);
    const double c = std::cos(thetas[n]);
    derivative_ops[n] << -s, c, c, s;  // d/dtheta of the measurement operator
    grad[n] = state.cwiseProduct(tensor_chain(derivative_ops)).sum();
  }
  return grad;
}

double eigenstate_correlation_oracle(int mu, const std::array<double, 4>& thetas) {
  if (mu < 0 || mu > 15) {
    throw std::invalid_argument("eigenstate index must be in 0..15");
  }
  // Coefficient of prod sin(theta_n) over sites in the bitmask (site i =
  // bit 3) times prod cos over the rest. Transcribed per eigenstate.
  struct Term {
    int mask;
    double coeff;
  };
  static const std::vector<std::vector<Term>> tables = [] {
    const double q = kSqrt3 / 4.0;
    std::vector<std::vector<Term>> t(16);
    t[0] = {{0b0000, 1.0}};
    t[1] = {{0b0000, -1.0}, {0b1100, -q},      {0b1010, q},
            {0b0110, -0.75}, {0b1001, -0.25},  {0b0101, q},
            {0b0011, -q}};
    t[2] = {{0b0000, -1.0}, {0b1100, q},       {0b1010, q},
            {0b0110, 0.75},  {0b1001, 0.25},   {0b0101, q},
            {0b0011, q}};
    t[3] = {{0b0000, -1.0}, {0b1100, -q},      {0b1010, -q},
            {0b0110, 0.25},  {0b1001, 0.75},   {0b0101, -q},
            {0b0011, -q}};
    t[4] = {{0b0000, -1.0}, {0b1100, q},       {0b1010, -q},
            {0b0110, -0.25}, {0b1001, -0.75},  {0b0101, -q},
            {0b0011, q}};
    t[5] = {{0b0000, 1.0},  {0b1100, 2 * q},   {0b1010, -q},
            {0b0110, 0.5},   {0b1001, 0.5},    {0b0101, -q},
            {0b0011, 2 * q}, {0b1111, 1.0}};
    t[6] = {{0b0000, 1.0}, {0b0110, 1.0}, {0b1001, -1.0}, {0b1111, -1.0}};
    t[7] = {{0b0000, 1.0}, {0b1010, 2 * kSqrt3 / 5}, {0b0101, 2 * kSqrt3 / 5},
            {0b1111, 0.6}};
    t[8] = {{0b0000, 1.0}, {0b1010, kSqrt3 / 10}, {0b0101, kSqrt3 / 10},
            {0b1111, -0.6}};
    t[9] = {{0b0000, 1.0}, {0b0110, -1.0}, {0b1001, 1.0}, {0b1111, -1.0}};
    t[10] = {{0b0000, 1.0},  {0b1100, -2 * q}, {0b1010, -q},
             {0b0110, -0.5},  {0b1001, -0.5},  {0b0101, -q},
             {0b0011, -2 * q}, {0b1111, 1.0}};
    t[11] = t[1];
    t[12] = t[2];
    t[13] = t[3];
    t[14] = t[4];
    t[15] = t[0];
    return t;
  }();
  double sn[4], cs[4];
  for (int n = 0; n < 4; ++n) {
    sn[n] = std::sin(thetas[n]);
    cs[n] = std::cos(thetas[n]);
  }
  double total = 0.0;
  for (const auto& term : tables[mu]) {
    double prod = term.coeff;
    for (int n = 0; n < 4; ++n) {
      prod *= (term.mask >> (3 - n)) & 1 ? sn[n] : cs[n];
    }
    total += prod;
  }
  return total;
}

double bell_quantity(const DensityOperator& state, const BellExpression& expr,
                     const BellSettings& settings) {
  if (settings.n_sites() != expr.n_sites ||
      state.rows() != (1L << expr.n_sites)) {
    throw std::invalid_argument("bell_quantity: dimension mismatch");
  }
  const auto poly = CorrelationPoly::from_state(state);
  return eval_bell_poly(poly, expr, flatten(settings));
}

std::vector<double> bell_gradient(const DensityOperator& state,
                                  const BellExpression& expr,
                                  const BellSettings& settings) {
  if (settings.n_sites() != expr.n_sites ||
      state.rows() != (1L << expr.n_sites)) {
    throw std::invalid_argument("bell_gradient: dimension mismatch");
  }
  const auto poly = CorrelationPoly::from_state(state);
  std::vector<double> grad;
  eval_bell_poly(poly, expr, flatten(settings), &grad);
  return grad;
}

OptimizationReport maximize_bell(const DensityOperator& state,
                                 const BellExpression& expr,
                                 const OptimizerConfig& config,
                                 const std::vector<BellSettings>& warm_starts) {
  if (config.starts < 1) {
    throw std::invalid_argument("maximize_bell: need at least one start");
  }
  const auto poly = CorrelationPoly::from_state(state);
  auto objective = [&](const std::vector<double>& x) {
    return eval_bell_poly(poly, expr, x);
  };
  auto gradient = [&](const std::vector<double>& x) {
    std::vector<double> g;
    eval_bell_poly(poly, expr, x, &g);
    return g;
  };

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * M_PI);

  OptimizationReport report;
  report.best_value = -std::numeric_limits<double>::infinity();
  report.starts = 0;
  report.converged_starts = 0;
  report.iterations_total = 0;

  auto run_start = [&](std::vector<double> x0) {
    auto result = ascend(objective, gradient, std::move(x0), config);
    ++report.starts;
    if (result.converged) ++report.converged_starts;
    report.iterations_total += result.iterations;
    if (result.value > report.best_value) {
      report.best_value = result.value;
      report.best_settings = unflatten(result.x, expr.n_sites);
    }
  };

  for (const auto& warm : warm_starts) run_start(flatten(warm));
  for (int s = 0; s < config.starts; ++s) {
    std::vector<double> x0(2 * expr.n_sites);
    for (double& xi : x0) xi = uniform(rng);
    run_start(std::move(x0));
  }
  return report;
}

int family_parameter_count(StateFamily family) {
  return family == StateFamily::DoubleExcitation ? 5 : 3;
}

namespace {

const std::vector<int>& family_basis(StateFamily family) {
  static const std::vector<int> single = {0b1000, 0b0100, 0b0010, 0b0001};
  static const std::vector<int> triple = {0b1110, 0b1101, 0b1011, 0b0111};
  static const std::vector<int> dbl = {0b1100, 0b1010, 0b1001,
                                       0b0110, 0b0101, 0b0011};
  switch (family) {
    case StateFamily::SingleExcitation: return single;
    case StateFamily::TripleExcitation: return triple;
    case StateFamily::DoubleExcitation: return dbl;
  }
  throw std::logic_error("unknown family");
}

// Nested amplitudes a_i = cos(a_i) prod_{j<i} sin(a_j), last one all
// sines. Returns the state vector; fills d(amplitudes)/d(alpha_m) rows
// when derivatives != nullptr.
Vector family_state_vector(StateFamily family, const std::vector<double>& alphas,
                           std::vector<Vector>* derivatives = nullptr) {
  const auto& basis = family_basis(family);
  const int k = family_parameter_count(family);
  if (static_cast<int>(alphas.size()) != k) {
    throw std::invalid_argument("parametrized_state: wrong alpha count");
  }
  std::vector<double> sn(k), cs(k);
  for (int j = 0; j < k; ++j) {
    sn[j] = std::sin(alphas[j]);
    cs[j] = std::cos(alphas[j]);
  }
  Vector v = Vector::Zero(16);
  if (derivatives) derivatives->assign(k, Vector::Zero(16));
  const int amps = static_cast<int>(basis.size());
  for (int i = 0; i < amps; ++i) {
    // amplitude i = prod of factors: sin(alpha_j) for j < i, then
    // cos(alpha_i) unless this is the trailing all-sine amplitude
    const bool has_cos = i < k;
    double amp = has_cos ? cs[i] : 1.0;
    for (int j = 0; j < std::min(i, k); ++j) amp *= sn[j];
    v[basis[i]] = amp;
    if (derivatives) {
      for (int m = 0; m < k; ++m) {
        double d;
        if (m < std::min(i, k)) {
          d = has_cos ? cs[i] : 1.0;
          for (int j = 0; j < std::min(i, k); ++j) d *= (j == m) ? cs[j] : sn[j];
        } else if (has_cos && m == i) {
          d = -sn[i];
          for (int j = 0; j < i; ++j) d *= sn[j];
        } else {
          d = 0.0;
        }
        (*derivatives)[m][basis[i]] = d;
      }
    }
  }
  return v;
}

}  // namespace

DensityOperator parametrized_state(StateFamily family,
                                   const std::vector<double>& alphas) {
  const Vector v = family_state_vector(family, alphas);
  return v * v.transpose();
}

FamilyOptimizationReport maximize_bell_over_state_family(
    StateFamily family, const BellExpression& expr,
    const OptimizerConfig& config) {
  if (expr.n_sites != 4) {
    throw std::invalid_argument("state families are four-qubit");
  }
  const int k = family_parameter_count(family);
  const auto& products = pauli_products(4);

  // Decision vector: k alphas followed by 8 angles.
  auto split = [&](const std::vector<double>& x) {
    return std::pair(std::vector<double>(x.begin(), x.begin() + k),
                     std::vector<double>(x.begin() + k, x.end()));
  };
  auto objective = [&](const std::vector<double>& x) {
    auto [alphas, angles] = split(x);
    const Vector v = family_state_vector(family, alphas);
    return eval_bell_poly(CorrelationPoly::from_pure_state(v), expr, angles);
  };
  auto gradient = [&](const std::vector<double>& x) {
    auto [alphas, angles] = split(x);
    std::vector<Vector> dv;
    const Vector v = family_state_vector(family, alphas, &dv);
    std::vector<double> angle_grad;
    const auto poly = CorrelationPoly::from_pure_state(v);
    eval_bell_poly(poly, expr, angles, &angle_grad);
    std::vector<double> g(x.size());
    // d(v^T K v)/d(alpha) = 2 (dv)^T K v, evaluated through the same
    // polynomial form with the differentiated coefficients.
    for (int m = 0; m < k; ++m) {
      CorrelationPoly dpoly;
      dpoly.n_sites = 4;
      dpoly.coeffs.resize(16);
      for (int s = 0; s < 16; ++s) {
        dpoly.coeffs[s] = 2.0 * dv[m].dot(products[s] * v);
      }
      g[m] = eval_bell_poly(dpoly, expr, angles);
    }
    for (std::size_t i = 0; i < angle_grad.size(); ++i) g[k + i] = angle_grad[i];
    return g;
  };

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * M_PI);

  FamilyOptimizationReport report;
  report.best_value = -std::numeric_limits<double>::infinity();
  report.starts = 0;
  report.converged_starts = 0;
  report.iterations_total = 0;
  for (int s = 0; s < config.starts; ++s) {
    std::vector<double> x0(k + 8);
    for (double& xi : x0) xi = uniform(rng);
    auto result = ascend(objective, gradient, std::move(x0), config);
    ++report.starts;
    if (result.converged) ++report.converged_starts;
    report.iterations_total += result.iterations;
    if (result.value > report.best_value) {
      report.best_value = result.value;
      auto [alphas, angles] = split(result.x);
      report.best_alphas = alphas;
      report.best_settings = unflatten(angles, 4);
    }
  }
  return report;
}

}  // namespace spinbell
