#include "three_omega/fdm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "three_omega/errors.hpp"

namespace three_omega::fdm {

namespace {

constexpr double kTheta = 0.5;

// Symmetric tridiagonal system with constant off-diagonal, solved by the
// Thomas algorithm. factor() may be called once (constant diagonal) or every
// step when the diagonal varies in time.
class Tridiagonal {
 public:
  explicit Tridiagonal(int n) : upper_(n), inv_pivot_(n) {}

  void factor(const std::vector<double>& diag, double off) {
    off_ = off;
    const std::size_t n = diag.size();
    double pivot = diag[0];
    inv_pivot_[0] = 1.0 / pivot;
    upper_[0] = off * inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
      pivot = diag[i] - off * upper_[i - 1];
      inv_pivot_[i] = 1.0 / pivot;
      upper_[i] = off * inv_pivot_[i];
    }
  }

  void solve(std::vector<double>& rhs) const {
    const std::size_t n = rhs.size();
    rhs[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - off_ * rhs[i - 1]) * inv_pivot_[i];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper_[i] * rhs[i + 1];
  }

 private:
  double off_ = 0.0;
  std::vector<double> upper_;
  std::vector<double> inv_pivot_;
};

double center_value(const std::vector<double>& u) {
  const std::size_t n = u.size();
  return (n % 2 == 1) ? u[n / 2] : 0.5 * (u[n / 2 - 1] + u[n / 2]);
}

}  // namespace

double GridSpec::dt(double omega) const { return 2.0 * kPi / omega / steps_per_period; }

void GridSpec::validate() const {
  if (nx < 16) throw ParameterError("nx", "need at least 16 interior nodes");
  if (steps_per_period < 8) throw ParameterError("steps_per_period", "must be >= 8");
  if (samples_per_period < 8 || steps_per_period % samples_per_period != 0) {
    throw ParameterError("samples_per_period", "must be >= 8 and divide steps_per_period");
  }
  if (settle_periods < 1) throw ParameterError("settle_periods", "must be >= 1");
  if (n_periods != 0 && n_periods <= settle_periods) {
    throw ParameterError("n_periods", "must exceed settle_periods");
  }
  if (!(periodicity_tol > 0.0)) throw ParameterError("periodicity_tol", "must be > 0");
}

int default_period_budget(const Specimen& s, const Drive& d, const GridSpec& grid, double loss) {
  const double rate = 1.0 / time_constant(s) + loss;
  const double period = 2.0 * kPi / d.omega;
  // ln(1e11) e-folds of the slowest mode covers any tolerance down to ~1e-10.
  const double settle = 25.0 / (rate * period);
  return grid.settle_periods + 4 + static_cast<int>(std::ceil(settle));
}

TraceResult solve(const Specimen& s, const Drive& d, const GridSpec& grid, const SolveOptions& opt) {
  validate(s);
  validate(d);
  grid.validate();
  if (!(opt.loss >= 0.0)) throw ParameterError("loss", "radial loss rate must be >= 0");

  const int nx = grid.nx;
  const double dx = s.length / (nx + 1);
  const double dt = grid.dt(d.omega);
  const double alpha = thermal_diffusivity(s);
  const double b = heating_rate(s, d);
  const double c = opt.include_feedback ? feedback_rate(s, d) : 0.0;
  const double i0 = d.peak_current();
  const double lap = alpha / (dx * dx);
  const int steps = grid.steps_per_period;
  const int stride = steps / grid.samples_per_period;
  const int budget = grid.n_periods > 0 ? grid.n_periods : default_period_budget(s, d, grid, opt.loss);

  auto sin2 = [&](long long k) {
    const double v = std::sin(d.omega * static_cast<double>(k) * dt);
    return v * v;
  };
  auto rate = [&](long long k) { return c * sin2(k) - opt.loss; };

  std::vector<double> u(nx, 0.0);
  std::vector<double> rhs(nx);
  std::vector<double> diag(nx);
  Tridiagonal lhs(nx);
  auto assemble = [&](long long k_next) {
    std::fill(diag.begin(), diag.end(), 1.0 / dt + kTheta * (2.0 * lap - rate(k_next)));
    lhs.factor(diag, -kTheta * lap);
  };
  assemble(1);

  const int spp = grid.samples_per_period;
  std::vector<double> cur_dr(spp), prev_dr(spp), cur_v(spp), prev_v(spp), cur_c(spp), prev_c(spp);
  std::vector<double> cur_prof, prev_prof;
  if (opt.keep_profiles) {
    cur_prof.resize(static_cast<std::size_t>(spp) * nx);
    prev_prof.resize(cur_prof.size());
  }

  double defect = std::numeric_limits<double>::infinity();
  long long k = 0;
  for (int p = 0; p < budget; ++p) {
    for (int step = 0; step < steps; ++step, ++k) {
      if (step % stride == 0) {
        const int j = step / stride;
        double sum = 0.0;
        for (double v : u) sum += v;
        const double dr = s.resistance_slope / s.length * dx * sum;
        const double t = static_cast<double>(k) * dt;
        cur_dr[j] = dr;
        cur_v[j] = i0 * std::sin(d.omega * t) * (s.resistance + dr);
        cur_c[j] = center_value(u);
        if (opt.keep_profiles) std::copy(u.begin(), u.end(), cur_prof.begin() + static_cast<long>(j) * nx);
      }
      // theta-step from t_k to t_{k+1}
      const double q_now = rate(k);
      const double f_now = b * sin2(k);
      const double f_next = b * sin2(k + 1);
      const double w = 1.0 - kTheta;
      for (int i = 0; i < nx; ++i) {
        const double left = i > 0 ? u[i - 1] : 0.0;
        const double right = i + 1 < nx ? u[i + 1] : 0.0;
        rhs[i] = u[i] / dt + w * (lap * (left - 2.0 * u[i] + right) + q_now * u[i]) +
                 w * f_now + kTheta * f_next;
      }
      if (c != 0.0) assemble(k + 1);
      lhs.solve(rhs);
      u.swap(rhs);
    }

    if (p >= grid.settle_periods) {
      double diff = 0.0;
      double scale = 0.0;
      for (int j = 0; j < spp; ++j) {
        diff = std::max(diff, std::abs(cur_dr[j] - prev_dr[j]));
        scale = std::max(scale, std::abs(cur_dr[j]));
      }
      defect = scale > 0.0 ? diff / scale : diff;
      if (defect < grid.periodicity_tol) {
        TraceResult out;
        out.omega = d.omega;
        out.samples_per_period = spp;
        out.periods_run = p + 1;
        out.periodicity_defect = defect;
        out.nx = nx;
        const long long first = static_cast<long long>(p - 1) * steps;
        for (int j = 0; j < 2 * spp; ++j) {
          out.times.push_back(static_cast<double>(first + static_cast<long long>(j) * stride) * dt);
        }
        auto join = [](std::vector<double>& dst, const std::vector<double>& a, const std::vector<double>& b2) {
          dst.reserve(a.size() + b2.size());
          dst.insert(dst.end(), a.begin(), a.end());
          dst.insert(dst.end(), b2.begin(), b2.end());
        };
        join(out.resistance_change, prev_dr, cur_dr);
        join(out.voltage, prev_v, cur_v);
        join(out.center_temperature, prev_c, cur_c);
        if (opt.keep_profiles) join(out.profiles, prev_prof, cur_prof);
        return out;
      }
    }
    prev_dr.swap(cur_dr);
    prev_v.swap(cur_v);
    prev_c.swap(cur_c);
    prev_prof.swap(cur_prof);
  }
  throw ConvergenceError("no periodic steady state after " + std::to_string(budget) +
                             " periods (defect " + std::to_string(defect) + ")",
                         defect);
}

std::vector<double> steady_profile(const Specimen& s, double heating, int nx, double loss) {
  validate(s);
  if (nx < 1) throw ParameterError("nx", "must be >= 1");
  const double dx = s.length / (nx + 1);
  const double lap = thermal_diffusivity(s) / (dx * dx);
  std::vector<double> diag(nx, 2.0 * lap + loss);
  std::vector<double> rhs(nx, heating);
  Tridiagonal m(nx);
  m.factor(diag, -lap);
  m.solve(rhs);
  std::vector<double> out(nx + 2, 0.0);
  std::copy(rhs.begin(), rhs.end(), out.begin() + 1);
  return out;
}

double end_heat_flux(const Specimen& s, const std::vector<double>& u) {
  const std::size_t n = u.size();
  const double dx = s.length / static_cast<double>(n - 1);
  const double left = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dx);
  const double right = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * dx);
  return s.conductivity * s.area * (left - right);
}

double integrate_profile(const std::vector<double>& u, double length) {
  const std::size_t n = u.size();
  const double dx = length / static_cast<double>(n - 1);
  double sum = 0.5 * (u.front() + u.back());
  for (std::size_t i = 1; i + 1 < n; ++i) sum += u[i];
  return sum * dx;
}

std::vector<double> relax_fundamental_mode(const Specimen& s, std::vector<double> initial, double dt,
                                           int steps, int sample_every) {
  validate(s);
  if (initial.size() < 18) throw ParameterError("initial", "profile needs at least 16 interior nodes");
  if (!(dt > 0.0) || steps < 1 || sample_every < 1) throw ParameterError("dt", "invalid stepping");
  const int nx = static_cast<int>(initial.size()) - 2;
  const double dx = s.length / (nx + 1);
  const double lap = thermal_diffusivity(s) / (dx * dx);
  std::vector<double> u(initial.begin() + 1, initial.end() - 1);
  std::vector<double> rhs(nx);
  std::vector<double> basis(nx);
  for (int i = 0; i < nx; ++i) basis[i] = std::sin(kPi * (i + 1) / (nx + 1));
  Tridiagonal m(nx);
  m.factor(std::vector<double>(nx, 1.0 / dt + kTheta * 2.0 * lap), -kTheta * lap);

  auto project = [&] {
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) acc += u[i] * basis[i];
    return 2.0 * acc / (nx + 1);
  };
  std::vector<double> out;
  for (int k = 0; k <= steps; ++k) {
    if (k % sample_every == 0) out.push_back(project());
    if (k == steps) break;
    for (int i = 0; i < nx; ++i) {
      const double left = i > 0 ? u[i - 1] : 0.0;
      const double right = i + 1 < nx ? u[i + 1] : 0.0;
      rhs[i] = u[i] / dt + (1.0 - kTheta) * lap * (left - 2.0 * u[i] + right);
    }
    m.solve(rhs);
    u.swap(rhs);
  }
  return out;
}

}  // namespace three_omega::fdm
