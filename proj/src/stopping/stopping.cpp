#include "cyclic/stopping/stopping.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "cyclic/estimators/ess.hpp"
#include "cyclic/numkit/special.hpp"
#include "cyclic/text.hpp"
#include "json.hpp"

namespace cyclic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Evaluation {
  StopCheck check;
  std::optional<ConfidenceRegion> region;
  std::optional<MeanCov> moments;
};

Evaluation evaluate(const SampleMatrix& s, const StopConfig& cfg) {
  Evaluation ev;
  StopCheck& c = ev.check;
  c.n = s.rows();
  c.lhs = std::numeric_limits<double>::infinity();
  c.ess = kNaN;
  c.volume = kNaN;
  const std::size_t d = s.dim();
  if (c.n < 2 * d + 2) {
    c.reason = "too few samples for a region";
    return ev;
  }
  ev.moments = sample_mean_cov(s);
  double scale = 1.0;
  if (cfg.scaling == Scaling::det_psi) {
    if (ev.moments->psi.degenerate()) {
      c.reason = "sample covariance is singular";
      return ev;
    }
    scale = std::exp(ev.moments->psi.spd->log_det() / (2.0 * static_cast<double>(d)));
  }
  c.rhs = cfg.epsilon * scale;
  const double pad = (c.n < cfg.n0 ? cfg.epsilon * scale : 0.0) + 1.0 / static_cast<double>(c.n);
  try {
    const BatchPlan plan = BatchPlan::for_samples(c.n, cfg.kappa);
    ev.region = confidence_region(s, plan, cfg.alpha);
  } catch (const Error& e) {
    if (!is_numerical(e.code())) throw;
    c.reason = e.what();
    return ev;
  }
  c.volume = region_volume(*ev.region);
  c.lhs = std::pow(c.volume, 1.0 / static_cast<double>(d)) + pad;
  c.holds = c.lhs <= c.rhs;
  if (!ev.moments->psi.degenerate()) c.ess = ess(c.n, *ev.moments->psi.spd, ev.region->shape);
  return ev;
}

}  // namespace

void StopConfig::validate() const {
  auto bad = [](const std::string& what) { fail(ErrorCode::ConfigError, what); };
  if (!(alpha > 0.0 && alpha < 1.0)) bad("stop.alpha must lie in (0,1)");
  if (!(epsilon > 0.0)) bad("stop.epsilon must be > 0");
  if (n0 < 1) bad("stop.n0 must be >= 1");
  if (!(check_growth > 1.0)) bad("stop.check_growth must be > 1");
  if (!(kappa > 0.0 && kappa < 1.0)) bad("stop.kappa must lie in (0,1)");
}

std::size_t StopConfig::first_check() const {
  return n_start != 0 ? n_start : std::max<std::size_t>(n0, 1000);
}

std::size_t StopConfig::next_check(std::size_t n) const {
  const auto next = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * check_growth - 1e-9));
  return std::max(next, n + 1);
}

StopCheck stop_rule_holds(const SampleMatrix& s, const StopConfig& cfg) {
  return evaluate(s, cfg).check;
}

namespace detail {

void finish_report(const SampleMatrix& s, const StopConfig& cfg, StopReport& report) {
  Evaluation ev = evaluate(s, cfg);
  report.n_eps = s.rows();
  report.estimate = ev.moments ? ev.moments->mean : leading_mean(s, s.rows());
  report.region = std::move(ev.region);
  report.volume = ev.check.volume;
  report.ess_at_stop = ev.check.ess;
  report.phase_counts.assign(static_cast<std::size_t>(s.cycle_length()), 0);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    ++report.phase_counts[static_cast<std::size_t>(s.phase_of(r) - 1)];
  }
}

}  // namespace detail

double ess_threshold(double alpha, std::size_t d, double epsilon) {
  if (!(epsilon > 0.0)) fail(ErrorCode::DomainError, "epsilon must be > 0");
  const double dd = static_cast<double>(d);
  return std::pow(unit_ball_volume(d), 2.0 / dd) * chisq_quantile(1.0 - alpha, dd) /
         (epsilon * epsilon);
}

std::string to_json(const StopReport& r) {
  using nlohmann::json;
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["stopped"] = r.stopped;
  j["n_eps"] = r.n_eps;
  j["estimate"] = r.estimate;
  j["volume"] = num(r.volume);
  j["ess_at_stop"] = num(r.ess_at_stop);
  j["phase_counts"] = r.phase_counts;
  if (r.region) {
    json reg;
    reg["center"] = r.region->center;
    auto shape = json::array();
    const Matrix& m = r.region->shape.value();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      shape.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    }
    reg["shape"] = shape;
    reg["radius2"] = r.region->radius2;
    reg["alpha"] = r.region->alpha;
    reg["n"] = r.region->n;
    reg["dof"] = r.region->dof;
    j["region"] = reg;
  } else {
    j["region"] = nullptr;
  }
  auto checks = json::array();
  for (const auto& c : r.checks) {
    json cj;
    cj["n"] = c.n;
    cj["lhs"] = num(c.lhs);
    cj["rhs"] = num(c.rhs);
    cj["holds"] = c.holds;
    if (!c.reason.empty()) cj["reason"] = c.reason;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j.dump(2);
}

void write_checks_csv(std::ostream& os, const std::vector<StopCheck>& checks) {
  os << "n,lhs,rhs,holds\n";
  for (const auto& c : checks) {
    os << c.n << ',' << text::format_double(c.lhs) << ',' << text::format_double(c.rhs) << ','
       << (c.holds ? 1 : 0) << '\n';
  }
}

}  // namespace cyclic
