#include "cyclic/estimators/report.hpp"

#include <vector>

#include "cyclic/estimators/ess.hpp"
#include "json.hpp"

namespace cyclic {

namespace {

nlohmann::json rows_of(const Matrix& m) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  }
  return out;
}

}  // namespace

EstimatorReport summarize(const SampleMatrix& s, double kappa) {
  EstimatorReport r;
  const BatchPlan plan = BatchPlan::for_samples(s.rows(), kappa);
  const MeanCov mc = sample_mean_cov(s);
  const CovEstimate sigma = batch_means_cov(s, plan);
  r.n = s.rows();
  r.d = s.dim();
  r.k = s.cycle_length();
  r.kappa = kappa;
  r.a_n = plan.a_n;
  r.b_n = plan.b_n;
  r.mean = mc.mean;
  r.psi_hat = mc.psi.value;
  r.sigma_bm = sigma.value;
  if (mc.psi.spd && sigma.spd) r.ess = ess(s.rows(), *mc.psi.spd, *sigma.spd);
  if (sigma.value.trace() != 0.0) r.tess = tess(s.rows(), mc.psi.value, sigma.value);
  return r;
}

std::string to_json(const EstimatorReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["d"] = r.d;
  j["k"] = r.k;
  j["kappa"] = r.kappa;
  j["a_n"] = r.a_n;
  j["b_n"] = r.b_n;
  j["mean"] = r.mean;
  j["psi_hat"] = rows_of(r.psi_hat);
  j["sigma_bm"] = rows_of(r.sigma_bm);
  j["ess"] = r.ess ? nlohmann::json(*r.ess) : nlohmann::json(nullptr);
  j["tess"] = r.tess ? nlohmann::json(*r.tess) : nlohmann::json(nullptr);
  return j.dump(2);
}

}  // namespace cyclic
