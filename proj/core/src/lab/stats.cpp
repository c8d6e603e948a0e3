#include "acprg/lab/stats.hpp"

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "acprg/error.hpp"

namespace acprg::lab {

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials == 0) throw MalformedInput("clopper_pearson: zero trials");
  if (successes > trials) throw MalformedInput("clopper_pearson: successes exceed trials");
  if (!(confidence > 0.0 && confidence < 1.0)) throw MalformedInput("clopper_pearson: confidence outside (0,1)");
  const double alpha = 1.0 - confidence;
  const double x = static_cast<double>(successes), n = static_cast<double>(trials);
  Interval out;
  out.lower = successes == 0 ? 0.0 : boost::math::ibeta_inv(x, n - x + 1.0, alpha / 2.0);
  out.upper = successes == trials ? 1.0 : boost::math::ibeta_inv(x + 1.0, n - x, 1.0 - alpha / 2.0);
  return out;
}

double switching_bound(double k, double p, double t, double m, double eps) {
  return std::pow(10.0 * k * p, t) + (eps == 0.0 ? 0.0 : std::pow(4.0 * m, t + k) * eps);
}

double multi_switching_bound(double m, double k, double w, double t, double p, double eps) {
  return 4.0 * std::pow(m, t / w) * std::pow(24.0 * p * k, t) + (eps == 0.0 ? 0.0 : std::pow(24.0 * m, t + k) * eps);
}

}  // namespace acprg::lab
