#include "fognet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fognet/errors.hpp"

namespace fognet {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

Cdf Cdf::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform CDF needs lo <= hi");
  if (lo == hi) {
    return Cdf([lo](double x) { return x >= lo ? 1.0 : 0.0; },
               [lo](double x) { return x > lo ? 1.0 : 0.0; });
  }
  auto f = [lo, hi](double x) { return clamp01((x - lo) / (hi - lo)); };
  return Cdf(f, f);
}

Cdf Cdf::disk(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("disk radius must be positive");
  auto f = [radius](double r) {
    if (r <= 0) return 0.0;
    return clamp01((r * r) / (radius * radius));
  };
  return Cdf(f, f);
}

EventThresholds event_thresholds(double gamma, const SelectionSetting& s) {
  EventThresholds t;
  const auto& ch = s.channel;
  const double lam = s.p1.lambda_hat;
  t.fog_bandwidth = bandwidth_per_node(s.scheme, ch.total_bandwidth, s.p1.j_hat).fog;
  t.ideal_tx_rate = service_rate(ch, t.fog_bandwidth, s.ideal.min_distance);

  // Link rate needed, then the SNR and gain that deliver it.
  const double rate_needed = (t.ideal_tx_rate - lam) / gamma + lam;
  const double snr_needed = std::exp2(rate_needed * ch.packet_bits / t.fog_bandwidth) - 1.0;
  const double gain_needed = snr_needed * t.fog_bandwidth * ch.noise_psd / (ch.fading * ch.tx_power);
  // Inside 1 m the gain is flat at beta1; the relative slack absorbs the
  // round trip through log2/exp2 when the ideal node itself sits there.
  if (!(gain_needed <= ch.beta1 * (1.0 + 1e-12))) {
    t.max_distance = -1.0;
  } else {
    t.max_distance = std::max(1.0, std::pow(gain_needed / ch.beta1, -1.0 / ch.beta2));
  }

  t.min_comp_rate = (s.ideal.best_comp_rate - lam) / gamma + lam;
  t.max_proc_delay = gamma * s.ideal.best_proc_delay;
  return t;
}

double p_select(double gamma, const SelectionSetting& s, const ArrivalDistributions& dists) {
  if (!(gamma >= 1.0)) throw std::invalid_argument("gamma must be at least 1");
  const auto t = event_thresholds(gamma, s);
  const double p_distance = t.max_distance < 0 ? 0.0 : dists.distance.at(t.max_distance);
  const double p_comp = 1.0 - dists.comp_rate.below(t.min_comp_rate);
  const double p_proc = dists.proc_delay.at(t.max_proc_delay);
  return clamp01(p_distance * p_comp * p_proc);
}

double p_form(double p_s, std::size_t n, std::size_t j_hat) {
  if (j_hat == 0) return 1.0;
  if (j_hat > n) return 0.0;
  if (p_s <= 0.0) return 0.0;
  if (p_s >= 1.0) return 1.0;

  // Binomial pmf up to a common factor, by term ratios outward from the mode;
  // normalizing by the full sum cancels that factor exactly.
  const double q = 1.0 - p_s;
  const double odds = p_s / q;
  const auto mode = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(n), std::floor((static_cast<double>(n) + 1.0) * p_s)));
  double total = 1.0;
  double lower = mode < j_hat ? 1.0 : 0.0;  // sum of terms with k < j_hat
  double upper = mode >= j_hat ? 1.0 : 0.0;

  double term = 1.0;
  for (std::size_t k = mode + 1; k <= n; ++k) {
    term *= static_cast<double>(n - k + 1) / static_cast<double>(k) * odds;
    if (term == 0.0) break;
    total += term;
    (k < j_hat ? lower : upper) += term;
  }
  term = 1.0;
  for (std::size_t k = mode; k-- > 0;) {
    term *= static_cast<double>(k + 1) / static_cast<double>(n - k) / odds;
    if (term == 0.0) break;
    total += term;
    (k < j_hat ? lower : upper) += term;
  }
  return j_hat > mode ? upper / total : 1.0 - lower / total;
}

double gamma_bar(const SelectionSetting& s) {
  const double fog_bw = bandwidth_per_node(s.scheme, s.channel.total_bandwidth, s.p1.j_hat).fog;
  const NodeProfile worst{s.ideal.max_distance, s.ideal.worst_comp_rate, s.ideal.worst_proc_delay};
  const NeighborDest dest{service_rate(s.channel, fog_bw, worst.distance), worst};
  return total_delay_or_inf(dest, s.p1.lambda_hat) / s.p1.u_hat;
}

double gamma_bar_s(const SelectionSetting& s, const ArrivalDistributions& dists, std::size_t n,
                   std::size_t j_hat, double tolerance) {
  const auto formed = [&](double gamma) {
    return p_form(p_select(gamma, s, dists), n, j_hat) >= kFormationTarget;
  };
  if (formed(1.0)) return 1.0;

  double hi = std::max(1.0, gamma_bar(s));
  if (!std::isfinite(hi)) {
    hi = 2.0;
    while (!formed(hi) && hi < 1e6) hi *= 2.0;
  }
  if (!formed(hi)) {
    throw NotReached("formation probability stays below target up to gamma " + std::to_string(hi),
                     hi);
  }
  double lo = 1.0;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (formed(mid) ? hi : lo) = mid;
  }
  return hi;
}

double competitive_ratio(double alg_latency, double opt_latency) {
  if (!(alg_latency > 0 && opt_latency > 0))
    throw std::invalid_argument("latencies must be positive");
  return alg_latency / opt_latency;
}

double EventEstimate::standard_error() const {
  if (samples == 0) return 0.0;
  const double p = frequency();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

}  // namespace fognet
