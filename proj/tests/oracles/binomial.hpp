#pragma once

#include <boost/math/distributions/binomial.hpp>

namespace oracle {

/// P(Binomial(n, p) >= k)
inline double binomial_upper_tail(double p, unsigned n, unsigned k) {
  if (k == 0) return 1.0;
  boost::math::binomial_distribution<double> dist(n, p);
  return boost::math::cdf(boost::math::complement(dist, k - 1));
}

}  // namespace oracle
