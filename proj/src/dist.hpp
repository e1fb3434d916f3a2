#pragma once

#include <string>
#include <variant>

#include "rng.hpp"

namespace rocsbb {

// Standard normal CDF and quantile (exact to double precision).
double normal_cdf(double z);
double normal_quantile(double p);
double normal_pdf(double z);

struct NormalDist {
  double mu;
  double sigma;
};
struct GammaDist {
  double shape;
  double rate;  // Gamma(shape, rate); mean = shape / rate
};
struct StudentTDist {
  double df;
};
struct BetaDist {
  double a;
  double b;
};
struct ChiSquareDist {
  double df;
};
struct NormalMixtureDist {
  double pi;  // weight on the first component
  double mu1, sigma1;
  double mu2, sigma2;
};

// One continuous test-outcome distribution from the scenario grammar.
class Distribution {
public:
  using Spec = std::variant<NormalDist, GammaDist, StudentTDist, BetaDist,
                            ChiSquareDist, NormalMixtureDist>;

  Distribution() : Distribution(Spec{NormalDist{0.0, 1.0}}) {}
  explicit Distribution(Spec spec);

  double cdf(double x) const;
  // Generalized inverse; mixtures are inverted by monotone bisection.
  double quantile(double p) const;
  double sample(Rng& rng) const;

  const Spec& spec() const { return spec_; }
  std::string describe() const;

private:
  void validate() const;
  Spec spec_;
};

}  // namespace rocsbb
