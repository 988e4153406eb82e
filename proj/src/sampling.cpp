#include "qmeix/sampling.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qmeix::meix {

namespace {

// Thin deterministic layer over mt19937_64; the std:: distribution objects
// are not used because their streams are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() {  // (0, 1)
    const double u = (eng_() >> 11) * 0x1.0p-53;
    return u == 0.0 ? 0x1.0p-53 : u;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
    }
  }

  long poisson(double lambda) {
    long total = 0;
    while (lambda > 30.0) {  // exact composition: Poisson(a+b) = Poisson(a)+Poisson(b)
      total += poisson_small(15.0);
      lambda -= 15.0;
    }
    return total + poisson_small(lambda);
  }

 private:
  long poisson_small(double lambda) {
    const double limit = std::exp(-lambda);
    long k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> sample_meixner(const MeixnerV& m, std::size_t n, std::uint64_t seed) {
  // Cauchy envelope centered at the mean with scale ~ the standard deviation;
  // the Meixner tails are exponential, so p/g is bounded. The bound M is
  // taken from a scan and verified during sampling; on violation it is
  // doubled and the whole run is regenerated (keeps the law exact and the
  // output deterministic).
  const double mean = m.mu + m.a * m.delta * std::tan(0.5 * m.b);
  const double c = std::cos(0.5 * m.b);
  const double sd = std::sqrt(m.a * m.a * m.delta / (2.0 * c * c));
  const double scale = std::max(sd, 0.25 * m.a);
  const DistributionSpec spec{m};
  auto envelope = [&](double x) {
    const double z = (x - mean) / scale;
    return 1.0 / (kPi * scale * (1.0 + z * z));
  };
  double bound = 0.0;
  for (int k = -4000; k <= 4000; ++k) {
    const double x = mean + k * (12.0 * scale / 4000.0);
    bound = std::max(bound, density(spec, x) / envelope(x));
  }
  double m_bound = 1.3 * bound;

  for (int attempt = 0; attempt < 32; ++attempt) {
    Rng rng(seed + 0x9e3779b97f4a7c15ull * std::uint64_t(attempt));
    std::vector<double> out;
    out.reserve(n);
    bool violated = false;
    while (out.size() < n) {
      const double u = rng.uniform();
      const double x = mean + scale * std::tan(kPi * (u - 0.5));
      const double p = density(spec, x);
      const double cap = m_bound * envelope(x);
      if (p > cap) {
        violated = true;
        break;
      }
      if (rng.uniform() * cap <= p) out.push_back(x);
    }
    if (!violated) return out;
    m_bound *= 2.0;
  }
  throw numerical_error("sample: MeixnerV envelope adaptation failed");
}

}  // namespace

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) return {};
  if (const auto* m = std::get_if<MeixnerV>(&spec)) return sample_meixner(*m, n, seed);

  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  if (const auto* g = std::get_if<GammaDist>(&spec)) {
    const double s = g->theta > 0.0 ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k)
      out.push_back(s * rng.gamma(g->a, std::abs(g->theta)) - g->mu);
    return out;
  }
  if (const auto* nb = std::get_if<NegBinomial>(&spec)) {
    if (nb->r <= 0.0)
      throw std::invalid_argument("sample: NegBinomial requires r > 0");
    const double q = (1.0 - nb->p) / nb->p;
    for (std::size_t k = 0; k < n; ++k) {
      const long cnt = rng.poisson(rng.gamma(nb->r, q));
      out.push_back(-nb->mu - nb->d * double(cnt));
    }
    return out;
  }
  if (const auto* t = std::get_if<TwoAtom>(&spec)) {
    for (std::size_t k = 0; k < n; ++k)
      out.push_back(rng.uniform() < t->p1 ? t->x1 : t->x2);
    return out;
  }
  const auto& d = std::get<DiracDelta>(spec);
  out.assign(n, d.x0);
  return out;
}

}  // namespace qmeix::meix
