#include "cubesaw/cube.hpp"

namespace cubesaw {

Dim::Dim(int n) : n_(n) {
  if (n < 1 || n > kMax) throw DomainError("dimension N must lie in [1, 63], got " + std::to_string(n));
}

void Dim::require_dense() const {
  if (n_ > kMaxDense) {
    throw DomainError("dense hypercube fields need N <= " + std::to_string(kMaxDense) + ", got " +
                      std::to_string(n_));
  }
}

ExactCubeFn step_distribution(Dim dim) {
  ExactCubeFn d(dim);
  const Rational step(1, dim.n());
  for (int i = 0; i < dim.n(); ++i) d[Vertex{std::uint64_t{1} << i}] = step;
  return d;
}

Rational d_hat_weight(Dim dim, int weight) {
  if (weight < 0 || weight > dim.n()) throw DomainError("weight out of range");
  Rational r(dim.n() - 2 * weight, dim.n());
  r.canonicalize();
  return r;
}

Rational d_hat(Dim dim, Vertex k) {
  if (!dim.contains(k)) throw DomainError("vertex outside Q^N");
  return d_hat_weight(dim, hamming_weight(k));
}

ExactCubeFn rw_power(Dim dim, int steps, RwRoute route) {
  if (steps < 0) throw DomainError("rw_power: negative step count");
  if (route == RwRoute::convolution) {
    ExactCubeFn acc = ExactCubeFn::delta(dim);
    const ExactCubeFn d = step_distribution(dim);
    for (int i = 0; i < steps; ++i) acc = convolve(acc, d);
    return acc;
  }
  std::vector<Rational> per_weight(dim.n() + 1);
  for (int w = 0; w <= dim.n(); ++w) {
    Rational base = d_hat_weight(dim, w);
    Rational power = 1;
    for (int i = 0; i < steps; ++i) power *= base;
    per_weight[w] = power;
  }
  return inverse_walsh(ExactCubeFn::radial(dim, per_weight));
}

Rational rw_green_hat(Dim dim, const Rational& p, int weight) {
  const Rational n(dim.n());
  if (sgn(p) < 0) throw DomainError("rw_green: p must be nonnegative");
  if (p * n >= 1) {
    throw DomainError("rw_green: p must be < 1/N; the zero mode 1/(1-pN) diverges at p = 1/N");
  }
  Rational denom = Rational(1) - p * n + Rational(2) * p * weight;
  return Rational(1) / denom;
}

ExactCubeFn rw_green(Dim dim, const Rational& p) {
  std::vector<Rational> per_weight(dim.n() + 1);
  for (int w = 0; w <= dim.n(); ++w) per_weight[w] = rw_green_hat(dim, p, w);
  return inverse_walsh(ExactCubeFn::radial(dim, per_weight));
}

Rational rw_green_bar(Dim dim, const Rational& p, Vertex k, Vertex l) {
  return (Rational(1) - d_hat(dim, k)) * rw_green_hat(dim, p, hamming_weight(l)) *
         rw_green_hat(dim, p, hamming_weight(k + l));
}

FloatCubeFn to_float(const ExactCubeFn& f) {
  std::vector<double> v;
  v.reserve(f.size());
  for (const auto& q : f.values()) v.push_back(q.get_d());
  return FloatCubeFn(f.dim(), std::move(v));
}

}  // namespace cubesaw
