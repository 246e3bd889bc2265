#include <ibpdn/signals.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ibpdn {

SupportSet::SupportSet(std::vector<Index> indices, Index ambient_dim)
    : indices_(std::move(indices)), ambient_dim_(ambient_dim) {
  if (ambient_dim_ < 0) throw std::invalid_argument("SupportSet: negative ambient dimension");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw std::invalid_argument("SupportSet: duplicate index");
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= ambient_dim_))
    throw std::invalid_argument("SupportSet: index out of [0, ambient_dim)");
}

SupportSet SupportSet::full(Index ambient_dim) {
  std::vector<Index> all(static_cast<std::size_t>(ambient_dim));
  std::iota(all.begin(), all.end(), Index{0});
  return SupportSet(std::move(all), ambient_dim);
}

bool SupportSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

SupportSet SupportSet::complement() const {
  std::vector<Index> rest;
  rest.reserve(static_cast<std::size_t>(ambient_dim_ - size()));
  auto it = indices_.begin();
  for (Index i = 0; i < ambient_dim_; ++i) {
    if (it != indices_.end() && *it == i) {
      ++it;
    } else {
      rest.push_back(i);
    }
  }
  return SupportSet(std::move(rest), ambient_dim_);
}

Vector restrict_to(const Vector& x, const SupportSet& s) {
  if (s.ambient_dim() != x.size())
    throw std::invalid_argument("restrict_to: support dimension must match signal length");
  Vector out = Vector::Zero(x.size());
  for (Index i : s.indices()) out[i] = x[i];
  return out;
}

Vector best_k_term(const Vector& x, Index k) {
  const Index n = x.size();
  if (k < 0 || k > n) throw std::invalid_argument("best_k_term: need 0 <= k <= n");
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&x](Index a, Index b) {
    return std::abs(x[a]) > std::abs(x[b]);
  });
  Vector out = Vector::Zero(n);
  for (Index j = 0; j < k; ++j) {
    const Index i = order[static_cast<std::size_t>(j)];
    out[i] = x[i];
  }
  return out;
}

double compressibility_error(const Vector& r, Index k) {
  if (k < 1 || k > r.size()) throw std::invalid_argument("compressibility_error: need 1 <= k <= n");
  const Vector tail = r - best_k_term(r, k);
  return tail.lpNorm<1>() / std::sqrt(static_cast<double>(k));
}

SupportSet support_from_threshold(const Vector& x, double tau) {
  if (tau < 0.0) throw std::invalid_argument("support_from_threshold: tau must be >= 0");
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > tau) idx.push_back(i);
  return SupportSet(std::move(idx), x.size());
}

SignalModel SignalModel::power_law(double exponent) {
  if (exponent <= 0.0) throw std::invalid_argument("power_law: exponent must be positive");
  return {Kind::PowerLaw, exponent};
}

std::pair<Vector, SupportSet> generate_signal(Index n, Index k_true, const SignalModel& model,
                                              Rng& rng) {
  if (n < 1) throw std::invalid_argument("generate_signal: n must be positive");
  if (k_true < 0 || k_true > n) throw std::invalid_argument("generate_signal: need 0 <= k_true <= n");

  Vector x = Vector::Zero(n);
  if (model.kind == SignalModel::Kind::ExactSparse) {
    const std::vector<Index> support = rng.sample_without_replacement(n, k_true);
    for (Index i : support) x[i] = rng.sign() * rng.uniform(1.0, 2.0);
    return {std::move(x), SupportSet(support, n)};
  }

  // power law: the i-th largest magnitude is i^{-exponent}
  const std::vector<Index> where = rng.permutation(n);
  std::vector<Index> top;
  for (Index rank = 0; rank < n; ++rank) {
    const Index i = where[static_cast<std::size_t>(rank)];
    x[i] = rng.sign() * std::pow(static_cast<double>(rank + 1), -model.exponent);
    if (rank < k_true) top.push_back(i);
  }
  return {std::move(x), SupportSet(std::move(top), n)};
}

std::pair<Vector, SupportSet> generate_signal(Index n, Index k_true, const SignalModel& model,
                                              std::uint64_t seed) {
  Rng rng(seed);
  return generate_signal(n, k_true, model, rng);
}

SupportSet make_known_support(const SupportSet& true_support, Index n_good, Index n_spurious,
                              Rng& rng) {
  if (n_good < 0 || n_good > true_support.size())
    throw std::invalid_argument("make_known_support: n_good exceeds the true support size");
  const SupportSet outside = true_support.complement();
  if (n_spurious < 0 || n_spurious > outside.size())
    throw std::invalid_argument("make_known_support: n_spurious exceeds the complement size");

  std::vector<Index> chosen;
  for (Index pick : rng.sample_without_replacement(true_support.size(), n_good))
    chosen.push_back(true_support.indices()[static_cast<std::size_t>(pick)]);
  for (Index pick : rng.sample_without_replacement(outside.size(), n_spurious))
    chosen.push_back(outside.indices()[static_cast<std::size_t>(pick)]);
  return SupportSet(std::move(chosen), true_support.ambient_dim());
}

}  // namespace ibpdn
