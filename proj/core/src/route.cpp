#include "ptf/route.hpp"

#include <cmath>
#include <stdexcept>

namespace ptf {

namespace {

// log(sum exp(v)) with max subtraction; keeps |logit| up to ~700 finite.
double log_sum_exp(std::span<const double> v) {
  double hi = v[0];
  for (double x : v) hi = std::max(hi, x);
  double total = 0.0;
  for (double x : v) total += std::exp(x - hi);
  return hi + std::log(total);
}

}  // namespace

double RoutingMatrix::column_sum(int c) const {
  double s = 0.0;
  for (int r = 0; r < p.rows; ++r) s += p.at(r, c);
  return s;
}

double RoutingMatrix::row_sum(int r) const {
  double s = 0.0;
  for (int c = 0; c < p.cols; ++c) s += p.at(r, c);
  return s;
}

RoutingMatrix sinkhorn_project(const RealMatrix& logits, int iterations) {
  if (logits.rows < 1 || logits.cols < 1) {
    throw std::invalid_argument("sinkhorn_project: empty matrix");
  }
  if (iterations < 1) throw std::invalid_argument("sinkhorn_project: iterations must be >= 1");
  for (double v : logits.data) {
    if (!std::isfinite(v)) throw std::invalid_argument("sinkhorn_project: non-finite logit");
  }

  const int m = logits.rows;
  const int n = logits.cols;
  const double row_target = static_cast<double>(n) / static_cast<double>(m);
  const double log_row_target = std::log(row_target);

  std::vector<double> u(static_cast<std::size_t>(m), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  std::vector<double> scratch(static_cast<std::size_t>(std::max(m, n)));

  for (int t = 0; t < iterations; ++t) {
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < n; ++c) scratch[static_cast<std::size_t>(c)] = logits.at(r, c) + v[c];
      u[static_cast<std::size_t>(r)] =
          log_row_target - log_sum_exp({scratch.data(), static_cast<std::size_t>(n)});
    }
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < m; ++r) scratch[static_cast<std::size_t>(r)] = logits.at(r, c) + u[r];
      v[static_cast<std::size_t>(c)] =
          -log_sum_exp({scratch.data(), static_cast<std::size_t>(m)});
    }
  }

  RoutingMatrix out;
  out.row_target = row_target;
  out.p = RealMatrix(m, n);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) out.p.at(r, c) = std::exp(logits.at(r, c) + u[r] + v[c]);
  }
  return out;
}

std::vector<int> harden_routing(const RoutingMatrix& routing) {
  std::vector<int> assignment(static_cast<std::size_t>(routing.p.cols), 0);
  for (int c = 0; c < routing.p.cols; ++c) {
    int best = 0;
    for (int r = 1; r < routing.p.rows; ++r) {
      if (routing.p.at(r, c) > routing.p.at(best, c)) best = r;
    }
    assignment[static_cast<std::size_t>(c)] = best;
  }
  return assignment;
}

void SignVector::validate() const {
  for (Sign s : signs) {
    if (!is_sign(s)) throw std::invalid_argument("sign vector entries must be +-1");
  }
}

void CompositionPlan::validate() const {
  signs.validate();
  if (signs.signs.size() != assignment.size()) {
    throw std::invalid_argument("composition plan: one sign per child required");
  }
  if (parents.empty()) throw std::invalid_argument("composition plan: empty parent bank");
  for (int p : assignment) {
    if (p < 0 || static_cast<std::size_t>(p) >= parents.size()) {
      throw std::invalid_argument("composition plan: parent index out of range");
    }
  }
}

TernaryMask compose_mask(const CompositionPlan& plan, int child) {
  plan.validate();
  if (child < 0 || static_cast<std::size_t>(child) >= plan.assignment.size()) {
    throw std::out_of_range("compose_mask: child index out of range");
  }
  const auto& parent = plan.parents[static_cast<std::size_t>(plan.assignment[child])];
  const Sign sign = plan.signs.signs[static_cast<std::size_t>(child)];
  std::vector<Sign> coeffs(parent.coeffs().begin(), parent.coeffs().end());
  if (sign == kTrue) {
    for (auto& c : coeffs) c = static_cast<Sign>(-c);
  }
  return TernaryMask(parent.n(), std::move(coeffs), parent.variables());
}

std::vector<LinearFit> solve_linear_composition(std::span<const TruthTable> targets,
                                                std::span<const TernaryMask> parents,
                                                bool allow_signs) {
  if (parents.empty()) throw std::invalid_argument("solve_linear_composition: empty parent set");
  std::vector<LinearFit> fits;
  fits.reserve(targets.size());
  for (const auto& target : targets) {
    LinearFit best;
    for (std::size_t p = 0; p < parents.size(); ++p) {
      for (Sign sign : {Sign{+1}, Sign{-1}}) {
        if (sign == -1 && !allow_signs) continue;
        const auto& parent = parents[p];
        std::size_t agree = 0;
        for (std::size_t x = 0; x < target.size(); ++x) {
          const Sign value = sign_of(sign * mask_dot_at(parent, x));
          agree += value == target.output(x);
        }
        const double acc = static_cast<double>(agree) / static_cast<double>(target.size());
        if (acc > best.accuracy) {
          best = LinearFit{static_cast<int>(p), sign, acc};
        }
      }
    }
    fits.push_back(best);
  }
  return fits;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
  RealMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  }
  return out;
}

double spectral_norm(const RealMatrix& a, int iterations) {
  std::vector<double> v(static_cast<std::size_t>(a.cols), 1.0);
  std::vector<double> av(static_cast<std::size_t>(a.rows));
  double norm = 0.0;
  for (int it = 0; it < iterations; ++it) {
    for (int r = 0; r < a.rows; ++r) {
      double s = 0.0;
      for (int c = 0; c < a.cols; ++c) s += a.at(r, c) * v[static_cast<std::size_t>(c)];
      av[static_cast<std::size_t>(r)] = s;
    }
    double vnorm = 0.0;
    for (int c = 0; c < a.cols; ++c) {
      double s = 0.0;
      for (int r = 0; r < a.rows; ++r) s += a.at(r, c) * av[static_cast<std::size_t>(r)];
      v[static_cast<std::size_t>(c)] = s;
      vnorm += s * s;
    }
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) return 0.0;
    for (auto& x : v) x /= vnorm;
    norm = std::sqrt(vnorm);
  }
  return norm;
}

}  // namespace ptf
