#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace motifsearch::oracle {

namespace {

using Complex = std::complex<double>;

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

}  // namespace

double dense_expectation(const Eigen::VectorXcd& amps, int n, const std::string& paulis,
                         const std::vector<int>& sites) {
  const int64_t dim = int64_t{1} << n;
  Complex acc = 0.0;
  for (int64_t idx = 0; idx < dim; ++idx) {
    int64_t target = idx;
    Complex phase = 1.0;
    for (size_t t = 0; t < paulis.size(); ++t) {
      const int site = sites[t];
      const bool one = (target >> site) & 1;
      switch (paulis[t]) {
        case 'X':
          target ^= int64_t{1} << site;
          break;
        case 'Y':
          phase *= one ? Complex(0, -1) : Complex(0, 1);
          target ^= int64_t{1} << site;
          break;
        case 'Z':
          phase *= one ? -1.0 : 1.0;
          break;
        default:
          break;  // 'I'
      }
    }
    acc += std::conj(amps[target]) * phase * amps[idx];
  }
  const double norm2 = amps.squaredNorm();
  return acc.real() / norm2;
}

double dense_expectation_matrix(const Eigen::VectorXcd& amps, int n, const std::string& paulis,
                                const std::vector<int>& sites) {
  const int64_t dim = int64_t{1} << n;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
  for (size_t t = 0; t < paulis.size(); ++t) {
    Eigen::Matrix2cd p;
    switch (paulis[t]) {
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: p.setIdentity(); break;
    }
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int64_t col = 0; col < dim; ++col) {
      const bool one = (col >> sites[t]) & 1;
      for (int b = 0; b < 2; ++b) {
        const Complex v = p(b, one ? 1 : 0);
        if (v == Complex(0, 0)) continue;
        int64_t row = col & ~(int64_t{1} << sites[t]);
        if (b) row |= int64_t{1} << sites[t];
        full(row, col) = v;
      }
    }
    op = full * op;
  }
  const Complex val = amps.adjoint() * op * amps;
  return val.real() / amps.squaredNorm();
}

Eigen::VectorXcd dense_symmetrizer(const Eigen::VectorXcd& amps, int n, GroupKind kind) {
  const int64_t dim = int64_t{1} << n;
  if (kind == GroupKind::parity) {
    Eigen::VectorXcd out(dim);
    const int64_t mask = dim - 1;
    for (int64_t idx = 0; idx < dim; ++idx)
      out[idx] = 0.5 * (amps[idx] + amps[~idx & mask]);
    return out;
  }
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  long long count = 0;
  do {
    for (int64_t idx = 0; idx < dim; ++idx) {
      int64_t permuted = 0;
      for (int i = 0; i < n; ++i)
        if ((idx >> i) & 1) permuted |= int64_t{1} << perm[static_cast<size_t>(i)];
      out[permuted] += amps[idx];
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out / double(count);
}

std::vector<double> coefficient_extractor(double a, double b, double g, int total_sites) {
  const int N = total_sites;
  // lambda_+^N + lambda_-^N = 2^(1-N) sum_k C(N,2k) (a+xb)^(N-2k) ((a+xb)^2-4xg)^k
  auto mul = [](const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> r(p.size() + q.size() - 1, 0.0);
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
  };
  auto pow_poly = [&](const std::vector<double>& p, int e) {
    std::vector<double> r{1.0};
    for (int i = 0; i < e; ++i) r = mul(r, p);
    return r;
  };
  const std::vector<double> lin{a, b};
  const std::vector<double> quad{a * a, 2 * a * b - 4 * g, b * b};
  std::vector<double> acc(static_cast<size_t>(N) + 1, 0.0);
  for (int k = 0; 2 * k <= N; ++k) {
    const auto term = mul(pow_poly(lin, N - 2 * k), pow_poly(quad, k));
    const double c = double(binom(N, 2 * k));
    for (size_t i = 0; i < term.size() && i < acc.size(); ++i) acc[i] += c * term[i];
  }
  const double scale = std::pow(2.0, 1 - N);
  for (auto& v : acc) v *= scale;
  return acc;
}

long long riordan_direct(int total_sites, int j) {
  long long acc = 0;
  for (int i = 0; 2 * i <= total_sites; ++i) acc += binom(total_sites, 2 * i) * binom(i, j);
  return acc;
}

OracleReport make_report(const std::string& case_id, double lhs, double rhs, double tolerance) {
  OracleReport r;
  r.case_id = case_id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max(1e-300, std::abs(rhs));
  r.tolerance = tolerance;
  r.pass = r.abs_err <= tolerance;
  return r;
}

void write_reports_csv(const std::vector<OracleReport>& reports,
                       const std::filesystem::path& file) {
  std::ofstream os(file, std::ios::binary);
  os << "case,lhs,rhs,abs_err,rel_err,tolerance,pass\n";
  for (const auto& r : reports) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.3e,%.3e,%.1e,%d\n", r.case_id.c_str(), r.lhs,
                  r.rhs, r.abs_err, r.rel_err, r.tolerance, r.pass ? 1 : 0);
    os << buf;
  }
}

}  // namespace motifsearch::oracle
