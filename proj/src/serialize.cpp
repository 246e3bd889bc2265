#include <ibpdn/serialize.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ibpdn {

std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_csv(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_signal(std::ostream& os, const Vector& x) {
  for (Index i = 0; i < x.size(); ++i) os << format_full(x[i]) << '\n';
}

Vector read_signal(std::istream& is) {
  std::vector<double> values;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    values.push_back(std::stod(line));
  }
  Vector x(static_cast<Index>(values.size()));
  for (Index i = 0; i < x.size(); ++i) x[i] = values[static_cast<std::size_t>(i)];
  return x;
}

void write_signal_file(const std::string& path, const Vector& x) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_signal(os, x);
}

Vector read_signal_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return read_signal(is);
}

void write_matrix_csv(std::ostream& os, const Matrix& a) {
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j > 0) os << ',';
      os << format_full(a(i, j));
    }
    os << '\n';
  }
}

Matrix read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::runtime_error("read_matrix_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  Matrix a(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows[0].size()));
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return a;
}

Json to_json(const RecoveryResult& result) {
  Json j;
  j["x_star"] = std::vector<double>(result.x_star.begin(), result.x_star.end());
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["final_residual"] = result.final_residual;
  j["objective"] = result.objective;
  j["iterate_change"] = result.iterate_change;
  return j;
}

Json to_json(const RipEstimate& estimate) {
  Json j;
  j["order_q"] = estimate.order_q;
  j["radius"] = estimate.radius;
  j["saturated"] = estimate.saturated;
  j["method"] = to_string(estimate.method);
  if (estimate.method == RipMethod::MonteCarlo) j["samples"] = estimate.samples;
  j["is_lower_bound"] = estimate.is_lower_bound;
  return j;
}

Json to_json(const BoundReport& report) {
  Json j;
  j["delta_2k"] = report.delta_2k;
  j["delta_s2k"] = report.delta_s2k;
  j["mu"] = report.mu;
  j["condition_ok"] = report.condition_ok;
  if (report.c_const) j["C"] = *report.c_const;
  if (report.d_const) j["D"] = *report.d_const;
  if (report.delta_prime) j["delta_prime"] = *report.delta_prime;
  if (report.d_tilde) j["D_tilde"] = *report.d_tilde;
  return j;
}

Json to_json(const OptimalityCertificate& cert) {
  Json j;
  j["pass"] = cert.pass;
  j["lambda"] = cert.lambda;
  j["worst_violation"] = cert.worst_violation;
  j["known_violation"] = cert.known_violation;
  j["sign_violation"] = cert.sign_violation;
  j["box_violation"] = cert.box_violation;
  j["residual"] = cert.residual;
  return j;
}

}  // namespace ibpdn
