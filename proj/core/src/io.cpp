#include "qcluster/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "qcluster/error.hpp"
#include "text_util.hpp"

namespace qcluster {

AgentDynamics parse_dynamics(std::string_view text) {
  std::vector<std::pair<int, std::vector<double>>> rows;  // (line, values)
  const auto lines = detail::split_lines(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const auto line = detail::trim(lines[idx]);
    if (line.empty() || line.front() == '#') continue;
    const int line_no = static_cast<int>(idx) + 1;
    if (rows.empty()) {
      const auto tok = detail::split_whitespace(line);
      const auto d = tok.size() == 2 && tok[0] == "d" ? detail::to_integer(tok[1]) : std::nullopt;
      if (!d || *d < 1 || *d > 64) throw ParseError("first line must be \"d <d>\" with d >= 1", line_no);
      rows.push_back({line_no, {static_cast<double>(*d)}});
      continue;
    }
    std::vector<double> values;
    for (const auto tok : detail::split_whitespace(line)) {
      const auto v = detail::to_double(tok);
      if (!v) throw ParseError("not a number: \"" + std::string(tok) + "\"", line_no);
      values.push_back(*v);
    }
    rows.push_back({line_no, std::move(values)});
  }
  if (rows.empty()) throw ParseError("empty dynamics file");
  const auto d = static_cast<std::size_t>(rows[0].second[0]);
  if (rows.size() != 1 + 2 * d) {
    throw ParseError("expected " + std::to_string(2 * d) + " matrix rows after the header, got " +
                     std::to_string(rows.size() - 1));
  }
  Eigen::MatrixXd a(d, d), f(d, d);
  for (std::size_t r = 0; r < 2 * d; ++r) {
    const auto& [line_no, values] = rows[1 + r];
    if (values.size() != d) {
      throw ParseError("expected " + std::to_string(d) + " values", line_no);
    }
    auto& target = r < d ? a : f;
    for (std::size_t c = 0; c < d; ++c) target(r % d, c) = values[c];
  }
  return AgentDynamics(std::move(a), std::move(f));
}

std::string render_dynamics(const AgentDynamics& dyn) {
  std::ostringstream out;
  out << "d " << dyn.d() << '\n';
  char buf[32];
  for (const auto* m : {&dyn.A(), &dyn.F()}) {
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      for (Eigen::Index j = 0; j < m->cols(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", (*m)(i, j));
        out << (j ? " " : "") << buf;
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string render_trajectory_csv(const Trajectory& tr) {
  std::string out = "t";
  for (int i = 1; i <= tr.agents; ++i)
    for (int c = 1; c <= tr.dim; ++c) out += ",x_" + std::to_string(i) + "_" + std::to_string(c);
  out += '\n';
  char buf[32];
  for (std::size_t k = 0; k < tr.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.9g", tr.times[k]);
    out += buf;
    for (Eigen::Index e = 0; e < tr.states[k].size(); ++e) {
      std::snprintf(buf, sizeof buf, ",%.9g", tr.states[k](e));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Trajectory parse_trajectory_csv(std::string_view csv) {
  const auto lines = detail::split_lines(csv);
  std::size_t idx = 0;
  while (idx < lines.size() && detail::trim(lines[idx]).empty()) ++idx;
  if (idx == lines.size()) throw ParseError("empty trajectory file");

  const auto header = detail::split_on(detail::trim(lines[idx]), ',');
  if (header.size() < 2 || header[0] != "t") throw ParseError("header must start with \"t\"", static_cast<int>(idx) + 1);
  const auto last = std::string(header.back());
  int agents = 0, dim = 0;
  if (std::sscanf(last.c_str(), "x_%d_%d", &agents, &dim) != 2 || agents < 1 || dim < 1 ||
      header.size() != static_cast<std::size_t>(agents * dim) + 1) {
    throw ParseError("malformed trajectory header", static_cast<int>(idx) + 1);
  }
  for (int i = 1, col = 1; i <= agents; ++i) {
    for (int c = 1; c <= dim; ++c, ++col) {
      if (header[col] != "x_" + std::to_string(i) + "_" + std::to_string(c)) {
        throw ParseError("unexpected column name \"" + std::string(header[col]) + "\"",
                         static_cast<int>(idx) + 1);
      }
    }
  }

  Trajectory tr;
  tr.agents = agents;
  tr.dim = dim;
  for (++idx; idx < lines.size(); ++idx) {
    const auto line = detail::trim(lines[idx]);
    if (line.empty()) continue;
    const int line_no = static_cast<int>(idx) + 1;
    const auto cells = detail::split_on(line, ',');
    if (cells.size() != header.size()) throw ParseError("wrong number of columns", line_no);
    Eigen::VectorXd x(agents * dim);
    double t = 0.0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = detail::to_double(cells[c]);
      if (!v) throw ParseError("not a number: \"" + std::string(cells[c]) + "\"", line_no);
      if (c == 0)
        t = *v;
      else
        x(static_cast<Eigen::Index>(c) - 1) = *v;
    }
    if (!tr.times.empty() && !(t > tr.times.back())) throw ParseError("times must increase", line_no);
    tr.times.push_back(t);
    tr.states.push_back(std::move(x));
  }
  if (tr.times.empty()) throw ParseError("trajectory has no rows");
  return tr;
}

Eigen::MatrixXd parse_matrix_csv(std::string_view csv) {
  const auto rows = detail::parse_csv_rows(csv);
  if (rows.empty()) throw ParseError("empty matrix");
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ParseError("matrix rows differ in length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << contents;
  if (!out) throw InputError("write failed for " + path);
}

}  // namespace qcluster
