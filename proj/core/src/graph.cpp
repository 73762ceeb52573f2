#include "qcluster/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <utility>

#include "qcluster/error.hpp"
#include "text_util.hpp"

namespace qcluster {

namespace {

constexpr double kSymmetryTol = 1e-12;

}  // namespace

WeightedGraph::WeightedGraph(Eigen::MatrixXd weights) : weights_(std::move(weights)) {
  if (weights_.rows() != weights_.cols()) {
    throw InputError("weight matrix must be square, got " + std::to_string(weights_.rows()) +
                     "x" + std::to_string(weights_.cols()));
  }
  if (weights_.rows() < 2) throw InputError("graph needs at least 2 vertices");
  if (!weights_.allFinite()) throw InputError("weight matrix has non-finite entries");

  const double scale = weights_.cwiseAbs().maxCoeff();
  const int n = this->n();
  for (int i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw InputError("nonzero diagonal entry at vertex " + std::to_string(i + 1));
    }
    for (int j = 0; j < n; ++j) {
      if (weights_(i, j) < 0.0) {
        throw InputError("negative weight between vertices " + std::to_string(i + 1) + " and " +
                         std::to_string(j + 1));
      }
      if (j > i && std::abs(weights_(i, j) - weights_(j, i)) > kSymmetryTol * scale) {
        throw InputError("weight matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + ")");
      }
    }
  }
  weights_ = 0.5 * (weights_ + weights_.transpose()).eval();
}

int WeightedGraph::edge_count() const {
  int count = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (weights_(i, j) > 0.0) ++count;
  return count;
}

Laplacian Laplacian::from_matrix(Eigen::MatrixXd m) {
  if (m.rows() != m.cols() || m.rows() < 1) throw InputError("Laplacian must be square");
  if (!m.allFinite()) throw InputError("Laplacian has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (std::abs(m.row(i).sum()) > 1e-12 * scale * static_cast<double>(m.rows())) {
      throw InputError("Laplacian row " + std::to_string(i + 1) + " does not sum to zero");
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j) > 0.0) throw InputError("Laplacian has a positive off-diagonal entry");
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTol * scale) {
        throw InputError("Laplacian is not symmetric");
      }
    }
  }
  return Laplacian(std::move(m));
}

WeightedGraph parse_edge_list(std::string_view text) {
  struct Edge {
    int u, v;
    double w;
  };
  std::vector<Edge> edges;
  std::map<std::pair<int, int>, int> first_seen;  // edge -> defining line
  long long declared_n = -1;
  int max_id = 0;

  const auto lines = detail::split_lines(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const int line_no = static_cast<int>(idx) + 1;
    const auto line = detail::trim(lines[idx]);
    if (line.empty() || line.front() == '#') continue;
    const auto tok = detail::split_whitespace(line);

    if (tok[0] == "n") {
      if (tok.size() != 2) throw ParseError("header must be \"n <N>\"", line_no);
      if (declared_n >= 0) throw ParseError("repeated \"n\" header", line_no);
      const auto value = detail::to_integer(tok[1]);
      if (!value || *value < 2) throw ParseError("vertex count must be an integer >= 2", line_no);
      declared_n = *value;
      continue;
    }
    if (tok.size() != 3) throw ParseError("expected \"u v w\"", line_no);
    const auto u = detail::to_integer(tok[0]);
    const auto v = detail::to_integer(tok[1]);
    const auto w = detail::to_double(tok[2]);
    if (!u || !v || *u < 1 || *v < 1) throw ParseError("vertex ids must be integers >= 1", line_no);
    if (!w || !std::isfinite(*w)) throw ParseError("weight is not a number", line_no);
    if (*u == *v) throw ParseError("self-loop on vertex " + std::to_string(*u), line_no);
    if (*w <= 0.0) throw ParseError("weight must be positive", line_no);
    if (*u > 1'000'000 || *v > 1'000'000) throw ParseError("vertex id too large", line_no);

    const std::pair<int, int> key{static_cast<int>(std::min(*u, *v)), static_cast<int>(std::max(*u, *v))};
    if (const auto it = first_seen.find(key); it != first_seen.end()) {
      throw ParseError("duplicate edge (" + std::to_string(key.first) + "," +
                           std::to_string(key.second) + "), first given on line " +
                           std::to_string(it->second),
                       line_no);
    }
    first_seen.emplace(key, line_no);
    edges.push_back({key.first, key.second, *w});
    max_id = std::max(max_id, key.second);
  }

  if (declared_n >= 0 && max_id > declared_n) {
    throw ParseError("vertex id " + std::to_string(max_id) + " exceeds declared n = " +
                     std::to_string(declared_n));
  }
  const auto n = declared_n >= 0 ? static_cast<int>(declared_n) : max_id;
  if (n < 2) throw ParseError("edge list defines no graph (need at least 2 vertices)");

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : edges) {
    w(e.u - 1, e.v - 1) = e.w;
    w(e.v - 1, e.u - 1) = e.w;
  }
  return WeightedGraph(std::move(w));
}

WeightedGraph parse_adjacency(std::string_view csv) {
  const auto rows = detail::parse_csv_rows(csv);
  if (rows.empty()) throw ParseError("empty adjacency matrix");
  const auto n = rows.size();
  for (const auto& r : rows) {
    if (r.size() != n) {
      throw ParseError("adjacency matrix is not square (" + std::to_string(n) + " rows, a row of " +
                       std::to_string(r.size()) + " columns)");
    }
  }
  Eigen::MatrixXd w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = rows[i][j];
  return WeightedGraph(std::move(w));
}

std::string render_adjacency(const WeightedGraph& g) {
  std::string out;
  char buf[32];
  for (int i = 0; i < g.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", g.weights()(i, j));
      if (j > 0) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

WeightedGraph parse_graph(std::string_view text) {
  for (const auto raw : detail::split_lines(text)) {
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.find(',') != std::string_view::npos) return parse_adjacency(text);
    break;
  }
  return parse_edge_list(text);
}

Laplacian laplacian(const WeightedGraph& g) {
  Eigen::MatrixXd l = -g.weights();
  l.diagonal() = g.degrees();
  return Laplacian(std::move(l));
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
  const int n = g.n();
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> components;
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    if (label[root] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      components[id].push_back(u + 1);
      for (int v = 0; v < n; ++v) {
        if (label[v] < 0 && g.weights()(u, v) > 0.0) {
          label[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

bool is_connected(const WeightedGraph& g) { return connected_components(g).size() == 1; }

}  // namespace qcluster
