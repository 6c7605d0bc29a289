#include "ume/mip.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "ume/errors.hpp"
#include "ume/evaluator.hpp"
#include "ume/format.hpp"

namespace ume {

namespace {

std::string r_name(EdgeId e) { return "r_e" + std::to_string(e); }
std::string pi_name(std::size_t k, NodeId i) {
  return "pi_k" + std::to_string(k) + "_n" + std::to_string(i);
}
std::string th_name(std::size_t k, EdgeId e) {
  return "th_k" + std::to_string(k) + "_e" + std::to_string(e);
}

void append_terms(std::ostringstream& os,
                  const std::vector<std::pair<std::string, double>>& terms) {
  bool first = true;
  for (const auto& [var, coef] : terms) {
    const double mag = std::fabs(coef);
    if (first) {
      if (coef < 0.0) os << "- ";
      first = false;
    } else {
      os << (coef < 0.0 ? " - " : " + ");
    }
    if (mag != 1.0) os << format_double(mag) << ' ';
    os << var;
  }
}

}  // namespace

MipModel build_mip(const ProblemInstance& p, const MipOptions& opts) {
  const Graph& g = p.graph;
  const std::size_t evader_count = p.evaders.size();
  MipModel model;

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    model.binaries.push_back(r_name(e));
  }
  for (std::size_t k = 0; k < evader_count; ++k) {
    for (NodeId i = 0; i < g.node_count(); ++i) {
      model.continuous.push_back(pi_name(k, i));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      model.continuous.push_back(th_name(k, e));
    }
  }

  for (std::size_t k = 0; k < evader_count; ++k) {
    model.objective.emplace_back(pi_name(k, p.evaders[k].target),
                                 p.evaders[k].weight);
  }

  for (std::size_t k = 0; k < evader_count; ++k) {
    const EvaderSpec& ev = p.evaders[k];
    const std::vector<double> a = ev.dense_source(g.node_count());
    const std::vector<double> probs = ev.matrix.to_edge_probs(g.edge_count());

    for (NodeId i = 0; i < g.node_count(); ++i) {
      LinearRow row;
      row.name = "flow_k" + std::to_string(k) + "_n" + std::to_string(i);
      row.sense = 'E';
      row.rhs = a[i];
      row.terms.emplace_back(pi_name(k, i), 1.0);
      for (EdgeId e : g.in_edges(i)) row.terms.emplace_back(th_name(k, e), -1.0);
      model.rows.push_back(std::move(row));
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const double mp = probs[e];
      {
        LinearRow row;  // th >= M pi_tail - M d r
        row.name = "doma_k" + std::to_string(k) + "_e" + std::to_string(e);
        row.sense = 'G';
        row.rhs = 0.0;
        row.terms.emplace_back(th_name(k, e), 1.0);
        if (mp != 0.0) row.terms.emplace_back(pi_name(k, ed.tail), -mp);
        if (mp * ed.efficiency != 0.0) {
          row.terms.emplace_back(r_name(e), mp * ed.efficiency);
        }
        model.rows.push_back(std::move(row));
      }
      {
        LinearRow row;  // th >= M (1 - d) pi_tail
        row.name = "domb_k" + std::to_string(k) + "_e" + std::to_string(e);
        row.sense = 'G';
        row.rhs = 0.0;
        row.terms.emplace_back(th_name(k, e), 1.0);
        const double c = mp * (1.0 - ed.efficiency);
        if (c != 0.0) row.terms.emplace_back(pi_name(k, ed.tail), -c);
        model.rows.push_back(std::move(row));
      }
    }
  }

  LinearRow budget;
  budget.name = "budget";
  budget.sense = opts.budget_inequality ? 'L' : 'E';
  budget.rhs = static_cast<double>(p.budget);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    budget.terms.emplace_back(r_name(e), 1.0);
  }
  model.rows.push_back(std::move(budget));

  if (opts.pi_upper_bounds) {
    for (std::size_t k = 0; k < evader_count; ++k) {
      for (NodeId i = 0; i < g.node_count(); ++i) {
        model.upper_bounds.emplace_back(pi_name(k, i), 1.0);
      }
    }
  }
  return model;
}

std::string write_lp(const MipModel& model) {
  std::ostringstream os;
  os << "\\ UME interdiction MIP\n";
  os << "Minimize\n obj: ";
  append_terms(os, model.objective);
  os << "\nSubject To\n";
  for (const LinearRow& row : model.rows) {
    os << ' ' << row.name << ": ";
    append_terms(os, row.terms);
    os << (row.sense == 'E' ? " = " : row.sense == 'G' ? " >= " : " <= ");
    os << format_double(row.rhs) << '\n';
  }
  os << "Bounds\n";
  std::unordered_map<std::string, double> upper;
  for (const auto& [var, b] : model.upper_bounds) upper[var] = b;
  for (const std::string& var : model.continuous) {
    auto it = upper.find(var);
    if (it != upper.end()) {
      os << " 0 <= " << var << " <= " << format_double(it->second) << '\n';
    } else {
      os << " 0 <= " << var << '\n';
    }
  }
  os << "Binaries\n";
  for (const std::string& var : model.binaries) os << ' ' << var << '\n';
  os << "End\n";
  return os.str();
}

namespace {

bool parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream is(line);
  std::string t;
  while (is >> t) tokens.push_back(t);
  return tokens;
}

// Parses "name: terms sense rhs" (sense/rhs optional for the objective).
void parse_expression(const std::vector<std::string>& tokens, std::size_t start,
                      std::vector<std::pair<std::string, double>>& terms,
                      char* sense, double* rhs) {
  double sign = 1.0;
  bool have_coef = false;
  double coef = 1.0;
  for (std::size_t i = start; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok == "+") {
      sign = 1.0;
      continue;
    }
    if (tok == "-") {
      sign = -1.0;
      continue;
    }
    if (tok == "=" || tok == ">=" || tok == "<=") {
      if (sense == nullptr || i + 1 >= tokens.size()) {
        throw DataError("LP parse error: unexpected relation");
      }
      *sense = tok == "=" ? 'E' : tok == ">=" ? 'G' : 'L';
      double value = 0.0;
      if (!parse_number(tokens[i + 1], value)) {
        throw DataError("LP parse error: bad right-hand side '" +
                        tokens[i + 1] + "'");
      }
      *rhs = value;
      return;
    }
    double value = 0.0;
    if (parse_number(tok, value)) {
      coef = value;
      have_coef = true;
      continue;
    }
    terms.emplace_back(tok, sign * (have_coef ? coef : 1.0));
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  if (sense != nullptr) throw DataError("LP parse error: missing relation");
}

}  // namespace

MipModel parse_lp(const std::string& text) {
  MipModel model;
  enum class Section { kNone, kObjective, kRows, kBounds, kBinaries, kDone };
  Section section = Section::kNone;
  std::istringstream is(text);
  std::string line;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '\\') continue;
    const std::string key = lower(line);
    if (key == "minimize") {
      section = Section::kObjective;
      continue;
    }
    if (key == "subject to") {
      section = Section::kRows;
      continue;
    }
    if (key == "bounds") {
      section = Section::kBounds;
      continue;
    }
    if (key == "binaries") {
      section = Section::kBinaries;
      continue;
    }
    if (key == "end") {
      section = Section::kDone;
      continue;
    }
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    switch (section) {
      case Section::kObjective: {
        std::size_t start = 0;
        if (tokens[0].back() == ':') start = 1;
        parse_expression(tokens, start, model.objective, nullptr, nullptr);
        break;
      }
      case Section::kRows: {
        if (tokens[0].back() != ':') {
          throw DataError("LP parse error: constraint without a name");
        }
        LinearRow row;
        row.name = tokens[0].substr(0, tokens[0].size() - 1);
        parse_expression(tokens, 1, row.terms, &row.sense, &row.rhs);
        model.rows.push_back(std::move(row));
        break;
      }
      case Section::kBounds: {
        // " 0 <= var" or " 0 <= var <= upper"
        if (tokens.size() >= 3 && tokens[1] == "<=") {
          model.continuous.push_back(tokens[2]);
          if (tokens.size() == 5 && tokens[3] == "<=") {
            double upper = 0.0;
            if (!parse_number(tokens[4], upper)) {
              throw DataError("LP parse error: bad bound");
            }
            model.upper_bounds.emplace_back(tokens[2], upper);
          }
        } else {
          throw DataError("LP parse error: unsupported bound line '" + line +
                          "'");
        }
        break;
      }
      case Section::kBinaries: {
        for (const std::string& t : tokens) model.binaries.push_back(t);
        break;
      }
      default:
        throw DataError("LP parse error: content outside any section");
    }
  }
  return model;
}

MipCheckReport check_mip_solution(const ProblemInstance& p,
                                  std::span<const EdgeId> interdicted,
                                  double tolerance, const MipOptions& opts) {
  const Graph& g = p.graph;
  const InterdictionSet s = InterdictionSet::from_edges(interdicted, g.edge_count());
  if (opts.budget_inequality
          ? static_cast<std::int32_t>(s.size()) > p.budget
          : static_cast<std::int32_t>(s.size()) != p.budget) {
    throw DataError("interdiction set size " + std::to_string(s.size()) +
                    " violates the budget " + std::to_string(p.budget));
  }

  std::unordered_map<std::string, double> value;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    value[r_name(e)] = s.contains(e) ? 1.0 : 0.0;
  }

  MipCheckReport report;
  for (std::size_t k = 0; k < p.evaders.size(); ++k) {
    const EvaderSpec& ev = p.evaders[k];
    const TransitionMatrix interdicted_m = apply_interdiction(ev.matrix, s, g);
    const std::vector<double> a = ev.dense_source(g.node_count());
    const VisitVector pi = expected_visits(a, interdicted_m, p.tolerance);
    const std::vector<double> probs = ev.matrix.to_edge_probs(g.edge_count());
    for (NodeId i = 0; i < g.node_count(); ++i) value[pi_name(k, i)] = pi[i];
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const double r = s.contains(e) ? 1.0 : 0.0;
      const double mp = probs[e];
      const double theta = std::max(mp * pi[ed.tail] - mp * ed.efficiency * r,
                                    mp * (1.0 - ed.efficiency) * pi[ed.tail]);
      value[th_name(k, e)] = theta;
    }
    report.h_value += ev.weight * pi[ev.target];
  }

  const MipModel model = build_mip(p, opts);
  for (const LinearRow& row : model.rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * value.at(var);
    double violation = 0.0;
    if (row.sense == 'E') {
      violation = std::fabs(lhs - row.rhs);
    } else if (row.sense == 'G') {
      violation = std::max(0.0, row.rhs - lhs);
    } else {
      violation = std::max(0.0, lhs - row.rhs);
    }
    report.max_violation = std::max(report.max_violation, violation);
    if (violation > tolerance) {
      report.violations.push_back(row.name + " violated by " +
                                  format_double(violation));
    }
  }

  report.objective_j = objective(p, s);
  const double mismatch = std::fabs(report.h_value - (1.0 - report.objective_j));
  if (mismatch > 1e-8) {
    report.violations.push_back("H != 1 - J (difference " +
                                format_double(mismatch) + ")");
  }
  report.ok = report.violations.empty();
  return report;
}

}  // namespace ume
