#include "unilab/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace unilab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

json extended_real(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? json("inf") : json("-inf");
  return v;
}

}  // namespace

json to_json(const UnitationFitness& f) {
  return json{{"n", f.n},
              {"values", f.values},
              {"optimum_level", f.optimum_level},
              {"label", f.label}};
}

json to_json(const SteppingStoneProfile& p) {
  return json{{"p", to_double(p.p)},
              {"p_exact", to_fraction_string(p.p)},
              {"n", p.n},
              {"levels", p.levels},
              {"N", p.num_stones}};
}

json to_json(const OptRateResult& r) {
  return json{{"q_star", r.q_star},
              {"t_star", extended_real(r.t_star)},
              {"bracket_lo", r.bracket_lo},
              {"bracket_hi", r.bracket_hi},
              {"refinement_iterations", r.refinement_iterations},
              {"boundary_flag", r.boundary_flag}};
}

json to_json(const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"n", row.n}, {"ok", row.ok}};
    if (row.ok) {
      j["q_star"] = row.result.q_star;
      j["t_star"] = extended_real(row.result.t_star);
      j["normalized"] = extended_real(row.normalized);
      j["boundary_flag"] = row.result.boundary_flag;
    } else {
      j["error"] = row.error;
    }
    rows.push_back(std::move(j));
  }
  return json{{"p", to_double(r.p)},
              {"p_exact", to_fraction_string(r.p)},
              {"rows", std::move(rows)}};
}

json to_json(const TrajectoryStats& s) {
  return json{{"runs", s.runs},
              {"hits", s.hits},
              {"censored", s.censored},
              {"mean_steps", s.estimate_available ? json(s.mean_steps) : json(nullptr)},
              {"standard_error", s.se_valid ? json(s.standard_error) : json(nullptr)},
              {"estimate_available", s.estimate_available},
              {"cap", s.cap},
              {"seed", s.seed}};
}

json to_json(const LemmaCheck& c) {
  return json{{"id", c.id},
              {"pass", c.pass},
              {"worst_margin", c.worst_margin},
              {"worst_point", c.worst_point},
              {"note", c.note}};
}

json to_json(const RuntimeCurve<double>& c) {
  json points = json::array();
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    points.push_back(json{{"q", c.grid[i]}, {"e_t", extended_real(c.values[i])}});
  return json{{"fitness", c.fitness_label}, {"backend", c.backend}, {"points", points}};
}

json to_json(const RuntimeCurve<Rational>& c) {
  json points = json::array();
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    points.push_back(json{{"q", to_fraction_string(c.grid[i])},
                          {"e_t", to_fraction_string(c.values[i])},
                          {"e_t_approx", to_double(c.values[i])}});
  return json{{"fitness", c.fitness_label}, {"backend", c.backend}, {"points", points}};
}

namespace {

template <class T, class Fmt>
json chain_json_impl(const EAChain<T>& chain, Fmt&& fmt, const char* backend) {
  json rows = json::array();
  for (int i = 0; i <= chain.n; ++i) {
    json row = json::array();
    for (int j = 0; j <= chain.n; ++j)
      row.push_back(fmt(chain.rows(static_cast<std::size_t>(i), static_cast<std::size_t>(j))));
    rows.push_back(std::move(row));
  }
  return json{{"fitness", chain.fitness.label},
              {"backend", backend},
              {"mode", chain.mode == Acceptance::kElitistGE ? "elitist-ge" : "always-accept"},
              {"absorbing", chain.absorbing},
              {"optimum", chain.optimum},
              {"rows", std::move(rows)}};
}

}  // namespace

json chain_debug_json(const EAChain<Rational>& chain) {
  return chain_json_impl(chain, [](const Rational& v) { return json(to_fraction_string(v)); },
                         "rational");
}

json chain_debug_json(const EAChain<double>& chain) {
  return chain_json_impl(chain, [](double v) { return json(v); }, "float");
}

std::string curve_csv(const RuntimeCurve<double>& c) {
  std::ostringstream out;
  out << "q,e_t\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    out << format_double(c.grid[i]) << "," << format_double(c.values[i]) << "\n";
  return out.str();
}

std::string curve_csv(const RuntimeCurve<Rational>& c) {
  std::ostringstream out;
  out << "q,e_t\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    out << to_fraction_string(c.grid[i]) << "," << to_fraction_string(c.values[i]) << "\n";
  return out.str();
}

std::string convergence_csv(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "n,q_star,t_star,normalized\n";
  for (const auto& row : r.rows) {
    if (!row.ok) {
      out << row.n << ",error,error,error\n";
      continue;
    }
    out << row.n << "," << format_double(row.result.q_star) << ","
        << format_double(row.result.t_star) << "," << format_double(row.normalized) << "\n";
  }
  return out.str();
}

std::string lemma_csv(const std::vector<LemmaCheck>& checks) {
  std::ostringstream out;
  out << "lemma_id,pass,worst_margin,worst_point_a,worst_point_b\n";
  for (const auto& c : checks)
    out << c.id << "," << (c.pass ? "true" : "false") << "," << format_double(c.worst_margin)
        << "," << format_double(c.worst_point[0]) << "," << format_double(c.worst_point[1])
        << "\n";
  return out.str();
}

std::string fitness_table_csv(const UnitationFitness& f) {
  std::ostringstream out;
  out << "level,fitness\n";
  for (int i = 0; i <= f.n; ++i)
    out << i << "," << format_double(f.values[static_cast<std::size_t>(i)]) << "\n";
  return out.str();
}

}  // namespace unilab
