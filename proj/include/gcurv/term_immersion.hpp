#pragma once

// Immersions whose ambient coordinates are sums of products of per-axis
// factors u^p, cos(f u) or sin(f u), and the JSON file format describing them.
//
// File layout (see README for a full example):
//   {
//     "name": "paraboloid",
//     "m": 2, "k": 3,
//     "domain": [{"min": -1, "max": 1, "periodic": false}, ...],   // m axes
//     "coordinates": [                                               // k lists
//       [{"coeff": 1.0, "factors": [1, 0]}],
//       ...
//       [{"coeff": 1.0, "factors": [2, 0]}, {"coeff": 1.0, "factors": [0, {"cos": 2}]}]
//     ],
//     "euler_char": 2,   // optional, null or absent means unknown
//     "max_eps": 0.25    // optional safe tube radius
//   }
// A factor is an integer exponent, {"pow": p}, {"cos": f} or {"sin": f}.

#include <nlohmann/json.hpp>

#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcurv/errors.hpp"
#include "gcurv/immersion.hpp"

namespace gcurv {

struct Factor {
  enum class Kind { Pow, Cos, Sin };
  Kind kind = Kind::Pow;
  int value = 0;  // exponent or integer frequency
};

struct Term {
  double coeff = 1.0;
  std::vector<Factor> factors;  // one per axis
};

struct TermSpec {
  std::string name;
  int m = 0;
  int k = 0;
  std::vector<Axis> domain;
  std::vector<std::vector<Term>> coordinates;  // k entries
  std::optional<int> euler_char;
  double max_eps = 0.0;
};

namespace detail {

struct TermEvaluator {
  std::shared_ptr<const TermSpec> spec;

  template <class T>
  void operator()(std::span<const T> u, std::span<T> x) const {
    using std::cos;
    using std::sin;
    for (int a = 0; a < spec->k; ++a) {
      T acc(0.0);
      for (const Term& term : spec->coordinates[a]) {
        T t(term.coeff);
        for (int i = 0; i < spec->m; ++i) {
          const Factor& f = term.factors[i];
          switch (f.kind) {
            case Factor::Kind::Pow:
              if (f.value > 0) t = t * ipow(u[i], f.value);
              break;
            case Factor::Kind::Cos:
              t = t * cos(static_cast<double>(f.value) * u[i]);
              break;
            case Factor::Kind::Sin:
              t = t * sin(static_cast<double>(f.value) * u[i]);
              break;
          }
        }
        acc = acc + t;
      }
      x[a] = acc;
    }
  }
};

}  // namespace detail

inline Immersion term_immersion(const TermSpec& spec) {
  auto shared = std::make_shared<const TermSpec>(spec);
  Immersion imm = make_immersion(spec.name, spec.m, spec.k, spec.domain, detail::TermEvaluator{shared});
  imm.euler_char = spec.euler_char;
  imm.max_eps = spec.max_eps;
  return imm;
}

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(path + key, "missing required field");
  return j.at(key);
}

inline int parse_int(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ParseError(field, "expected an integer");
  return j.get<int>();
}

inline double parse_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number()) throw ParseError(field, "expected a number");
  return j.get<double>();
}

inline Factor parse_factor(const nlohmann::json& j, const std::string& field) {
  if (j.is_number_integer()) {
    const int p = j.get<int>();
    if (p < 0) throw ParseError(field, "negative exponent");
    return {Factor::Kind::Pow, p};
  }
  if (!j.is_object() || j.size() != 1) {
    throw ParseError(field, "expected an exponent or one of {\"pow\"|\"cos\"|\"sin\": int}");
  }
  const auto it = j.begin();
  const std::string key = it.key();
  const nlohmann::json& val = it.value();
  const int v = parse_int(val, field + "." + key);
  if (key == "pow") {
    if (v < 0) throw ParseError(field + ".pow", "negative exponent");
    return {Factor::Kind::Pow, v};
  }
  if (key == "cos") return {Factor::Kind::Cos, v};
  if (key == "sin") return {Factor::Kind::Sin, v};
  throw ParseError(field, "unknown factor tag '" + key + "'");
}

}  // namespace detail

inline TermSpec parse_term_spec(const nlohmann::json& j) {
  using detail::require;
  if (!j.is_object()) throw ParseError("<root>", "expected a JSON object");
  TermSpec spec;
  spec.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "custom";
  spec.m = detail::parse_int(require(j, "m", ""), "m");
  spec.k = detail::parse_int(require(j, "k", ""), "k");
  if (spec.m < 1 || spec.m > kMaxVars) throw ParseError("m", "must be between 1 and " + std::to_string(kMaxVars));
  if (spec.k <= spec.m || spec.k > kMaxAmbient) {
    throw ParseError("k", "must exceed m and be at most " + std::to_string(kMaxAmbient));
  }

  const auto& dom = require(j, "domain", "");
  if (!dom.is_array() || static_cast<int>(dom.size()) != spec.m) {
    throw ParseError("domain", "expected an array of m intervals");
  }
  for (int i = 0; i < spec.m; ++i) {
    const std::string path = "domain[" + std::to_string(i) + "].";
    Axis ax;
    ax.lo = detail::parse_number(require(dom[i], "min", path), path + "min");
    ax.hi = detail::parse_number(require(dom[i], "max", path), path + "max");
    if (!(ax.hi > ax.lo)) throw ParseError(path + "max", "must exceed min");
    if (dom[i].contains("periodic")) {
      if (!dom[i].at("periodic").is_boolean()) throw ParseError(path + "periodic", "expected a boolean");
      ax.periodic = dom[i].at("periodic").get<bool>();
    }
    spec.domain.push_back(ax);
  }

  const auto& coords = require(j, "coordinates", "");
  if (!coords.is_array() || static_cast<int>(coords.size()) != spec.k) {
    throw ParseError("coordinates", "expected an array of k term lists");
  }
  for (int a = 0; a < spec.k; ++a) {
    const std::string cpath = "coordinates[" + std::to_string(a) + "]";
    if (!coords[a].is_array()) throw ParseError(cpath, "expected an array of terms");
    std::vector<Term> terms;
    for (std::size_t t = 0; t < coords[a].size(); ++t) {
      const std::string tpath = cpath + "[" + std::to_string(t) + "].";
      const auto& tj = coords[a][t];
      Term term;
      term.coeff = tj.is_object() && tj.contains("coeff") ? detail::parse_number(tj.at("coeff"), tpath + "coeff") : 1.0;
      const auto& fj = require(tj, "factors", tpath);
      if (!fj.is_array() || static_cast<int>(fj.size()) != spec.m) {
        throw ParseError(tpath + "factors", "expected one factor per axis");
      }
      for (int i = 0; i < spec.m; ++i) {
        term.factors.push_back(detail::parse_factor(fj[i], tpath + "factors[" + std::to_string(i) + "]"));
      }
      terms.push_back(std::move(term));
    }
    spec.coordinates.push_back(std::move(terms));
  }

  if (j.contains("euler_char") && !j.at("euler_char").is_null()) {
    spec.euler_char = detail::parse_int(j.at("euler_char"), "euler_char");
  }
  if (j.contains("max_eps")) {
    spec.max_eps = detail::parse_number(j.at("max_eps"), "max_eps");
    if (spec.max_eps < 0) throw ParseError("max_eps", "must be non-negative");
  }
  return spec;
}

inline Immersion load_immersion_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return term_immersion(parse_term_spec(j));
}

// Graph x -> (x, X(x)) of a polynomial map R^m -> R^n over [-half_width, half_width]^m.
struct Monomial {
  double coeff = 0.0;
  std::vector<int> exponents;  // length m
};

inline Immersion graph_poly(int m, int n, const std::vector<std::vector<Monomial>>& components,
                            double half_width = 1.0) {
  if (static_cast<int>(components.size()) != n) throw std::invalid_argument("graph_poly: need n components");
  TermSpec spec;
  spec.name = "graph_poly";
  spec.m = m;
  spec.k = m + n;
  spec.domain.assign(m, Axis{-half_width, half_width, false});
  for (int i = 0; i < m; ++i) {
    Term t;
    t.coeff = 1.0;
    t.factors.assign(m, Factor{});
    t.factors[i].value = 1;
    spec.coordinates.push_back({t});
  }
  for (const auto& comp : components) {
    std::vector<Term> terms;
    for (const Monomial& mono : comp) {
      if (static_cast<int>(mono.exponents.size()) != m) throw std::invalid_argument("graph_poly: exponent arity");
      Term t;
      t.coeff = mono.coeff;
      for (int e : mono.exponents) t.factors.push_back({Factor::Kind::Pow, e});
      terms.push_back(std::move(t));
    }
    spec.coordinates.push_back(std::move(terms));
  }
  Immersion imm = term_immersion(spec);
  imm.params = {{"m", m}, {"n", n}};
  return imm;
}

}  // namespace gcurv
