#pragma once

// JSON mirrors of the result types. Polynomials are constant-first arrays:
// numbers in float mode, "p/q" strings in exact mode. Non-finite reals are
// written as null.

#include <json.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rz/errors.hpp"
#include "rz/polynomial.hpp"
#include "rz/rootfinder.hpp"
#include "rz/scan.hpp"
#include "rz/thetasolver.hpp"
#include "rz/witness.hpp"

namespace rz::io {

using json = nlohmann::json;

/// Integral doubles are written as integers so 1.0 prints as 1. Both parse
/// back to the same double.
inline json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  if (x == 0 && std::signbit(x)) return x;
  if (x == std::trunc(x) && std::abs(x) < 0x1p53) return static_cast<long long>(x);
  return x;
}

inline json complex(std::complex<double> z) { return {{"re", number(z.real())}, {"im", number(z.imag())}}; }

template <class T>
json optional_number(const std::optional<T>& x) {
  if (!x) return nullptr;
  return number(static_cast<double>(*x));
}

// --- polynomials ----------------------------------------------------------

inline json to_json(const Polynomial<double>& p) {
  json out = json::array();
  for (double c : p.coeffs()) out.push_back(number(c));
  return out;
}

inline json to_json(const Polynomial<Rational>& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_pq_string(c));
  return out;
}

template <class T>
json to_json(const std::vector<Polynomial<T>>& seq) {
  json out = json::array();
  for (const auto& p : seq) out.push_back(to_json(p));
  return out;
}

namespace detail {

template <class T>
T coefficient(const json& v) {
  if (v.is_string()) return from_rational<T>(parse_rational(v.get<std::string>()));
  if (v.is_number_integer()) {
    if constexpr (is_exact_v<T>)
      return v.is_number_unsigned() ? Rational(v.get<unsigned long>()) : Rational(v.get<long>());
    else
      return static_cast<T>(v.get<double>());
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if constexpr (is_exact_v<T>)
      return decimal_rational(x);
    else
      return x;
  }
  throw DomainError("coefficient must be a number or a \"p/q\" string, got " + v.dump());
}

}  // namespace detail

template <class T>
Polynomial<T> polynomial_from_json(const json& v) {
  if (!v.is_array()) throw DomainError("polynomial must be a constant-first array, got " + v.dump());
  std::vector<T> c;
  for (const auto& x : v) c.push_back(detail::coefficient<T>(x));
  return Polynomial<T>(std::move(c));
}

/// Either one polynomial ([1, 2]) or a sequence ([[1], [1, 2]]).
template <class T>
std::vector<Polynomial<T>> polynomials_from_json(const json& v, bool* was_sequence = nullptr) {
  if (!v.is_array()) throw DomainError("expected a JSON array of coefficients");
  const bool seq = !v.empty() && v.front().is_array();
  if (was_sequence) *was_sequence = seq;
  std::vector<Polynomial<T>> out;
  if (!seq) {
    out.push_back(polynomial_from_json<T>(v));
    return out;
  }
  for (const auto& p : v) out.push_back(polynomial_from_json<T>(p));
  return out;
}

// --- roots ------------------------------------------------------------------

inline json to_json(const ComplexRootSet& rs) {
  json out = json::array();
  for (std::size_t k = 0; k < rs.roots.size(); ++k)
    out.push_back({{"re", number(rs.roots[k].real())},
                   {"im", number(rs.roots[k].imag())},
                   {"residual", number(rs.residuals[k])}});
  return out;
}

inline json to_json(const HyperbolicityVerdict& v, int degree) {
  json out = {{"degree", degree},
              {"status", to_string(v.status)},
              {"max_imag", number(v.max_imag)},
              {"certificate", optional_number(v.certificate)},
              {"precision_bits", v.roots.precision_bits},
              {"roots", to_json(v.roots)}};
  if (!v.detail.empty()) out["detail"] = v.detail;
  return out;
}

// --- theta ------------------------------------------------------------------

inline json to_json(const ThetaRootReport& r) {
  json brackets = json::array();
  for (const auto& b : r.brackets) brackets.push_back({number(b.lo), number(b.hi)});
  json theta = json::array(), z = json::array();
  for (double t : r.theta_roots) theta.push_back(number(t));
  for (double x : r.z_roots) z.push_back(number(x));
  json out = {{"family", to_string(r.family)},
              {"a", number(r.a)},
              {"b", number(r.b)},
              {"n", r.n},
              {"brackets", brackets},
              {"theta_roots", theta},
              {"z_roots", z},
              {"root_count", r.root_count},
              {"perturbations", r.perturbations},
              {"boundary_mode", r.boundary_mode},
              {"oversample", r.oversample},
              {"asymptote", nullptr}};
  if (r.asymptote) out["asymptote"] = {{"theta_a", number(r.asymptote->theta_a)}, {"k0", r.asymptote->k0}};
  return out;
}

// --- witness ----------------------------------------------------------------

inline json to_json(const WitnessReport& r) {
  json zeros = json::array();
  for (const auto& t : r.t_zeros)
    zeros.push_back({{"t", t.finite ? complex(t.t) : json(nullptr)},
                     {"modulus", number(t.modulus)},
                     {"finite", t.finite},
                     {"factor", t.factor}});
  const auto& c = r.checks;
  json out = {{"family", to_string(r.family)},
              {"a", number(r.a)},
              {"b", number(r.b)},
              {"c", number(r.c)},
              {"case_tag", r.case_tag},
              {"theta_star", optional_number(r.theta_star)},
              {"y_star", optional_number(r.y_star)},
              {"tau_star", r.tau_star ? complex(*r.tau_star) : json(nullptr)},
              {"z_star", complex(r.z_star)},
              {"t_zeros", zeros},
              {"checks",
               {{"z_star_nonreal", c.z_star_nonreal},
                {"moduli_ordering_ok", c.moduli_ordering_ok},
                {"zeros_distinct", c.zeros_distinct},
                {"residuals_ok", c.residuals_ok},
                {"moduli_gap", number(c.moduli_gap)},
                {"ordering_margin", number(c.ordering_margin)},
                {"min_separation", number(c.min_separation)},
                {"max_residual", number(c.max_residual)}}},
              {"certified", r.certified()},
              {"fully_certified", r.fully_certified()},
              {"empirical", nullptr},
              {"notes", r.notes},
              {"trace", r.trace}};
  if (r.empirical) {
    const auto& e = *r.empirical;
    out["empirical"] = {{"n_max", e.n_max},
                        {"n_found", e.n_found},
                        {"dist_at_20", optional_number(e.dist_at_20)},
                        {"dist_to_zstar", number(e.dist_to_zstar)},
                        {"distance_shrank", e.distance_shrank}};
  }
  return out;
}

// --- scan -------------------------------------------------------------------

inline json to_json(const ScanCell& c) {
  json out = {{"a", number(c.a)},
              {"b", number(c.b)},
              {"n_max", c.n_max},
              {"verdict", to_string(c.verdict)},
              {"first_nonreal_n", optional_number(c.first_nonreal_n)},
              {"max_imag", number(c.max_imag)},
              {"interval_lo", number(c.interval_lo)},
              {"interval_hi", number(c.interval_hi)},
              {"interval_ok", c.interval_ok},
              {"theory_label", c.theory_label()},
              {"boundary_dist", number(c.boundary_dist)},
              {"suspect", c.suspect}};
  if (!c.detail.empty()) out["detail"] = c.detail;
  return out;
}

inline json to_json(const std::vector<ScanCell>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(to_json(c));
  return out;
}

inline json to_json(const ScanSummary& s) {
  return {{"inside_checked", s.inside_checked},
          {"outside_checked", s.outside_checked},
          {"excluded", s.excluded},
          {"misclassified", s.misclassified},
          {"inside_violations", s.inside_violations},
          {"outside_unresolved", s.outside_unresolved},
          {"interval_failures", s.interval_failures},
          {"suspect", s.suspect},
          {"misclassified_cells", s.misclassified_cells}};
}

inline json to_json(const DensityTrend& t) {
  json pts = json::array();
  for (const auto& p : t.points) pts.push_back({{"n", p.n}, {"max_gap", number(p.max_gap)}});
  return {{"points", pts}, {"decreasing", t.decreasing}, {"decreasing_with_slack", t.decreasing_with_slack}};
}

}  // namespace rz::io
