#pragma once

#include <string>
#include <vector>

#include "srlproj/core/distribution.hpp"
#include "srlproj/core/io.hpp"

namespace srlproj {

struct QueryLiteral {
  GroundAtom atom;
  bool positive = true;
};

/// P(target | evidence) for ground literals.
struct Query {
  QueryLiteral target;
  std::vector<QueryLiteral> evidence;
};

namespace detail {

// Splits at commas outside parentheses.
inline std::vector<std::string> split_literals(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!trim(current).empty() || !out.empty()) out.push_back(trim(current));
  return out;
}

}  // namespace detail

/// `rel(0,1)` or `!rel(0,1)`.
inline QueryLiteral parse_literal(const Signature& signature, std::string text) {
  text = detail::trim(text);
  QueryLiteral lit;
  if (!text.empty() && text.front() == '!') {
    lit.positive = false;
    text = detail::trim(text.substr(1));
  }
  if (text.empty()) throw QueryError("empty literal");
  detail::ParsedAtom parsed;
  try {
    parsed = detail::parse_ground_atom(text, 1);
  } catch (const SyntaxError& e) {
    throw QueryError(std::string("malformed literal: ") + e.what());
  }
  const auto rel = signature.find(parsed.name);
  if (!rel) throw QueryError("unknown relation '" + parsed.name + "'");
  if (signature[*rel].arity != static_cast<int>(parsed.args.size())) {
    throw QueryError("'" + parsed.name + "' expects " + std::to_string(signature[*rel].arity) + " arguments");
  }
  lit.atom = {*rel, parsed.args};
  return lit;
}

/// Evidence is a comma-separated literal list (may be empty).
inline Query parse_query(const Signature& signature, const std::string& target, const std::string& evidence = "") {
  Query q{parse_literal(signature, target), {}};
  for (const auto& piece : detail::split_literals(evidence)) {
    if (piece.empty()) throw QueryError("empty evidence literal");
    q.evidence.push_back(parse_literal(signature, piece));
  }
  return q;
}

inline std::string to_string(const Signature& signature, const QueryLiteral& lit) {
  return (lit.positive ? "" : "!") + signature.atom_to_string(lit.atom);
}

/// Σ P(target ∧ evidence) / Σ P(evidence), summed in ascending encoding order.
inline double query(const Distribution& dist, const Query& q) {
  const auto& sig = dist.signature();
  const int n = dist.domain_size();
  Encoding mask = 0;
  Encoding value = 0;
  for (const auto& lit : q.evidence) {
    try {
      sig.check_atom(lit.atom, n);
    } catch (const Error& e) {
      throw QueryError(e.what());
    }
    const Encoding bit = Encoding{1} << sig.atom_index(lit.atom, n);
    if ((mask & bit) && ((value & bit) != 0) != lit.positive) throw ZeroEvidence();
    mask |= bit;
    if (lit.positive) value |= bit;
  }
  try {
    sig.check_atom(q.target.atom, n);
  } catch (const Error& e) {
    throw QueryError(e.what());
  }
  const Encoding target = Encoding{1} << sig.atom_index(q.target.atom, n);
  if ((mask & target) && ((value & target) != 0) != q.target.positive) {
    throw QueryError("target " + to_string(sig, q.target) + " is contradicted by the evidence");
  }
  double evidence_mass = 0.0;
  double joint = 0.0;
  for (std::size_t e = 0; e < dist.size(); ++e) {
    if ((e & mask) != value) continue;
    evidence_mass += dist[e];
    if (((e & target) != 0) == q.target.positive) joint += dist[e];
  }
  if (evidence_mass <= 0.0) throw ZeroEvidence();
  return joint / evidence_mass;
}

}  // namespace srlproj
