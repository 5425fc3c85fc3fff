#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srlproj/core/distribution.hpp"

namespace srlproj {

/// Rounds to 12 significant digits, the precision of all reported numbers.
inline double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format_sig12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// JSON number at 12 significant digits; infinities become strings.
inline nlohmann::json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round_sig12(x);
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string strip_comment(const std::string& line) {
  const auto pos = line.find("//");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

struct ParsedAtom {
  std::string name;
  std::vector<int> args;
};

// `rel(a,b)` or `rel`; no trailing period.
inline ParsedAtom parse_ground_atom(const std::string& text, int line) {
  const auto fail = [&](const std::string& why) { throw SyntaxError(why + " in '" + text + "'", {line, 1}); };
  ParsedAtom atom;
  const auto open = text.find('(');
  atom.name = trim(text.substr(0, open));
  if (atom.name.empty()) fail("missing relation name");
  for (char c : atom.name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') fail("bad relation name");
  }
  if (open == std::string::npos) return atom;
  const auto close = text.find(')', open);
  if (close == std::string::npos || trim(text.substr(close + 1)).size() != 0) fail("unbalanced parentheses");
  const auto inner = trim(text.substr(open + 1, close - open - 1));
  if (inner.empty()) return atom;
  std::stringstream ss(inner);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    piece = trim(piece);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos) {
      fail("arguments must be non-negative integers");
    }
    atom.args.push_back(std::stoi(piece));
  }
  return atom;
}

}  // namespace detail

/// Reads the world text format:
///
///     domain 3
///     signature red/1 edge/2     (optional)
///     red(0).
///     edge(0,2).
///
/// Atoms not listed are false. Without a known signature (argument or
/// `signature` line), relations are collected from the listed atoms in
/// order of first appearance.
inline World parse_world(const std::string& text, std::optional<Signature> known = std::nullopt) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::optional<int> n;
  std::vector<std::pair<detail::ParsedAtom, int>> atoms;
  std::optional<Signature> declared;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (!n) {
      std::istringstream head(line);
      std::string keyword;
      int value = 0;
      if (!(head >> keyword >> value) || keyword != "domain" || value < 1) {
        throw SyntaxError("expected 'domain <n>' with n >= 1", {line_no, 1});
      }
      std::string rest;
      if (head >> rest) throw SyntaxError("trailing text after domain size", {line_no, 1});
      n = value;
      continue;
    }
    if (line.rfind("signature", 0) == 0 && !declared && atoms.empty()) {
      std::istringstream sig(line.substr(9));
      std::vector<Relation> rels;
      std::string item;
      while (sig >> item) {
        const auto slash = item.find('/');
        if (slash == std::string::npos) throw SyntaxError("expected name/arity in signature line", {line_no, 1});
        try {
          rels.push_back({item.substr(0, slash), std::stoi(item.substr(slash + 1))});
        } catch (const std::logic_error&) {
          throw SyntaxError("bad arity in signature line", {line_no, 1});
        }
      }
      declared = Signature(std::move(rels));
      continue;
    }
    if (line.back() != '.') throw SyntaxError("atom must end with '.'", {line_no, static_cast<int>(line.size())});
    atoms.emplace_back(detail::parse_ground_atom(line.substr(0, line.size() - 1), line_no), line_no);
  }
  if (!n) throw SyntaxError("missing 'domain <n>' line", {line_no, 1});

  Signature signature;
  if (known) {
    signature = *known;
  } else if (declared) {
    signature = *declared;
  } else {
    std::vector<Relation> rels;
    for (const auto& [atom, line] : atoms) {
      bool seen = false;
      for (const auto& r : rels) {
        if (r.name == atom.name) {
          if (r.arity != static_cast<int>(atom.args.size())) throw ArityError("inconsistent arity for '" + atom.name + "'", {line, 1});
          seen = true;
        }
      }
      if (!seen) rels.push_back({atom.name, static_cast<int>(atom.args.size())});
    }
    signature = Signature(std::move(rels));
  }

  World world(signature, *n);
  for (const auto& [atom, line] : atoms) {
    const auto rel = signature.find(atom.name);
    if (!rel) throw SyntaxError("unknown relation '" + atom.name + "'", {line, 1});
    if (signature[*rel].arity != static_cast<int>(atom.args.size())) {
      throw ArityError("'" + atom.name + "' expects " + std::to_string(signature[*rel].arity) + " arguments", {line, 1});
    }
    for (int a : atom.args) {
      if (a >= *n) throw SyntaxError("element " + std::to_string(a) + " outside domain", {line, 1});
    }
    world = world.with(GroundAtom{*rel, atom.args}, true);
  }
  return world;
}

/// Inverse of parse_world. The signature line is written only on request.
inline std::string format_world(const World& world, bool with_signature = false) {
  std::string out = "domain " + std::to_string(world.domain_size()) + "\n";
  if (with_signature) {
    out += "signature";
    for (const auto& r : world.signature()) out += " " + r.name + "/" + std::to_string(r.arity);
    out += "\n";
  }
  for (const auto& atom : world.true_atoms()) out += world.signature().atom_to_string(atom) + ".\n";
  return out;
}

/// `[{"world": <encoding>, "p": <prob>}, ...]` in ascending encoding order.
inline nlohmann::json distribution_to_json(const Distribution& dist, bool nonzero_only = false) {
  auto out = nlohmann::json::array();
  for (std::size_t e = 0; e < dist.size(); ++e) {
    if (nonzero_only && dist[e] == 0.0) continue;
    out.push_back({{"world", e}, {"p", json_number(dist[e])}});
  }
  return out;
}

}  // namespace srlproj
