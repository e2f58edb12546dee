#ifndef THETA_FORGE_CLI_JOBSPEC_HPP
#define THETA_FORGE_CLI_JOBSPEC_HPP

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "theta_forge/family.hpp"
#include "theta_forge/parser.hpp"

namespace theta_forge::cli {

using nlohmann::json;

/// A named entry of the "matrices" object: either a matrix factorization
/// (a bare grid, completed by f·adj(A)/det(A), or an explicit {"A","B"}),
/// or a module given by relations over R.
struct NamedInput {
  std::string name;
  std::optional<PolyMatrix> A;
  std::optional<PolyMatrix> B;
  std::optional<PolyMatrix> relations;
  std::vector<int> shifts;
  std::optional<unsigned> steps;

  bool is_module() const { return relations.has_value(); }
};

struct JobSpec {
  std::string path;
  std::string source;
  RingPtr ring;
  std::optional<Polynomial> f;
  std::vector<NamedInput> inputs;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t window = 6;
  std::vector<Fiber> fibers;
  std::vector<std::pair<std::string, std::string>> residues;
  std::optional<std::string> lift;
  bool self_pair = true;
  bool strict = false;

  const NamedInput& find(const std::string& name) const {
    for (const auto& in : inputs)
      if (in.name == name) return in;
    throw Error(ErrorCode::SPEC_MALFORMED, "unknown matrix '" + name + "'", locate("\"" + name + "\""));
  }

  /// Line and column of the first occurrence of `needle` in the source text.
  std::optional<SourcePosition> locate(const std::string& needle, std::size_t inner = 0) const {
    auto at = source.find(needle);
    if (at == std::string::npos) return std::nullopt;
    return position_of(source, at + inner);
  }

  static SourcePosition position_of(const std::string& text, std::size_t offset) {
    SourcePosition pos;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
    return pos;
  }
};

namespace detail {

inline Error malformed(const JobSpec& job, const std::string& what, const std::string& key) {
  return Error(ErrorCode::SPEC_MALFORMED, what, job.locate("\"" + key + "\""));
}

/// Parses a polynomial string, mapping parser positions into the file.
inline Polynomial poly_at(const JobSpec& job, const std::string& text, const RingPtr& ring) {
  try {
    return parse_poly(text, ring);
  } catch (const Error& e) {
    std::size_t col = e.position() ? static_cast<std::size_t>(e.position()->column) : 1;
    auto pos = job.locate(json(text).dump(), col);
    throw Error(e.code(), "in \"" + text + "\": " + e.detail(), pos ? pos : e.position());
  }
}

inline PolyMatrix grid_at(const JobSpec& job, const json& grid, const RingPtr& ring, const std::string& name) {
  if (!grid.is_array() || grid.empty())
    throw malformed(job, "matrix '" + name + "' must be a nonempty list of rows", name);
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& row : grid) {
    if (!row.is_array()) throw malformed(job, "matrix '" + name + "' has a row that is not a list", name);
    rows.emplace_back();
    for (const auto& e : row) {
      if (e.is_number_integer()) rows.back().push_back(poly_at(job, std::to_string(e.get<long long>()), ring));
      else if (e.is_string()) rows.back().push_back(poly_at(job, e.get<std::string>(), ring));
      else throw malformed(job, "matrix '" + name + "' entries must be strings", name);
    }
    if (rows.back().size() != rows.front().size())
      throw Error(ErrorCode::SHAPE_MISMATCH, "matrix '" + name + "' has ragged rows", job.locate("\"" + name + "\""));
  }
  return PolyMatrix::from_rows(ring, rows);
}

inline CoeffDomain field_of(const JobSpec& job, const json& field) {
  if (field.is_string()) {
    auto s = field.get<std::string>();
    if (s == "QQ") return CoeffDomain::rationals();
    if (s == "ZZ") return CoeffDomain::integers();
    if (s.rfind("GF(", 0) == 0 && s.back() == ')') return CoeffDomain::prime_field(std::stoul(s.substr(3, s.size() - 4)));
  }
  if (field.is_object() && field.contains("GF") && field["GF"].is_number_unsigned()) {
    auto p = field["GF"].get<std::uint64_t>();
    if (p < 2 || p > 4294967291ull) throw malformed(job, "GF modulus out of range", "GF");
    try {
      return CoeffDomain::prime_field(static_cast<std::uint32_t>(p));
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), job.locate("\"GF\""));
    }
  }
  throw malformed(job, "field must be \"QQ\", \"ZZ\" or {\"GF\": p}", "field");
}

inline std::vector<std::pair<std::string, std::string>> string_pairs(const JobSpec& job, const json& arr,
                                                                     const std::string& key) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!arr.is_array()) throw malformed(job, "\"" + key + "\" must be a list of pairs", key);
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw malformed(job, "\"" + key + "\" entries must be two-element string lists", key);
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Builds a JobSpec from JSON text; `path` is used for diagnostics only.
inline JobSpec parse_jobspec(const std::string& text, const std::string& path = "<input>") {
  JobSpec job;
  job.path = path;
  job.source = text;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SYNTAX_ERROR, std::string("invalid JSON: ") + e.what(),
                JobSpec::position_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw Error(ErrorCode::SPEC_MALFORMED, "top level must be an object", SourcePosition{});
  if (!doc.contains("field")) throw Error(ErrorCode::SPEC_MALFORMED, "missing \"field\"", SourcePosition{});
  if (!doc.contains("vars") || !doc["vars"].is_array())
    throw Error(ErrorCode::SPEC_MALFORMED, "missing \"vars\" list", SourcePosition{});
  CoeffDomain K = detail::field_of(job, doc["field"]);
  std::vector<std::string> vars;
  for (const auto& v : doc["vars"]) {
    if (!v.is_string()) throw detail::malformed(job, "variable names must be strings", "vars");
    vars.push_back(v.get<std::string>());
  }
  std::vector<int> weights;
  if (doc.contains("weights")) {
    if (!doc["weights"].is_array()) throw detail::malformed(job, "\"weights\" must be a list", "weights");
    for (const auto& w : doc["weights"]) {
      if (!w.is_number_integer()) throw detail::malformed(job, "weights must be integers", "weights");
      weights.push_back(w.get<int>());
    }
  }
  try {
    job.ring = make_ring(K, vars, weights);
  } catch (const Error& e) {
    throw Error(e.code(), e.detail(), job.locate("\"vars\""));
  }
  if (doc.contains("f")) {
    if (!doc["f"].is_string()) throw detail::malformed(job, "\"f\" must be a string", "f");
    job.f = detail::poly_at(job, doc["f"].get<std::string>(), job.ring);
  }
  if (doc.contains("matrices")) {
    const auto& mats = doc["matrices"];
    if (!mats.is_object()) throw detail::malformed(job, "\"matrices\" must be an object", "matrices");
    for (const auto& [name, val] : mats.items()) {
      NamedInput in;
      in.name = name;
      if (val.is_array()) {
        in.A = detail::grid_at(job, val, job.ring, name);
      } else if (val.is_object() && val.contains("A")) {
        in.A = detail::grid_at(job, val["A"], job.ring, name);
        if (val.contains("B")) in.B = detail::grid_at(job, val["B"], job.ring, name);
      } else if (val.is_object() && val.contains("relations")) {
        in.relations = detail::grid_at(job, val["relations"], job.ring, name);
        if (val.contains("shifts")) in.shifts = val["shifts"].get<std::vector<int>>();
        if (val.contains("steps")) in.steps = val["steps"].get<unsigned>();
      } else {
        throw detail::malformed(job, "matrix '" + name + "' must be a grid, {\"A\",\"B\"} or {\"relations\"}", name);
      }
      job.inputs.push_back(std::move(in));
    }
  }
  if (doc.contains("pairs")) job.pairs = detail::string_pairs(job, doc["pairs"], "pairs");
  if (doc.contains("residue")) job.residues = detail::string_pairs(job, doc["residue"], "residue");
  if (doc.contains("window")) {
    if (!doc["window"].is_number_unsigned()) throw detail::malformed(job, "\"window\" must be a natural number", "window");
    job.window = doc["window"].get<std::size_t>();
  }
  if (doc.contains("fibers")) {
    if (!doc["fibers"].is_array()) throw detail::malformed(job, "\"fibers\" must be a list", "fibers");
    for (const auto& fb : doc["fibers"]) {
      std::string s = fb.is_string() ? fb.get<std::string>() : fb.dump();
      try {
        job.fibers.push_back(Fiber::parse(s));
      } catch (const Error& e) {
        throw Error(e.code(), e.detail(), job.locate("\"fibers\""));
      }
    }
  }
  if (doc.contains("lift")) {
    if (!doc["lift"].is_string()) throw detail::malformed(job, "\"lift\" must name a matrix", "lift");
    job.lift = doc["lift"].get<std::string>();
  }
  if (doc.contains("self_pair")) job.self_pair = doc["self_pair"].get<bool>();
  if (doc.contains("strict")) job.strict = doc["strict"].get<bool>();
  for (const auto& [a, b] : job.pairs) {
    job.find(a);
    job.find(b);
  }
  return job;
}

inline JobSpec load_jobspec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SPEC_MALFORMED, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_jobspec(ss.str(), path);
}

}  // namespace theta_forge::cli

#endif  // THETA_FORGE_CLI_JOBSPEC_HPP
