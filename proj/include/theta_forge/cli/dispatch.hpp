#ifndef THETA_FORGE_CLI_DISPATCH_HPP
#define THETA_FORGE_CLI_DISPATCH_HPP

#include <optional>
#include <string>
#include <vector>

#include "theta_forge/cli/jobspec.hpp"

namespace theta_forge::cli {

using ojson = nlohmann::ordered_json;

struct Options {
  std::optional<std::size_t> window;
  std::optional<std::vector<Fiber>> fibers;
  bool strict = false;
};

struct Outcome {
  int exit_code = 0;
  ojson report;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"theta",    "herbrand", "tor",          "ext",          "rigidity",
                                              "milnor",   "residue",  "family-check", "theta-family", "lift"};
  return names;
}

inline int exit_code_for(ErrorCode c) {
  switch (classify(c)) {
    case ErrorClass::Input: return 2;
    case ErrorClass::Hypothesis: return 3;
    case ErrorClass::Contradiction: return 4;
  }
  return 2;
}

inline ojson error_report(const Error& e, const std::string& path) {
  ojson r;
  r["error"] = to_string(e.code());
  r["message"] = e.detail();
  r["file"] = path;
  if (e.position()) {
    r["line"] = e.position()->line;
    r["column"] = e.position()->column;
  }
  return r;
}

namespace detail {

inline std::string str(const Scalar& s) { return s.get_str(); }

inline ojson grid(const PolyMatrix& m) {
  ojson g = ojson::array();
  for (const auto& row : m.to_strings()) g.push_back(row);
  return g;
}

inline ojson kdim(const KDim& k) { return k.infinite ? ojson("INFINITE") : ojson(k.value); }

/// The ring the plain commands work over: integral specs are read over QQ.
struct Context {
  const JobSpec& job;
  RingPtr ring;
  std::optional<Polynomial> f;

  explicit Context(const JobSpec& j) : job(j), ring(j.ring) {
    if (ring->coeffs().kind() == CoeffDomain::Kind::Integers)
      ring = std::make_shared<const PolyRing>(ring->with_coeffs(CoeffDomain::rationals()));
    if (j.f) f = j.f->specialize_into(ring);
  }

  const Polynomial& need_f() const {
    if (!f) throw Error(ErrorCode::SPEC_MALFORMED, "this command needs \"f\"", SourcePosition{});
    return *f;
  }

  MatrixFactorization mf(const NamedInput& in) const {
    if (in.is_module())
      throw Error(ErrorCode::SPEC_MALFORMED, "'" + in.name + "' is a module, a matrix factorization is needed here",
                  job.locate("\"" + in.name + "\""));
    return complete(in, ring, need_f());
  }

  PresentedModule module(const NamedInput& in) const {
    if (!in.is_module()) return cokernel(mf(in));
    PolyMatrix rel = in.relations->specialize_into(ring);
    std::vector<int> shifts = in.shifts.empty() ? std::vector<int>(rel.rows(), 0) : in.shifts;
    if (shifts.size() != rel.rows())
      throw Error(ErrorCode::SHAPE_MISMATCH, "'" + in.name + "' has " + std::to_string(rel.rows()) + " rows but " +
                                                 std::to_string(shifts.size()) + " shifts",
                  job.locate("\"" + in.name + "\""));
    return {FreeModule{ring, shifts}, rel, need_f()};
  }

  /// A with B given, or B = f·adj(A)/det(A).
  static MatrixFactorization complete(const NamedInput& in, const RingPtr& ring, const Polynomial& f) {
    PolyMatrix A = in.A->specialize_into(ring);
    if (in.B) return validate_mf(A, in.B->specialize_into(ring), f);
    if (!A.is_square()) throw Error(ErrorCode::NOT_SQUARE, "'" + in.name + "' is " + A.shape());
    auto [adj, det] = adjugate_det(A);
    if (det.is_zero()) throw Error(ErrorCode::SINGULAR_MATRIX, "'" + in.name + "' has determinant 0");
    PolyMatrix B(ring, A.rows(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) {
        auto q = Polynomial::divide_exact(f * adj(i, j), det);
        if (!q)
          throw Error(ErrorCode::MF_IDENTITY_FAILED,
                      "'" + in.name + "': f*adj(A)/det(A) is not polynomial (det = " + det.to_string() + ")");
        B(i, j) = std::move(*q);
      }
    return validate_mf(A, B, f);
  }
};

inline std::vector<std::pair<std::string, std::string>> pairs_of(const JobSpec& job) {
  if (!job.pairs.empty()) return job.pairs;
  if (job.inputs.size() == 1) return {{job.inputs[0].name, job.inputs[0].name}};
  throw Error(ErrorCode::SPEC_MALFORMED, "\"pairs\" is required when more than one matrix is given", SourcePosition{});
}

struct PairHomology {
  TorProfile profile;
  int parity = 0;
};

/// Tor or Ext of a pair. A module in the first slot is replaced by a high
/// syzygy; for Tor a factorization in the second slot is used instead.
inline PairHomology pair_homology(const Context& ctx, const std::string& a, const std::string& b, bool ext,
                                  std::size_t window) {
  const auto& ia = ctx.job.find(a);
  const auto& ib = ctx.job.find(b);
  if (!ia.is_module()) {
    auto mf = ctx.mf(ia);
    return {ext ? ext_dims(mf, ctx.module(ib), window) : tor_dims(mf, ctx.module(ib), window), 0};
  }
  if (!ext && !ib.is_module()) return {tor_dims(ctx.mf(ib), ctx.module(ia), window), 0};
  unsigned steps = ia.steps.value_or(static_cast<unsigned>(ctx.ring->nvars() + 1));
  auto st = stabilize(ctx.module(ia), steps);
  return {ext ? ext_dims(st.mf, ctx.module(ib), window) : tor_dims(st.mf, ctx.module(ib), window), st.parity};
}

inline ojson pair_entry(const std::string& a, const std::string& b) { return ojson::array({a, b}); }

inline ojson header(const std::string& command, const Context& ctx) {
  ojson r;
  r["command"] = command;
  r["ring"] = ctx.ring->description();
  if (ctx.f) r["f"] = ctx.f->to_string();
  return r;
}

inline Outcome pairing(const std::string& command, const Context& ctx, std::size_t window) {
  const bool ext = command == "herbrand" || command == "ext";
  const bool dims_only = command == "tor" || command == "ext";
  ojson report = header(command, ctx);
  report["window"] = window;
  ojson results = ojson::array();
  for (const auto& [a, b] : pairs_of(ctx.job)) {
    auto ph = pair_homology(ctx, a, b, ext, window);
    ojson e;
    e["pair"] = pair_entry(a, b);
    if (dims_only) {
      e["dims"] = ph.profile.dims;
      e["periodic"] = ph.profile.periodic();
    } else {
      auto t = make_report(ph.profile);
      std::int64_t even = static_cast<std::int64_t>(ph.parity ? t.odd_dim : t.even_dim);
      std::int64_t odd = static_cast<std::int64_t>(ph.parity ? t.even_dim : t.odd_dim);
      e[command == "theta" ? "theta" : "h"] = even - odd;
      e["even"] = even;
      e["odd"] = odd;
      e["dims"] = ph.profile.dims;
    }
    e["parity"] = ph.parity;
    results.push_back(std::move(e));
  }
  report["results"] = std::move(results);
  return {0, std::move(report)};
}

inline Outcome rigidity(const Context& ctx, std::size_t window) {
  if (window < 4) throw Error(ErrorCode::SPEC_MALFORMED, "rigidity needs a window of at least 4", SourcePosition{});
  ojson report = header("rigidity", ctx);
  report["window"] = window;
  ojson results = ojson::array();
  bool violated = false;
  for (const auto& [a, b] : pairs_of(ctx.job)) {
    auto ph = pair_homology(ctx, a, b, false, window);
    auto r = rigidity_of(make_report(ph.profile));
    ojson e;
    e["pair"] = pair_entry(a, b);
    e["theta"] = ph.parity ? -r.theta.value : r.theta.value;
    e["dims"] = ph.profile.dims;
    e["status"] = to_string(r.status);
    e["first_vanishing"] = r.first_vanishing ? ojson(*r.first_vanishing) : ojson(nullptr);
    violated = violated || r.status == RigidityStatus::Violation;
    results.push_back(std::move(e));
  }
  report["results"] = std::move(results);
  if (violated) {
    report["error"] = "VIOLATION";
    return {4, std::move(report)};
  }
  return {0, std::move(report)};
}

inline ojson milnor_fields(const MilnorAlgebra& alg) {
  ojson r;
  r["mu"] = alg.mu;
  ojson basis = ojson::array();
  for (const auto& m : alg.basis) basis.push_back(alg.f.ring().monomial_string(m));
  r["basis"] = std::move(basis);
  r["socle_degree"] = alg.socle_degree;
  r["socle"] = alg.socle_generator.to_string();
  r["residue_of_socle"] = str(alg.residue_of_socle);
  r["hessian"] = alg.hessian.to_string();
  return r;
}

inline Outcome milnor(const Context& ctx) {
  ojson report = header("milnor", ctx);
  auto alg = milnor_mu(ctx.need_f());
  report.update(milnor_fields(alg));
  report["tjurina"] = kdim(tjurina_check(ctx.need_f()));
  return {0, std::move(report)};
}

inline Outcome residue(const Context& ctx) {
  ojson report = header("residue", ctx);
  auto alg = milnor_mu(ctx.need_f());
  report["mu"] = alg.mu;
  report["socle"] = alg.socle_generator.to_string();
  ojson results = ojson::array();
  if (ctx.job.residues.empty())
    throw Error(ErrorCode::SPEC_MALFORMED, "\"residue\" must list pairs of polynomials", SourcePosition{});
  for (const auto& [g, h] : ctx.job.residues) {
    ojson e;
    e["g"] = g;
    e["h"] = h;
    e["value"] = str(residue_pair(detail::poly_at(ctx.job, g, ctx.ring), detail::poly_at(ctx.job, h, ctx.ring), alg));
    results.push_back(std::move(e));
  }
  report["results"] = std::move(results);
  return {0, std::move(report)};
}

inline FamilySpec family_of(const JobSpec& job, const Options& opt) {
  if (job.ring->coeffs().kind() != CoeffDomain::Kind::Integers)
    throw Error(ErrorCode::SPEC_MALFORMED, "family commands need \"field\": \"ZZ\"", job.locate("\"field\""));
  if (!job.f) throw Error(ErrorCode::SPEC_MALFORMED, "family commands need \"f\"", SourcePosition{});
  FamilySpec spec{*job.f, {}, opt.fibers ? *opt.fibers : job.fibers};
  if (spec.fibers.empty())
    for (std::uint32_t p : {0u, 2u, 3u, 5u, 7u, 11u, 13u}) spec.fibers.push_back(p ? Fiber::prime(p) : Fiber::rationals());
  for (const auto& in : job.inputs) {
    if (in.is_module())
      throw Error(ErrorCode::SPEC_MALFORMED, "'" + in.name + "': family members must be matrix factorizations",
                  job.locate("\"" + in.name + "\""));
    auto mf = Context::complete(in, job.ring, *job.f);
    spec.mfs.push_back({in.name, mf.A, mf.B});
  }
  return spec;
}

inline ojson fiber_entry(const FiberReport& fb) {
  ojson e;
  e["fiber"] = fb.fiber.name();
  e["valid"] = fb.valid;
  e["tjurina"] = fb.skipped && !fb.tjurina.infinite && fb.tjurina.value == 0 ? ojson(nullptr) : kdim(fb.tjurina);
  if (fb.skipped) e["skipped"] = *fb.skipped;
  return e;
}

inline Outcome strict_failure(ojson report, const std::vector<FiberReport>& fibers, bool strict) {
  if (!strict) return {0, std::move(report)};
  for (const auto& fb : fibers)
    if (!fb.valid) {
      report["error"] = "INVALID_FIBER";
      report["message"] = fb.fiber.name() + ": " + fb.skipped.value_or("invalid");
      return {3, std::move(report)};
    }
  return {0, std::move(report)};
}

inline Outcome family_check(const JobSpec& job, const Options& opt) {
  auto spec = family_of(job, opt);
  ojson report;
  report["command"] = "family-check";
  report["ring"] = job.ring->description();
  report["f"] = spec.f.to_string();
  auto fibers = validate_family(spec);
  ojson arr = ojson::array();
  for (const auto& fb : fibers) arr.push_back(fiber_entry(fb));
  report["fibers"] = std::move(arr);
  return strict_failure(std::move(report), fibers, opt.strict || job.strict);
}

inline Outcome theta_family(const JobSpec& job, const Options& opt, std::size_t window) {
  auto spec = family_of(job, opt);
  ojson report;
  report["command"] = "theta-family";
  report["ring"] = job.ring->description();
  report["f"] = spec.f.to_string();
  report["window"] = window;
  ojson results = ojson::array();
  bool nonconstant = false;
  std::vector<FiberReport> all;
  for (const auto& pair : pairs_of(job)) {
    auto c = theta_constancy(spec, pair, window);
    ojson e;
    e["pair"] = pair_entry(pair.first, pair.second);
    e["status"] = to_string(c.status);
    e["theta"] = c.value ? ojson(*c.value) : ojson(nullptr);
    ojson fibers = ojson::array();
    for (const auto& fb : c.fibers) {
      ojson fe = fiber_entry(fb);
      if (fb.valid) {
        fe["theta"] = fb.thetas.front().report.value;
        fe["dims"] = fb.thetas.front().report.profile.dims;
      }
      fibers.push_back(std::move(fe));
      all.push_back(fb);
    }
    e["fibers"] = std::move(fibers);
    nonconstant = nonconstant || c.status == Constancy::Nonconstant;
    results.push_back(std::move(e));
  }
  report["results"] = std::move(results);
  if (nonconstant) {
    report["error"] = "NONCONSTANT";
    return {4, std::move(report)};
  }
  return strict_failure(std::move(report), all, opt.strict || job.strict);
}

inline Outcome lift(const JobSpec& job, const Options& opt, std::size_t window) {
  if (job.ring->coeffs().kind() != CoeffDomain::Kind::PrimeField)
    throw Error(ErrorCode::SPEC_MALFORMED, "lift needs a matrix over {\"GF\": p}", job.locate("\"field\""));
  std::string name = job.lift ? *job.lift : (job.inputs.size() == 1 ? job.inputs[0].name : "");
  if (name.empty()) throw Error(ErrorCode::SPEC_MALFORMED, "\"lift\" must name the matrix to lift", SourcePosition{});
  const auto& in = job.find(name);
  if (!in.A) throw Error(ErrorCode::SPEC_MALFORMED, "'" + name + "' must be a matrix", job.locate("\"" + name + "\""));
  auto r = lift_and_compare(*in.A, job.self_pair, window);
  ojson report;
  report["command"] = "lift";
  report["ring"] = job.ring->description();
  report["matrix"] = name;
  report["f"] = r.lift.f.to_string();
  report["A"] = grid(r.lift.A);
  report["B"] = grid(r.lift.B);
  report["n"] = r.n;
  report["sign_rule"] = r.sign_rule;
  report["theta"] = r.theta ? ojson(*r.theta) : ojson(nullptr);
  report["equal_across_fibers"] = r.equal_across_fibers;
  report["sign_ok"] = r.sign_ok;
  ojson fibers = ojson::array();
  for (const auto& fb : r.constancy.fibers) {
    ojson fe = fiber_entry(fb);
    if (fb.valid) fe["theta"] = fb.thetas.front().report.value;
    fibers.push_back(std::move(fe));
  }
  report["fibers"] = std::move(fibers);
  if (!r.equal_across_fibers) {
    report["error"] = "NONCONSTANT";
    return {4, std::move(report)};
  }
  return strict_failure(std::move(report), r.constancy.fibers, opt.strict || job.strict);
}

}  // namespace detail

/// Runs one command on a parsed job.
inline Outcome run(const std::string& command, const JobSpec& job, const Options& opt = {}) {
  const std::size_t window = opt.window.value_or(job.window);
  if (window < 2) throw Error(ErrorCode::SPEC_MALFORMED, "window must be at least 2", job.locate("\"window\""));
  if (command == "family-check") return detail::family_check(job, opt);
  if (command == "theta-family") return detail::theta_family(job, opt, window);
  if (command == "lift") return detail::lift(job, opt, window);
  detail::Context ctx(job);
  if (command == "theta" || command == "herbrand" || command == "tor" || command == "ext")
    return detail::pairing(command, ctx, window);
  if (command == "rigidity") return detail::rigidity(ctx, window);
  if (command == "milnor") return detail::milnor(ctx);
  if (command == "residue") return detail::residue(ctx);
  throw Error(ErrorCode::SPEC_MALFORMED, "unknown command '" + command + "'");
}

/// Loads the spec file and runs the command; every failure becomes a report.
inline Outcome run_file(const std::string& command, const std::string& path, const Options& opt = {}) {
  try {
    return run(command, load_jobspec(path), opt);
  } catch (const Error& e) {
    return {exit_code_for(e.code()), error_report(e, path)};
  } catch (const nlohmann::json::exception& e) {
    return {2, error_report(Error(ErrorCode::SPEC_MALFORMED, e.what()), path)};
  }
}

/// "Q,3,7" -> fibers.
inline std::vector<Fiber> parse_fiber_list(const std::string& text) {
  std::vector<Fiber> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(Fiber::parse(item));
  if (out.empty()) throw Error(ErrorCode::SPEC_MALFORMED, "empty fiber list");
  return out;
}

}  // namespace theta_forge::cli

#endif  // THETA_FORGE_CLI_DISPATCH_HPP
