#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ncf/cli.hpp"
#include "ncf/dsl.hpp"
#include "ncf/etale.hpp"
#include "ncf/fmkernel.hpp"
#include "ncf/microloc.hpp"
#include "ncf/ncalg.hpp"

namespace ncf::cli {

void Report::check(const std::string& name, bool pass, const std::optional<std::string>& witness) {
  Json c = {{"name", name}, {"status", pass ? "pass" : "fail"}};
  if (witness && !pass) c["witness"] = *witness;
  checks.push_back(std::move(c));
}

bool Report::ok() const {
  for (const auto& c : checks) {
    if (c["status"] != "pass") return false;
  }
  return true;
}

Json Report::to_json() const {
  Json j = data;
  j["version"] = kVersion;
  j["command"] = command;
  j["inputs"] = inputs;
  j["checks"] = checks;
  j["ok"] = ok();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json error_json(const std::string& command, const Error& e) {
  return {{"version", kVersion}, {"command", command}, {"ok", false}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
}

int exit_code_for(const Error& e) {
  static const std::set<std::string> input_errors = {"ParseError", "UnknownGenerator", "ZeroModulus",
                                                     "InvalidArgument", "GroupMismatch"};
  return input_errors.count(e.kind()) ? 2 : 1;
}

std::size_t budget_from_env(std::size_t fallback) {
  const char* v = std::getenv("NCF_BUDGET");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0') throw InvalidArgument(std::string("NCF_BUDGET is not a number: ") + v);
  return static_cast<std::size_t>(n);
}

Json poly_to_json(const NcPoly& p) {
  Json out = Json::array();
  for (const auto& [w, c] : p.terms()) out.push_back({{"word", w}, {"coeff", c.get_str()}});
  return out;
}

NcPoly poly_from_json(const Json& j, const std::vector<std::string>& names) {
  if (j.is_string()) return parse_poly(j.get<std::string>(), names);
  if (!j.is_array()) throw InvalidArgument("polynomial must be a list of {word, coeff} or a string");
  NcPoly p;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("word")) throw InvalidArgument("term without a word");
    Word w;
    for (const auto& g : t.at("word")) {
      const int i = g.get<int>();
      if (i < 0 || i >= static_cast<int>(names.size())) {
        throw UnknownGenerator("generator index " + std::to_string(i) + " out of range");
      }
      w.push_back(i);
    }
    const Json& c = t.contains("coeff") ? t.at("coeff") : Json("1");
    p.add_term(w, c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
  }
  return p;
}

Json presentation_to_json(const Presentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.gens) gens.push_back({{"name", g.name}, {"weight", g.weight}});
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(poly_to_json(r));
  return {{"name", p.name}, {"gens", gens}, {"relations", rels}, {"bound", p.bound}};
}

Presentation presentation_from_json(const Json& j) {
  if (j.is_string()) return parse_presentation(j.get<std::string>());
  if (!j.is_object()) throw InvalidArgument("presentation must be an object or DSL text");
  Presentation p;
  p.name = j.value("name", "");
  for (const auto& g : j.at("gens")) {
    if (g.is_string()) {
      p.gens.push_back({g.get<std::string>(), 0});
    } else {
      p.gens.push_back({g.at("name").get<std::string>(), g.value("weight", 0)});
    }
  }
  const auto names = p.names();
  if (j.contains("relations")) {
    for (const auto& r : j.at("relations")) p.relations.push_back(poly_from_json(r, names));
  }
  p.bound = j.at("bound").get<int>();
  p.validate();
  return p;
}

namespace {

std::vector<std::size_t> count_by(const Algebra& a, bool by_weight) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const std::size_t d = static_cast<std::size_t>(by_weight ? a.weight(k) : a.degree(k));
    if (out.size() <= d) out.resize(d + 1, 0);
    ++out[d];
  }
  return out;
}

std::vector<std::string> element_strings(const Algebra& a, const std::vector<Vec>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(format_element(a, v));
  return out;
}

bool contains_all(const Subspace& big, const Subspace& small) {
  for (const auto& v : small.basis()) {
    if (!big.contains(v)) return false;
  }
  return true;
}

}  // namespace

Report run_alg(const Presentation& P, const AlgOptions& opt) {
  if (opt.max_d < 0 || opt.rd_top < 0) throw InvalidArgument("filtration levels must be nonnegative");
  Report rep;
  rep.command = "alg";
  rep.inputs = {{"presentation", print_presentation(P)}, {"max_d", opt.max_d}, {"rd_top", opt.rd_top}};
  AlgebraPtr A = build_truncated(P);
  rep.data["basis"] = A->labels();
  rep.data["dim"] = A->dim();
  rep.data["dims_by_degree"] = count_by(*A, false);
  rep.data["dims_by_weight"] = count_by(*A, true);
  rep.data["exact"] = A->exact();

  const auto F = nc_filtration_tower(*A, opt.max_d);
  std::vector<std::size_t> fd;
  for (const auto& s : F) fd.push_back(s.dim());
  rep.data["filtration_dims"] = fd;

  rep.check("associative_within_bound", A->associative_within_bound());
  bool decreasing = true;
  for (std::size_t d = 1; d < F.size(); ++d) decreasing = decreasing && contains_all(F[d - 1], F[d]);
  rep.check("filtration_decreasing", decreasing);
  std::optional<std::string> mult;
  for (int i = 1; i <= opt.max_d && !mult; ++i) {
    for (int j = 1; i + j <= opt.max_d && !mult; ++j) {
      if (!contains_all(F[i + j], ideal_product(*A, F[i], F[j]))) {
        mult = "F^" + std::to_string(i) + " F^" + std::to_string(j) + " not in F^" + std::to_string(i + j);
      }
    }
  }
  rep.check("filtration_multiplicative", !mult, mult);

  Json rd = Json::array();
  for (int d = 0; d <= opt.rd_top; ++d) {
    CertifiedQuotient q;
    try {
      q = certified_rd(P, d);
    } catch (const InconsistentPresentation&) {
      rd.push_back({{"d", d}, {"dim", 0}, {"certified", true}, {"zero", true}});
      continue;
    }
    const AlgebraPtr again = quotient_rd(*q.algebra, d);
    rd.push_back({{"d", d}, {"dim", q.algebra->dim()}, {"certified", q.certified}});
    if (d == 0) rep.check("r0_commutative", q.algebra->commutative());
    rep.check("r" + std::to_string(d) + "_idempotent", again->dim() == q.algebra->dim());
  }
  rep.data["rd"] = rd;
  return rep;
}

namespace {

std::vector<NcPoly> polys_from(const Json& list, const std::vector<std::string>& names, const std::string& what) {
  if (!list.is_array()) throw InvalidArgument(what + " must be a list");
  std::vector<NcPoly> out;
  for (const auto& p : list) out.push_back(poly_from_json(p, names));
  return out;
}

std::vector<Vec> images_in(const Algebra& target, const std::vector<NcPoly>& polys) {
  std::vector<Vec> out;
  for (const auto& p : polys) out.push_back(target.from_poly(p));
  return out;
}

}  // namespace

Report run_etale_lift(const Json& diagram) {
  Report rep;
  rep.command = "etale lift";
  for (const char* key : {"R", "S", "A", "Aprime", "maps"}) {
    if (!diagram.contains(key)) throw InvalidArgument(std::string("diagram is missing ") + key);
  }
  const Presentation R = presentation_from_json(diagram.at("R"));
  const Presentation S = presentation_from_json(diagram.at("S"));
  const Presentation Aq = presentation_from_json(diagram.at("A"));
  const Presentation Ap = presentation_from_json(diagram.at("Aprime"));
  const Json& maps = diagram.at("maps");
  rep.inputs = {{"R", print_presentation(R)}, {"S", print_presentation(S)}, {"A", print_presentation(Aq)},
                {"Aprime", print_presentation(Ap)}};

  const auto alpha = polys_from(maps.at("alpha"), S.names(), "alpha");
  const auto beta = polys_from(maps.at("beta"), Aq.names(), "beta");
  const auto gamma = polys_from(maps.at("gamma"), Aq.names(), "gamma");
  const auto delta = polys_from(maps.at("delta"), Ap.names(), "delta");
  if (alpha.size() != R.gens.size() || delta.size() != R.gens.size()) {
    throw InvalidArgument("alpha and delta need one image per generator of R");
  }
  if (beta.size() != S.gens.size()) throw InvalidArgument("beta needs one image per generator of S");
  if (gamma.size() != Ap.gens.size()) throw InvalidArgument("gamma needs one image per generator of Aprime");

  AlgebraPtr T = build_truncated(Ap);
  AlgebraPtr Q = build_truncated(Aq);
  const std::vector<Vec> gimg = images_in(*Q, gamma);
  std::vector<Vec> cols;
  for (const auto& w : T->words()) cols.push_back(Q->evaluate(NcPoly::word(w), gimg));
  LinearMap g(Q->dim(), std::move(cols));
  Subspace ker = g.kernel();
  CentralExtension ce{T, Q, g, ker};
  const auto ce_fail = ce.witness();
  rep.check("central_extension", !ce_fail, ce_fail);
  rep.data["dims"] = {{"A", Q->dim()}, {"Aprime", T->dim()}, {"I", ker.dim()}};

  AlgebraMorphism b{S, Q, images_in(*Q, beta)};
  AlgebraMorphism d{R, T, images_in(*T, delta)};
  const auto bw = b.relation_witness();
  const auto dw = d.relation_witness();
  rep.check("beta_respects_relations", !bw, bw);
  rep.check("delta_respects_relations", !dw, dw);
  EtaleDiagram diag{R, S, alpha, b, d, ce};
  const auto sq = diag.commute_witness();
  rep.check("square_commutes", !sq, sq);
  if (ce_fail || bw || dw || sq) return rep;

  std::vector<std::pair<NcPoly, Vec>> constraints;
  for (std::size_t i = 0; i < R.gens.size(); ++i) constraints.emplace_back(alpha[i], d.images[i]);
  const LiftSystem sys = solve_lifts(S, b.images, ce, constraints);
  rep.check("lift_exists", sys.solution.exists());
  rep.check("lift_unique", sys.solution.unique());
  Json lift = {{"solution_dim", sys.solution.exists() ? sys.dimension() : 0}};
  if (sys.solution.exists()) lift["images"] = element_strings(*T, sys.images(*sys.solution.particular));
  rep.data["lift"] = lift;

  if (diagram.contains("a")) {
    const auto a = polys_from(diagram.at("a"), R.names(), "a");
    const std::size_t n = R.gens.size();
    if (S.gens.size() != n + 2) throw InvalidArgument("closed form needs S = R<z, u>");
    const auto x = g.solve(b.images[n]);
    const auto y = g.solve(b.images[n + 1]);
    if (!x || !y) throw PreimageMismatch("beta(z) or beta(u) has no preimage");
    const StandardLift L = lift_standard(diag, a, *x, *y);
    rep.data["closed_form"] = {{"p", format_element(*T, L.p)}, {"q", format_element(*T, L.q)},
                               {"images", element_strings(*T, L.epsilon.images)}};
    rep.check("closed_form_relations", !L.relation_failure, L.relation_failure);
    rep.check("closed_form_matches_solver", L.matches_solver);
  }
  if (diagram.contains("d")) {
    const int dd = diagram.at("d").get<int>();
    const ClosureReport c = nd_closure_check(diag, dd);
    rep.data["closure"] = {{"d", dd}, {"filtration_dim", c.filtration_dim}};
    rep.check("Aprime_in_N_d", c.in_nd());
  }
  return rep;
}

Report run_etale_check(const Json& family, const std::optional<Json>& alpha) {
  Report rep;
  rep.command = "etale check";
  FamilySpec spec;
  spec.rational_base = family.value("rational_base", spec.rational_base);
  spec.d = family.value("d", spec.d);
  spec.base_bound = family.value("base_bound", spec.base_bound);
  spec.max_eps = family.value("max_eps", spec.max_eps);
  spec.quotient_base = family.value("quotient_base", spec.quotient_base);
  const std::size_t count = family.value("count", 20);
  const std::uint64_t seed = family.value("seed", 1);
  rep.inputs = {{"rational_base", spec.rational_base}, {"d", spec.d}, {"base_bound", spec.base_bound},
                {"max_eps", spec.max_eps}, {"quotient_base", spec.quotient_base}, {"count", count},
                {"seed", seed}};

  Family fam = generate_family(spec, count, seed);
  if (alpha) {
    const auto a = polys_from(alpha->at("a"), fam.R.names(), "a");
    if (a != fam.a) throw InvalidArgument("families are generated for f = z^2 - 1 only");
  }
  rep.inputs["a"] = Json::array();
  for (const auto& c : fam.a) rep.inputs["a"].push_back(format_poly(c, fam.R.names()));

  const EtaleReport er = check_formally_etale(fam.diagrams);
  Json cases = Json::array();
  bool closed = !fam.diagrams.empty();
  for (std::size_t i = 0; i < er.cases.size(); ++i) {
    const auto& c = er.cases[i];
    const ClosureReport cl = nd_closure_check(fam.diagrams[i], spec.d);
    closed = closed && cl.in_nd();
    Json cj = {{"exists", c.exists},
               {"unique", c.unique},
               {"solution_dim", c.solution_dim},
               {"Aprime_dim", fam.diagrams[i].gamma.total->dim()},
               {"I_dim", fam.diagrams[i].gamma.kernel.dim()},
               {"closure_dim", cl.filtration_dim}};
    if (c.commute_failure) cj["commute_failure"] = *c.commute_failure;
    cases.push_back(std::move(cj));
  }
  rep.data["cases"] = cases;
  rep.data["generated"] = fam.diagrams.size();
  rep.data["rejected"] = fam.rejected;
  rep.check("family_complete", fam.diagrams.size() == count);
  rep.check("formally_etale_over_family", er.verified_over_family());
  rep.check("Aprime_in_N_d", closed);
  return rep;
}

Report run_microloc(const Presentation& P, const MicrolocOptions& opt) {
  Report rep;
  rep.command = "microloc grn";
  rep.inputs = {{"presentation", print_presentation(P)}, {"n", opt.n}};
  if (opt.localize) rep.inputs["localize"] = *opt.localize;
  if (opt.lift) rep.inputs["lift"] = *opt.lift;
  if (opt.n < 0) throw InvalidArgument("--n must be nonnegative");

  FilteredAlgebra fa(build_truncated(P));
  const Algebra& A = fa.algebra();
  const GradedReport gr = associated_graded(fa);
  rep.data["gr_dims_by_grade"] = count_by(*gr.gr, true);
  rep.check("gr_commutative", gr.commutative);
  rep.check("gr_generated_in_degree_one", gr.generated_in_degree_one);

  MicroGraded mg(fa, opt.n);
  rep.data["grn_dims_by_grade"] = count_by(mg.algebra(), true);
  rep.check("grn_associative_within_bound", mg.algebra().associative_within_bound());
  rep.check("t_central", mg.t_central());
  const int nil = mg.t_nilpotency();
  rep.data["t_nilpotency"] = nil;
  rep.check("t_power_n_plus_1_zero", nil == opt.n + 1);
  const auto qw = mg.quotient_witness(*gr.gr);
  rep.check("quotient_by_t_is_gr", !qw, qw);
  const auto iw = filtration_ideal_witness(mg, *gr.gr);
  rep.check("filtration_ideals", !iw, iw);
  if (opt.n >= 1) {
    const auto pw = projection_witness(mg, MicroGraded(fa, opt.n - 1));
    rep.check("projection_to_lower_level", !pw, pw);
  }

  if (opt.localize) {
    std::string text = *opt.localize;
    if (text.rfind("f=", 0) == 0) text = text.substr(2);
    const Vec f = A.from_poly(parse_poly(text, P.names()));
    const AlgebraPtr O = localize_deg0(mg, f);
    rep.data["localized"] = {{"dim", O->dim()}, {"basis", O->labels()}, {"commutative", O->commutative()}};
    rep.check("localized_associative_within_bound", O->associative_within_bound());
    if (opt.lift) {
      const Vec other = A.from_poly(parse_poly(*opt.lift, P.names()));
      const LiftComparison cmp = compare_lifts(mg, f, other, A.bound());
      rep.data["lift_comparison"] = {{"pairs_checked", cmp.pairs_checked}};
      rep.check("lift_independent", cmp.bijective && cmp.multiplicative, cmp.failure);
    }
    const int order = opt.order.value_or(A.bound());
    if (order < 0) throw InvalidArgument("--order must be nonnegative");
    const LocalizedTower tower(mg, f, order + 1);
    const TowerReport tr = shift_tower(tower, order, A.bound());
    rep.data["tower"] = {{"shifts", tr.shifts}, {"dims", tr.dims}, {"t_ranks", tr.t_ranks}, {"limit_dim", tr.limit_dim}};
    rep.check("tower_associative", tr.associative);
    rep.check("tower_t_compatible", tr.t_compatible);
    rep.check("tower_unit_acts", tr.unit_acts);
  }
  return rep;
}

namespace {

std::set<std::string> wanted_checks(const std::string& list) {
  static const std::set<std::string> known = {"inversion", "multiplicativity", "exchange", "algebra", "modules"};
  std::set<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      out.insert(known.begin(), known.end());
    } else if (known.count(item)) {
      out.insert(item);
    } else {
      throw InvalidArgument("unknown check '" + item + "'");
    }
  }
  return out;
}

}  // namespace

Report run_fm(const FmOptions& opt) {
  Report rep;
  rep.command = "fm";
  const FiniteAbGroup X = parse_group(opt.group);
  const auto gens = parse_fm_algebra(opt.algebra, X);
  const auto want = wanted_checks(opt.check);
  rep.inputs = {{"group", X.str()},     {"algebra", print_fm_algebra(gens, X)}, {"check", opt.check},
                {"seed", opt.seed},     {"samples", opt.samples},              {"modules", opt.modules}};
  const Space S{X, false};
  rep.data["order"] = X.order();
  rep.data["exponent"] = X.exponent();
  std::mt19937 rng(static_cast<std::mt19937::result_type>(opt.seed));

  if (want.count("inversion")) {
    const Kernel P = poincare(S), Q = inverse_kernel(S);
    const auto w1 = Kernel::witness(circle(P, Q), diagonal(S));
    const auto w2 = Kernel::witness(circle(Q, P), diagonal(S.dual_space()));
    rep.check("P_o_Q_is_diagonal", !w1, w1);
    rep.check("Q_o_P_is_diagonal", !w2, w2);
  }
  if (want.count("multiplicativity")) {
    std::optional<std::string> mw, iw;
    for (int s = 0; s < opt.samples; ++s) {
      const Kernel K = random_kernel(S, S, rng), L = random_kernel(S, S, rng);
      const Kernel FK = transform_kernel(K);
      if (!mw) {
        if (auto w = Kernel::witness(transform_kernel(circle(K, L)), circle(FK, transform_kernel(L)))) {
          mw = "sample " + std::to_string(s) + ": " + *w;
        }
      }
      if (!iw) {
        if (auto w = Kernel::witness(inverse_transform(FK), K)) iw = "sample " + std::to_string(s) + ": " + *w;
      }
    }
    rep.check("transform_multiplicative", !mw, mw);
    rep.check("inverse_transform", !iw, iw);
  }
  if (want.count("exchange")) {
    std::optional<std::string> ew;
    Json scalars = Json::array();
    for (std::size_t x = 0; x < X.order() && !ew; ++x) {
      for (std::size_t psi = 0; psi < X.order() && !ew; ++psi) {
        const TransKernel T{S, x, psi, Cyclotomic(1, 1)};
        const auto img = as_trans_kernel(transform_kernel(T.expand()));
        if (!img || img->shift != psi || img->twist != X.neg(x)) {
          ew = "(" + std::to_string(x) + "," + std::to_string(psi) + ") is not exchanged";
        } else {
          scalars.push_back(img->scalar.str());
        }
      }
    }
    rep.data["exchange_scalars"] = scalars;
    rep.check("shift_twist_exchange", !ew, ew);
  }
  if (want.count("algebra") || want.count("modules")) {
    const QuasiSpecialAlgebra A(S, gens);
    Json basis = Json::array();
    for (const auto& [s, t] : A.basis()) basis.push_back({{"shift", X.element(s)}, {"twist", X.element(t)}});
    rep.data["algebra"] = {{"rank", A.rank()}, {"commutative", A.commutative()}, {"basis", basis}};
    if (want.count("algebra")) {
      const auto cw = A.cocycle_witness();
      const auto aw = A.associativity_witness();
      rep.check("structure_constants", !cw, cw);
      rep.check("associative", !aw, aw);
      const TransformedAlgebra TA = transform_algebra(A);
      rep.check("transformed_algebra", !TA.failure, TA.failure);
    }
    if (want.count("modules")) {
      std::optional<std::string> mf;
      for (int m = 0; m < opt.modules && !mf; ++m) {
        try {
          transform_module(A, random_module(A, rng));
        } catch (const NotAModule& e) {
          mf = "module " + std::to_string(m) + ": " + e.what();
        }
      }
      rep.check("module_functoriality", !mf, mf);
    }
  }
  return rep;
}

}  // namespace ncf::cli
