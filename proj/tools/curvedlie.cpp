// Command-line front end: reads algebras, cdgas and morphisms as JSON, runs constructions and checks, and
// prints a text or JSON report. Exit status: 0 verdict true, 1 verdict false, 2 input error.

#include "curvedlie/fuzz.hpp"
#include "curvedlie/homotopy.hpp"
#include "curvedlie/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace curvedlie;

namespace {

struct Caps {
  int weight = 4;  // N: free Lie truncations, 𝓛
  int words = 3;   // W: 𝓒 word length
  int zcap = 2;    // D: polynomial degree in k[z,dz] and Ω_n
};

struct Options {
  Caps caps;
  Window window;
  std::string format = "text";
  std::uint64_t seed = 1;
  int samples = 20;
  int count = 20;
  int increments = 2;
  std::string emit;
  std::string xi, eta, witness, epsilon, family = "valid";
  std::string cdga, source, target;
  std::vector<std::string> files;
  bool weighted = false;
};

struct Report {
  Json json = Json::object();
  std::vector<std::string> lines;
  bool verdict = true;

  void line(std::string s) { lines.push_back(std::move(s)); }
};

// ------------------------------------------------------------------ input

Caps caps_from_env() {
  Caps c;
  const char* env = std::getenv("CURVEDLIE_CAPS");
  if (!env) return c;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("CURVEDLIE_CAPS: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    int value = 0;
    try {
      value = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("CURVEDLIE_CAPS: '" + item + "' is not an integer assignment");
    }
    if (key == "weight") c.weight = value;
    else if (key == "words") c.words = value;
    else if (key == "zcap") c.zcap = value;
    else throw InputError("CURVEDLIE_CAPS: unknown cap '" + key + "'");
  }
  return c;
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("--window: expected lo:hi, got '" + text + "'");
  try {
    Window w{std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    if (w.lo > w.hi) throw InputError("--window: empty window " + text);
    return w;
  } catch (const std::logic_error&) {
    throw InputError("--window: expected integers lo:hi, got '" + text + "'");
  }
}

std::string kind_of(const Json& j) {
  if (j.is_object())
    if (auto it = j.find("kind"); it != j.end() && it->is_string()) return it->get<std::string>();
  return "";
}

AlgebraPtr load_algebra(const std::string& path) {
  try {
    return share(algebra_from_json(read_json_file(path)));
  } catch (const InputError& e) {
    const std::string what = e.what();
    throw InputError(what.rfind(path, 0) == 0 ? what : path + ": " + what);
  }
}

CdgaPtr load_cdga(const std::string& path) {
  try {
    return share(cdga_from_json(read_json_file(path)));
  } catch (const InputError& e) {
    const std::string what = e.what();
    throw InputError(what.rfind(path, 0) == 0 ? what : path + ": " + what);
  }
}

CurvedMorphism load_morphism(const std::string& path, const AlgebraPtr& s, const AlgebraPtr& t) {
  try {
    return morphism_from_json(read_json_file(path), s, t);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::optional<Element> optional_element(const GradedSpace& v, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_compact_element(v, text);
}

void emit(const Options& o, const Json& j, Report& r) {
  if (o.emit.empty()) return;
  std::ofstream out(o.emit);
  if (!out) throw InputError(o.emit + ": cannot write");
  out << dump_json(j);
  r.json["emitted"] = o.emit;
  r.line("wrote " + o.emit);
}

std::string fmt(const GradedSpace& v, const Element& x) { return format_element(v, x); }

// Every basis vector of the degree gets a random rational coefficient.
Element random_element(Fuzzer& fz, const GradedSpace& v, int degree) {
  Element x;
  for (auto i : v.indices_in_degree(degree)) x.add(i, fz.rational());
  return x;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

void add_validation(Report& r, const ValidationReport& v, const std::string& what) {
  r.json["validation"] = validation_json(v);
  if (v.ok()) {
    r.line(what + ": all axioms hold");
    return;
  }
  r.line(what + ": " + std::to_string(v.failures.size()) + " axiom failure(s)");
  for (const auto& f : v.failures) {
    std::string w;
    for (const auto& s : f.witness) w += (w.empty() ? "" : ", ") + s;
    r.line("  " + f.axiom + " (" + w + "): " + f.residual);
  }
}

Json betti_json(const std::map<int, std::size_t>& b) {
  Json j = Json::object();
  for (const auto& [d, n] : b) j[std::to_string(d)] = n;
  return j;
}

std::string betti_line(const std::map<int, std::size_t>& b) {
  std::string s;
  for (const auto& [d, n] : b) s += (s.empty() ? "" : " ") + std::to_string(d) + ":" + std::to_string(n);
  return s;
}

void summarize_algebra(Report& r, const CurvedLieAlgebra& g, const std::string& label) {
  r.line(label + ": dimension " + std::to_string(g.dim()) + ", curvature " + fmt(g.space, g.omega));
}

// --------------------------------------------------------------- commands

Report cmd_validate(const Options& o) {
  Report r;
  const Json j = read_json_file(o.files.at(0));
  const std::string kind = kind_of(j);
  r.json["kind"] = kind;
  if (kind == "curved_lie") {
    add_validation(r, validate_algebra(algebra_from_json(j)), "curved Lie algebra");
  } else if (kind == "cdga") {
    add_validation(r, validate_cdga(cdga_from_json(j)), "cdga");
  } else if (kind == "curved_morphism") {
    if (o.source.empty() || o.target.empty()) throw InputError("validating a morphism needs --source and --target");
    auto m = morphism_from_json(j, load_algebra(o.source), load_algebra(o.target));
    add_validation(r, validate_morphism(m), "curved morphism");
  } else if (kind == "cdga_morphism") {
    if (o.source.empty() || o.target.empty()) throw InputError("validating a morphism needs --source and --target");
    auto f = cdga_morphism_from_json(j, load_cdga(o.source), load_cdga(o.target));
    add_validation(r, validate_cdga_morphism(f), "cdga morphism");
  } else {
    throw InputError(o.files[0] + ": kind: expected curved_lie, cdga, curved_morphism or cdga_morphism");
  }
  r.verdict = r.json["validation"]["ok"].get<bool>();
  return r;
}

Report cmd_twist(const Options& o) {
  Report r;
  auto g = load_algebra(o.files.at(0));
  const Element xi = parse_compact_element(g->space, o.xi);
  auto t = twist(g, xi);
  const auto& h = *t.algebra;
  r.json["xi"] = element_json(g->space, xi);
  r.json["curvature"] = element_json(h.space, h.omega);
  r.json["flat"] = h.omega.is_zero();
  r.json["algebra"] = algebra_json(h);
  r.line("ξ = " + fmt(g->space, xi));
  summarize_algebra(r, h, "twisted algebra");
  r.line(std::string("ξ is ") + (h.omega.is_zero() ? "" : "not ") + "Maurer–Cartan (twisted curvature " +
         (h.omega.is_zero() ? "zero" : "nonzero") + ")");
  add_validation(r, validate_algebra(h), "twisted algebra");
  r.verdict = r.json["validation"]["ok"].get<bool>();
  emit(o, algebra_json(h), r);
  return r;
}

Report cmd_product(const Options& o) {
  Report r;
  std::vector<AlgebraPtr> factors;
  for (const auto& f : o.files) factors.push_back(load_algebra(f));
  auto p = product(factors);
  r.json["algebra"] = algebra_json(*p.algebra);
  summarize_algebra(r, *p.algebra, "product of " + std::to_string(factors.size()));
  add_validation(r, validate_algebra(*p.algebra), "product");
  r.verdict = r.json["validation"]["ok"].get<bool>();
  emit(o, algebra_json(*p.algebra), r);
  return r;
}

// g h f1 f2: two parallel morphisms g → h
std::pair<CurvedMorphism, CurvedMorphism> load_parallel(const Options& o) {
  if (o.files.size() != 4) throw InputError("expected source, target and two morphism files");
  auto g = load_algebra(o.files[0]);
  auto h = load_algebra(o.files[1]);
  return {load_morphism(o.files[2], g, h), load_morphism(o.files[3], g, h)};
}

Report cmd_equalise(const Options& o) {
  Report r;
  auto [m1, m2] = load_parallel(o);
  auto eq = equaliser(m1, m2);
  r.json["iterations"] = eq.iterations;
  r.json["agreement_dim"] = eq.agreement.dim();
  if (std::holds_alternative<InitialObject>(eq.object)) {
    r.json["object"] = "initial";
    r.json["note"] = eq.note;
    r.line("equaliser is the initial object: " + eq.note);
    return r;
  }
  const auto& e = *std::get<AlgebraPtr>(eq.object);
  r.json["object"] = "algebra";
  r.json["algebra"] = algebra_json(e);
  summarize_algebra(r, e, "equaliser");
  add_validation(r, validate_algebra(e), "equaliser");
  r.verdict = r.json["validation"]["ok"].get<bool>();
  emit(o, algebra_json(e), r);
  return r;
}

Report cmd_coequalise(const Options& o) {
  Report r;
  auto [m1, m2] = load_parallel(o);
  auto c = coequaliser(m1, m2);
  r.json["ideal_dim"] = c.ideal.dim();
  r.json["algebra"] = algebra_json(*c.algebra);
  summarize_algebra(r, *c.algebra, "coequaliser");
  r.line("ideal dimension " + std::to_string(c.ideal.dim()));
  add_validation(r, validate_algebra(*c.algebra), "coequaliser");
  r.verdict = r.json["validation"]["ok"].get<bool>();
  emit(o, algebra_json(*c.algebra), r);
  return r;
}

Report cmd_coproduct(const Options& o) {
  Report r;
  if (o.files.size() != 2) throw InputError("expected two algebra files");
  auto c = coproduct(load_algebra(o.files[0]), load_algebra(o.files[1]), o.caps.weight);
  const auto& g = *c.algebra;
  r.json["x"] = g.space.name(c.x_index);
  r.json["dx"] = element_json(g.space, g.d.column(c.x_index));
  r.json["algebra"] = algebra_json(g);
  summarize_algebra(r, g, "coproduct");
  r.line("adjoined x = " + g.space.name(c.x_index) + ", dx = " + fmt(g.space, g.d.column(c.x_index)));
  add_validation(r, c.report, "coproduct (weight ≤ N-1)");
  r.verdict = c.report.ok();
  emit(o, algebra_json(g), r);
  return r;
}

Json filtration_json(const Filtration& f) {
  Json levels = Json::array();
  for (const auto& s : f.levels) levels.push_back(s.dim());
  return {{"level_dims", levels},
          {"length", f.length()},
          {"respects_bracket", f.respects_bracket},
          {"respects_differential", f.respects_differential},
          {"reaches_zero", f.reaches_zero},
          {"admissible", f.admissible}};
}

Report cmd_lcs(const Options& o) {
  Report r;
  auto g = load_algebra(o.files.at(0));
  auto f = lower_central_series(*g);
  r.json["filtration"] = filtration_json(f);
  std::string dims;
  for (const auto& s : f.levels) dims += (dims.empty() ? "" : " ⊇ ") + std::to_string(s.dim());
  r.line("F_1 ⊇ F_2 ⊇ ... dimensions: " + dims);
  r.line("respects bracket " + yes(f.respects_bracket) + ", differential " + yes(f.respects_differential) +
         ", reaches zero " + yes(f.reaches_zero));
  r.line(std::string("filtration is ") + (f.admissible ? "admissible" : "not admissible"));
  r.verdict = f.admissible;
  return r;
}

Report cmd_gr(const Options& o) {
  Report r;
  auto g = load_algebra(o.files.at(0));
  auto f = lower_central_series(*g);
  r.json["filtration"] = filtration_json(f);
  if (!f.admissible) {
    r.line("lower central series is not admissible");
    r.verdict = false;
    return r;
  }
  auto gr = associated_graded(*g, f);
  r.json["algebra"] = algebra_json(*gr.algebra);
  summarize_algebra(r, *gr.algebra, "associated graded");
  add_validation(r, gr.report, "associated graded");
  r.verdict = gr.report.ok();
  emit(o, algebra_json(*gr.algebra), r);
  return r;
}

void homology_block(Report& r, const HomologyReport& h, bool cohomological) {
  r.json["betti"] = betti_json(h.betti);
  r.line("Betti numbers (homological degree:dim): " + betti_line(h.betti));
  if (cohomological) {
    std::map<int, std::size_t> co;
    for (const auto& [d, n] : h.betti) co[-d] = n;
    r.json["cohomological_betti"] = betti_json(co);
    r.line("cohomological degrees: " + betti_line(co));
  }
}

Report cmd_homology(const Options& o) {
  Report r;
  const Json j = read_json_file(o.files.at(0));
  const std::string kind = kind_of(j);
  if (kind == "curved_lie") {
    auto g = algebra_from_json(j);
    homology_block(r, homology(g.space, g.d, o.window), false);
  } else if (kind == "cdga") {
    auto a = cdga_from_json(j);
    homology_block(r, homology(a.space, a.d, o.window), true);
  } else {
    throw InputError(o.files[0] + ": kind: expected curved_lie or cdga");
  }
  return r;
}

Report cmd_functor_L(const Options& o) {
  Report r;
  auto a = load_cdga(o.files.at(0));
  auto s = split(a, optional_element(a->space, o.epsilon));
  auto l = harrison_L(s, o.caps.weight);
  const auto& g = *l.algebra;
  r.json["augmentation"] = s.augmentation;
  r.json["dims_by_weight"] = l.free->dims_by_weight();
  r.json["curvature"] = element_json(g.space, g.omega);
  r.json["algebra"] = algebra_json(g);
  summarize_algebra(r, g, "𝓛(A)");
  std::string dims;
  for (auto d : l.free->dims_by_weight()) dims += (dims.empty() ? "" : " ") + std::to_string(d);
  r.line("dimensions by weight: " + dims);
  r.line(std::string("retraction is ") + (s.augmentation ? "" : "not ") + "an augmentation");
  add_validation(r, validate_algebra(g), "𝓛(A)");
  r.verdict = r.json["validation"]["ok"].get<bool>();
  emit(o, algebra_json(g), r);
  return r;
}

Report cmd_functor_C(const Options& o) {
  Report r;
  auto g = load_algebra(o.files.at(0));
  auto c = chevalley_C(g, o.caps.words, o.weighted);
  auto band = check_ce_differential(c);
  r.json["dim"] = c.algebra->dim();
  r.json["sound_below"] = band.sound_below;
  r.json["band_defects"] = band.band_defects;
  r.json["cdga"] = cdga_json(*c.algebra);
  r.json["validation"] = validation_json(band.sound);
  r.line("𝓒(g): dimension " + std::to_string(c.algebra->dim()) + (o.weighted ? " (weight-truncated)" : ""));
  r.line("d² = 0 checked on words of length < " + std::to_string(band.sound_below) + ": " +
         (band.sound.ok() ? "holds" : "fails"));
  r.line("unsound band: " + std::to_string(band.band_defects) + " monomial(s) with d² ≠ 0 at the cap");
  for (const auto& f : band.sound.failures) r.line("  d² on " + f.witness.front() + ": " + f.residual);
  r.verdict = band.sound.ok();
  emit(o, cdga_json(*c.algebra), r);
  return r;
}

Report cmd_adjunction(const Options& o) {
  Report r;
  if (o.files.size() != 2) throw InputError("expected an algebra file and a cdga file");
  auto g = load_algebra(o.files[0]);
  auto a = load_cdga(o.files[1]);
  auto l = harrison_L(split(a, optional_element(a->space, o.epsilon)), o.caps.weight);
  auto c = chevalley_C(g, o.caps.words);
  Fuzzer fz(o.seed);
  int ok = 0;
  Json first;
  for (int k = 0; k < o.samples; ++k) {
    std::vector<Element> images;
    for (std::size_t y = 0; y < g->dim(); ++y)
      images.push_back(random_element(fz, a->space, c.algebra->space.degree(c.generator(y))));
    auto phi = ce_map_from_generators(c, images, a);
    auto m = adjunction_forward(phi, c, l);
    auto back = adjunction_backward(m, l, c);
    auto m2 = adjunction_forward(back, c, l);
    bool good = generator_images(back, c) == images && back.map == phi.map && m2.alpha == m.alpha;
    for (std::size_t t = 0; t < l.split.plus.dim(); ++t)
      good = good && m2.f.column(l.generator(t)) == m.f.column(l.generator(t));
    ok += good;
    if (k == 0) {
      Json imgs = Json::array();
      for (std::size_t y = 0; y < images.size(); ++y)
        imgs.push_back({{"on", c.algebra->space.name(c.generator(y))}, {"value", element_json(a->space, images[y])}});
      first = {{"generator_images", imgs}, {"morphism", morphism_json(m)}};
      for (std::size_t y = 0; y < images.size(); ++y)
        r.line("sample 0: φ(" + c.algebra->space.name(c.generator(y)) + ") = " + fmt(a->space, images[y]));
      for (std::size_t t = 0; t < l.split.plus.dim(); ++t)
        r.line("sample 0: f(" + l.algebra->space.name(l.generator(t)) + ") = " +
               fmt(g->space, m.f.column(l.generator(t))));
      r.line("sample 0: α = " + fmt(g->space, m.alpha));
    }
  }
  r.json["samples"] = o.samples;
  r.json["round_trips"] = ok;
  if (o.samples > 0) r.json["example"] = first;
  r.line("round trips: " + std::to_string(ok) + "/" + std::to_string(o.samples));
  r.verdict = ok == o.samples;
  return r;
}

Report cmd_unit(const Options& o) {
  Report r;
  auto a = load_cdga(o.files.at(0));
  auto s = split(a, optional_element(a->space, o.epsilon));
  if (!s.augmentation) throw InputError("the unit comparison needs an augmentation (ε multiplicative and a chain map)");
  auto ha = homology(a->space, a->d, o.window);
  Json stages = Json::array();
  std::vector<std::map<int, std::size_t>> tables;
  bool all_iso = true;
  for (int k = 0; k <= o.increments; ++k) {
    const int n = o.caps.weight + k, w = o.caps.words + k;
    auto l = harrison_L(s, n);
    auto cl = chevalley_C(l.algebra, w);
    auto unit = unit_map(l, cl);
    const bool chain = check_ce_chain_map(unit, cl).ok();
    auto hc = homology(cl.algebra->space, cl.algebra->d, o.window);
    auto rk = induced_rank(unit.map, hc, ha);
    bool iso = chain;
    for (const auto& [d, b] : hc.betti) iso = iso && b == ha.betti.at(d) && rk.at(d) == b;
    all_iso = all_iso && iso;
    tables.push_back(hc.betti);
    stages.push_back({{"weight", n},
                      {"words", w},
                      {"dim", cl.algebra->dim()},
                      {"chain_map", chain},
                      {"betti", betti_json(hc.betti)},
                      {"rank", betti_json(rk)},
                      {"iso", iso}});
    r.line("caps (N, W) = (" + std::to_string(n) + ", " + std::to_string(w) + "): 𝓒𝓛(A) Betti " +
           betti_line(hc.betti) + ", induced rank " + betti_line(rk) + (iso ? ", iso" : ", not iso"));
  }
  bool stable = true;
  for (std::size_t k = 1; k < tables.size(); ++k) stable = stable && tables[k] == tables[k - 1];
  r.json["target_betti"] = betti_json(ha.betti);
  r.json["stages"] = stages;
  r.json["stable"] = stable;
  r.line("A Betti " + betti_line(ha.betti));
  r.line(std::string("tables ") + (stable ? "stable" : "still changing") + " across cap increments");
  r.verdict = stable && all_iso;
  return r;
}

Report cmd_counit(const Options& o) {
  Report r;
  auto g = load_algebra(o.files.at(0));
  auto c = chevalley_C(g, o.caps.words);
  auto lc = harrison_L(split(c.algebra), o.caps.weight);
  auto counit = counit_map(c, lc);
  auto v = validate_morphism(counit);
  r.json["lc_dim"] = lc.algebra->dim();
  add_validation(r, v, "counit 𝓛𝓒(g) → g");
  auto gr = gr_counit_check(*g, o.window, o.caps.weight, o.increments);
  Json stages = Json::array();
  for (const auto& st : gr.stages) {
    stages.push_back({{"cap", st.cap},
                      {"lc_dim", st.lc_dim},
                      {"morphism_ok", st.morphism_ok},
                      {"source_betti", betti_json(st.source_betti)},
                      {"target_betti", betti_json(st.target_betti)},
                      {"rank", betti_json(st.rank)},
                      {"iso", st.iso()}});
    r.line("gr cap " + std::to_string(st.cap) + ": 𝓛𝓒(gr g) Betti " + betti_line(st.source_betti) + ", gr g Betti " +
           betti_line(st.target_betti) + ", rank " + betti_line(st.rank) + (st.iso() ? ", iso" : ", not iso"));
  }
  r.json["gr"] = {{"stages", stages}, {"stable", gr.stable}, {"verdict", gr.verdict}, {"note", gr.note}};
  if (!gr.note.empty()) r.line("gr: " + gr.note);
  r.verdict = v.ok() && gr.verdict;
  return r;
}

// g, or g⊗A when --cdga is given
AlgebraPtr mc_algebra(const Options& o, const AlgebraPtr& g) {
  if (o.cdga.empty()) return g;
  return share(tensor_lie_cdga(*g, *load_cdga(o.cdga)));
}

Report cmd_mc_check(const Options& o) {
  Report r;
  auto g = mc_algebra(o, load_algebra(o.files.at(0)));
  const Element xi = parse_compact_element(g->space, o.xi);
  auto rep = twist_flatness(g, xi);
  r.json["xi"] = element_json(g->space, xi);
  r.json["residual"] = element_json(g->space, rep.residual);
  r.json["twist_agrees"] = rep.agree();
  r.line("ξ = " + fmt(g->space, xi));
  r.line("ω + dξ + ½[ξ,ξ] = " + fmt(g->space, rep.residual));
  r.line(std::string("ξ is ") + (rep.mc ? "" : "not ") + "Maurer–Cartan; twisted curvature " +
         (rep.agree() ? "agrees" : "DISAGREES"));
  r.verdict = rep.mc && rep.agree();
  return r;
}

Report cmd_mc_solve(const Options& o) {
  Report r;
  auto g = mc_algebra(o, load_algebra(o.files.at(0)));
  auto sol = mc_solve_linear(*g);
  r.json["status"] = to_string(sol.status);
  r.line("status: " + to_string(sol.status));
  if (sol.status == McSolution::Status::solved) {
    Json ker = Json::array();
    for (const auto& k : sol.kernel) ker.push_back(element_json(g->space, k));
    r.json["particular"] = element_json(g->space, sol.particular);
    r.json["kernel"] = ker;
    r.line("particular solution: " + fmt(g->space, sol.particular));
    r.line("kernel dimension " + std::to_string(sol.kernel.size()));
    for (const auto& k : sol.kernel) r.line("  " + fmt(g->space, k));
  } else if (sol.status == McSolution::Status::refused) {
    r.json["obstruction"] = sol.obstruction;
    r.line("the quadratic term does not vanish on degree -1: " + sol.obstruction + " ≠ 0");
  } else {
    r.line("-ω is not in d(g_{-1}): no Maurer–Cartan elements");
  }
  r.verdict = sol.status == McSolution::Status::solved;
  return r;
}

Report cmd_mc_homotopy(const Options& o) {
  Report r;
  auto g = load_algebra(o.files.at(0));
  auto a = o.cdga.empty() ? share(Cdga::ground_field()) : load_cdga(o.cdga);
  auto ctx = path_context(g, a, o.caps.zcap);
  // over ℚ the factor "⊗1" may be dropped: g⊗ℚ and g⊗ℚ⊗k[z,dz] share indices with g and g⊗k[z,dz]
  const bool over_q = o.cdga.empty();
  const GradedSpace& base = over_q ? g->space : ctx.base->space;
  const GradedSpace path = over_q ? tensor_spaces(g->space, path_monomials(ctx.path.cap).space()) : ctx.algebra->space;
  const Element xi = parse_compact_element(base, o.xi);
  const Element eta = parse_compact_element(base, o.eta.empty() ? o.xi : o.eta);
  const Element h = o.witness.empty() ? ctx.constant(xi) : parse_compact_element(path, o.witness);
  auto rep = mc_homotopy_check(ctx, xi, eta, h);
  r.json["witness"] = element_json(path, h);
  r.json["residual"] = element_json(path, rep.residual);
  r.json["checks"] = {{"source_mc", rep.source_mc}, {"target_mc", rep.target_mc}, {"witness_mc", rep.witness_mc},
                      {"starts", rep.starts},       {"ends", rep.ends},             {"within_cap", rep.within_cap}};
  r.line("witness h = " + fmt(path, h));
  r.line("ξ MC " + yes(rep.source_mc) + ", η MC " + yes(rep.target_mc) + ", h within cap " + yes(rep.within_cap));
  r.line("h MC " + yes(rep.witness_mc) + " (residual " + fmt(path, rep.residual) + "), h|0 = ξ " +
         yes(rep.starts) + ", h|1 = η " + yes(rep.ends));
  r.verdict = rep.verdict;
  return r;
}

Report cmd_mc_bijection(const Options& o) {
  Report r;
  if (o.files.size() != 2) throw InputError("expected an algebra file and a cdga file");
  auto g = load_algebra(o.files[0]);
  auto a = load_cdga(o.files[1]);
  auto G = tensor_lie_cdga(*g, *a);
  Fuzzer fz(o.seed);
  std::vector<Element> samples;
  for (int k = 0; k < o.samples; ++k) samples.push_back(random_element(fz, G.space, -1));
  if (auto sol = mc_solve_linear(G); sol.status == McSolution::Status::solved) {
    samples.push_back(sol.particular);
    for (const auto& k : sol.kernel) samples.push_back(sol.particular + k);
  }
  auto rep = mc_hom_bijection_check(g, a, o.caps.words, samples);
  r.json["samples"] = rep.samples;
  r.json["mc_samples"] = rep.mc_samples;
  r.json["round_trips"] = rep.round_trips;
  r.json["mc_iff_chain"] = rep.mc_iff_chain;
  r.json["solved_sets_match"] = rep.solved_sets_match ? Json(*rep.solved_sets_match) : Json(nullptr);
  r.json["solved_dimension"] = rep.solved_dimension;
  r.json["note"] = rep.note;
  r.line(std::to_string(rep.samples) + " samples, " + std::to_string(rep.mc_samples) + " Maurer–Cartan");
  r.line("round trips exact " + yes(rep.round_trips) + ", MC ⇔ chain map " + yes(rep.mc_iff_chain));
  if (rep.solved_sets_match)
    r.line("solved sets match " + yes(*rep.solved_sets_match) + " (dimension " +
           std::to_string(rep.solved_dimension) + ")");
  if (!rep.note.empty()) r.line(rep.note);
  r.verdict = rep.verdict;
  return r;
}

Report cmd_fqiso(const Options& o) {
  Report r;
  if (o.files.size() != 3) throw InputError("expected source, target and morphism files");
  auto g = load_algebra(o.files[0]);
  auto h = load_algebra(o.files[1]);
  auto m = load_morphism(o.files[2], g, h);
  auto rep = filtered_qiso_check(m, lower_central_series(*g), lower_central_series(*h), o.window);
  Json rows = Json::array();
  for (const auto& w : rep.rows) {
    rows.push_back({{"weight", w.weight},
                    {"degree", w.degree},
                    {"source_betti", w.source_betti},
                    {"target_betti", w.target_betti},
                    {"rank", w.rank}});
    r.line("weight " + std::to_string(w.weight) + ", degree " + std::to_string(w.degree) + ": " +
           std::to_string(w.source_betti) + " → " + std::to_string(w.target_betti) + " (rank " +
           std::to_string(w.rank) + ")");
  }
  r.json["rows"] = rows;
  r.json["note"] = rep.note;
  if (!rep.note.empty()) r.line(rep.note);
  r.line("filtered quasi-isomorphism (lower central series filtrations): " + yes(rep.verdict));
  r.line("membership in the weak equivalences generated by these is not decided here");
  r.verdict = rep.verdict;
  return r;
}

Report cmd_fuzz(const Options& o) {
  Report r;
  Fuzzer fz(o.seed);
  Json items = Json::array();
  int accepted = 0;
  for (int k = 0; k < o.count; ++k) {
    if (o.family == "cdga") {
      auto s = fz.augmented_cdga();
      const bool ok = validate_cdga(s.algebra).ok();
      accepted += ok;
      items.push_back({{"family", s.family}, {"valid", ok}, {"cdga", cdga_json(s.algebra)}});
      continue;
    }
    CurvedLieAlgebra g;
    if (o.family == "valid") g = fz.valid_algebra(4);
    else if (o.family == "candidate") g = fz.candidate(4);
    else if (o.family == "perturbed") g = fz.perturbed(4);
    else throw InputError("--family: expected valid, candidate, perturbed or cdga");
    const bool ok = validate_algebra(g).ok();
    accepted += ok;
    items.push_back({{"valid", ok}, {"algebra", algebra_json(g)}});
  }
  r.json["family"] = o.family;
  r.json["seed"] = o.seed;
  r.json["count"] = o.count;
  r.json["accepted"] = accepted;
  r.json["items"] = items;
  r.line(std::to_string(accepted) + "/" + std::to_string(o.count) + " generated " + o.family +
         " objects pass validation (seed " + std::to_string(o.seed) + ")");
  // generators that build valid objects by construction must always validate
  r.verdict = (o.family == "valid" || o.family == "cdga") ? accepted == o.count : true;
  emit(o, items, r);
  return r;
}

void print(const std::string& name, const Options& o, Report& r) {
  Json out;
  out["command"] = name;
  out["caps"] = {{"weight", o.caps.weight}, {"words", o.caps.words}, {"zcap", o.caps.zcap}};
  out["window"] = {{"lo", o.window.lo}, {"hi", o.window.hi}};
  out["verdict"] = r.verdict;
  for (auto& [k, v] : r.json.items()) out[k] = v;
  if (o.format == "json") {
    std::cout << dump_json(out);
    return;
  }
  std::cout << name << " (caps: weight " << o.caps.weight << ", words " << o.caps.words << ", zcap " << o.caps.zcap
            << "; window [" << o.window.lo << ", " << o.window.hi << "])\n";
  for (const auto& l : r.lines) std::cout << l << "\n";
  std::cout << "verdict: " << (r.verdict ? "true" : "false") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  std::string window;
  try {
    o.caps = caps_from_env();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Curved Lie algebras, cdgas and the functors between them, over ℚ"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  struct Entry {
    const char* name;
    const char* help;
    std::function<Report(const Options&)> run;
    int min_files, max_files;
  };
  const std::vector<Entry> entries = {
      {"validate", "Check the axioms of an algebra, cdga or morphism file", cmd_validate, 1, 1},
      {"twist", "Twist an algebra by --xi", cmd_twist, 1, 1},
      {"product", "Product of algebras", cmd_product, 1, 16},
      {"equalise", "Equaliser of two morphisms: G H F1 F2", cmd_equalise, 4, 4},
      {"coproduct", "Coproduct G ⊔ H truncated at --weight", cmd_coproduct, 2, 2},
      {"coequalise", "Coequaliser of two morphisms: G H F1 F2", cmd_coequalise, 4, 4},
      {"lcs", "Lower central series", cmd_lcs, 1, 1},
      {"gr", "Associated graded algebra of the lower central series", cmd_gr, 1, 1},
      {"homology", "Homology of an uncurved algebra or of a cdga in --window", cmd_homology, 1, 1},
      {"functor-L", "𝓛(A) truncated at --weight", cmd_functor_L, 1, 1},
      {"functor-C", "𝓒(g) truncated at --words", cmd_functor_C, 1, 1},
      {"adjunction", "Adjunction round trips for G and A on seeded generator images", cmd_adjunction, 2, 2},
      {"unit", "Unit 𝓒𝓛(A) → A on homology at increasing caps", cmd_unit, 1, 1},
      {"counit", "Counit 𝓛𝓒(g) → g, and its gr-level homology comparison", cmd_counit, 1, 1},
      {"mc-check", "Maurer–Cartan residual of --xi (in g⊗A with --cdga)", cmd_mc_check, 1, 1},
      {"mc-solve", "Solve the MC equation when it is linear", cmd_mc_solve, 1, 1},
      {"mc-homotopy", "Check a homotopy witness in g⊗A⊗k[z,dz]", cmd_mc_homotopy, 1, 1},
      {"mc-bijection", "MC(g⊗A) against chain algebra maps 𝓒(g) → A", cmd_mc_bijection, 2, 2},
      {"fqiso", "Filtered quasi-isomorphism check: G H M", cmd_fqiso, 3, 3},
      {"fuzz", "Seeded random algebras with their validation verdicts", cmd_fuzz, 0, 0},
  };

  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    if (e.max_files > 0) {
      auto* opt = sub->add_option("files", o.files, "Input JSON files")->required();
      opt->expected(e.min_files, e.max_files);
      opt->check(CLI::ExistingFile);
    }
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--weight", o.caps.weight, "Weight cap N (free Lie truncations, 𝓛)")->check(CLI::PositiveNumber);
    sub->add_option("--words", o.caps.words, "Word cap W (𝓒)")->check(CLI::PositiveNumber);
    sub->add_option("--zcap", o.caps.zcap, "Polynomial cap D for k[z,dz]")->check(CLI::PositiveNumber);
    sub->add_option("--window", window, "Homological degree window lo:hi (default -6:2)");
    sub->add_option("--seed", o.seed, "Seed for sampled checks");
    sub->add_option("--samples", o.samples, "Number of sampled elements")->check(CLI::NonNegativeNumber);
    sub->add_option("--increments", o.increments, "Cap increments for stabilisation")->check(CLI::NonNegativeNumber);
    sub->add_option("--emit", o.emit, "Write the constructed object to this file");
    subs.push_back({sub, &e});
  }
  auto opt_of = [&](const char* name) { return app.get_subcommand(name); };
  opt_of("twist")->add_option("--xi", o.xi, "Degree -1 element, e.g. \"x:1,y:-1/2\"")->required();
  opt_of("mc-check")->add_option("--xi", o.xi, "Degree -1 element")->required();
  opt_of("mc-homotopy")->add_option("--xi", o.xi, "Start point")->required();
  opt_of("mc-homotopy")->add_option("--eta", o.eta, "End point (default: ξ)");
  opt_of("mc-homotopy")->add_option("--witness", o.witness, "Element h of g⊗A⊗k[z,dz] (default: ξ⊗1)");
  for (const char* name : {"mc-check", "mc-solve", "mc-homotopy"})
    opt_of(name)->add_option("--cdga", o.cdga, "Work in g⊗A for this cdga file")->check(CLI::ExistingFile);
  for (const char* name : {"functor-L", "adjunction", "unit"})
    opt_of(name)->add_option("--epsilon", o.epsilon, "Retraction ε as \"name:coeff,...\" (default kills A₊)");
  for (const char* name : {"validate"}) {
    opt_of(name)->add_option("--source", o.source, "Source file for morphism validation")->check(CLI::ExistingFile);
    opt_of(name)->add_option("--target", o.target, "Target file for morphism validation")->check(CLI::ExistingFile);
  }
  opt_of("functor-C")->add_flag("--weighted", o.weighted, "Bound total weight instead of word length");
  opt_of("fuzz")->add_option("--count", o.count, "Number of samples")->check(CLI::NonNegativeNumber);
  opt_of("fuzz")->add_option("--family", o.family, "valid, candidate, perturbed or cdga");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    try {
      if (!window.empty()) o.window = parse_window(window);
      Report r = entry->run(o);
      print(entry->name, o, r);
      return r.verdict ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
