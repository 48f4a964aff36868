#include "twodescent/certificate.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace twodescent {

using json = nlohmann::ordered_json;

namespace {

// ---- serialization helpers ------------------------------------------------

std::string int_str(const Int& n) { return n.get_str(); }

Int parse_int(const json& j, const char* what) {
  if (!j.is_string())
    throw CertificateParseError(std::string(what) + ": expected string");
  try {
    return Int(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw CertificateParseError(std::string(what) + ": bad integer");
  }
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat parse_rat(const json& j, const char* what) {
  if (!j.is_string())
    throw CertificateParseError(std::string(what) + ": expected string");
  try {
    Rat q(j.get<std::string>());
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw CertificateParseError(std::string(what) + ": bad rational");
  }
}

json point_json(const Point& P) {
  json j;
  if (P.is_identity()) {
    j["infinity"] = true;
  } else {
    j["x"] = rat_str(P.x());
    j["y"] = rat_str(P.y());
  }
  return j;
}

Point parse_point(const json& j, const char* what) {
  if (!j.is_object())
    throw CertificateParseError(std::string(what) + ": expected object");
  if (j.contains("infinity")) return Point::identity();
  if (!j.contains("x") || !j.contains("y"))
    throw CertificateParseError(std::string(what) + ": missing coordinate");
  return Point(parse_rat(j["x"], what), parse_rat(j["y"], what));
}

json evidence_json(const PointEvidence& ev) {
  json j;
  j["name"] = ev.name;
  json p = point_json(ev.point);
  for (auto& [k, v] : p.items()) j[k] = v;
  return j;
}

PointEvidence parse_evidence(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("name"))
    throw CertificateParseError(std::string(what) + ": bad evidence");
  return PointEvidence{j["name"].get<std::string>(), parse_point(j, what)};
}

std::string place_str(const Place& pl) { return pl.str(); }

Place parse_place(const json& j, const char* what) {
  if (!j.is_string())
    throw CertificateParseError(std::string(what) + ": expected place string");
  std::string s = j.get<std::string>();
  if (s == "inf") return Place::real();
  return Place::finite(parse_int(j, what));
}

json verdict_json(const LocalVerdict& v) {
  json j;
  j["place"] = place_str(v.place);
  j["solvable"] = v.solvable;
  if (v.solvable) {
    if (v.place.is_real()) {
      if (v.real_sample) j["sample"] = rat_str(*v.real_sample);
    } else if (v.qp_witness) {
      const QpWitness& w = *v.qp_witness;
      json wj;
      wj["kind"] = w.kind == QpWitness::Kind::UnitSquare ? "unit_square"
                                                         : "poly_root";
      wj["chart"] = w.at_infinity_chart ? "infinity" : "affine";
      wj["x"] = int_str(w.x);
      wj["y"] = int_str(w.y);
      wj["val_bound"] = w.val_bound;
      j["witness"] = wj;
    }
  } else {
    j["refutation_depth"] = v.refutation_depth;
  }
  return j;
}

LocalVerdict parse_verdict(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("place") || !j.contains("solvable"))
    throw CertificateParseError(std::string(what) + ": bad verdict");
  LocalVerdict v;
  v.place = parse_place(j["place"], what);
  v.solvable = j["solvable"].get<bool>();
  if (v.solvable) {
    if (j.contains("sample")) v.real_sample = parse_rat(j["sample"], what);
    if (j.contains("witness")) {
      const json& wj = j["witness"];
      QpWitness w;
      std::string kind = wj.at("kind").get<std::string>();
      w.kind = kind == "unit_square" ? QpWitness::Kind::UnitSquare
                                     : QpWitness::Kind::PolyRoot;
      w.at_infinity_chart = wj.at("chart").get<std::string>() == "infinity";
      w.x = parse_int(wj.at("x"), what);
      w.y = parse_int(wj.at("y"), what);
      w.val_bound = wj.at("val_bound").get<long>();
      v.qp_witness = w;
    }
  } else if (j.contains("refutation_depth")) {
    v.refutation_depth = j["refutation_depth"].get<long>();
  }
  return v;
}

json selmer_json(const SelmerGroup& sel) {
  json j;
  j["isogeny"] = tag_name(sel.tag);
  json primes = json::array();
  for (const Int& p : sel.test_primes) primes.push_back(int_str(p));
  j["test_primes"] = primes;
  json elems = json::array();
  for (const auto& el : sel.elements) {
    json e;
    e["class"] = int_str(el.cls.rep());
    if (el.point) e["point"] = evidence_json(*el.point);
    json locals = json::array();
    for (const auto& v : el.local) locals.push_back(verdict_json(v));
    e["local"] = locals;
    elems.push_back(e);
  }
  j["elements"] = elems;
  json exc = json::array();
  for (const auto& ex : sel.excluded) {
    json e;
    e["class"] = int_str(ex.cls.rep());
    e["failing_place"] = place_str(ex.failing_place);
    e["verdict"] = verdict_json(ex.verdict);
    exc.push_back(e);
  }
  j["excluded"] = exc;
  return j;
}

SelmerGroup parse_selmer(const json& j, IsogenyTag tag, const char* what) {
  if (!j.is_object() || !j.contains("elements") || !j.contains("excluded"))
    throw CertificateParseError(std::string(what) + ": bad selmer section");
  SelmerGroup sel;
  sel.tag = tag;
  for (const auto& pj : j.at("test_primes"))
    sel.test_primes.push_back(parse_int(pj, what));
  for (const auto& ej : j.at("elements")) {
    SelmerElement el;
    el.cls = SquareClass::from_squarefree(parse_int(ej.at("class"), what));
    if (ej.contains("point")) el.point = parse_evidence(ej["point"], what);
    for (const auto& vj : ej.at("local"))
      el.local.push_back(parse_verdict(vj, what));
    sel.elements.push_back(std::move(el));
  }
  for (const auto& ej : j.at("excluded")) {
    ExcludedCandidate ex;
    ex.cls = SquareClass::from_squarefree(parse_int(ej.at("class"), what));
    ex.failing_place = parse_place(ej.at("failing_place"), what);
    ex.verdict = parse_verdict(ej.at("verdict"), what);
    sel.excluded.push_back(std::move(ex));
  }
  return sel;
}

}  // namespace

std::string certificate_to_json(const RankCertificate& cert,
                                const TimingInfo* timing) {
  json j;
  j["schema_version"] = kCertificateSchema;

  json pair;
  pair["m"] = int_str(cert.pair.m());
  pair["n"] = int_str(cert.pair.n());
  pair["m_plus_16n2"] = int_str(cert.pair.p16());
  pair["m_plus_25n2"] = int_str(cert.pair.p25());
  j["pair"] = pair;

  json curves;
  curves["E"] = {{"a", int_str(cert.a)}, {"b", int_str(cert.b)}};
  curves["E_dual"] = {{"a", int_str(cert.a_dual)},
                      {"b", int_str(cert.b_dual)}};
  curves["discriminant"] = int_str(cert.discriminant);
  j["curves"] = curves;

  json points;
  for (const auto& mp : cert.marked_points)
    points[mp.name] = point_json(mp.point);
  j["points"] = points;

  j["selmer_phi"] = selmer_json(cert.sel_phi);
  j["selmer_phi_hat"] = selmer_json(cert.sel_phihat);

  json wmw;
  wmw["exact"] = cert.weak_mw.exact;
  if (cert.weak_mw.exact) wmw["order"] = int_str(cert.weak_mw.order);
  wmw["lower"] = int_str(cert.weak_mw.lower);
  wmw["upper"] = int_str(cert.weak_mw.upper);
  wmw["kernel_order"] = int_str(cert.weak_mw.kernel_order);
  json wgens = json::array();
  for (const auto& g : cert.weak_mw.generators)
    wgens.push_back(evidence_json(g));
  wmw["generators"] = wgens;
  j["weak_mw"] = wmw;

  json tors;
  tors["order"] = int_str(cert.torsion.order);
  tors["structure"] = cert.torsion.structure;
  json tel = json::array();
  for (const auto& P : cert.torsion.elements) tel.push_back(point_json(P));
  tors["elements"] = tel;
  json tgen = json::array();
  for (const auto& P : cert.torsion.generators) tgen.push_back(point_json(P));
  tors["generators"] = tgen;
  j["torsion"] = tors;

  if (cert.rank.exact) {
    j["rank"] = cert.rank.value;
  } else {
    j["rank"] = {{"lower", cert.rank.lower}, {"upper", cert.rank.upper}};
  }

  json gmt = json::array();
  for (const auto& g : cert.generators_mod_torsion)
    gmt.push_back(evidence_json(g));
  j["generators_mod_torsion"] = gmt;

  j["j_invariant"] = {{"num", int_str(Int(cert.j.get_num()))},
                      {"den", int_str(Int(cert.j.get_den()))}};
  j["sha2_witnessed_trivial"] = cert.sha2_witnessed_trivial;

  json locals = json::array();
  for (const auto& ld : cert.local_data) {
    json l;
    l["p"] = int_str(ld.p);
    l["kodaira"] = ld.kodaira.str();
    l["conductor_exponent"] = ld.conductor_exponent;
    l["tamagawa"] = int_str(ld.tamagawa);
    l["minimal"] = ld.minimal;
    locals.push_back(l);
  }
  j["local_data"] = locals;

  if (timing) {
    j["timing"] = {{"total_seconds", timing->total_seconds},
                   {"selmer_seconds", timing->selmer_seconds}};
  }
  return j.dump(2) + "\n";
}

RankCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CertificateParseError(std::string("bad JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("schema_version"))
      throw CertificateParseError("missing schema_version");
    if (j["schema_version"].get<std::string>() != kCertificateSchema)
      throw CertificateParseError("unknown schema version");

    const json& pj = j.at("pair");
    FamilyPair pair(parse_int(pj.at("m"), "pair.m"),
                    parse_int(pj.at("n"), "pair.n"));
    if (pair.p16() != parse_int(pj.at("m_plus_16n2"), "pair") ||
        pair.p25() != parse_int(pj.at("m_plus_25n2"), "pair"))
      throw domain_error("pair: stored primes inconsistent");

    RankCertificate cert(pair);
    const json& cj = j.at("curves");
    cert.a = parse_int(cj.at("E").at("a"), "curves.E.a");
    cert.b = parse_int(cj.at("E").at("b"), "curves.E.b");
    cert.a_dual = parse_int(cj.at("E_dual").at("a"), "curves.E_dual.a");
    cert.b_dual = parse_int(cj.at("E_dual").at("b"), "curves.E_dual.b");
    cert.discriminant = parse_int(cj.at("discriminant"), "discriminant");

    for (const auto& [name, pj2] : j.at("points").items())
      cert.marked_points.push_back({name, parse_point(pj2, "points")});

    cert.sel_phi = parse_selmer(j.at("selmer_phi"), IsogenyTag::Phi, "selmer_phi");
    cert.sel_phihat =
        parse_selmer(j.at("selmer_phi_hat"), IsogenyTag::PhiHat, "selmer_phi_hat");

    const json& wj = j.at("weak_mw");
    cert.weak_mw.exact = wj.at("exact").get<bool>();
    if (wj.contains("order"))
      cert.weak_mw.order = parse_int(wj.at("order"), "weak_mw.order");
    cert.weak_mw.lower = parse_int(wj.at("lower"), "weak_mw.lower");
    cert.weak_mw.upper = parse_int(wj.at("upper"), "weak_mw.upper");
    cert.weak_mw.kernel_order =
        parse_int(wj.at("kernel_order"), "weak_mw.kernel_order");
    for (const auto& gj : wj.at("generators"))
      cert.weak_mw.generators.push_back(parse_evidence(gj, "weak_mw"));

    const json& tj = j.at("torsion");
    cert.torsion.order = parse_int(tj.at("order"), "torsion.order");
    cert.torsion.structure = tj.at("structure").get<std::string>();
    for (const auto& ej : tj.at("elements"))
      cert.torsion.elements.push_back(parse_point(ej, "torsion.elements"));
    for (const auto& gj : tj.at("generators"))
      cert.torsion.generators.push_back(parse_point(gj, "torsion.generators"));

    const json& rj = j.at("rank");
    if (rj.is_number_integer()) {
      cert.rank.exact = true;
      cert.rank.value = rj.get<long>();
      cert.rank.lower = cert.rank.upper = cert.rank.value;
    } else {
      cert.rank.exact = false;
      cert.rank.lower = rj.at("lower").get<long>();
      cert.rank.upper = rj.at("upper").get<long>();
    }

    for (const auto& gj : j.at("generators_mod_torsion"))
      cert.generators_mod_torsion.push_back(
          parse_evidence(gj, "generators_mod_torsion"));

    const json& jj = j.at("j_invariant");
    Int num = parse_int(jj.at("num"), "j.num");
    Int den = parse_int(jj.at("den"), "j.den");
    if (den == 0) throw domain_error("j_invariant: zero denominator");
    cert.j = Rat(num, den);
    cert.j.canonicalize();

    cert.sha2_witnessed_trivial = j.at("sha2_witnessed_trivial").get<bool>();

    for (const auto& lj : j.at("local_data")) {
      LocalData ld;
      ld.p = parse_int(lj.at("p"), "local_data.p");
      ld.kodaira = KodairaSymbol::parse(lj.at("kodaira").get<std::string>());
      ld.conductor_exponent = lj.at("conductor_exponent").get<int>();
      ld.tamagawa = parse_int(lj.at("tamagawa"), "local_data.tamagawa");
      ld.minimal = lj.at("minimal").get<bool>();
      cert.local_data.push_back(std::move(ld));
    }
    return cert;
  } catch (const json::exception& e) {
    throw CertificateParseError(std::string("bad certificate structure: ") +
                                e.what());
  }
}

// ---- verification -----------------------------------------------------------

namespace {

struct Checker {
  std::string failure;
  bool failed = false;
  bool check(bool cond, const std::string& what) {
    if (!cond && !failed) {
      failed = true;
      failure = what;
    }
    return cond;
  }
};

bool verify_selmer(Checker& ck, const FamilyCurves& F, const SelmerGroup& sel,
                   IsogenyTag tag) {
  const std::string label =
      std::string("selmer_") + tag_name(tag) + ": ";
  const DescentCurve& dc = tag == IsogenyTag::Phi ? F.Eprime() : F.E();

  // partition: elements + excluded must be exactly the candidate classes
  std::multiset<Int> claimed;
  for (const auto& e : sel.elements) claimed.insert(e.cls.rep());
  for (const auto& e : sel.excluded) claimed.insert(e.cls.rep());
  std::multiset<Int> expected;
  for (const auto& c : selmer_candidates(dc)) expected.insert(c.rep());
  if (!ck.check(claimed == expected, label + "candidate partition broken"))
    return false;

  // expected test set
  std::set<Int> s_primes = {2, 3, 5, 7, 11, 13};
  auto absorb = [&s_primes](const Int& n) {
    for (const auto& [p, e] : factor(n)) {
      (void)e;
      s_primes.insert(p);
    }
  };
  absorb(dc.b());
  absorb(dc.a() * dc.a() - 4 * dc.b());
  std::set<Int> stored(sel.test_primes.begin(), sel.test_primes.end());
  if (!ck.check(stored == s_primes, label + "test prime set mismatch"))
    return false;

  // subgroup axioms
  auto contains = [&sel](const SquareClass& c) { return sel.contains(c); };
  if (!ck.check(contains(SquareClass::from_squarefree(Int(1))),
                label + "1 missing"))
    return false;
  for (const auto& x : sel.elements)
    for (const auto& y : sel.elements)
      if (!ck.check(contains(x.cls * y.cls), label + "not closed under product"))
        return false;

  // marked-point combinations for name consistency
  std::vector<PointEvidence> combos;
  const DescentCurve& pc = dc;
  if (tag == IsogenyTag::Phi) {
    combos = {{"O", Point::identity()},
              {"Q0", F.Q0()},
              {"Q1", F.Q1()},
              {"Q0+Q1", add(pc, F.Q0(), F.Q1())}};
  } else {
    combos = {{"O", Point::identity()},
              {"P0", F.P0()},
              {"P1", F.P1()},
              {"P0+P1", add(pc, F.P0(), F.P1())}};
  }

  for (const auto& el : sel.elements) {
    // local evidence must cover the real place and every test prime
    std::set<Int> covered;
    bool real_covered = false;
    QuarticModel space = descent_space(el.cls, dc);
    for (const auto& v : el.local) {
      if (!ck.check(v.solvable, label + "element verdict not solvable"))
        return false;
      if (v.place.is_real()) {
        real_covered = true;
        if (!ck.check(v.real_sample.has_value(),
                      label + "real verdict missing sample"))
          return false;
        QPoly f = space.integral_model().to_qpoly();
        if (!ck.check(f.eval(*v.real_sample) >= 0,
                      label + "real sample does not certify"))
          return false;
      } else {
        covered.insert(v.place.prime());
        if (!ck.check(v.qp_witness.has_value(),
                      label + "finite verdict missing witness"))
          return false;
        if (!ck.check(check_qp_witness(space, v.place.prime(), *v.qp_witness),
                      label + "witness replay failed at p=" +
                          v.place.prime().get_str()))
          return false;
      }
    }
    if (!ck.check(real_covered && covered == s_primes,
                  label + "element evidence does not cover all places"))
      return false;

    if (el.point) {
      if (!ck.check(dc.contains(el.point->point),
                    label + "evidence point off curve"))
        return false;
      if (!ck.check(connecting_map(dc, el.point->point) == el.cls,
                    label + "evidence point image mismatch"))
        return false;
      // a named combination must actually be that combination
      bool name_ok = true;
      for (const auto& c : combos)
        if (c.name == el.point->name) name_ok = (c.point == el.point->point);
      if (!ck.check(name_ok, label + "evidence name inconsistent")) return false;
    }
  }

  // excluded candidates: replay the refusal at the failing place
  for (const auto& ex : sel.excluded) {
    QuarticModel space = descent_space(ex.cls, dc);
    if (ex.failing_place.is_real()) {
      if (!ck.check(!has_real_point(space).solvable,
                    label + "excluded class has a real point"))
        return false;
    } else {
      if (!ck.check(s_primes.count(ex.failing_place.prime()) == 1,
                    label + "failing place outside test set"))
        return false;
      if (!ck.check(!has_qp_point(space, ex.failing_place.prime()).solvable,
                    label + "excluded class solvable at claimed place"))
        return false;
    }
  }
  return true;
}

}  // namespace

VerifyResult verify_certificate(const RankCertificate& cert) {
  Checker ck;
  VerifyResult out;

  // 1. pair validity and curve arithmetic
  PairCheck pc = is_valid_pair(cert.pair.m(), cert.pair.n());
  if (!ck.check(pc.ok, "pair: " + pc.reason)) {
    out.first_failure = ck.failure;
    return out;
  }
  FamilyCurves F(cert.pair);
  ck.check(cert.a == F.E().a() && cert.b == F.E().b(),
           "curve coefficients of E do not match the pair");
  ck.check(cert.a_dual == F.Eprime().a() && cert.b_dual == F.Eprime().b(),
           "dual curve coefficients do not match");
  ck.check(cert.discriminant == F.discriminant(),
           "discriminant does not match the product formula");

  // marked points: exactly the five named points of the pair, on curve
  {
    std::vector<PointEvidence> expect = {{"P0", F.P0()},
                                         {"P1", F.P1()},
                                         {"P2", F.P2()},
                                         {"Q0", F.Q0()},
                                         {"Q1", F.Q1()}};
    ck.check(cert.marked_points.size() == expect.size(),
             "marked point list has wrong length");
    for (const auto& want : expect) {
      bool found = false;
      for (const auto& got : cert.marked_points)
        if (got.name == want.name && got.point == want.point) found = true;
      ck.check(found, "marked point " + want.name + " missing or wrong");
    }
  }

  // 2. Selmer groups with full witness replay
  if (!ck.failed) verify_selmer(ck, F, cert.sel_phi, IsogenyTag::Phi);
  if (!ck.failed) verify_selmer(ck, F, cert.sel_phihat, IsogenyTag::PhiHat);

  // 3. exact-sequence bookkeeping
  if (!ck.failed) {
    WeakMWResult wmw = weak_mw_mod2(cert.sel_phi, cert.sel_phihat, F);
    ck.check(wmw.exact == cert.weak_mw.exact &&
                 wmw.lower == cert.weak_mw.lower &&
                 wmw.upper == cert.weak_mw.upper &&
                 wmw.kernel_order == cert.weak_mw.kernel_order &&
                 (!wmw.exact || wmw.order == cert.weak_mw.order),
             "weak Mordell-Weil bookkeeping mismatch");
    if (!ck.failed) {
      ck.check(cert.weak_mw.generators.size() == wmw.generators.size(),
               "weak MW generator count mismatch");
      for (std::size_t i = 0;
           !ck.failed && i < cert.weak_mw.generators.size(); ++i) {
        ck.check(cert.weak_mw.generators[i].point == wmw.generators[i].point &&
                     cert.weak_mw.generators[i].name == wmw.generators[i].name,
                 "weak MW generator mismatch");
        ck.check(F.E().contains(cert.weak_mw.generators[i].point) ||
                     F.Eprime().contains(cert.weak_mw.generators[i].point),
                 "weak MW generator off curve");
      }
    }
  }

  // 4. torsion (recompute both routes)
  if (!ck.failed) {
    TorsionGroup tors = torsion_subgroup(F);
    ck.check(tors.order == cert.torsion.order &&
                 tors.structure == cert.torsion.structure,
             "torsion subgroup mismatch");
    for (const auto& P : cert.torsion.elements)
      ck.check(F.E().contains(P) &&
                   mul(F.E(), cert.torsion.order, P).is_identity(),
               "claimed torsion point is not torsion");
  }

  // 5. rank bookkeeping
  if (!ck.failed) {
    try {
      RankBound want = rank_from(cert.weak_mw, cert.torsion.two_rank());
      ck.check(cert.rank.exact == want.exact &&
                   cert.rank.lower == want.lower &&
                   cert.rank.upper == want.upper &&
                   (!want.exact || cert.rank.value == want.value),
               "rank does not match the descent bookkeeping");
    } catch (const internal_error&) {
      ck.check(false, "group order is not a power of two");
    }
  }

  // 6. generators mod torsion
  if (!ck.failed) {
    for (const auto& g : cert.generators_mod_torsion) {
      ck.check(F.E().contains(g.point), "generator off curve");
      for (const auto& t : cert.torsion.elements)
        ck.check(!(g.point == t), "torsion point listed as free generator");
    }
  }

  // 7. sha[2]-triviality flag
  if (!ck.failed) {
    ck.check(cert.sha2_witnessed_trivial ==
                 (cert.sel_phi.fully_evidenced() &&
                  cert.sel_phihat.fully_evidenced()),
             "sha2_witnessed_trivial flag inconsistent with evidence");
  }

  // 8. j-invariant: formula, lowest terms, inversion
  if (!ck.failed) {
    ck.check(cert.j == j_invariant(cert.pair), "j-invariant mismatch");
    Int g;
    mpz_gcd(g.get_mpz_t(), cert.j.get_num().get_mpz_t(),
            cert.j.get_den().get_mpz_t());
    ck.check(g == 1, "j-invariant not in lowest terms");
    if (!ck.failed) {
      try {
        FamilyPair rec = recover_pair(cert.j);
        ck.check(rec == cert.pair, "recover_pair does not invert j");
      } catch (const domain_error&) {
        ck.check(false, "recover_pair failed on the stored j");
      }
    }
  }

  // 9. local reduction data replay
  if (!ck.failed) {
    std::vector<Int> bad = F.bad_primes();
    ck.check(cert.local_data.size() == bad.size(),
             "local data table has wrong length");
    for (std::size_t i = 0; !ck.failed && i < cert.local_data.size(); ++i) {
      const LocalData& ld = cert.local_data[i];
      ck.check(ld.p == bad[i], "local data prime list mismatch");
      if (ck.failed) break;
      LocalData re = tate_local_data(F, ld.p);
      ck.check(re.kodaira == ld.kodaira &&
                   re.conductor_exponent == ld.conductor_exponent &&
                   re.tamagawa == ld.tamagawa && re.minimal == ld.minimal,
               "local data replay mismatch at p=" + ld.p.get_str());
    }
  }

  out.ok = !ck.failed;
  out.first_failure = ck.failure;
  return out;
}

VerifyResult verify_certificate_text(const std::string& text) {
  try {
    RankCertificate cert = certificate_from_json(text);
    return verify_certificate(cert);
  } catch (const CertificateParseError&) {
    throw;
  } catch (const std::exception& e) {
    return VerifyResult{false, e.what()};
  }
}

}  // namespace twodescent
