#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "forge/io.hpp"
#include "forge/smash.hpp"

using namespace forge;

namespace {

struct Options {
  std::string json_path, out_path, report_path, field_text, r_path, hopf_name, base_name, lie_name;
  long max_dim = 65536;
  bool all_catalog = false, cross_check = false;
  std::string kind, name;
  int field() const {
    if (field_text.empty()) return 0;
    std::string t = field_text[0] == 'z' || field_text[0] == 'Z' ? field_text.substr(1) : field_text;
    try {
      size_t used = 0;
      int n = std::stoi(t, &used);
      if (used == t.size() && n >= 1) return n;
    } catch (...) {
    }
    throw InputError("--field expects z<n>, got '" + field_text + "'");
  }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

void guard(const Options& o, Index dim, const std::string& what) {
  if (static_cast<long double>(dim) * dim > static_cast<long double>(o.max_dim))
    throw InputError(what + ": tensor square dimension " + std::to_string(dim) + "^2 exceeds --max-dim " +
                     std::to_string(o.max_dim));
}

// dimension of a named Hopf algebra without building doubles
Index estimate_dim(const std::string& name, int field) {
  auto inner = [&](const std::string& head) -> std::optional<std::string> {
    if (name.rfind(head + "(", 0) == 0 && name.back() == ')') return name.substr(head.size() + 1, name.size() - head.size() - 2);
    return std::nullopt;
  };
  if (auto x = inner("double")) {
    Index d = estimate_dim(*x, field);
    return d * d;
  }
  if (auto x = inner("dual")) return estimate_dim(*x, field);
  return resolve_hopf(name, field)->dim();
}

HopfPtr load_hopf(const Options& o, const std::string& name) {
  guard(o, estimate_dim(name, o.field()), name);
  return resolve_hopf(name, o.field());
}

void require_name(const Options& o, const std::string& what) {
  if (o.name.empty()) throw InputError(what + " needs an object name");
}

int finish(const Options& o, const CheckReport& r) {
  std::cout << r.table();
  std::string path = !o.json_path.empty() ? o.json_path : o.report_path;
  if (!path.empty()) write_text(path, r.to_json() + "\n");
  return r.ok() ? 0 : 1;
}

void emit(const Options& o, const std::string& text) {
  if (o.out_path.empty())
    std::cout << text << "\n";
  else
    write_text(o.out_path, text + "\n");
}

// ---------- verify ----------

CheckReport verify_qt_named(const Options& o, const std::string& name) {
  HopfPtr h = load_hopf(o, name);
  std::vector<std::pair<std::string, Vec>> rs;
  if (!o.r_path.empty())
    rs.push_back({o.r_path, rmatrix_from_json(read_file(o.r_path), o.r_path, *h, std::max(1, o.field()))});
  else
    rs = catalog_r_matrices(name, o.field());
  if (rs.empty()) throw InputError("no R-matrix known for '" + name + "'; pass --r <file>");
  CheckReport r;
  r.object = "qt(" + h->name + ")";
  for (const auto& [label, R] : rs) {
    CheckReport one = check_qt(h, R);
    one.append(check_qybe(*h, R), "qybe");
    r.append(one, "R[" + label + "]");
  }
  return r;
}

CheckReport verify_fnbase(const RationalBase& b, const std::string& lie) {
  LieBialgebra h = lie.empty() ? LieBialgebra::zero(abelian_lie(std::vector<std::string>(b.nder() / 2, "H")))
                               : resolve_lie_bialgebra(lie);
  if (lie.empty()) {
    for (Index i = 0; i < h.dim(); ++i) h.h.labels[i] = "H" + std::to_string(i + 1);
  }
  return verify_function_base(b, lie_double_unchecked(h).d);
}

CheckReport verify_entry(const Options& o, const std::string& kind, const std::string& name) {
  if (kind == "hopf") {
    CheckReport r = verify_hopf(*load_hopf(o, name));
    return r;
  }
  if (kind == "qt") return verify_qt_named(o, name);
  if (kind == "base") {
    BasePtr b = resolve_base(name, o.field());
    guard(o, b->dim() * b->H->dim(), name);
    return verify_base_algebra(*b);
  }
  if (kind == "lie" || kind == "lie_bialgebra") {
    LieBialgebra b = resolve_lie_bialgebra(name);
    return verify_lie_bialgebra(b);
  }
  if (kind == "fnbase" || kind == "function_base") return verify_fnbase(resolve_function_base(name), o.lie_name);
  if (kind == "cdybe") {
    CdybeInstance c = resolve_cdybe(name);
    return verify_dynamical_rmatrix(c.setup, c.base, c.r).report;
  }
  if (kind == "bialgebroid") {
    Bialgebroid b = bialgebroid_from_json(read_file(name), name, std::max(1, o.field()));
    guard(o, b.dim(), name);
    return verify_bialgebroid(b);
  }
  if (kind == "cocycle") {
    CocycleInstance ci = cocycle_from_json(read_file(name), name, o.field());
    return verify_dynamical_cocycle(ci.dc);
  }
  throw InputError("unknown kind '" + kind + "' (hopf, qt, base, lie, fnbase, cdybe, bialgebroid, cocycle)");
}

int cmd_verify_all(const Options& o) {
  CheckReport all;
  all.object = "catalog";
  auto run = [&](const std::string& label, const std::function<CheckReport()>& fn) {
    CheckReport r = fn();
    std::cout << (r.ok() ? "PASS " : "FAIL ") << label;
    if (!r.ok()) std::cout << "  " << r.first_failure();
    std::cout << "\n";
    all.append(r, label);
  };
  for (const auto& e : catalog()) {
    const std::string& n = e.name;
    if (e.kind == "hopf") {
      std::string inst = n == "taft:n" ? "taft:3" : n;
      run(inst, [&] { return verify_hopf(*load_hopf(o, inst)); });
      if (!catalog_r_matrices(inst).empty()) run("qt:" + inst, [&] { return verify_qt_named(o, inst); });
    } else if (e.kind == "base") {
      run(n, [&] { return verify_entry(o, "base", n); });
    } else if (e.kind == "lie") {
      run(n, [&] { return verify_lie(resolve_lie_bialgebra(n).h); });
    } else if (e.kind == "lie_bialgebra") {
      run(n, [&] { return verify_lie_bialgebra(resolve_lie_bialgebra(n)); });
    } else if (e.kind == "function_base") {
      run(n, [&] { return verify_entry(o, "fnbase", n); });
    } else if (e.kind == "cdybe") {
      run(n, [&] {
        CdybeInstance c = resolve_cdybe(n);
        return cdybe_cross_check(c.setup, c.base, c.r);
      });
    }
  }
  std::cout << "=> " << (all.ok() ? "PASS" : "FAIL") << "\n";
  if (!o.json_path.empty()) write_text(o.json_path, all.to_json() + "\n");
  return all.ok() ? 0 : 1;
}

int cmd_verify(const Options& o) {
  if (o.all_catalog) return cmd_verify_all(o);
  if (o.kind.empty()) throw InputError("verify needs <kind> <name> or --all-catalog");
  require_name(o, "verify " + o.kind);
  return finish(o, verify_entry(o, o.kind, o.name));
}

// ---------- build ----------

std::string base_hopf_of(const std::string& base_name) {
  std::string s = base_name.rfind("base:", 0) == 0 ? base_name.substr(5) : base_name;
  if (s.rfind("adj", 0) == 0) return s.substr(3);
  if (s.rfind("base(", 0) == 0 && s.back() == ')') return s.substr(5, s.size() - 6);
  return "";
}

int build_groupoid(const Options& o) {
  if (o.hopf_name.empty() || o.base_name.empty()) throw InputError("build groupoid needs --hopf and --base");
  Index hd = estimate_dim(o.hopf_name, o.field());
  BasePtr base;
  QT qt;
  ModuleAction act;
  std::string inner;
  const std::string& hn = o.hopf_name;
  if (hn.rfind("double(", 0) == 0 && hn.back() == ')') {
    inner = hn.substr(7, hn.size() - 8);
    std::string bh = base_hopf_of(o.base_name);
    if (bh.empty()) throw InputError("base '" + o.base_name + "' is not an adjoint base");
    HopfPtr x = resolve_hopf(inner, o.field());
    if (resolve_hopf(bh, o.field())->name != x->name)
      throw InputError("base '" + o.base_name + "' is not over " + x->name);
    guard(o, hd * x->dim(), hn + " over " + o.base_name);
    Double dd = drinfeld_double(x);
    qt = verify_qt(dd.D, dd.Theta);
    base = std::make_shared<BaseAlgebra>(regular_base(dd.base));
    act = double_action(*base, dd);
  } else {
    HopfPtr h = load_hopf(o, hn);
    base = resolve_base(o.base_name, o.field());
    if (base->H->name != h->name || base->H->dim() != h->dim())
      throw InputError("base '" + o.base_name + "' is not over " + h->name);
    guard(o, hd * base->dim(), hn + " over " + o.base_name);
    Vec R;
    if (!o.r_path.empty()) {
      R = rmatrix_from_json(read_file(o.r_path), o.r_path, *h, std::max(1, o.field()));
    } else {
      auto rs = catalog_r_matrices(hn, o.field());
      if (rs.empty()) throw InputError("no R-matrix known for '" + hn + "'; pass --r <file>");
      R = rs.front().second;
    }
    qt = verify_qt(h, R);
    act = base->act;
  }
  QuantumGroupoid qg = quantum_groupoid(qt, base->L, act);
  qg.Q.name = hn + "_" + base->name;
  std::cout << "built " << qg.Q.name << " dim " << qg.Q.dim() << " over base dim " << qg.Q.base_dim()
            << " (L x| H dim " << qg.plus->B.dim() << ", J_phi dim " << qg.J.rank() << ")\n";
  const CheckLine* rl = nullptr;
  for (const auto& l : qg.report.lines)
    if (l.id.rfind("R.", 0) == 0 && l.status == Status::Fail) rl = &l;
  std::cout << "R certificate: " << (rl ? "FAIL " + rl->id : std::string("PASS")) << "\n";
  if (!o.out_path.empty()) write_text(o.out_path, bialgebroid_to_json(qg.Q) + "\n");
  return finish(o, qg.report);
}

int cmd_build(const Options& o) {
  const std::string& c = o.kind;
  if (c == "double" || c == "dual") {
    require_name(o, "build " + c);
    Index d = estimate_dim(o.name, o.field());
    guard(o, c == "double" ? d * d : d, c + "(" + o.name + ")");
    HopfPtr h = resolve_hopf(o.name, o.field());
    CheckReport r;
    HopfPtr out;
    if (c == "double") {
      Double dd = drinfeld_double(h);
      out = dd.D;
      r = verify_hopf(*out);
      r.append(check_qt(out, dd.Theta), "Theta");
    } else {
      out = std::make_shared<Hopf>(dual_hopf(*h));
      r = verify_hopf(*out);
    }
    r.object = out->name;
    std::cout << "built " << out->name << " dim " << out->dim() << "\n";
    if (!o.out_path.empty()) write_text(o.out_path, hopf_to_json(*out) + "\n");
    return finish(o, r);
  }
  if (c == "groupoid") return build_groupoid(o);
  if (c == "smash") {
    std::string bn = o.base_name.empty() ? o.name : o.base_name;
    if (bn.empty()) throw InputError("build smash needs --base");
    BasePtr b = resolve_base(bn, o.field());
    guard(o, b->dim() * b->H->dim(), "smash over " + bn);
    CheckReport r;
    SmashBialgebroid sb = smash_product(b, &r);
    r.append(verify_bialgebroid(sb.B), "bialgebroid");
    r.object = sb.B.name;
    std::cout << "built " << sb.B.name << " dim " << sb.B.dim() << " over base dim " << sb.B.base_dim() << "\n";
    if (!o.out_path.empty()) write_text(o.out_path, bialgebroid_to_json(sb.B) + "\n");
    return finish(o, r);
  }
  if (c == "twist") {
    require_name(o, "build twist");
    CocycleInstance ci = cocycle_from_json(read_file(o.name), o.name, o.field());
    guard(o, ci.dc.udim() * ci.dc.udim() * ci.base->dim() * ci.base->H->dim(), "twist " + o.name);
    CheckReport r;
    r.object = "twist(" + o.name + ")";
    r.append(verify_dynamical_cocycle(ci.dc), "cocycle");
    CheckReport rp;
    SmashBialgebroid plus = smash_qt(ci.qt, ci.base->L, ci.base->act, +1, &rp);
    r.append(rp, "L+");
    PsiTwist pt = psi_from_cocycle(ci.dc, plus);
    r.append(pt.report, "psi");
    std::cout << "built twisted U (x) (L+ x| H) dim " << pt.tw.B.dim() << "\n";
    if (!o.out_path.empty()) write_text(o.out_path, bialgebroid_to_json(pt.tw.B) + "\n");
    return finish(o, r);
  }
  if (c == "lie-double") {
    require_name(o, "build lie-double");
    LieDouble D = lie_double_unchecked(resolve_lie_bialgebra(o.name));
    std::cout << "built " << D.d.name << " dim " << D.d.dim() << "\n";
    return finish(o, verify_lie_double(D));
  }
  throw InputError("unknown construction '" + c + "' (double, dual, groupoid, smash, twist, lie-double)");
}

// ---------- check (classical) ----------

int cmd_check(const Options& o) {
  require_name(o, "check " + o.kind);
  if (o.kind == "compat") {
    LieBialgebra b = resolve_lie_bialgebra(o.name);
    std::string bn = o.base_name.empty() ? "points:1" : o.base_name;
    if (bn.rfind("points:", 0) == 0) {
      Index n = 0;
      try {
        n = std::stoul(bn.substr(7));
      } catch (...) {
        throw InputError("bad base '" + bn + "'");
      }
      return finish(o, lie_bialgebroid_compat(points_base(n, 2 * b.dim()), b));
    }
    return finish(o, lie_bialgebroid_compat(resolve_function_base(bn), b));
  }
  CdybeInstance c = resolve_cdybe(o.name);
  if (o.cross_check) return finish(o, cdybe_cross_check(c.setup, c.base, c.r));
  if (o.kind == "cdybe") return finish(o, verify_dynamical_rmatrix(c.setup, c.base, c.r).report);
  if (o.kind == "coboundary") {
    using M = MV<RationalBase>;
    return finish(o, verify_coboundary(c.setup, c.base, M::add(c.base, c.r, lambda0(c.setup, c.base))));
  }
  throw InputError("unknown check '" + o.kind + "' (cdybe, coboundary, compat)");
}

// ---------- export / catalog ----------

int cmd_export(const Options& o) {
  require_name(o, "export " + o.kind);
  if (o.kind == "hopf") {
    emit(o, hopf_to_json(*load_hopf(o, o.name)));
  } else if (o.kind == "lie" || o.kind == "lie_bialgebra") {
    emit(o, lie_bialgebra_to_json(resolve_lie_bialgebra(o.name)));
  } else if (o.kind == "bialgebroid") {
    emit(o, bialgebroid_to_json(bialgebroid_from_json(read_file(o.name), o.name, std::max(1, o.field()))));
  } else {
    throw InputError("unknown export kind '" + o.kind + "' (hopf, lie, bialgebroid)");
  }
  return 0;
}

int cmd_catalog() {
  for (const auto& e : catalog()) std::cout << e.name << "\t" << e.kind << "\t" << e.description << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"forge: exact verification of Hopf algebras, quantum groupoids and dynamical r-matrices"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--json", o.json_path, "write the report as JSON");
  app.add_option("--field", o.field_text, "cyclotomic field z<n>");
  app.add_option("--max-dim", o.max_dim, "refuse objects whose tensor square exceeds this dimension")
      ->check(CLI::PositiveNumber);

  auto* cat = app.add_subcommand("catalog", "list built-in objects");
  auto* ver = app.add_subcommand("verify", "run the verifier for an object");
  ver->add_option("kind", o.kind, "hopf | qt | base | lie | fnbase | cdybe | bialgebroid | cocycle");
  ver->add_option("name", o.name, "catalog name or JSON file");
  ver->add_option("--r", o.r_path, "R-matrix file for verify qt");
  ver->add_option("--lie", o.lie_name, "acting Lie bialgebra for verify fnbase");
  ver->add_flag("--all-catalog", o.all_catalog, "verify every catalog entry");

  auto* bld = app.add_subcommand("build", "construct and verify a derived object");
  bld->add_option("construction", o.kind, "double | dual | groupoid | smash | twist | lie-double")->required();
  bld->add_option("name", o.name, "input object");
  bld->add_option("--hopf", o.hopf_name, "Hopf algebra for groupoid");
  bld->add_option("--base", o.base_name, "base algebra for groupoid or smash");
  bld->add_option("--r", o.r_path, "R-matrix file");
  bld->add_option("--out", o.out_path, "export the built object");
  bld->add_option("--report", o.report_path, "write the report as JSON");

  auto* chk = app.add_subcommand("check", "classical dynamical r-matrix checks");
  chk->add_option("kind", o.kind, "cdybe | coboundary | compat")->required();
  chk->add_option("instance", o.name, "sl2-cartan, sl2-cartan-perturbed or a cdybe file")->required();
  chk->add_flag("--cross-check", o.cross_check, "run both verdicts and compare");
  chk->add_option("--base", o.base_name, "function base for compat (points:<n> or fnbase name)");

  auto* exp = app.add_subcommand("export", "write an object as a definition file");
  exp->add_option("kind", o.kind, "hopf | lie | bialgebroid")->required();
  exp->add_option("name", o.name, "catalog name or JSON file")->required();
  exp->add_option("--out", o.out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cat->parsed()) return cmd_catalog();
    if (ver->parsed()) return cmd_verify(o);
    if (bld->parsed()) return cmd_build(o);
    if (chk->parsed()) return cmd_check(o);
    if (exp->parsed()) return cmd_export(o);
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    std::cout << e.report.table();
    if (!o.json_path.empty()) write_text(o.json_path, e.report.to_json() + "\n");
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
