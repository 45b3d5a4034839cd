#pragma once

// The workspace language: declarations of algebras, homs and Mor algebras, plus tasks (checks,
// character enumeration, representation search) that produce a line-oriented report.
//
//   algebra C2 = blocks [1,1]
//   algebra A = present < p!, q! | p p = p, q q = q >
//   hom f : C3 -> C2 = images { e[1,1,1] -> e[1,1,1], e[2,1,1] -> e[2,1,1], e[3,1,1] -> 0 }
//   mor M = build C2 C2
//   check coassoc M
//   abelianize A; characters A
//   repsearch M dim 2
//
// Declarations are evaluated while parsing, so dangling names and bad homs are reported with
// their position. Tasks run afterwards.

#include "qmor/characters.hpp"
#include "qmor/fd_random.hpp"
#include "qmor/structure_maps.hpp"
#include "qmor/text.hpp"

#include <chrono>
#include <future>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace qmor {

struct KindMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using BindingValue = std::variant<FdAlgebra, Presentation, StarHom, PresentedHom, MorPresentation>;

inline const char* kind_name(const BindingValue& v) {
  switch (v.index()) {
    case 0: return "algebra";
    case 1: return "presented algebra";
    case 2: return "hom";
    case 3: return "presented hom";
    case 4: return "mor";
  }
  return "?";
}

struct Binding {
  std::string name;
  SourcePos pos;
  BindingValue value;
};

struct Statement {
  enum class Kind { blocks, present, hom, mor, check, abelianize, characters, repsearch };
  Kind kind = Kind::blocks;
  SourcePos pos;
  std::string name;                    // bound or referenced name
  std::vector<std::size_t> blocks;     // blocks
  std::string presentation;            // present: canonical text
  std::string source, target;          // hom: A -> B; mor: build B C
  std::vector<std::pair<std::string, std::string>> images;  // hom: canonical key and value text
  bool eliminate = false;              // mor
  std::string check;                   // check kind
  std::vector<std::string> args;       // check arguments
  std::size_t dimension = 0;           // repsearch

  bool is_task() const {
    return kind == Kind::check || kind == Kind::characters || kind == Kind::repsearch ||
           (kind == Kind::hom && !images.empty() && presented_hom);
  }
  bool presented_hom = false;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.name == b.name && a.blocks == b.blocks && a.presentation == b.presentation &&
           a.source == b.source && a.target == b.target && a.images == b.images && a.eliminate == b.eliminate &&
           a.check == b.check && a.args == b.args && a.dimension == b.dimension;
  }
};

struct Workspace {
  std::vector<Statement> statements;
  std::map<std::string, Binding> bindings;

  const Binding& get(const std::string& name) const {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw UnknownSymbol("unknown name '" + name + "'");
    return it->second;
  }
};

struct WorkspaceOptions {
  std::size_t budget = kDefaultBudget;
};

inline const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> k = {"explaw", "coassoc", "functor", "surjective", "slice-lemma",
                                             "dirsum", "tensor-split", "phi"};
  return k;
}

// ---------------------------------------------------------------------------
// Helpers shared by parsing and checks.

namespace detail {

inline std::string format_fd_poly(const FreeStarPoly& p, const FdPresentation& fp) {
  std::vector<std::size_t> unit_of_letter(2 * fp.presentation.generator_count());
  for (std::size_t a = 0; a < fp.algebra.dim(); ++a) unit_of_letter[fp.basis_letter[a]] = a;
  return format_terms(p, [&](const Word& w) {
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " " : "") + format_unit(fp.algebra, unit_of_letter[w[k]]);
    return s;
  });
}

// Presentation view of anything algebra-like.
inline std::optional<Presentation> as_presentation(const BindingValue& v) {
  if (auto a = std::get_if<FdAlgebra>(&v)) return present(*a).presentation;
  if (auto p = std::get_if<Presentation>(&v)) return *p;
  if (auto m = std::get_if<MorPresentation>(&v)) return m->base;
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parser.

class WorkspaceParser {
 public:
  WorkspaceParser(const std::string& text, const WorkspaceOptions& opt) : ts_(tokenize(text)), opt_(opt) {}

  Workspace run() {
    for (;;) {
      while (ts_.peek().kind == Tok::newline || ts_.at_symbol(";")) ts_.next();
      if (ts_.peek().kind == Tok::end) break;
      statement();
      const Token& t = ts_.peek();
      if (t.kind == Tok::end) break;
      if (t.kind == Tok::newline || (t.kind == Tok::symbol && t.text == ";")) {
        ts_.next();
        continue;
      }
      ts_.fail({"end of line", "';'"});
    }
    return std::move(ws_);
  }

 private:
  const Binding& lookup(const Token& t) {
    auto it = ws_.bindings.find(t.text);
    if (it == ws_.bindings.end()) throw ParseError(t.pos, "unknown name '" + t.text + "'");
    return it->second;
  }

  void bind(const Token& name, BindingValue v) {
    ws_.bindings.insert_or_assign(name.text, Binding{name.text, name.pos, std::move(v)});
  }

  void fresh(const Token& name) {
    if (ws_.bindings.count(name.text)) throw ParseError(name.pos, "name '" + name.text + "' is already bound");
  }

  void statement() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::ident) ts_.fail({"'algebra'", "'hom'", "'mor'", "'check'", "'abelianize'", "'characters'", "'repsearch'"});
    const std::string kw = t.text;
    if (kw == "algebra") return algebra();
    if (kw == "hom") return hom();
    if (kw == "mor") return mor();
    if (kw == "check") return check();
    if (kw == "abelianize") return abelianize();
    if (kw == "characters") return characters();
    if (kw == "repsearch") return repsearch();
    ts_.fail({"'algebra'", "'hom'", "'mor'", "'check'", "'abelianize'", "'characters'", "'repsearch'"});
  }

  void algebra() {
    Statement s;
    s.pos = ts_.next().pos;
    const Token name = ts_.expect_ident("algebra name");
    fresh(name);
    s.name = name.text;
    ts_.expect_symbol("=");
    if (ts_.at_ident("blocks")) {
      ts_.next();
      s.kind = Statement::Kind::blocks;
      const Token open = ts_.expect_symbol("[");
      ts_.open();
      for (;;) {
        const std::size_t n = ts_.expect_int("block size");
        if (n == 0) throw ParseError(open.pos, "block sizes must be positive");
        s.blocks.push_back(n);
        if (!ts_.accept_symbol(",")) break;
      }
      ts_.close();
      ts_.expect_symbol("]");
      bind(name, FdAlgebra(s.blocks));
    } else if (ts_.at_ident("present")) {
      ts_.next();
      s.kind = Statement::Kind::present;
      Presentation p = parse_presentation_body(ts_);
      s.presentation = format_presentation(p);
      bind(name, std::move(p));
    } else {
      ts_.fail({"'blocks'", "'present'"});
    }
    ws_.statements.push_back(std::move(s));
  }

  void hom() {
    Statement s;
    s.kind = Statement::Kind::hom;
    s.pos = ts_.next().pos;
    const Token name = ts_.expect_ident("hom name");
    fresh(name);
    s.name = name.text;
    ts_.expect_symbol(":");
    const Token src = ts_.expect_ident("source algebra");
    ts_.expect_symbol("->");
    const Token dst = ts_.expect_ident("target algebra");
    s.source = src.text;
    s.target = dst.text;
    const Binding& sb = lookup(src);
    const Binding& db = lookup(dst);
    auto sp = detail::as_presentation(sb.value);
    auto dp = detail::as_presentation(db.value);
    if (!sp) throw ParseError(src.pos, "'" + src.text + "' is a " + kind_name(sb.value) + ", not an algebra");
    if (!dp) throw ParseError(dst.pos, "'" + dst.text + "' is a " + kind_name(db.value) + ", not an algebra");
    std::optional<FdPresentation> sfd, dfd;
    if (auto a = std::get_if<FdAlgebra>(&sb.value)) sfd = present(*a);
    if (auto a = std::get_if<FdAlgebra>(&db.value)) dfd = present(*a);

    ts_.expect_symbol("=");
    ts_.expect_keyword("images");
    ts_.expect_symbol("{");
    ts_.open();
    // Source letter -> image polynomial over the target presentation.
    std::map<Letter, std::pair<FreeStarPoly, SourcePos>> given;
    if (!ts_.at_symbol("}")) {
      for (;;) {
        const Token key = ts_.peek();
        Letter l;
        if (key.kind == Tok::ident && key.text == "e" && sfd) {
          ts_.next();
          TokenStream& t = ts_;
          t.expect_symbol("[");
          const std::size_t k = t.expect_int(), i = (t.expect_symbol(","), t.expect_int()),
                            j = (t.expect_symbol(","), t.expect_int());
          t.expect_symbol("]");
          const FdAlgebra& A = sfd->algebra;
          if (k < 1 || k > A.block_count() || i < 1 || j < 1 || i > A.block_size(k - 1) || j > A.block_size(k - 1))
            throw ParseError(key.pos, "matrix unit out of range for " + A.str());
          l = sfd->basis_letter[A.index(k - 1, i - 1, j - 1)];
        } else {
          const Token g = ts_.expect_ident("source generator or e[k,i,j]");
          auto idx = sp->find(g.text);
          if (!idx) throw ParseError(g.pos, "'" + g.text + "' is not a generator of '" + src.text + "'");
          l = make_letter(*idx);
        }
        ts_.expect_symbol("->");
        FreeStarPoly v = ExprParser(ts_, *dp, dfd ? &*dfd : nullptr).expr();
        if (given.count(l)) throw ParseError(key.pos, "image given twice");
        given.emplace(l, std::make_pair(std::move(v), key.pos));
        if (!ts_.accept_symbol(",")) break;
      }
    }
    ts_.close();
    ts_.expect_symbol("}");

    // Images per source generator; an image for an adjoint letter determines the generator's.
    std::vector<FreeStarPoly> images(sp->generator_count());
    std::vector<bool> have(sp->generator_count(), false);
    for (const auto& [l, v] : given) {
      const std::size_t g = generator_of(l);
      FreeStarPoly x = is_adjoint(l) && !sp->generator(g).self_adjoint ? dp->adjoint(v.first) : v.first;
      if (have[g]) {
        if (dp->canonical(x) != images[g])
          throw ParseError(v.second, "images of a matrix unit and its adjoint disagree");
        continue;
      }
      images[g] = dp->canonical(x);
      have[g] = true;
    }
    for (std::size_t g = 0; g < have.size(); ++g)
      if (!have[g]) {
        const std::string what = sfd ? format_unit(sfd->algebra, generator_basis(*sfd)[g]) : sp->generator(g).name;
        throw ParseError(s.pos, "hom '" + s.name + "': missing image for " + what);
      }

    for (std::size_t g = 0; g < images.size(); ++g) {
      const std::string key = sfd ? format_unit(sfd->algebra, generator_basis(*sfd)[g]) : sp->generator(g).name;
      const std::string value = dfd ? detail::format_fd_poly(images[g], *dfd) : format_poly(images[g], *dp);
      s.images.emplace_back(key, value);
    }

    if (sfd && dfd) {
      std::vector<FdElement> im(sfd->algebra.dim(), FdElement(dfd->algebra));
      const auto basis = generator_basis(*sfd);
      for (std::size_t g = 0; g < images.size(); ++g) {
        im[basis[g]] = evaluate_in(*dfd, images[g]);
        im[sfd->algebra.adjoint_index(basis[g])] = im[basis[g]].adjoint();
      }
      try {
        bind(name, make_hom(sfd->algebra, dfd->algebra, std::move(im)));
      } catch (const HomViolation& e) {
        throw ParseError(s.pos, "hom '" + s.name + "' is not a unital *-homomorphism: " + e.what());
      }
    } else {
      s.presented_hom = true;
      bind(name, make_presented_hom(s.name, *sp, *dp, std::move(images), opt_.budget));
    }
    ws_.statements.push_back(std::move(s));
  }

  void mor() {
    Statement s;
    s.kind = Statement::Kind::mor;
    s.pos = ts_.next().pos;
    const Token name = ts_.expect_ident("mor name");
    fresh(name);
    s.name = name.text;
    ts_.expect_symbol("=");
    ts_.expect_keyword("build");
    const Token b = ts_.expect_ident("source algebra");
    const Token c = ts_.expect_ident("target algebra");
    s.source = b.text;
    s.target = c.text;
    if (ts_.at_ident("eliminate")) {
      ts_.next();
      s.eliminate = true;
    }
    const Binding& bb = lookup(b);
    const Binding& cb = lookup(c);
    const auto* C = std::get_if<FdAlgebra>(&cb.value);
    if (!C) throw ParseError(c.pos, "'" + c.text + "' is a " + kind_name(cb.value) + "; the target must be given by blocks");
    MorOptions mo{s.eliminate};
    if (auto B = std::get_if<FdAlgebra>(&bb.value)) {
      bind(name, build_mor(*B, *C, mo));
    } else if (auto p = detail::as_presentation(bb.value)) {
      bind(name, build_mor(*p, *C, mo));
    } else {
      throw ParseError(b.pos, "'" + b.text + "' is a " + kind_name(bb.value) + ", not an algebra");
    }
    ws_.statements.push_back(std::move(s));
  }

  void check() {
    Statement s;
    s.kind = Statement::Kind::check;
    s.pos = ts_.next().pos;
    const Token kind = ts_.peek();
    std::string k;
    if (kind.kind == Tok::ident) {
      k = ts_.next().text;
      // `slice-lemma` and `tensor-split` arrive as name, '-', name.
      if ((k == "slice" || k == "tensor") && ts_.at_symbol("-")) {
        ts_.next();
        k += "-" + ts_.expect_ident("check kind").text;
      }
    }
    bool known = false;
    for (const auto& c : check_kinds()) known = known || c == k;
    if (!known) {
      std::set<std::string> exp;
      for (const auto& c : check_kinds()) exp.insert("'" + c + "'");
      throw ParseError(kind.pos, kind.kind == Tok::ident ? "unknown check '" + k + "'" : "missing check kind", exp);
    }
    s.check = k;
    for (;;) {
      const Token& t = ts_.peek();
      if (t.kind == Tok::ident) {
        lookup(t);
        s.args.push_back(ts_.next().text);
      } else if (t.kind == Tok::number && t.text.find_first_not_of("0123456789") == std::string::npos) {
        s.args.push_back(ts_.next().text);
      } else {
        break;
      }
    }
    check_arity(s, kind.pos);
    ws_.statements.push_back(std::move(s));
  }

  static void check_arity(const Statement& s, SourcePos pos) {
    const std::size_t n = s.args.size();
    auto need = [&](std::size_t k, const std::string& usage) {
      if (n != k) throw ParseError(pos, "check " + s.check + " takes " + usage);
    };
    if (s.check == "explaw") need(3, "<B> <C1> <C2>");
    else if (s.check == "coassoc") need(1, "<mor or algebra>");
    else if (s.check == "functor") need(4, "<f> <f2> <g> <g2>");
    else if (s.check == "surjective") need(2, "<f> <C>");
    else if (s.check == "tensor-split") need(3, "<B1> <B2> <C>");
    else if (s.check == "phi") need(1, "<mor>");
    else if (s.check == "slice-lemma") {
      if (n > 1) throw ParseError(pos, "check slice-lemma takes an optional count");
    } else if (s.check == "dirsum") {
      if (n < 2 || n % 2) throw ParseError(pos, "check dirsum takes pairs <B1> <C1> <B2> <C2> ...");
    }
  }

  void abelianize() {
    Statement s;
    s.kind = Statement::Kind::abelianize;
    s.pos = ts_.next().pos;
    const Token name = ts_.expect_ident("algebra name");
    s.name = name.text;
    const Binding& b = lookup(name);
    if (auto m = std::get_if<MorPresentation>(&b.value)) {
      MorPresentation r = *m;
      r.base = qmor::abelianize(r.base);
      bind(name, std::move(r));
    } else if (auto p = detail::as_presentation(b.value)) {
      bind(name, qmor::abelianize(*p));
    } else {
      throw ParseError(name.pos, "'" + name.text + "' is a " + kind_name(b.value) + ", not an algebra");
    }
    ws_.statements.push_back(std::move(s));
  }

  void characters() {
    Statement s;
    s.kind = Statement::Kind::characters;
    s.pos = ts_.next().pos;
    const Token name = ts_.expect_ident("algebra name");
    s.name = name.text;
    const Binding& b = lookup(name);
    if (!detail::as_presentation(b.value))
      throw ParseError(name.pos, "'" + name.text + "' is a " + kind_name(b.value) + ", not an algebra");
    ws_.statements.push_back(std::move(s));
  }

  void repsearch() {
    Statement s;
    s.kind = Statement::Kind::repsearch;
    s.pos = ts_.next().pos;
    const Token name = ts_.expect_ident("algebra name");
    s.name = name.text;
    const Binding& b = lookup(name);
    if (!detail::as_presentation(b.value))
      throw ParseError(name.pos, "'" + name.text + "' is a " + kind_name(b.value) + ", not an algebra");
    ts_.expect_keyword("dim");
    const Token d = ts_.peek();
    s.dimension = ts_.expect_int("dimension");
    if (s.dimension == 0) throw ParseError(d.pos, "dimension must be positive");
    ws_.statements.push_back(std::move(s));
  }

  TokenStream ts_;
  WorkspaceOptions opt_;
  Workspace ws_;
};

inline Workspace parse_workspace(const std::string& text, const WorkspaceOptions& opt = {}) {
  return WorkspaceParser(text, opt).run();
}

// Canonical text of one statement; parsing it back yields an equal statement.
inline std::string pretty_print(const Statement& s) {
  using K = Statement::Kind;
  std::string out;
  switch (s.kind) {
    case K::blocks: {
      out = "algebra " + s.name + " = blocks [";
      for (std::size_t i = 0; i < s.blocks.size(); ++i) out += (i ? "," : "") + std::to_string(s.blocks[i]);
      return out + "]";
    }
    case K::present: return "algebra " + s.name + " = " + s.presentation;
    case K::hom: {
      out = "hom " + s.name + " : " + s.source + " -> " + s.target + " = images { ";
      for (std::size_t i = 0; i < s.images.size(); ++i)
        out += (i ? ", " : "") + s.images[i].first + " -> " + s.images[i].second;
      return out + (s.images.empty() ? "}" : " }");
    }
    case K::mor: return "mor " + s.name + " = build " + s.source + " " + s.target + (s.eliminate ? " eliminate" : "");
    case K::check: {
      out = "check " + s.check;
      for (const auto& a : s.args) out += " " + a;
      return out;
    }
    case K::abelianize: return "abelianize " + s.name;
    case K::characters: return "characters " + s.name;
    case K::repsearch: return "repsearch " + s.name + " dim " + std::to_string(s.dimension);
  }
  return out;
}

inline std::string pretty_print(const Workspace& ws) {
  std::string out;
  for (const auto& s : ws.statements) out += pretty_print(s) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tasks and reports.

struct ReportItem {
  std::string label;
  Verdict verdict = Verdict::unknown;
  std::size_t steps = 0;
  std::string certificate;
};

struct TaskReport {
  std::size_t index = 0;
  SourcePos pos;
  std::string command;
  std::string status = "unknown";  // pass, fail, unknown, error
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<ReportItem> items;
  std::size_t steps = 0;
  double wall_ms = 0;
};

struct RunOptions {
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool timing = false;  // wall time breaks byte-for-byte reproducibility, so it is opt-in
};

struct Report {
  RunOptions options;
  std::vector<TaskReport> tasks;

  std::string status() const {
    bool unknown = false, fail = false;
    for (const auto& t : tasks) {
      if (t.status == "error") return "error";
      fail = fail || t.status == "fail";
      unknown = unknown || t.status == "unknown";
    }
    return fail ? "fail" : unknown ? "unknown" : "pass";
  }
  int exit_code() const {
    const std::string s = status();
    return s == "pass" ? 0 : s == "fail" ? 1 : s == "unknown" ? 2 : 3;
  }
};

namespace detail {

inline std::string certificate_text(const EqualityVerdict& v, const Presentation& pres) {
  if (v.character) {
    std::string s = "character";
    for (std::size_t g = 0; g < v.character->size(); ++g)
      s += " " + pres.generator(g).name + "=" + (*v.character)[g].str();
    return s;
  }
  if (v.model) return "model " + std::to_string(*v.model);
  if (v.status == Verdict::unknown) return std::string("residue ") + (v.exhausted ? "(budget exhausted) " : "") +
                                           format_poly(v.residue, pres);
  return "";
}

class TaskBuilder {
 public:
  explicit TaskBuilder(TaskReport& r) : r_(r) {}

  void item(const std::string& label, const EqualityVerdict& v, const Presentation& pres) {
    r_.items.push_back({label, v.status, v.steps, certificate_text(v, pres)});
    r_.steps += v.steps;
  }
  void hom(const std::string& prefix, const PresentedHom& h) {
    for (const auto& w : h.welldef) {
      const std::string what = w.kind == RelationVerdict::Kind::relation
                                   ? "relation " + std::to_string(w.index + 1)
                                   : "self-adjoint " + h.source.generator(w.index).name;
      item(prefix + " " + what, w.verdict, h.target);
    }
  }
  void generators(const std::string& prefix, const Presentation& source, const std::vector<EqualityVerdict>& vs,
                  const Presentation& target) {
    for (std::size_t g = 0; g < vs.size(); ++g) item(prefix + " " + source.generator(g).name, vs[g], target);
  }
  void coverage(const std::string& prefix, const Coverage& c, const Presentation& target) {
    for (std::size_t i = 0; i < c.targets.size(); ++i)
      item(prefix + " " + target.generator(c.targets[i]).name, c.verdicts[i], target);
  }
  void field(const std::string& k, const std::string& v) { r_.fields.emplace_back(k, v); }

  // pass iff every item is equal and nothing else failed; fail on any distinct.
  void finish(bool extra_ok = true) {
    bool unknown = false, distinct = !extra_ok;
    for (const auto& i : r_.items) {
      distinct = distinct || i.verdict == Verdict::distinct;
      unknown = unknown || i.verdict == Verdict::unknown;
    }
    r_.status = distinct ? "fail" : unknown ? "unknown" : "pass";
  }

 private:
  TaskReport& r_;
};

template <class T>
const T& expect_kind(const Workspace& ws, const std::string& name, const char* what) {
  const Binding& b = ws.get(name);
  if (auto v = std::get_if<T>(&b.value)) return *v;
  throw KindMismatch("'" + name + "' is a " + kind_name(b.value) + ", expected " + what);
}

inline FdAlgebra expect_algebra(const Workspace& ws, const std::string& name) {
  return expect_kind<FdAlgebra>(ws, name, "an algebra given by blocks");
}

inline Presentation expect_presentation(const Workspace& ws, const std::string& name) {
  const Binding& b = ws.get(name);
  if (auto p = as_presentation(b.value)) return *p;
  throw KindMismatch("'" + name + "' is a " + kind_name(b.value) + ", expected an algebra");
}

inline void run_check(const Workspace& ws, const Statement& s, const RunOptions& opt, TaskReport& r) {
  TaskBuilder tb(r);
  const std::size_t budget = opt.budget;
  const auto& a = s.args;
  if (s.check == "explaw") {
    const Presentation B = expect_presentation(ws, a[0]);
    const ExpLaw e = exp_law(B, expect_algebra(ws, a[1]), expect_algebra(ws, a[2]), budget);
    tb.field("generators", std::to_string(e.m12.base.generator_count()));
    tb.hom("Psi", e.psi);
    tb.hom("Psi'", e.psi_inv);
    tb.hom("Gamma", e.gamma);
    tb.generators("Psi'Psi=id", e.m12.base, e.inverse_on_m12, e.m12.base);
    tb.generators("PsiPsi'=id", e.nested.base, e.inverse_on_nested, e.nested.base);
    tb.generators("(id*Psi)Gamma=Phi", e.m1.base, e.gamma_identity, e.gamma.target);
    tb.finish();
  } else if (s.check == "coassoc") {
    const Binding& b = ws.get(a[0]);
    FdAlgebra B;
    if (auto alg = std::get_if<FdAlgebra>(&b.value)) {
      B = *alg;
    } else if (auto m = std::get_if<MorPresentation>(&b.value)) {
      if (!m->source_fd || !(m->source_fd->algebra == m->target))
        throw KindMismatch("'" + a[0] + "' is not Mor(B, B) for an algebra B");
      B = m->target;
    } else {
      throw KindMismatch("'" + a[0] + "' is a " + kind_name(b.value) + ", expected a mor or an algebra");
    }
    const CoassociativityCheck c = check_coassociativity(B, budget);
    tb.field("generators", std::to_string(c.delta.bd.base.generator_count()));
    tb.hom("Delta", c.delta.psi);
    tb.generators("(id*Delta)Delta=(Delta*id)Delta", c.delta.bd.base, c.verdicts,
                  tensor_presentation({c.delta.bd.base, c.delta.bd.base, c.delta.bd.base}));
    tb.finish();
  } else if (s.check == "functor") {
    const StarHom& f = expect_kind<StarHom>(ws, a[0], "a hom between algebras");
    const StarHom& f2 = expect_kind<StarHom>(ws, a[1], "a hom between algebras");
    const StarHom& g = expect_kind<StarHom>(ws, a[2], "a hom between algebras");
    const StarHom& g2 = expect_kind<StarHom>(ws, a[3], "a hom between algebras");
    if (!(f.target() == f2.source())) throw KindMismatch("functor: f2 must start where f ends");
    if (!(g2.target() == g.source())) throw KindMismatch("functor: g2 must end where g starts");
    const MorPresentation m1 = build_mor(f.source(), g.target());
    const MorPresentation m2 = build_mor(f.target(), g.source());
    const MorPresentation m3 = build_mor(f2.target(), g2.source());
    const FunctorCheck c = check_functor_laws(f, f2, g, g2, m1, m2, m3, budget);
    tb.field("generators", std::to_string(m1.base.generator_count()));
    tb.generators("Mor(f2 f,g g2)=Mor(f2,g2)Mor(f,g)", m1.base, c.composition, m3.base);
    tb.generators("Mor(id,id)=id", m1.base, c.identity, m1.base);
    tb.finish();
  } else if (s.check == "surjective") {
    const StarHom& f = expect_kind<StarHom>(ws, a[0], "a hom between algebras");
    const FdAlgebra C = expect_algebra(ws, a[1]);
    const MorPresentation m1 = build_mor(f.source(), C);
    const MorPresentation m2 = build_mor(f.target(), C);
    try {
      const SurjectivityCheck c = check_surjectivity(f, m1, m2, budget);
      tb.field("generators", std::to_string(m2.base.generator_count()));
      tb.hom("Mor(f,id)", c.map);
      tb.coverage("preimage", c.coverage, m2.base);
      for (std::size_t i = 0; i < c.coverage.targets.size(); ++i)
        tb.field("preimage " + m2.base.generator(c.coverage.targets[i]).name,
                 format_poly(c.coverage.preimages[i], m1.base));
      tb.finish();
    } catch (const NotSurjective& e) {
      tb.field("error", e.what());
      tb.finish(false);
    }
  } else if (s.check == "slice-lemma") {
    const std::size_t count = a.empty() ? 100 : std::stoul(a[0]);
    std::mt19937_64 rng(opt.seed);
    std::size_t passed = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const CommutingSquare sq = random_commuting_square(rng);
      const Functional w = random_functional(sq.ca.left, rng);
      if (check_slice_identity(sq.lambda, sq.gamma, sq.phi, sq.ca, sq.phi2, sq.ca2, w)) ++passed;
    }
    tb.field("squares", std::to_string(count));
    tb.field("passed", std::to_string(passed));
    tb.finish(passed == count);
  } else if (s.check == "dirsum") {
    std::vector<FdAlgebra> bs, cs;
    for (std::size_t i = 0; i < a.size(); i += 2) {
      bs.push_back(expect_algebra(ws, a[i]));
      cs.push_back(expect_algebra(ws, a[i + 1]));
    }
    const DirectSumSplit d = direct_sum_split(bs, cs, SplitCodomain::tensor, budget);
    tb.field("generators", std::to_string(d.domain.base.generator_count()));
    tb.field("cross generators", std::to_string(d.cross_generators));
    tb.field("cross generators sent to 0", std::to_string(d.cross_zero));
    tb.hom("Psi", d.psi);
    tb.coverage("preimage", d.coverage, d.codomain);
    tb.finish(d.cross_zero == d.cross_generators);
  } else if (s.check == "tensor-split") {
    const Presentation b1 = expect_presentation(ws, a[0]);
    const Presentation b2 = expect_presentation(ws, a[1]);
    const FdAlgebra C = expect_algebra(ws, a[2]);
    try {
      const TensorSplit t = tensor_split(b1, b2, C, budget);
      tb.field("generators", std::to_string(t.domain.base.generator_count()));
      tb.hom("Psi", t.psi);
      tb.coverage("preimage", t.coverage, t.psi.target);
      tb.finish();
    } catch (const NoncommutativeTarget& e) {
      tb.field("error", e.what());
      tb.finish(false);
    }
  } else if (s.check == "phi") {
    const MorPresentation& m = expect_kind<MorPresentation>(ws, a[0], "a mor");
    const PresentedHom phi = canonical_phi(m, budget);
    tb.field("generators", std::to_string(m.base.generator_count()));
    tb.field("relations", std::to_string(m.base.relations().size()));
    tb.hom("Phi", phi);
    tb.finish();
  }
}

inline void run_task(const Workspace& ws, const Statement& s, const RunOptions& opt, TaskReport& r) {
  using K = Statement::Kind;
  TaskBuilder tb(r);
  switch (s.kind) {
    case K::check: run_check(ws, s, opt, r); break;
    case K::hom: {
      const PresentedHom& h = expect_kind<PresentedHom>(ws, s.name, "a presented hom");
      tb.hom("well-defined", h);
      tb.finish();
      break;
    }
    case K::characters: {
      const Presentation p = expect_presentation(ws, s.name);
      try {
        const auto chars = enumerate_characters(p, opt.budget);
        tb.field("count", std::to_string(chars.size()));
        for (const auto& chi : chars) {
          std::string v;
          for (std::size_t g = 0; g < chi.size(); ++g) v += (g ? " " : "") + p.generator(g).name + "=" + chi[g].str();
          tb.field("character", v);
        }
        r.status = "pass";
      } catch (const UnsupportedSpectrum& e) {
        tb.field("error", e.what());
        r.status = "unknown";
      }
      break;
    }
    case K::repsearch: {
      const Presentation p = expect_presentation(ws, s.name);
      SearchOptions so;
      so.seed = opt.seed;
      const SearchResult res = find_representation(p, s.dimension, so);
      std::ostringstream os;
      os.precision(6);
      os << std::scientific << res.best_residual;
      tb.field("dimension", std::to_string(s.dimension));
      tb.field("residual", os.str());
      tb.field("successes", std::to_string(res.successes.size()) + "/" + std::to_string(so.restarts));
      // Largest generator commutator over all successful restarts.
      double best = 0;
      std::string where;
      for (const auto& m : res.successes)
        for (std::size_t i = 0; i < p.generator_count(); ++i)
          for (std::size_t j = i + 1; j < p.generator_count(); ++j) {
            const double c = commutator_witness(m, FreeStarPoly::gen(i), FreeStarPoly::gen(j));
            if (c > best + 1e-12) {
              best = c;
              where = p.generator(i).name + " " + p.generator(j).name + ", restart " + std::to_string(m.restart);
            }
          }
      if (!res.successes.empty()) {
        std::ostringstream cs;
        cs.precision(6);
        cs << std::fixed << best;
        tb.field("max commutator", cs.str() + (where.empty() ? "" : " (" + where + ")"));
      }
      r.status = res.best_residual <= so.tolerance ? "pass" : "fail";
      break;
    }
    default: break;
  }
}

}  // namespace detail

inline TaskReport run_statement(const Workspace& ws, const Statement& s, const RunOptions& opt = {}) {
  TaskReport r;
  r.pos = s.pos;
  r.command = pretty_print(s);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    detail::run_task(ws, s, opt, r);
  } catch (const KindMismatch& e) {
    r.status = "error";
    r.fields.emplace_back("error", e.what());
  } catch (const std::invalid_argument& e) {
    r.status = "error";
    r.fields.emplace_back("error", e.what());
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Tasks run in declaration order, or concurrently in batches of `jobs`; the report order is
// declaration order either way.
inline Report run_workspace(const Workspace& ws, const RunOptions& opt = {}) {
  Report rep{opt, {}};
  std::vector<const Statement*> tasks;
  for (const auto& s : ws.statements)
    if (s.is_task()) tasks.push_back(&s);
  rep.tasks.resize(tasks.size());
  const std::size_t jobs = std::max(1U, opt.jobs);
  for (std::size_t i = 0; i < tasks.size(); i += jobs) {
    std::vector<std::future<TaskReport>> batch;
    for (std::size_t k = i; k < std::min(tasks.size(), i + jobs); ++k)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                 [&, k] { return run_statement(ws, *tasks[k], opt); }));
    for (std::size_t k = 0; k < batch.size(); ++k) {
      rep.tasks[i + k] = batch[k].get();
      rep.tasks[i + k].index = i + k + 1;
    }
  }
  return rep;
}

inline std::string format_report(const Report& rep) {
  std::ostringstream os;
  os << "qmor-report: 1\n";
  os << "budget: " << rep.options.budget << "\n";
  os << "seed: " << rep.options.seed << "\n";
  for (const auto& t : rep.tasks) {
    os << "\n";
    os << "task: " << t.index << "\n";
    os << "line: " << t.pos.line << "\n";
    os << "command: " << t.command << "\n";
    os << "status: " << t.status << "\n";
    for (const auto& [k, v] : t.fields) os << k << ": " << v << "\n";
    if (!t.items.empty()) {
      std::size_t eq = 0, di = 0, un = 0;
      for (const auto& i : t.items) (i.verdict == Verdict::equal ? eq : i.verdict == Verdict::distinct ? di : un)++;
      os << "verdicts: " << t.items.size() << " (equal " << eq << ", distinct " << di << ", unknown " << un << ")\n";
      os << "rewrite steps: " << t.steps << "\n";
    }
    if (rep.options.timing) os << "wall ms: " << static_cast<long long>(t.wall_ms + 0.5) << "\n";
    for (const auto& i : t.items) {
      os << "item: " << to_string(i.verdict) << " | steps " << i.steps << " | " << i.label;
      if (!i.certificate.empty()) os << " | " << i.certificate;
      os << "\n";
    }
  }
  std::size_t pass = 0, fail = 0, unknown = 0, error = 0;
  for (const auto& t : rep.tasks)
    (t.status == "pass" ? pass : t.status == "fail" ? fail : t.status == "unknown" ? unknown : error)++;
  os << "\nsummary: " << rep.status() << "\n";
  os << "tasks: " << rep.tasks.size() << " (pass " << pass << ", fail " << fail << ", unknown " << unknown
     << ", error " << error << ")\n";
  return os.str();
}

}  // namespace qmor
