#include "convalg/itl.hpp"

#include <algorithm>
#include <cctype>

#include "convalg/conv.hpp"

namespace convalg {

// ---------------------------------------------------------------------------
// formula construction

namespace {

Fml node(Formula::Kind k, std::string name, Fml lhs, Fml rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(name);
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

} // namespace

Fml f_atom(std::string name) { return node(Formula::Kind::atom, std::move(name), nullptr, nullptr); }
Fml f_top() { return node(Formula::Kind::top, "", nullptr, nullptr); }
Fml f_bot() { return node(Formula::Kind::bot, "", nullptr, nullptr); }
Fml f_and(Fml a, Fml b) { return node(Formula::Kind::conj, "", std::move(a), std::move(b)); }
Fml f_or(Fml a, Fml b) { return node(Formula::Kind::disj, "", std::move(a), std::move(b)); }
Fml f_not(Fml a) { return node(Formula::Kind::neg, "", std::move(a), nullptr); }
Fml f_chop(Fml a, Fml b) { return node(Formula::Kind::chop, "", std::move(a), std::move(b)); }
Fml f_point() { return node(Formula::Kind::unit, "", nullptr, nullptr); }
Fml f_star(Fml a) { return node(Formula::Kind::star, "", std::move(a), nullptr); }
Fml f_omega(Fml a) { return node(Formula::Kind::omega, "", std::move(a), nullptr); }

Fml f_hs(std::string name, Fml a) {
  const auto& known = hs_modality_names();
  if (std::find(known.begin(), known.end(), name) == known.end())
    throw std::invalid_argument("unknown segment modality: " + name);
  return node(Formula::Kind::hs, std::move(name), std::move(a), nullptr);
}

Fml f_ven_d(Fml a, Fml b) { return node(Formula::Kind::ven_d, "", std::move(a), std::move(b)); }
Fml f_ven_t(Fml a, Fml b) { return node(Formula::Kind::ven_t, "", std::move(a), std::move(b)); }

bool formula_eq(const Fml& a, const Fml& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return formula_eq(a->lhs, b->lhs) && formula_eq(a->rhs, b->rhs);
}

// ---------------------------------------------------------------------------
// printing

namespace {

// Postfix `*` grabs a preceding unary chain, so a star operand under another
// unary prefix must keep its own parentheses.
std::string wrap_star(const Fml& f) {
  std::string s = formula_str(f);
  if (f->kind == Formula::Kind::star) return "(" + s + ")";
  return s;
}

} // namespace

std::string formula_str(const Fml& f) {
  if (!f) throw std::invalid_argument("formula_str: null formula");
  using K = Formula::Kind;
  switch (f->kind) {
    case K::atom: return f->name;
    case K::top: return "top";
    case K::bot: return "bot";
    case K::unit: return "point";
    case K::conj: return "(" + formula_str(f->lhs) + " & " + formula_str(f->rhs) + ")";
    case K::disj: return "(" + formula_str(f->lhs) + " | " + formula_str(f->rhs) + ")";
    case K::chop: return "(" + formula_str(f->lhs) + " ; " + formula_str(f->rhs) + ")";
    case K::neg: return "!" + wrap_star(f->lhs);
    case K::star: return formula_str(f->lhs) + "*";
    case K::omega: return "OMEGA(" + formula_str(f->lhs) + ")";
    case K::hs: return "<" + f->name + "> " + wrap_star(f->lhs);
    case K::ven_d: return "VD(" + formula_str(f->lhs) + ", " + formula_str(f->rhs) + ")";
    case K::ven_t: return "VT(" + formula_str(f->lhs) + ", " + formula_str(f->rhs) + ")";
  }
  throw std::logic_error("formula_str: bad kind");
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
  enum class Type { ident, kw_top, kw_bot, kw_point, modal, bang, star, semi,
                    amp, pipe, lpar, rpar, end };
  Type type;
  std::string text;
  size_t pos = 0;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("formula syntax error at position " +
                                std::to_string(i) + ": " + msg);
  };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    const size_t at = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string word = s.substr(i, j - i);
      i = j;
      Token::Type t = word == "top" ? Token::Type::kw_top
                    : word == "bot" ? Token::Type::kw_bot
                    : word == "point" ? Token::Type::kw_point
                    : Token::Type::ident;
      out.push_back({t, std::move(word), at});
      continue;
    }
    if (c == '<') {
      size_t j = i + 1;
      while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j]))) ++j;
      if (j >= s.size() || s[j] != '>') fail("unterminated modality, expected '>'");
      std::string name = s.substr(i + 1, j - i - 1);
      const auto& known = hs_modality_names();
      if (std::find(known.begin(), known.end(), name) == known.end())
        fail("unknown modality <" + name + ">");
      i = j + 1;
      out.push_back({Token::Type::modal, std::move(name), at});
      continue;
    }
    Token::Type t;
    switch (c) {
      case '!': t = Token::Type::bang; break;
      case '*': t = Token::Type::star; break;
      case ';': t = Token::Type::semi; break;
      case '&': t = Token::Type::amp; break;
      case '|': t = Token::Type::pipe; break;
      case '(': t = Token::Type::lpar; break;
      case ')': t = Token::Type::rpar; break;
      default: fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back({t, std::string(1, c), at});
    ++i;
  }
  out.push_back({Token::Type::end, "", s.size()});
  return out;
}

// Grammar (loosest to tightest): disj | conj | chop | postfix-star | unary.
class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Fml run() {
    Fml f = disj();
    if (peek().type != Token::Type::end)
      fail("trailing input '" + peek().text + "'");
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  bool eat(Token::Type t) {
    if (peek().type != t) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("formula syntax error at position " +
                                std::to_string(peek().pos) + ": " + msg);
  }

  Fml disj() {
    Fml f = conj();
    while (eat(Token::Type::pipe)) f = f_or(f, conj());
    return f;
  }
  Fml conj() {
    Fml f = chop();
    while (eat(Token::Type::amp)) f = f_and(f, chop());
    return f;
  }
  Fml chop() {
    Fml f = postfix();
    while (eat(Token::Type::semi)) f = f_chop(f, postfix());
    return f;
  }
  Fml postfix() {
    Fml f = unary();
    while (eat(Token::Type::star)) f = f_star(f);
    return f;
  }
  Fml unary() {
    if (eat(Token::Type::bang)) return f_not(unary());
    if (peek().type == Token::Type::modal) {
      std::string name = take().text;
      return f_hs(std::move(name), unary());
    }
    return primary();
  }
  Fml primary() {
    switch (peek().type) {
      case Token::Type::ident: return f_atom(take().text);
      case Token::Type::kw_top: take(); return f_top();
      case Token::Type::kw_bot: take(); return f_bot();
      case Token::Type::kw_point: take(); return f_point();
      case Token::Type::lpar: {
        take();
        Fml f = disj();
        if (!eat(Token::Type::rpar)) fail("expected ')'");
        return f;
      }
      default: fail("expected a formula, got '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

} // namespace

Fml parse_formula(const std::string& text) { return Parser(lex(text)).run(); }

// ---------------------------------------------------------------------------
// models

std::string iv_str(Iv iv) {
  if (iv.infinite()) return "[" + std::to_string(iv.lo) + ",inf]";
  return "[" + std::to_string(iv.lo) + "," + std::to_string(iv.hi) + "]";
}

bool StreamModel::atom_holds(const std::string& name, Iv iv) const {
  auto it = atoms.find(name);
  if (it == atoms.end())
    throw std::invalid_argument("unresolved atom: " + name);
  const AtomDef& def = it->second;
  if (iv.infinite()) return def.inf_from.count(iv.lo) != 0;
  if (def.state_pred) {
    for (int k = iv.lo; k <= iv.hi; ++k)
      if (stream[k] != *def.state_pred) return false;
    return true;
  }
  return def.intervals.count({iv.lo, iv.hi}) != 0;
}

void StreamModel::validate() const {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  if (static_cast<int>(stream.size()) != horizon + 1)
    throw std::invalid_argument("stream must assign a state to each of 0.." +
                                std::to_string(horizon));
  for (const auto& [name, def] : atoms) {
    if (def.state_pred && !def.intervals.empty())
      throw std::invalid_argument("atom " + name +
                                  ": intervals and state_pred are exclusive");
    for (auto [i, j] : def.intervals)
      if (i < 0 || i > j || j > horizon)
        throw std::invalid_argument("atom " + name + ": interval [" +
                                    std::to_string(i) + "," + std::to_string(j) +
                                    "] outside horizon");
    for (int i : def.inf_from) {
      if (!infinite_enabled)
        throw std::invalid_argument("atom " + name +
                                    ": infinite truths without inf_intervals");
      if (i < 0 || i > horizon)
        throw std::invalid_argument("atom " + name + ": infinite start " +
                                    std::to_string(i) + " outside horizon");
    }
  }
}

StreamModel trace_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("trace: expected an object");
  StreamModel m;
  if (!j.contains("horizon") || !j["horizon"].is_number_integer())
    throw std::invalid_argument("trace: missing integer \"horizon\"");
  m.horizon = j["horizon"].get<int>();
  if (!j.contains("stream") || !j["stream"].is_array())
    throw std::invalid_argument("trace: missing array \"stream\"");
  for (const auto& st : j["stream"]) {
    if (!st.is_string()) throw std::invalid_argument("trace: stream entries must be strings");
    m.stream.push_back(st.get<std::string>());
  }
  if (!j.contains("atoms") || !j["atoms"].is_object())
    throw std::invalid_argument("trace: missing object \"atoms\"");
  for (const auto& [name, spec] : j["atoms"].items()) {
    AtomDef def;
    const bool has_iv = spec.contains("intervals");
    const bool has_sp = spec.contains("state_pred");
    if (has_iv == has_sp)
      throw std::invalid_argument("trace: atom " + name +
                                  " needs exactly one of \"intervals\"/\"state_pred\"");
    if (has_sp) {
      if (!spec["state_pred"].is_string())
        throw std::invalid_argument("trace: atom " + name + ": state_pred must be a string");
      def.state_pred = spec["state_pred"].get<std::string>();
    } else {
      if (!spec["intervals"].is_array())
        throw std::invalid_argument("trace: atom " + name + ": intervals must be an array");
      for (const auto& iv : spec["intervals"]) {
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number_integer() ||
            !iv[1].is_number_integer())
          throw std::invalid_argument("trace: atom " + name +
                                      ": intervals must be [i,j] pairs");
        def.intervals.insert({iv[0].get<int>(), iv[1].get<int>()});
      }
    }
    m.atoms[name] = std::move(def);
  }
  if (j.contains("inf_intervals")) {
    if (!j["inf_intervals"].is_object())
      throw std::invalid_argument("trace: \"inf_intervals\" must be an object");
    m.infinite_enabled = true;
    for (const auto& [name, starts] : j["inf_intervals"].items()) {
      if (!starts.is_array())
        throw std::invalid_argument("trace: inf_intervals entries must be arrays");
      auto it = m.atoms.find(name);
      if (it == m.atoms.end())
        throw std::invalid_argument("trace: inf_intervals names unknown atom " + name);
      for (const auto& i : starts) {
        if (!i.is_number_integer())
          throw std::invalid_argument("trace: inf_intervals starts must be integers");
        it->second.inf_from.insert(i.get<int>());
      }
    }
  }
  m.validate();
  return m;
}

nlohmann::json trace_to_json(const StreamModel& m) {
  nlohmann::json j;
  j["horizon"] = m.horizon;
  j["stream"] = m.stream;
  nlohmann::json atoms = nlohmann::json::object();
  nlohmann::json infs = nlohmann::json::object();
  for (const auto& [name, def] : m.atoms) {
    nlohmann::json spec = nlohmann::json::object();
    if (def.state_pred) {
      spec["state_pred"] = *def.state_pred;
    } else {
      nlohmann::json ivs = nlohmann::json::array();
      for (auto [i, jj] : def.intervals) ivs.push_back({i, jj});
      spec["intervals"] = std::move(ivs);
    }
    atoms[name] = std::move(spec);
    if (!def.inf_from.empty())
      infs[name] = std::vector<int>(def.inf_from.begin(), def.inf_from.end());
  }
  j["atoms"] = std::move(atoms);
  if (m.infinite_enabled) j["inf_intervals"] = std::move(infs);
  return j;
}

// ---------------------------------------------------------------------------
// table-driven evaluation

namespace {

// One evaluation pass: formula nodes are mapped to truth tables over the
// combined carrier (finite segments of the chain 0..N first, then the
// infinite tails [i,inf] when enabled). Owned by a single eval_full call.
class Evaluator {
public:
  Evaluator(const StreamModel& m)
      : m_(m),
        qb_(*builtin_quantale("bool").fin),
        ia_(interval_algebra(chain_poset(m.horizon))),
        nfin_(ia_.seg_count()),
        ninf_(m.infinite_enabled ? m.horizon + 1 : 0) {}

  int index(Iv iv) const {
    if (iv.infinite()) return nfin_ + iv.lo;
    return ia_.seg_index(iv.lo, iv.hi);
  }

  bool approximate() const { return approximate_; }

  const FnF& table(const Fml& f) {
    auto it = memo_.find(f.get());
    if (it != memo_.end()) return it->second;
    return memo_.emplace(f.get(), compute(f)).first->second;
  }

private:
  int size() const { return nfin_ + ninf_; }

  FnF finite_part(const FnF& t) const { return FnF(t.begin(), t.begin() + nfin_); }

  // chop = convolution over the fusion relation on the finite part; an
  // infinite interval either goes whole to the left operand or splits at a
  // point within the horizon.
  FnF chop(const FnF& p, const FnF& q) const {
    FnF out = convolve(ia_.ven.c, qb_, finite_part(p), finite_part(q));
    out.resize(size(), 0);
    for (int i = 0; i < ninf_; ++i) {
      int32_t v = p[nfin_ + i];
      for (int k = i; k <= m_.horizon && !v; ++k)
        v = p[ia_.seg_index(i, k)] & q[nfin_ + k];
      out[nfin_ + i] = v;
    }
    return out;
  }

  FnF unit_table() const {
    FnF out(size(), 0);
    for (int i = 0; i <= m_.horizon; ++i) out[ia_.seg_index(i, i)] = 1;
    return out;
  }

  FnF compute(const Fml& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::atom: {
        FnF out(size());
        for (int x = 0; x < nfin_; ++x) {
          auto [lo, hi] = ia_.segments[x];
          out[x] = m_.atom_holds(f->name, {lo, hi});
        }
        for (int i = 0; i < ninf_; ++i)
          out[nfin_ + i] = m_.atom_holds(f->name, {i, Iv::kInfinite});
        return out;
      }
      case K::top: return FnF(size(), 1);
      case K::bot: return FnF(size(), 0);
      case K::unit: return unit_table();
      case K::conj: {
        const FnF &a = table(f->lhs), &b = table(f->rhs);
        FnF out(size());
        for (int x = 0; x < size(); ++x) out[x] = a[x] & b[x];
        return out;
      }
      case K::disj: {
        const FnF &a = table(f->lhs), &b = table(f->rhs);
        FnF out(size());
        for (int x = 0; x < size(); ++x) out[x] = a[x] | b[x];
        return out;
      }
      case K::neg: {
        const FnF& a = table(f->lhs);
        FnF out(size());
        for (int x = 0; x < size(); ++x) out[x] = !a[x];
        return out;
      }
      case K::chop: return chop(table(f->lhs), table(f->rhs));
      case K::star: {
        // least fixpoint of x -> point | p;x, Kleene iteration from bottom;
        // over booleans it stabilises within one round per table entry
        const FnF& p = table(f->lhs);
        const FnF id = unit_table();
        FnF x(size(), 0);
        for (int round = 0; round <= size() + 1; ++round) {
          FnF step = chop(p, x);
          for (int k = 0; k < size(); ++k) step[k] |= id[k];
          if (step == x) return x;
          x = std::move(step);
        }
        throw std::runtime_error("star iteration did not stabilise");
      }
      case K::omega: {
        // bounded descent towards the greatest fixpoint of x -> p;x
        const FnF& p = table(f->lhs);
        FnF x(size(), 1);
        for (int round = 0; round < kOmegaBound; ++round) {
          FnF step = chop(p, x);
          if (step == x) return x;
          x = std::move(step);
        }
        approximate_ = true;
        return x;
      }
      case K::hs: {
        FnF out = hs_modality(ia_, f->name, qb_, finite_part(table(f->lhs)));
        out.resize(size(), 0);
        return out;
      }
      case K::ven_d:
      case K::ven_t: {
        const TernaryRel& r = f->kind == K::ven_d ? ia_.ven.dv : ia_.ven.tv;
        FnF out = convolve(r, qb_, finite_part(table(f->lhs)),
                           finite_part(table(f->rhs)));
        out.resize(size(), 0);
        return out;
      }
    }
    throw std::logic_error("eval: bad formula kind");
  }

  static constexpr int kOmegaBound = 64;

  const StreamModel& m_;
  FinQuantale qb_;
  IntervalAlgebra ia_;
  int nfin_, ninf_;
  std::map<const Formula*, FnF> memo_;
  bool approximate_ = false;
};

void validate_iv(const StreamModel& m, Iv iv) {
  if (iv.infinite()) {
    if (!m.infinite_enabled)
      throw std::invalid_argument("infinite interval " + iv_str(iv) +
                                  " on a model without inf_intervals");
    if (iv.lo < 0 || iv.lo > m.horizon)
      throw std::invalid_argument("interval " + iv_str(iv) + " outside horizon " +
                                  std::to_string(m.horizon));
    return;
  }
  if (iv.lo < 0 || iv.lo > iv.hi || iv.hi > m.horizon)
    throw std::invalid_argument("interval " + iv_str(iv) + " outside horizon " +
                                std::to_string(m.horizon));
}

} // namespace

EvalResult eval_full(const Fml& f, const StreamModel& m, Iv iv) {
  if (!f) throw std::invalid_argument("eval: null formula");
  m.validate();
  validate_iv(m, iv);
  Evaluator ev(m);
  const FnF& t = ev.table(f);
  return {t[ev.index(iv)] != 0, ev.approximate()};
}

bool eval(const Fml& f, const StreamModel& m, Iv iv) {
  return eval_full(f, m, iv).value;
}

// ---------------------------------------------------------------------------
// reference evaluation by direct recursion

namespace {

bool naive(const Fml& f, const StreamModel& m, Iv iv);

// star via its unfolding with a non-point first chunk, which terminates and
// agrees with the least fixpoint (point chunks never enable anything new)
bool naive_star_fin(const Fml& p, const StreamModel& m, int lo, int hi) {
  if (lo == hi) return true;
  for (int k = lo + 1; k <= hi; ++k)
    if (naive(p, m, {lo, k}) && naive_star_fin(p, m, k, hi)) return true;
  return false;
}

bool naive(const Fml& f, const StreamModel& m, Iv iv) {
  using K = Formula::Kind;
  const int n = m.horizon;
  switch (f->kind) {
    case K::atom: return m.atom_holds(f->name, iv);
    case K::top: return true;
    case K::bot: return false;
    case K::unit: return !iv.infinite() && iv.lo == iv.hi;
    case K::conj: return naive(f->lhs, m, iv) && naive(f->rhs, m, iv);
    case K::disj: return naive(f->lhs, m, iv) || naive(f->rhs, m, iv);
    case K::neg: return !naive(f->lhs, m, iv);
    case K::chop: {
      if (iv.infinite()) {
        if (naive(f->lhs, m, iv)) return true;
        for (int k = iv.lo; k <= n; ++k)
          if (naive(f->lhs, m, {iv.lo, k}) &&
              naive(f->rhs, m, {k, Iv::kInfinite}))
            return true;
        return false;
      }
      for (int k = iv.lo; k <= iv.hi; ++k)
        if (naive(f->lhs, m, {iv.lo, k}) && naive(f->rhs, m, {k, iv.hi}))
          return true;
      return false;
    }
    case K::star: {
      if (!iv.infinite()) return naive_star_fin(f->lhs, m, iv.lo, iv.hi);
      // least fixpoint on a tail: finitely many p-chunks, then p on the rest
      for (int k = iv.lo; k <= n; ++k)
        if (naive_star_fin(f->lhs, m, iv.lo, k) &&
            naive(f->lhs, m, {k, Iv::kInfinite}))
          return true;
      return false;
    }
    case K::omega:
      throw std::invalid_argument("naive evaluator does not support omega");
    case K::hs: {
      if (iv.infinite()) return false;
      const int lo = iv.lo, hi = iv.hi;
      auto any = [&](auto&& pred) {
        for (int a = 0; a <= n; ++a)
          for (int b = a; b <= n; ++b)
            if (pred(a, b) && naive(f->lhs, m, {a, b})) return true;
        return false;
      };
      if (f->name == "B") return any([&](int a, int b) { return a == lo && b <= hi; });
      if (f->name == "E") return any([&](int a, int b) { return b == hi && a >= lo; });
      if (f->name == "A") return any([&](int a, int) { return a == hi; });
      if (f->name == "Bc") return any([&](int a, int b) { return a == lo && b >= hi; });
      if (f->name == "Ec") return any([&](int a, int b) { return b == hi && a <= lo; });
      if (f->name == "Ac") return any([&](int, int b) { return b == lo; });
      throw std::invalid_argument("unknown segment modality: " + f->name);
    }
    case K::ven_d: {
      if (iv.infinite()) return false;
      for (int a = 0; a <= iv.lo; ++a)
        if (naive(f->lhs, m, {a, iv.lo}) && naive(f->rhs, m, {a, iv.hi}))
          return true;
      return false;
    }
    case K::ven_t: {
      if (iv.infinite()) return false;
      for (int b = iv.hi; b <= n; ++b)
        if (naive(f->lhs, m, {iv.hi, b}) && naive(f->rhs, m, {iv.lo, b}))
          return true;
      return false;
    }
  }
  throw std::logic_error("eval_naive: bad formula kind");
}

} // namespace

bool eval_naive(const Fml& f, const StreamModel& m, Iv iv) {
  if (!f) throw std::invalid_argument("eval: null formula");
  m.validate();
  validate_iv(m, iv);
  return naive(f, m, iv);
}

// ---------------------------------------------------------------------------
// algebra of the interval carrier

LawReport check_itl_algebra(int horizon, bool with_infinite) {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  const FinQuantale qb = *builtin_quantale("bool").fin;

  LawReport r;
  r.subject = "itl-algebra(horizon=" + std::to_string(horizon) +
              (with_infinite ? ", with infinite tails)" : ")");

  // finite intervals: the interval x stream carrier, lifted over bool
  auto seg = segment_monoid(chain_poset(horizon));
  auto carrier = monoid_set_product(seg, {"s"});
  auto rm = rel_of_psg(carrier);
  r.merge(check_lifting(rm, qb, LiftMode::unital), "finite:");

  {
    // the convolution unit must be the point-interval indicator
    auto& row = r.add("finite:delta-is-point-indicator");
    const FnF id = delta_unit(rm, qb);
    FnF points(carrier.size(), 0);
    for (int i = 0; i <= horizon; ++i) {
      const std::string nm = "([" + std::to_string(i) + "," + std::to_string(i) + "],s)";
      const int at = carrier.index_of(nm);
      if (at < 0) throw std::logic_error("point pair " + nm + " missing");
      points[at] = 1;
    }
    row.cases = carrier.size();
    if (id != points) {
      row.status = LawCheck::Status::fail;
      row.witness = "delta differs from the point indicator";
    }
  }

  if (!with_infinite) return r;

  // infinite tails: pure pairs of the semidirect carrier over the pair
  // codomain, weak mode, sampling only component-shaped tables (finite
  // entries (b,0), infinite entries (0,b))
  auto fia = fin_inf_segment_action(horizon);
  auto pure = restrict_submonoid(sd_monoid(fia.action), pure_pair_mask(fia));
  auto prm = rel_of_psg(pure);
  const FinQuantale sdq = sd_quantale(self_module(qb));
  const int nf = fia.action.s.size() - 1;  // finite segments; the zero is last
  const int nt = fia.action.t.size();
  if (pure.size() != nf + nt)
    throw std::logic_error("unexpected pure carrier layout");
  for (int k = 0; k < nf; ++k)
    if (seg.name(k) != fia.action.s.name(k))
      throw std::logic_error("segment order mismatch between carriers");

  // pure carrier layout: [0,nf) finite pairs, nf the zero, then the tails
  auto pair_value = [](int32_t fin_b, int32_t inf_b) { return 2 * fin_b + inf_b; };
  LiftOptions opts;
  opts.sampler = [n = pure.size(), nf, &pair_value](Rng& g) {
    FnF f(n, 0);
    for (int i = 0; i < n; ++i) {
      if (i < nf) f[i] = pair_value(static_cast<int32_t>(g.below(2)), 0);
      else if (i > nf) f[i] = pair_value(0, static_cast<int32_t>(g.below(2)));
    }
    return f;
  };
  r.merge(check_lifting(prm, sdq, LiftMode::weak, opts), "infinite:");

  auto embed = [&](const FnF& f) {
    FnF e(pure.size(), 0);
    for (int k = 0; k < nf; ++k) e[k] = pair_value(f[k], 0);
    return e;
  };
  auto seg_rm = rel_of_psg(seg);

  {
    // right annihilation cannot survive a non-zero infinite component
    auto& row = r.add("infinite:right-annihilation-fails");
    FnF f(pure.size(), 0);
    const int first_tail = nf + 1;
    f[first_tail] = pair_value(0, 1);
    const FnF bot(pure.size(), sdq.bottom());
    const FnF fb = convolve(prm.rel, sdq, f, bot);
    row.cases = pure.size();
    if (fb == bot || fb[first_tail] != pair_value(0, 1)) {
      row.status = LawCheck::Status::fail;
      row.witness = "f*0 collapsed to 0 despite a non-zero infinite component";
    } else {
      row.witness = "(f*0)(" + pure.name(first_tail) + ") = " +
                    sdq.name(fb[first_tail]) + ", not " + sdq.name(sdq.bottom());
    }
  }
  {
    // f -> (f,0) embeds the finite algebra: multiplicative and unit-preserving
    auto& mult = r.add("infinite:embedding-multiplicative");
    Rng rng(kDefaultSeed);
    for (int s = 0; s < 100; ++s) {
      FnF f(seg.size()), g(seg.size());
      for (auto& v : f) v = static_cast<int32_t>(rng.below(2));
      for (auto& v : g) v = static_cast<int32_t>(rng.below(2));
      const FnF lhs = convolve(prm.rel, sdq, embed(f), embed(g));
      const FnF rhs = embed(convolve(seg_rm.rel, qb, f, g));
      ++mult.cases;
      if (!mult.failed() && lhs != rhs) {
        mult.status = LawCheck::Status::fail;
        mult.witness = "sample " + std::to_string(s);
      }
    }
    auto& unit = r.add("infinite:embedding-unit");
    unit.cases = pure.size();
    if (embed(delta_unit(seg_rm, qb)) != delta_unit(prm, sdq)) {
      unit.status = LawCheck::Status::fail;
      unit.witness = "embedded segment unit differs from the pair unit";
    }
  }
  return r;
}

LawReport check_itl_algebra(const StreamModel& m) {
  m.validate();
  return check_itl_algebra(m.horizon, m.infinite_enabled);
}

} // namespace convalg
