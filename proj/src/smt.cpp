#include "seif/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <mutex>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "seif/diagnostics.hpp"

namespace seif {

Value Model::get(const Symbol& s) const {
  auto it = values_.find(s);
  if (it == values_.end()) {
    throw Error(ErrorKind::UnknownSymbol, "symbol '" + s.key() + "' is not part of the model");
  }
  return it->second.second;
}

std::optional<Value> Model::lookup(const Symbol& s) const {
  auto it = values_.find(s);
  if (it == values_.end()) return std::nullopt;
  return it->second.second;
}

const char* sat_status_name(SatStatus s) {
  switch (s) {
    case SatStatus::Sat: return "sat";
    case SatStatus::Unsat: return "unsat";
    case SatStatus::Unknown: return "unknown";
  }
  return "?";
}

// --- s-expressions -------------------------------------------------------------

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(std::string s) : s_(std::move(s)) {}

  SExpr read() {
    skip();
    if (i_ >= s_.size()) throw std::runtime_error("unexpected end of s-expression");
    SExpr e;
    if (s_[i_] == '(') {
      ++i_;
      e.is_list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) throw std::runtime_error("unbalanced s-expression");
        if (s_[i_] == ')') {
          ++i_;
          break;
        }
        e.list.push_back(read());
      }
      return e;
    }
    if (s_[i_] == '|') {
      const auto end = s_.find('|', i_ + 1);
      if (end == std::string::npos) throw std::runtime_error("unterminated |symbol|");
      e.atom = s_.substr(i_, end - i_ + 1);
      i_ = end + 1;
      return e;
    }
    if (s_[i_] == '"') {
      std::size_t j = i_ + 1;
      while (j < s_.size()) {
        if (s_[j] == '"' && (j + 1 >= s_.size() || s_[j + 1] != '"')) break;
        j += s_[j] == '"' ? 2 : 1;
      }
      e.atom = s_.substr(i_, j - i_ + 1);
      i_ = j + 1;
      return e;
    }
    const std::size_t start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')') {
      ++i_;
    }
    e.atom = s_.substr(start, i_ - start);
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  std::string s_;
  std::size_t i_ = 0;
};

std::string unquote(const std::string& a) {
  if (a.size() >= 2 && a.front() == '|' && a.back() == '|') return a.substr(1, a.size() - 2);
  return a;
}

std::string quote(const Symbol& s) { return "|" + s.key() + "|"; }

std::string bv_const(Width w, Value v) {
  return "(_ bv" + std::to_string(v) + " " + std::to_string(w) + ")";
}

std::string op_term(const Expr& e, const std::vector<std::string>& a) {
  switch (e.op()) {
    case Op::Const: return bv_const(e.width(), e.value());
    case Op::Sym: return quote(e.symbol());
    case Op::Add: return "(bvadd " + a[0] + " " + a[1] + ")";
    case Op::Sub: return "(bvsub " + a[0] + " " + a[1] + ")";
    case Op::Mul: return "(bvmul " + a[0] + " " + a[1] + ")";
    case Op::And: return "(bvand " + a[0] + " " + a[1] + ")";
    case Op::Or: return "(bvor " + a[0] + " " + a[1] + ")";
    case Op::Xor: return "(bvxor " + a[0] + " " + a[1] + ")";
    case Op::Not: return "(bvnot " + a[0] + ")";
    case Op::Eq: return "(ite (= " + a[0] + " " + a[1] + ") #b1 #b0)";
    case Op::Neq: return "(ite (= " + a[0] + " " + a[1] + ") #b0 #b1)";
    case Op::Lt: return "(ite (bvult " + a[0] + " " + a[1] + ") #b1 #b0)";
    case Op::Ite: return "(ite (= " + a[0] + " #b1) " + a[1] + " " + a[2] + ")";
    case Op::Concat: return "(concat " + a[0] + " " + a[1] + ")";
    case Op::Slice:
      return "((_ extract " + std::to_string(e.hi()) + " " + std::to_string(e.lo()) + ") " + a[0] + ")";
    case Op::Zext:
      return "((_ zero_extend " + std::to_string(e.width() - e.arg(0).width()) + ") " + a[0] + ")";
  }
  return "";
}

}  // namespace

std::string to_smt_term(const Expr& e) {
  std::vector<std::string> a;
  for (const auto& x : e.args()) a.push_back(to_smt_term(x));
  return op_term(e, a);
}

std::optional<Value> parse_bv_literal(const std::string& text) {
  SExprReader r(text);
  SExpr e;
  try {
    e = r.read();
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (e.is_list) {
    if (e.list.size() == 3 && e.list[0].atom == "_" && e.list[1].atom.rfind("bv", 0) == 0) {
      return std::stoull(e.list[1].atom.substr(2));
    }
    return std::nullopt;
  }
  const std::string& a = e.atom;
  if (a.rfind("#b", 0) == 0 && a.size() > 2 && a.size() <= 66) return std::stoull(a.substr(2), nullptr, 2);
  if (a.rfind("#x", 0) == 0 && a.size() > 2 && a.size() <= 18) return std::stoull(a.substr(2), nullptr, 16);
  return std::nullopt;
}

namespace {

using SymbolTable = std::map<std::string, std::pair<Symbol, Width>>;

std::string render(const SExpr& e) {
  if (!e.is_list) return e.atom;
  std::string s = "(";
  for (std::size_t i = 0; i < e.list.size(); ++i) {
    if (i) s += " ";
    s += render(e.list[i]);
  }
  return s + ")";
}

Expr decode(const SExpr& e, const SymbolTable& syms) {
  auto bad = [&]() -> Expr { throw std::invalid_argument("cannot decode term " + render(e)); };
  if (!e.is_list) {
    auto it = syms.find(unquote(e.atom));
    if (it == syms.end()) bad();
    return symbol(it->second.first, it->second.second);
  }
  const auto& l = e.list;
  if (l.empty()) bad();
  if (l[0].is_list) {
    // ((_ extract h l) x) or ((_ zero_extend k) x)
    const auto& idx = l[0].list;
    Expr x = decode(l.at(1), syms);
    if (idx.size() == 4 && idx[1].atom == "extract") {
      return slice(x, std::stoul(idx[2].atom), std::stoul(idx[3].atom));
    }
    if (idx.size() == 3 && idx[1].atom == "zero_extend") {
      return zext(x, x.width() + static_cast<Width>(std::stoul(idx[2].atom)));
    }
    bad();
  }
  const std::string& h = l[0].atom;
  if (h == "_") {
    return constant(static_cast<Width>(std::stoul(l.at(2).atom)), std::stoull(l.at(1).atom.substr(2)));
  }
  if (h == "ite") {
    const auto& c = l.at(1);
    const std::string t = render(l.at(2));
    const std::string f = render(l.at(3));
    if (c.is_list && c.list.size() == 3 && c.list[0].atom == "=") {
      if (c.list[2].atom == "#b1" && !c.list[2].is_list) {
        return ite(decode(c.list[1], syms), decode(l[2], syms), decode(l[3], syms));
      }
      if (t == "#b1" && f == "#b0") return eq(decode(c.list[1], syms), decode(c.list[2], syms));
      if (t == "#b0" && f == "#b1") return neq(decode(c.list[1], syms), decode(c.list[2], syms));
    }
    if (c.is_list && c.list.size() == 3 && c.list[0].atom == "bvult" && t == "#b1" && f == "#b0") {
      return ult(decode(c.list[1], syms), decode(c.list[2], syms));
    }
    bad();
  }
  if (h == "bvnot") return bv_not(decode(l.at(1), syms));
  Expr a = decode(l.at(1), syms);
  Expr b = decode(l.at(2), syms);
  if (h == "bvadd") return add(a, b);
  if (h == "bvsub") return sub(a, b);
  if (h == "bvmul") return mul(a, b);
  if (h == "bvand") return bv_and(a, b);
  if (h == "bvor") return bv_or(a, b);
  if (h == "bvxor") return bv_xor(a, b);
  if (h == "concat") return concat(a, b);
  return bad();
}

}  // namespace

Expr from_smt_term(const std::string& text, const SymbolTable& symbols) {
  SExprReader r(text);
  return decode(r.read(), symbols);
}

// --- solver process -------------------------------------------------------------

// Bare names are looked up on PATH.
std::string resolve_solver(const std::string& name) {
  if (name.find('/') != std::string::npos) return name;
  const char* env = std::getenv("PATH");
  std::istringstream dirs(env ? env : "");
  for (std::string dir; std::getline(dirs, dir, ':');) {
    const std::string candidate = (dir.empty() ? "." : dir) + "/" + name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate;
  }
  return name;
}

class SolverProcess {
 public:
  explicit SolverProcess(const std::string& name) {
    const std::string path = resolve_solver(name);
    static std::once_flag once;
    std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
    if (::access(path.c_str(), X_OK) != 0) {
      throw Error(ErrorKind::SolverUnavailable, "solver '" + path + "' is not executable");
    }
    int in[2], out[2];
    if (::pipe2(in, O_CLOEXEC) != 0 || ::pipe2(out, O_CLOEXEC) != 0) {
      throw Error(ErrorKind::SolverUnavailable, std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = ::fork();
    if (pid_ < 0) throw Error(ErrorKind::SolverUnavailable, std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(in[0], 0);
      ::dup2(out[1], 1);
      const int devnull = ::open("/dev/null", O_WRONLY);
      if (devnull >= 0) ::dup2(devnull, 2);
      std::string p = path;
      char a1[] = "-in";
      char a2[] = "-smt2";
      char* argv[] = {p.data(), a1, a2, nullptr};
      ::execv(p.c_str(), argv);
      ::_exit(127);
    }
    ::close(in[0]);
    ::close(out[1]);
    to_ = in[1];
    from_ = out[0];
  }

  ~SolverProcess() {
    if (to_ >= 0) ::close(to_);
    if (from_ >= 0) ::close(from_);
    if (pid_ > 0) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  bool write_all(const std::string& s) {
    std::size_t off = 0;
    while (off < s.size()) {
      const ssize_t n = ::write(to_, s.data() + off, s.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        return false;
      }
      off += static_cast<std::size_t>(n);
    }
    return true;
  }

  /// One complete response (atom line or balanced s-expression). nullopt on
  /// EOF or when `deadline_ms` elapses.
  std::optional<std::string> read_response(int deadline_ms) {
    const auto start = std::chrono::steady_clock::now();
    for (;;) {
      if (auto r = take()) return r;
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      const int left = deadline_ms - static_cast<int>(elapsed);
      if (left <= 0) return std::nullopt;
      pollfd pfd{from_, POLLIN, 0};
      const int pr = ::poll(&pfd, 1, left);
      if (pr < 0 && errno == EINTR) continue;
      if (pr <= 0) return std::nullopt;
      char tmp[65536];
      const ssize_t n = ::read(from_, tmp, sizeof tmp);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return std::nullopt;
      buf_.append(tmp, static_cast<std::size_t>(n));
    }
  }

 private:
  std::optional<std::string> take() {
    std::size_t i = 0;
    while (i < buf_.size() && std::isspace(static_cast<unsigned char>(buf_[i]))) ++i;
    if (i == buf_.size()) return std::nullopt;
    if (buf_[i] != '(') {
      const auto nl = buf_.find('\n', i);
      if (nl == std::string::npos) return std::nullopt;
      std::string r = buf_.substr(i, nl - i);
      buf_.erase(0, nl + 1);
      return r;
    }
    int depth = 0;
    bool in_bar = false, in_str = false;
    for (std::size_t j = i; j < buf_.size(); ++j) {
      const char c = buf_[j];
      if (in_bar) {
        in_bar = c != '|';
      } else if (in_str) {
        in_str = c != '"';
      } else if (c == '|') {
        in_bar = true;
      } else if (c == '"') {
        in_str = true;
      } else if (c == '(') {
        ++depth;
      } else if (c == ')' && --depth == 0) {
        std::string r = buf_.substr(i, j - i + 1);
        buf_.erase(0, j + 1);
        return r;
      }
    }
    return std::nullopt;
  }

  pid_t pid_ = -1;
  int to_ = -1;
  int from_ = -1;
  std::string buf_;
};

// --- session ------------------------------------------------------------------

SmtSession::SmtSession(SmtOptions opts) : opts_(std::move(opts)) { start(); }

SmtSession::~SmtSession() {
  delete proc_;
  if (opts_.keep_transcript && !opts_.transcript_path.empty()) {
    std::ofstream out(opts_.transcript_path, std::ios::binary);
    out << transcript_;
  }
}

void SmtSession::start() {
  delete proc_;
  proc_ = nullptr;
  proc_ = new SolverProcess(opts_.solver_path);
  std::ostringstream os;
  os << "(set-option :print-success false)\n"
     << "(set-option :produce-models true)\n"
     << "(set-option :produce-unsat-cores true)\n"
     << "(set-option :random-seed " << opts_.seed << ")\n"
     << "(set-logic QF_BV)\n"
     << "(get-info :version)\n";
  send(os.str());
  const std::string r = receive();
  SExprReader rd(r);
  const SExpr e = rd.read();
  if (!e.is_list || e.list.size() < 2 || e.list[0].atom != ":version") {
    throw Error(ErrorKind::SolverUnavailable, "unexpected solver greeting: " + r);
  }
  version_ = e.list[1].atom;
  if (version_.size() >= 2 && version_.front() == '"') version_ = version_.substr(1, version_.size() - 2);
}

void SmtSession::send(const std::string& text) {
  if (opts_.keep_transcript) transcript_ += text;
  if (!proc_->write_all(text)) {
    throw Error(ErrorKind::SolverUnavailable, "solver '" + opts_.solver_path + "' closed its input");
  }
}

std::string SmtSession::receive() {
  const int deadline = opts_.timeout_ms > 0 ? opts_.timeout_ms + 5000 : 24 * 3600 * 1000;
  auto r = proc_->read_response(deadline);
  if (!r) {
    throw Error(ErrorKind::SolverUnavailable, "solver '" + opts_.solver_path + "' did not respond");
  }
  if (opts_.keep_transcript) transcript_ += "; " + *r + "\n";
  if (r->rfind("(error", 0) == 0) {
    throw Error(ErrorKind::SolverUnavailable, "solver reported " + *r);
  }
  return *r;
}

CheckResult SmtSession::check(const ConstraintSet& c, const std::map<Symbol, Width>& extra,
                              CheckOptions copts) {
  ++queries_;
  std::map<Symbol, Width> syms = extra;
  for (const auto& k : c) collect_symbols(k.expr, syms);

  // Count parents per node so shared sub-terms are defined once.
  std::unordered_map<const ExprNode*, int> refs;
  std::vector<Expr> post;
  std::function<void(const Expr&)> count = [&](const Expr& e) {
    if (refs[e.id()]++ > 0) return;
    for (const auto& a : e.args()) count(a);
    post.push_back(e);
  };
  for (const auto& k : c) count(k.expr);

  std::ostringstream os;
  os << "(push 1)\n";
  if (opts_.timeout_ms > 0) os << "(set-option :timeout " << opts_.timeout_ms << ")\n";
  for (const auto& [s, w] : syms) os << "(declare-fun " << quote(s) << " () (_ BitVec " << w << "))\n";
  std::unordered_map<const ExprNode*, std::string> name;
  auto term = [&](const Expr& e) {
    std::vector<std::string> a;
    for (const auto& x : e.args()) a.push_back(name.at(x.id()));
    return op_term(e, a);
  };
  int defs = 0;
  for (const auto& e : post) {
    const bool leaf = e.op() == Op::Const || e.op() == Op::Sym;
    if (!leaf && refs[e.id()] > 1) {
      const std::string n = "|$d" + std::to_string(defs++) + "|";
      os << "(define-fun " << n << " () (_ BitVec " << e.width() << ") " << term(e) << ")\n";
      name[e.id()] = n;
    } else {
      name[e.id()] = term(e);
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].expr.width() != 1) throw std::invalid_argument("constraint '" + c[i].label + "' is not 1 bit");
    os << "(assert (! (= " << name.at(c[i].expr.id()) << " #b1) :named |$l" << i << "|))\n";
  }
  os << "(check-sat)\n";
  send(os.str());

  CheckResult res;
  std::string status;
  try {
    status = receive();
  } catch (const Error&) {
    // Wall-clock guard or crash: restart so later queries still work.
    start();
    res.status = SatStatus::Unknown;
    res.reason = "solver did not answer within the time budget";
    return res;
  }
  if (status == "sat") {
    res.status = SatStatus::Sat;
    if (copts.want_model && !syms.empty()) {
      std::string q = "(get-value (";
      for (const auto& [s, w] : syms) q += quote(s) + " ";
      q += "))\n";
      send(q);
      SExprReader rd(receive());
      const SExpr v = rd.read();
      std::map<std::string, std::pair<Symbol, Width>> by_key;
      for (const auto& [s, w] : syms) by_key[s.key()] = {s, w};
      for (const auto& pair : v.list) {
        const auto& kv = by_key.at(unquote(pair.list.at(0).atom));
        auto val = parse_bv_literal(render(pair.list.at(1)));
        if (!val) throw Error(ErrorKind::SolverUnavailable, "cannot parse model value " + render(pair.list.at(1)));
        res.model.set(kv.first, kv.second, *val);
      }
    }
  } else if (status == "unsat") {
    res.status = SatStatus::Unsat;
    if (copts.want_core) {
      send("(get-unsat-core)\n");
      SExprReader rd(receive());
      const SExpr v = rd.read();
      for (const auto& a : v.list) {
        const std::string n = unquote(a.atom);
        res.core.push_back(c.at(std::stoul(n.substr(2))).label);
      }
    }
  } else {
    res.status = SatStatus::Unknown;
    send("(get-info :reason-unknown)\n");
    res.reason = receive();
  }
  send("(pop 1)\n");
  return res;
}

}  // namespace seif
