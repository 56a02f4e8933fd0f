#include "gdtt/driver.hpp"

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "gdtt/model.hpp"
#include "gdtt/print.hpp"

namespace gdtt {

namespace {

struct DeclFailure {
  int exit_code;
  std::string rule;
  std::string kind;
  std::string expected, actual, detail;
  int line, col;
};

// Checks one declaration against `defs`; throws TypeError on failure.
void check_decl(Kernel& k, const ClockSet& ambient, const Decl& d) {
  ClockSet D = ambient;
  for (auto& p : d.clock_params) D.insert(p);
  Telescope empty;
  switch (d.kind) {
    case Decl::K::ClockDecl:
      return;
    case Decl::K::Def:
      k.check_type_wf(D, empty, d.type);
      k.check(D, empty, d.term, d.type);
      return;
    case Decl::K::Eq: {
      k.check_type_wf(D, empty, d.type);
      k.check(D, empty, d.lhs, d.type);
      k.check(D, empty, d.rhs, d.type);
      Fuel fuel = k.fresh_fuel();
      if (!k.conv_term(D, empty, d.type, d.lhs, d.rhs, fuel)) {
        throw TypeError(ErrKind::ConversionFailed, "Eq", "terms not equal",
                        print(d.lhs), print(d.rhs));
      }
      return;
    }
    case Decl::K::TyEq: {
      k.check_type_wf(D, empty, d.lhs);
      k.check_type_wf(D, empty, d.rhs);
      Fuel fuel = k.fresh_fuel();
      if (!k.conv_type(D, empty, d.lhs, d.rhs, fuel)) {
        throw TypeError(ErrKind::ConversionFailed, "TyEq", "types not equal",
                        print(d.lhs), print(d.rhs));
      }
      return;
    }
  }
}

DeclFailure failure_of(const TypeError& e, const Decl& d) {
  int code = e.kind == ErrKind::FuelExhausted ? 3 : 1;
  return DeclFailure{code,    e.rule,   err_kind_name(e.kind),
                     e.expected, e.actual, e.detail,
                     d.line,     d.col};
}

void report(std::ostream& err, const std::string& filename,
            const DeclFailure& f) {
  err << "ERROR " << filename << ":" << f.line << ":" << f.col << " ["
      << f.rule << "]";
  if (!f.expected.empty() || !f.actual.empty()) {
    err << " expected " << f.expected << " got " << f.actual;
  } else {
    err << " " << f.detail;
  }
  err << "\n";
}

}  // namespace

CheckOutcome check_source(const SourceFile& f, const std::string& filename,
                          const CheckOptions& opt, std::ostream& out,
                          std::ostream& err) {
  CheckOutcome res;
  for (auto& d : f.decls) {
    if (d.kind == Decl::K::ClockDecl) res.clocks.insert(d.name);
    if (d.kind == Decl::K::Def) {
      res.defs.add(d.name, Def{d.clock_params, d.type, d.term});
    }
  }

  auto make_kernel = [&](Kernel& k) {
    k.defs = &res.defs;
    k.default_fuel = opt.fuel;
    if (opt.trace) {
      k.trace = [&out](const std::string& rule, const std::string& path) {
        out << "RULE " << rule << " AT " << path << "\n";
      };
    }
  };

  std::vector<std::optional<DeclFailure>> failures(f.decls.size());

  if (opt.jobs <= 1) {
    Kernel k;
    make_kernel(k);
    for (size_t i = 0; i < f.decls.size(); ++i) {
      try {
        check_decl(k, res.clocks, f.decls[i]);
      } catch (const TypeError& e) {
        failures[i] = failure_of(e, f.decls[i]);
        break;  // later declarations may depend on this one
      }
    }
  } else {
    // The definition table is fully populated up front, so declarations can
    // be checked independently; each worker gets its own kernel.
    std::atomic<size_t> next{0};
    std::mutex trace_mu;
    auto worker = [&] {
      Kernel k;
      k.defs = &res.defs;
      k.default_fuel = opt.fuel;
      if (opt.trace) {
        k.trace = [&](const std::string& rule, const std::string& path) {
          std::lock_guard<std::mutex> lock(trace_mu);
          out << "RULE " << rule << " AT " << path << "\n";
        };
      }
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= f.decls.size()) return;
        try {
          check_decl(k, res.clocks, f.decls[i]);
        } catch (const TypeError& e) {
          failures[i] = failure_of(e, f.decls[i]);
        }
      }
    };
    std::vector<std::thread> pool;
    int n = opt.jobs;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& fl : failures) {
    if (fl) {
      report(err, filename, *fl);
      res.exit_code = fl->exit_code;
      res.first_error_rule = fl->rule;
      res.first_error_kind = fl->kind;
      break;
    }
  }
  return res;
}

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int parse_or_report(const std::string& path, SourceFile& f, std::ostream& err) {
  std::string src;
  if (!read_file(path, src)) {
    err << "ERROR " << path << ":1:1 [IO] cannot read file\n";
    return 2;
  }
  try {
    f = parse_file(src);
  } catch (const ParseError& e) {
    err << "ERROR " << path << ":" << e.line << ":" << e.col << " [Parse] "
        << e.detail << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int run_check(const std::string& path, const CheckOptions& opt,
              std::ostream& out, std::ostream& err) {
  SourceFile f;
  if (int rc = parse_or_report(path, f, err)) return rc;
  CheckOutcome res = check_source(f, path, opt, out, err);
  if (res.exit_code == 0) out << "OK " << path << "\n";
  return res.exit_code;
}

int run_eval(const std::string& path, const std::string& def_name, int depth,
             const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  SourceFile f;
  if (int rc = parse_or_report(path, f, err)) return rc;
  CheckOptions quiet = opt;
  quiet.trace = false;
  CheckOutcome res = check_source(f, path, quiet, out, err);
  if (res.exit_code != 0) return res.exit_code;

  const Def* d = res.defs.find(def_name);
  if (!d) {
    err << "ERROR " << path << ":1:1 [Eval] no definition named " << def_name
        << "\n";
    return 1;
  }
  Kernel k;
  k.defs = &res.defs;
  k.default_fuel = opt.fuel;
  ClockSet D = res.clocks;
  for (auto& p : d->clock_params) D.insert(p);
  try {
    Observation o = eval_at_depth(k, D, d->term, d->type, depth);
    out << print_observation(o) << "\n";
    return 0;
  } catch (const FuelExhaustedError&) {
    err << "ERROR " << path << ":1:1 [Fuel] evaluation budget exhausted\n";
    return 3;
  } catch (const NotObservable& e) {
    err << "ERROR " << path << ":1:1 [Eval] " << e.what() << "\n";
    return 1;
  } catch (const TypeError& e) {
    err << "ERROR " << path << ":1:1 [" << e.rule << "] " << e.detail << "\n";
    return e.kind == ErrKind::FuelExhausted ? 3 : 1;
  }
}

int run_fmt(const std::string& path, std::ostream& out, std::ostream& err) {
  SourceFile f;
  if (int rc = parse_or_report(path, f, err)) return rc;
  for (auto& d : f.decls) {
    switch (d.kind) {
      case Decl::K::ClockDecl:
        out << "clock " << d.name << "\n";
        break;
      case Decl::K::Def: {
        out << "def " << d.name;
        if (!d.clock_params.empty()) {
          out << "[";
          for (size_t i = 0; i < d.clock_params.size(); ++i) {
            if (i) out << ", ";
            out << d.clock_params[i];
          }
          out << "]";
        }
        out << " : " << print(d.type) << " := " << print(d.term) << "\n";
        break;
      }
      case Decl::K::Eq:
        out << "eq ";
        if (!d.clock_params.empty()) {
          out << "[";
          for (size_t i = 0; i < d.clock_params.size(); ++i) {
            if (i) out << ", ";
            out << d.clock_params[i];
          }
          out << "] ";
        }
        out << print(d.lhs) << " == " << print(d.rhs) << " : " << print(d.type)
            << "\n";
        break;
      case Decl::K::TyEq:
        out << "tyeq ";
        if (!d.clock_params.empty()) {
          out << "[";
          for (size_t i = 0; i < d.clock_params.size(); ++i) {
            if (i) out << ", ";
            out << d.clock_params[i];
          }
          out << "] ";
        }
        out << print(d.lhs) << " == " << print(d.rhs) << "\n";
        break;
    }
  }
  return 0;
}

}  // namespace gdtt
